//! Exhaustive check of the universal property of a reflection against all
//! small objects of the target subcategory.

use std::fmt;

use super::{check_cf, ReflectionResult, ReflectorKind};
use crate::enumerate::{enumerate_algebras_upto, enumerate_spaces_upto};
use crate::error::Result;
use crate::finset::FinMap;
use crate::monad::MonadSpec;
use crate::reflect::algebra_to_space;
use crate::tspace::{check_khaus, MonotoneMap, TSpace};

/// Keep at most this many failure witnesses per report.
const MAX_WITNESSES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyPolicy {
    /// largest carrier among enumerated target objects
    pub max_points: usize,
}

impl Default for VerifyPolicy {
    fn default() -> Self {
        VerifyPolicy { max_points: 3 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// the reflected object is outside the target subcategory
    NotInSubcategory,
    Existence,
    Uniqueness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyFailure {
    pub kind: FailureKind,
    pub target: TSpace,
    /// the map that fails to factor uniquely
    pub f: Option<FinMap>,
    /// up to two factorizations found
    pub factorizations: Vec<FinMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub kind: ReflectorKind,
    pub targets: usize,
    pub maps_checked: usize,
    pub failure_count: usize,
    pub failures: Vec<VerifyFailure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn push(&mut self, failure: VerifyFailure) {
        self.failure_count += 1;
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(failure);
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} reflection: {} targets, {} maps, {} failures",
            self.kind, self.targets, self.maps_checked, self.failure_count
        )?;
        if let Some(first) = self.failures.first() {
            write!(f, "; first: {:?} into {}", first.kind, first.target)?;
            if let Some(m) = &first.f {
                write!(f, " along {:?}", m.table())?;
            }
        }
        Ok(())
    }
}

/// Whether a space lies in the subcategory a reflector targets.
pub fn in_subcategory(kind: ReflectorKind, s: &TSpace) -> Result<bool> {
    Ok(match kind {
        ReflectorKind::B => check_khaus(s).a,
        ReflectorKind::H => check_khaus(s).h,
        ReflectorKind::C => check_cf(s)?.0,
        ReflectorKind::F => check_cf(s)?.1,
        ReflectorKind::CF => {
            let (c, f) = check_cf(s)?;
            c && f
        }
    })
}

/// All target objects on at most `max_points` points.
pub fn target_objects(kind: ReflectorKind, monad: &MonadSpec, max_points: usize) -> Result<Vec<TSpace>> {
    if kind == ReflectorKind::B {
        return enumerate_algebras_upto(monad, max_points)?
            .iter()
            .map(algebra_to_space)
            .collect();
    }
    let mut out = Vec::new();
    for s in enumerate_spaces_upto(monad, max_points)? {
        if in_subcategory(kind, &s)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// Backtracking over point maps `src → tgt`, checking each pair of `src` as
/// soon as its support and limit are assigned. `visit` returns `false` to stop.
fn search(
    src: &TSpace,
    tgt: &TSpace,
    fixed: &[Option<usize>],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<()> {
    src.require_same_monad(tgt)?;
    let m = src.monad();
    let (n, k) = (src.n(), tgt.n());
    let mut checks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (t, y) in src.converges().iter() {
        let last = m.support_in(n, t).into_iter().fold(y, usize::max);
        checks[last].push((t, y));
    }
    let mut table = vec![0; n];

    struct Ctx<'a> {
        m: &'a MonadSpec,
        n: usize,
        k: usize,
        tgt: &'a TSpace,
        checks: &'a [Vec<(usize, usize)>],
        fixed: &'a [Option<usize>],
    }

    fn rec(i: usize, table: &mut [usize], ctx: &Ctx, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let Ctx { m, n, k, tgt, checks, fixed } = *ctx;
        if i == n {
            return visit(table);
        }
        let range = match fixed[i] {
            Some(v) => v..v + 1,
            None => 0..k,
        };
        for v in range {
            table[i] = v;
            let ok = checks[i]
                .iter()
                .all(|&(t, y)| tgt.converges_to(m.map_element(n, t, table, k), table[y]));
            if ok && !rec(i + 1, table, ctx, visit) {
                return false;
            }
        }
        true
    }

    let ctx = Ctx { m, n, k, tgt, checks: &checks, fixed };
    rec(0, &mut table, &ctx, visit);
    Ok(())
}

/// Calls `visit` on every monotone map `src → tgt` until it returns `false`.
pub fn for_each_monotone(
    src: &TSpace,
    tgt: &TSpace,
    mut visit: impl FnMut(&FinMap) -> bool,
) -> Result<()> {
    let k = tgt.n();
    let fixed = vec![None; src.n()];
    search(src, tgt, &fixed, &mut |t| {
        visit(&FinMap::from_table_unchecked(k, t.to_vec()))
    })
}

/// Monotone `h` with `h ∘ unit = f`, at most `limit` of them.
pub fn count_factorizations(
    unit: &MonotoneMap,
    f: &FinMap,
    target: &TSpace,
    limit: usize,
) -> Result<Vec<FinMap>> {
    let r = unit.target.n();
    let mut fixed = vec![None; r];
    for x in 0..unit.source.n() {
        let slot = &mut fixed[unit.map.apply(x)];
        match *slot {
            Some(v) if v != f.apply(x) => return Ok(Vec::new()),
            _ => *slot = Some(f.apply(x)),
        }
    }
    let k = target.n();
    let mut out = Vec::new();
    search(&unit.target, target, &fixed, &mut |t| {
        out.push(FinMap::from_table_unchecked(k, t.to_vec()));
        out.len() < limit
    })?;
    Ok(out)
}

/// Checks unique factorization of every monotone map from the source into
/// each of `targets` through the unit.
pub fn verify_reflection_against(r: &ReflectionResult, targets: &[TSpace]) -> Result<VerificationReport> {
    let mut report = VerificationReport {
        kind: r.kind,
        targets: targets.len(),
        maps_checked: 0,
        failure_count: 0,
        failures: Vec::new(),
    };
    for z in targets {
        let mut maps = Vec::new();
        for_each_monotone(r.source(), z, |f| {
            maps.push(f.clone());
            true
        })?;
        for f in maps {
            report.maps_checked += 1;
            let hs = count_factorizations(&r.unit, &f, z, 2)?;
            if hs.len() != 1 {
                report.push(VerifyFailure {
                    kind: if hs.is_empty() {
                        FailureKind::Existence
                    } else {
                        FailureKind::Uniqueness
                    },
                    target: z.clone(),
                    f: Some(f),
                    factorizations: hs,
                });
            }
        }
    }
    Ok(report)
}

/// Membership of the reflected object plus unique factorization against all
/// target objects within the policy bound.
pub fn verify_reflection(r: &ReflectionResult, policy: VerifyPolicy) -> Result<VerificationReport> {
    let targets = target_objects(r.kind, r.source().monad(), policy.max_points)?;
    let mut report = verify_reflection_against(r, &targets)?;
    if !in_subcategory(r.kind, r.reflected())? {
        report.push(VerifyFailure {
            kind: FailureKind::NotInSubcategory,
            target: r.reflected().clone(),
            f: None,
            factorizations: Vec::new(),
        });
    }
    Ok(report)
}
