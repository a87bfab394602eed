//! Reflections of T-spaces into algebras, Hausdorff spaces, and the
//! (C)/(F)/(CF) subcategories.

mod algebra;
mod congruence;
mod verify;

use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{FinMap, Partition, Rel, UnionFind};
use crate::tspace::{
    check_axioms, check_khaus, final_structure, initial_structure, MonotoneMap, TSpace,
};

pub use algebra::{algebra_to_space, space_to_algebra, EMAlgebra};
pub use congruence::{
    congruence_closure, congruence_closure_generic, is_congruence, quotient_algebra,
    CongruenceResult,
};
pub use verify::{
    count_factorizations, for_each_monotone, in_subcategory, target_objects, verify_reflection,
    verify_reflection_against, FailureKind, VerificationReport, VerifyFailure, VerifyPolicy,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReflectorKind {
    /// into algebras
    B,
    /// into spaces with at most one limit per T-element
    H,
    C,
    F,
    CF,
}

impl ReflectorKind {
    pub const ALL: [ReflectorKind; 5] = [
        ReflectorKind::B,
        ReflectorKind::H,
        ReflectorKind::C,
        ReflectorKind::F,
        ReflectorKind::CF,
    ];

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "B" => ReflectorKind::B,
            "H" => ReflectorKind::H,
            "C" => ReflectorKind::C,
            "F" => ReflectorKind::F,
            "CF" => ReflectorKind::CF,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ReflectorKind::B => "B",
            ReflectorKind::H => "H",
            ReflectorKind::C => "C",
            ReflectorKind::F => "F",
            ReflectorKind::CF => "CF",
        }
    }
}

impl fmt::Display for ReflectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A reflection unit with the data that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionResult {
    pub kind: ReflectorKind,
    pub unit: MonotoneMap,
    /// the quotient algebra, for `B`
    pub algebra: Option<EMAlgebra>,
    /// the congruence on the free algebra, for `B`
    pub congruence: Option<Partition>,
}

impl ReflectionResult {
    pub fn source(&self) -> &TSpace {
        &self.unit.source
    }

    pub fn reflected(&self) -> &TSpace {
        &self.unit.target
    }
}

fn require_reflexive(s: &TSpace) -> Result<()> {
    let r = check_axioms(s)?;
    if let Some(x) = r.reflexive_witness {
        return Err(Error::invalid(format!("not reflexive at point {x}")));
    }
    Ok(())
}

fn require_space(s: &TSpace) -> Result<()> {
    let r = check_axioms(s)?;
    if !r.is_space() {
        return Err(Error::invalid(format!("not a T-space: {}", r.describe())));
    }
    Ok(())
}

fn monotone(map: FinMap, source: TSpace, target: TSpace) -> Result<MonotoneMap> {
    MonotoneMap::new(map, source, target)
        .map_err(|e| Error::InternalInvariantViolated(format!("reflection unit: {e}")))
}

/// The reflection into algebras: the free algebra `(TX, μ)` modulo the least
/// congruence identifying `t` with `η(y)` whenever `t ⇝ y`.
pub fn beta_reflection(s: &TSpace) -> Result<ReflectionResult> {
    require_reflexive(s)?;
    let m = s.monad();
    let n = s.n();
    let free = EMAlgebra::free(m, n)?;
    let eta = m.unit_component(n)?;
    let tn = free.n();
    let gens = Rel::new(tn, tn, s.converges().iter().map(|(t, y)| (t, eta.apply(y))))?;
    let cong = congruence_closure(&free, &gens)?;
    let reflected = algebra_to_space(&cong.algebra)?;
    let unit = monotone(cong.q.compose(&eta), s.clone(), reflected)?;
    Ok(ReflectionResult {
        kind: ReflectorKind::B,
        unit,
        algebra: Some(cong.algebra),
        congruence: Some(cong.classes),
    })
}

/// Merge limits of a common T-element until every T-element has at most one.
pub fn h_reflection(s: &TSpace) -> Result<ReflectionResult> {
    require_space(s)?;
    let m = s.monad().clone();
    let mut current = s.clone();
    let mut total = FinMap::identity(s.n());
    loop {
        let mut uf = UnionFind::new(current.n());
        let mut merged = false;
        for t in 0..current.t_size() {
            let mut lims = current.converges().successors(t);
            if let Some(first) = lims.next() {
                for y in lims {
                    merged |= uf.union(first, y);
                }
            }
        }
        if !merged {
            break;
        }
        let q = uf.partition().projection();
        let next = final_structure(&m, q.cod(), &[(q.clone(), &current)])?;
        total = q.compose(&total);
        current = next;
    }
    let unit = monotone(total, s.clone(), current)?;
    Ok(ReflectionResult {
        kind: ReflectorKind::H,
        unit,
        algebra: None,
        congruence: None,
    })
}

/// `(C, F)`: whether the space carries the initial structure along its
/// reflection into algebras, and whether that reflection is injective.
pub fn check_cf(s: &TSpace) -> Result<(bool, bool)> {
    require_space(s)?;
    let beta = beta_reflection(s)?;
    cf_from_beta(s, &beta)
}

fn cf_from_beta(s: &TSpace, beta: &ReflectionResult) -> Result<(bool, bool)> {
    let init = initial_structure(
        s.monad(),
        s.n(),
        &[(beta.unit.map.clone(), beta.reflected())],
    )?;
    Ok((init.converges() == s.converges(), beta.unit.map.is_injective()))
}

/// Same points, with the initial structure along the reflection into algebras.
pub fn c_reflection(s: &TSpace) -> Result<ReflectionResult> {
    require_space(s)?;
    let beta = beta_reflection(s)?;
    let init = initial_structure(
        s.monad(),
        s.n(),
        &[(beta.unit.map.clone(), beta.reflected())],
    )?
    .with_points(s.points().clone())?
    .checked()?;
    let unit = monotone(FinMap::identity(s.n()), s.clone(), init)?;
    Ok(ReflectionResult {
        kind: ReflectorKind::C,
        unit,
        algebra: None,
        congruence: None,
    })
}

/// The quotient by the kernel of the reflection into algebras, with the final
/// structure. The result is checked to satisfy (F).
pub fn f_reflection(s: &TSpace) -> Result<ReflectionResult> {
    require_space(s)?;
    let beta = beta_reflection(s)?;
    let q = beta.unit.map.kernel().projection();
    let target = final_structure(s.monad(), q.cod(), &[(q.clone(), s)])?;
    let (_, f) = check_cf(&target)?;
    if !f {
        return Err(Error::InternalInvariantViolated(format!(
            "quotient by the kernel of beta does not satisfy (F): {target}"
        )));
    }
    let unit = monotone(q, s.clone(), target)?;
    Ok(ReflectionResult {
        kind: ReflectorKind::F,
        unit,
        algebra: None,
        congruence: None,
    })
}

/// (F)-reflection followed by (C)-reflection.
pub fn cf_reflection(s: &TSpace) -> Result<ReflectionResult> {
    let f = f_reflection(s)?;
    let c = c_reflection(f.reflected())?;
    let unit = monotone(
        c.unit.map.compose(&f.unit.map),
        s.clone(),
        c.reflected().clone(),
    )?;
    Ok(ReflectionResult {
        kind: ReflectorKind::CF,
        unit,
        algebra: None,
        congruence: None,
    })
}

pub fn reflect(kind: ReflectorKind, s: &TSpace) -> Result<ReflectionResult> {
    match kind {
        ReflectorKind::B => beta_reflection(s),
        ReflectorKind::H => h_reflection(s),
        ReflectorKind::C => c_reflection(s),
        ReflectorKind::F => f_reflection(s),
        ReflectorKind::CF => cf_reflection(s),
    }
}

/// Condition flags of a space; `None` for C and F when the axioms fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceReport {
    pub r: bool,
    pub t: bool,
    pub k: bool,
    pub h: bool,
    pub a: bool,
    pub c: Option<bool>,
    pub f: Option<bool>,
}

pub fn space_report(s: &TSpace) -> Result<SpaceReport> {
    let ax = check_axioms(s)?;
    let kh = check_khaus(s);
    let (c, f) = if ax.is_space() {
        let (c, f) = check_cf(s)?;
        (Some(c), Some(f))
    } else {
        (None, None)
    };
    Ok(SpaceReport {
        r: ax.reflexive,
        t: ax.transitive,
        k: kh.k,
        h: kh.h,
        a: kh.a,
        c,
        f,
    })
}

impl fmt::Display for SpaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |v: bool| if v { "✓" } else { "✗" };
        let o = |v: Option<bool>| v.map_or("-", b);
        write!(
            f,
            "R {} T {} K {} H {} A {} C {} F {}",
            b(self.r),
            b(self.t),
            b(self.k),
            b(self.h),
            b(self.a),
            o(self.c),
            o(self.f)
        )
    }
}

#[cfg(test)]
mod tests;
