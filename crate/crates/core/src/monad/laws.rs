//! Exhaustive monad-law checking on small carriers.

use std::fmt;

use super::FinMonad;
use crate::error::Result;
use crate::finset::{all_maps, FinMap};

/// Maps between small carriers are tested exhaustively up to this many;
/// beyond it a fixed generator family is used.
pub const ALL_MAPS_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    FunctorIdentity,
    FunctorComposition,
    LeftUnit,
    RightUnit,
    Associativity,
    UnitNaturality,
    MultNaturality,
}

impl Law {
    pub const ALL: [Law; 7] = [
        Law::FunctorIdentity,
        Law::FunctorComposition,
        Law::LeftUnit,
        Law::RightUnit,
        Law::Associativity,
        Law::UnitNaturality,
        Law::MultNaturality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::FunctorIdentity => "functor identity",
            Law::FunctorComposition => "functor composition",
            Law::LeftUnit => "left unit",
            Law::RightUnit => "right unit",
            Law::Associativity => "associativity",
            Law::UnitNaturality => "naturality of unit",
            Law::MultNaturality => "naturality of multiplication",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one law at one carrier size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub law: Law,
    pub n: usize,
    /// number of (map, element) instances compared
    pub instances: usize,
    pub counterexample: Option<String>,
}

impl LawCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub monad: String,
    pub max_n: usize,
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(LawCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Pass/fail per law across all carrier sizes.
    pub fn summary(&self) -> Vec<(Law, bool)> {
        Law::ALL
            .iter()
            .map(|&l| (l, self.checks.iter().filter(|c| c.law == l).all(LawCheck::passed)))
            .collect()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "monad laws for {} on carriers 0..={}", self.monad, self.max_n)?;
        for (law, ok) in self.summary() {
            writeln!(f, "  {:<30} {}", law.name(), if ok { "pass" } else { "FAIL" })?;
        }
        for c in self.failures() {
            writeln!(
                f,
                "  counterexample ({} at n={}): {}",
                c.law,
                c.n,
                c.counterexample.as_deref().unwrap_or("")
            )?;
        }
        Ok(())
    }
}

/// The maps `a → b` used as test maps: all of them when there are at most
/// [`ALL_MAPS_LIMIT`], otherwise constants, shifts, a reversal and every
/// single collapse `j ↦ i`.
pub fn test_maps(a: usize, b: usize) -> Vec<FinMap> {
    let count = (b as u128).checked_pow(a as u32).unwrap_or(u128::MAX);
    if count <= ALL_MAPS_LIMIT as u128 {
        return all_maps(a, b).collect();
    }
    let mk = |t: Vec<usize>| FinMap::new(b, t).expect("generator in range");
    let mut out = Vec::new();
    for v in 0..b {
        out.push(mk(vec![v; a]));
    }
    for shift in 0..b.min(3) {
        out.push(mk((0..a).map(|x| (x + shift) % b).collect()));
    }
    out.push(mk((0..a).map(|x| b - 1 - x % b).collect()));
    for i in 0..a {
        for j in 0..a {
            if i != j {
                out.push(mk((0..a).map(|x| if x == j { i % b } else { x % b }).collect()));
            }
        }
    }
    out.sort_by(|f, g| f.table().cmp(g.table()));
    out.dedup();
    out
}

fn first_difference(lhs: &FinMap, rhs: &FinMap) -> Option<usize> {
    (0..lhs.dom()).find(|&i| lhs.apply(i) != rhs.apply(i))
}

/// Checks functoriality, both unit laws, associativity and naturality of
/// `η` and `μ` on every carrier `0..=max_n`.
///
/// Associativity compares `μ ∘ Tμ` and `μ ∘ μT` on all of `TTTX`; when that
/// carrier exceeds the monad's budget the whole check fails with
/// `BudgetExceeded` rather than checking a fragment.
pub fn check_monad_laws(m: &dyn FinMonad, max_n: usize) -> Result<LawReport> {
    let mut checks = Vec::new();
    for n in 0..=max_n {
        let tn = m.t_size(n)?;
        let eta = m.unit(n)?;
        let mu = m.mult(n)?;
        let id_t = FinMap::identity(tn);

        // functor identity
        let t_id = m.map(&FinMap::identity(n))?;
        checks.push(LawCheck {
            law: Law::FunctorIdentity,
            n,
            instances: tn,
            counterexample: first_difference(&t_id, &FinMap::identity(tn))
                .map(|t| format!("T(id) sends element {t} to {}", t_id.apply(t))),
        });

        // unit laws
        let eta_t = m.unit(tn)?;
        let left = mu.compose(&eta_t);
        checks.push(LawCheck {
            law: Law::LeftUnit,
            n,
            instances: tn,
            counterexample: first_difference(&left, &id_t)
                .map(|t| format!("mu(eta_T({t})) = {} != {t}", left.apply(t))),
        });
        let t_eta = m.map(&eta)?;
        let right = mu.compose(&t_eta);
        checks.push(LawCheck {
            law: Law::RightUnit,
            n,
            instances: tn,
            counterexample: first_difference(&right, &id_t)
                .map(|t| format!("mu(T eta({t})) = {} != {t}", right.apply(t))),
        });

        // associativity on TTTX
        let mu_t = m.mult(tn)?;
        let t_mu = m.map(&mu)?;
        let lhs = mu.compose(&t_mu);
        let rhs = mu.compose(&mu_t);
        checks.push(LawCheck {
            law: Law::Associativity,
            n,
            instances: lhs.dom(),
            counterexample: first_difference(&lhs, &rhs).map(|w| {
                format!(
                    "at TTT-element {w}: mu(T mu) = {}, mu(mu T) = {}",
                    lhs.apply(w),
                    rhs.apply(w)
                )
            }),
        });

        // naturality, for test maps out of n
        let mut unit_cx = None;
        let mut mult_cx = None;
        let mut instances = 0;
        for b in 0..=max_n {
            let eta_b = m.unit(b)?;
            let mu_b = m.mult(b)?;
            for f in test_maps(n, b) {
                instances += 1;
                let tf = m.map(&f)?;
                if unit_cx.is_none() {
                    let l = tf.compose(&eta);
                    let r = eta_b.compose(&f);
                    if let Some(x) = first_difference(&l, &r) {
                        unit_cx = Some(format!("f = {:?}, x = {x}", f.table()));
                    }
                }
                if mult_cx.is_none() {
                    let ttf = m.map(&tf)?;
                    let l = mu_b.compose(&ttf);
                    let r = tf.compose(&mu);
                    if let Some(w) = first_difference(&l, &r) {
                        mult_cx = Some(format!("f = {:?}, TT-element {w}", f.table()));
                    }
                }
            }
        }
        checks.push(LawCheck {
            law: Law::UnitNaturality,
            n,
            instances,
            counterexample: unit_cx,
        });
        checks.push(LawCheck {
            law: Law::MultNaturality,
            n,
            instances,
            counterexample: mult_cx,
        });

        // composition T(g∘f) = Tg∘Tf for f: n → b, g: b → c
        let mut comp_cx = None;
        let mut instances = 0;
        'outer: for b in 0..=max_n {
            let fs = test_maps(n, b);
            let tfs: Vec<FinMap> = fs.iter().map(|f| m.map(f)).collect::<Result<_>>()?;
            for c in 0..=max_n {
                for g in test_maps(b, c) {
                    let tg = m.map(&g)?;
                    for (f, tf) in fs.iter().zip(&tfs) {
                        instances += 1;
                        let l = m.map(&g.compose(f))?;
                        let r = tg.compose(tf);
                        if let Some(t) = first_difference(&l, &r) {
                            comp_cx = Some(format!(
                                "f = {:?}, g = {:?}, element {t}",
                                f.table(),
                                g.table()
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
        checks.push(LawCheck {
            law: Law::FunctorComposition,
            n,
            instances,
            counterexample: comp_cx,
        });
    }
    Ok(LawReport {
        monad: m.describe(),
        max_n,
        checks,
    })
}

/// Whether `T` sends every surjection between carriers `≤ max_n` (within the
/// test-map family) to a surjection. Returns the first offending map.
pub fn check_preserves_surjections(m: &dyn FinMonad, max_n: usize) -> Result<Option<FinMap>> {
    for a in 0..=max_n {
        for b in 0..=a {
            for f in test_maps(a, b) {
                if f.is_surjective() && !m.map(&f)?.is_surjective() {
                    return Ok(Some(f));
                }
            }
        }
    }
    Ok(None)
}

/// Mutation hook: a monad whose multiplication at one carrier size has one
/// entry redirected.
pub struct CorruptMult<'a> {
    pub base: &'a dyn FinMonad,
    pub n: usize,
    pub element: usize,
    pub value: usize,
}

impl FinMonad for CorruptMult<'_> {
    fn describe(&self) -> String {
        format!("{} (corrupted mult at n={})", self.base.describe(), self.n)
    }

    fn t_size(&self, n: usize) -> Result<usize> {
        self.base.t_size(n)
    }

    fn map(&self, f: &FinMap) -> Result<FinMap> {
        self.base.map(f)
    }

    fn unit(&self, n: usize) -> Result<FinMap> {
        self.base.unit(n)
    }

    fn mult(&self, n: usize) -> Result<FinMap> {
        let mu = self.base.mult(n)?;
        if n != self.n {
            return Ok(mu);
        }
        let mut table = mu.table().to_vec();
        table[self.element] = self.value;
        FinMap::new(mu.cod(), table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::monad::{MonadSpec, MonoidTable};

    #[test]
    fn identity_laws_hold() {
        let r = check_monad_laws(&MonadSpec::identity(), 5).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn powerset_laws_hold_up_to_two() {
        let r = check_monad_laws(&MonadSpec::powerset(), 2).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn powerset_associativity_at_three_exceeds_budget() {
        let e = check_monad_laws(&MonadSpec::powerset(), 3).unwrap_err();
        assert!(matches!(e, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn t0_t1_monoid_laws() {
        for m in [
            MonadSpec::t0(),
            MonadSpec::t1(),
            MonadSpec::monoid_action(MonoidTable::m2()),
        ] {
            let r = check_monad_laws(&m, 4).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn corrupted_mult_breaks_associativity() {
        let p = MonadSpec::powerset();
        // μ_2 sends {{0}} (TT index 1<<1) to {1} instead of {0}
        let bad = CorruptMult {
            base: &p,
            n: 2,
            element: 1 << 1,
            value: 0b10,
        };
        let r = check_monad_laws(&bad, 2).unwrap();
        let failed: Vec<Law> = r.failures().map(|c| c.law).collect();
        assert!(failed.contains(&Law::Associativity), "{r}");
        let cx = r
            .failures()
            .find(|c| c.law == Law::Associativity)
            .unwrap()
            .counterexample
            .clone()
            .unwrap();
        assert!(cx.contains("TTT-element"));
    }

    #[test]
    fn surjections_preserved() {
        for m in [MonadSpec::powerset(), MonadSpec::t0(), MonadSpec::identity()] {
            assert_eq!(check_preserves_surjections(&m, 4).unwrap(), None);
        }
    }

    #[test]
    fn generator_family_is_used_for_large_hom_sets() {
        assert_eq!(test_maps(2, 3).len(), 9);
        let big = test_maps(5, 5);
        assert!(big.len() < 3125);
        assert!(big.iter().any(|f| f.is_bijective()));
    }
}
