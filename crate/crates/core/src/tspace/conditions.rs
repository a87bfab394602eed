//! Conditions (K), (H), (A), and the closure-space correspondence for the
//! powerset monad.

use super::extension::limit_masks;
use super::TSpace;
use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet, Rel};
use crate::monad::{MonadKind, MonadSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KhausViolation {
    /// `t` converges to nothing
    NoLimit(usize),
    /// `t` converges to two distinct points
    TwoLimits(usize, usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub k: bool,
    pub h: bool,
    pub a: bool,
    /// when K holds: `TX → C`, picking the pair with the least limit; the
    /// domain projection composed with it is the identity
    pub witness_section: Option<FinMap>,
    pub violation: Option<KhausViolation>,
}

pub fn check_khaus(s: &TSpace) -> ConditionReport {
    let tn = s.t_size();
    let mut no_limit = None;
    let mut two = None;
    let mut section = Vec::with_capacity(tn);
    for t in 0..tn {
        let mut it = s.converges().successors(t);
        match it.next() {
            None => {
                no_limit.get_or_insert(t);
            }
            Some(y) => {
                section.push(s.converges().position(t, y).expect("pair present"));
                if let Some(z) = it.next() {
                    two.get_or_insert((t, y, z));
                }
            }
        }
    }
    let k = no_limit.is_none();
    let h = two.is_none();
    let violation = no_limit
        .map(KhausViolation::NoLimit)
        .or(two.map(|(t, y, z)| KhausViolation::TwoLimits(t, y, z)));
    ConditionReport {
        k,
        h,
        a: k && h,
        witness_section: k.then(|| FinMap::new(s.converges().len(), section).expect("in range")),
        violation,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloReport {
    pub clo: bool,
    /// `(A, B, y)` with `A ⇝ y`, `A ⊆ B` and `B ⇝ y` missing
    pub violation: Option<(usize, usize, usize)>,
    /// when (Clo) holds: subset-mask `A` ↦ mask of its limits
    pub closure_table: Option<Vec<usize>>,
}

/// (Clo): `A ⇝ y` and `A ⊆ B` imply `B ⇝ y`.
pub fn check_clo_closure(s: &TSpace) -> Result<CloReport> {
    s.require_kind(MonadKind::Powerset)?;
    let tn = s.t_size();
    let lim = limit_masks(s);
    // it suffices to add one point at a time
    for a in 0..tn {
        for x in 0..s.n() {
            let b = a | 1 << x;
            let lost = lim[a] & !lim[b];
            if lost != 0 {
                let y = lost.trailing_zeros() as usize;
                return Ok(CloReport {
                    clo: false,
                    violation: Some((a, b, y)),
                    closure_table: None,
                });
            }
        }
    }
    Ok(CloReport {
        clo: true,
        violation: None,
        closure_table: Some(lim),
    })
}

/// Extensive, monotone and idempotent, on subset-masks of an `n`-point set.
pub fn is_closure_operator(n: usize, table: &[usize]) -> bool {
    let tn = 1usize << n;
    if table.len() != tn || table.iter().any(|&c| c >= tn) {
        return false;
    }
    (0..tn).all(|a| {
        a & !table[a] == 0
            && table[table[a]] == table[a]
            && (0..n).all(|x| table[a] & !table[a | 1 << x] == 0)
    })
}

/// The powerset space with `A ⇝ y` iff `y ∈ cA`.
pub fn closure_to_space(n: usize, table: &[usize]) -> Result<TSpace> {
    if !is_closure_operator(n, table) {
        return Err(Error::invalid("table is not a closure operator"));
    }
    let monad = MonadSpec::powerset();
    let tn = monad.t_size(n)?;
    let rel = Rel::from_fn(tn, n, |a, y| table[a] >> y & 1 == 1);
    Ok(TSpace::graph(monad, FinSet::new(n), rel)?.assume_space())
}

/// From an identity- or ultrafilter-monad space: the powerset space with
/// `A ⇝ y` iff some `x ∈ A` converges to `y`.
pub fn membership_composite(s: &TSpace) -> Result<TSpace> {
    if !matches!(s.monad().kind(), MonadKind::Identity | MonadKind::Ultrafilter) {
        return Err(Error::WrongMonad {
            expected: "identity or ultrafilter".into(),
            found: s.monad().to_string(),
        });
    }
    let n = s.n();
    let monad = MonadSpec::powerset().with_budget(s.monad().budget());
    let tn = monad.t_size(n)?;
    let rel = Rel::from_fn(tn, n, |a, y| {
        (0..n).any(|x| a >> x & 1 == 1 && s.converges_to(x, y))
    });
    TSpace::graph(monad, s.points().clone(), rel)
}
