//! The hat-extension `Ĉ ⊆ TTX × TX` of a convergence relation.

use super::TSpace;
use crate::error::Result;
use crate::finset::Rel;
use crate::monad::MonadKind;

/// `Ĉ` for a given space, as a relation from `TTX` to `TX`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtRelation {
    /// carrier size of the space it extends
    pub n: usize,
    pub pairs: Rel,
}

/// `Ĉ = {(Tπ1 w, Tπ2 w) : w ∈ T(C)}` by enumerating `T(C)`.
pub fn generic_extension(s: &TSpace) -> Result<ExtRelation> {
    let m = s.monad();
    let n = s.n();
    let tn = s.t_size();
    let ttn = m.t_size(tn)?;
    let k = s.converges().len();
    let tk = m.t_size(k)?;
    let (p1, p2) = s.converges().projections();
    let mut pairs = Vec::with_capacity(tk);
    for w in 0..tk {
        pairs.push((
            m.map_element(k, w, p1.table(), tn),
            m.map_element(k, w, p2.table(), n),
        ));
    }
    Ok(ExtRelation {
        n,
        pairs: Rel::new(ttn, tn, pairs)?,
    })
}

/// Limits of every `A ∈ PX`, as point masks.
pub(crate) fn limit_masks(s: &TSpace) -> Vec<usize> {
    let mut lim = vec![0usize; s.t_size()];
    for (a, y) in s.converges().iter() {
        lim[a] |= 1 << y;
    }
    lim
}

/// Membership `(𝔄, B) ∈ Ĉ` for the powerset monad: the largest candidate
/// witness `C ∩ (𝔄 × B)` must project onto both `𝔄` and `B`.
///
/// `family` is a bitmask over subset-masks, `lim` comes from [`limit_masks`].
pub fn hat_contains_powerset(lim: &[usize], family: usize, b: usize) -> bool {
    let mut covered_b = 0usize;
    let mut rest = family;
    while rest != 0 {
        let a = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let hit = lim[a] & b;
        if hit == 0 {
            return false;
        }
        covered_b |= hit;
    }
    covered_b == b
}

/// `Ĉ`, using the witness test for the powerset monad and enumeration of
/// `T(C)` otherwise.
pub fn barr_extend(s: &TSpace) -> Result<ExtRelation> {
    let m = s.monad();
    if m.kind() != MonadKind::Powerset {
        return generic_extension(s);
    }
    let tn = s.t_size();
    let ttn = m.t_size(tn)?;
    let lim = limit_masks(s);
    let mut pairs = Vec::new();
    for fam in 0..ttn {
        for b in 0..tn {
            if hat_contains_powerset(&lim, fam, b) {
                pairs.push((fam, b));
            }
        }
    }
    Ok(ExtRelation {
        n: s.n(),
        pairs: Rel::from_sorted_unchecked(ttn, tn, pairs),
    })
}
