//! Ultrafilters on small finite sets as genuine families of subsets.
//!
//! The `ultrafilter` monad spec works with the codec `UX ≅ X`. This module
//! keeps the honest set-of-subsets representation around so that the
//! identification can be checked rather than assumed.

use crate::finset::FinMap;

/// Largest carrier for which filters are enumerated (families of subsets
/// fit in a `u64` bitmask up to `n = 6`).
pub const MAX_FILTER_CARRIER: usize = 6;

/// A family of subsets of `{0..n}`: bit `A` is set iff subset-mask `A` belongs.
pub type Family = u64;

pub fn is_ultrafilter(n: usize, fam: Family) -> bool {
    assert!(n <= MAX_FILTER_CARRIER);
    let subsets = 1usize << n;
    let full = subsets - 1;
    let has = |a: usize| fam >> a & 1 == 1;
    if !has(full) || has(0) {
        return false;
    }
    for a in 0..subsets {
        if has(a) == has(full & !a) {
            return false;
        }
        if !has(a) {
            continue;
        }
        for b in 0..subsets {
            if has(b) && !has(a & b) {
                return false;
            }
            if a & b == a && !has(b) {
                return false;
            }
        }
    }
    true
}

/// `{A : x ∈ A}`.
pub fn principal(n: usize, x: usize) -> Family {
    (0..1usize << n)
        .filter(|a| a >> x & 1 == 1)
        .fold(0, |acc, a| acc | 1 << a)
}

/// Every ultrafilter on `{0..n}`, by brute force over all families.
pub fn all_ultrafilters(n: usize) -> Vec<Family> {
    assert!(n <= 4, "brute-force filter enumeration only for n <= 4");
    let fams: u64 = 1 << (1u64 << n);
    (0..fams).filter(|&f| is_ultrafilter(n, f)).collect()
}

/// Preimage of a subset-mask of `{0..f.cod()}` under `f`.
fn preimage(f: &FinMap, b: usize) -> usize {
    (0..f.dom())
        .filter(|&x| b >> f.apply(x) & 1 == 1)
        .fold(0, |acc, x| acc | 1 << x)
}

/// `Uf(x) = {B : f⁻¹B ∈ x}`.
pub fn image(f: &FinMap, fam: Family) -> Family {
    (0..1usize << f.cod())
        .filter(|&b| fam >> preimage(f, b) & 1 == 1)
        .fold(0, |acc, b| acc | 1 << b)
}

/// `ΣX = {A : {x ∈ UX : A ∈ x} ∈ X}`, where `outer` is a family of subsets of
/// the list `filters` (indexed by position).
pub fn sum(n: usize, filters: &[Family], outer: Family) -> Family {
    (0..1usize << n)
        .filter(|&a| {
            let hits = filters
                .iter()
                .enumerate()
                .filter(|(_, &fam)| fam >> a & 1 == 1)
                .fold(0usize, |acc, (i, _)| acc | 1 << i);
            outer >> hits & 1 == 1
        })
        .fold(0, |acc, a| acc | 1 << a)
}

/// Position of a family in a list of filters.
pub fn index_of(filters: &[Family], fam: Family) -> Option<usize> {
    filters.iter().position(|&f| f == fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::all_maps;
    use crate::monad::MonadSpec;

    #[test]
    fn every_ultrafilter_is_principal() {
        for n in 0..=4 {
            let mut all = all_ultrafilters(n);
            all.sort_unstable();
            let mut principals: Vec<Family> = (0..n).map(|x| principal(n, x)).collect();
            principals.sort_unstable();
            assert_eq!(all, principals, "n = {n}");
        }
    }

    #[test]
    fn principal_map_is_natural() {
        let u = MonadSpec::ultrafilter();
        for a in 0..=3 {
            for b in 0..=3 {
                for f in all_maps(a, b) {
                    let tf = u.apply_functor(&f).unwrap();
                    for x in 0..a {
                        assert_eq!(image(&f, principal(a, x)), principal(b, tf.apply(x)));
                    }
                }
            }
        }
    }

    #[test]
    fn sum_of_principal_is_principal() {
        let n = 3;
        let filters: Vec<Family> = (0..n).map(|x| principal(n, x)).collect();
        for i in 0..n {
            assert_eq!(sum(n, &filters, principal(n, i)), filters[i]);
        }
    }
}
