//! Least congruences on finite algebras and the quotient algebras they induce.

use super::algebra::EMAlgebra;
use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet, Partition, Rel, UnionFind};
use crate::monad::MonadKind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceResult {
    /// the quotient algebra
    pub algebra: EMAlgebra,
    /// projection onto the classes
    pub q: FinMap,
    pub classes: Partition,
}

/// Pairs `(c(Tp1 w), c(Tp2 w))` over all `w ∈ T(∼)` that the partition does
/// not yet identify.
fn generic_violations(a: &EMAlgebra, p: &Partition) -> Result<Vec<(usize, usize)>> {
    let m = a.monad();
    let n = a.n();
    let rel = p.as_rel();
    let k = rel.len();
    let tk = m.t_size(k)?;
    let (p1, p2) = rel.projections();
    let mut out = Vec::new();
    for w in 0..tk {
        let l = a.eval(m.map_element(k, w, p1.table(), n));
        let r = a.eval(m.map_element(k, w, p2.table(), n));
        if !p.same(l, r) {
            out.push((l, r));
        }
    }
    Ok(out)
}

/// Whether a partition is closed under the algebra operation, by
/// enumerating `T(∼)`.
pub fn is_congruence(a: &EMAlgebra, p: &Partition) -> Result<bool> {
    Ok(generic_violations(a, p)?.is_empty())
}

fn check_generators(a: &EMAlgebra, generators: &Rel) -> Result<()> {
    if generators.dom() != a.n() || generators.cod() != a.n() {
        return Err(Error::invalid("generators must be a relation on the carrier"));
    }
    Ok(())
}

/// Least congruence containing `generators`, closing through `T(∼)`.
pub fn congruence_closure_generic(a: &EMAlgebra, generators: &Rel) -> Result<Partition> {
    check_generators(a, generators)?;
    let mut uf = UnionFind::new(a.n());
    for (x, y) in generators.iter() {
        uf.union(x, y);
    }
    loop {
        let p = uf.partition();
        let bad = generic_violations(a, &p)?;
        if bad.is_empty() {
            return Ok(p);
        }
        for (x, y) in bad {
            uf.union(x, y);
        }
    }
}

/// Least congruence for the powerset monad: an equivalence with
/// `x ∼ y ⇒ x ∨ z ∼ y ∨ z`.
fn congruence_closure_powerset(a: &EMAlgebra, generators: &Rel) -> Partition {
    let n = a.n();
    let mut uf = UnionFind::new(n);
    for (x, y) in generators.iter() {
        uf.union(x, y);
    }
    loop {
        let p = uf.partition();
        let mut changed = false;
        for class in p.classes() {
            let r = class[0];
            for &x in &class[1..] {
                for z in 0..n {
                    changed |= uf.union(a.join(r, z), a.join(x, z));
                }
            }
        }
        if !changed {
            return p;
        }
    }
}

/// Quotient by a congruence; the structure is computed through least-index
/// representatives and its independence of that choice is checked.
pub fn quotient_algebra(a: &EMAlgebra, p: &Partition) -> Result<(EMAlgebra, FinMap)> {
    let m = a.monad();
    let q = p.projection();
    let s = p.section();
    let k = p.num_classes();
    let tk = m.t_size(k)?;
    let table: Vec<usize> = (0..tk)
        .map(|t| q.apply(a.eval(m.map_element(k, t, s.table(), a.n()))))
        .collect();
    let b = FinMap::new(k, table)?;
    let n = a.n();
    for t in 0..a.structure().dom() {
        let lhs = b.apply(m.map_element(n, t, q.table(), k));
        let rhs = q.apply(a.eval(t));
        if lhs != rhs {
            return Err(Error::InternalInvariantViolated(format!(
                "quotient structure depends on representatives at T-element {t}"
            )));
        }
    }
    let alg = EMAlgebra::new(m.clone(), FinSet::new(k), b).map_err(|e| {
        Error::InternalInvariantViolated(format!("quotient is not an algebra: {e}"))
    })?;
    Ok((alg, q))
}

/// The least congruence containing `generators`, with its quotient.
pub fn congruence_closure(a: &EMAlgebra, generators: &Rel) -> Result<CongruenceResult> {
    check_generators(a, generators)?;
    let classes = if a.monad().kind() == MonadKind::Powerset {
        congruence_closure_powerset(a, generators)
    } else {
        congruence_closure_generic(a, generators)?
    };
    let (algebra, q) = quotient_algebra(a, &classes)?;
    Ok(CongruenceResult { algebra, q, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::{MonadSpec, MonoidTable};

    #[test]
    fn powerset_example() {
        let a = EMAlgebra::free(&MonadSpec::powerset(), 2).unwrap();
        let g = Rel::new(4, 4, [(0b11, 0b10)]).unwrap();
        let r = congruence_closure(&a, &g).unwrap();
        assert_eq!(r.classes.classes(), &[vec![0], vec![1], vec![2, 3]]);
        assert_eq!(congruence_closure_generic(&a, &g).unwrap(), r.classes);
    }

    #[test]
    fn empty_generators_give_discrete_partition() {
        let a = EMAlgebra::free(&MonadSpec::powerset(), 2).unwrap();
        let r = congruence_closure(&a, &Rel::empty(4, 4)).unwrap();
        assert_eq!(r.classes, Partition::discrete(4));
        assert_eq!(r.algebra.structure(), a.structure());
    }

    #[test]
    fn identity_congruence_is_plain_equivalence() {
        let a = EMAlgebra::free(&MonadSpec::identity(), 3).unwrap();
        let r = congruence_closure(&a, &Rel::new(3, 3, [(0, 1)]).unwrap()).unwrap();
        assert_eq!(r.classes.classes(), &[vec![0, 1], vec![2]]);
    }

    #[test]
    fn fast_path_matches_generic_on_all_single_generators() {
        let a = EMAlgebra::free(&MonadSpec::powerset(), 2).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    for w in 0..4 {
                        let g = Rel::new(4, 4, [(x, y), (z, w)]).unwrap();
                        let fast = congruence_closure(&a, &g).unwrap().classes;
                        assert_eq!(fast, congruence_closure_generic(&a, &g).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn monoid_congruence_closes_under_action() {
        // Z2 acting on 2 points by swapping: free algebra Z2 × 2
        let m = MonadSpec::monoid_action(MonoidTable::cyclic(2));
        let a = EMAlgebra::free(&m, 2).unwrap();
        // identify (e,0) with (e,1); the action forces (g,0) ~ (g,1)
        let r = congruence_closure(&a, &Rel::new(4, 4, [(0, 1)]).unwrap()).unwrap();
        assert_eq!(r.classes.classes(), &[vec![0, 1], vec![2, 3]]);
        assert!(is_congruence(&a, &r.classes).unwrap());
    }
}
