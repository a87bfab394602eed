use super::*;
use crate::enumerate::enumerate_spaces;
use crate::finset::FinSet;
use crate::fixtures;
use crate::monad::{MonadSpec, MonoidTable};
use crate::tspace::check_khaus;

#[test]
fn beta_of_ord_has_two_components() {
    let r = beta_reflection(&fixtures::ord()).unwrap();
    let u = &r.unit.map;
    assert_eq!(r.reflected().n(), 2);
    assert_eq!(u.apply(0), u.apply(1));
    assert_ne!(u.apply(0), u.apply(2));
    assert!(check_khaus(r.reflected()).a);
}

#[test]
fn beta_of_plu_is_a_three_chain() {
    let r = beta_reflection(&fixtures::plu()).unwrap();
    let alg = r.algebra.as_ref().unwrap();
    assert_eq!(alg.n(), 3);
    assert!(r.unit.map.is_injective());
    assert_eq!(
        r.congruence.as_ref().unwrap().classes(),
        &[vec![0], vec![1], vec![2, 3]]
    );
    // q(A) <= q(B) iff q(A ∪ B) = q(B): a chain bottom < {0} < {1}
    let (bot, a, b) = (0, 1, 2);
    assert_eq!(alg.join(bot, a), a);
    assert_eq!(alg.join(a, b), b);
    assert_eq!(alg.join(bot, b), b);
}

#[test]
fn algebraic_space_has_iso_unit() {
    let a = EMAlgebra::free(&MonadSpec::powerset(), 2).unwrap();
    let s = algebra_to_space(&a).unwrap();
    let r = beta_reflection(&s).unwrap();
    assert!(r.unit.map.is_bijective());
}

#[test]
fn cf_examples() {
    assert_eq!(check_cf(&fixtures::plu()).unwrap(), (true, true));
    assert_eq!(check_cf(&fixtures::ord()).unwrap(), (false, false));
    assert_eq!(check_cf(&fixtures::ord_eq()).unwrap(), (true, false));
}

#[test]
fn h_examples() {
    let r = h_reflection(&fixtures::ord_eq()).unwrap();
    assert_eq!(r.reflected().n(), 1);

    let r = h_reflection(&fixtures::ord()).unwrap();
    assert_eq!(r.reflected().n(), 2);
    assert_eq!(*r.reflected().converges(), Rel::diagonal(2));
    assert_eq!(r.unit.map.table(), &[0, 0, 1]);

    let s = fixtures::plu3();
    let r = h_reflection(&s).unwrap();
    assert!(r.unit.map.is_bijective());
    assert_eq!(r.reflected(), &s);
}

#[test]
fn c_reflection_of_ord_is_kernel_equivalence() {
    let r = c_reflection(&fixtures::ord()).unwrap();
    let expected = Rel::new(3, 3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)]).unwrap();
    assert_eq!(*r.reflected().converges(), expected);
    assert_eq!(r.unit.map, FinMap::identity(3));
}

#[test]
fn c_reflection_of_plu3_satisfies_c() {
    let s = fixtures::plu3();
    let r = c_reflection(&s).unwrap();
    assert!(s.converges().is_subset(r.reflected().converges()));
    assert!(check_cf(r.reflected()).unwrap().0);
    assert!(!check_cf(&s).unwrap().0);
}

#[test]
fn f_and_cf_examples() {
    let r = f_reflection(&fixtures::ord()).unwrap();
    assert_eq!(r.reflected().n(), 2);
    assert_eq!(r.unit.map.table(), &[0, 0, 1]);
    assert!(check_cf(r.reflected()).unwrap().1);

    assert_eq!(f_reflection(&fixtures::ord_eq()).unwrap().reflected().n(), 1);
    let plu = fixtures::plu();
    assert_eq!(f_reflection(&plu).unwrap().unit.map, FinMap::identity(2));

    let r = cf_reflection(&fixtures::ord()).unwrap();
    assert_eq!(*r.reflected().converges(), Rel::diagonal(2));
    assert!(r.unit.map.is_surjective() && !r.unit.map.is_injective());
    assert_eq!(cf_reflection(&fixtures::ord_eq()).unwrap().reflected().n(), 1);
    assert_eq!(cf_reflection(&plu).unwrap().unit.map, FinMap::identity(2));
}

#[test]
fn space_report_format() {
    let txt = space_report(&fixtures::ord()).unwrap().to_string();
    assert_eq!(txt, "R ✓ T ✓ K ✓ H ✗ A ✗ C ✗ F ✗");
    let g = TSpace::graph(MonadSpec::identity(), FinSet::new(2), Rel::empty(2, 2)).unwrap();
    let txt = space_report(&g).unwrap().to_string();
    assert_eq!(txt, "R ✗ T ✓ K ✗ H ✓ A ✗ C - F -");
}

fn spaces_for_idempotence() -> Vec<TSpace> {
    let mut out = Vec::new();
    out.extend(enumerate_spaces(&MonadSpec::identity(), 3).unwrap());
    out.extend(enumerate_spaces(&MonadSpec::powerset(), 2).unwrap());
    out.extend(enumerate_spaces(&MonadSpec::monoid_action(MonoidTable::m2()), 2).unwrap());
    out
}

#[test]
fn reflections_are_idempotent() {
    for s in spaces_for_idempotence() {
        for kind in [ReflectorKind::C, ReflectorKind::CF] {
            let once = reflect(kind, &s).unwrap();
            let twice = reflect(kind, once.reflected()).unwrap();
            assert_eq!(twice.reflected(), once.reflected(), "{kind} on {s}");
            assert_eq!(twice.unit.map, FinMap::identity(once.reflected().n()));
        }
        for kind in [ReflectorKind::F, ReflectorKind::H, ReflectorKind::B] {
            let once = reflect(kind, &s).unwrap();
            let twice = reflect(kind, once.reflected()).unwrap();
            assert!(twice.unit.map.is_bijective(), "{kind} on {s}");
        }
    }
}

#[test]
fn reflected_objects_lie_in_their_subcategories() {
    for s in spaces_for_idempotence() {
        for kind in ReflectorKind::ALL {
            let r = reflect(kind, &s).unwrap();
            assert!(in_subcategory(kind, r.reflected()).unwrap(), "{kind} on {s}");
        }
    }
}

#[test]
fn identity_beta_counts_components() {
    for s in enumerate_spaces(&MonadSpec::identity(), 3).unwrap() {
        let mut uf = UnionFind::new(3);
        for (x, y) in s.converges().iter() {
            uf.union(x, y);
        }
        let r = beta_reflection(&s).unwrap();
        assert_eq!(r.reflected().n(), uf.partition().num_classes());
    }
}

#[test]
fn powerset_beta_is_a_join_completion() {
    for n in 0..=2 {
        for s in enumerate_spaces(&MonadSpec::powerset(), n).unwrap() {
            let r = beta_reflection(&s).unwrap();
            let alg = r.algebra.as_ref().unwrap();
            let k = alg.n();
            for x in 0..k {
                assert_eq!(alg.join(x, x), x);
                for y in 0..k {
                    assert_eq!(alg.join(x, y), alg.join(y, x));
                    for z in 0..k {
                        assert_eq!(alg.join(alg.join(x, y), z), alg.join(x, alg.join(y, z)));
                    }
                }
            }
            let q = r.congruence.as_ref().unwrap().projection();
            let bottom = q.apply(0);
            for a in 0..1usize << n {
                let joined = (0..n)
                    .filter(|&x| a >> x & 1 == 1)
                    .fold(bottom, |acc, x| alg.join(acc, r.unit.map.apply(x)));
                assert_eq!(q.apply(a), joined);
            }
        }
    }
}

#[test]
fn powerset_c_spaces_converge_to_sups() {
    for n in 0..=3 {
        for s in enumerate_spaces(&MonadSpec::powerset(), n).unwrap() {
            let r = beta_reflection(&s).unwrap();
            if !cf_from_beta(&s, &r).unwrap().0 {
                continue;
            }
            let alg = r.algebra.as_ref().unwrap();
            let beta = &r.unit.map;
            let bottom = alg.eval(0);
            for a in 0..1usize << n {
                let sup = (0..n)
                    .filter(|&x| a >> x & 1 == 1)
                    .fold(bottom, |acc, x| alg.join(acc, beta.apply(x)));
                for y in 0..n {
                    assert_eq!(s.converges_to(a, y), sup == beta.apply(y));
                }
            }
        }
    }
}

#[test]
fn three_point_counterexample() {
    let s = fixtures::plu3();
    let leq = |x: usize, y: usize| s.converges_to((1 << x) | (1 << y), y);
    assert!(check_khaus(&s).h);
    assert!(leq(0, 1) && leq(1, 2) && !leq(0, 2));
}
