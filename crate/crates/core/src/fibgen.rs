//! Cartesian morphisms over finite sets and algebras with chosen generators.

use crate::enumerate::{enumerate_algebras_upto, enumerate_spaces_upto};
use crate::error::{Error, Result};
use crate::finset::{all_maps, FinMap, FinSet};
use crate::monad::MonadSpec;
use crate::reflect::{
    algebra_to_space, beta_reflection, check_cf, for_each_monotone, EMAlgebra,
};
use crate::tspace::{check_monotone, initial_structure, MonotoneMap, TSpace};

/// The source of `u` carries the initial structure along `u`.
pub fn cartesian_lift(u: &FinMap, target: &TSpace) -> Result<MonotoneMap> {
    let src = initial_structure(target.monad(), u.dom(), &[(u.clone(), target)])?.checked()?;
    MonotoneMap::new(u.clone(), src, target.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartesianReport {
    pub is_cartesian: bool,
    /// a test object `Z` with a point map `h: Z → source` such that
    /// `f ∘ h` is monotone but `h` is not
    pub witness: Option<(TSpace, FinMap)>,
}

pub fn is_cartesian(f: &MonotoneMap) -> Result<CartesianReport> {
    let src = &f.source;
    let init = initial_structure(src.monad(), src.n(), &[(f.map.clone(), &f.target)])?;
    if init.converges() == src.converges() {
        return Ok(CartesianReport {
            is_cartesian: true,
            witness: None,
        });
    }
    Ok(CartesianReport {
        is_cartesian: false,
        witness: Some((init.assume_space(), FinMap::identity(src.n()))),
    })
}

/// Searches all cones from spaces on at most `max_points` points: monotone
/// `g: Z → target` and point maps `h` with `f ∘ h = g` must make `h` monotone.
pub fn cartesian_by_cones(f: &MonotoneMap, max_points: usize) -> Result<CartesianReport> {
    for z in enumerate_spaces_upto(f.source.monad(), max_points)? {
        for h in all_maps(z.n(), f.source.n()) {
            if check_monotone(&f.map.compose(&h), &z, &f.target)? && !check_monotone(&h, &z, &f.source)? {
                return Ok(CartesianReport {
                    is_cartesian: false,
                    witness: Some((z, h)),
                });
            }
        }
    }
    Ok(CartesianReport {
        is_cartesian: true,
        witness: None,
    })
}

/// An algebra `(R, r)` with a generating map `p: X → R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenObject {
    pub p: FinMap,
    pub algebra: EMAlgebra,
    /// `r ∘ Tp: TX → R`
    pub psharp: FinMap,
}

impl GenObject {
    pub fn monad(&self) -> &MonadSpec {
        self.algebra.monad()
    }

    /// `|X|`
    pub fn generators(&self) -> usize {
        self.p.dom()
    }
}

fn mate(p: &FinMap, algebra: &EMAlgebra) -> Result<FinMap> {
    let m = algebra.monad();
    let n = p.dom();
    let table = (0..m.t_size(n)?)
        .map(|t| algebra.eval(m.map_element(n, t, p.table(), algebra.n())))
        .collect();
    FinMap::new(algebra.n(), table)
}

pub fn gen_validate(p: FinMap, algebra: EMAlgebra) -> Result<GenObject> {
    if p.cod() != algebra.n() {
        return Err(Error::invalid(format!(
            "generator map lands in {} points, algebra has {}",
            p.cod(),
            algebra.n()
        )));
    }
    let psharp = mate(&p, &algebra)?;
    if !psharp.is_surjective() {
        let missing = (0..algebra.n())
            .find(|&r| !psharp.table().contains(&r))
            .expect("not surjective");
        return Err(Error::NotGenerating(format!(
            "element {missing} is not reached from the generators"
        )));
    }
    Ok(GenObject { p, algebra, psharp })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMorphism {
    pub f: FinMap,
    pub fstar: FinMap,
}

/// The morphism over `f`, if `f` admits one; `f*` is forced by `f* ∘ p♯ = q♯ ∘ Tf`.
pub fn gen_morphism(src: &GenObject, tgt: &GenObject, f: &FinMap) -> Result<Option<GenMorphism>> {
    if src.monad() != tgt.monad() {
        return Err(Error::IncompatibleMonads {
            left: src.monad().to_string(),
            right: tgt.monad().to_string(),
        });
    }
    if f.dom() != src.generators() || f.cod() != tgt.generators() {
        return Err(Error::invalid("point map does not fit the generator sets"));
    }
    let m = src.monad();
    let (n, k) = (f.dom(), f.cod());
    let mut table = vec![None; src.algebra.n()];
    for t in 0..src.psharp.dom() {
        let v = tgt.psharp.apply(m.map_element(n, t, f.table(), k));
        let slot = &mut table[src.psharp.apply(t)];
        match *slot {
            Some(w) if w != v => return Ok(None),
            _ => *slot = Some(v),
        }
    }
    let fstar = FinMap::new(
        tgt.algebra.n(),
        table.into_iter().map(|v| v.expect("psharp surjective")).collect(),
    )?;
    if fstar.compose(&src.p) != tgt.p.compose(f) || !src.algebra.is_homomorphism(&fstar, &tgt.algebra)? {
        return Err(Error::InternalInvariantViolated(format!(
            "forced map {:?} is not a morphism",
            fstar.table()
        )));
    }
    Ok(Some(GenMorphism { f: f.clone(), fstar }))
}

/// All morphisms `src → tgt`.
pub fn gen_morphisms(src: &GenObject, tgt: &GenObject) -> Result<Vec<GenMorphism>> {
    let mut out = Vec::new();
    for f in all_maps(src.generators(), tgt.generators()) {
        if let Some(g) = gen_morphism(src, tgt, &f)? {
            out.push(g);
        }
    }
    Ok(out)
}

/// Unit `(p, 1_R): g → (1_R, r)` of the reflection onto algebras.
pub fn gen_reflect(g: &GenObject) -> Result<(GenMorphism, GenObject)> {
    let r = g.algebra.n();
    let reflected = gen_validate(FinMap::identity(r), g.algebra.clone())?;
    let unit = GenMorphism {
        f: g.p.clone(),
        fstar: FinMap::identity(r),
    };
    Ok((unit, reflected))
}

/// The subalgebra on `elements` (sorted, closed under the operation).
fn restrict_algebra(a: &EMAlgebra, elements: &[usize]) -> Result<EMAlgebra> {
    let m = a.monad();
    let k = elements.len();
    let mut pos = vec![usize::MAX; a.n()];
    for (i, &e) in elements.iter().enumerate() {
        pos[e] = i;
    }
    let table = (0..m.t_size(k)?)
        .map(|t| {
            let v = pos[a.eval(m.map_element(k, t, elements, a.n()))];
            if v == usize::MAX {
                Err(Error::InternalInvariantViolated(
                    "image of a homomorphism is not a subalgebra".into(),
                ))
            } else {
                Ok(v)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    EMAlgebra::new(m.clone(), FinSet::new(k), FinMap::new(k, table)?)
}

/// A (C)-space as generators of the image of `β♯`.
pub fn ibar(s: &TSpace) -> Result<GenObject> {
    if !check_cf(s)?.0 {
        return Err(Error::invalid("space does not satisfy (C)"));
    }
    let beta = beta_reflection(s)?;
    let b = beta.algebra.expect("beta carries its algebra");
    let bsharp = mate(&beta.unit.map, &b)?;
    let mut elements = bsharp.table().to_vec();
    elements.sort_unstable();
    elements.dedup();
    let algebra = restrict_algebra(&b, &elements)?;
    let p = beta.unit.map.corestrict(&elements)?;
    gen_validate(p, algebra)
}

/// Initial structure along `p` into the space of the algebra.
pub fn jbar(g: &GenObject) -> Result<TSpace> {
    let target = algebra_to_space(&g.algebra)?;
    let s = initial_structure(g.monad(), g.generators(), &[(g.p.clone(), &target)])?.checked()?;
    if !check_cf(&s)?.0 {
        return Err(Error::InternalInvariantViolated(format!(
            "initial structure along generators fails (C): {s}"
        )));
    }
    Ok(s)
}

/// Point maps on both sides of the hom-set bijection between `Z → jbar(g)`
/// and `ibar(Z) → g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionCheck {
    pub monotone: Vec<FinMap>,
    pub gen: Vec<FinMap>,
}

impl AdjunctionCheck {
    pub fn holds(&self) -> bool {
        self.monotone == self.gen
    }
}

pub fn check_adjunction(z: &TSpace, g: &GenObject) -> Result<AdjunctionCheck> {
    let j = jbar(g)?;
    let mut monotone = Vec::new();
    for_each_monotone(z, &j, |f| {
        monotone.push(f.clone());
        true
    })?;
    let gen = gen_morphisms(&ibar(z)?, g)?
        .into_iter()
        .map(|m| m.f)
        .collect();
    Ok(AdjunctionCheck { monotone, gen })
}

/// The comparison `C(Ī Z) → B Z`, when it is an algebra isomorphism.
pub fn c_ibar_to_b(z: &TSpace) -> Result<Option<FinMap>> {
    let g = ibar(z)?;
    let beta = beta_reflection(z)?;
    let b = beta.algebra.as_ref().expect("beta carries its algebra");
    let q = mate(&beta.unit.map, b)?;
    let mut table = vec![None; g.algebra.n()];
    for t in 0..q.dom() {
        let slot = &mut table[g.psharp.apply(t)];
        match *slot {
            Some(v) if v != q.apply(t) => return Ok(None),
            _ => *slot = Some(q.apply(t)),
        }
    }
    let h = FinMap::new(b.n(), table.into_iter().map(|v| v.expect("surjective")).collect())?;
    Ok((h.is_bijective() && g.algebra.is_homomorphism(&h, b)?).then_some(h))
}

/// All generated algebras with at most `max_gens` generators and `max_r` elements.
pub fn enumerate_gen_objects(monad: &MonadSpec, max_gens: usize, max_r: usize) -> Result<Vec<GenObject>> {
    let mut out = Vec::new();
    for a in enumerate_algebras_upto(monad, max_r)? {
        for n in 0..=max_gens {
            for p in all_maps(n, a.n()) {
                match gen_validate(p, a.clone()) {
                    Ok(g) => out.push(g),
                    Err(Error::NotGenerating(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<FinMap> {
    all_maps(n, n).filter(FinMap::is_bijective).collect()
}

/// Whether `ibar(jbar(g))` is isomorphic to `g`.
pub fn ibar_jbar_iso(g: &GenObject) -> Result<Option<GenMorphism>> {
    let h = ibar(&jbar(g)?)?;
    if h.algebra.n() != g.algebra.n() {
        return Ok(None);
    }
    for f in permutations(g.generators()) {
        if let Some(m) = gen_morphism(&h, g, &f)? {
            if m.fstar.is_bijective() {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport<T> {
    pub checked: usize,
    pub found: Vec<T>,
}

/// Generated algebras on small carriers for which `ibar ∘ jbar` is not
/// isomorphic to the identity.
pub fn search_ibar_jbar(monad: &MonadSpec, max_points: usize) -> Result<SearchReport<GenObject>> {
    let objs = enumerate_gen_objects(monad, max_points, max_points)?;
    let mut found = Vec::new();
    for g in &objs {
        if ibar_jbar_iso(g)?.is_none() {
            found.push(g.clone());
        }
    }
    Ok(SearchReport {
        checked: objs.len(),
        found,
    })
}

/// Cartesian monotone maps between small (C)-spaces whose image under `ibar`
/// has a non-injective `f*`, i.e. is not cartesian over sets.
pub fn search_cartesian_images(monad: &MonadSpec, max_points: usize) -> Result<SearchReport<MonotoneMap>> {
    let mut cspaces = Vec::new();
    for s in enumerate_spaces_upto(monad, max_points)? {
        if check_cf(&s)?.0 {
            let g = ibar(&s)?;
            cspaces.push((s, g));
        }
    }
    let mut checked = 0;
    let mut found = Vec::new();
    for (a, ga) in &cspaces {
        for (b, gb) in &cspaces {
            let mut maps = Vec::new();
            for_each_monotone(a, b, |f| {
                maps.push(f.clone());
                true
            })?;
            for f in maps {
                let mm = MonotoneMap {
                    map: f,
                    source: a.clone(),
                    target: b.clone(),
                };
                if !is_cartesian(&mm)?.is_cartesian {
                    continue;
                }
                checked += 1;
                let Some(g) = gen_morphism(ga, gb, &mm.map)? else {
                    return Err(Error::InternalInvariantViolated(
                        "monotone map between (C)-spaces has no image under ibar".into(),
                    ));
                };
                if !g.fstar.is_injective() {
                    found.push(mm);
                }
            }
        }
    }
    Ok(SearchReport { checked, found })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::Rel;
    use crate::fixtures;
    use crate::reflect::c_reflection;

    #[test]
    fn lift_examples() {
        let plu = fixtures::plu();
        let l = cartesian_lift(&FinMap::identity(2), &plu).unwrap();
        assert_eq!(l.source, plu);

        let ord = fixtures::ord();
        let l = cartesian_lift(&FinMap::new(3, vec![1]).unwrap(), &ord).unwrap();
        assert_eq!(*l.source.converges(), Rel::diagonal(1));

        let one = TSpace::indiscrete(MonadSpec::identity(), 1).unwrap();
        let l = cartesian_lift(&FinMap::constant(2, 1, 0).unwrap(), &one).unwrap();
        assert_eq!(*l.source.converges(), Rel::full(2, 2));
    }

    #[test]
    fn cartesian_examples() {
        let ord = fixtures::ord();
        assert!(is_cartesian(&MonotoneMap::identity(&ord)).unwrap().is_cartesian);
        let one = TSpace::indiscrete(MonadSpec::identity(), 1).unwrap();
        let q = MonotoneMap::new(FinMap::constant(3, 1, 0).unwrap(), ord, one).unwrap();
        let rep = is_cartesian(&q).unwrap();
        assert!(!rep.is_cartesian);
        let (z, h) = rep.witness.unwrap();
        assert!(!check_monotone(&h, &z, &q.source).unwrap());
        assert!(check_monotone(&q.map.compose(&h), &z, &q.target).unwrap());
    }

    #[test]
    fn structure_test_matches_cone_search() {
        for m in [MonadSpec::identity(), MonadSpec::powerset()] {
            let spaces = enumerate_spaces_upto(&m, 2).unwrap();
            for a in &spaces {
                for b in &spaces {
                    let mut maps = Vec::new();
                    for_each_monotone(a, b, |f| {
                        maps.push(f.clone());
                        true
                    })
                    .unwrap();
                    for f in maps {
                        let mm = MonotoneMap::new(f, a.clone(), b.clone()).unwrap();
                        assert_eq!(
                            is_cartesian(&mm).unwrap().is_cartesian,
                            cartesian_by_cones(&mm, 2).unwrap().is_cartesian
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cartesian_composites() {
        let spaces = enumerate_spaces_upto(&MonadSpec::identity(), 2).unwrap();
        let cart = |f: &MonotoneMap| is_cartesian(f).unwrap().is_cartesian;
        let monos = |a: &TSpace, b: &TSpace| {
            let mut v = Vec::new();
            for_each_monotone(a, b, |f| {
                v.push(MonotoneMap::new(f.clone(), a.clone(), b.clone()).unwrap());
                true
            })
            .unwrap();
            v
        };
        for a in &spaces {
            for b in &spaces {
                for c in &spaces {
                    for f in monos(a, b) {
                        for g in monos(b, c) {
                            let gf = f.then(&g).unwrap();
                            if cart(&f) && cart(&g) {
                                assert!(cart(&gf));
                            }
                            if cart(&gf) && cart(&g) {
                                assert!(cart(&f));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gen_validate_examples() {
        let m = MonadSpec::identity();
        let triv = |n| EMAlgebra::new(m.clone(), FinSet::new(n), FinMap::identity(n)).unwrap();
        assert!(gen_validate(FinMap::constant(2, 1, 0).unwrap(), triv(1)).is_ok());
        assert!(matches!(
            gen_validate(FinMap::new(2, vec![0]).unwrap(), triv(2)),
            Err(Error::NotGenerating(_))
        ));

        let p = MonadSpec::powerset();
        let free = EMAlgebra::free(&p, 2).unwrap();
        let g = gen_validate(p.unit_component(2).unwrap(), free).unwrap();
        assert_eq!(g.psharp, FinMap::identity(4));
    }

    #[test]
    fn gen_reflect_examples() {
        let m = MonadSpec::identity();
        let one = EMAlgebra::new(m.clone(), FinSet::new(1), FinMap::identity(1)).unwrap();
        let g = gen_validate(FinMap::constant(2, 1, 0).unwrap(), one).unwrap();
        let (unit, r) = gen_reflect(&g).unwrap();
        assert_eq!(r.algebra.n(), 1);
        assert_eq!(unit.fstar.compose(&g.p), r.p.compose(&unit.f));
        let (unit2, r2) = gen_reflect(&r).unwrap();
        assert_eq!(unit2.f, FinMap::identity(1));
        assert_eq!(r2, r);
    }

    #[test]
    fn ibar_examples() {
        let plu = fixtures::plu();
        let g = ibar(&plu).unwrap();
        assert_eq!(g.algebra.n(), 3);
        assert_eq!(g.p, beta_reflection(&plu).unwrap().unit.map);
        assert_eq!(jbar(&g).unwrap(), plu);

        let c = c_reflection(&fixtures::ord()).unwrap();
        let g = ibar(c.reflected()).unwrap();
        assert_eq!(g.algebra.n(), 2);
        assert_eq!(g.p.table(), &[0, 0, 1]);

        assert!(ibar(&fixtures::ord()).is_err());
    }

    #[test]
    fn jbar_examples() {
        let m = MonadSpec::identity();
        let one = EMAlgebra::new(m.clone(), FinSet::new(1), FinMap::identity(1)).unwrap();
        let g = gen_validate(FinMap::constant(2, 1, 0).unwrap(), one).unwrap();
        let s = jbar(&g).unwrap();
        assert_eq!(*s.converges(), Rel::full(2, 2));

        let free = EMAlgebra::free(&MonadSpec::powerset(), 2).unwrap();
        let g = gen_validate(FinMap::identity(4), free.clone()).unwrap();
        assert_eq!(jbar(&g).unwrap(), algebra_to_space(&free).unwrap());
    }

    #[test]
    fn beta_of_c_reflection_is_cartesian() {
        for s in enumerate_spaces_upto(&MonadSpec::powerset(), 2).unwrap() {
            let c = c_reflection(&s).unwrap();
            let beta = beta_reflection(c.reflected()).unwrap();
            assert!(is_cartesian(&beta.unit).unwrap().is_cartesian);
        }
    }

    #[test]
    fn adjunction_on_small_instances() {
        for m in [MonadSpec::identity(), MonadSpec::powerset()] {
            let gens = enumerate_gen_objects(&m, 2, 2).unwrap();
            for z in enumerate_spaces_upto(&m, 2).unwrap() {
                if !check_cf(&z).unwrap().0 {
                    continue;
                }
                assert!(c_ibar_to_b(&z).unwrap().is_some());
                for g in &gens {
                    assert!(check_adjunction(&z, g).unwrap().holds(), "{z}");
                }
            }
        }
    }
}
