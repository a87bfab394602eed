//! Axiom checks, saturation and initial/final structures.

use super::extension::{barr_extend, limit_masks};
use super::{TSpace, Validity};
use crate::error::{Error, Result};
use crate::finset::{product_cone, FinMap, FinSet, Rel};
use crate::monad::{bits, MonadKind, MonadSpec};

/// A failure of transitivity: `(outer, middle) ∈ Ĉ` and `middle ⇝ target`,
/// but `μ(outer) = missing` does not converge to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityViolation {
    /// the `TTX` element; absent when `TTX` is too large to index
    pub outer: Option<usize>,
    pub middle: usize,
    pub target: usize,
    pub missing: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub reflexive: bool,
    pub transitive: bool,
    /// a point `x` with `η(x) ⇝ x` missing
    pub reflexive_witness: Option<usize>,
    pub transitive_witness: Option<TransitivityViolation>,
}

impl AxiomReport {
    pub fn is_space(&self) -> bool {
        self.reflexive && self.transitive
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(x) = self.reflexive_witness {
            parts.push(format!("(R) fails at point {x}"));
        }
        if let Some(v) = &self.transitive_witness {
            parts.push(format!(
                "(T) fails: element {} must converge to {}",
                v.missing, v.target
            ));
        }
        if parts.is_empty() {
            "(R) and (T) hold".into()
        } else {
            parts.join("; ")
        }
    }
}

fn reflexive_witness(s: &TSpace) -> Result<Option<usize>> {
    let eta = s.monad().unit_component(s.n())?;
    Ok((0..s.n()).find(|&x| !s.converges_to(eta.apply(x), x)))
}

/// Binary-union closure of `{A : A ⇝ y}` for each point `y`, as membership
/// tables over `PX`.
fn union_closures(tn: usize, n: usize, lim: &[usize]) -> Vec<Vec<bool>> {
    (0..n)
        .map(|y| {
            let mut member = vec![false; tn];
            let mut list = Vec::new();
            for a in 0..tn {
                if lim[a] >> y & 1 == 1 && !member[a] {
                    member[a] = true;
                    list.push(a);
                }
            }
            let mut i = 0;
            while i < list.len() {
                let u = list[i];
                let mut j = 0;
                while j < list.len() {
                    let w = u | list[j];
                    if !member[w] {
                        member[w] = true;
                        list.push(w);
                    }
                    j += 1;
                }
                i += 1;
            }
            member
        })
        .collect()
}

fn ach_from_closures(tn: usize, closures: &[Vec<bool>], b: usize) -> Vec<bool> {
    let mut cur = vec![false; tn];
    cur[0] = true;
    for y in bits(b) {
        let mut next = vec![false; tn];
        let s = &closures[y];
        for u in (0..tn).filter(|&u| cur[u]) {
            for v in (0..tn).filter(|&v| s[v]) {
                next[u | v] = true;
            }
        }
        cur = next;
    }
    cur
}

/// For a powerset space: the unions `⋃𝔛` over all `𝔛` with `(𝔛, B) ∈ Ĉ`.
pub fn achievable_unions(s: &TSpace, b: usize) -> Result<Vec<usize>> {
    s.require_kind(MonadKind::Powerset)?;
    let lim = limit_masks(s);
    let cl = union_closures(s.t_size(), s.n(), &lim);
    let ach = ach_from_closures(s.t_size(), &cl, b);
    Ok((0..ach.len()).filter(|&u| ach[u]).collect())
}

/// A family witnessing `(𝔛, B) ∈ Ĉ` with `⋃𝔛 = u`, when it can be indexed.
fn powerset_outer(tn: usize, lim: &[usize], b: usize, u: usize) -> Option<usize> {
    if tn >= usize::BITS as usize {
        return None;
    }
    let fam = (0..tn)
        .filter(|&a| a & !u == 0 && lim[a] & b != 0)
        .fold(0usize, |acc, a| acc | 1 << a);
    Some(fam)
}

fn powerset_transitivity(s: &TSpace) -> Option<TransitivityViolation> {
    let tn = s.t_size();
    let lim = limit_masks(s);
    let cl = union_closures(tn, s.n(), &lim);
    let mut memo: Vec<Option<Vec<bool>>> = vec![None; tn];
    for (b, z) in s.converges().iter() {
        let ach = memo[b].get_or_insert_with(|| ach_from_closures(tn, &cl, b));
        if let Some(u) = (0..tn).find(|&u| ach[u] && !s.converges_to(u, z)) {
            return Some(TransitivityViolation {
                outer: powerset_outer(tn, &lim, b, u),
                middle: b,
                target: z,
                missing: u,
            });
        }
    }
    None
}

/// Transitivity decided through the materialized `Ĉ`.
pub fn transitive_via_extension(s: &TSpace) -> Result<Option<TransitivityViolation>> {
    let m = s.monad();
    let ext = barr_extend(s)?;
    for (outer, middle) in ext.pairs.iter() {
        let missing = m.mult_element(s.n(), outer);
        for target in s.converges().successors(middle) {
            if !s.converges_to(missing, target) {
                return Ok(Some(TransitivityViolation {
                    outer: Some(outer),
                    middle,
                    target,
                    missing,
                }));
            }
        }
    }
    Ok(None)
}

/// (R) and (T), with counterexamples.
pub fn check_axioms(s: &TSpace) -> Result<AxiomReport> {
    let rw = reflexive_witness(s)?;
    let tw = if s.monad().kind() == MonadKind::Powerset {
        powerset_transitivity(s)
    } else {
        transitive_via_extension(s)?
    };
    Ok(AxiomReport {
        reflexive: rw.is_none(),
        transitive: tw.is_none(),
        reflexive_witness: rw,
        transitive_witness: tw,
    })
}

/// Least T-space structure containing `rel`.
pub fn saturate_rel(monad: &MonadSpec, n: usize, rel: &Rel) -> Result<Rel> {
    let tn = monad.t_size(n)?;
    if rel.dom() != tn || rel.cod() != n {
        return Err(Error::invalid("relation does not fit the carrier"));
    }
    let mut member = vec![false; tn * n];
    for (t, y) in rel.iter() {
        member[t * n + y] = true;
    }
    let eta = monad.unit_component(n)?;
    for x in 0..n {
        member[eta.apply(x) * n + x] = true;
    }
    let to_rel = |member: &[bool]| {
        Rel::from_sorted_unchecked(
            tn,
            n,
            (0..tn * n).filter(|&i| member[i]).map(|i| (i / n, i % n)).collect(),
        )
    };
    loop {
        let current = TSpace::graph(monad.clone(), FinSet::new(n), to_rel(&member))?;
        let mut added = Vec::new();
        if monad.kind() == MonadKind::Powerset {
            let lim = limit_masks(&current);
            let cl = union_closures(tn, n, &lim);
            let mut memo: Vec<Option<Vec<bool>>> = vec![None; tn];
            for (b, z) in current.converges().iter() {
                let ach = memo[b].get_or_insert_with(|| ach_from_closures(tn, &cl, b));
                for u in (0..tn).filter(|&u| ach[u]) {
                    if !member[u * n + z] {
                        added.push(u * n + z);
                    }
                }
            }
        } else {
            let ext = barr_extend(&current)?;
            for (outer, middle) in ext.pairs.iter() {
                let u = monad.mult_element(n, outer);
                for z in current.converges().successors(middle) {
                    if !member[u * n + z] {
                        added.push(u * n + z);
                    }
                }
            }
        }
        if added.is_empty() {
            return Ok(current.converges);
        }
        for i in added {
            member[i] = true;
        }
    }
}

/// The least T-space structure containing the graph's relation.
pub fn saturate(g: &TSpace) -> Result<TSpace> {
    let rel = saturate_rel(g.monad(), g.n(), g.converges())?;
    Ok(TSpace {
        monad: g.monad().clone(),
        points: g.points().clone(),
        converges: rel,
        validated: Validity::Space,
    })
}

fn check_family(monad: &MonadSpec, maps: &[(FinMap, &TSpace)], n: usize, domain: bool) -> Result<()> {
    for (f, s) in maps {
        if s.monad() != monad {
            return Err(Error::IncompatibleMonads {
                left: monad.to_string(),
                right: s.monad().to_string(),
            });
        }
        let (end, other) = if domain { (f.dom(), f.cod()) } else { (f.cod(), f.dom()) };
        if end != n || other != s.n() {
            return Err(Error::invalid(format!(
                "map {} -> {} does not fit carrier of size {n}",
                f.dom(),
                f.cod()
            )));
        }
    }
    Ok(())
}

/// The largest structure on `n` points making every `f_i: X → X_i` monotone:
/// `t ⇝ y` iff `Tf_i(t) ⇝ f_i(y)` for all `i`.
pub fn initial_structure(monad: &MonadSpec, n: usize, maps: &[(FinMap, &TSpace)]) -> Result<TSpace> {
    check_family(monad, maps, n, true)?;
    let tn = monad.t_size(n)?;
    let tfs: Vec<FinMap> = maps
        .iter()
        .map(|(f, _)| monad.apply_functor(f))
        .collect::<Result<_>>()?;
    let rel = Rel::from_fn(tn, n, |t, y| {
        maps.iter()
            .zip(&tfs)
            .all(|((f, s), tf)| s.converges_to(tf.apply(t), f.apply(y)))
    });
    TSpace::graph(monad.clone(), FinSet::new(n), rel)
}

/// The least T-space structure on `n` points making every `f_i: X_i → Y`
/// monotone.
pub fn final_structure(monad: &MonadSpec, n: usize, maps: &[(FinMap, &TSpace)]) -> Result<TSpace> {
    check_family(monad, maps, n, false)?;
    let tn = monad.t_size(n)?;
    let mut pairs = Vec::new();
    for (f, s) in maps {
        let k = s.n();
        for (t, z) in s.converges().iter() {
            pairs.push((monad.map_element(k, t, f.table(), n), f.apply(z)));
        }
    }
    let g = TSpace::graph(monad.clone(), FinSet::new(n), Rel::new(tn, n, pairs)?)?;
    saturate(&g)
}

/// `A × B` with the initial structure along both projections.
pub fn product_space(a: &TSpace, b: &TSpace) -> Result<TSpace> {
    a.require_same_monad(b)?;
    let pc = product_cone(a.points(), b.points());
    let n = pc.carrier.size();
    let s = initial_structure(
        a.monad(),
        n,
        &[(pc.proj1.clone(), a), (pc.proj2.clone(), b)],
    )?;
    s.with_points(pc.carrier)
}
