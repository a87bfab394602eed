//! Finite sets, maps and relations.
//!
//! Elements of a finite set of size `n` are the dense indices `0..n`; labels
//! are carried only for display. Every other module builds on the toolkit
//! here: composition, (surjective, injective) image factorization, binary
//! products, equalizers, kernel pairs and quotients by generated equivalences.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A finite set `{0, .., size-1}` with optional display labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl FinSet {
    pub fn new(size: usize) -> Self {
        FinSet { size, labels: None }
    }

    /// Labels must be pairwise distinct, one per element.
    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("labels must be pairwise distinct"));
        }
        Ok(FinSet {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label of element `i`; falls back to the index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }
}

/// A map between finite sets, stored as a lookup table into the codomain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinMap {
    cod: usize,
    table: Vec<usize>,
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinMap({} -> {}: {:?})", self.dom(), self.cod, self.table)
    }
}

impl FinMap {
    pub fn new(cod: usize, table: Vec<usize>) -> Result<Self> {
        if let Some(bad) = table.iter().find(|&&v| v >= cod) {
            return Err(Error::invalid(format!(
                "map entry {bad} out of range for codomain of size {cod}"
            )));
        }
        Ok(FinMap { cod, table })
    }

    /// Caller guarantees every entry is `< cod`.
    pub(crate) fn from_table_unchecked(cod: usize, table: Vec<usize>) -> Self {
        debug_assert!(table.iter().all(|&v| v < cod));
        FinMap { cod, table }
    }

    pub fn identity(n: usize) -> Self {
        FinMap {
            cod: n,
            table: (0..n).collect(),
        }
    }

    pub fn constant(dom: usize, cod: usize, value: usize) -> Result<Self> {
        FinMap::new(cod, vec![value; dom])
    }

    /// The unique map out of the empty set.
    pub fn empty(cod: usize) -> Self {
        FinMap { cod, table: vec![] }
    }

    pub fn dom(&self) -> usize {
        self.table.len()
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ inner`.
    ///
    /// # Panics
    /// If `inner`'s codomain is not `self`'s domain.
    pub fn compose(&self, inner: &FinMap) -> FinMap {
        assert_eq!(
            inner.cod,
            self.dom(),
            "composing maps with mismatched domain/codomain"
        );
        FinMap {
            cod: self.cod,
            table: inner.table.iter().map(|&x| self.table[x]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        for &v in &self.table {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        for &v in &self.table {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom() == self.cod && self.is_injective()
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<FinMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.cod];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y] = x;
        }
        Some(FinMap {
            cod: self.dom(),
            table: inv,
        })
    }

    /// Partition of the domain into fibres of the map.
    pub fn kernel(&self) -> Partition {
        Partition::from_keys(&self.table)
    }

    /// The kernel pair `{(x, x') : f x = f x'}` as a relation on the domain.
    pub fn kernel_pair(&self) -> Rel {
        let n = self.dom();
        let mut pairs = Vec::new();
        for x in 0..n {
            for x2 in 0..n {
                if self.table[x] == self.table[x2] {
                    pairs.push((x, x2));
                }
            }
        }
        Rel::from_sorted_unchecked(n, n, pairs)
    }

    /// Corestriction to a subset of the codomain listed by `elements` (sorted, distinct).
    pub fn corestrict(&self, elements: &[usize]) -> Result<FinMap> {
        let mut pos = vec![usize::MAX; self.cod];
        for (i, &e) in elements.iter().enumerate() {
            pos[e] = i;
        }
        let mut table = Vec::with_capacity(self.dom());
        for &v in &self.table {
            if pos[v] == usize::MAX {
                return Err(Error::invalid(format!("value {v} outside corestriction")));
            }
            table.push(pos[v]);
        }
        Ok(FinMap {
            cod: elements.len(),
            table,
        })
    }
}

/// Factor `f` as `mono ∘ epi` with `epi` surjective and `mono` injective.
///
/// Image elements are numbered in order of first occurrence while scanning
/// the domain.
pub fn image_factorize(f: &FinMap) -> (FinMap, FinMap) {
    let mut slot = vec![usize::MAX; f.cod];
    let mut image = Vec::new();
    let mut epi = Vec::with_capacity(f.dom());
    for &v in &f.table {
        if slot[v] == usize::MAX {
            slot[v] = image.len();
            image.push(v);
        }
        epi.push(slot[v]);
    }
    let k = image.len();
    (
        FinMap { cod: k, table: epi },
        FinMap {
            cod: f.cod,
            table: image,
        },
    )
}

/// Representative preimage for each image element of [`image_factorize`].
pub fn image_representatives(f: &FinMap) -> Vec<usize> {
    let mut seen = vec![false; f.cod];
    let mut reps = Vec::new();
    for (x, &v) in f.table.iter().enumerate() {
        if !std::mem::replace(&mut seen[v], true) {
            reps.push(x);
        }
    }
    reps
}

/// A binary product `a × b` with its projections; `(i, j)` is encoded as `i·|b| + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCone {
    pub carrier: FinSet,
    pub proj1: FinMap,
    pub proj2: FinMap,
    right: usize,
}

impl ProductCone {
    pub fn pair(&self, i: usize, j: usize) -> usize {
        i * self.right + j
    }
}

pub fn product_cone(a: &FinSet, b: &FinSet) -> ProductCone {
    let (n, m) = (a.size(), b.size());
    let carrier = match (a.labels(), b.labels()) {
        (None, None) => FinSet::new(n * m),
        _ => {
            let mut labels = Vec::with_capacity(n * m);
            for i in 0..n {
                for j in 0..m {
                    labels.push(format!("({},{})", a.label(i), b.label(j)));
                }
            }
            FinSet::with_labels(labels).unwrap_or_else(|_| FinSet::new(n * m))
        }
    };
    let proj1 = FinMap {
        cod: n,
        table: (0..n * m).map(|k| k / m.max(1)).collect(),
    };
    let proj2 = FinMap {
        cod: m,
        table: (0..n * m).map(|k| k % m.max(1)).collect(),
    };
    ProductCone {
        carrier,
        proj1,
        proj2,
        right: m,
    }
}

/// The equalizer of `f, g: X → Y` as an injection into `X`.
pub fn equalizer(f: &FinMap, g: &FinMap) -> FinMap {
    assert_eq!(f.dom(), g.dom());
    let table: Vec<usize> = (0..f.dom()).filter(|&x| f.apply(x) == g.apply(x)).collect();
    FinMap { cod: f.dom(), table }
}

/// A binary relation `R ⊆ dom × cod`, deduplicated and sorted lexicographically.
#[derive(Clone, Default)]
pub struct Rel {
    dom: usize,
    cod: usize,
    pairs: Vec<(usize, usize)>,
    bits: OnceLock<Vec<u64>>,
}

const BIT_CACHE_LIMIT: usize = 1 << 26;

impl PartialEq for Rel {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.pairs == other.pairs
    }
}

impl Eq for Rel {}

impl std::hash::Hash for Rel {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dom.hash(state);
        self.cod.hash(state);
        self.pairs.hash(state);
    }
}

impl fmt::Debug for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rel({} x {}: {:?})", self.dom, self.cod, self.pairs)
    }
}

impl Rel {
    pub fn new(dom: usize, cod: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut v: Vec<(usize, usize)> = pairs.into_iter().collect();
        if let Some(&(a, b)) = v.iter().find(|&&(a, b)| a >= dom || b >= cod) {
            return Err(Error::invalid(format!(
                "pair ({a}, {b}) outside {dom} x {cod}"
            )));
        }
        v.sort_unstable();
        v.dedup();
        Ok(Rel::from_sorted_unchecked(dom, cod, v))
    }

    pub(crate) fn from_sorted_unchecked(dom: usize, cod: usize, pairs: Vec<(usize, usize)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        Rel {
            dom,
            cod,
            pairs,
            bits: OnceLock::new(),
        }
    }

    /// Build from a membership predicate over `dom × cod`.
    pub fn from_fn(dom: usize, cod: usize, mut pred: impl FnMut(usize, usize) -> bool) -> Self {
        let mut pairs = Vec::new();
        for a in 0..dom {
            for b in 0..cod {
                if pred(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        Rel::from_sorted_unchecked(dom, cod, pairs)
    }

    pub fn empty(dom: usize, cod: usize) -> Self {
        Rel::from_sorted_unchecked(dom, cod, vec![])
    }

    pub fn full(dom: usize, cod: usize) -> Self {
        Rel::from_fn(dom, cod, |_, _| true)
    }

    pub fn diagonal(n: usize) -> Self {
        Rel::from_sorted_unchecked(n, n, (0..n).map(|i| (i, i)).collect())
    }

    /// Graph `{(x, f x)}` of a map.
    pub fn graph(f: &FinMap) -> Self {
        Rel::from_sorted_unchecked(f.dom(), f.cod(), f.table().iter().copied().enumerate().collect())
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn bit_cache(&self) -> Option<&Vec<u64>> {
        let total = self.dom.checked_mul(self.cod)?;
        if total > BIT_CACHE_LIMIT {
            return None;
        }
        Some(self.bits.get_or_init(|| {
            let mut bits = vec![0u64; total.div_ceil(64)];
            for &(a, b) in &self.pairs {
                let k = a * self.cod + b;
                bits[k / 64] |= 1 << (k % 64);
            }
            bits
        }))
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        if a >= self.dom || b >= self.cod {
            return false;
        }
        match self.bit_cache() {
            Some(bits) => {
                let k = a * self.cod + b;
                bits[k / 64] >> (k % 64) & 1 == 1
            }
            None => self.pairs.binary_search(&(a, b)).is_ok(),
        }
    }

    /// Elements related to `a`.
    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.pairs.partition_point(|&(x, _)| x < a);
        self.pairs[start..]
            .iter()
            .take_while(move |&&(x, _)| x == a)
            .map(|&(_, b)| b)
    }

    pub fn converse(&self) -> Rel {
        let mut v: Vec<(usize, usize)> = self.pairs.iter().map(|&(a, b)| (b, a)).collect();
        v.sort_unstable();
        Rel::from_sorted_unchecked(self.cod, self.dom, v)
    }

    pub fn union(&self, other: &Rel) -> Rel {
        assert_eq!((self.dom, self.cod), (other.dom, other.cod));
        let mut v = self.pairs.clone();
        v.extend_from_slice(&other.pairs);
        v.sort_unstable();
        v.dedup();
        Rel::from_sorted_unchecked(self.dom, self.cod, v)
    }

    pub fn intersection(&self, other: &Rel) -> Rel {
        assert_eq!((self.dom, self.cod), (other.dom, other.cod));
        let v = self
            .pairs
            .iter()
            .copied()
            .filter(|&(a, b)| other.contains(a, b))
            .collect();
        Rel::from_sorted_unchecked(self.dom, self.cod, v)
    }

    pub fn is_subset(&self, other: &Rel) -> bool {
        self.dom == other.dom
            && self.cod == other.cod
            && self.pairs.iter().all(|&(a, b)| other.contains(a, b))
    }

    /// The pairs of `other` missing from `self`.
    pub fn difference(&self, other: &Rel) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .copied()
            .filter(|&(a, b)| !other.contains(a, b))
            .collect()
    }

    /// Projection maps `π1: R → dom`, `π2: R → cod` from the relation viewed as a finite set.
    pub fn projections(&self) -> (FinMap, FinMap) {
        (
            FinMap::from_table_unchecked(self.dom, self.pairs.iter().map(|p| p.0).collect()),
            FinMap::from_table_unchecked(self.cod, self.pairs.iter().map(|p| p.1).collect()),
        )
    }

    /// Index of a pair in the canonical ordering.
    pub fn position(&self, a: usize, b: usize) -> Option<usize> {
        self.pairs.binary_search(&(a, b)).ok()
    }

    /// Image of the relation under `f × g`.
    pub fn image(&self, f: &FinMap, g: &FinMap) -> Rel {
        let mut v: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(a, b)| (f.apply(a), g.apply(b)))
            .collect();
        v.sort_unstable();
        v.dedup();
        Rel::from_sorted_unchecked(f.cod(), g.cod(), v)
    }
}

/// Relational composite `s ∘ r`: first `r: X → Y`, then `s: Y → Z`.
pub fn rel_compose(r: &Rel, s: &Rel) -> Rel {
    assert_eq!(r.cod, s.dom, "relations are not composable");
    let mut out = Vec::new();
    for a in 0..r.dom {
        let mut row = vec![false; s.cod];
        for y in r.successors(a) {
            for z in s.successors(y) {
                row[z] = true;
            }
        }
        out.extend(row.into_iter().enumerate().filter(|p| p.1).map(|(z, _)| (a, z)));
    }
    Rel::from_sorted_unchecked(r.dom, s.cod, out)
}

/// A partition of `0..n`; blocks are ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition {
            class_of: (0..n).collect(),
            classes: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// Partition whose blocks are the level sets of `keys`.
    pub fn from_keys<K: Eq + std::hash::Hash + Copy>(keys: &[K]) -> Self {
        let mut index = std::collections::HashMap::new();
        let mut class_of = Vec::with_capacity(keys.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, k) in keys.iter().enumerate() {
            let c = *index.entry(*k).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(i);
            class_of.push(c);
        }
        Partition { class_of, classes }
    }

    pub fn num_elements(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// Least member of each class.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// Canonical projection onto the classes.
    pub fn projection(&self) -> FinMap {
        FinMap::from_table_unchecked(self.classes.len(), self.class_of.clone())
    }

    /// Least-member section of the projection.
    pub fn section(&self) -> FinMap {
        FinMap::from_table_unchecked(self.class_of.len(), self.representatives())
    }

    /// The equivalence as a relation.
    pub fn as_rel(&self) -> Rel {
        let n = self.class_of.len();
        Rel::from_fn(n, n, |a, b| self.class_of[a] == self.class_of[b])
    }

    /// Pairs `(x, y)` with `x ≠ y` in the same class.
    pub fn merged_pairs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for c in &self.classes {
            for &a in c {
                for &b in c {
                    if a != b {
                        v.push((a, b));
                    }
                }
            }
        }
        v.sort_unstable();
        v
    }
}

/// Disjoint-set forest with path halving.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller index as root so roots are least members
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }

    pub fn partition(&mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_keys(&roots)
    }
}

/// Quotient of `X` by the least equivalence relation containing `r`.
pub fn coequalizer_quotient(r: &Rel) -> Result<(FinMap, Partition)> {
    if r.dom != r.cod {
        return Err(Error::invalid("coequalizer_quotient needs an endo-relation"));
    }
    let mut uf = UnionFind::new(r.dom);
    for (a, b) in r.iter() {
        uf.union(a, b);
    }
    let p = uf.partition();
    Ok((p.projection(), p))
}

/// All maps `dom → cod`, in lexicographic order of their tables.
pub fn all_maps(dom: usize, cod: usize) -> impl Iterator<Item = FinMap> {
    let total: Option<usize> = if cod == 0 {
        Some(if dom == 0 { 1 } else { 0 })
    } else {
        u32::try_from(dom).ok().and_then(|d| cod.checked_pow(d))
    };
    let total = total.expect("too many maps to enumerate");
    (0..total).map(move |mut k| {
        let mut table = vec![0; dom];
        for slot in table.iter_mut().rev() {
            *slot = k % cod;
            k /= cod;
        }
        FinMap { cod, table }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn image_of_constant_map() {
        let f = FinMap::new(3, vec![2, 2]).unwrap();
        let (epi, mono) = image_factorize(&f);
        assert_eq!(epi.table(), &[0, 0]);
        assert_eq!(epi.cod(), 1);
        assert_eq!(mono.table(), &[2]);
    }

    #[test]
    fn image_of_identity() {
        let f = FinMap::identity(3);
        let (epi, mono) = image_factorize(&f);
        assert_eq!(epi, f);
        assert_eq!(mono, f);
    }

    #[test]
    fn image_uses_first_occurrence_order() {
        let f = FinMap::new(3, vec![1, 1, 0]).unwrap();
        let (epi, mono) = image_factorize(&f);
        assert_eq!(epi.table(), &[0, 0, 1]);
        assert_eq!(mono.table(), &[1, 0]);
        assert_eq!(image_representatives(&f), vec![0, 2]);
    }

    #[test]
    fn product_encoding() {
        let pc = product_cone(&FinSet::new(2), &FinSet::new(3));
        assert_eq!(pc.carrier.size(), 6);
        assert_eq!(pc.proj1.table(), &[0, 0, 0, 1, 1, 1]);
        assert_eq!(pc.proj2.table(), &[0, 1, 2, 0, 1, 2]);
        assert_eq!(pc.pair(1, 2), 5);

        let empty = product_cone(&FinSet::new(0), &FinSet::new(4));
        assert_eq!(empty.carrier.size(), 0);

        let unit = product_cone(&FinSet::new(1), &FinSet::new(4));
        assert!(unit.proj2.is_bijective());
    }

    #[test]
    fn quotient_examples() {
        let (q, p) = coequalizer_quotient(&Rel::empty(3, 3)).unwrap();
        assert_eq!(p.num_classes(), 3);
        assert_eq!(q, FinMap::identity(3));

        let (_, p) = coequalizer_quotient(&Rel::new(3, 3, [(0, 1)]).unwrap()).unwrap();
        assert_eq!(p.classes(), &[vec![0, 1], vec![2]]);

        let (_, p) = coequalizer_quotient(&Rel::new(3, 3, [(0, 1), (1, 2)]).unwrap()).unwrap();
        assert_eq!(p.num_classes(), 1);
    }

    #[test]
    fn compose_examples() {
        let s = Rel::new(2, 2, [(0, 1), (1, 1)]).unwrap();
        assert_eq!(rel_compose(&Rel::diagonal(2), &s), s);
        let r = Rel::new(2, 2, [(0, 1)]).unwrap();
        let s = Rel::new(2, 2, [(1, 0)]).unwrap();
        assert_eq!(rel_compose(&r, &s).pairs(), &[(0, 0)]);
        assert!(rel_compose(&Rel::full(2, 2), &Rel::empty(2, 2)).is_empty());
    }

    #[test]
    fn rel_rejects_out_of_range() {
        assert!(Rel::new(2, 2, [(2, 0)]).is_err());
        assert!(FinMap::new(2, vec![0, 2]).is_err());
    }

    #[test]
    fn labels_must_be_distinct() {
        assert!(FinSet::with_labels(vec!["a".into(), "a".into()]).is_err());
        let s = FinSet::with_labels(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(s.label(1), "b");
    }

    #[test]
    fn equalizer_and_kernel_pair() {
        let f = FinMap::new(2, vec![0, 1, 1]).unwrap();
        let g = FinMap::new(2, vec![0, 0, 1]).unwrap();
        assert_eq!(equalizer(&f, &g).table(), &[0, 2]);
        let k = f.kernel_pair();
        assert!(k.contains(1, 2) && !k.contains(0, 1));
    }

    #[test]
    fn all_maps_counts() {
        assert_eq!(all_maps(2, 3).count(), 9);
        assert_eq!(all_maps(0, 0).count(), 1);
        assert_eq!(all_maps(2, 0).count(), 0);
        assert_eq!(all_maps(0, 5).count(), 1);
    }

    fn brute_force_partition(n: usize, r: &Rel) -> Vec<Vec<bool>> {
        let mut m: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        for (a, b) in r.iter() {
            m[a][b] = true;
            m[b][a] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if m[i][k] && m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
        m
    }

    fn arb_map(max: usize) -> impl Strategy<Value = FinMap> {
        (0..=max, 1..=max).prop_flat_map(|(d, c)| {
            proptest::collection::vec(0..c, d).prop_map(move |t| FinMap::new(c, t).unwrap())
        })
    }

    fn arb_rel(dom: usize, cod: usize) -> impl Strategy<Value = Rel> {
        proptest::collection::vec(any::<bool>(), dom * cod).prop_map(move |bits| {
            Rel::from_fn(dom, cod, |a, b| bits[a * cod + b])
        })
    }

    proptest! {
        #[test]
        fn factorization_recomposes(f in arb_map(6)) {
            let (epi, mono) = image_factorize(&f);
            prop_assert_eq!(mono.compose(&epi), f);
            prop_assert!(epi.is_surjective());
            prop_assert!(mono.is_injective());
        }

        #[test]
        fn quotient_matches_closure(n in 0usize..=4, seed in proptest::collection::vec(any::<bool>(), 16)) {
            let r = Rel::from_fn(n, n, |a, b| seed[a * 4 + b]);
            let (_, p) = coequalizer_quotient(&r).unwrap();
            let m = brute_force_partition(n, &r);
            for (a, row) in m.iter().enumerate() {
                for (b, &v) in row.iter().enumerate() {
                    prop_assert_eq!(p.same(a, b), v);
                }
            }
        }

        #[test]
        fn composition_is_associative_with_units(
            (r, s, t) in (1usize..=4, 1usize..=4, 1usize..=4, 1usize..=4)
                .prop_flat_map(|(a, b, c, d)| (arb_rel(a, b), arb_rel(b, c), arb_rel(c, d)))
        ) {
            prop_assert_eq!(rel_compose(&rel_compose(&r, &s), &t), rel_compose(&r, &rel_compose(&s, &t)));
            prop_assert_eq!(rel_compose(&Rel::diagonal(r.dom()), &r), r.clone());
            prop_assert_eq!(rel_compose(&r, &Rel::diagonal(r.cod())), r);
        }
    }
}
