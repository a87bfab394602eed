//! T-graphs and T-spaces: a carrier with a convergence relation `C ⊆ TX × X`.

mod conditions;
mod extension;
mod structure;

use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet, Rel};
use crate::monad::{MonadKind, MonadSpec, TElem};

pub use conditions::{
    check_clo_closure, check_khaus, closure_to_space, is_closure_operator, membership_composite,
    CloReport, ConditionReport, KhausViolation,
};
pub use extension::{barr_extend, generic_extension, hat_contains_powerset, ExtRelation};
pub use structure::{
    achievable_unions, check_axioms, final_structure, initial_structure, product_space, saturate,
    saturate_rel, transitive_via_extension, AxiomReport, TransitivityViolation,
};

/// How much of the space axioms has been established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Validity {
    Unknown,
    /// checked; reflexivity or transitivity fails
    GraphOnly,
    /// checked; (R) and (T) hold
    Space,
}

/// A carrier `X` with a relation `C ⊆ TX × X` over a monad.
#[derive(Clone, Debug)]
pub struct TSpace {
    monad: MonadSpec,
    points: FinSet,
    converges: Rel,
    validated: Validity,
}

impl PartialEq for TSpace {
    fn eq(&self, other: &Self) -> bool {
        self.monad == other.monad
            && self.points.size() == other.points.size()
            && self.converges == other.converges
    }
}

impl Eq for TSpace {}

impl std::hash::Hash for TSpace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.monad.hash(state);
        self.points.size().hash(state);
        self.converges.hash(state);
    }
}

impl TSpace {
    /// A T-graph; nothing about the axioms is checked.
    pub fn graph(monad: MonadSpec, points: FinSet, converges: Rel) -> Result<Self> {
        let tn = monad.t_size(points.size())?;
        if converges.dom() != tn || converges.cod() != points.size() {
            return Err(Error::invalid(format!(
                "relation is {} x {}, expected {} x {}",
                converges.dom(),
                converges.cod(),
                tn,
                points.size()
            )));
        }
        Ok(TSpace {
            monad,
            points,
            converges,
            validated: Validity::Unknown,
        })
    }

    /// A T-graph from index pairs `(t, y)`.
    pub fn from_pairs(
        monad: MonadSpec,
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let tn = monad.t_size(n)?;
        let rel = Rel::new(tn, n, pairs)?;
        TSpace::graph(monad, FinSet::new(n), rel)
    }

    /// A T-graph from abstract elements.
    pub fn from_elems(
        monad: MonadSpec,
        n: usize,
        pairs: impl IntoIterator<Item = (TElem, usize)>,
    ) -> Result<Self> {
        let enc: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(e, y)| monad.encode(n, &e).map(|t| (t, y)))
            .collect::<Result<_>>()?;
        TSpace::from_pairs(monad, n, enc)
    }

    /// A T-space: fails with `Invalid` when (R) or (T) does not hold.
    pub fn new(monad: MonadSpec, points: FinSet, converges: Rel) -> Result<Self> {
        TSpace::graph(monad, points, converges)?.validate()
    }

    /// Checks the axioms and records the outcome; errors when they fail.
    pub fn validate(self) -> Result<Self> {
        let s = self.checked()?;
        if s.validated != Validity::Space {
            let rep = check_axioms(&s)?;
            return Err(Error::invalid(format!("not a T-space: {}", rep.describe())));
        }
        Ok(s)
    }

    /// Checks the axioms and records the outcome.
    pub fn checked(mut self) -> Result<Self> {
        if self.validated == Validity::Unknown {
            let rep = check_axioms(&self)?;
            self.validated = if rep.reflexive && rep.transitive {
                Validity::Space
            } else {
                Validity::GraphOnly
            };
        }
        Ok(self)
    }

    pub(crate) fn assume_space(mut self) -> Self {
        self.validated = Validity::Space;
        self
    }

    pub fn with_points(mut self, points: FinSet) -> Result<Self> {
        if points.size() != self.points.size() {
            return Err(Error::invalid("relabelling must keep the carrier size"));
        }
        self.points = points;
        Ok(self)
    }

    pub fn monad(&self) -> &MonadSpec {
        &self.monad
    }

    pub fn points(&self) -> &FinSet {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.size()
    }

    /// `|TX|`.
    pub fn t_size(&self) -> usize {
        self.converges.dom()
    }

    pub fn converges(&self) -> &Rel {
        &self.converges
    }

    pub fn validity(&self) -> Validity {
        self.validated
    }

    #[inline]
    pub fn converges_to(&self, t: usize, y: usize) -> bool {
        self.converges.contains(t, y)
    }

    /// Points `t` converges to.
    pub fn limits(&self, t: usize) -> Vec<usize> {
        self.converges.successors(t).collect()
    }

    pub(crate) fn require_same_monad(&self, other: &TSpace) -> Result<()> {
        if self.monad != other.monad {
            return Err(Error::IncompatibleMonads {
                left: self.monad.to_string(),
                right: other.monad.to_string(),
            });
        }
        Ok(())
    }

    pub(crate) fn require_kind(&self, kind: MonadKind) -> Result<()> {
        if self.monad.kind() != kind {
            return Err(Error::WrongMonad {
                expected: kind.name().into(),
                found: self.monad.to_string(),
            });
        }
        Ok(())
    }

    /// Every T-element converges to every point.
    pub fn indiscrete(monad: MonadSpec, n: usize) -> Result<Self> {
        let tn = monad.t_size(n)?;
        TSpace::graph(monad, FinSet::new(n), Rel::full(tn, n)).map(TSpace::assume_space)
    }

    /// The least T-space structure on `n` points.
    pub fn discrete(monad: MonadSpec, n: usize) -> Result<Self> {
        let tn = monad.t_size(n)?;
        saturate(&TSpace::graph(monad, FinSet::new(n), Rel::empty(tn, n))?)
    }
}

impl fmt::Display for TSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-space on {} points: {{", self.monad, self.n())?;
        for (i, (t, y)) in self.converges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match self.monad.decode(self.n(), t) {
                Ok(e) => write!(f, "{} -> {}", elem_text(&e), self.points.label(y))?,
                Err(_) => write!(f, "#{t} -> {y}")?,
            }
        }
        f.write_str("}")
    }
}

pub(crate) fn elem_text(e: &TElem) -> String {
    match e {
        TElem::Point(x) => x.to_string(),
        TElem::Subset(xs) => {
            let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", inner.join(","))
        }
        TElem::Act(m, x) => format!("({m},{x})"),
        TElem::Star => "*".into(),
    }
}

/// Whether `f` preserves convergence; returns the first source pair that is
/// not preserved.
pub fn monotone_violation(f: &FinMap, src: &TSpace, tgt: &TSpace) -> Result<Option<(usize, usize)>> {
    src.require_same_monad(tgt)?;
    if f.dom() != src.n() || f.cod() != tgt.n() {
        return Err(Error::invalid(format!(
            "map {} -> {} does not match spaces on {} and {} points",
            f.dom(),
            f.cod(),
            src.n(),
            tgt.n()
        )));
    }
    let m = src.monad();
    let (n, k) = (src.n(), tgt.n());
    Ok(src
        .converges()
        .iter()
        .find(|&(t, y)| !tgt.converges_to(m.map_element(n, t, f.table(), k), f.apply(y))))
}

pub fn check_monotone(f: &FinMap, src: &TSpace, tgt: &TSpace) -> Result<bool> {
    Ok(monotone_violation(f, src, tgt)?.is_none())
}

/// A monotone map between T-spaces over the same monad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    pub map: FinMap,
    pub source: TSpace,
    pub target: TSpace,
}

impl MonotoneMap {
    pub fn new(map: FinMap, source: TSpace, target: TSpace) -> Result<Self> {
        if let Some((t, y)) = monotone_violation(&map, &source, &target)? {
            return Err(Error::invalid(format!(
                "map {:?} is not monotone: pair ({t}, {y}) is not preserved",
                map.table()
            )));
        }
        Ok(MonotoneMap { map, source, target })
    }

    pub fn identity(s: &TSpace) -> Self {
        MonotoneMap {
            map: FinMap::identity(s.n()),
            source: s.clone(),
            target: s.clone(),
        }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &MonotoneMap) -> Result<MonotoneMap> {
        if self.target != g.source {
            return Err(Error::invalid("composing monotone maps through different spaces"));
        }
        Ok(MonotoneMap {
            map: g.map.compose(&self.map),
            source: self.source.clone(),
            target: g.target.clone(),
        })
    }

    /// The induced map `f̄: C_source → C_target` on relation elements, in the
    /// canonical pair order.
    pub fn lift(&self) -> FinMap {
        let m = self.source.monad();
        let (n, k) = (self.source.n(), self.target.n());
        let table = self
            .source
            .converges()
            .iter()
            .map(|(t, y)| {
                let img = (m.map_element(n, t, self.map.table(), k), self.map.apply(y));
                self.target
                    .converges()
                    .position(img.0, img.1)
                    .expect("monotone map preserves pairs")
            })
            .collect();
        FinMap::new(self.target.converges().len(), table).expect("positions in range")
    }
}
