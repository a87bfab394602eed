//! Eilenberg–Moore algebras and their identification with algebraic spaces.

use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet, Rel};
use crate::monad::{MonadKind, MonadSpec};
use crate::tspace::{check_khaus, TSpace};

/// An algebra `(X, c: TX → X)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EMAlgebra {
    monad: MonadSpec,
    carrier: FinSet,
    structure: FinMap,
}

impl EMAlgebra {
    /// Checks `c ∘ η = id` and `c ∘ Tc = c ∘ μ`.
    pub fn new(monad: MonadSpec, carrier: FinSet, structure: FinMap) -> Result<Self> {
        let n = carrier.size();
        let tn = monad.t_size(n)?;
        if structure.dom() != tn || structure.cod() != n {
            return Err(Error::invalid(format!(
                "structure map must be {tn} -> {n}, got {} -> {}",
                structure.dom(),
                structure.cod()
            )));
        }
        let alg = EMAlgebra {
            monad,
            carrier,
            structure,
        };
        if let Some(msg) = alg.law_violation()? {
            return Err(Error::LawViolation(msg));
        }
        Ok(alg)
    }

    /// The free algebra `(TX, μ_X)`.
    pub fn free(monad: &MonadSpec, n: usize) -> Result<Self> {
        let mu = monad.mult_component(n)?;
        Ok(EMAlgebra {
            monad: monad.clone(),
            carrier: FinSet::new(mu.cod()),
            structure: mu,
        })
    }

    #[cfg(test)]
    pub(crate) fn from_parts_unchecked(monad: MonadSpec, carrier: FinSet, structure: FinMap) -> Self {
        EMAlgebra {
            monad,
            carrier,
            structure,
        }
    }

    pub fn monad(&self) -> &MonadSpec {
        &self.monad
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn n(&self) -> usize {
        self.carrier.size()
    }

    pub fn structure(&self) -> &FinMap {
        &self.structure
    }

    #[inline]
    pub fn eval(&self, t: usize) -> usize {
        self.structure.apply(t)
    }

    fn unit_violation(&self) -> Result<Option<String>> {
        let eta = self.monad.unit_component(self.n())?;
        Ok((0..self.n())
            .find(|&x| self.eval(eta.apply(x)) != x)
            .map(|x| format!("c(eta({x})) = {} != {x}", self.eval(eta.apply(x)))))
    }

    /// First failure of either law, checked exhaustively on `TTX`.
    pub fn law_violation_generic(&self) -> Result<Option<String>> {
        if let Some(msg) = self.unit_violation()? {
            return Ok(Some(msg));
        }
        let n = self.n();
        let tc = self.monad.apply_functor(&self.structure)?;
        let mu = self.monad.mult_component(n)?;
        Ok((0..tc.dom())
            .find(|&w| self.eval(tc.apply(w)) != self.eval(mu.apply(w)))
            .map(|w| {
                format!(
                    "c(Tc({w})) = {} but c(mu({w})) = {}",
                    self.eval(tc.apply(w)),
                    self.eval(mu.apply(w))
                )
            }))
    }

    /// For the powerset monad the multiplication law reduces to
    /// `c(A ∪ B) = c{cA, cB}` once the unit law holds, so `TTX` is never built.
    fn law_violation(&self) -> Result<Option<String>> {
        if self.monad.kind() != MonadKind::Powerset {
            return self.law_violation_generic();
        }
        if let Some(msg) = self.unit_violation()? {
            return Ok(Some(msg));
        }
        let tn = self.structure.dom();
        for a in 0..tn {
            for b in a..tn {
                let lhs = self.eval(a | b);
                let rhs = self.join(self.eval(a), self.eval(b));
                if lhs != rhs {
                    return Ok(Some(format!(
                        "c({a:#b} | {b:#b}) = {lhs} but c{{c A, c B}} = {rhs}"
                    )));
                }
            }
        }
        Ok(None)
    }

    /// `c{x, y}` for the powerset monad.
    pub fn join(&self, x: usize, y: usize) -> usize {
        debug_assert_eq!(self.monad.kind(), MonadKind::Powerset);
        self.eval(1 << x | 1 << y)
    }

    /// Whether `h` is an algebra homomorphism `self → other`.
    pub fn is_homomorphism(&self, h: &FinMap, other: &EMAlgebra) -> Result<bool> {
        if h.dom() != self.n() || h.cod() != other.n() {
            return Ok(false);
        }
        let n = self.n();
        Ok((0..self.structure.dom()).all(|t| {
            h.apply(self.eval(t)) == other.eval(self.monad.map_element(n, t, h.table(), other.n()))
        }))
    }
}

/// The space with `t ⇝ x` iff `c(t) = x`.
pub fn algebra_to_space(a: &EMAlgebra) -> Result<TSpace> {
    let s = TSpace::graph(a.monad.clone(), a.carrier.clone(), Rel::graph(&a.structure))?;
    s.checked()
}

/// The algebra of a space in which every T-element has exactly one limit.
pub fn space_to_algebra(s: &TSpace) -> Result<EMAlgebra> {
    let rep = check_khaus(s);
    if !rep.a {
        return Err(Error::NotAlgebraic(format!("{:?}", rep.violation)));
    }
    let table: Vec<usize> = (0..s.t_size())
        .map(|t| s.converges().successors(t).next().expect("K holds"))
        .collect();
    EMAlgebra::new(
        s.monad().clone(),
        s.points().clone(),
        FinMap::new(s.n(), table)?,
    )
}
