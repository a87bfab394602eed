//! Computable monads on finite sets.
//!
//! A monad is presented by its object part (the size of `TX` for `|X| = n`),
//! its action on maps, and the components of `η` and `μ`, all in terms of a
//! dense codec for T-elements. `TTX` is just `T` applied to a carrier of size
//! `|TX|`, so the same codec serves every level.

pub mod laws;
pub mod ultrafilter;

use std::fmt;

use crate::error::{Error, Result};
use crate::finset::FinMap;

pub use laws::{check_monad_laws, check_preserves_surjections, CorruptMult, Law, LawCheck, LawReport};

/// Default cap on the size of any enumerated carrier.
pub const DEFAULT_BUDGET: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonadKind {
    Identity,
    Powerset,
    Ultrafilter,
    MonoidAction,
    T0,
    T1,
}

impl MonadKind {
    pub fn name(self) -> &'static str {
        match self {
            MonadKind::Identity => "identity",
            MonadKind::Powerset => "powerset",
            MonadKind::Ultrafilter => "ultrafilter",
            MonadKind::MonoidAction => "monoid_action",
            MonadKind::T0 => "t0",
            MonadKind::T1 => "t1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "identity" => MonadKind::Identity,
            "powerset" => MonadKind::Powerset,
            "ultrafilter" => MonadKind::Ultrafilter,
            "monoid_action" => MonadKind::MonoidAction,
            "t0" => MonadKind::T0,
            "t1" => MonadKind::T1,
            _ => return None,
        })
    }
}

impl fmt::Display for MonadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite commutative monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoidTable {
    size: usize,
    unit: usize,
    table: Vec<Vec<usize>>,
}

impl MonoidTable {
    /// Validates shape, associativity, the unit and commutativity.
    pub fn new(size: usize, unit: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::invalid("monoid must be nonempty"));
        }
        if unit >= size {
            return Err(Error::invalid(format!("unit {unit} out of range")));
        }
        if table.len() != size || table.iter().any(|row| row.len() != size) {
            return Err(Error::invalid(format!("monoid table must be {size}x{size}")));
        }
        if table.iter().flatten().any(|&v| v >= size) {
            return Err(Error::invalid("monoid table entry out of range"));
        }
        for a in 0..size {
            if table[unit][a] != a || table[a][unit] != a {
                return Err(Error::invalid(format!("{unit} is not a two-sided unit at {a}")));
            }
            for b in 0..size {
                if table[a][b] != table[b][a] {
                    return Err(Error::invalid(format!(
                        "monoid is not commutative: {a}*{b} != {b}*{a}"
                    )));
                }
                for c in 0..size {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::invalid(format!(
                            "monoid is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(MonoidTable { size, unit, table })
    }

    /// `({e, a}, a·a = a)`, with `e = 0`.
    pub fn m2() -> Self {
        MonoidTable::new(2, 0, vec![vec![0, 1], vec![1, 1]]).unwrap()
    }

    /// The cyclic group of order `k`.
    pub fn cyclic(k: usize) -> Self {
        let table = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        MonoidTable::new(k, 0, table).unwrap()
    }

    /// Every commutative monoid on `{0..size}` with unit `0`.
    pub fn all_commutative(size: usize) -> Vec<MonoidTable> {
        if size == 0 {
            return vec![];
        }
        // free entries: a·b for 1 ≤ a ≤ b < size
        let cells: Vec<(usize, usize)> = (1..size)
            .flat_map(|a| (a..size).map(move |b| (a, b)))
            .collect();
        let total = size.pow(cells.len() as u32);
        let mut out = Vec::new();
        for mut code in 0..total {
            let mut table: Vec<Vec<usize>> = (0..size)
                .map(|a| (0..size).map(|b| if a == 0 { b } else if b == 0 { a } else { 0 }).collect())
                .collect();
            for &(a, b) in &cells {
                let v = code % size;
                code /= size;
                table[a][b] = v;
                table[b][a] = v;
            }
            if let Ok(m) = MonoidTable::new(size, 0, table) {
                out.push(m);
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// An abstract T-element in its file-level form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TElem {
    /// identity and ultrafilter monads (a point, or the principal ultrafilter at it)
    Point(usize),
    /// powerset monad; sorted, distinct
    Subset(Vec<usize>),
    /// monoid action: `(m, x)`
    Act(usize, usize),
    /// the single element of `T0 X` / `T1 X`
    Star,
}

/// The operations a law checker needs from a monad.
pub trait FinMonad {
    fn describe(&self) -> String;
    fn t_size(&self, n: usize) -> Result<usize>;
    fn map(&self, f: &FinMap) -> Result<FinMap>;
    fn unit(&self, n: usize) -> Result<FinMap>;
    fn mult(&self, n: usize) -> Result<FinMap>;
}

/// One of the shipped monads on finite sets, with its enumeration budget.
#[derive(Clone, Debug)]
pub struct MonadSpec {
    kind: MonadKind,
    monoid: Option<MonoidTable>,
    budget: usize,
}

// The budget is configuration, not identity.
impl PartialEq for MonadSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.monoid == other.monoid
    }
}

impl Eq for MonadSpec {}

impl std::hash::Hash for MonadSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.monoid.hash(state);
    }
}

impl fmt::Display for MonadSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.monoid {
            Some(m) => write!(f, "monoid_action(M of size {})", m.size()),
            None => f.write_str(self.kind.name()),
        }
    }
}

impl MonadSpec {
    fn plain(kind: MonadKind) -> Self {
        MonadSpec {
            kind,
            monoid: None,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn identity() -> Self {
        MonadSpec::plain(MonadKind::Identity)
    }

    pub fn powerset() -> Self {
        MonadSpec::plain(MonadKind::Powerset)
    }

    pub fn ultrafilter() -> Self {
        MonadSpec::plain(MonadKind::Ultrafilter)
    }

    pub fn t0() -> Self {
        MonadSpec::plain(MonadKind::T0)
    }

    pub fn t1() -> Self {
        MonadSpec::plain(MonadKind::T1)
    }

    pub fn monoid_action(monoid: MonoidTable) -> Self {
        MonadSpec {
            kind: MonadKind::MonoidAction,
            monoid: Some(monoid),
            budget: DEFAULT_BUDGET,
        }
    }

    /// Build from a kind; `monoid_action` needs a table.
    pub fn from_kind(kind: MonadKind, monoid: Option<MonoidTable>) -> Result<Self> {
        match (kind, monoid) {
            (MonadKind::MonoidAction, Some(m)) => Ok(MonadSpec::monoid_action(m)),
            (MonadKind::MonoidAction, None) => Err(Error::invalid("monoid_action needs a monoid table")),
            (k, None) => Ok(MonadSpec::plain(k)),
            (k, Some(_)) => Err(Error::invalid(format!("{k} takes no monoid table"))),
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn kind(&self) -> MonadKind {
        self.kind
    }

    pub fn monoid(&self) -> Option<&MonoidTable> {
        self.monoid.as_ref()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    fn monoid_size(&self) -> usize {
        self.monoid.as_ref().map_or(1, |m| m.size)
    }

    pub(crate) fn guard(&self, what: impl FnOnce() -> String, needed: u128) -> Result<usize> {
        if needed > self.budget as u128 {
            return Err(Error::BudgetExceeded {
                what: what(),
                needed,
                budget: self.budget,
            });
        }
        Ok(needed as usize)
    }

    /// Size of `TX` for `|X| = n`, without the budget check.
    pub fn t_size_unbounded(&self, n: usize) -> u128 {
        match self.kind {
            MonadKind::Identity | MonadKind::Ultrafilter => n as u128,
            MonadKind::Powerset => {
                if n >= 127 {
                    u128::MAX
                } else {
                    1u128 << n
                }
            }
            MonadKind::MonoidAction => self.monoid_size() as u128 * n as u128,
            MonadKind::T0 => u128::from(n > 0),
            MonadKind::T1 => 1,
        }
    }

    pub fn t_size(&self, n: usize) -> Result<usize> {
        let needed = self.t_size_unbounded(n);
        self.guard(|| format!("{self} applied to a carrier of size {n}"), needed)
    }

    /// Size of `TTX`.
    pub fn tt_size(&self, n: usize) -> Result<usize> {
        self.t_size(self.t_size(n)?)
    }

    /// Points of an `n`-point carrier that a T-element depends on: `Tf(t)`
    /// is determined by `f` restricted to the support.
    pub fn support_in(&self, n: usize, t: usize) -> Vec<usize> {
        match self.kind {
            MonadKind::Identity | MonadKind::Ultrafilter => vec![t],
            MonadKind::Powerset => bits(t).collect(),
            MonadKind::MonoidAction => vec![t % n],
            MonadKind::T0 | MonadKind::T1 => vec![],
        }
    }

    /// `Tf(t)` for a single element; `f` is a table into a carrier of size `m`.
    /// Only the entries of `f` on the support of `t` are read.
    #[inline]
    pub fn map_element(&self, n: usize, t: usize, f: &[usize], m: usize) -> usize {
        match self.kind {
            MonadKind::Identity | MonadKind::Ultrafilter => f[t],
            MonadKind::Powerset => {
                let mut out = 0usize;
                let mut rest = t;
                while rest != 0 {
                    let i = rest.trailing_zeros() as usize;
                    out |= 1 << f[i];
                    rest &= rest - 1;
                }
                out
            }
            MonadKind::MonoidAction => (t / n) * m + f[t % n],
            MonadKind::T0 | MonadKind::T1 => 0,
        }
    }

    /// The functor on maps: `Tf: TX → TY` in codec indices.
    pub fn apply_functor(&self, f: &FinMap) -> Result<FinMap> {
        let (a, b) = (f.dom(), f.cod());
        let ta = self.t_size(a)?;
        let tb = self.t_size(b)?;
        let table = match self.kind {
            MonadKind::Identity | MonadKind::Ultrafilter => f.table().to_vec(),
            MonadKind::Powerset => {
                let mut img = vec![0usize; ta];
                for mask in 1..ta {
                    let low = mask.trailing_zeros() as usize;
                    img[mask] = img[mask & (mask - 1)] | 1 << f.apply(low);
                }
                img
            }
            MonadKind::MonoidAction => (0..ta).map(|t| (t / a) * b + f.apply(t % a)).collect(),
            MonadKind::T0 | MonadKind::T1 => vec![0; ta],
        };
        Ok(FinMap::from_table_unchecked(tb, table))
    }

    /// `η_X: X → TX`.
    pub fn unit_component(&self, n: usize) -> Result<FinMap> {
        let tn = self.t_size(n)?;
        let table = match self.kind {
            MonadKind::Identity | MonadKind::Ultrafilter => (0..n).collect(),
            MonadKind::Powerset => (0..n).map(|x| 1usize << x).collect(),
            MonadKind::MonoidAction => {
                let e = self.monoid.as_ref().expect("monoid").unit;
                (0..n).map(|x| e * n + x).collect()
            }
            MonadKind::T0 | MonadKind::T1 => vec![0; n],
        };
        Ok(FinMap::from_table_unchecked(tn, table))
    }

    /// `μ_X: TTX → TX`.
    pub fn mult_component(&self, n: usize) -> Result<FinMap> {
        let tn = self.t_size(n)?;
        let ttn = self.t_size(tn)?;
        let table = match self.kind {
            MonadKind::Identity | MonadKind::Ultrafilter => (0..n).collect(),
            MonadKind::Powerset => {
                let mut uni = vec![0usize; ttn];
                for fam in 1..ttn {
                    let low = fam.trailing_zeros() as usize;
                    uni[fam] = uni[fam & (fam - 1)] | low;
                }
                uni
            }
            MonadKind::MonoidAction => {
                let m = self.monoid.as_ref().expect("monoid");
                (0..ttn)
                    .map(|i| {
                        let (s, inner) = (i / tn, i % tn);
                        let (t, x) = (inner / n, inner % n);
                        m.mul(s, t) * n + x
                    })
                    .collect()
            }
            MonadKind::T0 | MonadKind::T1 => vec![0; ttn],
        };
        Ok(FinMap::from_table_unchecked(tn, table))
    }

    /// `μ` on a single element of `TTX`, without building the whole component.
    pub fn mult_element(&self, n: usize, tt: usize) -> usize {
        match self.kind {
            MonadKind::Identity | MonadKind::Ultrafilter => tt,
            MonadKind::Powerset => bits(tt).fold(0, |acc, a| acc | a),
            MonadKind::MonoidAction => {
                let m = self.monoid.as_ref().expect("monoid");
                let tn = m.size * n;
                let (s, inner) = (tt / tn, tt % tn);
                m.mul(s, inner / n) * n + inner % n
            }
            MonadKind::T0 | MonadKind::T1 => 0,
        }
    }

    /// Codec: abstract element to index.
    pub fn encode(&self, n: usize, e: &TElem) -> Result<usize> {
        let bad = || Error::Encoding(format!("{e:?} is not an element of {self} over {n} points"));
        match (self.kind, e) {
            (MonadKind::Identity | MonadKind::Ultrafilter, TElem::Point(x)) if *x < n => Ok(*x),
            (MonadKind::Powerset, TElem::Subset(xs)) => {
                if n >= usize::BITS as usize {
                    return Err(bad());
                }
                let mut mask = 0usize;
                for (i, &x) in xs.iter().enumerate() {
                    if x >= n || (i > 0 && xs[i - 1] >= x) {
                        return Err(bad());
                    }
                    mask |= 1 << x;
                }
                Ok(mask)
            }
            (MonadKind::MonoidAction, TElem::Act(k, x)) if *k < self.monoid_size() && *x < n => {
                Ok(k * n + x)
            }
            (MonadKind::T0, TElem::Star) if n > 0 => Ok(0),
            (MonadKind::T1, TElem::Star) => Ok(0),
            _ => Err(bad()),
        }
    }

    /// Codec: index to abstract element.
    pub fn decode(&self, n: usize, t: usize) -> Result<TElem> {
        let size = self.t_size_unbounded(n);
        if t as u128 >= size {
            return Err(Error::Encoding(format!(
                "index {t} out of range for {self} over {n} points"
            )));
        }
        Ok(match self.kind {
            MonadKind::Identity | MonadKind::Ultrafilter => TElem::Point(t),
            MonadKind::Powerset => TElem::Subset(bits(t).collect()),
            MonadKind::MonoidAction => TElem::Act(t / n, t % n),
            MonadKind::T0 | MonadKind::T1 => TElem::Star,
        })
    }
}

impl FinMonad for MonadSpec {
    fn describe(&self) -> String {
        self.to_string()
    }

    fn t_size(&self, n: usize) -> Result<usize> {
        MonadSpec::t_size(self, n)
    }

    fn map(&self, f: &FinMap) -> Result<FinMap> {
        self.apply_functor(f)
    }

    fn unit(&self, n: usize) -> Result<FinMap> {
        self.unit_component(n)
    }

    fn mult(&self, n: usize) -> Result<FinMap> {
        self.mult_component(n)
    }
}

/// Set bit positions of a mask, ascending.
pub(crate) fn bits(mask: usize) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let low = rest & rest.wrapping_neg();
        rest &= rest - 1;
        Some(low)
    })
    .map(|b| b.trailing_zeros() as usize)
}
