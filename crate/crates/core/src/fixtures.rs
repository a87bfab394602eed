//! Small named spaces used in tests, examples and the CLI golden files.

use crate::monad::{MonadSpec, MonoidTable, TElem};
use crate::tspace::TSpace;

fn sub(xs: &[usize]) -> TElem {
    TElem::Subset(xs.to_vec())
}

/// Identity monad on `{0,1,2}`: the preorder `0 ≤ 1`, with `2` isolated.
pub fn ord() -> TSpace {
    TSpace::from_pairs(MonadSpec::identity(), 3, [(0, 0), (1, 1), (2, 2), (0, 1)])
        .and_then(TSpace::validate)
        .expect("fixture")
}

/// Identity monad on `{0,1}`: the indiscrete preorder.
pub fn ord_eq() -> TSpace {
    TSpace::from_pairs(MonadSpec::identity(), 2, [(0, 0), (1, 1), (0, 1), (1, 0)])
        .and_then(TSpace::validate)
        .expect("fixture")
}

/// Powerset monad on `{0,1}`: `{0} ⇝ 0`, `{1} ⇝ 1`, `{0,1} ⇝ 1`.
pub fn plu() -> TSpace {
    TSpace::from_elems(
        MonadSpec::powerset(),
        2,
        [(sub(&[0]), 0), (sub(&[1]), 1), (sub(&[0, 1]), 1)],
    )
    .and_then(TSpace::validate)
    .expect("fixture")
}

/// Powerset monad on `{0,1,2}`: singletons plus `{0,1} ⇝ 1`, `{1,2} ⇝ 2`,
/// `{0,1,2} ⇝ 2`.
pub fn plu3() -> TSpace {
    TSpace::from_elems(
        MonadSpec::powerset(),
        3,
        [
            (sub(&[0]), 0),
            (sub(&[1]), 1),
            (sub(&[2]), 2),
            (sub(&[0, 1]), 1),
            (sub(&[1, 2]), 2),
            (sub(&[0, 1, 2]), 2),
        ],
    )
    .and_then(TSpace::validate)
    .expect("fixture")
}

/// `M × (-)` with `M = ({e,a}, a·a = a)` on `{0,1}`: `(e,0) ⇝ 0`,
/// `(e,1) ⇝ 1`, `(a,0) ⇝ 1`.
pub fn m2() -> TSpace {
    TSpace::from_elems(
        MonadSpec::monoid_action(MonoidTable::m2()),
        2,
        [
            (TElem::Act(0, 0), 0),
            (TElem::Act(0, 1), 1),
            (TElem::Act(1, 0), 1),
        ],
    )
    .and_then(TSpace::validate)
    .expect("fixture")
}

/// All fixtures with their file stems.
pub fn all() -> Vec<(&'static str, TSpace)> {
    vec![
        ("ord", ord()),
        ("ord_eq", ord_eq()),
        ("plu", plu()),
        ("plu3", plu3()),
        ("m2", m2()),
    ]
}
