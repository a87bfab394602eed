//! Graphviz output.

use std::fmt::Write;

use crate::monad::{MonadKind, TElem};
use crate::tspace::{elem_text, TSpace};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Deterministic DOT rendering: one node `p<i>` per point, and
/// - identity, ultrafilter: an edge `t -> y` per pair;
/// - monoid action: an edge `x -> y` labelled by the monoid element;
/// - powerset: a square node per converging subset, joined to its members
///   by undirected edges and to its limits by arrows;
/// - t0, t1: a single point node `star` with arrows to its limits.
pub fn emit_dot(s: &TSpace) -> String {
    let mut out = String::from("digraph tspace {\n");
    let n = s.n();
    for i in 0..n {
        writeln!(out, "  p{i} [label={}];", quote(&s.points().label(i))).unwrap();
    }
    let m = s.monad();
    let decode = |t| m.decode(n, t).expect("index in range");
    match m.kind() {
        MonadKind::Identity | MonadKind::Ultrafilter => {
            for (t, y) in s.converges().iter() {
                writeln!(out, "  p{t} -> p{y};").unwrap();
            }
        }
        MonadKind::MonoidAction => {
            for (t, y) in s.converges().iter() {
                if let TElem::Act(k, x) = decode(t) {
                    writeln!(out, "  p{x} -> p{y} [label=\"{k}\"];").unwrap();
                }
            }
        }
        MonadKind::Powerset => {
            let mut last = None;
            for (t, y) in s.converges().iter() {
                if last != Some(t) {
                    last = Some(t);
                    let e = decode(t);
                    writeln!(out, "  s{t} [shape=square, label={}];", quote(&elem_text(&e))).unwrap();
                    if let TElem::Subset(xs) = e {
                        for x in xs {
                            writeln!(out, "  p{x} -> s{t} [arrowhead=none];").unwrap();
                        }
                    }
                }
                writeln!(out, "  s{t} -> p{y};").unwrap();
            }
        }
        MonadKind::T0 | MonadKind::T1 => {
            if !s.converges().is_empty() {
                out.push_str("  star [shape=point];\n");
            }
            for (_, y) in s.converges().iter() {
                writeln!(out, "  star -> p{y};").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{FinSet, Rel};
    use crate::fixtures;
    use crate::monad::MonadSpec;

    #[test]
    fn empty_space() {
        let s = TSpace::graph(MonadSpec::identity(), FinSet::new(0), Rel::empty(0, 0)).unwrap();
        assert_eq!(emit_dot(&s), "digraph tspace {\n}\n");
    }

    #[test]
    fn ord_has_three_nodes_and_four_edges() {
        let d = emit_dot(&fixtures::ord());
        assert_eq!(d.matches("[label=").count(), 3);
        assert_eq!(d.matches("->").count(), 4);
        assert!(d.contains("p0 -> p1;"));
    }

    #[test]
    fn plu_has_subset_nodes() {
        let d = emit_dot(&fixtures::plu());
        assert_eq!(d.matches("shape=square").count(), 3);
        assert_eq!(d.matches("arrowhead=none").count(), 4);
        assert_eq!(emit_dot(&fixtures::plu()), d);
    }

    #[test]
    fn labels_are_escaped() {
        let pts = FinSet::with_labels(vec!["a\"b".into()]).unwrap();
        let s = TSpace::graph(MonadSpec::identity(), pts, Rel::diagonal(1)).unwrap();
        assert!(emit_dot(&s).contains(r#"p0 [label="a\"b"];"#));
    }
}
