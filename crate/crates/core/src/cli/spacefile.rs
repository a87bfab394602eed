//! JSON space files.
//!
//! ```json
//! {"monad": {"kind": "powerset"}, "points": 2,
//!  "converges": [[[0], 0], [[1], 1], [[0, 1], 1]]}
//! ```
//!
//! T-elements are written as an integer (identity, ultrafilter), a sorted
//! array (powerset), `[m, x]` (monoid action) or `0` (t0, t1).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::finset::{FinSet, Rel};
use crate::monad::{MonadKind, MonadSpec, MonoidTable, TElem};
use crate::tspace::TSpace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDesc {
    pub size: usize,
    pub unit: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonadDesc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoid: Option<MonoidDesc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub monad: MonadDesc,
    pub points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub converges: Vec<(Value, usize)>,
}

fn parse_error(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn json_error(e: serde_json::Error) -> Error {
    parse_error(format!("line {} column {}", e.line(), e.column()), e.to_string())
}

impl MonadDesc {
    pub fn from_spec(m: &MonadSpec) -> Self {
        MonadDesc {
            kind: m.kind().name().to_string(),
            monoid: m.monoid().map(|t| MonoidDesc {
                size: t.size(),
                unit: t.unit(),
                table: t.table().to_vec(),
            }),
        }
    }

    pub fn to_spec(&self, budget: Option<usize>) -> Result<MonadSpec> {
        let kind = MonadKind::parse(&self.kind)
            .ok_or_else(|| parse_error("monad.kind", format!("unknown monad kind {:?}", self.kind)))?;
        let monoid = match (&self.monoid, kind) {
            (Some(d), MonadKind::MonoidAction) => Some(
                MonoidTable::new(d.size, d.unit, d.table.clone())
                    .map_err(|e| parse_error("monad.monoid", e.to_string()))?,
            ),
            (None, MonadKind::MonoidAction) => {
                return Err(parse_error("monad.monoid", "monoid_action needs a monoid table"))
            }
            (Some(_), _) => {
                return Err(parse_error("monad.monoid", "only monoid_action takes a monoid"))
            }
            (None, _) => None,
        };
        let m = MonadSpec::from_kind(kind, monoid)?;
        Ok(match budget {
            Some(b) => m.with_budget(b),
            None => m,
        })
    }
}

/// Monad descriptor from JSON text.
pub fn parse_monad_desc(text: &str, budget: Option<usize>) -> Result<MonadSpec> {
    let d: MonadDesc = serde_json::from_str(text).map_err(json_error)?;
    d.to_spec(budget)
}

fn index(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Encoding(format!("{what}: expected a non-negative integer, got {v}")))
}

/// A T-element from its file encoding.
pub fn elem_from_json(kind: MonadKind, v: &Value) -> Result<TElem> {
    Ok(match kind {
        MonadKind::Identity | MonadKind::Ultrafilter => TElem::Point(index(v, "point")?),
        MonadKind::Powerset => {
            let arr = v
                .as_array()
                .ok_or_else(|| Error::Encoding(format!("expected an array of points, got {v}")))?;
            let mut xs = arr.iter().map(|x| index(x, "subset member")).collect::<Result<Vec<_>>>()?;
            xs.sort_unstable();
            xs.dedup();
            TElem::Subset(xs)
        }
        MonadKind::MonoidAction => match v.as_array().map(Vec::as_slice) {
            Some([m, x]) => TElem::Act(index(m, "monoid element")?, index(x, "point")?),
            _ => return Err(Error::Encoding(format!("expected [m, x], got {v}"))),
        },
        MonadKind::T0 | MonadKind::T1 => match v.as_u64() {
            Some(0) => TElem::Star,
            _ => return Err(Error::Encoding(format!("expected 0, got {v}"))),
        },
    })
}

pub fn elem_to_json(e: &TElem) -> Value {
    match e {
        TElem::Point(x) => Value::from(*x),
        TElem::Subset(xs) => Value::from(xs.clone()),
        TElem::Act(m, x) => Value::from(vec![*m, *x]),
        TElem::Star => Value::from(0),
    }
}

/// Encoding of the T-element with index `t` over `n` points.
pub fn index_to_json(m: &MonadSpec, n: usize, t: usize) -> Result<Value> {
    Ok(elem_to_json(&m.decode(n, t)?))
}

/// Encoding of an element of `TTX`, with the inner elements of `TX` written
/// out in turn.
pub fn nested_index_to_json(m: &MonadSpec, n: usize, tt: usize) -> Result<Value> {
    let tn = m.t_size(n)?;
    let inner = |t: usize| index_to_json(m, n, t);
    Ok(match m.decode(tn, tt)? {
        TElem::Point(t) => inner(t)?,
        TElem::Subset(ts) => Value::from(ts.into_iter().map(inner).collect::<Result<Vec<_>>>()?),
        TElem::Act(k, t) => Value::from(vec![Value::from(k), inner(t)?]),
        TElem::Star => Value::from(0),
    })
}

impl SpaceFile {
    pub fn from_space(s: &TSpace) -> Result<Self> {
        let m = s.monad();
        Ok(SpaceFile {
            monad: MonadDesc::from_spec(m),
            points: s.n(),
            labels: s.points().labels().map(<[String]>::to_vec),
            converges: s
                .converges()
                .iter()
                .map(|(t, y)| Ok((index_to_json(m, s.n(), t)?, y)))
                .collect::<Result<_>>()?,
        })
    }

    pub fn to_space(&self, budget: Option<usize>) -> Result<TSpace> {
        let m = self.monad.to_spec(budget)?;
        let n = self.points;
        let points = match &self.labels {
            Some(l) if l.len() != n => {
                return Err(parse_error(
                    "labels",
                    format!("{} labels for {n} points", l.len()),
                ))
            }
            Some(l) => FinSet::with_labels(l.clone())
                .map_err(|e| parse_error("labels", e.to_string()))?,
            None => FinSet::new(n),
        };
        let tn = m.t_size(n)?;
        let mut pairs = Vec::with_capacity(self.converges.len());
        for (i, (enc, y)) in self.converges.iter().enumerate() {
            let at = |e: Error| match e {
                Error::Encoding(msg) => Error::Encoding(format!("converges[{i}]: {msg}")),
                other => other,
            };
            let e = elem_from_json(m.kind(), enc).map_err(at)?;
            let t = m.encode(n, &e).map_err(at)?;
            if *y >= n {
                return Err(Error::Encoding(format!("converges[{i}]: point {y} out of range")));
            }
            pairs.push((t, *y));
        }
        TSpace::graph(m, points, Rel::new(tn, n, pairs)?)
    }

    /// Canonical layout: one convergence pair per line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("{\n");
        out.push_str(&format!("  \"monad\": {},\n", compact(&self.monad)));
        out.push_str(&format!("  \"points\": {},\n", self.points));
        if let Some(l) = &self.labels {
            out.push_str(&format!("  \"labels\": {},\n", compact(l)));
        }
        if self.converges.is_empty() {
            out.push_str("  \"converges\": []\n}\n");
            return out;
        }
        out.push_str("  \"converges\": [\n");
        for (i, (enc, y)) in self.converges.iter().enumerate() {
            let sep = if i + 1 < self.converges.len() { "," } else { "" };
            out.push_str(&format!("    [{enc}, {y}]{sep}\n"));
        }
        out.push_str("  ]\n}\n");
        out
    }
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

pub fn parse_space_file(text: &str) -> Result<TSpace> {
    parse_space_file_with_budget(text, None)
}

pub fn parse_space_file_with_budget(text: &str, budget: Option<usize>) -> Result<TSpace> {
    let f: SpaceFile = serde_json::from_str(text).map_err(json_error)?;
    f.to_space(budget)
}

pub fn serialize_space(s: &TSpace) -> Result<String> {
    Ok(SpaceFile::from_space(s)?.to_text())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn minimal_identity_file() {
        let s = parse_space_file(r#"{"monad":{"kind":"identity"},"points":1,"converges":[[0,0]]}"#)
            .unwrap();
        assert_eq!(s.n(), 1);
        assert_eq!(s.converges().len(), 1);
    }

    #[test]
    fn plu_parses_to_fixture() {
        let text = r#"{"monad":{"kind":"powerset"},"points":2,
            "converges":[[[0],0],[[1],1],[[1,0],1],[[0,1],1]]}"#;
        assert_eq!(parse_space_file(text).unwrap(), fixtures::plu());
    }

    #[test]
    fn out_of_range_member_is_an_encoding_error() {
        let text = r#"{"monad":{"kind":"powerset"},"points":2,"converges":[[[2],0]]}"#;
        assert!(matches!(parse_space_file(text), Err(Error::Encoding(_))));
        let text = r#"{"monad":{"kind":"identity"},"points":2,"converges":[[0,5]]}"#;
        assert!(matches!(parse_space_file(text), Err(Error::Encoding(_))));
    }

    #[test]
    fn schema_errors_carry_a_location() {
        let e = parse_space_file(r#"{"monad":{"kind":"identity"},"points":1}"#).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }), "{e}");
        let e = parse_space_file(r#"{"monad":{"kind":"nope"},"points":1,"converges":[]}"#).unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                location: "monad.kind".into(),
                message: "unknown monad kind \"nope\"".into()
            }
        );
        let e = parse_space_file("{\n  \"monad\": 3").unwrap_err();
        let Error::Parse { location, .. } = e else { panic!() };
        assert!(location.starts_with("line 2"));
    }

    #[test]
    fn fixtures_round_trip() {
        for (_, s) in fixtures::all() {
            let text = serialize_space(&s).unwrap();
            let back = parse_space_file(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(serialize_space(&back).unwrap(), text);
        }
    }

    #[test]
    fn t_elements_of_empty_carriers() {
        let text = r#"{"monad":{"kind":"t1"},"points":0,"converges":[]}"#;
        assert_eq!(parse_space_file(text).unwrap().t_size(), 1);
        let text = r#"{"monad":{"kind":"t0"},"points":0,"converges":[]}"#;
        assert_eq!(parse_space_file(text).unwrap().t_size(), 0);
    }
}
