//! Plain-text complex files and JSON Morse files.
//!
//! Complex file: one facet per line as whitespace-separated vertex names;
//! lines whose first non-blank character is `#` are comments; blank lines
//! are ignored. Vertex names are made of ASCII letters, digits, `_`, `-`
//! and `.`.
//!
//! Morse file: a JSON object from simplex keys (sorted vertex names joined by
//! `,`) to values, each a JSON integer or a string `"p/q"` / `"n"`.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde_json::Value;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::morse::{validate_dmf, MorseFunction};
use crate::simplex::{Simplex, VertexId};
use crate::value::Rational;

/// Bijection between external vertex names and internal ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexNames {
    names: BTreeMap<VertexId, String>,
    ids: HashMap<String, VertexId>,
}

impl VertexNames {
    /// Ids follow the name order: numeric if every name is an integer,
    /// lexicographic otherwise.
    pub fn from_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut all: Vec<String> = names.into_iter().map(Into::into).collect();
        all.sort();
        all.dedup();
        let numeric: Option<Vec<i128>> = all.iter().map(|n| n.parse::<i128>().ok()).collect();
        if let Some(nums) = numeric {
            let mut keyed: Vec<(i128, String)> = nums.into_iter().zip(all).collect();
            keyed.sort();
            all = keyed.into_iter().map(|(_, n)| n).collect();
        }
        let names: BTreeMap<VertexId, String> = all
            .into_iter()
            .enumerate()
            .map(|(i, n)| (VertexId(i as u32), n))
            .collect();
        let ids = names.iter().map(|(&v, n)| (n.clone(), v)).collect();
        VertexNames { names, ids }
    }

    /// Every vertex named by its id.
    pub fn identity(k: &SimplicialComplex) -> Self {
        let names: BTreeMap<VertexId, String> = k.vertices().map(|v| (v, v.0.to_string())).collect();
        let ids = names.iter().map(|(&v, n)| (n.clone(), v)).collect();
        VertexNames { names, ids }
    }

    pub fn name(&self, v: VertexId) -> String {
        self.names.get(&v).cloned().unwrap_or_else(|| v.0.to_string())
    }

    pub fn id(&self, name: &str) -> Option<VertexId> {
        self.ids.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Canonical key: names in id order joined by `,`.
    pub fn key(&self, s: &Simplex) -> String {
        s.vertices()
            .iter()
            .map(|&v| self.name(v))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Error message with simplices and vertices shown by external name.
    pub fn render_error(&self, err: &Error) -> String {
        match err {
            Error::MissingValue(s) => format!("missing simplex value: {}", self.key(s)),
            Error::ExtraValue(s) => format!("value for simplex not in the complex: {}", self.key(s)),
            Error::UnknownSimplex(s) => format!("simplex {} is not in the complex", self.key(s)),
            Error::UnknownVertex(v) => format!("unknown vertex {}", self.name(*v)),
            Error::NotDominated(v) => format!(
                "not an elementary strong collapse: vertex {} is not dominated",
                self.name(*v)
            ),
            Error::NotGradientPair(a, b) => format!(
                "({}, {}) is not a vertex/edge pair of the gradient field",
                self.key(a),
                self.key(b)
            ),
            Error::InvalidMorse(report) => format!(
                "not a discrete Morse function: {}",
                report.render(&|s| self.key(s))
            ),
            other => other.to_string(),
        }
    }
}

fn valid_name(token: &str) -> bool {
    token
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

pub fn parse_complex_str(text: &str) -> Result<(SimplicialComplex, VertexNames)> {
    let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
    let mut last_line = 0;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        for (j, t) in tokens.iter().enumerate() {
            if !valid_name(t) {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("malformed vertex name {t:?}"),
                });
            }
            if tokens[..j].contains(t) {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "duplicate vertex".into(),
                });
            }
        }
        rows.push((line_no, tokens));
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: last_line.max(1),
            msg: "empty file: no facets".into(),
        });
    }
    let names = VertexNames::from_names(rows.iter().flat_map(|(_, t)| t.iter().copied()));
    let mut facets = Vec::with_capacity(rows.len());
    for (line, tokens) in &rows {
        let s = Simplex::new(tokens.iter().map(|t| names.id(t).unwrap())).map_err(|e| Error::Parse {
            line: *line,
            msg: e.to_string(),
        })?;
        facets.push(s);
    }
    Ok((SimplicialComplex::from_simplices(facets), names))
}

pub fn parse_complex(path: impl AsRef<Path>) -> Result<(SimplicialComplex, VertexNames)> {
    parse_complex_str(&std::fs::read_to_string(path)?)
}

/// Facets, one per line, in simplex order.
pub fn serialize_complex(k: &SimplicialComplex, names: &VertexNames) -> String {
    let mut out = String::new();
    for f in k.facets() {
        let row: Vec<String> = f.vertices().iter().map(|&v| names.name(v)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_value(key: &str, v: &Value) -> Result<Rational> {
    let bad = || Error::Format(format!("non-rational value for simplex {key}: {v}"));
    match v {
        Value::Number(n) => n.as_i64().map(Rational::from_integer).ok_or_else(bad),
        Value::String(s) => {
            if s.is_empty() || s.chars().any(|c| !(c.is_ascii_digit() || matches!(c, '/' | '-' | '+'))) {
                return Err(bad());
            }
            let (num, den) = match s.split_once('/') {
                Some((p, q)) => (p, Some(q)),
                None => (s.as_str(), None),
            };
            let p: i64 = num.parse().map_err(|_| bad())?;
            let q: i64 = match den {
                Some(q) => q.parse().map_err(|_| bad())?,
                None => 1,
            };
            if q == 0 {
                return Err(Error::Format(format!("zero denominator for simplex {key}: {s}")));
            }
            Ok(Rational::new(p, q))
        }
        _ => Err(bad()),
    }
}

/// Raw key/value table, before validation.
pub fn parse_values_str(text: &str, names: &VertexNames) -> Result<BTreeMap<Simplex, Rational>> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    let Value::Object(map) = doc else {
        return Err(Error::Format("morse file must be a JSON object".into()));
    };
    let mut raw = BTreeMap::new();
    for (key, v) in &map {
        let mut ids = Vec::new();
        for part in key.split(',') {
            let id = names
                .id(part.trim())
                .ok_or_else(|| Error::Format(format!("unknown vertex {:?} in key {key:?}", part.trim())))?;
            ids.push(id);
        }
        let s = Simplex::new(ids).map_err(|e| Error::Format(format!("bad key {key:?}: {e}")))?;
        let x = parse_value(key, v)?;
        if raw.insert(s, x).is_some() {
            return Err(Error::Format(format!("simplex given twice: {key}")));
        }
    }
    Ok(raw)
}

pub fn parse_morse_str(text: &str, k: &SimplicialComplex, names: &VertexNames) -> Result<MorseFunction> {
    validate_dmf(k, parse_values_str(text, names)?)
}

pub fn parse_morse(
    path: impl AsRef<Path>,
    k: &SimplicialComplex,
    names: &VertexNames,
) -> Result<MorseFunction> {
    parse_morse_str(&std::fs::read_to_string(path)?, k, names)
}

/// JSON text for a value, integer when possible.
pub fn value_json(x: Rational) -> Value {
    if x.is_integer() {
        Value::from(x.to_integer())
    } else {
        Value::from(x.to_string())
    }
}

/// One simplex per line in simplex order.
pub fn serialize_morse(f: &MorseFunction, names: &VertexNames) -> String {
    let rows: Vec<String> = f
        .values()
        .iter()
        .map(|(s, &x)| format!("  {}: {}", Value::from(names.key(s)), value_json(x)))
        .collect();
    format!("{{\n{}\n}}\n", rows.join(",\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::value::int;

    #[test]
    fn parse_examples() {
        let (k, _) = parse_complex_str("0 1 2\n").unwrap();
        assert_eq!(k, fixtures::triangle());
        let (k, _) = parse_complex_str("# disc\n0 1\n1 2\n").unwrap();
        assert_eq!(k, fixtures::path2());
        let err = parse_complex_str("0 1\n\n1 2 2\n").unwrap_err();
        assert_eq!(err.to_string(), "duplicate vertex, line 3");
        assert!(matches!(parse_complex_str("# nothing\n\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_complex_str("0 1\n0,1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn names_sorted_numerically_or_lexicographically() {
        let (k, names) = parse_complex_str("10 9\n9 2\n").unwrap();
        assert_eq!(names.name(VertexId(0)), "2");
        assert_eq!(names.name(VertexId(1)), "9");
        assert_eq!(names.name(VertexId(2)), "10");
        assert_eq!(names.key(&Simplex::from([1, 2])), "9,10");
        assert_eq!(k.len(), 5);
        let (_, names) = parse_complex_str("b a10 a9\n").unwrap();
        assert_eq!(names.name(VertexId(0)), "a10");
        assert_eq!(names.name(VertexId(2)), "b");
    }

    #[test]
    fn complex_roundtrip() {
        for (_, k) in fixtures::all() {
            let names = VertexNames::identity(&k);
            let (back, back_names) = parse_complex_str(&serialize_complex(&k, &names)).unwrap();
            // fixtures use consecutive ids from 0, so the naming is the identity
            assert_eq!(back, k);
            assert_eq!(back_names, names);
        }
    }

    #[test]
    fn morse_files() {
        let (k, names) = parse_complex_str("0 1\n1 2\n").unwrap();
        let text = r#"{"0": 0, "1": 2, "2": 3, "0,1": 2, "1,2": "3"}"#;
        let f = parse_morse_str(text, &k, &names).unwrap();
        assert_eq!(f.value(&Simplex::from([1, 2])), int(3));
        let back = parse_morse_str(&serialize_morse(&f, &names), &k, &names).unwrap();
        assert_eq!(back, f);

        let missing = r#"{"0": 0, "1": 2, "2": 3, "0,1": 2}"#;
        let err = parse_morse_str(missing, &k, &names).unwrap_err();
        assert_eq!(names.render_error(&err), "missing simplex value: 1,2");

        let float = r#"{"0": 0.5}"#;
        assert!(matches!(parse_morse_str(float, &k, &names), Err(Error::Format(_))));
        let half = r#"{"0": "1/2", "1": "5/2", "2": 3, "0,1": "5/2", "1,2": 3}"#;
        assert_eq!(
            parse_morse_str(half, &k, &names).unwrap().value(&Simplex::from([0])),
            Rational::new(1, 2)
        );
        assert!(parse_morse_str(r#"{"0": "1/0"}"#, &k, &names).is_err());
        assert!(parse_morse_str(r#"[1]"#, &k, &names).is_err());
    }

    #[test]
    fn constant_function_report_names_all_vertices() {
        let (k, names) = parse_complex_str("0 1 2\n").unwrap();
        let text = r#"{"0":0,"1":0,"2":0,"0,1":0,"0,2":0,"1,2":0,"0,1,2":0}"#;
        let err = parse_morse_str(text, &k, &names).unwrap_err();
        let msg = names.render_error(&err);
        for v in ["M1 at 0 ", "M1 at 1 ", "M1 at 2 "] {
            assert!(msg.contains(v), "{msg}");
        }
    }
}
