//! Discrete Morse functions in Forman's sense: validation, the induced
//! gradient field, critical simplices and level subcomplexes.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;
use crate::value::{LevelValue, Rational};

/// One failed condition of a candidate discrete Morse function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// More than one coface with value not above the simplex.
    M1 { simplex: Simplex, cofaces: Vec<Simplex> },
    /// More than one face with value not below the simplex.
    M2 { simplex: Simplex, faces: Vec<Simplex> },
    /// Equal values on simplices that are not a face/coface pair.
    Flat { value: Rational, simplices: Vec<Simplex> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    /// Renders the report with a custom simplex formatter.
    pub fn render(&self, name: &dyn Fn(&Simplex) -> String) -> String {
        let list = |v: &[Simplex]| v.iter().map(name).collect::<Vec<_>>().join(" ");
        self.violations
            .iter()
            .map(|v| match v {
                Violation::M1 { simplex, cofaces } => {
                    format!("M1 at {} (cofaces {})", name(simplex), list(cofaces))
                }
                Violation::M2 { simplex, faces } => {
                    format!("M2 at {} (faces {})", name(simplex), list(faces))
                }
                Violation::Flat { value, simplices } => {
                    format!("flatness: value {} shared by {}", value, list(simplices))
                }
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|s| s.to_string()))
    }
}

/// A validated discrete Morse function together with its complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseFunction {
    complex: SimplicialComplex,
    values: BTreeMap<Simplex, Rational>,
}

/// Checks (M1), (M2) and the flatness rule and returns the validated
/// function, or every violation found.
pub fn validate_dmf(
    k: &SimplicialComplex,
    raw: BTreeMap<Simplex, Rational>,
) -> Result<MorseFunction> {
    for s in k.simplices() {
        if !raw.contains_key(s) {
            return Err(Error::MissingValue(s.clone()));
        }
    }
    if let Some(extra) = raw.keys().find(|s| !k.contains(s)) {
        return Err(Error::ExtraValue(extra.clone()));
    }

    let mut report = ViolationReport::default();
    for s in k.simplices() {
        let fs = raw[s];
        let low_cofaces: Vec<Simplex> = k.cofaces(s).filter(|t| raw[t] <= fs).collect();
        if low_cofaces.len() > 1 {
            report.violations.push(Violation::M1 {
                simplex: s.clone(),
                cofaces: low_cofaces,
            });
        }
        let high_faces: Vec<Simplex> = s.boundary().filter(|u| raw[u] >= fs).collect();
        if high_faces.len() > 1 {
            report.violations.push(Violation::M2 {
                simplex: s.clone(),
                faces: high_faces,
            });
        }
    }

    let mut by_value: HashMap<Rational, Vec<&Simplex>> = HashMap::new();
    for (s, v) in &raw {
        by_value.entry(*v).or_default().push(s);
    }
    let mut flat: Vec<Violation> = by_value
        .into_iter()
        .filter(|(_, group)| group.len() > 1)
        .filter(|(_, group)| {
            !(group.len() == 2
                && group[0].len() + 1 == group[1].len()
                && group[0].is_face_of(group[1]))
        })
        .map(|(value, group)| Violation::Flat {
            value,
            simplices: group.into_iter().cloned().collect(),
        })
        .collect();
    flat.sort_by(|a, b| match (a, b) {
        (Violation::Flat { value: x, .. }, Violation::Flat { value: y, .. }) => x.cmp(y),
        _ => std::cmp::Ordering::Equal,
    });
    report.violations.extend(flat);

    if report.is_empty() {
        Ok(MorseFunction {
            complex: k.clone(),
            values: raw,
        })
    } else {
        Err(Error::InvalidMorse(report))
    }
}

/// A face/coface pair `(σ, τ)` with dim τ = dim σ + 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradientPair {
    pub face: Simplex,
    pub coface: Simplex,
}

impl GradientPair {
    pub fn new(face: Simplex, coface: Simplex) -> Self {
        GradientPair { face, coface }
    }
}

impl fmt::Display for GradientPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.face, self.coface)
    }
}

/// The induced gradient vector field: a matching keyed by the lower simplex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradientField {
    up: BTreeMap<Simplex, Simplex>,
    down: BTreeMap<Simplex, Simplex>,
}

impl GradientField {
    /// Builds a field from pairs; `None` if some simplex occurs twice or a
    /// pair is not a codimension-one incidence.
    pub fn from_pairs<I: IntoIterator<Item = GradientPair>>(pairs: I) -> Option<Self> {
        let mut field = GradientField::default();
        for GradientPair { face, coface } in pairs {
            if face.len() + 1 != coface.len() || !face.is_face_of(&coface) {
                return None;
            }
            if field.is_matched(&face) || field.is_matched(&coface) || face == coface {
                return None;
            }
            field.up.insert(face.clone(), coface.clone());
            field.down.insert(coface, face);
        }
        Some(field)
    }

    pub fn pairs(&self) -> impl Iterator<Item = GradientPair> + '_ {
        self.up
            .iter()
            .map(|(s, t)| GradientPair::new(s.clone(), t.clone()))
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn is_matched(&self, s: &Simplex) -> bool {
        self.up.contains_key(s) || self.down.contains_key(s)
    }

    /// The simplex matched with `s`, if any.
    pub fn partner(&self, s: &Simplex) -> Option<&Simplex> {
        self.up.get(s).or_else(|| self.down.get(s))
    }

    pub fn coface_of(&self, face: &Simplex) -> Option<&Simplex> {
        self.up.get(face)
    }

    pub fn contains(&self, face: &Simplex, coface: &Simplex) -> bool {
        self.up.get(face) == Some(coface)
    }

    /// Vertex/edge pairs `({v}, uv)`.
    pub fn vertex_edge_pairs(&self) -> impl Iterator<Item = GradientPair> + '_ {
        self.pairs().filter(|p| p.face.dim() == 0)
    }

    /// Whether the modified Hasse digraph of `k` (coface → face edges,
    /// reversed on matched pairs) has no directed cycle.
    pub fn is_acyclic(&self, k: &SimplicialComplex) -> bool {
        let simplices: Vec<&Simplex> = k.simplices().collect();
        let index: HashMap<&Simplex, usize> =
            simplices.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); simplices.len()];
        let mut indeg = vec![0usize; simplices.len()];
        for (ti, t) in simplices.iter().enumerate() {
            for s in t.boundary() {
                let si = index[&s];
                let (from, to) = if self.contains(&s, t) { (si, ti) } else { (ti, si) };
                out[from].push(to);
                indeg[to] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..simplices.len()).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = stack.pop() {
            seen += 1;
            for &j in &out[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    stack.push(j);
                }
            }
        }
        seen == simplices.len()
    }
}

impl MorseFunction {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn value(&self, s: &Simplex) -> Rational {
        self.values[s]
    }

    pub fn get(&self, s: &Simplex) -> Option<Rational> {
        self.values.get(s).copied()
    }

    pub fn values(&self) -> &BTreeMap<Simplex, Rational> {
        &self.values
    }

    /// Distinct values in increasing order.
    pub fn image(&self) -> BTreeSet<Rational> {
        self.values.values().copied().collect()
    }

    /// `V_f = {(σ, τ) : σ < τ codim 1, f(σ) ≥ f(τ)}`.
    pub fn gradient_field(&self) -> GradientField {
        let pairs = self.values.iter().flat_map(|(t, &ft)| {
            t.boundary()
                .filter(move |s| self.values[s] >= ft)
                .map(move |s| GradientPair::new(s, t.clone()))
        });
        let field = GradientField::from_pairs(pairs)
            .expect("a discrete Morse function induces a matching");
        debug_assert!(field.is_acyclic(&self.complex));
        field
    }

    /// Simplices satisfying (C1) and (C2).
    pub fn forman_critical(&self) -> BTreeSet<Simplex> {
        self.complex
            .simplices()
            .filter(|s| {
                let fs = self.values[*s];
                self.complex.cofaces(s).all(|t| self.values[&t] > fs)
                    && s.boundary().all(|u| self.values[&u] < fs)
            })
            .cloned()
            .collect()
    }

    /// `K(c)`: closure of every simplex with value at most `c`.
    pub fn sublevel(&self, c: impl Into<LevelValue>) -> SimplicialComplex {
        let c = c.into();
        SimplicialComplex::from_simplices(
            self.values
                .iter()
                .filter(|(_, &v)| LevelValue::Finite(v) <= c)
                .map(|(s, _)| s.clone()),
        )
    }
}
