use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense internal vertex identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// A nonempty simplex stored as a strictly increasing vertex list.
///
/// Simplices order first by dimension and then lexicographically, so any
/// ordered collection of simplices lists faces before their cofaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Builds a simplex from any vertex list. Duplicates are an error.
    pub fn new<I, V>(vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut vs: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        if vs.is_empty() {
            return Err(Error::EmptySimplex);
        }
        vs.sort_unstable();
        for w in vs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0]));
            }
        }
        Ok(Simplex(vs))
    }

    /// Caller guarantees `vs` is sorted, deduplicated and nonempty.
    pub(crate) fn from_sorted(vs: Vec<VertexId>) -> Self {
        debug_assert!(!vs.is_empty());
        debug_assert!(vs.windows(2).all(|w| w[0] < w[1]));
        Simplex(vs)
    }

    pub fn vertex(v: impl Into<VertexId>) -> Self {
        Simplex(vec![v.into()])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `self ⊆ other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|&v| other.contains(v))
    }

    pub fn with_vertex(&self, v: VertexId) -> Simplex {
        match self.0.binary_search(&v) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut vs = self.0.clone();
                vs.insert(pos, v);
                Simplex(vs)
            }
        }
    }

    /// Removes `v`; `None` if that would leave the empty simplex.
    pub fn without_vertex(&self, v: VertexId) -> Option<Simplex> {
        let vs: Vec<VertexId> = self.0.iter().copied().filter(|&w| w != v).collect();
        if vs.is_empty() {
            None
        } else {
            Some(Simplex(vs))
        }
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut vs: Vec<VertexId> = self.0.iter().chain(other.0.iter()).copied().collect();
        vs.sort_unstable();
        vs.dedup();
        Simplex(vs)
    }

    /// Codimension-one faces.
    pub fn boundary(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (0..n).filter(move |_| n > 1).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// Every nonempty face, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        assert!(n < 32, "simplex too large for face enumeration");
        (1u32..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    pub fn map_vertices(&self, f: impl Fn(VertexId) -> VertexId) -> Simplex {
        let mut vs: Vec<VertexId> = self.0.iter().map(|&v| f(v)).collect();
        vs.sort_unstable();
        vs.dedup();
        Simplex(vs)
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Test and fixture convenience; panics on empty or repeated vertices.
impl<const N: usize> From<[u32; N]> for Simplex {
    fn from(vs: [u32; N]) -> Self {
        Simplex::new(vs).expect("invalid simplex literal")
    }
}

impl From<&[u32]> for Simplex {
    fn from(vs: &[u32]) -> Self {
        Simplex::new(vs.iter().copied()).expect("invalid simplex literal")
    }
}
