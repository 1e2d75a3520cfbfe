//! Finite abstract simplicial complexes.
//!
//! A [`SimplicialComplex`] is immutable once built; every operation returns a
//! fresh value. The empty simplex is never stored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::simplex::{Simplex, VertexId};

/// A set of simplices of some ambient complex, not necessarily closed under
/// faces (an open star, for instance).
pub type SimplexSet = BTreeSet<Simplex>;

#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
    vertices: BTreeSet<VertexId>,
    facets: Vec<Simplex>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            simplices: BTreeSet::new(),
            vertices: BTreeSet::new(),
            facets: Vec::new(),
        }
    }

    /// Closure of a facet list. Non-maximal and repeated facets are absorbed.
    pub fn from_facets<I, F, V>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let facets = facets
            .into_iter()
            .map(Simplex::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_simplices(facets))
    }

    /// Closure of an arbitrary collection of simplices.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(generators: I) -> Self {
        let mut simplices = BTreeSet::new();
        for s in generators {
            if simplices.contains(&s) {
                continue;
            }
            simplices.extend(s.faces());
        }
        Self::from_closed(simplices)
    }

    /// `simplices` must already be closed under faces.
    pub(crate) fn from_closed(simplices: BTreeSet<Simplex>) -> Self {
        let vertices: BTreeSet<VertexId> = simplices
            .iter()
            .take_while(|s| s.dim() == 0)
            .map(|s| s.vertices()[0])
            .collect();
        let mut complex = SimplicialComplex {
            simplices,
            vertices,
            facets: Vec::new(),
        };
        complex.facets = complex
            .simplices
            .iter()
            .filter(|s| complex.cofaces(s).next().is_none())
            .cloned()
            .collect();
        complex
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().next_back().map(Simplex::dim)
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// All simplices, faces before cofaces.
    pub fn simplices(&self) -> impl DoubleEndedIterator<Item = &Simplex> + '_ {
        self.simplices.iter()
    }

    pub fn simplex_set(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for s in &self.simplices {
            if f.len() <= s.dim() {
                f.resize(s.dim() + 1, 0);
            }
            f[s.dim()] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Cofaces of `s` one dimension up.
    pub fn cofaces<'a>(&'a self, s: &'a Simplex) -> impl Iterator<Item = Simplex> + 'a {
        self.vertices
            .iter()
            .filter(move |&&w| !s.contains(w))
            .map(move |&w| s.with_vertex(w))
            .filter(move |t| self.simplices.contains(t))
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    fn facets_containing(&self, v: VertexId) -> impl Iterator<Item = &Simplex> + '_ {
        self.facets.iter().filter(move |f| f.contains(v))
    }

    /// Subcomplex of all σ with σ ∪ {v} ∈ K.
    pub fn star(&self, v: VertexId) -> Result<SimplicialComplex> {
        self.check_vertex(v)?;
        Ok(Self::from_simplices(self.facets_containing(v).cloned()))
    }

    /// Simplices of the star that avoid `v`.
    pub fn link(&self, v: VertexId) -> Result<SimplicialComplex> {
        let star = self.star(v)?;
        Ok(Self::from_closed(
            star.simplices.into_iter().filter(|s| !s.contains(v)).collect(),
        ))
    }

    /// Simplices containing `v`.
    pub fn open_star(&self, v: VertexId) -> Result<SimplexSet> {
        self.check_vertex(v)?;
        Ok(self
            .simplices
            .iter()
            .filter(|s| s.contains(v))
            .cloned()
            .collect())
    }

    /// Smallest vertex lying in every facet, if any.
    pub fn is_cone(&self) -> Option<VertexId> {
        let mut facets = self.facets.iter();
        let first = facets.next()?;
        let mut common: Vec<VertexId> = first.vertices().to_vec();
        for f in facets {
            common.retain(|&v| f.contains(v));
            if common.is_empty() {
                return None;
            }
        }
        common.first().copied()
    }

    /// Vertices other than `v` lying in every facet containing `v`.
    pub fn dominators(&self, v: VertexId) -> Vec<VertexId> {
        let mut facets = self.facets_containing(v);
        let Some(first) = facets.next() else {
            return Vec::new();
        };
        let mut common: Vec<VertexId> =
            first.vertices().iter().copied().filter(|&w| w != v).collect();
        for f in facets {
            common.retain(|&w| f.contains(w));
        }
        common
    }

    pub fn is_dominated(&self, v: VertexId) -> bool {
        !self.dominators(v).is_empty()
    }

    /// Every dominated vertex with its sorted dominators, by increasing id.
    pub fn dominated_vertices(&self) -> Vec<(VertexId, Vec<VertexId>)> {
        self.vertices
            .iter()
            .map(|&v| (v, self.dominators(v)))
            .filter(|(_, d)| !d.is_empty())
            .collect()
    }

    /// Full subcomplex spanned by `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> SimplicialComplex {
        Self::from_closed(
            self.simplices
                .iter()
                .filter(|s| s.vertices().iter().all(|v| keep.contains(v)))
                .cloned()
                .collect(),
        )
    }

    /// `K - {v}`: every simplex not containing `v`.
    pub fn delete_vertex(&self, v: VertexId) -> SimplicialComplex {
        Self::from_closed(
            self.simplices
                .iter()
                .filter(|s| !s.contains(v))
                .cloned()
                .collect(),
        )
    }

    pub fn strong_collapse_step(&self, v: VertexId) -> Result<SimplicialComplex> {
        self.check_vertex(v)?;
        if !self.is_dominated(v) {
            return Err(Error::NotDominated(v));
        }
        Ok(self.delete_vertex(v))
    }

    /// Removes the smallest dominated vertex until none is left.
    pub fn core(&self) -> SimplicialComplex {
        self.core_by(|candidates| candidates[0])
    }

    /// Core computation with a caller-chosen elimination order. `choose`
    /// receives the current dominated vertices in increasing order.
    pub fn core_by(&self, mut choose: impl FnMut(&[VertexId]) -> VertexId) -> SimplicialComplex {
        let mut current = self.clone();
        loop {
            let dominated: Vec<VertexId> = current
                .dominated_vertices()
                .into_iter()
                .map(|(v, _)| v)
                .collect();
            if dominated.is_empty() {
                return current;
            }
            let v = choose(&dominated);
            assert!(dominated.contains(&v), "chosen vertex is not dominated");
            current = current.delete_vertex(v);
        }
    }

    pub fn is_strongly_collapsible(&self) -> bool {
        self.core().num_vertices() == 1
    }

    /// Flag complex of the 1-skeleton.
    pub fn clique_complex(&self) -> SimplicialComplex {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> =
            self.vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
        for e in self.simplices.iter().filter(|s| s.dim() == 1) {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            adj.get_mut(&a).unwrap().insert(b);
            adj.get_mut(&b).unwrap().insert(a);
        }
        let mut cliques = Vec::new();
        bron_kerbosch(
            &adj,
            Vec::new(),
            self.vertices.clone(),
            BTreeSet::new(),
            &mut cliques,
        );
        Self::from_simplices(cliques.into_iter().map(Simplex::from_sorted))
    }
}

fn bron_kerbosch(
    adj: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    clique: Vec<VertexId>,
    mut candidates: BTreeSet<VertexId>,
    mut excluded: BTreeSet<VertexId>,
    out: &mut Vec<Vec<VertexId>>,
) {
    if candidates.is_empty() && excluded.is_empty() {
        let mut c = clique;
        c.sort_unstable();
        out.push(c);
        return;
    }
    while let Some(&v) = candidates.iter().next() {
        let mut next = clique.clone();
        next.push(v);
        let nbrs = &adj[&v];
        bron_kerbosch(
            adj,
            next,
            candidates.intersection(nbrs).copied().collect(),
            excluded.intersection(nbrs).copied().collect(),
            out,
        );
        candidates.remove(&v);
        excluded.insert(v);
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex{:?}", self.facets)
    }
}
