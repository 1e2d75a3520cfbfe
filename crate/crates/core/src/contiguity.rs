//! Contiguity of simplicial maps, categorical subcomplexes and the simplicial
//! Lusternik–Schnirelmann category.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::iso::isomorphic;
use crate::simplex::{Simplex, VertexId};

/// Search limits for contiguity and category computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContiguityBudget {
    /// Maximum number of simplicial maps visited by one class search.
    pub states: usize,
    /// Maximum number of partial facet partitions explored by [`scat_exact`].
    pub partitions: usize,
    /// Node limit for core isomorphism tests.
    pub isomorphism: usize,
}

impl Default for ContiguityBudget {
    fn default() -> Self {
        ContiguityBudget {
            states: 10_000_000,
            partitions: 10_000_000,
            isomorphism: crate::iso::DEFAULT_ISO_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: BTreeMap<VertexId, VertexId>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: BTreeMap<VertexId, VertexId>,
    ) -> Result<Self> {
        for v in source.vertices() {
            let w = vertex_map
                .get(&v)
                .ok_or_else(|| Error::NotSimplicial(format!("vertex {v} has no image")))?;
            if !target.has_vertex(*w) {
                return Err(Error::NotSimplicial(format!(
                    "image {w} of vertex {v} is not in the target"
                )));
            }
        }
        if vertex_map.len() != source.num_vertices() {
            return Err(Error::NotSimplicial(
                "map is defined on vertices outside the source".into(),
            ));
        }
        let map = SimplicialMap {
            source,
            target,
            vertex_map,
        };
        if let Some(f) = map.source.facets().iter().find(|f| !map.target.contains(&map.image(f))) {
            return Err(Error::NotSimplicial(format!(
                "image of {f} is not a simplex of the target"
            )));
        }
        Ok(map)
    }

    /// Inclusion of a subcomplex.
    pub fn inclusion(sub: &SimplicialComplex, k: &SimplicialComplex) -> Result<Self> {
        if !sub.is_subcomplex_of(k) {
            return Err(Error::NotSubcomplex);
        }
        Self::new(sub.clone(), k.clone(), sub.vertices().map(|v| (v, v)).collect())
    }

    pub fn constant(source: &SimplicialComplex, k: &SimplicialComplex, v: VertexId) -> Result<Self> {
        Self::new(source.clone(), k.clone(), source.vertices().map(|x| (x, v)).collect())
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.vertex_map
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.vertex_map[&v]
    }

    /// Image simplex with repeated vertices merged.
    pub fn image(&self, s: &Simplex) -> Simplex {
        let vs: BTreeSet<VertexId> = s.vertices().iter().map(|v| self.vertex_map[v]).collect();
        Simplex::new(vs).expect("image of a nonempty simplex is nonempty")
    }

    fn same_ends(&self, other: &SimplicialMap) -> bool {
        self.source == other.source && self.target == other.target
    }
}

/// Whether φ(σ) ∪ ψ(σ) is a simplex of the target for every σ.
pub fn is_contiguous(phi: &SimplicialMap, psi: &SimplicialMap) -> Result<bool> {
    if !phi.same_ends(psi) {
        return Err(Error::MismatchedMaps);
    }
    // Faces of a simplex are in the target, so facets of the source suffice.
    Ok(phi
        .source
        .facets()
        .iter()
        .all(|f| phi.target.contains(&phi.image(f).union(&psi.image(f)))))
}

/// Bitmask view of a source/target pair for the class search.
struct MapSpace {
    source_vertices: Vec<VertexId>,
    target_vertices: Vec<VertexId>,
    /// Source facets containing each source vertex, as index lists.
    facets_of: Vec<Vec<Vec<usize>>>,
    target_simplices: HashSet<u64>,
}

type State = Vec<u8>;

impl MapSpace {
    fn new(source: &SimplicialComplex, target: &SimplicialComplex) -> Result<Self> {
        let source_vertices: Vec<VertexId> = source.vertices().collect();
        let target_vertices: Vec<VertexId> = target.vertices().collect();
        if target_vertices.len() > 64 || source_vertices.len() > 64 {
            return Err(Error::budget(format!(
                "contiguity search too large: complexes over 64 vertices ({} -> {})",
                source_vertices.len(),
                target_vertices.len()
            )));
        }
        let sidx: HashMap<VertexId, usize> =
            source_vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let tidx: HashMap<VertexId, usize> =
            target_vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut facets_of = vec![Vec::new(); source_vertices.len()];
        for f in source.facets() {
            let idx: Vec<usize> = f.vertices().iter().map(|v| sidx[v]).collect();
            for &i in &idx {
                facets_of[i].push(idx.clone());
            }
        }
        let target_simplices = target
            .simplices()
            .map(|s| s.vertices().iter().fold(0u64, |m, v| m | 1 << tidx[v]))
            .collect();
        Ok(MapSpace {
            source_vertices,
            target_vertices,
            facets_of,
            target_simplices,
        })
    }

    fn encode(&self, map: &SimplicialMap) -> State {
        let tidx: HashMap<VertexId, u8> = self
            .target_vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u8))
            .collect();
        self.source_vertices.iter().map(|v| tidx[&map.apply(*v)]).collect()
    }

    fn decode(&self, st: &State, like: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            source: like.source.clone(),
            target: like.target.clone(),
            vertex_map: self
                .source_vertices
                .iter()
                .zip(st)
                .map(|(&v, &t)| (v, self.target_vertices[t as usize]))
                .collect(),
        }
    }

    /// Maps differing from `st` at one vertex and contiguous to it. Any
    /// direct contiguity can be refined into such single-vertex moves, so
    /// reachability is unchanged.
    fn neighbours(&self, st: &State) -> Vec<State> {
        let mut out = Vec::new();
        for x in 0..st.len() {
            for y in 0..self.target_vertices.len() as u8 {
                if y == st[x] {
                    continue;
                }
                let ok = self.facets_of[x].iter().all(|f| {
                    let img = f.iter().fold(1u64 << y, |m, &i| m | 1 << st[i]);
                    self.target_simplices.contains(&img)
                });
                if ok {
                    let mut next = st.clone();
                    next[x] = y;
                    out.push(next);
                }
            }
        }
        out
    }

    /// Breadth-first search from `start` until `goal` holds.
    fn search(
        &self,
        start: State,
        goal: impl Fn(&State) -> bool,
        budget: usize,
    ) -> Result<Option<Vec<State>>> {
        let mut parent: HashMap<State, Option<State>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([start]);
        while let Some(st) = queue.pop_front() {
            if goal(&st) {
                let mut path = vec![st.clone()];
                let mut cur = st;
                while let Some(Some(p)) = parent.get(&cur) {
                    path.push(p.clone());
                    cur = p.clone();
                }
                path.reverse();
                return Ok(Some(path));
            }
            for next in self.neighbours(&st) {
                if parent.contains_key(&next) {
                    continue;
                }
                if parent.len() >= budget {
                    return Err(Error::budget(format!(
                        "contiguity search too large: more than {budget} maps"
                    )));
                }
                parent.insert(next.clone(), Some(st.clone()));
                queue.push_back(next);
            }
        }
        Ok(None)
    }
}

/// Searches the contiguity class of φ for ψ. Returns a path of maps from φ
/// to ψ, consecutive maps being contiguous, or `None`.
pub fn contiguity_path(
    phi: &SimplicialMap,
    psi: &SimplicialMap,
    budget: usize,
) -> Result<Option<Vec<SimplicialMap>>> {
    if !phi.same_ends(psi) {
        return Err(Error::MismatchedMaps);
    }
    let space = MapSpace::new(&phi.source, &phi.target)?;
    let goal = space.encode(psi);
    Ok(space
        .search(space.encode(phi), |st| *st == goal, budget)?
        .map(|path| path.iter().map(|st| space.decode(st, phi)).collect()))
}

pub fn same_contiguity_class(phi: &SimplicialMap, psi: &SimplicialMap, budget: usize) -> Result<bool> {
    Ok(contiguity_path(phi, psi, budget)?.is_some())
}

/// Some vertex `v` with `U ⊆ st(v)`, in which case the inclusion is directly
/// contiguous to the constant map at `v`.
pub fn star_containing(u: &SimplicialComplex, k: &SimplicialComplex) -> Option<VertexId> {
    k.vertices()
        .find(|&v| u.facets().iter().all(|f| k.contains(&f.with_vertex(v))))
}

/// Whether the inclusion `U → K` lies in the contiguity class of a constant
/// map. Returns the witnessing vertex.
pub fn categorical_vertex(
    u: &SimplicialComplex,
    k: &SimplicialComplex,
    budget: usize,
) -> Result<Option<VertexId>> {
    if !u.is_subcomplex_of(k) {
        return Err(Error::NotSubcomplex);
    }
    if u.is_empty() {
        return Ok(k.vertices().next());
    }
    if let Some(v) = star_containing(u, k) {
        return Ok(Some(v));
    }
    categorical_by_search(u, k, budget)
}

/// Class search without the star shortcut.
pub fn categorical_by_search(
    u: &SimplicialComplex,
    k: &SimplicialComplex,
    budget: usize,
) -> Result<Option<VertexId>> {
    let inclusion = SimplicialMap::inclusion(u, k)?;
    let space = MapSpace::new(u, k)?;
    let path = space.search(
        space.encode(&inclusion),
        |st| st.iter().all(|&t| t == st[0]),
        budget,
    )?;
    Ok(path.map(|p| space.target_vertices[p.last().unwrap()[0] as usize]))
}

pub fn is_categorical(u: &SimplicialComplex, k: &SimplicialComplex, budget: usize) -> Result<bool> {
    Ok(categorical_vertex(u, k, budget)?.is_some())
}

/// Cover of a complex by closures of the blocks of a facet partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub pieces: Vec<SimplicialComplex>,
}

impl Cover {
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Union of pieces equals `k`.
    pub fn covers(&self, k: &SimplicialComplex) -> bool {
        let mut all = BTreeSet::new();
        for p in &self.pieces {
            all.extend(p.simplices().cloned());
        }
        &all == k.simplex_set() && self.pieces.iter().all(|p| !p.is_empty())
    }
}

/// Greedy star cover: repeatedly the vertex whose star holds the most
/// uncovered facets. Each piece is the closure of the facets it takes.
pub fn greedy_star_cover(k: &SimplicialComplex) -> Cover {
    let mut uncovered: Vec<&Simplex> = k.facets().iter().collect();
    let mut pieces = Vec::new();
    while !uncovered.is_empty() {
        let (best, _) = k
            .vertices()
            .map(|v| {
                let n = uncovered
                    .iter()
                    .filter(|f| k.contains(&f.with_vertex(v)))
                    .count();
                (v, n)
            })
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("nonempty complex has vertices");
        let (taken, rest): (Vec<&Simplex>, Vec<&Simplex>) = uncovered
            .into_iter()
            .partition(|f| k.contains(&f.with_vertex(best)));
        pieces.push(SimplicialComplex::from_simplices(taken.into_iter().cloned()));
        uncovered = rest;
    }
    Cover { pieces }
}

/// `(lower, upper)` bounds on scat without any class search.
pub fn scat_bounds(k: &SimplicialComplex) -> (usize, usize) {
    if k.is_empty() {
        return (0, 0);
    }
    let lower = if k.core().num_vertices() == 1 { 0 } else { 1 };
    let upper = greedy_star_cover(k).len() - 1;
    (lower, upper.max(lower))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScatResult {
    pub scat: usize,
    /// A cover by `scat + 1` categorical pieces.
    pub cover: Cover,
}

/// Exact simplicial LS category: the least `m` such that the facets split
/// into `m + 1` blocks with categorical closures.
pub fn scat_exact(k: &SimplicialComplex, budget: ContiguityBudget) -> Result<ScatResult> {
    if k.is_empty() {
        return Ok(ScatResult {
            scat: 0,
            cover: Cover { pieces: Vec::new() },
        });
    }
    let facets = k.facets().to_vec();
    if facets.len() > 128 {
        return Err(Error::budget(format!(
            "partition search limited to 128 facets, complex has {}",
            facets.len()
        )));
    }
    let (_, upper) = scat_bounds(k);
    let mut search = PartitionSearch {
        k,
        facets: &facets,
        cache: HashMap::new(),
        nodes: 0,
        budget,
    };
    for m in 0..upper {
        if let Some(blocks) = search.partition(m + 1)? {
            return Ok(ScatResult {
                scat: m,
                cover: search.cover(&blocks),
            });
        }
    }
    Ok(ScatResult {
        scat: upper,
        cover: greedy_star_cover(k),
    })
}

struct PartitionSearch<'a> {
    k: &'a SimplicialComplex,
    facets: &'a [Simplex],
    cache: HashMap<u128, bool>,
    nodes: usize,
    budget: ContiguityBudget,
}

impl PartitionSearch<'_> {
    fn closure(&self, mask: u128) -> SimplicialComplex {
        SimplicialComplex::from_simplices(
            (0..self.facets.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.facets[i].clone()),
        )
    }

    fn categorical(&mut self, mask: u128) -> Result<bool> {
        if let Some(&c) = self.cache.get(&mask) {
            return Ok(c);
        }
        let piece = self.closure(mask);
        let c = is_categorical(&piece, self.k, self.budget.states)?;
        self.cache.insert(mask, c);
        Ok(c)
    }

    fn partition(&mut self, blocks: usize) -> Result<Option<Vec<u128>>> {
        let mut masks = Vec::with_capacity(blocks);
        if self.assign(0, blocks, &mut masks)? {
            Ok(Some(masks))
        } else {
            Ok(None)
        }
    }

    /// Facet `i` goes into an open block or opens the next one. A block that
    /// is already non-categorical stays so under growth, so it is pruned.
    fn assign(&mut self, i: usize, blocks: usize, masks: &mut Vec<u128>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget.partitions {
            return Err(Error::budget(format!(
                "partition search explored more than {} states",
                self.budget.partitions
            )));
        }
        if i == self.facets.len() {
            return Ok(true);
        }
        for b in 0..masks.len() {
            let grown = masks[b] | 1 << i;
            if self.categorical(grown)? {
                let old = std::mem::replace(&mut masks[b], grown);
                if self.assign(i + 1, blocks, masks)? {
                    return Ok(true);
                }
                masks[b] = old;
            }
        }
        if masks.len() < blocks {
            // A single facet is a simplex, hence inside the star of its vertices.
            masks.push(1 << i);
            if self.assign(i + 1, blocks, masks)? {
                return Ok(true);
            }
            masks.pop();
        }
        Ok(false)
    }

    fn cover(&self, masks: &[u128]) -> Cover {
        Cover {
            pieces: masks.iter().map(|&m| self.closure(m)).collect(),
        }
    }
}

/// Same strong homotopy type, decided by comparing cores up to isomorphism.
pub fn strong_equivalent(k: &SimplicialComplex, l: &SimplicialComplex, budget: usize) -> Result<bool> {
    Ok(isomorphic(&k.core(), &l.core(), budget)?.is_some())
}
