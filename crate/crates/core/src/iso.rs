//! Isomorphism of small simplicial complexes by backtracking over vertex
//! bijections.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::VertexId;

pub const DEFAULT_ISO_BUDGET: usize = 1_000_000;

pub type VertexMap = BTreeMap<VertexId, VertexId>;

/// Per-vertex invariant: number of simplices of each dimension containing it.
fn profile(k: &SimplicialComplex, v: VertexId) -> Vec<usize> {
    let mut p = Vec::new();
    for s in k.simplices().filter(|s| s.contains(v)) {
        if p.len() <= s.dim() {
            p.resize(s.dim() + 1, 0);
        }
        p[s.dim()] += 1;
    }
    p
}

fn neighbours(k: &SimplicialComplex) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> =
        k.vertices().map(|v| (v, BTreeSet::new())).collect();
    for e in k.simplices().filter(|s| s.dim() == 1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adj.get_mut(&a).unwrap().insert(b);
        adj.get_mut(&b).unwrap().insert(a);
    }
    adj
}

/// Returns a vertex bijection carrying simplices of `k` onto simplices of `l`,
/// or `None` if the complexes are not isomorphic.
pub fn isomorphic(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    budget: usize,
) -> Result<Option<VertexMap>> {
    if k.f_vector() != l.f_vector() || k.facets().len() != l.facets().len() {
        return Ok(None);
    }
    let kp: BTreeMap<VertexId, Vec<usize>> = k.vertices().map(|v| (v, profile(k, v))).collect();
    let lp: BTreeMap<VertexId, Vec<usize>> = l.vertices().map(|v| (v, profile(l, v))).collect();
    let mut ks: Vec<&Vec<usize>> = kp.values().collect();
    let mut ls: Vec<&Vec<usize>> = lp.values().collect();
    ks.sort();
    ls.sort();
    if ks != ls {
        return Ok(None);
    }

    // Most constrained vertices first: rare profiles, then high degree.
    let mut order: Vec<VertexId> = k.vertices().collect();
    order.sort_by_key(|v| {
        let p = &kp[v];
        let freq = kp.values().filter(|q| *q == p).count();
        (freq, std::cmp::Reverse(p.clone()))
    });

    let mut search = IsoSearch {
        k,
        l,
        kadj: neighbours(k),
        ladj: neighbours(l),
        kp,
        lp,
        order,
        map: BTreeMap::new(),
        used: BTreeSet::new(),
        nodes: 0,
        budget,
    };
    if search.extend(0)? {
        Ok(Some(search.map))
    } else {
        Ok(None)
    }
}

struct IsoSearch<'a> {
    k: &'a SimplicialComplex,
    l: &'a SimplicialComplex,
    kadj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    ladj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    kp: BTreeMap<VertexId, Vec<usize>>,
    lp: BTreeMap<VertexId, Vec<usize>>,
    order: Vec<VertexId>,
    map: VertexMap,
    used: BTreeSet<VertexId>,
    nodes: usize,
    budget: usize,
}

impl IsoSearch<'_> {
    fn consistent(&self, v: VertexId, w: VertexId) -> bool {
        if self.kp[&v] != self.lp[&w] {
            return false;
        }
        self.map.iter().all(|(&a, &b)| {
            self.kadj[&v].contains(&a) == self.ladj[&w].contains(&b)
        })
    }

    fn complete(&self) -> bool {
        self.k
            .facets()
            .iter()
            .all(|f| self.l.facets().contains(&f.map_vertices(|v| self.map[&v])))
    }

    fn extend(&mut self, depth: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::budget(format!(
                "isomorphism search exceeded {} nodes",
                self.budget
            )));
        }
        if depth == self.order.len() {
            return Ok(self.complete());
        }
        let v = self.order[depth];
        let candidates: Vec<VertexId> = self
            .l
            .vertices()
            .filter(|w| !self.used.contains(w))
            .collect();
        for w in candidates {
            if !self.consistent(v, w) {
                continue;
            }
            self.map.insert(v, w);
            self.used.insert(w);
            if self.extend(depth + 1)? {
                return Ok(true);
            }
            self.map.remove(&v);
            self.used.remove(&w);
        }
        Ok(false)
    }
}

/// Checks that `map` is a simplicial isomorphism `k → l`.
pub fn is_isomorphism(k: &SimplicialComplex, l: &SimplicialComplex, map: &VertexMap) -> bool {
    let image: BTreeSet<VertexId> = map.values().copied().collect();
    if map.len() != k.num_vertices()
        || image.len() != map.len()
        || !k.vertices().all(|v| map.contains_key(&v))
        || !l.vertices().all(|w| image.contains(&w))
        || k.len() != l.len()
    {
        return false;
    }
    k.simplices()
        .all(|s| l.contains(&s.map_vertices(|v| map[&v])))
}
