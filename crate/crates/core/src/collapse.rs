//! Standard (non-strong) elementary collapses and exhaustive collapsibility
//! search.

use std::collections::{BTreeMap, HashSet};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// Default node budget for [`collapse_search`].
pub const DEFAULT_COLLAPSE_BUDGET: usize = 1_000_000;

/// Pairs `(σ, τ)` where τ is the unique proper coface of σ.
pub fn free_pairs(k: &SimplicialComplex) -> Vec<(Simplex, Simplex)> {
    let mut pairs = Vec::new();
    for s in k.simplices() {
        let mut cofaces = k.cofaces(s);
        if let (Some(t), None) = (cofaces.next(), cofaces.next()) {
            pairs.push((s.clone(), t));
        }
    }
    pairs
}

#[derive(Clone, Debug)]
pub enum CollapseTarget {
    /// Any single vertex.
    Point,
    Subcomplex(SimplicialComplex),
}

/// Indexed view of a complex with simplices as bit positions.
struct Indexed {
    simplices: Vec<Simplex>,
    cofaces: Vec<Vec<usize>>,
    words: usize,
}

type State = Vec<u64>;

impl Indexed {
    fn new(k: &SimplicialComplex) -> Self {
        let simplices: Vec<Simplex> = k.simplices().cloned().collect();
        let index: BTreeMap<&Simplex, usize> =
            simplices.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let cofaces = simplices
            .iter()
            .map(|s| k.cofaces(s).map(|t| index[&t]).collect())
            .collect();
        let words = simplices.len().div_ceil(64).max(1);
        Indexed {
            simplices,
            cofaces,
            words,
        }
    }

    fn full(&self) -> State {
        let mut st = vec![0u64; self.words];
        for i in 0..self.simplices.len() {
            set(&mut st, i);
        }
        st
    }

    fn mask_of(&self, l: &SimplicialComplex) -> State {
        let mut st = vec![0u64; self.words];
        for (i, s) in self.simplices.iter().enumerate() {
            if l.contains(s) {
                set(&mut st, i);
            }
        }
        st
    }

    fn free_pairs(&self, st: &State, keep: Option<&State>) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.simplices.len() {
            if !get(st, i) {
                continue;
            }
            let mut live = self.cofaces[i].iter().filter(|&&j| get(st, j));
            if let (Some(&j), None) = (live.next(), live.next()) {
                if let Some(keep) = keep {
                    if get(keep, i) || get(keep, j) {
                        continue;
                    }
                }
                out.push((i, j));
            }
        }
        out
    }
}

fn get(st: &State, i: usize) -> bool {
    st[i / 64] & (1 << (i % 64)) != 0
}

fn set(st: &mut State, i: usize) {
    st[i / 64] |= 1 << (i % 64);
}

fn clear(st: &mut State, i: usize) {
    st[i / 64] &= !(1 << (i % 64));
}

fn count(st: &State) -> u32 {
    st.iter().map(|w| w.count_ones()).sum()
}

/// Backtracking search for a sequence of elementary collapses from `k` down
/// to `target`. Returns the free pairs removed, in order, or `None` when no
/// such sequence exists. Exhaustive, so intended for small complexes.
pub fn collapse_search(
    k: &SimplicialComplex,
    target: &CollapseTarget,
    budget: usize,
) -> Result<Option<Vec<(Simplex, Simplex)>>> {
    let goal = match target {
        CollapseTarget::Point => {
            if k.is_empty() {
                return Ok(None);
            }
            None
        }
        CollapseTarget::Subcomplex(l) => {
            if !l.is_subcomplex_of(k) {
                return Err(Error::NotSubcomplex);
            }
            // Collapses preserve the Euler characteristic.
            if l.euler_characteristic() != k.euler_characteristic() {
                return Ok(None);
            }
            Some(l)
        }
    };
    if goal.is_none() && k.euler_characteristic() != 1 {
        return Ok(None);
    }
    let idx = Indexed::new(k);
    let keep = goal.map(|l| idx.mask_of(l));
    let mut search = Search {
        idx: &idx,
        keep: keep.as_ref(),
        seen: HashSet::new(),
        budget,
        path: Vec::new(),
    };
    let start = idx.full();
    if search.dfs(start)? {
        Ok(Some(
            search
                .path
                .into_iter()
                .map(|(i, j)| (idx.simplices[i].clone(), idx.simplices[j].clone()))
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

pub fn is_collapsible(k: &SimplicialComplex, budget: usize) -> Result<bool> {
    Ok(collapse_search(k, &CollapseTarget::Point, budget)?.is_some())
}

struct Search<'a> {
    idx: &'a Indexed,
    keep: Option<&'a State>,
    seen: HashSet<State>,
    budget: usize,
    path: Vec<(usize, usize)>,
}

impl Search<'_> {
    fn done(&self, st: &State) -> bool {
        match self.keep {
            Some(keep) => st == keep,
            None => count(st) == 1,
        }
    }

    fn dfs(&mut self, st: State) -> Result<bool> {
        if self.done(&st) {
            return Ok(true);
        }
        if !self.seen.insert(st.clone()) {
            return Ok(false);
        }
        if self.seen.len() > self.budget {
            return Err(Error::budget(format!(
                "collapse search visited more than {} states",
                self.budget
            )));
        }
        for (i, j) in self.idx.free_pairs(&st, self.keep) {
            let mut next = st.clone();
            clear(&mut next, i);
            clear(&mut next, j);
            self.path.push((i, j));
            if self.dfs(next)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}
