//! Brute-force reference computations written directly from the
//! definitions, sharing no code with the library beyond plain data.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use proptest::prelude::*;
use strongmorse::{MorseFunction, Simplex, SimplicialComplex};

pub type Q = Ratio<i64>;
pub type Cell = Vec<u32>;

/// Plain copy of a function as sorted vertex lists.
pub struct Plain {
    pub values: BTreeMap<Cell, Q>,
}

impl Plain {
    pub fn of(f: &MorseFunction) -> Self {
        Plain {
            values: f
                .values()
                .iter()
                .map(|(s, &x)| (s.vertices().iter().map(|v| v.0).collect(), x))
                .collect(),
        }
    }

    pub fn from_pairs(vals: &[(&[u32], i64)]) -> Self {
        Plain {
            values: vals.iter().map(|(s, x)| (s.to_vec(), Q::from_integer(*x))).collect(),
        }
    }

    fn has(&self, c: &Cell) -> bool {
        self.values.contains_key(c)
    }

    fn f(&self, c: &Cell) -> Q {
        self.values[c]
    }

    fn add(c: &Cell, v: u32) -> Cell {
        let mut d = c.clone();
        if !d.contains(&v) {
            d.push(v);
            d.sort();
        }
        d
    }

    fn is_facet_pair(a: &Cell, b: &Cell) -> bool {
        a.len() + 1 == b.len() && a.iter().all(|x| b.contains(x))
    }

    fn proper_face(a: &Cell, b: &Cell) -> bool {
        a.len() < b.len() && a.iter().all(|x| b.contains(x))
    }

    pub fn critical(&self) -> BTreeSet<Cell> {
        self.values
            .keys()
            .filter(|s| {
                let fs = self.f(s);
                self.values
                    .iter()
                    .filter(|(t, _)| Self::is_facet_pair(s, t) || Self::is_facet_pair(t, s))
                    .all(|(t, &ft)| if t.len() > s.len() { ft > fs } else { ft < fs })
            })
            .cloned()
            .collect()
    }

    pub fn gradient(&self) -> BTreeSet<(Cell, Cell)> {
        let mut out = BTreeSet::new();
        for (s, &fs) in &self.values {
            for (t, &ft) in &self.values {
                if Self::is_facet_pair(s, t) && fs >= ft {
                    out.insert((s.clone(), t.clone()));
                }
            }
        }
        out
    }

    pub fn st(&self, v: u32, u: u32) -> BTreeSet<Cell> {
        self.values
            .keys()
            .filter(|s| s.contains(&v) && self.has(&Self::add(s, u)))
            .cloned()
            .collect()
    }

    /// `None` stands for +∞.
    pub fn m_v(&self, v: u32, u: u32) -> Option<Q> {
        let st = self.st(v, u);
        let crit = self.critical();
        let base = self.f(&Self::add(&vec![v], u));
        self.values
            .iter()
            .filter(|(s, &x)| x > base && (!st.contains(*s) || crit.contains(*s)))
            .map(|(_, &x)| x)
            .min()
    }

    fn in_sublevel(&self, c: &Cell, l: Q) -> bool {
        self.values
            .iter()
            .any(|(t, &x)| x <= l && (t == c || Self::proper_face(c, t)))
    }

    pub fn l_v(&self, v: u32, u: u32, strict: bool) -> Option<Q> {
        let st = self.st(v, u);
        let crit = self.critical();
        let crit_values: BTreeSet<Q> = crit.iter().map(|c| self.f(c)).collect();
        let base = self.f(&Self::add(&vec![v], u));
        let m = self.m_v(v, u);
        let below = |x: Q| match m {
            None => true,
            Some(m) => {
                if strict {
                    x < m
                } else {
                    x <= m
                }
            }
        };
        let mut candidates: Vec<Q> = st
            .iter()
            .filter(|s| !crit.contains(*s))
            .map(|s| self.f(s))
            .filter(|x| !crit_values.contains(x) && *x >= base && below(*x))
            .collect();
        candidates.sort();
        candidates.dedup();
        candidates.into_iter().rev().find(|&l| {
            let regular: Vec<&Cell> = st
                .iter()
                .filter(|s| !crit.contains(*s) && self.in_sublevel(s, l))
                .collect();
            regular
                .iter()
                .filter(|s| !regular.iter().any(|t| Self::proper_face(s, t)))
                .all(|s| s.contains(&u))
        })
    }

    /// Critical simplices plus uncovered gradient pairs, as (cells, value).
    pub fn scrit(&self, strict: bool) -> Vec<(Vec<Cell>, Q)> {
        let grad = self.gradient();
        let mut covered: BTreeSet<(Cell, Cell)> = BTreeSet::new();
        for (s, t) in &grad {
            if s.len() != 1 {
                continue;
            }
            let v = s[0];
            let u = *t.iter().find(|&&w| w != v).unwrap();
            if let Some(l) = self.l_v(v, u, strict) {
                let lo = self.f(t);
                for (a, b) in &grad {
                    let x = self.f(b);
                    if lo <= x && x <= l {
                        covered.insert((a.clone(), b.clone()));
                    }
                }
            }
        }
        let mut out: Vec<(Vec<Cell>, Q)> = self
            .critical()
            .into_iter()
            .map(|c| {
                let x = self.f(&c);
                (vec![c], x)
            })
            .collect();
        for (a, b) in grad {
            if !covered.contains(&(a.clone(), b.clone())) {
                let x = self.f(&b);
                out.push((vec![a, b], x));
            }
        }
        out.sort();
        out
    }
}

/// A small random complex: up to `max_facets` random vertex subsets of
/// `0..n`, `n ≤ max_vertices`.
pub fn complex_strategy(max_vertices: u32, max_facets: usize) -> impl Strategy<Value = SimplicialComplex> {
    (2..=max_vertices).prop_flat_map(move |n| {
        prop::collection::vec(1u32..(1 << n), 1..=max_facets).prop_map(move |masks| {
            SimplicialComplex::from_simplices(masks.into_iter().map(|m| {
                Simplex::new((0..n).filter(|i| m & (1 << i) != 0)).unwrap()
            }))
        })
    })
}

/// Canonical, order-independent form of a report's objects.
pub fn objects_plain(r: &strongmorse::strong::ScritReport) -> Vec<(Vec<Cell>, Q)> {
    use strongmorse::strong::CriticalObject;
    let cell = |s: &Simplex| s.vertices().iter().map(|v| v.0).collect::<Cell>();
    let mut out: Vec<(Vec<Cell>, Q)> = r
        .objects
        .iter()
        .map(|o| match o {
            CriticalObject::Simplex { simplex, value } => (vec![cell(simplex)], *value),
            CriticalObject::Pair { pair, value } => (vec![cell(&pair.face), cell(&pair.coface)], *value),
        })
        .collect();
    out.sort();
    out
}
