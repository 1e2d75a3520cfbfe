//! Constructing discrete Morse functions from acyclic matchings.
//!
//! A function is assembled from a [`BuildOrder`]: a sequence of units, each
//! either a matched pair (both members get the same value) or a single
//! unmatched simplex. The i-th unit receives the value `i`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::collapse::free_pairs;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::morse::{validate_dmf, GradientField, GradientPair, MorseFunction};
use crate::simplex::{Simplex, VertexId};
use crate::value::{int, Rational};

/// An acyclic matching on a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    field: GradientField,
}

impl Matching {
    /// Validates that every pair is a codimension-one incidence of `k`, that
    /// no simplex is used twice, and that the matching is acyclic.
    pub fn new<I>(k: &SimplicialComplex, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = GradientPair>,
    {
        let pairs: Vec<GradientPair> = pairs.into_iter().collect();
        for p in &pairs {
            if !k.contains(&p.face) {
                return Err(Error::UnknownSimplex(p.face.clone()));
            }
            if !k.contains(&p.coface) {
                return Err(Error::UnknownSimplex(p.coface.clone()));
            }
        }
        let field = GradientField::from_pairs(pairs).ok_or_else(|| {
            Error::InvalidMatching("pairs overlap or are not codimension-one incidences".into())
        })?;
        if !field.is_acyclic(k) {
            return Err(Error::NotAcyclic);
        }
        Ok(Matching { field })
    }

    pub fn empty() -> Self {
        Matching {
            field: GradientField::default(),
        }
    }

    pub fn field(&self) -> &GradientField {
        &self.field
    }

    pub fn pairs(&self) -> impl Iterator<Item = GradientPair> + '_ {
        self.field.pairs()
    }

    pub fn len(&self) -> usize {
        self.field.len()
    }

    pub fn is_empty(&self) -> bool {
        self.field.is_empty()
    }
}

impl From<GradientField> for Matching {
    fn from(field: GradientField) -> Self {
        Matching { field }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unit {
    Pair(GradientPair),
    Single(Simplex),
}

impl Unit {
    pub fn simplices(&self) -> Vec<&Simplex> {
        match self {
            Unit::Pair(p) => vec![&p.face, &p.coface],
            Unit::Single(s) => vec![s],
        }
    }

    fn lowest(&self) -> &Simplex {
        match self {
            Unit::Pair(p) => &p.face,
            Unit::Single(s) => s,
        }
    }
}

/// A linear extension of the unit dependency order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOrder(pub Vec<Unit>);

impl BuildOrder {
    pub fn units(&self) -> &[Unit] {
        &self.0
    }
}

/// Units of `k` under `m` with their "must come before" edges.
pub(crate) struct UnitGraph {
    pub units: Vec<Unit>,
    pub unit_of: HashMap<Simplex, usize>,
    pub succ: Vec<BTreeSet<usize>>,
    pub pred_count: Vec<usize>,
}

impl UnitGraph {
    pub fn new(k: &SimplicialComplex, m: &Matching) -> Self {
        let mut units = Vec::new();
        let mut unit_of = HashMap::new();
        for s in k.simplices() {
            if unit_of.contains_key(s) {
                continue;
            }
            let unit = match m.field.coface_of(s) {
                Some(t) => Unit::Pair(GradientPair::new(s.clone(), t.clone())),
                None => match m.field.partner(s) {
                    Some(face) => Unit::Pair(GradientPair::new(face.clone(), s.clone())),
                    None => Unit::Single(s.clone()),
                },
            };
            for x in unit.simplices() {
                unit_of.insert(x.clone(), units.len());
            }
            units.push(unit);
        }
        let mut succ = vec![BTreeSet::new(); units.len()];
        for t in k.simplices() {
            for s in t.boundary() {
                let (us, ut) = (unit_of[&s], unit_of[t]);
                if us != ut {
                    succ[us].insert(ut);
                }
            }
        }
        let mut pred_count = vec![0; units.len()];
        for out in &succ {
            for &j in out {
                pred_count[j] += 1;
            }
        }
        UnitGraph {
            units,
            unit_of,
            succ,
            pred_count,
        }
    }

    /// Kahn's algorithm; `pick` chooses among the ready units.
    pub fn linear_extension(
        &self,
        mut pick: impl FnMut(&[usize]) -> usize,
    ) -> Result<Vec<usize>> {
        let mut pending = self.pred_count.clone();
        let mut ready: Vec<usize> = (0..self.units.len()).filter(|&i| pending[i] == 0).collect();
        let mut out = Vec::with_capacity(self.units.len());
        while !ready.is_empty() {
            let at = pick(&ready);
            let i = ready.swap_remove(at);
            out.push(i);
            for &j in &self.succ[i] {
                pending[j] -= 1;
                if pending[j] == 0 {
                    ready.push(j);
                }
            }
        }
        if out.len() != self.units.len() {
            return Err(Error::NotAcyclic);
        }
        Ok(out)
    }
}

/// Deterministic linear extension: always the ready unit whose lowest
/// simplex is smallest (dimension first). This places all vertices as early
/// as possible and so interleaves unrelated collapses.
pub fn auto_order(k: &SimplicialComplex, m: &Matching) -> Result<BuildOrder> {
    let g = UnitGraph::new(k, m);
    let order = g.linear_extension(|ready| {
        (0..ready.len())
            .min_by(|&a, &b| g.units[ready[a]].lowest().cmp(g.units[ready[b]].lowest()))
            .unwrap()
    })?;
    Ok(BuildOrder(order.into_iter().map(|i| g.units[i].clone()).collect()))
}

/// Uniformly chosen ready unit at every step.
pub fn random_order<R: Rng>(k: &SimplicialComplex, m: &Matching, rng: &mut R) -> Result<BuildOrder> {
    let g = UnitGraph::new(k, m);
    let order = g.linear_extension(|ready| rng.gen_range(0..ready.len()))?;
    Ok(BuildOrder(order.into_iter().map(|i| g.units[i].clone()).collect()))
}

fn check_order(g: &UnitGraph, order: &BuildOrder) -> Result<Vec<usize>> {
    if order.0.len() != g.units.len() {
        return Err(Error::InvalidOrder(format!(
            "expected {} units, got {}",
            g.units.len(),
            order.0.len()
        )));
    }
    let mut position = vec![usize::MAX; g.units.len()];
    let mut indices = Vec::with_capacity(order.0.len());
    for (pos, unit) in order.0.iter().enumerate() {
        let idx = g
            .unit_of
            .get(unit.lowest())
            .copied()
            .filter(|&i| &g.units[i] == unit)
            .ok_or_else(|| Error::InvalidOrder(format!("unit {unit:?} does not match the matching")))?;
        if position[idx] != usize::MAX {
            return Err(Error::InvalidOrder(format!("unit {unit:?} repeated")));
        }
        position[idx] = pos;
        indices.push(idx);
    }
    for (i, out) in g.succ.iter().enumerate() {
        for &j in out {
            if position[i] > position[j] {
                return Err(Error::InvalidOrder(format!(
                    "{:?} must come before {:?}",
                    g.units[i], g.units[j]
                )));
            }
        }
    }
    Ok(indices)
}

/// Assigns value `i` to the i-th unit of `order` (or of [`auto_order`]).
/// The result is a flat discrete Morse function whose gradient field is `m`.
pub fn dmf_from_matching(
    k: &SimplicialComplex,
    m: &Matching,
    order: Option<&BuildOrder>,
) -> Result<MorseFunction> {
    if !m.field.is_acyclic(k) {
        return Err(Error::NotAcyclic);
    }
    let g = UnitGraph::new(k, m);
    let sequence = match order {
        Some(o) => check_order(&g, o)?,
        None => g.linear_extension(|ready| {
            (0..ready.len())
                .min_by(|&a, &b| g.units[ready[a]].lowest().cmp(g.units[ready[b]].lowest()))
                .unwrap()
        })?,
    };
    let mut raw: BTreeMap<Simplex, Rational> = BTreeMap::new();
    for (value, &idx) in sequence.iter().enumerate() {
        for s in g.units[idx].simplices() {
            raw.insert(s.clone(), int(value as i64));
        }
    }
    let f = validate_dmf(k, raw)?;
    debug_assert_eq!(&f.gradient_field(), m.field());
    Ok(f)
}

/// Recovers the build order realised by a flat function: units sorted by value.
pub fn order_of(f: &MorseFunction) -> BuildOrder {
    let field = f.gradient_field();
    let mut units: Vec<(Rational, Unit)> = Vec::new();
    for (s, &x) in f.values() {
        if let Some(t) = field.coface_of(s) {
            units.push((x, Unit::Pair(GradientPair::new(s.clone(), t.clone()))));
        } else if !field.is_matched(s) {
            units.push((x, Unit::Single(s.clone())));
        }
    }
    units.sort();
    BuildOrder(units.into_iter().map(|(_, u)| u).collect())
}

/// One step of a top-down reduction of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Elementary strong collapse of `vertex` onto `apex`, emitted as one run
    /// of matched pairs.
    Strong { vertex: VertexId, apex: VertexId },
    /// Standard elementary collapse of a free pair.
    Free(GradientPair),
    /// A facet removed without partner.
    Critical(Simplex),
}

/// Units removed by a top-down reduction, in removal order.
#[derive(Clone, Debug, Default)]
pub(crate) struct Reduction {
    pub steps: Vec<Step>,
    pub units: Vec<Unit>,
}

impl Reduction {
    pub fn matching(&self) -> Matching {
        let pairs = self.units.iter().filter_map(|u| match u {
            Unit::Pair(p) => Some(p.clone()),
            Unit::Single(_) => None,
        });
        Matching::from(GradientField::from_pairs(pairs).expect("reduction units are disjoint"))
    }

    /// Reverse of removal order, so sublevels replay the reduction backwards.
    pub fn build_order(&self) -> BuildOrder {
        BuildOrder(self.units.iter().rev().cloned().collect())
    }

    fn strong(&mut self, current: &SimplicialComplex, v: VertexId, u: VertexId) -> SimplicialComplex {
        // Highest dimension first in removal order, so that ({v}, uv) ends up
        // with the lowest value of the run.
        let mut run: Vec<GradientPair> = current
            .simplices()
            .filter(|s| s.contains(v) && !s.contains(u))
            .map(|s| GradientPair::new(s.clone(), s.with_vertex(u)))
            .collect();
        run.sort_by(|a, b| b.face.cmp(&a.face));
        self.units.extend(run.into_iter().map(Unit::Pair));
        self.steps.push(Step::Strong { vertex: v, apex: u });
        current.delete_vertex(v)
    }

    fn free(&mut self, current: &SimplicialComplex, p: GradientPair) -> SimplicialComplex {
        let mut rest = current.simplex_set().clone();
        rest.remove(&p.face);
        rest.remove(&p.coface);
        self.units.push(Unit::Pair(p.clone()));
        self.steps.push(Step::Free(p));
        SimplicialComplex::from_closed(rest)
    }

    fn critical(&mut self, current: &SimplicialComplex, s: Simplex) -> SimplicialComplex {
        let mut rest = current.simplex_set().clone();
        rest.remove(&s);
        self.units.push(Unit::Single(s.clone()));
        self.steps.push(Step::Critical(s));
        SimplicialComplex::from_closed(rest)
    }
}

fn remove_pair(current: &SimplicialComplex, p: &GradientPair) -> SimplicialComplex {
    let mut rest = current.simplex_set().clone();
    rest.remove(&p.face);
    rest.remove(&p.coface);
    SimplicialComplex::from_closed(rest)
}

/// Greedy reduction: strong collapses while any vertex is dominated; when
/// stuck, a free pair whose removal creates a dominated vertex, else the
/// lowest-dimensional free pair, else the smallest facet as critical.
pub(crate) fn greedy_reduction<R: Rng>(
    k: &SimplicialComplex,
    rng: &mut R,
    mut current: SimplicialComplex,
    mut red: Reduction,
) -> Reduction {
    let _ = k;
    while !current.is_empty() {
        let dominated = current.dominated_vertices();
        if !dominated.is_empty() {
            let (v, dominators) = &dominated[rng.gen_range(0..dominated.len())];
            let u = dominators[rng.gen_range(0..dominators.len())];
            current = red.strong(&current, *v, u);
            continue;
        }
        let free: Vec<GradientPair> = free_pairs(&current)
            .into_iter()
            .map(|(s, t)| GradientPair::new(s, t))
            .collect();
        if !free.is_empty() {
            let lookahead: Vec<&GradientPair> = free
                .iter()
                .filter(|p| !remove_pair(&current, p).dominated_vertices().is_empty())
                .collect();
            let chosen = if lookahead.is_empty() {
                let dim = free.iter().map(|p| p.face.dim()).min().unwrap();
                let lowest: Vec<&GradientPair> =
                    free.iter().filter(|p| p.face.dim() == dim).collect();
                lowest[rng.gen_range(0..lowest.len())].clone()
            } else {
                lookahead[rng.gen_range(0..lookahead.len())].clone()
            };
            current = red.free(&current, chosen);
            continue;
        }
        let smallest = current.facets().iter().min().unwrap().clone();
        current = red.critical(&current, smallest);
    }
    red
}

/// Flat Morse function built by the greedy strong-collapse strategy.
pub fn greedy_strong_dmf(k: &SimplicialComplex, seed: u64) -> MorseFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let red = greedy_reduction(k, &mut rng, k.clone(), Reduction::default());
    dmf_from_matching(k, &red.matching(), Some(&red.build_order()))
        .expect("greedy reduction yields a valid build order")
}

/// The greedy reduction steps for `seed`, for inspection.
pub fn greedy_steps(k: &SimplicialComplex, seed: u64) -> Vec<Step> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    greedy_reduction(k, &mut rng, k.clone(), Reduction::default()).steps
}

/// Probability (as `1 / n`) of declaring a facet critical even though a free
/// pair is available.
const RANDOM_CRITICAL_ODDS: u32 = 8;

/// Randomised free-face collapsing, `steps` moves at most (all if `None`).
pub(crate) fn random_reduction<R: Rng>(
    k: &SimplicialComplex,
    rng: &mut R,
    steps: Option<usize>,
) -> (SimplicialComplex, Reduction) {
    let mut current = k.clone();
    let mut red = Reduction::default();
    let mut taken = 0;
    while !current.is_empty() && steps.is_none_or(|n| taken < n) {
        taken += 1;
        let free = free_pairs(&current);
        if !free.is_empty() && rng.gen_range(0..RANDOM_CRITICAL_ODDS) != 0 {
            let (s, t) = free.choose(rng).unwrap().clone();
            current = red.free(&current, GradientPair::new(s, t));
        } else {
            let facet = current.facets().choose(rng).unwrap().clone();
            current = red.critical(&current, facet);
        }
    }
    (current, red)
}

/// Random acyclic matching from randomised collapsing, realised with a random
/// linear extension. Deterministic per seed.
pub fn random_dmf(k: &SimplicialComplex, seed: u64) -> MorseFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (_, red) = random_reduction(k, &mut rng, None);
    let m = red.matching();
    let order = random_order(k, &m, &mut rng).expect("collapse matchings are acyclic");
    dmf_from_matching(k, &m, Some(&order)).expect("random order is a linear extension")
}

/// A random acyclic matching (from randomised collapsing).
pub fn random_matching(k: &SimplicialComplex, seed: u64) -> Matching {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_reduction(k, &mut rng, None).1.matching()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::strong::{scrit, StrongConfig};

    fn pair(a: &[u32], b: &[u32]) -> GradientPair {
        GradientPair::new(Simplex::from(a), Simplex::from(b))
    }

    #[test]
    fn empty_matching_is_injective_and_all_critical() {
        let k = fixtures::triangle();
        let f = dmf_from_matching(&k, &Matching::empty(), None).unwrap();
        assert_eq!(f.image().len(), 7);
        assert_eq!(f.forman_critical().len(), 7);
    }

    #[test]
    fn path_roundtrip_with_explicit_order() {
        let k = fixtures::path2();
        let m = Matching::new(&k, [pair(&[1], &[0, 1]), pair(&[2], &[1, 2])]).unwrap();
        let order = BuildOrder(vec![
            Unit::Single(Simplex::from([0])),
            Unit::Pair(pair(&[1], &[0, 1])),
            Unit::Pair(pair(&[2], &[1, 2])),
        ]);
        let f = dmf_from_matching(&k, &m, Some(&order)).unwrap();
        let vals: Vec<i64> = f.values().values().map(|r| r.to_integer()).collect();
        // simplex order: {0},{1},{2},{0,1},{1,2}
        assert_eq!(vals, vec![0, 1, 2, 1, 2]);
        assert_eq!(&f.gradient_field(), m.field());
        assert_eq!(order_of(&f), order);
    }

    #[test]
    fn cyclic_matching_rejected() {
        let k = fixtures::boundary_triangle();
        let err = Matching::new(
            &k,
            [pair(&[0], &[0, 1]), pair(&[1], &[1, 2]), pair(&[2], &[0, 2])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAcyclic));
        let field = GradientField::from_pairs([
            pair(&[0], &[0, 1]),
            pair(&[1], &[1, 2]),
            pair(&[2], &[0, 2]),
        ])
        .unwrap();
        assert!(matches!(
            dmf_from_matching(&k, &Matching::from(field), None),
            Err(Error::NotAcyclic)
        ));
    }

    #[test]
    fn invalid_orders_rejected() {
        let k = fixtures::path2();
        let m = Matching::new(&k, [pair(&[1], &[0, 1])]).unwrap();
        let backwards = BuildOrder(vec![
            Unit::Single(Simplex::from([1, 2])),
            Unit::Single(Simplex::from([0])),
            Unit::Pair(pair(&[1], &[0, 1])),
            Unit::Single(Simplex::from([2])),
        ]);
        assert!(matches!(
            dmf_from_matching(&k, &m, Some(&backwards)),
            Err(Error::InvalidOrder(_))
        ));
        let short = BuildOrder(vec![Unit::Single(Simplex::from([0]))]);
        assert!(matches!(
            dmf_from_matching(&k, &m, Some(&short)),
            Err(Error::InvalidOrder(_))
        ));
    }

    #[test]
    fn greedy_counts() {
        let cfg = StrongConfig::default();
        assert_eq!(scrit(&greedy_strong_dmf(&fixtures::triangle(), 0), cfg).count(), 1);
        assert_eq!(scrit(&greedy_strong_dmf(&fixtures::diamond(), 0), cfg).count(), 1);
        assert_eq!(scrit(&greedy_strong_dmf(&fixtures::disc_d(), 0), cfg).count(), 2);
        assert_eq!(
            scrit(&greedy_strong_dmf(&fixtures::sphere_d_prime(), 0), cfg).count(),
            3
        );
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        let k = fixtures::triangle();
        for seed in 0..100 {
            let f = random_dmf(&k, seed);
            assert_eq!(f, random_dmf(&k, seed));
        }
        let b = fixtures::boundary_triangle();
        for seed in 0..50 {
            assert!(random_dmf(&b, seed).forman_critical().len() >= 2);
        }
    }
}
