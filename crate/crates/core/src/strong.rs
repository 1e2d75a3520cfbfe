//! Strong critical objects of a discrete Morse function.
//!
//! For every vertex/edge pair `(v, uv)` of the gradient field we compute the
//! cutoff `m_v`, the top `l_v` of its strong interval and the strong collapse
//! set `S_v`. Gradient pairs covered by no strong collapse set are critical
//! pairs; together with Forman-critical simplices they are the critical
//! objects of the function.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::complex::{SimplexSet, SimplicialComplex};
use crate::error::{Error, Result};
use crate::morse::{GradientField, GradientPair, MorseFunction};
use crate::simplex::{Simplex, VertexId};
use crate::value::{midpoint, LevelValue, Rational};

/// How `l_v` is bounded by `m_v`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LvBound {
    /// `l_v < m_v`. Needed for sublevel strong collapses to exist.
    #[default]
    Strict,
    /// `l_v ≤ m_v`, the weaker bound.
    Inclusive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StrongConfig {
    pub lv_bound: LvBound,
    /// Only count gradient pairs whose coface lies in `St(v,u)` as members of
    /// `S_v`, instead of every pair in the value range.
    pub restrict_to_st: bool,
}

/// A vertex/edge pair `({v}, uv)` of the gradient field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexEdgePair {
    pub vertex: VertexId,
    pub other: VertexId,
    pub edge: Simplex,
}

impl VertexEdgePair {
    pub fn from_gradient(pair: &GradientPair) -> Option<Self> {
        if pair.face.dim() != 0 {
            return None;
        }
        let vertex = pair.face.vertices()[0];
        let other = *pair.coface.vertices().iter().find(|&&w| w != vertex)?;
        Some(VertexEdgePair {
            vertex,
            other,
            edge: pair.coface.clone(),
        })
    }

    pub fn gradient_pair(&self) -> GradientPair {
        GradientPair::new(Simplex::vertex(self.vertex), self.edge.clone())
    }
}

impl fmt::Display for VertexEdgePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.vertex, self.edge)
    }
}

/// Simplices containing `v` whose union with `u` is a simplex of `k`.
fn st_set(k: &SimplicialComplex, v: VertexId, u: VertexId) -> SimplexSet {
    k.simplices()
        .filter(|s| s.contains(v) && k.contains(&s.with_vertex(u)))
        .cloned()
        .collect()
}

/// `St(v,u) = st°(v) ∩ st(u)` for a vertex/edge pair `({v}, uv)` of `V_f`.
pub fn st_vu(f: &MorseFunction, v: VertexId, u: VertexId) -> Result<SimplexSet> {
    let vs = Simplex::vertex(v);
    let uv = vs.with_vertex(u);
    if u == v || !f.gradient_field().contains(&vs, &uv) {
        return Err(Error::NotGradientPair(vs, uv));
    }
    Ok(st_set(f.complex(), v, u))
}

/// Everything the strong analysis needs, computed once per function.
struct Analysis<'a> {
    f: &'a MorseFunction,
    field: GradientField,
    critical: BTreeSet<Simplex>,
    critical_values: BTreeSet<Rational>,
}

impl<'a> Analysis<'a> {
    fn new(f: &'a MorseFunction) -> Self {
        let critical = f.forman_critical();
        let critical_values = critical.iter().map(|s| f.value(s)).collect();
        Analysis {
            f,
            field: f.gradient_field(),
            critical,
            critical_values,
        }
    }

    fn owner(&self, v: VertexId, u: VertexId) -> Result<VertexEdgePair> {
        let vs = Simplex::vertex(v);
        let uv = vs.with_vertex(u);
        if u == v || !self.field.contains(&vs, &uv) {
            return Err(Error::NotGradientPair(vs, uv));
        }
        Ok(VertexEdgePair {
            vertex: v,
            other: u,
            edge: uv,
        })
    }

    fn m_v(&self, pair: &VertexEdgePair, st: &SimplexSet) -> LevelValue {
        let lo = self.f.value(&pair.edge);
        self.f
            .values()
            .iter()
            .filter(|(s, _)| !st.contains(*s) || self.critical.contains(*s))
            .map(|(_, &x)| x)
            .filter(|&x| x > lo)
            .min()
            .map_or(LevelValue::PosInf, LevelValue::Finite)
    }

    fn below_cutoff(x: Rational, m_v: LevelValue, bound: LvBound) -> bool {
        match bound {
            LvBound::Strict => LevelValue::Finite(x) < m_v,
            LvBound::Inclusive => LevelValue::Finite(x) <= m_v,
        }
    }

    fn l_v(
        &self,
        pair: &VertexEdgePair,
        st: &SimplexSet,
        m_v: LevelValue,
        bound: LvBound,
    ) -> Option<Rational> {
        let lo = self.f.value(&pair.edge);
        let regular_values: BTreeSet<Rational> = st
            .iter()
            .filter(|s| !self.critical.contains(*s))
            .map(|s| self.f.value(s))
            .filter(|x| !self.critical_values.contains(x))
            .filter(|&x| x >= lo && Self::below_cutoff(x, m_v, bound))
            .collect();
        regular_values
            .into_iter()
            .rev()
            .find(|&l| self.coned_over(pair, st, l))
    }

    /// Every maximal regular simplex of `K(l) ∩ St(v,u)` contains `u`.
    fn coned_over(&self, pair: &VertexEdgePair, st: &SimplexSet, l: Rational) -> bool {
        let sub = self.f.sublevel(l);
        let regular: Vec<&Simplex> = st
            .iter()
            .filter(|s| sub.contains(s) && !self.critical.contains(*s))
            .collect();
        regular
            .iter()
            .filter(|s| {
                !regular
                    .iter()
                    .any(|t| t.len() > s.len() && s.is_face_of(t))
            })
            .all(|s| s.contains(pair.other))
    }

    fn analyse_pair(&self, owner: VertexEdgePair, config: StrongConfig) -> PairAnalysis {
        let st = st_set(self.f.complex(), owner.vertex, owner.other);
        let m_v = self.m_v(&owner, &st);
        let l_v = self.l_v(&owner, &st, m_v, config.lv_bound);
        let interval = l_v.map(|hi| {
            let lo = self.f.value(&owner.edge);
            let members = self
                .field
                .pairs()
                .filter(|p| {
                    let x = self.f.value(&p.coface);
                    lo <= x && x <= hi && (!config.restrict_to_st || st.contains(&p.coface))
                })
                .collect();
            StrongInterval {
                owner: owner.clone(),
                lo,
                hi,
                members,
            }
        });
        PairAnalysis {
            owner,
            st,
            m_v,
            l_v,
            interval,
        }
    }

    fn pairs(&self, config: StrongConfig) -> Vec<PairAnalysis> {
        self.field
            .vertex_edge_pairs()
            .filter_map(|p| VertexEdgePair::from_gradient(&p))
            .map(|owner| self.analyse_pair(owner, config))
            .collect()
    }
}

/// Strong interval `[f(uv), l_v]` and its strong collapse set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongInterval {
    pub owner: VertexEdgePair,
    pub lo: Rational,
    pub hi: Rational,
    pub members: Vec<GradientPair>,
}

impl StrongInterval {
    pub fn contains_value(&self, x: Rational) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Intermediate values for one vertex/edge pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAnalysis {
    pub owner: VertexEdgePair,
    pub st: SimplexSet,
    pub m_v: LevelValue,
    /// `None` when no value qualifies; the strong collapse set is then empty.
    pub l_v: Option<Rational>,
    pub interval: Option<StrongInterval>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CriticalObject {
    Simplex { simplex: Simplex, value: Rational },
    Pair { pair: GradientPair, value: Rational },
}

impl CriticalObject {
    /// `f(σ)` for a critical simplex, `f(τ)` for a critical pair `(σ, τ)`.
    pub fn value(&self) -> Rational {
        match self {
            CriticalObject::Simplex { value, .. } | CriticalObject::Pair { value, .. } => *value,
        }
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, CriticalObject::Pair { .. })
    }
}

impl fmt::Display for CriticalObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriticalObject::Simplex { simplex, value } => write!(f, "{simplex} @ {value}"),
            CriticalObject::Pair { pair, value } => write!(f, "{pair} @ {value}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScritReport {
    /// Critical objects by increasing value.
    pub objects: Vec<CriticalObject>,
    pub intervals: Vec<StrongInterval>,
    pub pairs: Vec<PairAnalysis>,
    pub config: StrongConfig,
}

impl ScritReport {
    pub fn count(&self) -> usize {
        self.objects.len()
    }

    pub fn strong_critical_values(&self) -> BTreeSet<Rational> {
        self.objects.iter().map(CriticalObject::value).collect()
    }

    pub fn critical_pairs(&self) -> impl Iterator<Item = &GradientPair> + '_ {
        self.objects.iter().filter_map(|o| match o {
            CriticalObject::Pair { pair, .. } => Some(pair),
            _ => None,
        })
    }
}

pub fn compute_m_v(f: &MorseFunction, v: VertexId, u: VertexId) -> Result<LevelValue> {
    let a = Analysis::new(f);
    let owner = a.owner(v, u)?;
    let st = st_set(f.complex(), v, u);
    Ok(a.m_v(&owner, &st))
}

pub fn compute_l_v(
    f: &MorseFunction,
    v: VertexId,
    u: VertexId,
    config: StrongConfig,
) -> Result<Option<Rational>> {
    let a = Analysis::new(f);
    let owner = a.owner(v, u)?;
    let st = st_set(f.complex(), v, u);
    let m_v = a.m_v(&owner, &st);
    Ok(a.l_v(&owner, &st, m_v, config.lv_bound))
}

/// One strong interval per vertex/edge pair with a defined `l_v`.
pub fn strong_collapse_sets(f: &MorseFunction, config: StrongConfig) -> Vec<StrongInterval> {
    Analysis::new(f)
        .pairs(config)
        .into_iter()
        .filter_map(|p| p.interval)
        .collect()
}

/// Critical objects together with all intermediate data.
pub fn scrit(f: &MorseFunction, config: StrongConfig) -> ScritReport {
    let a = Analysis::new(f);
    let pairs = a.pairs(config);
    let intervals: Vec<StrongInterval> = pairs.iter().filter_map(|p| p.interval.clone()).collect();
    let regular: HashSet<&GradientPair> = intervals.iter().flat_map(|i| &i.members).collect();

    let mut objects: Vec<CriticalObject> = a
        .critical
        .iter()
        .map(|s| CriticalObject::Simplex {
            simplex: s.clone(),
            value: f.value(s),
        })
        .collect();
    objects.extend(
        a.field
            .pairs()
            .filter(|p| !regular.contains(p))
            .map(|p| {
                let value = f.value(&p.coface);
                CriticalObject::Pair { pair: p, value }
            }),
    );
    objects.sort_by(|x, y| x.value().cmp(&y.value()).then_with(|| x.cmp(y)));
    ScritReport {
        objects,
        intervals,
        pairs,
        config,
    }
}

/// Outcome of a sublevel strong collapse check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntervalCollapse {
    /// Vertices of `K(b)` deleted in order, each dominated when removed.
    Witness(Vec<VertexId>),
    /// No elimination order reaches `K(a)`.
    Counterexample,
}

pub const DEFAULT_INTERVAL_BUDGET: usize = 1_000_000;

/// Searches for a strong collapse `K(b) ↘↘ K(a)` when `[a, b]` holds no
/// strong critical value.
pub fn check_interval_collapse(
    f: &MorseFunction,
    report: &ScritReport,
    a: LevelValue,
    b: LevelValue,
    budget: usize,
) -> Result<IntervalCollapse> {
    if a > b {
        return Err(Error::InvalidInterval(a.to_string(), b.to_string()));
    }
    if let Some(c) = report
        .strong_critical_values()
        .into_iter()
        .find(|&c| a <= c && b >= c)
    {
        return Err(Error::IntervalNotRegular(c.to_string()));
    }
    let low = f.sublevel(a);
    let high = f.sublevel(b);
    if low == high {
        return Ok(IntervalCollapse::Witness(Vec::new()));
    }
    let keep: BTreeSet<VertexId> = low.vertices().collect();
    if high.induced(&keep) != low {
        return Ok(IntervalCollapse::Counterexample);
    }
    let removable: Vec<VertexId> = high.vertices().filter(|v| !keep.contains(v)).collect();
    if removable.len() > 64 {
        return Err(Error::budget("more than 64 vertices to eliminate"));
    }
    let mut search = Elimination {
        removable: &removable,
        failed: HashSet::new(),
        budget,
        order: Vec::new(),
    };
    let full = if removable.len() == 64 {
        u64::MAX
    } else {
        (1u64 << removable.len()) - 1
    };
    if search.run(&high, full)? {
        Ok(IntervalCollapse::Witness(search.order))
    } else {
        Ok(IntervalCollapse::Counterexample)
    }
}

struct Elimination<'a> {
    removable: &'a [VertexId],
    failed: HashSet<u64>,
    budget: usize,
    order: Vec<VertexId>,
}

impl Elimination<'_> {
    fn run(&mut self, current: &SimplicialComplex, remaining: u64) -> Result<bool> {
        if remaining == 0 {
            return Ok(true);
        }
        if self.failed.contains(&remaining) {
            return Ok(false);
        }
        if self.failed.len() >= self.budget {
            return Err(Error::budget(format!(
                "strong collapse search exceeded {} states",
                self.budget
            )));
        }
        for (i, &v) in self.removable.iter().enumerate() {
            if remaining & (1 << i) == 0 || !current.is_dominated(v) {
                continue;
            }
            self.order.push(v);
            if self.run(&current.delete_vertex(v), remaining & !(1 << i))? {
                return Ok(true);
            }
            self.order.pop();
        }
        self.failed.insert(remaining);
        Ok(false)
    }
}

/// Replays a witness: each vertex must be dominated when deleted and the
/// final complex must be `target`.
pub fn replay_witness(
    start: &SimplicialComplex,
    order: &[VertexId],
    target: &SimplicialComplex,
) -> bool {
    let mut current = start.clone();
    for &v in order {
        match current.strong_collapse_step(v) {
            Ok(next) => current = next,
            Err(_) => return false,
        }
    }
    &current == target
}

/// Maximal level intervals free of strong critical values: between
/// consecutive strong critical values, and above the largest one. Endpoints
/// sit strictly between adjacent values of `f`, so `K(a)` and `K(b)` are the
/// sublevels just after and just before the bounding critical values.
pub fn regular_gaps(f: &MorseFunction, report: &ScritReport) -> Vec<(LevelValue, LevelValue)> {
    let image: Vec<Rational> = f.image().into_iter().collect();
    let critical = report.strong_critical_values();
    let crit: Vec<Rational> = critical.iter().copied().collect();
    let mut gaps = Vec::new();
    for (i, &c) in crit.iter().enumerate() {
        let inside: Vec<Rational> = image
            .iter()
            .copied()
            .filter(|&x| x > c && crit.get(i + 1).is_none_or(|&next| x < next))
            .collect();
        let (Some(&first), Some(&last)) = (inside.first(), inside.last()) else {
            continue;
        };
        let Some(a) = midpoint(c, first) else { continue };
        let b = match crit.get(i + 1) {
            Some(&next) => match midpoint(last, next) {
                Some(b) => LevelValue::Finite(b),
                None => continue,
            },
            None => LevelValue::Finite(last),
        };
        gaps.push((LevelValue::Finite(a), b));
    }
    gaps
}

/// Comparison of `scat(K) + 1` against the number of critical objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsReport {
    pub scat: usize,
    pub scrit_count: usize,
}

impl LsReport {
    pub fn lhs(&self) -> usize {
        self.scat + 1
    }

    pub fn holds(&self) -> bool {
        self.lhs() <= self.scrit_count
    }

    pub fn equality(&self) -> bool {
        self.lhs() == self.scrit_count
    }
}

impl fmt::Display for LsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.holds(), self.equality()) {
            (true, true) => "OK (equality)",
            (true, false) => "OK (strict)",
            _ => "VIOLATED",
        };
        write!(
            f,
            "{}+1 ≤ {}: {}",
            self.scat, self.scrit_count, verdict
        )
    }
}

pub fn verify_ls(report: &ScritReport, scat: usize) -> LsReport {
    LsReport {
        scat,
        scrit_count: report.count(),
    }
}
