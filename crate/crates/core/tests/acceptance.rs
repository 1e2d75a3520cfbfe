//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strongmorse::builder::{
    auto_order, dmf_from_matching, greedy_strong_dmf, random_dmf, random_matching, random_order, Matching,
};
use strongmorse::collapse::{collapse_search, CollapseTarget};
use strongmorse::contiguity::{scat_exact, ContiguityBudget};
use strongmorse::iso::{isomorphic, DEFAULT_ISO_BUDGET};
use strongmorse::optimize::{optimize_scrit, OptimizerConfig};
use strongmorse::strong::{
    check_interval_collapse, compute_l_v, compute_m_v, regular_gaps, replay_witness, scrit, verify_ls,
    IntervalCollapse, StrongConfig,
};
use strongmorse::value::int;
use strongmorse::{fixtures, validate_dmf, LevelValue, MorseFunction, Simplex, SimplicialComplex, VertexId};

use common::{objects_plain, Plain, Q};

/// Wall-clock limits per criterion, in seconds.
const LIMITS: [(u32, u64); 8] = [(1, 1), (2, 1), (3, 60), (4, 300), (5, 300), (6, 300), (7, 300), (8, 60)];

/// Instance counts.
const THEOREM_3_10_INSTANCES: usize = 200;
const THEOREM_4_5_INSTANCES: usize = 500;
const D_PRIME_RANDOM_SEEDS: u64 = 200;
const CORE_ORDERS_PER_FIXTURE: usize = 100;
const ROUNDTRIP_MATCHINGS: usize = 200;
/// Simplex count cap for the sublevel strong-collapse suite.
const MAX_SIMPLICES_FOR_INTERVALS: usize = 25;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn function(k: &SimplicialComplex, vals: &[(&[u32], i64)]) -> MorseFunction {
    let raw = vals.iter().map(|(s, x)| (Simplex::from(*s), int(*x))).collect();
    validate_dmf(k, raw).expect("listed function is valid")
}

fn v(i: u32) -> VertexId {
    VertexId(i)
}

fn scat_of(k: &SimplicialComplex) -> usize {
    scat_exact(k, ContiguityBudget::default()).expect("fixtures are within budget").scat
}

fn criterion_1() -> Outcome {
    const VALUES: &[(&[u32], i64)] = &[(&[0], 0), (&[1], 2), (&[0, 1], 2), (&[2], 3), (&[1, 2], 3)];
    let k = fixtures::path2();
    let f = function(&k, VALUES);
    let cfg = StrongConfig::default();
    let r = scrit(&f, cfg);

    // independent recomputation of every intermediate value
    let plain = Plain::from_pairs(VALUES);
    ensure(plain.m_v(1, 0) == Some(Q::from_integer(3)), "reference m_1 != 3")?;
    ensure(plain.m_v(2, 1).is_none(), "reference m_2 != +inf")?;
    ensure(plain.l_v(1, 0, true) == Some(Q::from_integer(2)), "reference l_1 != 2")?;
    ensure(plain.l_v(2, 1, true) == Some(Q::from_integer(3)), "reference l_2 != 3")?;
    ensure(compute_m_v(&f, v(1), v(0)).unwrap() == LevelValue::from(3), "m_1")?;
    ensure(compute_m_v(&f, v(2), v(1)).unwrap() == LevelValue::PosInf, "m_2")?;
    ensure(compute_l_v(&f, v(1), v(0), cfg).unwrap() == Some(int(2)), "l_1")?;
    ensure(compute_l_v(&f, v(2), v(1), cfg).unwrap() == Some(int(3)), "l_2")?;
    ensure(objects_plain(&r) == plain.scrit(true), "objects differ from reference")?;

    ensure(r.count() == 1, format!("expected one object, got {}", r.count()))?;
    ensure(
        r.objects[0].to_string() == "{0} @ 0",
        format!("expected vertex 0, got {}", r.objects[0]),
    )?;
    let spans: Vec<(Q, Q, usize)> = r.intervals.iter().map(|i| (i.lo, i.hi, i.members.len())).collect();
    ensure(
        spans == vec![(int(2), int(2), 1), (int(3), int(3), 1)],
        format!("intervals {spans:?}"),
    )?;
    let ls = verify_ls(&r, scat_of(&k));
    ensure(ls.to_string() == "0+1 ≤ 1: OK (equality)", ls.to_string())?;
    Ok(format!("scrit = {{0}}, intervals [2,2] [3,3], {ls}"))
}

fn criterion_2() -> Outcome {
    const VALUES: &[(&[u32], i64)] = &[(&[0], 0), (&[1], 1), (&[0, 1], 1), (&[2], 2), (&[0, 2], 2), (&[1, 2], 3)];
    let k = fixtures::boundary_triangle();
    let scat = scat_of(&k);
    ensure(scat == 1, format!("scat = {scat}"))?;
    let f = function(&k, VALUES);
    let r = scrit(&f, StrongConfig::default());
    ensure(objects_plain(&r) == Plain::from_pairs(VALUES).scrit(true), "objects differ from reference")?;
    let shown: Vec<String> = r.objects.iter().map(ToString::to_string).collect();
    ensure(shown == ["{0} @ 0", "{1,2} @ 3"], format!("objects {shown:?}"))?;
    let ls = verify_ls(&r, scat);
    ensure(ls.to_string() == "1+1 ≤ 2: OK (equality)", ls.to_string())?;
    Ok(format!("scat = 1, #scrit = 2, {ls}"))
}

fn criterion_3() -> Outcome {
    let d = fixtures::disc_d();
    ensure(d.dominated_vertices().is_empty(), "D has a dominated vertex")?;
    let witness = collapse_search(&d, &CollapseTarget::Point, 1_000_000).map_err(|e| e.to_string())?;
    ensure(witness.is_some(), "D is not collapsible")?;
    let scat = scat_of(&d);
    ensure(scat == 1, format!("scat(D) = {scat}"))?;
    let greedy = scrit(&greedy_strong_dmf(&d, 0), StrongConfig::default()).count();
    ensure(greedy == 2, format!("greedy #scrit = {greedy}"))?;
    let best = optimize_scrit(&d, &OptimizerConfig::default()).unwrap().best_count;
    ensure(best == 2, format!("optimizer best = {best}"))?;
    Ok(format!("collapsible, no dominated vertex, scat = 1, greedy #scrit = {greedy}"))
}

fn criterion_4() -> Outcome {
    let d = fixtures::disc_d();
    let dp = d.clique_complex();
    let added: Vec<&Simplex> = dp.facets().iter().filter(|f| !d.contains(f)).collect();
    ensure(added.len() == 1 && dp.len() == d.len() + 1, format!("added facets {added:?}"))?;
    let scat = scat_of(&dp);
    ensure(scat == 1, format!("scat(D') = {scat}"))?;
    let best = optimize_scrit(&dp, &OptimizerConfig::default()).unwrap().best_count;
    ensure(best == 3, format!("optimizer best = {best}"))?;
    let mut fewest = usize::MAX;
    for seed in 0..D_PRIME_RANDOM_SEEDS {
        let n = scrit(&random_dmf(&dp, seed), StrongConfig::default()).count();
        ensure(n >= 3, format!("seed {seed}: #scrit = {n}"))?;
        fewest = fewest.min(n);
    }
    Ok(format!(
        "one facet {} added, scat = 1, best = 3, min over {D_PRIME_RANDOM_SEEDS} random = {fewest}",
        added[0]
    ))
}

/// Random functions: random matchings realised in random orders, plus
/// greedy matchings realised in random orders.
fn random_function(k: &SimplicialComplex, seed: u64) -> MorseFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    match seed % 3 {
        0 => random_dmf(k, seed),
        1 => {
            let m = random_matching(k, seed);
            dmf_from_matching(k, &m, Some(&random_order(k, &m, &mut rng).unwrap())).unwrap()
        }
        _ => {
            let m = Matching::from(greedy_strong_dmf(k, seed).gradient_field());
            dmf_from_matching(k, &m, Some(&random_order(k, &m, &mut rng).unwrap())).unwrap()
        }
    }
}

fn criterion_5() -> Outcome {
    let pool: Vec<(&str, SimplicialComplex)> = fixtures::all()
        .into_iter()
        .filter(|(_, k)| k.len() <= MAX_SIMPLICES_FOR_INTERVALS)
        .collect();
    let mut gaps = 0;
    for i in 0..THEOREM_3_10_INSTANCES {
        let (name, k) = &pool[i % pool.len()];
        let f = random_function(k, i as u64);
        let r = scrit(&f, StrongConfig::default());
        for (a, b) in regular_gaps(&f, &r) {
            gaps += 1;
            match check_interval_collapse(&f, &r, a, b, 1_000_000).map_err(|e| e.to_string())? {
                IntervalCollapse::Witness(order) => ensure(
                    replay_witness(&f.sublevel(b), &order, &f.sublevel(a)),
                    format!("{name} #{i}: witness on [{a}, {b}] does not replay"),
                )?,
                IntervalCollapse::Counterexample => {
                    return Err(format!("{name} #{i}: no strong collapse on [{a}, {b}]"))
                }
            }
        }
    }
    Ok(format!("{THEOREM_3_10_INSTANCES} instances, {gaps} regular intervals, 0 failures"))
}

fn criterion_6() -> Outcome {
    let all = fixtures::all();
    let scats: Vec<usize> = all.iter().map(|(_, k)| scat_of(k)).collect();
    let mut equalities = 0;
    for i in 0..THEOREM_4_5_INSTANCES {
        let (name, k) = &all[i % all.len()];
        let f = random_function(k, 10_000 + i as u64);
        let ls = verify_ls(&scrit(&f, StrongConfig::default()), scats[i % all.len()]);
        ensure(ls.holds(), format!("{name} #{i}: {ls}"))?;
        equalities += ls.equality() as usize;
    }
    Ok(format!("{THEOREM_4_5_INSTANCES} functions, 0 violations, {equalities} equalities"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, k) in fixtures::all() {
        let core = k.core();
        for _ in 0..CORE_ORDERS_PER_FIXTURE {
            let other = k.core_by(|c| *c.choose(&mut rng).unwrap());
            let iso = isomorphic(&core, &other, DEFAULT_ISO_BUDGET).map_err(|e| e.to_string())?;
            ensure(iso.is_some(), format!("{name}: cores differ"))?;
        }
        let (a, b) = (scat_of(&k), scat_of(&core));
        ensure(a == b, format!("{name}: scat {a} vs core {b}"))?;
    }
    let all = fixtures::all();
    for i in 0..ROUNDTRIP_MATCHINGS {
        let (name, k) = &all[i % all.len()];
        let m = random_matching(k, 20_000 + i as u64);
        let f = dmf_from_matching(k, &m, None).map_err(|e| e.to_string())?;
        ensure(&f.gradient_field() == m.field(), format!("{name} #{i}: roundtrip"))?;
        let g = random_function(k, 30_000 + i as u64);
        let field = g.gradient_field();
        let unmatched: BTreeSet<Simplex> = k.simplices().filter(|s| !field.is_matched(s)).cloned().collect();
        ensure(g.forman_critical() == unmatched, format!("{name} #{i}: critical != unmatched"))?;
        ensure(
            f.forman_critical() == k.simplices().filter(|s| !m.field().is_matched(s)).cloned().collect(),
            format!("{name} #{i}: critical != unmatched"),
        )?;
    }
    Ok(format!(
        "{} fixtures x {CORE_ORDERS_PER_FIXTURE} core orders, {ROUNDTRIP_MATCHINGS} matching roundtrips",
        all.len()
    ))
}

fn criterion_8() -> Outcome {
    let d = fixtures::disc_d();
    let greedy = greedy_strong_dmf(&d, 0);
    let m = Matching::from(greedy.gradient_field());
    // all vertices first, so strong collapse runs are broken up
    let interleaved = dmf_from_matching(&d, &m, Some(&auto_order(&d, &m).unwrap())).unwrap();
    ensure(greedy.gradient_field() == interleaved.gradient_field(), "gradient fields differ")?;
    let (a, b) = (
        scrit(&greedy, StrongConfig::default()).count(),
        scrit(&interleaved, StrongConfig::default()).count(),
    );
    ensure(a < b, format!("greedy {a} vs interleaved {b}"))?;
    Ok(format!("same gradient field ({} pairs), #scrit {a} vs {b}", m.len()))
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 8] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
    ];
    let limits: BTreeMap<u32, Duration> =
        LIMITS.iter().map(|&(c, s)| (c, Duration::from_secs(s))).collect();
    let mut failed = 0;
    for (i, run) in criteria.iter().enumerate() {
        let n = i as u32 + 1;
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let limit = limits[&n];
        let outcome = match outcome {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({elapsed:.2?}) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({elapsed:.2?}) {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
