//! Search for Morse functions with few strong critical objects.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builder::{
    dmf_from_matching, greedy_reduction, order_of, random_reduction, BuildOrder, Reduction, Unit,
};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::morse::MorseFunction;
use crate::strong::{scrit, StrongConfig};
use crate::value::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Greedy restarts only; keeps strict improvements.
    Greedy,
    /// Annealing over orderings and restarts.
    Anneal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OptimizerConfig {
    /// Number of moves, at least 1.
    pub iterations: usize,
    pub seed: u64,
    pub strategy: Strategy,
    /// Starting temperature.
    pub temperature: Rational,
    /// Amount subtracted from the temperature after every move, down to 0.
    pub cooling: Rational,
    pub strong: StrongConfig,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            iterations: 200,
            seed: 0,
            strategy: Strategy::Anneal,
            temperature: int(2),
            cooling: Rational::new(1, 100),
            strong: StrongConfig::default(),
        }
    }
}

impl OptimizerConfig {
    fn check(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::Format("optimizer iterations must be at least 1".into()));
        }
        if self.temperature < int(0) || self.cooling < int(0) {
            return Err(Error::Format(
                "temperature and cooling step must be nonnegative".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct OptimizeResult {
    pub best: MorseFunction,
    pub best_count: usize,
    /// Initial count followed by the best count after each move.
    pub history: Vec<usize>,
}

fn count(f: &MorseFunction, cfg: &OptimizerConfig) -> usize {
    scrit(f, cfg.strong).count()
}

fn dependent(a: &Unit, b: &Unit) -> bool {
    a.simplices().iter().any(|s| {
        b.simplices()
            .iter()
            .any(|t| (s.dim() + 1 == t.dim() && s.is_face_of(t)) || (t.dim() + 1 == s.dim() && t.is_face_of(s)))
    })
}

fn swap_move<R: Rng>(k: &SimplicialComplex, f: &MorseFunction, rng: &mut R) -> Option<MorseFunction> {
    let BuildOrder(mut units) = order_of(f);
    if units.len() < 2 {
        return None;
    }
    let i = rng.gen_range(0..units.len() - 1);
    if dependent(&units[i], &units[i + 1]) {
        return None;
    }
    units.swap(i, i + 1);
    let m = f.gradient_field().into();
    dmf_from_matching(k, &m, Some(&BuildOrder(units))).ok()
}

fn realise(k: &SimplicialComplex, red: &Reduction) -> MorseFunction {
    dmf_from_matching(k, &red.matching(), Some(&red.build_order()))
        .expect("reductions yield valid build orders")
}

fn greedy_move<R: Rng>(k: &SimplicialComplex, rng: &mut R) -> MorseFunction {
    let mut sub = ChaCha8Rng::seed_from_u64(rng.gen());
    realise(k, &greedy_reduction(k, &mut sub, k.clone(), Reduction::default()))
}

/// A few random collapses, then greedy from there.
fn restart_move<R: Rng>(k: &SimplicialComplex, rng: &mut R) -> MorseFunction {
    let mut sub = ChaCha8Rng::seed_from_u64(rng.gen());
    let prefix = sub.gen_range(1..=k.len().max(1));
    let (rest, red) = random_reduction(k, &mut sub, Some(prefix));
    realise(k, &greedy_reduction(k, &mut sub, rest, red))
}

/// Accepts a worsening by `delta` with probability `T / (T + delta)`.
fn accept<R: Rng>(delta: usize, temperature: Rational, rng: &mut R) -> bool {
    if delta == 0 {
        return true;
    }
    let (p, q) = (*temperature.numer(), *temperature.denom());
    if p <= 0 {
        return false;
    }
    let total = p.saturating_add((delta as i64).saturating_mul(q));
    rng.gen_range(0..total) < p
}

/// Starts from the greedy function for `config.seed` and improves it.
pub fn optimize_scrit(k: &SimplicialComplex, config: &OptimizerConfig) -> Result<OptimizeResult> {
    config.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let start = crate::builder::greedy_strong_dmf(k, config.seed);
    let start_count = count(&start, config);
    let mut current = (start.clone(), start_count);
    let mut best = (start, start_count);
    let mut history = vec![start_count];
    let mut temperature = config.temperature;
    for _ in 0..config.iterations {
        let candidate = match config.strategy {
            Strategy::Greedy => Some(greedy_move(k, &mut rng)),
            Strategy::Anneal => match rng.gen_range(0..3) {
                0 => swap_move(k, &current.0, &mut rng),
                1 => Some(greedy_move(k, &mut rng)),
                _ => Some(restart_move(k, &mut rng)),
            },
        };
        if let Some(g) = candidate {
            let c = count(&g, config);
            let take = match config.strategy {
                Strategy::Greedy => c < current.1,
                Strategy::Anneal => c <= current.1 || accept(c - current.1, temperature, &mut rng),
            };
            if c < best.1 {
                best = (g.clone(), c);
            }
            if take {
                current = (g, c);
            }
        }
        temperature = (temperature - config.cooling).max(int(0));
        history.push(best.1);
    }
    Ok(OptimizeResult {
        best: best.0,
        best_count: best.1,
        history,
    })
}

/// Runs `jobs` independent trials with seeds `seed, seed+1, …` in parallel
/// and keeps the best; ties go to the lowest trial index.
pub fn optimize_parallel(
    k: &SimplicialComplex,
    config: &OptimizerConfig,
    jobs: usize,
) -> Result<OptimizeResult> {
    let jobs = jobs.max(1);
    let results: Vec<Result<OptimizeResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let cfg = OptimizerConfig {
                    seed: config.seed.wrapping_add(j as u64),
                    ..*config
                };
                scope.spawn(move || optimize_scrit(k, &cfg))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("optimizer trial panicked"))
            .collect()
    });
    let mut best: Option<OptimizeResult> = None;
    for r in results {
        let r = r?;
        if best.as_ref().is_none_or(|b| r.best_count < b.best_count) {
            best = Some(r);
        }
    }
    Ok(best.expect("at least one trial"))
}
