//! Argument definitions and command dispatch.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use strongmorse::builder::greedy_strong_dmf;
use strongmorse::collapse::{collapse_search, CollapseTarget};
use strongmorse::contiguity::{scat_bounds, scat_exact, ContiguityBudget};
use strongmorse::dot::hasse_dot;
use strongmorse::io::{parse_complex_str, parse_morse_str, serialize_complex, serialize_morse, value_json, VertexNames};
use strongmorse::optimize::{optimize_parallel, OptimizerConfig, Strategy};
use strongmorse::strong::{
    check_interval_collapse, scrit, verify_ls, CriticalObject, IntervalCollapse, LvBound, ScritReport,
    StrongConfig,
};
use strongmorse::{GradientPair, LevelValue, MorseFunction, Rational, Simplex, SimplicialComplex, VertexId};

use crate::report::{CmdResult, Failure, Input, Report};

#[derive(Parser, Debug)]
#[command(name = "strongmorse", version, about = "Strong discrete Morse theory on simplicial complexes")]
pub struct Cli {
    /// Search budget shared by all exhaustive searches.
    #[arg(long, global = true, env = "STRONGMORSE_BUDGET", default_value_t = 10_000_000)]
    pub budget: usize,
    /// Seed for randomised commands.
    #[arg(long, global = true, env = "STRONGMORSE_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, env = "STRONGMORSE_FORMAT", default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add wall-clock timing to JSON reports.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct ComplexArg {
    /// Complex file: one facet per line.
    #[arg(short = 'c', long = "complex")]
    pub complex: PathBuf,
}

#[derive(Args, Debug)]
pub struct FunctionArgs {
    #[command(flatten)]
    pub complex: ComplexArg,
    /// Morse file: JSON object of simplex keys to values.
    #[arg(short = 'f', long = "function")]
    pub function: PathBuf,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct StrongArgs {
    /// Whether the top of a strong interval may reach the cutoff value.
    #[arg(long, value_enum, default_value_t = LvArg::Strict)]
    pub lv_bound: LvArg,
    /// Only count gradient pairs inside St(v,u) as members of a strong collapse set.
    #[arg(long)]
    pub restrict_strong_set_to_st: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LvArg {
    Strict,
    Inclusive,
}

impl StrongArgs {
    fn config(self) -> StrongConfig {
        StrongConfig {
            lv_bound: match self.lv_bound {
                LvArg::Strict => LvBound::Strict,
                LvArg::Inclusive => LvBound::Inclusive,
            },
            restrict_to_st: self.restrict_strong_set_to_st,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScatMethod {
    Exact,
    Bounds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Greedy,
    Anneal,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the discrete Morse conditions.
    Validate(FunctionArgs),
    /// List the gradient pairs.
    Gradient(FunctionArgs),
    /// List the critical simplices.
    Critical(FunctionArgs),
    /// Strong critical objects, strong intervals and intermediate values.
    Scrit {
        #[command(flatten)]
        input: FunctionArgs,
        #[command(flatten)]
        strong: StrongArgs,
    },
    /// Print the level subcomplex at a value.
    Sublevel {
        #[command(flatten)]
        input: FunctionArgs,
        /// Level: an integer, `p/q`, `+inf` or `-inf`.
        #[arg(long, value_parser = parse_level, allow_hyphen_values = true)]
        level: LevelValue,
    },
    /// Collapsibility of a complex, or a strong collapse between two sublevels.
    CollapseCheck {
        #[command(flatten)]
        complex: ComplexArg,
        /// With `--from` and `--to`: check a sublevel strong collapse.
        #[arg(short = 'f', long = "function", requires_all = ["from", "to"])]
        function: Option<PathBuf>,
        /// Lower level.
        #[arg(long, value_parser = parse_level, allow_hyphen_values = true, requires = "function")]
        from: Option<LevelValue>,
        /// Upper level.
        #[arg(long, value_parser = parse_level, allow_hyphen_values = true, requires = "function")]
        to: Option<LevelValue>,
        #[command(flatten)]
        strong: StrongArgs,
    },
    /// Core of the complex by iterated strong collapses.
    Core(ComplexArg),
    /// Simplicial Lusternik–Schnirelmann category.
    Scat {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long, value_enum, default_value_t = ScatMethod::Exact)]
        method: ScatMethod,
    },
    /// Check scat(K) + 1 ≤ #scrit(f).
    VerifyLs {
        #[command(flatten)]
        input: FunctionArgs,
        /// `exact`, `bounds` (uses the lower bound) or a known integer.
        #[arg(long, default_value = "exact")]
        scat: String,
        #[command(flatten)]
        strong: StrongArgs,
    },
    /// Morse function from the greedy strong-collapse strategy.
    BuildGreedy {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        strong: StrongArgs,
    },
    /// Search for a Morse function with few strong critical objects.
    Optimize {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long, default_value_t = 200)]
        iterations: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Anneal)]
        strategy: StrategyArg,
        /// Starting temperature (`p/q`).
        #[arg(long, value_parser = parse_rational, default_value = "2")]
        temperature: Rational,
        /// Temperature decrease per move (`p/q`).
        #[arg(long, value_parser = parse_rational, default_value = "1/100")]
        cooling: Rational,
        /// Parallel trials with consecutive seeds.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        strong: StrongArgs,
    },
    /// Graphviz Hasse diagram, with the gradient and critical objects when a
    /// function is given.
    ExportDot {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(short = 'f', long = "function")]
        function: Option<PathBuf>,
        #[command(flatten)]
        strong: StrongArgs,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let bad = || format!("not an exact rational: {s:?}");
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: i64 = p.parse().map_err(|_| bad())?;
    let q: i64 = q.parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

fn parse_level(s: &str) -> Result<LevelValue, String> {
    match s {
        "+inf" | "inf" => Ok(LevelValue::PosInf),
        "-inf" => Ok(LevelValue::NegInf),
        _ => parse_rational(s).map(LevelValue::Finite),
    }
}

/// A parsed complex together with its source text.
struct Loaded {
    k: SimplicialComplex,
    names: VertexNames,
    inputs: Vec<Input>,
}

fn load_complex(path: &Path) -> CmdResult<Loaded> {
    let input = Input::read("complex", path)?;
    let (k, names) = parse_complex_str(&input.text)
        .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    Ok(Loaded {
        k,
        names,
        inputs: vec![input],
    })
}

fn load_function(args: &FunctionArgs) -> CmdResult<(Loaded, MorseFunction)> {
    load_with(&args.complex.complex, &args.function)
}

fn load_with(complex: &Path, function: &Path) -> CmdResult<(Loaded, MorseFunction)> {
    let mut loaded = load_complex(complex)?;
    let input = Input::read("function", function)?;
    let f = parse_morse_str(&input.text, &loaded.k, &loaded.names).map_err(|e| {
        let mut failure = Failure::from_error(&e, Some(&loaded.names));
        if let Failure::Domain(msg) = &mut failure {
            *msg = format!("{}: {msg}", function.display());
        }
        failure
    })?;
    loaded.inputs.push(input);
    Ok((loaded, f))
}

fn key(names: &VertexNames, s: &Simplex) -> String {
    format!("{{{}}}", names.key(s))
}

fn pair_text(names: &VertexNames, p: &GradientPair) -> String {
    format!("({}, {})", key(names, &p.face), key(names, &p.coface))
}

fn pair_json(names: &VertexNames, p: &GradientPair) -> Value {
    json!([names.key(&p.face), names.key(&p.coface)])
}

fn level_json(x: LevelValue) -> Value {
    match x {
        LevelValue::Finite(r) => value_json(r),
        other => Value::from(other.to_string()),
    }
}

fn object_json(names: &VertexNames, o: &CriticalObject) -> Value {
    match o {
        CriticalObject::Simplex { simplex, value } => json!({
            "kind": "simplex",
            "simplex": names.key(simplex),
            "value": value_json(*value),
        }),
        CriticalObject::Pair { pair, value } => json!({
            "kind": "pair",
            "pair": pair_json(names, pair),
            "value": value_json(*value),
        }),
    }
}

fn object_text(names: &VertexNames, o: &CriticalObject) -> String {
    match o {
        CriticalObject::Simplex { simplex, value } => {
            format!("critical simplex {} @ {value}", key(names, simplex))
        }
        CriticalObject::Pair { pair, value } => {
            format!("critical pair {} @ {value}", pair_text(names, pair))
        }
    }
}

fn scrit_outputs(names: &VertexNames, r: &ScritReport) -> (Value, Vec<String>) {
    let objects: Vec<Value> = r.objects.iter().map(|o| object_json(names, o)).collect();
    let intervals: Vec<Value> = r
        .intervals
        .iter()
        .map(|i| {
            json!({
                "owner": pair_json(names, &i.owner.gradient_pair()),
                "lo": value_json(i.lo),
                "hi": value_json(i.hi),
                "members": i.members.iter().map(|m| pair_json(names, m)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let pairs: Vec<Value> = r
        .pairs
        .iter()
        .map(|p| {
            json!({
                "pair": pair_json(names, &p.owner.gradient_pair()),
                "m_v": level_json(p.m_v),
                "l_v": p.l_v.map_or(Value::Null, value_json),
            })
        })
        .collect();
    let mut details: Vec<String> = r.objects.iter().map(|o| object_text(names, o)).collect();
    for p in &r.pairs {
        let l = p.l_v.map_or("undefined".to_string(), |l| l.to_string());
        details.push(format!(
            "pair {}: m = {}, l = {}",
            pair_text(names, &p.owner.gradient_pair()),
            p.m_v,
            l
        ));
    }
    for i in &r.intervals {
        details.push(format!(
            "interval [{}, {}] of {}: {} member(s)",
            i.lo,
            i.hi,
            pair_text(names, &i.owner.gradient_pair()),
            i.members.len()
        ));
    }
    (
        json!({
            "count": r.count(),
            "objects": objects,
            "intervals": intervals,
            "pairs": pairs,
            "strong_critical_values": r.strong_critical_values().into_iter().map(value_json).collect::<Vec<_>>(),
        }),
        details,
    )
}

fn strong_params(report: &mut Report, cfg: StrongConfig) {
    report.param(
        "lv_bound",
        match cfg.lv_bound {
            LvBound::Strict => "strict",
            LvBound::Inclusive => "inclusive",
        },
    );
    report.param("restrict_strong_set_to_st", cfg.restrict_to_st);
}

fn budget(cli: &Cli) -> ContiguityBudget {
    ContiguityBudget {
        states: cli.budget,
        partitions: cli.budget,
        isomorphism: cli.budget,
    }
}

fn facets_json(k: &SimplicialComplex, names: &VertexNames) -> Value {
    Value::from(k.facets().iter().map(|f| names.key(f)).collect::<Vec<_>>())
}

fn function_json(f: &MorseFunction, names: &VertexNames) -> Value {
    Value::Object(
        f.values()
            .iter()
            .map(|(s, &x)| (names.key(s), value_json(x)))
            .collect(),
    )
}

fn execute(cli: &Cli) -> CmdResult<Report> {
    match &cli.command {
        Command::Validate(args) => {
            let (l, f) = load_function(args)?;
            let mut r = Report::new("validate", l.inputs);
            let pairs = f.gradient_field().len();
            let critical = f.forman_critical().len();
            r.outputs = json!({ "valid": true, "simplices": l.k.len(), "gradient_pairs": pairs, "critical_simplices": critical });
            r.summary = format!(
                "valid discrete Morse function: {} simplices, {pairs} gradient pair(s), {critical} critical simplex(es)",
                l.k.len()
            );
            Ok(r)
        }
        Command::Gradient(args) => {
            let (l, f) = load_function(args)?;
            let field = f.gradient_field();
            let mut r = Report::new("gradient", l.inputs);
            r.outputs = json!({ "pairs": field.pairs().map(|p| pair_json(&l.names, &p)).collect::<Vec<_>>() });
            r.summary = format!("{} gradient pair(s)", field.len());
            r.details = field.pairs().map(|p| pair_text(&l.names, &p)).collect();
            Ok(r)
        }
        Command::Critical(args) => {
            let (l, f) = load_function(args)?;
            let crit = f.forman_critical();
            let mut r = Report::new("critical", l.inputs);
            r.outputs = json!({
                "critical": crit.iter().map(|s| json!({ "simplex": l.names.key(s), "value": value_json(f.value(s)) })).collect::<Vec<_>>()
            });
            r.summary = format!("{} critical simplex(es)", crit.len());
            r.details = crit
                .iter()
                .map(|s| format!("{} @ {}", key(&l.names, s), f.value(s)))
                .collect();
            Ok(r)
        }
        Command::Scrit { input, strong } => {
            let (l, f) = load_function(input)?;
            let cfg = strong.config();
            let rep = scrit(&f, cfg);
            let mut r = Report::new("scrit", l.inputs);
            strong_params(&mut r, cfg);
            let (outputs, details) = scrit_outputs(&l.names, &rep);
            r.outputs = outputs;
            r.details = details;
            r.summary = format!("#scrit = {}", rep.count());
            Ok(r)
        }
        Command::Sublevel { input, level } => {
            let (l, f) = load_function(input)?;
            let sub = f.sublevel(*level);
            let mut r = Report::new("sublevel", l.inputs);
            r.param("level", level_json(*level));
            r.outputs = json!({ "facets": facets_json(&sub, &l.names), "simplices": sub.len() });
            r.summary = format!("K({level}) has {} simplices", sub.len());
            r.payload = Some(serialize_complex(&sub, &l.names));
            Ok(r)
        }
        Command::CollapseCheck {
            complex,
            function,
            from,
            to,
            strong,
        } => match (function, from, to) {
            (Some(fpath), Some(a), Some(b)) => {
                let (l, f) = load_with(&complex.complex, fpath)?;
                let cfg = strong.config();
                let rep = scrit(&f, cfg);
                let outcome = check_interval_collapse(&f, &rep, *a, *b, cli.budget).map_err(|e| Failure::from_error(&e, Some(&l.names)))?;
                let mut r = Report::new("collapse-check", l.inputs);
                strong_params(&mut r, cfg);
                r.param("from", level_json(*a));
                r.param("to", level_json(*b));
                match outcome {
                    IntervalCollapse::Witness(order) => {
                        let names: Vec<String> = order.iter().map(|&v| l.names.name(v)).collect();
                        r.outputs = json!({ "strong_collapse": true, "witness": names });
                        r.summary = format!("K({b}) strongly collapses to K({a})");
                        r.details = vec![format!("delete: {}", names.join(" "))];
                    }
                    IntervalCollapse::Counterexample => {
                        r.outputs = json!({ "strong_collapse": false });
                        r.summary = format!("no strong collapse from K({b}) to K({a})");
                    }
                }
                Ok(r)
            }
            (None, None, None) => {
                let l = load_complex(&complex.complex)?;
                let seq = collapse_search(&l.k, &CollapseTarget::Point, cli.budget).map_err(|e| Failure::from_error(&e, Some(&l.names)))?;
                let strongly = l.k.is_strongly_collapsible();
                let mut r = Report::new("collapse-check", l.inputs);
                let witness: Option<Vec<Value>> = seq.as_ref().map(|s| {
                    s.iter()
                        .map(|(a, b)| json!([l.names.key(a), l.names.key(b)]))
                        .collect()
                });
                r.outputs = json!({
                    "collapsible": seq.is_some(),
                    "strongly_collapsible": strongly,
                    "witness": witness,
                });
                r.summary = format!(
                    "collapsible: {}, strongly collapsible: {strongly}",
                    seq.is_some()
                );
                if let Some(s) = &seq {
                    r.details = s
                        .iter()
                        .map(|(a, b)| format!("collapse {} {}", key(&l.names, a), key(&l.names, b)))
                        .collect();
                }
                Ok(r)
            }
            _ => Err(Failure::Usage(
                "--function, --from and --to must be given together".into(),
            )),
        },
        Command::Core(c) => {
            let l = load_complex(&c.complex)?;
            let mut removed: Vec<VertexId> = Vec::new();
            let core = l.k.core_by(|cands| {
                removed.push(cands[0]);
                cands[0]
            });
            let mut r = Report::new("core", l.inputs);
            let removed_names: Vec<String> = removed.iter().map(|&v| l.names.name(v)).collect();
            r.outputs = json!({
                "facets": facets_json(&core, &l.names),
                "vertices": core.num_vertices(),
                "removed": removed_names,
            });
            r.summary = format!(
                "core has {} vertices after removing {}",
                core.num_vertices(),
                removed.len()
            );
            r.payload = Some(serialize_complex(&core, &l.names));
            Ok(r)
        }
        Command::Scat { complex, method } => {
            let l = load_complex(&complex.complex)?;
            let mut r = Report::new("scat", l.inputs);
            let (lo, hi) = scat_bounds(&l.k);
            match method {
                ScatMethod::Exact => {
                    let res = scat_exact(&l.k, budget(cli)).map_err(|e| {
                        let f = Failure::from_error(&e, Some(&l.names));
                        match f {
                            Failure::Budget(m) => Failure::Budget(format!("{m} (bounds: {lo} ≤ scat ≤ {hi})")),
                            other => other,
                        }
                    })?;
                    r.param("method", "exact");
                    r.outputs = json!({
                        "scat": res.scat,
                        "lower": lo,
                        "upper": hi,
                        "cover": res.cover.pieces.iter().map(|p| facets_json(p, &l.names)).collect::<Vec<_>>(),
                    });
                    r.summary = format!("scat = {}", res.scat);
                    r.details = res
                        .cover
                        .pieces
                        .iter()
                        .enumerate()
                        .map(|(i, p)| {
                            let fs: Vec<String> = p.facets().iter().map(|f| key(&l.names, f)).collect();
                            format!("piece {}: {}", i + 1, fs.join(" "))
                        })
                        .collect();
                }
                ScatMethod::Bounds => {
                    r.param("method", "bounds");
                    r.outputs = json!({ "lower": lo, "upper": hi });
                    r.summary = format!("{lo} ≤ scat ≤ {hi}");
                }
            }
            Ok(r)
        }
        Command::VerifyLs { input, scat, strong } => {
            let (l, f) = load_function(input)?;
            let cfg = strong.config();
            let value = match scat.as_str() {
                "exact" => scat_exact(&l.k, budget(cli)).map_err(|e| Failure::from_error(&e, Some(&l.names)))?.scat,
                "bounds" => scat_bounds(&l.k).0,
                n => n.parse().map_err(|_| {
                    Failure::Usage(format!("--scat expects exact, bounds or an integer, got {n:?}"))
                })?,
            };
            let rep = scrit(&f, cfg);
            let ls = verify_ls(&rep, value);
            let mut r = Report::new("verify-ls", l.inputs);
            strong_params(&mut r, cfg);
            r.param("scat_source", scat.as_str());
            r.outputs = json!({
                "scat": ls.scat,
                "lhs": ls.lhs(),
                "scrit_count": ls.scrit_count,
                "holds": ls.holds(),
                "equality": ls.equality(),
            });
            r.summary = ls.to_string();
            Ok(r)
        }
        Command::BuildGreedy { complex, strong } => {
            let l = load_complex(&complex.complex)?;
            let f = greedy_strong_dmf(&l.k, cli.seed);
            let cfg = strong.config();
            let count = scrit(&f, cfg).count();
            let mut r = Report::new("build-greedy", l.inputs);
            r.param("seed", cli.seed);
            strong_params(&mut r, cfg);
            r.outputs = json!({ "function": function_json(&f, &l.names), "scrit_count": count });
            r.summary = format!("#scrit = {count}");
            r.payload = Some(serialize_morse(&f, &l.names));
            Ok(r)
        }
        Command::Optimize {
            complex,
            iterations,
            strategy,
            temperature,
            cooling,
            jobs,
            strong,
        } => {
            let l = load_complex(&complex.complex)?;
            let cfg = OptimizerConfig {
                iterations: *iterations,
                seed: cli.seed,
                strategy: match strategy {
                    StrategyArg::Greedy => Strategy::Greedy,
                    StrategyArg::Anneal => Strategy::Anneal,
                },
                temperature: *temperature,
                cooling: *cooling,
                strong: strong.config(),
            };
            let res = optimize_parallel(&l.k, &cfg, *jobs).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut r = Report::new("optimize", l.inputs);
            r.param("seed", cli.seed);
            r.param("iterations", *iterations);
            r.param("jobs", *jobs);
            r.param("strategy", format!("{strategy:?}").to_lowercase());
            r.param("temperature", value_json(*temperature));
            r.param("cooling", value_json(*cooling));
            strong_params(&mut r, cfg.strong);
            r.outputs = json!({
                "function": function_json(&res.best, &l.names),
                "best_count": res.best_count,
                "history": res.history,
            });
            r.summary = format!("best #scrit = {}", res.best_count);
            r.payload = Some(serialize_morse(&res.best, &l.names));
            Ok(r)
        }
        Command::ExportDot {
            complex,
            function,
            strong,
        } => {
            let (l, f) = match function {
                Some(p) => {
                    let (l, f) = load_with(&complex.complex, p)?;
                    (l, Some(f))
                }
                None => (load_complex(&complex.complex)?, None),
            };
            let rep = f.as_ref().map(|f| scrit(f, strong.config()));
            let dot = hasse_dot(&l.k, &l.names, f.as_ref(), rep.as_ref());
            let mut r = Report::new("export-dot", l.inputs);
            r.outputs = json!({ "dot": dot });
            r.summary = format!("Hasse diagram with {} nodes", l.k.len());
            r.payload = Some(dot);
            Ok(r)
        }
    }
}

pub fn run(cli: &Cli) -> CmdResult<()> {
    let start = Instant::now();
    let report = execute(cli)?;
    let text = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => {
            let timing = cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0);
            let mut s = serde_json::to_string_pretty(&report.to_json(timing))
                .expect("reports serialise");
            s.push('\n');
            s
        }
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
