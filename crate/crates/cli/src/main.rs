//! `apcover`: solve, verify and generate progression-covering instances.
//!
//! Exit status: 0 yes / valid / success, 3 no / invalid / property failure,
//! 1 usage or parse error, 2 capacity exceeded.

mod formats;
mod report;

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use apcover_core::below::{cap_below_solve, tusc_below_solve, ColoringMode, TuscInstance, DEFAULT_DELTA};
use apcover_core::cap::cover_decide;
use apcover_core::checks::{run_suite, Suite};
use apcover_core::generate;
use apcover_core::xcap::exact_cover_decide;
use apcover_core::zp::{reduce_mod_p, zp_cover_witness, zp_exact_cover_witness, ZpInstance};
use apcover_core::{verify_solution, CoverKind, Error, Instance, Solution};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use report::{ApJson, Decision, SetJson, SolveReport, VerifyReport, Witness};

const YES: u8 = 0;
const USAGE: u8 = 1;
const CAPACITY: u8 = 2;
const NO: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "apcover", version, about = "Cover integer sets by arithmetic progressions")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, env = "AP_COVER_THREADS")]
    threads: Option<usize>,
    /// Leave the witness out of yes-reports.
    #[arg(long, global = true)]
    no_witness: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide or minimize one instance.
    Solve(SolveArgs),
    /// Check a solution file against an instance.
    Verify {
        problem: VerifyProblem,
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Print a generated instance.
    Gen(GenArgs),
    /// Project an instance modulo its smallest suitable prime.
    ReduceZp { instance: PathBuf },
    /// Run the randomized property suites.
    Proptest {
        #[arg(default_value = "all")]
        suite: String,
        /// Cases per suite.
        #[arg(long, default_value_t = 200)]
        budget: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Problem {
    Cap,
    Xcap,
    ZpCap,
    ZpXcap,
    Tusc,
    CapBelow,
}

impl Problem {
    fn name(self) -> &'static str {
        match self {
            Problem::Cap => "cap",
            Problem::Xcap => "xcap",
            Problem::ZpCap => "zp-cap",
            Problem::ZpXcap => "zp-xcap",
            Problem::Tusc => "tusc",
            Problem::CapBelow => "cap-below",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyProblem {
    Cap,
    Xcap,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Coloring {
    Exhaustive,
    Splitter,
    Randomized,
}

#[derive(Args, Debug)]
struct SolveArgs {
    problem: Problem,
    /// Instance file; the format depends on the problem.
    file: PathBuf,
    /// Budget (cap, xcap, zp-*) or distance below the guarantee (cap-below;
    /// overrides the file header for tusc).
    #[arg(long)]
    k: Option<usize>,
    /// Report the minimum instead of deciding a budget.
    #[arg(long, conflicts_with = "k")]
    minimize: bool,
    /// Coloring strategy for tusc and cap-below.
    #[arg(long, value_enum, default_value_t = Coloring::Exhaustive)]
    coloring: Coloring,
    /// Failure probability for randomized colorings.
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    /// Fixed number of randomized colorings per step (overrides --delta).
    #[arg(long)]
    trials: Option<u64>,
    /// Also write the witness as a solution file (cap, xcap, cap-below).
    #[arg(long)]
    solution_out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GenKind {
    UnionOfAps,
    No3ap,
    Random,
    Powers,
}

#[derive(Args, Debug)]
struct GenArgs {
    kind: GenKind,
    /// Number of elements (no3ap, random) or largest exponent plus one (powers).
    #[arg(long)]
    n: Option<usize>,
    /// Number of planted progressions.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Terms per planted progression.
    #[arg(long, default_value_t = 5)]
    len: usize,
    /// Largest value for union-of-aps and random.
    #[arg(long, default_value_t = 1000)]
    max_value: u64,
    /// Plant pairwise disjoint progressions.
    #[arg(long)]
    disjoint: bool,
    /// Probability of skipping an admissible candidate in no3ap.
    #[arg(long, default_value_t = 0.0)]
    skip: f64,
}

enum Failure {
    Usage(String),
    Capacity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_capacity() {
            Failure::Capacity(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<formats::ParseError> for Failure {
    fn from(e: formats::ParseError) -> Self {
        Failure::Usage(e.0)
    }
}

type Run = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Writes to stdout. A reader that closed the pipe early is not an error.
fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush());
}

fn emit<T: serde::Serialize>(doc: &T) {
    out(&(serde_json::to_string_pretty(doc).expect("reports serialize") + "\n"));
}

fn progressions(aps: &[apcover_core::Ap]) -> Witness {
    Witness::Progressions(aps.iter().map(ApJson::from).collect())
}

struct Answer {
    k: usize,
    /// Integer progressions of the witness, for the solution file.
    aps: Option<Vec<apcover_core::Ap>>,
    target: Option<usize>,
    witness: Option<Witness>,
    stats: BTreeMap<&'static str, u64>,
}

fn solve_cap(x: &Instance, k: Option<usize>, exact: bool) -> Result<Answer, Failure> {
    let mut stats = BTreeMap::new();
    let budgets: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..=x.len().div_ceil(2)).collect(),
    };
    for &b in &budgets {
        let solution = if exact {
            let out = exact_cover_decide(x, b);
            *stats.entry("nodes").or_default() += out.stats.nodes;
            *stats.entry("overlap_splits").or_default() += out.stats.overlap_splits;
            *stats.entry("difference_branches").or_default() += out.stats.difference_branches;
            *stats.entry("assignment_branches").or_default() += out.stats.assignment_branches;
            *stats.entry("aborts").or_default() += out.stats.aborts;
            out.solution
        } else {
            let out = cover_decide(x, b)?;
            *stats.entry("nodes").or_default() += out.stats.nodes;
            *stats.entry("setcover_calls").or_default() += out.stats.setcover_calls;
            *stats.entry("duplicate_skips").or_default() += out.stats.duplicate_skips;
            out.solution
        };
        if let Some(s) = solution {
            return Ok(Answer {
                k: b,
                target: None,
                witness: Some(progressions(&s.aps)),
                aps: Some(s.aps),
                stats,
            });
        }
    }
    Ok(Answer {
        k: budgets[0],
        target: None,
        witness: None,
        aps: None,
        stats,
    })
}

fn solve_zp(z: &ZpInstance, k: Option<usize>, exact: bool) -> Result<Answer, Failure> {
    let best = if exact {
        zp_exact_cover_witness(z)?
    } else {
        zp_cover_witness(z)?
    };
    let stats = BTreeMap::from([("p", z.p())]);
    let witness = Witness::Progressions(best.iter().map(ApJson::from).collect());
    Ok(match k {
        Some(k) if best.len() > k => Answer {
            k,
            aps: None,
            target: None,
            witness: None,
            stats,
        },
        k => Answer {
            k: k.unwrap_or(best.len()),
            aps: None,
            target: None,
            witness: Some(witness),
            stats,
        },
    })
}

fn solve_below(inst: &TuscInstance, k: usize, mode: ColoringMode) -> Result<Answer, Failure> {
    let found = tusc_below_solve(inst, k, mode)?;
    Ok(Answer {
        k,
        aps: None,
        target: inst.guarantee().checked_sub(k),
        witness: found.map(|parts| Witness::Sets(parts.iter().map(|p| SetJson::new(p, inst)).collect())),
        stats: BTreeMap::from([("guarantee", inst.guarantee() as u64)]),
    })
}

fn solve_cap_below(x: &Instance, k: usize, mode: ColoringMode) -> Result<Answer, Failure> {
    let guarantee = x.len().div_ceil(2);
    let found = cap_below_solve(x, k, mode)?;
    Ok(Answer {
        k,
        target: guarantee.checked_sub(k),
        witness: found.as_ref().map(|s| progressions(&s.aps)),
        aps: found.map(|s| s.aps),
        stats: BTreeMap::from([("guarantee", guarantee as u64)]),
    })
}

fn solve(args: &SolveArgs, seed: u64, with_witness: bool) -> Run {
    let start = Instant::now();
    let text = read(&args.file)?;
    if args.minimize && matches!(args.problem, Problem::Tusc | Problem::CapBelow) {
        return Err(Failure::Usage(format!(
            "{} is a decision problem; --minimize is not available",
            args.problem.name()
        )));
    }
    if !args.minimize && args.k.is_none() && args.problem != Problem::Tusc {
        return Err(Failure::Usage("--k or --minimize is required".into()));
    }
    let mode = match args.coloring {
        Coloring::Exhaustive => ColoringMode::Exhaustive,
        Coloring::Splitter => ColoringMode::Splitter,
        Coloring::Randomized => {
            if !(args.delta > 0.0 && args.delta < 1.0) {
                return Err(Failure::Usage("--delta must lie in (0, 1)".into()));
            }
            ColoringMode::Randomized {
                trials: args.trials,
                delta: args.delta,
                seed,
            }
        }
    };
    let (n, answer) = match args.problem {
        Problem::Cap | Problem::Xcap => {
            let x = formats::parse_instance(&text)?;
            (x.len(), solve_cap(&x, args.k, args.problem == Problem::Xcap)?)
        }
        Problem::ZpCap | Problem::ZpXcap => {
            let z = formats::parse_zp_instance(&text)?;
            (z.len(), solve_zp(&z, args.k, args.problem == Problem::ZpXcap)?)
        }
        Problem::Tusc => {
            let (inst, file_k) = formats::parse_tusc(&text)?;
            let k = args.k.unwrap_or(file_k);
            (inst.n(), solve_below(&inst, k, mode)?)
        }
        Problem::CapBelow => {
            let x = formats::parse_instance(&text)?;
            let k = args.k.expect("checked above");
            (x.len(), solve_cap_below(&x, k, mode)?)
        }
    };
    let yes = answer.witness.is_some();
    if let (Some(path), Some(aps)) = (&args.solution_out, &answer.aps) {
        std::fs::write(path, formats::print_solution(aps))
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    let report = SolveReport {
        problem: args.problem.name(),
        minimize: args.minimize,
        decision: if yes { Decision::Yes } else { Decision::No },
        k: answer.k,
        n,
        target: answer.target,
        witness: answer.witness.filter(|_| with_witness),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        stats: answer.stats,
    };
    if let Some(w) = &report.witness {
        eprintln!("{}: yes, witness of {} sets", report.problem, w.size());
    }
    emit(&report);
    Ok(if yes { YES } else { NO })
}

fn verify(problem: VerifyProblem, instance: &Path, solution: &Path) -> Run {
    let x = formats::parse_instance(&read(instance)?)?;
    let aps = formats::parse_solution(&read(solution)?)?;
    let (name, kind) = match problem {
        VerifyProblem::Cap => ("cap", CoverKind::Cover),
        VerifyProblem::Xcap => ("xcap", CoverKind::ExactCover),
    };
    let violation = verify_solution(&x, &Solution::new(aps, kind)).err().map(|v| v.to_string());
    if let Some(v) = &violation {
        eprintln!("invalid: {v}");
    }
    let valid = violation.is_none();
    emit(&VerifyReport {
        problem: name,
        valid,
        violation,
    });
    Ok(if valid { YES } else { NO })
}

fn gen(args: &GenArgs, seed: u64) -> Run {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let need_n = || args.n.ok_or_else(|| Failure::Usage("--n is required".into()));
    let (x, header) = match args.kind {
        GenKind::UnionOfAps => {
            if args.k == 0 || args.len == 0 {
                return Err(Failure::Usage("--k and --len must be positive".into()));
            }
            let (x, plant) = generate::union_of_aps(&mut rng, args.k, args.len, args.max_value, args.disjoint)?;
            let plant: Vec<String> = plant.iter().map(|a| format!("{} {} {}", a.first(), a.diff(), a.len())).collect();
            let header = format!(
                "union-of-aps k={} len={} max-value={} seed={seed}\nplant (first diff len): {}",
                args.k,
                args.len,
                args.max_value,
                plant.join(", ")
            );
            (x, header)
        }
        GenKind::No3ap => {
            let n = need_n()?;
            if !(0.0..1.0).contains(&args.skip) {
                return Err(Failure::Usage("--skip must lie in [0, 1)".into()));
            }
            let x = generate::no3ap(&mut rng, n, args.skip);
            if apcover_core::has_three_term_ap(&x) {
                return Err(Failure::Usage("generated set has a three-term progression".into()));
            }
            (x, format!("no3ap n={n} seed={seed}"))
        }
        GenKind::Random => {
            let n = need_n()?;
            let x = generate::random_set(&mut rng, n, args.max_value)?;
            (x, format!("random n={n} max-value={} seed={seed}", args.max_value))
        }
        GenKind::Powers => {
            let n = need_n()?;
            (generate::powers(n), format!("powers n={n}"))
        }
    };
    out(&formats::print_instance(&x, Some(&header)));
    Ok(YES)
}

fn reduce_zp(instance: &Path) -> Run {
    let x = formats::parse_instance(&read(instance)?)?;
    let (z, cert) = reduce_mod_p(&x);
    eprintln!(
        "p={} suitable: {} pairs and {} triples checked",
        z.p(),
        cert.pairs_checked,
        cert.triples_checked
    );
    out(&formats::print_zp_instance(&z));
    Ok(YES)
}

fn proptest(suite: &str, seed: u64, budget: u64) -> Run {
    let suites = Suite::parse(suite).ok_or_else(|| {
        Failure::Usage(format!(
            "unknown suite {suite:?}; expected all, ap-core, cap, xcap, zp, tusc or theorems"
        ))
    })?;
    let mut rows = Vec::new();
    for s in suites {
        let start = Instant::now();
        let r = run_suite(s, seed, budget);
        match &r.failure {
            None => eprintln!("{:<9} pass  {} cases  {:.1?}", s.name(), r.cases, start.elapsed()),
            Some(f) => eprintln!("{:<9} FAIL  {f}", s.name()),
        }
        rows.push(report::SuiteJson {
            suite: s.name(),
            cases: r.cases,
            passed: r.passed(),
            counterexample: r.failure.map(|f| report::CounterexampleJson {
                case: f.case,
                instance: f.instance.elements().iter().map(ToString::to_string).collect(),
                message: f.message,
            }),
        });
    }
    let passed = rows.iter().all(|r| r.passed);
    emit(&report::ProptestReport {
        seed,
        budget,
        passed,
        suites: rows,
    });
    Ok(if passed { YES } else { NO })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { YES });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("threads: {e}");
            return ExitCode::from(USAGE);
        }
    }
    let result = match &cli.command {
        Command::Solve(args) => solve(args, cli.seed, !cli.no_witness),
        Command::Verify {
            problem,
            instance,
            solution,
        } => verify(*problem, instance, solution),
        Command::Gen(args) => gen(args, cli.seed),
        Command::ReduceZp { instance } => reduce_zp(instance),
        Command::Proptest { suite, budget } => proptest(suite, cli.seed, *budget),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Capacity(m)) => {
            eprintln!("capacity: {m}");
            ExitCode::from(CAPACITY)
        }
    }
}
