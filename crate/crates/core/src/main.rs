use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use permlcs::algebraic::{build_from_params, general_params};
use permlcs::bench::{parse_grid, run_grid, CSV_HEADER};
use permlcs::bounds::{check_probabilistic_bound, pigeonhole_pair, sample_lis, verify_cube_root_lower_bound};
use permlcs::codes::code_report;
use permlcs::hadamard::{build_hadamard_for_n, build_hadamard_set, DEFAULT_MAX_SIZE};
use permlcs::report::{
    exact_size_check, lower_check, pair_bound_check, theorem1_check, theorem2_check, BoundCheck, RunReport,
};
use permlcs::{lcs_all_pairs, LcsMatrix, PermSet, Provenance};

#[derive(Parser)]
#[command(name = "permlcs", version, about = "Permutation sets with short pairwise longest common subsequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a permutation set and write it as PERMSET v1
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Check pairwise LCS bounds of a PERMSET file
    Verify {
        path: PathBuf,
        /// `all` checks the lower bound and theorem2 where their hypotheses hold;
        /// theorem1 is only checked when asked for
        #[arg(long, value_enum, default_value_t = BoundChoice::All)]
        bound: BoundChoice,
    },
    /// Sample random k-sets against the 2e*sqrt(n) ceiling
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write LIS lengths of `trials` random permutations as `trial,length` CSV
        #[arg(long)]
        lis_csv: Option<PathBuf>,
    },
    /// Deletion-distance code parameters of a PERMSET file
    Distance { path: PathBuf },
    /// Max pairwise LCS against the bounds over grids of (n, k), as CSV
    Bench {
        /// Grid spec `[kind:]key=v,..;key=v,..`; repeatable
        #[arg(long, required = true)]
        grid: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: u64,
        /// Print 0 in the elapsed_ms column
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    Algebraic {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Hadamard(HadamardArgs),
}

#[derive(Args)]
struct HadamardArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, required_unless_present = "n", conflicts_with = "n")]
    s: Option<u64>,
    /// Ground-set size; s = ceil(n^(1/(k-1))) and the set is restricted to [n]
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
    max_size: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the Hadamard matrix as `+`/`-` rows
    #[arg(long)]
    matrix_out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundChoice {
    Theorem2,
    Theorem1,
    Lower,
    All,
}

enum Failure {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let outcome = match cli.command {
        Command::Construct { kind } => construct(kind),
        Command::Verify { path, bound } => verify(&path, bound),
        Command::Sample { n, k, trials, seed, lis_csv } => sample(n, k, trials as usize, seed, lis_csv),
        Command::Distance { path } => distance(&path),
        Command::Bench { grid, seed, max_size, no_timing } => bench(&grid, seed, max_size, !no_timing),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("PERMLCS_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| format!("PERMLCS_THREADS must be an integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| e.to_string())
}

fn read_set(path: &Path) -> Result<PermSet, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(PermSet::parse_permset(&text)?)
}

fn pair_list(m: &LcsMatrix) -> Vec<serde_json::Value> {
    m.pairs().map(|(i, j, lcs)| json!({ "i": i, "j": j, "lcs": lcs })).collect()
}

fn construct(kind: ConstructKind) -> CmdResult {
    let mut report = RunReport::new("construct");
    let (set, out, checks) = match kind {
        ConstructKind::Algebraic { n, k, out } => {
            report.param("kind", "algebraic").param("n", n).param("k", k);
            let params = general_params(n, k)?;
            let full = build_from_params(&params)?;
            let set = if params.n == n { full } else { full.restrict(n as usize)? };
            let max = lcs_all_pairs(&set)?.max_lcs() as u64;
            let mut checks = vec![pair_bound_check(params.p, max), theorem2_check(n, k, max)];
            if params.n == n {
                checks.push(exact_size_check(n, k, max));
            }
            checks.push(lower_check(n, k, max));
            report.result(
                "construction",
                json!({
                    "n_exact": params.n, "s1": params.s1, "s2": params.s2, "s3": params.s3, "p": params.p,
                }),
            );
            (set, out, checks)
        }
        ConstructKind::Hadamard(args) => {
            report.param("kind", "hadamard").param("k", args.k).param("max_size", args.max_size);
            let set = match (args.s, args.n) {
                (Some(s), _) => {
                    report.param("s", s);
                    build_hadamard_set(args.k, s, args.max_size)?
                }
                (None, Some(n)) => {
                    report.param("n", n);
                    build_hadamard_for_n(args.k, n, args.max_size)?
                }
                (None, None) => unreachable!("clap requires --s or --n"),
            };
            let Provenance::Hadamard { s, n_full, matrix, .. } = set.provenance().clone() else { unreachable!() };
            if let Some(path) = &args.matrix_out {
                fs::write(path, &matrix).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            let max = lcs_all_pairs(&set)?.max_lcs() as u64;
            let (n, k) = (set.n() as u64, set.k() as u64);
            let checks = vec![theorem1_check(n, k, max).expect("even k"), lower_check(n, k, max)];
            report.result(
                "construction",
                json!({ "s": s, "n_full": n_full, "matrix": matrix.lines().collect::<Vec<_>>() }),
            );
            (set, args.out, checks)
        }
    };
    if let Some(path) = &out {
        fs::write(path, set.to_permset()).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    report.result("n", set.n()).result("k", set.k());
    report.result("max_pair_lcs", checks[0].observed).bounds(&checks);
    println!("{}", report.to_json());
    Ok(report.pass)
}

fn verify(path: &Path, bound: BoundChoice) -> CmdResult {
    let start = Instant::now();
    let set = read_set(path)?;
    let (n, k) = (set.n() as u64, set.k() as u64);
    if k < 2 {
        return Err(Failure::Usage(format!("need at least 2 permutations, file has {k}")));
    }
    let matrix = lcs_all_pairs(&set)?;
    let max = matrix.max_lcs() as u64;

    let mut report = RunReport::new("verify");
    report.param("path", path.display().to_string()).param(
        "bound",
        match bound {
            BoundChoice::Theorem2 => "theorem2",
            BoundChoice::Theorem1 => "theorem1",
            BoundChoice::Lower => "lower",
            BoundChoice::All => "all",
        },
    );

    let mut checks: Vec<BoundCheck> = Vec::new();
    let mut want_lower = false;
    match bound {
        BoundChoice::Theorem2 => checks.push(theorem2_check(n, k, max)),
        BoundChoice::Theorem1 => {
            checks.push(theorem1_check(n, k, max).ok_or_else(|| {
                Failure::Usage(format!("theorem1 bound needs an even number of permutations, got {k}"))
            })?)
        }
        BoundChoice::Lower => {
            if k < 3 {
                return Err(Failure::Usage(format!("lower bound needs at least 3 permutations, got {k}")));
            }
            want_lower = true;
        }
        BoundChoice::All => {
            want_lower = k >= 3;
            let t2 = theorem2_check(n, k, max);
            if t2.hypotheses_hold {
                checks.push(t2);
            }
        }
    }
    if want_lower {
        let lb = verify_cube_root_lower_bound(&set)?;
        checks.push(lower_check(n, k, max));
        report.result(
            "lower_bound",
            json!({
                "pigeonhole_m": lb.pigeonhole_m,
                "pigeonhole_pair": lb.pigeonhole_pair,
                "phi_triples_distinct": lb.phi_table.as_ref().map(|t| t.triples_distinct),
            }),
        );
    }

    report
        .result("n", n)
        .result("k", k)
        .result("pairs", pair_list(&matrix))
        .result("max_pair_lcs", max)
        .result("min_pair_lcs", matrix.min_lcs())
        .bounds(&checks)
        .result("elapsed_ms", start.elapsed().as_millis() as u64);
    println!("{}", report.to_json());
    Ok(report.pass)
}

fn sample(n: usize, k: usize, trials: usize, seed: u64, lis_csv: Option<PathBuf>) -> CmdResult {
    if n == 0 {
        return Err(Failure::Usage("n must be positive".into()));
    }
    let verdict = check_probabilistic_bound(n, k, trials, seed)?;
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in &verdict.max_pair_lcs {
        *histogram.entry(l).or_default() += 1;
    }

    let mut report = RunReport::new("sample");
    report.param("n", n).param("k", k).param("trials", trials).param("seed", seed);
    report
        .result("threshold", verdict.threshold)
        .result("threshold_formula", format!("2e*sqrt({n})"))
        .result("violations", verdict.violations)
        .result("fraction_below", verdict.fraction_below)
        .result("min_max_pair_lcs", verdict.min_over_sets)
        .result("max_max_pair_lcs", verdict.max_over_sets)
        .result("mean_max_pair_lcs", verdict.mean)
        .result("distribution", histogram.into_iter().map(|(v, c)| json!([v, c])).collect::<Vec<_>>());
    report.pass = verdict.violations == 0;
    if k >= 3 {
        report.bounds(&[lower_check(n as u64, k as u64, verdict.min_over_sets as u64)]);
    }
    if let Some(path) = lis_csv {
        let lis = sample_lis(n, trials, seed)?;
        fs::write(&path, lis.to_csv()).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    println!("{}", report.to_json());
    Ok(report.pass)
}

fn distance(path: &Path) -> CmdResult {
    let set = read_set(path)?;
    if set.k() < 2 {
        return Err(Failure::Usage(format!("need at least 2 codewords, file has {}", set.k())));
    }
    let code = code_report(&set)?;
    if code.duplicate_codewords {
        eprintln!("warning: duplicate codewords; minimum distance is 0");
    }
    let witness = pigeonhole_pair(&set)?;
    let mut report = RunReport::new("distance");
    report.param("path", path.display().to_string());
    report.result("code", &code).result("identical_prefix_pair", witness);
    println!("{}", report.to_json());
    Ok(true)
}

fn bench(grids: &[String], seed: u64, max_size: u64, timing: bool) -> CmdResult {
    let mut cells = Vec::new();
    for g in grids {
        cells.extend(parse_grid(g)?);
    }
    let rows = run_grid(&cells, seed, max_size)?;
    println!("{CSV_HEADER}");
    for row in &rows {
        println!("{}", row.to_csv(timing));
    }
    Ok(rows.iter().all(|r| r.holds))
}
