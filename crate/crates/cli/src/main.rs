//! `hankel`: Vandermonde decompositions and rank certificates for Hankel tensors.
//!
//! Exit codes: 0 on success, 1 when the computation fails or a check does not
//! pass, 2 on I/O, argument or parse errors.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use hankel_core::appendix::{block_diagonal_split, verify_lemma_a1};
use hankel_core::json;
use hankel_core::koszul::{bound_from_rank, koszul_matrix, verify_theorem52, Tensor3};
use hankel_core::linalg::{mat_rank, DEFAULT_TOL};
use hankel_core::rank_relations::{classify, generic_vrank};
use hankel_core::tensor::{preset, HankelTensor, Preset};
use hankel_core::vandermonde::{decompose, reconstruction_residual, vrank, vrank_info};
use hankel_core::{Error, Mode};

/// Largest `n` accepted by `lemma-a1`.
const MAX_LEMMA_N: usize = 10;

#[derive(Parser)]
#[command(name = "hankel", version, about = "Vandermonde decompositions and rank bounds for Hankel tensors")]
struct Cli {
    /// Arithmetic mode: exact, float or gf2.
    #[arg(long, global = true, env = "HANKEL_MODE", value_parser = parse_mode)]
    mode: Option<Mode>,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output file, written atomically. Standard output when absent.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a Vandermonde rank decomposition and write it as JSON.
    Decompose(Input),
    /// Print the border Vandermonde rank, the Vandermonde rank and the case.
    Vrank(Input),
    /// Classify every rank quantity and write the report as JSON.
    Classify(Input),
    /// Rank of the Koszul flattening of a cubic tensor.
    Koszul {
        #[command(flatten)]
        input: Input,
        #[arg(short)]
        p: usize,
        /// Also print the labelled matrix.
        #[arg(long)]
        dump_matrix: bool,
    },
    /// Check the Schur complement rank for the special cubic tensor of size n.
    LemmaA1 {
        #[arg(short)]
        n: usize,
    },
    /// Write a preset tensor as JSON.
    Gen(PresetArgs),
    /// Check that a decomposition reconstructs a tensor.
    Verify {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(short = 'd', long = "decomposition")]
        decomposition: PathBuf,
        /// Tolerance relative to the largest entry of h.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Compare empirical and predicted Vandermonde ranks of random tensors.
    BenchGeneric {
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        m_max: usize,
        #[arg(long, default_value_t = 999)]
        bound: i64,
    },
}

#[derive(Args)]
struct PresetArgs {
    /// One of ex35, ex36, ex37, ex47, thm52, ex55, random.
    #[arg(long)]
    preset: String,
    /// Tensor size for presets that take one
    #[arg(short)]
    n: Option<usize>,
    /// Tensor order for presets that take one
    #[arg(short)]
    m: Option<usize>,
    /// Entry bound for the random preset.
    #[arg(long, default_value_t = 999)]
    bound: i64,
}

#[derive(Args)]
struct Input {
    /// Tensor JSON file, `-` for standard input.
    #[arg(short = 'i', long = "input", conflicts_with = "preset")]
    input: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    /// Tensor size for presets that take one
    #[arg(short)]
    n: Option<usize>,
    /// Tensor order for presets that take one
    #[arg(short)]
    m: Option<usize>,
    #[arg(long, default_value_t = 999)]
    bound: i64,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Core(Error),
    Io(String),
    /// A check ran to completion and did not pass.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_text(path: &Path) -> CliResult<String> {
    let mut s = String::new();
    if path == Path::new("-") {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("reading standard input: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn write_out(target: &Option<PathBuf>, text: &str) -> CliResult<()> {
    let io = |p: &Path, e: std::io::Error| Failure::Io(format!("{}: {e}", p.display()));
    match target {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Io(format!("standard output: {e}")))
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io(dir, e))?;
            tmp.write_all(text.as_bytes()).map_err(|e| io(path, e))?;
            tmp.persist(path).map_err(|e| io(path, e.error))?;
            Ok(())
        }
    }
}

fn load_tensor(input: &Input, cli: &Cli) -> CliResult<HankelTensor> {
    let t = match &input.preset {
        Some(name) => preset(&Preset::from_name(name, input.n, input.m, cli.seed, input.bound)?)?,
        None => {
            let path = input.input.clone().unwrap_or_else(|| PathBuf::from("-"));
            json::tensor_from_json(&read_text(&path)?)?
        }
    };
    Ok(match cli.mode {
        Some(mode) => t.to_mode(mode)?,
        None => t,
    })
}

fn relative_scale(t: &HankelTensor) -> f64 {
    t.h().iter().map(|s| s.to_complex().norm()).fold(1.0, f64::max)
}

fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Decompose(input) => {
            let t = load_tensor(input, cli)?;
            let dec = decompose(&t, cli.seed)?;
            let residual = reconstruction_residual(&t, &dec)?;
            if residual > hankel_core::vandermonde::FLOAT_VERIFY_TOL * relative_scale(&t) {
                return Err(Failure::Check(format!("reconstruction residual {residual:e}")));
            }
            Ok(json::decomposition_to_json(&dec))
        }
        Command::Vrank(input) => {
            let t = load_tensor(input, cli)?;
            let (r, v, case) = vrank(&t)?;
            Ok(format!("r = {r}\nvrank = {v}\ncase = {}\n", serde_case(case)))
        }
        Command::Classify(input) => {
            let t = load_tensor(input, cli)?;
            Ok(json::report_to_json(&classify(&t)?))
        }
        Command::Koszul { input, p, dump_matrix } => {
            let t = load_tensor(input, cli)?;
            let km = koszul_matrix(&Tensor3::from_hankel(&t)?, *p)?;
            let rank = mat_rank(&km.mat, DEFAULT_TOL)?;
            let mut out = format!(
                "p = {p}\nshape = {}x{}\nrank = {rank}\nbound = {}\n",
                km.mat.rows(),
                km.mat.cols(),
                bound_from_rank(rank, t.n(), *p)
            );
            if *dump_matrix {
                let cols: Vec<String> = (0..km.mat.cols()).map(|c| km.col_label(c)).collect();
                let _ = writeln!(out, "columns: {}", cols.join(" "));
                for r in 0..km.mat.rows() {
                    let row: Vec<String> = km.mat.row(r).iter().map(ToString::to_string).collect();
                    let _ = writeln!(out, "{}: {}", km.row_label(r), row.join(" "));
                }
            }
            Ok(out)
        }
        Command::LemmaA1 { n } => {
            if *n > MAX_LEMMA_N {
                return Err(Error::InvalidArgument(format!("n = {n} exceeds the limit {MAX_LEMMA_N}")).into());
            }
            let c = verify_lemma_a1(*n)?;
            let k = verify_theorem52(*n)?;
            let d_rank = *n * hankel_core::tensor::binom(n - 1, c.p) as usize;
            let split = block_diagonal_split(*n)?;
            let split_ok = split.iter().all(|b| b.full_column_rank);
            let pass = c.pass && k.rank == d_rank + c.rank_exact && split_ok;
            let mut out = String::from("n p rank_exact rank_gf2 expected koszul_rank rank_D status\n");
            let _ = writeln!(
                out,
                "{} {} {} {} {} {} {} {}",
                c.n,
                c.p,
                c.rank_exact,
                c.rank_gf2,
                c.expected,
                k.rank,
                d_rank,
                if pass { "pass" } else { "FAIL" }
            );
            out.push_str("s rows cols full_column_rank\n");
            for b in &split {
                let _ = writeln!(out, "{} {} {} {}", b.s, b.rows.len(), b.cols.len(), b.full_column_rank);
            }
            if pass {
                Ok(out)
            } else {
                Err(Failure::Check(out))
            }
        }
        Command::Gen(args) => {
            let t = preset(&Preset::from_name(&args.preset, args.n, args.m, cli.seed, args.bound)?)?;
            let t = match cli.mode {
                Some(mode) => t.to_mode(mode)?,
                None => t,
            };
            Ok(json::tensor_to_json(&t))
        }
        Command::Verify { input, decomposition, tol } => {
            let mut t = json::tensor_from_json(&read_text(input)?)?;
            if let Some(mode) = cli.mode {
                t = t.to_mode(mode)?;
            }
            let dec = json::decomposition_from_json(&read_text(decomposition)?)?;
            let residual = reconstruction_residual(&t, &dec)?;
            let limit = tol * relative_scale(&t);
            let out = format!("terms = {}\nresidual = {residual:e}\n", dec.terms.len());
            if residual <= limit {
                Ok(out + "ok\n")
            } else {
                Err(Failure::Check(format!("{out}reconstruction exceeds tolerance {limit:e}\n")))
            }
        }
        Command::BenchGeneric { trials, n_max, m_max, bound } => bench_generic(cli, *trials, *n_max, *m_max, *bound),
    }
}

fn serde_case(case: hankel_core::vandermonde::VrankCase) -> String {
    serde_json::to_value(case)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// Seed of one trial, a fixed function of the global seed and the trial's coordinates.
fn trial_seed(seed: u64, n: usize, m: usize, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((n as u64) << 48) ^ ((m as u64) << 40) ^ trial as u64
}

fn bench_generic(cli: &Cli, trials: usize, n_max: usize, m_max: usize, bound: i64) -> CliResult<String> {
    if n_max < 2 || m_max < 2 {
        return Err(Error::InvalidArgument("n-max and m-max must be at least 2".into()).into());
    }
    let mode = cli.mode.unwrap_or(Mode::Exact);
    let mut out = String::from("n m trials predicted matches\n");
    let mut all = true;
    for n in 2..=n_max {
        for m in 2..=m_max {
            let predicted = generic_vrank(n, m);
            let results: Vec<Result<usize, Error>> = (0..trials)
                .into_par_iter()
                .map(|k| {
                    let t = preset(&Preset::Random { n, m, seed: trial_seed(cli.seed, n, m, k), bound })?;
                    Ok(vrank_info(&t.to_mode(mode)?)?.vrank)
                })
                .collect();
            let ranks = results.into_iter().collect::<Result<Vec<_>, _>>()?;
            let matches = ranks.iter().filter(|&&v| v == predicted).count();
            all &= matches == trials;
            let _ = writeln!(out, "{n} {m} {trials} {predicted} {matches}");
        }
    }
    let _ = writeln!(out, "all_match = {all}");
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => match write_out(&cli.output, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(f) => report(f),
        },
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> ExitCode {
    match f {
        Failure::Core(e) => {
            eprintln!("error[{}]: {e}", e.name());
            match e {
                Error::Parse(_) | Error::UnknownPreset(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
        Failure::Io(msg) => {
            eprintln!("error[io]: {msg}");
            ExitCode::from(2)
        }
        Failure::Check(msg) => {
            eprint!("{msg}");
            eprintln!("error[check-failed]");
            ExitCode::from(1)
        }
    }
}
