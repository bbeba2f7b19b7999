//! Command-line driver: `gen`, `solve`, `verify` and `bench`.
//!
//! Exit codes: 0 ok, 1 invalid input, 2 verification failure, 3 resource
//! ceiling.

pub mod bench;
pub mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::generate::{generate, GeneratorKind, GeneratorParams};
use crate::solvers::{solve, Algorithm, Params, SolverConfig, DEFAULT_EXACT_LIMIT};
use crate::decompose::DEFAULT_WIDTH_CEILING;
use crate::Rational;
use bench::{run_bench, to_csv, BenchSpec};
use io::{parse_rational, verify_cover, write_text, CoverFile, InstanceFile, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::WidthCeiling { .. } | Error::TooLarge { .. } | Error::RejectionBudget { .. } => {
                CliError::Resource(e.to_string())
            }
            Error::UncoveredEdge(..) => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "rectcover", version, about = "Vertex cover on rectangle intersection graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a seeded random instance.
    Gen(GenArgs),
    /// Solve an instance and write the cover.
    Solve(SolveArgs),
    /// Check a cover file against an instance.
    Verify(VerifyArgs),
    /// Sweep instances, algorithms and epsilons into a CSV table.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    pub kind: GeneratorKind,
    #[arg(long, short)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub weighted: bool,
    /// Largest side as a fraction of the unit square.
    #[arg(long, default_value_t = 0.35)]
    pub max_side: f64,
    /// Also reject crossing pairs.
    #[arg(long)]
    pub forbid_crossing: bool,
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Accuracy, as a decimal or a fraction such as 1/4.
    #[arg(long, default_value = "0.25", value_parser = parse_rational)]
    pub epsilon: Rational,
    /// Replace the number of layering classes.
    #[arg(long)]
    pub k_override: Option<usize>,
    /// Solve the non-crossing classes of `general` with planar layering.
    #[arg(long)]
    pub planar_route: bool,
    #[arg(long, default_value_t = DEFAULT_WIDTH_CEILING)]
    pub width_ceiling: usize,
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    pub exact_limit: usize,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig<Rational>, CliError> {
        let mut params = Params::new(self.epsilon)?;
        if let Some(k) = self.k_override {
            params = params.with_k(k)?;
        }
        Ok(SolverConfig {
            params,
            width_ceiling: self.width_ceiling,
            exact_limit: self.exact_limit,
            planar_route: self.planar_route,
        })
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value = "general")]
    pub algorithm: Algorithm,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub instance: PathBuf,
    pub cover: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Instance files; when empty a corpus is generated from the flags below.
    pub instances: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "non-crossing")]
    pub kind: GeneratorKind,
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    #[arg(long, short, default_value_t = 14)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub weighted: bool,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Algorithm::Eptas, Algorithm::Exact])]
    pub algorithms: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',', default_value = "0.25", value_parser = parse_rational)]
    pub epsilons: Vec<Rational>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Leave the timing column blank for reproducible output.
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn gen_cmd(a: &GenArgs) -> Result<(), CliError> {
    let params = GeneratorParams {
        weighted: a.weighted,
        max_side: a.max_side,
        forbid_crossing: a.forbid_crossing,
        ..GeneratorParams::default()
    };
    let fam = generate::<Rational>(a.kind, a.n, a.seed, &params)?;
    let name = a.name.clone().unwrap_or_else(|| format!("{}-n{}-s{}", a.kind, a.n, a.seed));
    write_text(a.out.as_deref(), &InstanceFile::from_family(&name, &fam, a.weighted).to_json())
}

fn solve_cmd(a: &SolveArgs) -> Result<(), CliError> {
    let fam = InstanceFile::read(&a.instance)?.to_family()?;
    let res = solve(&fam, a.algorithm, &a.solver.config()?)?;
    write_text(a.out.as_deref(), &CoverFile::from_result(&res).to_json())
}

fn verify_cmd(a: &VerifyArgs) -> Result<(), CliError> {
    let fam = InstanceFile::read(&a.instance)?.to_family()?;
    let cover = CoverFile::read(&a.cover)?;
    match verify_cover(&fam, &cover)? {
        Verdict::Valid { weight } => {
            println!("valid: {} rectangles, weight {}", cover.cover.len(), io::format_rational(&weight));
            Ok(())
        }
        Verdict::Uncovered(u, v) => Err(CliError::Verification(format!("invalid: edge {{{u}, {v}}} is not covered"))),
        Verdict::WeightMismatch { declared, actual } => Err(CliError::Verification(format!(
            "invalid: declared weight {} but the cover weighs {}",
            io::format_rational(&declared),
            io::format_rational(&actual)
        ))),
    }
}

fn load_corpus(a: &BenchArgs) -> Result<Vec<(String, crate::ExactFamily)>, CliError> {
    if !a.instances.is_empty() {
        return a
            .instances
            .iter()
            .map(|p: &PathBuf| {
                let inst = InstanceFile::read(Path::new(p))?;
                Ok((inst.name.clone(), inst.to_family()?))
            })
            .collect();
    }
    let params = GeneratorParams {
        weighted: a.weighted,
        ..GeneratorParams::default()
    };
    (0..a.count as u64)
        .map(|i| {
            let seed = a.seed + i;
            let fam = generate(a.kind, a.n, seed, &params)?;
            Ok((format!("{}-n{}-s{}", a.kind, a.n, seed), fam))
        })
        .collect()
}

fn bench_cmd(a: &BenchArgs) -> Result<(), CliError> {
    let corpus = load_corpus(a)?;
    let spec = BenchSpec {
        algorithms: a.algorithms.clone(),
        epsilons: a.epsilons.clone(),
        config: a.solver.config()?,
        k_override: a.solver.k_override,
        exact_limit: a.solver.exact_limit,
        omit_timing: a.no_timing,
    };
    let rows = run_bench(&corpus, &spec)?;
    write_text(a.out.as_deref(), &to_csv(&rows)?)
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Gen(a) => gen_cmd(a),
        Command::Solve(a) => solve_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Bench(a) => bench_cmd(a),
    }
}

/// Parses the process arguments, runs the command and maps the outcome to
/// an exit code.
pub fn main_with_args<I, S>(args: I) -> ExitCode
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
