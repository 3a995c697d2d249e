mod commands;
mod manifest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use commands::{CliError, Outcome};
use manifest::{unix_now, FileDigest, RunManifest};

/// Default trial counts and caps. Every value has a flag and a
/// `GRASCLUSTER_*` environment variable.
mod defaults {
    pub const RNG_SEED: u64 = 20_240_601;
    pub const TRIALS: usize = 50;
    pub const POINTS: usize = 5;
    pub const SCHUR_CASES: usize = 20;
    pub const MAX_SEEDS: usize = 100_000;
    pub const MAX_VARS: usize = 10_000;
    pub const DEPTH: usize = 12;
    pub const MAX_NODES: usize = 200_000;
}

#[derive(Parser, Serialize)]
#[command(name = "grascluster", version, about = "Cluster structures on Grassmannian coordinate rings")]
struct Cli {
    /// Worker threads for parallel checks.
    #[arg(long, global = true, env = "GRASCLUSTER_JOBS")]
    jobs: Option<usize>,
    #[arg(long, global = true, env = "GRASCLUSTER_RNG_SEED", default_value_t = defaults::RNG_SEED)]
    rng_seed: u64,
    #[arg(long, global = true, value_enum, env = "GRASCLUSTER_FORMAT", default_value = "json")]
    format: Format,
    /// Primary output file (default: stdout).
    #[arg(long, global = true, env = "GRASCLUSTER_OUT")]
    out: Option<PathBuf>,
    /// Run manifest file (default: one JSON line on stderr).
    #[arg(long, global = true, env = "GRASCLUSTER_MANIFEST")]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Write an initial seed.
    Seed(SeedArgs),
    /// Explore the exchange graph from a seed.
    Explore(ExploreArgs),
    /// Decide finite or infinite mutation type.
    Classify(ClassifyArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Serialize)]
pub struct SeedArgs {
    pub k: Option<usize>,
    pub n: Option<usize>,
    #[arg(long = "k", id = "k_flag")]
    pub k_flag: Option<usize>,
    #[arg(long = "n", id = "n_flag")]
    pub n_flag: Option<usize>,
    /// The `A_{k,n}` arrangement seed (the default).
    #[arg(long, conflicts_with = "triangulation")]
    pub akn: bool,
    /// Triangulation seed of the n-gon (k = 2).
    #[arg(long, value_enum)]
    pub triangulation: Option<Triangulation>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Triangulation {
    Fan,
    Zigzag,
}

#[derive(Args, Serialize)]
pub struct ExploreArgs {
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Seed file (overrides --k/--n).
    #[arg(long)]
    pub seed: Option<PathBuf>,
    /// Graph cache: read when present, written otherwise.
    #[arg(long, env = "GRASCLUSTER_CACHE")]
    pub cache: Option<PathBuf>,
    #[arg(long, env = "GRASCLUSTER_MAX_SEEDS", default_value_t = defaults::MAX_SEEDS)]
    pub max_seeds: usize,
    #[arg(long, env = "GRASCLUSTER_MAX_VARS", default_value_t = defaults::MAX_VARS)]
    pub max_vars: usize,
    /// Exact Laurent division on every mutation.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Args, Serialize)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<PathBuf>,
    #[arg(long, env = "GRASCLUSTER_DEPTH", default_value_t = defaults::DEPTH)]
    pub depth: usize,
    #[arg(long, env = "GRASCLUSTER_MAX_NODES", default_value_t = defaults::MAX_NODES)]
    pub max_nodes: usize,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Plucker,
    Positivity,
    Toric,
    Tables,
    Schur,
    Determinants,
}

#[derive(Args, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Table case: d4, e6 or e8.
    #[arg(long)]
    pub case: Option<String>,
    #[arg(long, env = "GRASCLUSTER_CACHE")]
    pub cache: Option<PathBuf>,
    /// Random points per identity.
    #[arg(long, env = "GRASCLUSTER_TRIALS", default_value_t = defaults::TRIALS)]
    pub trials: usize,
    /// Totally positive points for the positivity suite.
    #[arg(long, env = "GRASCLUSTER_POINTS", default_value_t = defaults::POINTS)]
    pub points: usize,
    /// Random instances for the Schur suite.
    #[arg(long, env = "GRASCLUSTER_SCHUR_CASES", default_value_t = defaults::SCHUR_CASES)]
    pub cases: usize,
    #[arg(long, env = "GRASCLUSTER_MAX_SEEDS", default_value_t = defaults::MAX_SEEDS)]
    pub max_seeds: usize,
    #[arg(long, env = "GRASCLUSTER_MAX_VARS", default_value_t = defaults::MAX_VARS)]
    pub max_vars: usize,
}

fn emit(cli: &Cli, out: &Outcome, manifest: &mut RunManifest) -> Result<(), CliError> {
    let mut bytes = match cli.format {
        Format::Json => serde_json::to_vec_pretty(&out.json).expect("json output"),
        Format::Csv => out.csv.clone().into_bytes(),
    };
    if !bytes.ends_with(b"\n") {
        bytes.push(b'\n');
    }
    match &cli.out {
        Some(p) => {
            std::fs::write(p, &bytes).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
            manifest
                .outputs
                .push(FileDigest::of_bytes(&p.display().to_string(), &bytes));
        }
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(&bytes)
                .and_then(|_| so.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
            manifest.outputs.push(FileDigest::of_bytes("<stdout>", &bytes));
        }
    }
    Ok(())
}

fn run(cli: &Cli, manifest: &mut RunManifest) -> Result<bool, CliError> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let out = match &cli.command {
        Command::Seed(a) => commands::cmd_seed(a)?,
        Command::Explore(a) => commands::cmd_explore(a, manifest)?,
        Command::Classify(a) => commands::cmd_classify(a, manifest)?,
        Command::Verify(a) => commands::cmd_verify(a, cli.rng_seed, manifest)?,
    };
    emit(cli, &out, manifest)?;
    Ok(out.passed)
}

fn write_manifest(cli: &Cli, m: &RunManifest) {
    let text = serde_json::to_string(m).expect("manifest json");
    let res = match &cli.manifest {
        Some(p) => std::fs::write(p, format!("{text}\n")),
        None => writeln!(std::io::stderr(), "{text}"),
    };
    if let Err(e) = res {
        eprintln!("grascluster: cannot write manifest: {e}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = match &cli.command {
        Command::Seed(_) => "seed",
        Command::Explore(_) => "explore",
        Command::Classify(_) => "classify",
        Command::Verify(_) => "verify",
    };
    let params = serde_json::to_value(&cli).expect("params json");
    let mut manifest = RunManifest::start(name, params, cli.rng_seed);
    let code = match run(&cli, &mut manifest) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("grascluster: {e}");
            e.exit_code()
        }
    };
    manifest.exit_code = code;
    manifest.finished_unix = unix_now();
    write_manifest(&cli, &manifest);
    ExitCode::from(code as u8)
}
