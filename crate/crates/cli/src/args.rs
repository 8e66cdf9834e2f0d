use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypermatch::{GeneratorKind, Variant};

#[derive(Parser, Debug)]
#[command(
    name = "hypermatch",
    version,
    about = "Maximal hypergraph matching with the local-max rule"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one matcher on one instance, verify and report it.
    Run(RunArgs),
    /// Run every combination of instances, variants, workers, seeds and
    /// repeats and write a CSV report.
    Bench(BenchArgs),
    /// Write a generated instance in hgr format.
    Generate(GenerateArgs),
    /// Check a matching file against an instance.
    Verify(VerifyArgs),
    /// Solve an instance exactly.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightsArg {
    /// Weights as stored in the instance (unit for unweighted files).
    File,
    Unit,
    /// Integers uniform in [1, 100], drawn from --weight-seed.
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// `.graph` and `.metis` files are METIS graphs, everything else hgr.
    Auto,
    Hgr,
    Metis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Base weight plus noise from --noise.
    Perturb,
    /// Fresh uniform (0, 1) weights every round; base weights ignored.
    Uniform,
}

/// Noise interval written `LO:HI`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Noise {
    pub low: f64,
    pub high: f64,
}

impl FromStr for Noise {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| format!("expected LO:HI, got '{s}'"))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad noise bound '{t}'"))
        };
        Ok(Noise {
            low: parse(lo)?,
            high: parse(hi)?,
        })
    }
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    #[arg(long, value_enum, default_value = "file")]
    pub weights: WeightsArg,
    #[arg(long, default_value_t = 0)]
    pub weight_seed: u64,
    /// Drop vertices no edge references instead of rejecting the file.
    #[arg(long)]
    pub drop_isolated: bool,
    #[arg(long, value_enum, default_value = "auto")]
    pub format: FormatArg,
}

#[derive(Args, Debug, Clone)]
pub struct StreamArgs {
    #[arg(long, default_value = "splitmix")]
    pub generator: GeneratorKind,
    #[arg(long, default_value = "0:100", allow_hyphen_values = true)]
    pub noise: Noise,
    #[arg(long, value_enum, default_value = "perturb")]
    pub mode: ModeArg,
    #[arg(long)]
    pub max_rounds: Option<usize>,
    /// Check that no CREW phase writes a cell twice.
    #[arg(long)]
    pub assert_crew: bool,
    #[arg(long, default_value_t = 1024)]
    pub grain: usize,
}

#[derive(Args, Debug, Clone)]
pub struct OracleOpts {
    /// Also solve exactly and report w(M) / w(opt) when the instance is small
    /// enough.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = hypermatch::oracle::EXACT_EDGE_LIMIT)]
    pub oracle_cap: usize,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// File path, `tight:d=D,eps=E` or `random:n=N,m=M,min=A,max=B,seed=S`.
    pub instance: String,
    #[arg(long, default_value = "crcw")]
    pub variant: Variant,
    /// Defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub stream: StreamArgs,
    #[command(flatten)]
    pub oracle: OracleOpts,
    /// Append the run as a CSV row (header written if the file is new).
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub emit_matching: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(required = true)]
    pub instances: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "crcw")]
    pub variants: Vec<Variant>,
    /// Defaults to the available parallelism.
    #[arg(long, value_delimiter = ',')]
    pub workers: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub seeds: Vec<u64>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub repeats: u32,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub stream: StreamArgs,
    #[command(flatten)]
    pub oracle: OracleOpts,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// `tight:d=D,eps=E` or `random:n=N,m=M,min=A,max=B,seed=S`.
    pub spec: String,
    #[arg(long, value_enum, default_value = "file")]
    pub weights: WeightsArg,
    #[arg(long, default_value_t = 0)]
    pub weight_seed: u64,
    /// Defaults to stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub instance: String,
    pub matching: PathBuf,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    pub instance: String,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = hypermatch::oracle::EXACT_EDGE_LIMIT)]
    pub cap: usize,
    #[arg(long)]
    pub emit_matching: Option<PathBuf>,
}
