use std::path::PathBuf;
use std::process::ExitCode;

use adaseg::{GeneratorKind, Method};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod bench;
mod experiment;
mod generate;
mod input;
mod output;
mod segment;

use input::{Format, InputError, SeriesFile, Window};

#[derive(Parser)]
#[command(
    name = "adaseg",
    version,
    about = "Adaptive piecewise polynomial segmentation of time series"
)]
struct Cli {
    /// Worker threads for leave-one-out refits (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Segment one series and write the segmentation as JSON.
    Segment(SegmentArgs),
    /// Write a seeded synthetic series as headerless x,y rows.
    Generate(GenerateArgs),
    /// Compare all methods over many series and budgets.
    Experiment(ExperimentArgs),
    /// Time a method on random walks of increasing length.
    Bench(BenchArgs),
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Column layout of the input rows.
    #[arg(long, value_enum, default_value = "xy")]
    format: Format,
    /// Field delimiter (a single byte).
    #[arg(long, default_value = ",", value_parser = parse_delimiter)]
    delimiter: u8,
    /// Skip a header row.
    #[arg(long)]
    header: bool,
}

impl InputArgs {
    fn file(&self, path: PathBuf) -> SeriesFile {
        SeriesFile {
            path,
            format: self.format,
            delimiter: self.delimiter,
            header: self.header,
        }
    }
}

#[derive(Args)]
struct SegmentArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    io: InputArgs,
    #[arg(long, value_parser = parse_method, default_value = "td-adaptive")]
    method: Method,
    /// Regressor budget.
    #[arg(long)]
    k: usize,
    /// Highest polynomial degree for dp and td-adaptive.
    #[arg(long, default_value_t = 1)]
    max_degree: usize,
    /// Only segment `start:len` of the input.
    #[arg(long)]
    window: Option<Window>,
    /// JSON destination (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write x,y,model,segment_id rows here.
    #[arg(long)]
    plot_data: Option<PathBuf>,
    /// Add the leave-one-out error to the report.
    #[arg(long)]
    loo: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: GeneratorKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// CSV destination (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Whitenoise,
    Randomwalk,
    CsvDir,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Series per budget; for csv-dir, the first `trials` files.
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Comma-separated budgets.
    #[arg(long, value_delimiter = ',', default_value = "10,20,30")]
    k: Vec<usize>,
    /// Length of generated series.
    #[arg(long, default_value_t = 200)]
    n: usize,
    /// Seed of the first generated series; trial i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory of input series for the csv-dir suite.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    io: InputArgs,
    #[arg(long)]
    window: Option<Window>,
    /// Skip the leave-one-out columns.
    #[arg(long)]
    no_loo: bool,
    /// Directory for report.json, report.txt and plot_<method>.csv.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_parser = parse_method, default_value = "td-adaptive")]
    method: Method,
    /// Comma-separated ascending lengths.
    #[arg(
        long = "n",
        value_delimiter = ',',
        default_value = "100000,200000,400000"
    )]
    ns: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    k: usize,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long, default_value_t = 1)]
    max_degree: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Timing CSV destination.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: adaseg::Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<GeneratorKind, String> {
    s.parse().map_err(|e: adaseg::Error| e.to_string())
}

fn parse_delimiter(s: &str) -> Result<u8, String> {
    match s.as_bytes() {
        [b] => Ok(*b),
        _ if s == "\\t" || s == "tab" => Ok(b'\t'),
        _ => Err(format!("delimiter must be one byte, got {s:?}")),
    }
}

fn max_regressors(max_degree: usize) -> anyhow::Result<usize> {
    if max_degree > 2 {
        return Err(
            InputError::Usage(format!("--max-degree must be 0, 1 or 2, got {max_degree}")).into(),
        );
    }
    Ok(max_degree + 1)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(InputError::Usage("--threads must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    match cli.command {
        Command::Segment(a) => segment::run(a),
        Command::Generate(a) => generate::run(a),
        Command::Experiment(a) => experiment::run(a),
        Command::Bench(a) => bench::run(a),
    }
}

/// 2 for bad input, 3 for an infeasible budget, 1 for anything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<InputError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<adaseg::Error>() {
            return match e {
                adaseg::Error::InfeasibleBudget(_) => 3,
                adaseg::Error::InvalidSeries(_) | adaseg::Error::InvalidArgument(_) => 2,
                adaseg::Error::Singular { .. } => 1,
            };
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
