use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use tristate::baselines::Algorithm;
use tristate::datagen::{self, Distribution, Reorder};
use tristate::SortConfig;
use tristate_bench::grid::{first_input, run_grid, GridSpec, Preset};
use tristate_bench::{predict, record, verify};

#[derive(Parser)]
#[command(
    name = "tsq-bench",
    version,
    about = "Count-based benchmarks for Triple State Quicksort"
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Run the self-check suite; exits non-zero if any check fails.
    Verify(VerifyArgs),
    /// Print predicted average comparisons and swaps for the given sizes.
    Predict {
        #[arg(required = true)]
        sizes: Vec<u64>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "on")]
    mitigation: OnOff,
    /// Override the insertion-sort threshold of the checked configuration.
    #[arg(long)]
    insertion_threshold: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', value_parser = parse_algo)]
    algos: Option<Vec<Algorithm>>,
    /// Comma-separated distributions.
    #[arg(long, value_delimiter = ',', value_parser = parse_dist)]
    dist: Option<Vec<Distribution>>,
    /// Comma-separated reorderings.
    #[arg(long, value_delimiter = ',', value_parser = parse_reorder)]
    reorder: Option<Vec<Reorder>>,
    /// Comma-separated array sizes.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    /// Comma-separated value ranges.
    #[arg(long, value_delimiter = ',')]
    arange: Option<Vec<u32>>,
    /// Seeds per cell.
    #[arg(long)]
    seeds: Option<u32>,
    /// First seed; cell k uses seeds-base + k.
    #[arg(long, default_value_t = 1)]
    seeds_base: u32,
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,
    #[arg(long, value_enum, default_value = "on")]
    mitigation: OnOff,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Print the first cell's input as a decimal column instead of sorting.
    #[arg(long)]
    emit_input: bool,
    /// Add the two-million-element size to presets that support it.
    #[arg(long)]
    full: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    Figures,
    Adverse2m,
    RangeSweep,
    Overhead,
}

impl From<PresetArg> for Preset {
    fn from(p: PresetArg) -> Self {
        match p {
            PresetArg::Figures => Preset::Figures,
            PresetArg::Adverse2m => Preset::Adverse2m,
            PresetArg::RangeSweep => Preset::RangeSweep,
            PresetArg::Overhead => Preset::Overhead,
        }
    }
}

fn names<T: std::fmt::Display>(all: &[T]) -> String {
    all.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse()
        .map_err(|_| format!("unknown algorithm `{s}`; valid: {}", names(&Algorithm::ALL)))
}

fn parse_dist(s: &str) -> Result<Distribution, String> {
    s.parse().map_err(|_| {
        format!(
            "unknown distribution `{s}`; valid: {}",
            names(&Distribution::ALL)
        )
    })
}

fn parse_reorder(s: &str) -> Result<Reorder, String> {
    s.parse()
        .map_err(|_| format!("unknown reordering `{s}`; valid: {}", names(&Reorder::ALL)))
}

fn build_grid(a: &RunArgs) -> GridSpec {
    let mut g = match a.preset {
        Some(p) => GridSpec::preset(p.into(), a.full),
        None => GridSpec::default(),
    };
    if let Some(x) = &a.algos {
        g.algos = x.clone();
    }
    if let Some(x) = &a.dist {
        g.dists = x.clone();
    }
    if let Some(x) = &a.reorder {
        g.reorders = x.clone();
    }
    if let Some(x) = &a.n {
        g.sizes = x.clone();
    }
    if let Some(x) = &a.arange {
        g.aranges = x.clone();
    }
    if let Some(x) = a.seeds {
        g.seeds = x;
    }
    g.seeds_base = a.seeds_base;
    g.mitigation = matches!(a.mitigation, OnOff::On);
    g
}

fn output(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(a: RunArgs) -> anyhow::Result<()> {
    let grid = build_grid(&a);
    let mut out = output(&a.out)?;
    if a.emit_input {
        datagen::write_column(&mut out, &first_input(&grid)?)?;
        return Ok(());
    }
    let rows = run_grid(&grid)?;
    match a.format {
        Format::Csv => record::write_csv(&mut out, &rows)?,
        Format::Json => {
            record::write_json(&mut out, &rows)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn run_verify(a: VerifyArgs) -> bool {
    let mut config = SortConfig {
        mitigation_enabled: matches!(a.mitigation, OnOff::On),
        ..SortConfig::default()
    };
    if let Some(t) = a.insertion_threshold {
        config.insertion_threshold = t;
    }
    let report = verify::run_all(&config);
    for c in &report {
        println!(
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    report.iter().all(|c| c.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Some(Command::Verify(a)) => {
            if run_verify(a) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Some(Command::Predict { sizes }) => {
            print!("{}", predict::table(&sizes));
            ExitCode::SUCCESS
        }
        None => match run(cli.run) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
    }
}
