//! `gb2kit`: fit GB2-family distributions to a CSV column, compute
//! inequality indices, estimate power-law tails and simulate the
//! mean-reverting SDEs with GB2-family steady states.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

mod commands;
mod error;
mod ingest;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gb2kit::parallel::THREADS_ENV;
use gb2kit::{DistributionSpec, Family, SdeConfig};

use commands::{Deflation, Format};
use error::CliError;
use ingest::{ColumnRef, IngestOptions};

#[derive(Debug, Parser)]
#[command(
    name = "gb2kit",
    version,
    about = "GB2-family fitting and inequality indices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit distribution families by maximum likelihood and report KS,
    /// moments and inequality indices, best fit first.
    Fit {
        #[command(flatten)]
        input: Input,
        /// Families to fit (comma separated).
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "GB2,BP,GIGa,IGa,GGa,Ga,LN"
        )]
        families: Vec<Family>,
        /// Remove this fraction of the largest values before fitting.
        #[arg(long, value_name = "F")]
        tail_cut: Option<f64>,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// CSV in the column order type, parameters, KS, Mean, RMS, Gini,
        /// Hoover, Theil T, Theil L, DMMS, SD.
        #[arg(long)]
        csv: bool,
    },
    /// Inequality indices of a distribution (closed form) or of data.
    Indices {
        /// Distribution as JSON, inline or a file path, e.g.
        /// '{"family":"BP","p":1,"q":2,"beta":1}'.
        #[arg(long, conflicts_with = "path", required_unless_present = "path")]
        spec: Option<String>,
        #[command(flatten)]
        input: OptionalInput,
        #[arg(long)]
        json: bool,
    },
    /// Least-squares slope of the log survival function over the upper tail.
    Tailfit {
        #[command(flatten)]
        input: Input,
        /// Fraction of the largest values forming the tail window [default: 0.1].
        #[arg(long, value_name = "F", conflicts_with = "preset")]
        fraction: Option<f64>,
        /// Wider windows: `wide` is the top 20%, `wider` the top 30%.
        #[arg(long)]
        preset: Option<Preset>,
        /// Number of largest values left out of the regression [default: 3].
        #[arg(long, value_name = "K")]
        exclude: Option<usize>,
        /// Also write the (x, survival) points of the window to this CSV.
        #[arg(long, value_name = "FILE")]
        series: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Simulate the SDE and write pooled samples as a one-column CSV.
    Simulate {
        /// SDE configuration as JSON, inline or a file path.
        #[arg(long)]
        config: String,
        #[arg(long)]
        seed: u64,
        /// Number of samples.
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'o', long = "output", value_name = "CSV")]
        output: String,
        #[arg(long)]
        json: bool,
    },
    /// DMMS of a distribution with the density peak and half-height width.
    Dmms {
        /// Distribution as JSON, inline or a file path.
        #[arg(long)]
        spec: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Preset {
    Wide,
    Wider,
}

impl Preset {
    fn fraction(self) -> f64 {
        match self {
            Preset::Wide => 0.2,
            Preset::Wider => 0.3,
        }
    }
}

#[derive(Debug, Args)]
struct ReadOptions {
    /// Value column, by header name or 0-based index.
    #[arg(long, default_value = "0")]
    column: ColumnRef,
    /// Treat the first row as data.
    #[arg(long)]
    no_header: bool,
    /// Skip non-numeric values (counted on stderr) instead of failing.
    #[arg(long)]
    skip_invalid: bool,
    /// CSV of `year,index` price-index values to deflate with.
    #[arg(long, value_name = "CSV", requires_all = ["base_year", "year_column"])]
    deflator: Option<String>,
    /// Year whose money the values are converted to.
    #[arg(long, value_name = "YEAR", requires = "deflator")]
    base_year: Option<i32>,
    /// Column holding each observation's year.
    #[arg(long, value_name = "COLUMN", requires = "deflator")]
    year_column: Option<ColumnRef>,
}

#[derive(Debug, Args)]
struct Input {
    /// CSV file with the data.
    path: String,
    #[command(flatten)]
    read: ReadOptions,
}

#[derive(Debug, Args)]
struct OptionalInput {
    /// CSV file with the data.
    path: Option<String>,
    #[command(flatten)]
    read: ReadOptions,
}

impl ReadOptions {
    fn load(&self, path: &str) -> Result<gb2kit::Sample, CliError> {
        let options = IngestOptions {
            column: self.column.clone(),
            year_column: self.year_column.clone(),
            no_header: self.no_header,
            skip_invalid: self.skip_invalid,
        };
        let deflation = self.deflator.as_ref().map(|series| Deflation {
            series: series.clone(),
            base: self.base_year.expect("clap enforces --base-year"),
        });
        commands::load_sample(path, &options, deflation.as_ref())
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Fit {
            input,
            families,
            tail_cut,
            json,
            csv,
        } => {
            let format = if json {
                Format::Json
            } else if csv {
                Format::Csv
            } else {
                Format::Text
            };
            let sample = input.read.load(&input.path)?;
            commands::run_fit(sample, &families, tail_cut, format)
        }
        Command::Indices { spec, input, json } => match (spec, input.path) {
            (Some(spec), _) => {
                commands::run_indices_spec(&commands::json_arg::<DistributionSpec>(&spec)?, json)
            }
            (None, Some(path)) => commands::run_indices_sample(&input.read.load(&path)?, json),
            (None, None) => unreachable!("clap requires --spec or a path"),
        },
        Command::Tailfit {
            input,
            fraction,
            preset,
            exclude,
            series,
            json,
        } => {
            let sample = input.read.load(&input.path)?;
            let fraction = fraction.or(preset.map(Preset::fraction));
            commands::run_tailfit(&sample, fraction, exclude, json, series.as_deref())
        }
        Command::Simulate {
            config,
            seed,
            n,
            output,
            json,
        } => commands::run_simulate(
            &commands::json_arg::<SdeConfig>(&config)?,
            seed,
            n,
            &output,
            json,
        ),
        Command::Dmms { spec, json } => {
            commands::run_dmms(&commands::json_arg::<DistributionSpec>(&spec)?, json)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        if !raw.trim().parse::<usize>().is_ok_and(|n| n > 0) {
            eprintln!("warning: ignoring {THREADS_ENV}={raw:?}, expected a positive integer");
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
