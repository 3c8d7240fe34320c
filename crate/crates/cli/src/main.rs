use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use yolkkit::yolk::YolkOptions;

mod certify;
mod error;
mod generate;
mod montecarlo;
mod plot;
mod points;
mod report;
mod sweep;

use error::CliError;
use report::{analyze, write_output, RunResult};

#[derive(Parser, Debug)]
#[command(name = "yolkkit", version, about = "Yolks and LP yolks of planar electorates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directions within this relative distance of the maximum count as tangent.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long = "max-iter", global = true, default_value_t = 100_000)]
    pub max_iter: usize,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Leave wall-clock timings out so output is byte-stable.
    #[arg(long = "no-timings", global = true)]
    pub no_timings: bool,
}

impl Global {
    fn yolk_options(&self) -> Result<YolkOptions, CliError> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(CliError::Usage(format!("--tol must lie in (0, 1), got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(CliError::Usage("--max-iter must be positive".into()));
        }
        Ok(YolkOptions {
            max_iter: self.max_iter,
            tangent_tol: self.tol,
            ..YolkOptions::default()
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Yolk, LP yolk, ratio and certificate for a points file.
    Compute { input: PathBuf },
    /// Write a points file for one of the known families.
    Generate(generate::GenerateArgs),
    /// Ratio table over a parameter grid.
    Sweep(sweep::SweepArgs),
    /// Ratio statistics over random electorates.
    Montecarlo(montecarlo::MonteCarloArgs),
    /// SVG picture of an instance.
    Plot { input: PathBuf },
    /// Tangent lines, covering support and canonical angles.
    Certify { input: PathBuf },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("YOLKKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("YOLKKIT_THREADS must be a count, got {v:?}")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Failed(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    configure_threads()?;
    let g = &cli.global;
    let opts = g.yolk_options()?;
    let out = g.out.as_deref();
    match &cli.command {
        Command::Compute { input } => {
            let e = points::read_points(input)?;
            let a = analyze(&e, &opts)?;
            let r = RunResult::new(&e, points::digest(&e), &a, !g.no_timings);
            let text = match g.format.unwrap_or(Format::Json) {
                Format::Json => report::json(&r)?,
                Format::Csv => r.to_csv()?,
            };
            write_output(&text, out)?;
            Ok(0)
        }
        Command::Generate(args) => {
            generate::run(args, g)?;
            Ok(0)
        }
        Command::Sweep(args) => {
            let text = sweep::run(args, &opts, g.format.unwrap_or(Format::Csv))?;
            write_output(&text, out)?;
            Ok(0)
        }
        Command::Montecarlo(args) => {
            let (text, bound_holds) = montecarlo::run(args, g.seed, &opts, !g.no_timings)?;
            write_output(&text, out)?;
            if bound_holds {
                Ok(0)
            } else {
                eprintln!("yolkkit: odd electorate with ratio below 1/2");
                Ok(1)
            }
        }
        Command::Plot { input } => {
            let e = points::read_points(input)?;
            write_output(&plot::render(&e, &opts)?, out)?;
            Ok(0)
        }
        Command::Certify { input } => {
            let e = points::read_points(input)?;
            let (text, covered) = certify::run(&e, &opts, g.format.unwrap_or(Format::Json))?;
            write_output(&text, out)?;
            if covered {
                Ok(0)
            } else {
                eprintln!("yolkkit: tangent set does not cover every hemisphere");
                Ok(1)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("yolkkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
