//! `hecke-trace`: traces, verification suites, series and spherical
//! functions for affine Hecke algebras with unequal parameters.

mod commands;
mod config;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{parse_point, ConfigError, ConfigResult, JobConfig, Mode};

#[derive(Parser)]
#[command(name = "hecke-trace", version, about = "Exact traces on affine Hecke algebras with unequal parameters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Preset name (`A2`, `BnCn(3)`, …) or path to a root-datum JSON file.
    #[arg(long, default_value = "A1-weight")]
    datum: String,
    /// JSON object from label class index to a variable name, `"formal"`,
    /// or a rational `q` in numeric modes.
    #[arg(long)]
    labels: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "formal")]
    mode: Mode,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in root data.
    Presets {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace of θ_x by the partition formula and by direct expansion.
    Trace {
        #[command(flatten)]
        common: Common,
        /// Coordinate box radius.
        #[arg(long = "box", default_value_t = 3)]
        radius: i64,
        /// Explicit points `a,b,…` instead of the box.
        #[arg(long = "x", allow_hyphen_values = true)]
        points: Vec<String>,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Suite name; repeat for several. Defaults to every applicable suite.
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long = "box", default_value_t = 2)]
        radius: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Nonzero values of τ(θ_x) on a coordinate box.
    Series {
        #[command(flatten)]
        common: Common,
        #[arg(long = "box", default_value_t = 4)]
        radius: i64,
    },
    /// Spherical function on θ_x^+ for dominant x in a box: Macdonald's
    /// formula against the direct matrix computation.
    Spherical {
        #[command(flatten)]
        common: Common,
        #[arg(long = "box", default_value_t = 2)]
        radius: i64,
        /// Torus coordinate per basis direction: `num/den`, or `re,im` in
        /// complex mode. Drawn from `--seed` when absent.
        #[arg(long = "t", allow_hyphen_values = true)]
        t: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn configure_threads() -> ConfigResult<()> {
    if let Ok(v) = std::env::var("HECKE_TRACE_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| ConfigError(format!("HECKE_TRACE_THREADS=`{v}` is not a number")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| ConfigError(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> ConfigResult<(commands::Report, Option<PathBuf>)> {
    configure_threads()?;
    let load = |c: &Common| JobConfig::load(&c.datum, c.labels.as_deref(), c.mode);
    Ok(match cli.command {
        Command::Presets { out } => (commands::presets()?, out),
        Command::Trace { common, radius, points } => {
            let cfg = load(&common)?;
            let rank = cfg.alg.group().rank();
            let pts = points.iter().map(|p| parse_point(p, rank)).collect::<ConfigResult<Vec<_>>>()?;
            (commands::trace(&cfg, radius, &pts)?, common.out)
        }
        Command::Verify { common, suite, radius, seed } => {
            let cfg = load(&common)?;
            let (code, v) = suites::run(&cfg, &suite, radius, seed)?;
            let text = serde_json::to_string_pretty(&v).expect("serializable") + "\n";
            (commands::Report { code, text }, common.out)
        }
        Command::Series { common, radius } => {
            let cfg = load(&common)?;
            (commands::series(&cfg, radius)?, common.out)
        }
        Command::Spherical { common, radius, t, seed } => {
            let cfg = load(&common)?;
            (commands::spherical(&cfg, radius, &t, seed)?, common.out)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, out)) => {
            let written = match out {
                Some(path) => std::fs::write(&path, &report.text).map_err(|e| format!("{}: {e}", path.display())),
                None => std::io::stdout().write_all(report.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
