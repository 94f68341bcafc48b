use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qls::config::{Config, OutputFormat};
use qls::crystal::{closure, run_suite, Suite};
use qls::io;
use qls::qbg::Qbg;
use qls::qls::{RationalPath, ShapeData, Variant};
use qls::Error;

#[derive(Parser)]
#[command(name = "qls", version, about = "Quantum LS paths, quantum Bruhat graphs and their crystals")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Cartan type such as A2, C3 or G2.
    #[arg(long = "type", global = true)]
    cartan_type: Option<String>,
    /// Comma-separated fundamental-weight coordinates.
    #[arg(long, global = true)]
    weight: Option<String>,
    /// Comma-separated parabolic indices, for `qbg`.
    #[arg(long, global = true)]
    parabolic: Option<String>,
    /// json, dot or text.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Node cap for enumeration and closure; overrides QLS_NODE_CAP.
    #[arg(long, global = true)]
    node_cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the parabolic quantum Bruhat graph.
    Qbg,
    /// List all quantum LS paths of the shape.
    Enumerate {
        #[arg(long, default_value = "tilde")]
        variant: String,
    },
    /// Apply a root operator to a path given as JSON.
    Apply {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        index: usize,
        #[arg(long)]
        path: String,
    },
    /// Build the crystal graph generated from the straight-line path.
    Crystal,
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Factor for the scaling and concatenation suites.
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    E,
    F,
}

enum Failure {
    Usage(Error),
    Compute(Error),
}

fn usage<T>(r: qls::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

fn compute<T>(r: qls::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Compute)
}

/// Output text and whether the run counts as a success.
fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let c = &cli.common;
    let cartan_type = c
        .cartan_type
        .as_deref()
        .ok_or_else(|| Failure::Usage(Error::Parse("--type is required".into())))?;
    let cfg = usage(Config::new(
        cartan_type,
        c.weight.as_deref(),
        c.parabolic.as_deref(),
        c.node_cap,
        &c.format,
    ))?;
    match cli.command {
        Command::Qbg => {
            let rs = usage(qls::rootsys::RootSystem::new(cfg.cartan_type))?;
            let g = compute(Qbg::build(&std::sync::Arc::new(rs), &cfg.parabolic_set()))?;
            let out = match cfg.output_format {
                OutputFormat::Json => io::qbg_to_json(&g) + "\n",
                OutputFormat::Dot => io::qbg_to_dot(&g),
                OutputFormat::Text => io::qbg_to_text(&g),
            };
            Ok((out, true))
        }
        Command::Enumerate { variant } => {
            let variant: Variant = usage(variant.parse())?;
            let shape = usage(cfg.shape())?;
            let paths = compute(shape.enumerate(variant, cfg.node_cap))?;
            Ok((render_paths(&paths, cfg.output_format)?, true))
        }
        Command::Apply { op, index, path } => {
            let shape = usage(cfg.shape())?;
            let rank = shape.root_system().rank();
            if index > rank {
                return Err(Failure::Usage(Error::IndexOutOfRange { index, rank }));
            }
            let eta = usage(io::path_from_json(shape.root_system(), &path))?;
            let result = compute(apply(&shape, op, index, &eta))?;
            let out = match (result, cfg.output_format) {
                (None, _) => "null\n".to_string(),
                (Some(p), OutputFormat::Text) => format!("{p}\n"),
                (Some(p), _) => io::path_to_json(&p) + "\n",
            };
            Ok((out, true))
        }
        Command::Crystal => {
            let shape = usage(cfg.shape())?;
            let g = compute(closure(&shape, cfg.node_cap, None))?;
            let out = match cfg.output_format {
                OutputFormat::Json => io::crystal_to_json(&shape, &g) + "\n",
                OutputFormat::Dot => io::crystal_to_dot(&g),
                OutputFormat::Text => io::crystal_to_text(&g),
            };
            Ok((out, true))
        }
        Command::Verify { suite, n } => {
            let suite: Suite = usage(suite.parse())?;
            if n == 0 {
                return Err(Failure::Usage(Error::Parse("--n must be positive".into())));
            }
            let shape = usage(cfg.shape())?;
            let reports = run_suite(&shape, suite, n, cfg.node_cap);
            let passed = reports.iter().all(|r| r.passed);
            let out = serde_json::to_string_pretty(&reports).expect("serializable") + "\n";
            Ok((out, passed))
        }
    }
}

fn apply(shape: &ShapeData, op: Op, j: usize, eta: &RationalPath) -> qls::Result<Option<RationalPath>> {
    match op {
        Op::F => shape.combinatorial_f(eta, j),
        Op::E => shape.e_on_rational(eta, j),
    }
}

fn render_paths(paths: &[RationalPath], format: OutputFormat) -> Result<String, Failure> {
    match format {
        OutputFormat::Json => Ok(io::paths_to_json(paths) + "\n"),
        OutputFormat::Text => Ok(paths.iter().map(|p| format!("{p}\n")).collect()),
        OutputFormat::Dot => Err(Failure::Usage(Error::Parse("dot output is only available for graphs".into()))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, passed)) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(e)) => {
            eprintln!("qls: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            println!("{}", serde_json::json!({ "error": e.to_string() }));
            eprintln!("qls: {e}");
            ExitCode::from(1)
        }
    }
}
