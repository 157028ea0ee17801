use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};

use mayerfield_cli::commands::{
    all_checks, caratheodory, fresnel, inversion, lattice, slits, CommandOutput,
};
use mayerfield_cli::config::RunConfig;
use mayerfield_cli::output::write_all;

#[derive(Parser)]
#[command(
    name = "mayerfield",
    version,
    about = "Trajectory, lattice and propagation checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Config file of `section.key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override one key, e.g. `--set slits.a=0`. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Overrides `seeding.rng_seed`.
    #[arg(long, global = true)]
    rng_seed: Option<u64>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Two-slit trajectories, screen density and equivariance.
    Slits,
    /// Plane-wave residuals and kappa estimators on periodic lattices.
    LatticeVerify,
    /// Fundamental equations for the free particle.
    Caratheodory,
    /// Determinant identity and velocity recovery from a current.
    InvertCurrent,
    /// Direct Fresnel propagation against the analytic beam.
    Fresnel,
    /// Every acceptance criterion; exits nonzero if any fails.
    AllChecks,
}

fn load_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        cfg.apply_text(&text)?;
    }
    for a in &cli.overrides {
        cfg.apply_assignment(a)?;
    }
    if let Some(seed) = cli.rng_seed {
        cfg.set("seeding.rng_seed", &seed.to_string())?;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let cfg = load_config(cli)?;
    let start = Instant::now();
    let (artifacts, lines, passed) = match cli.command {
        Command::AllChecks => {
            let report = all_checks::run(&cfg)?;
            for c in &report.criteria {
                if let Some(l) = c.runtime_line() {
                    eprintln!("{l}");
                }
            }
            let lines = report.criteria.iter().map(|c| c.line()).collect();
            let passed = report.passed();
            (report.artifacts, lines, passed)
        }
        single => {
            let out: CommandOutput = match single {
                Command::Slits => slits::run(&cfg)?,
                Command::LatticeVerify => lattice::run(&cfg)?,
                Command::Caratheodory => caratheodory::run(&cfg)?,
                Command::InvertCurrent => inversion::run(&cfg)?,
                Command::Fresnel => fresnel::run(&cfg)?,
                Command::AllChecks => unreachable!(),
            };
            let passed = out.passed();
            (
                out.artifacts,
                out.checks.iter().map(|c| c.line()).collect::<Vec<_>>(),
                passed,
            )
        }
    };
    write_all(&cli.out, &artifacts).with_context(|| format!("writing to {}", cli.out.display()))?;
    for l in lines {
        println!("{l}");
    }
    eprintln!("runtime {:.2} s", start.elapsed().as_secs_f64());
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
