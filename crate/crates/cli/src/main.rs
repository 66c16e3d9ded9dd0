//! Command-line front end for the quantized two-mode EIT model.
//!
//! Exit codes: 0 all checks passed, 1 usage or configuration error,
//! 2 acceptance/validation failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lambda_eit_cli::commands::{self, Ctx, Outcome, Scale, SweepVariable};
use lambda_eit_cli::output::Format;

#[derive(Parser)]
#[command(name = "lambda-eit", version, about = "Quantized two-mode EIT: response, sweeps and oracle validation")]
struct Cli {
    /// Configuration document (TOML); required by respond, sweep, validate.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write output here instead of stdout. Relative paths resolve against
    /// LAMBDA_EIT_OUT_DIR when that variable is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Escalate soft warnings (large-n floor, detuning ratio, series regime)
    /// to hard errors.
    #[arg(long, global = true)]
    strict: bool,

    /// Worker threads for ensemble evolution. Results are identical for any
    /// value; the default of 1 keeps resource usage predictable.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute the bundled slow-light reference scenario (589 nm,
    /// detuning 1.3e6 rad/s, 40 mW/cm^2 coupling, v_g0 = 17 m/s) and compare
    /// the response against its published values.
    ReproducePaper {
        /// Relative tolerance for the reference rows.
        #[arg(long, default_value_t = 0.05)]
        tolerance: f64,
    },
    /// Single-configuration response report.
    Respond,
    /// Sweep one variable and emit plot-ready columns.
    Sweep {
        #[arg(long, value_enum)]
        variable: SweepVariable,
        #[arg(long, allow_negative_numbers = true)]
        start: f64,
        #[arg(long, allow_negative_numbers = true)]
        stop: f64,
        #[arg(long)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Scale::Linear)]
        scale: Scale,
    },
    /// Run the perturbation-vs-oracle validation suite on a configuration.
    Validate {
        /// Also dump the mean manifold's preparation trajectory here.
        #[arg(long)]
        trajectory_out: Option<PathBuf>,
    },
}

fn require_config(cli: &Cli) -> anyhow::Result<&PathBuf> {
    cli.config
        .as_ref()
        .ok_or_else(|| anyhow::anyhow!("--config <path> is required for this command"))
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let ctx = Ctx {
        format: cli.format,
        out: cli.out.clone(),
        strict: cli.strict,
        threads: cli.threads.max(1),
    };
    match &cli.command {
        Command::ReproducePaper { tolerance } => commands::reproduce_paper(&ctx, *tolerance),
        Command::Respond => commands::respond(&ctx, require_config(cli)?),
        Command::Sweep {
            variable,
            start,
            stop,
            points,
            scale,
        } => commands::sweep(&ctx, require_config(cli)?, *variable, *start, *stop, *points, *scale),
        Command::Validate { trajectory_out } => {
            commands::validate(&ctx, require_config(cli)?, trajectory_out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
