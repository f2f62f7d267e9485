use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kforge::commands::{self, CommandError, Lemma31Input, SolveOptions, DEFAULT_GROUP_CAP};

/// Exact Kuranishi data for finite-dimensional DGLA models: validation,
/// power-series solving, equivariance verification, Lie-algebra
/// complexification, and the complex-linearity criterion.
#[derive(Parser)]
#[command(name = "kforge", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structure axioms, metric, and action blocks of a model file.
    Validate {
        model: String,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Solve the deformation equation and print the obstruction generators.
    Solve {
        model: String,
        /// Truncation order of the power series.
        #[arg(long, default_value_t = 6)]
        order: usize,
        /// Average the metric over the model's group action first.
        #[arg(long)]
        invariant_metric: bool,
        #[arg(long)]
        json: bool,
    },
    /// Verify the equivariance identities of the solved series.
    Equivariance {
        model: String,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Complexify the model's Lie-algebra action and re-check it.
    Complexify {
        model: String,
        #[arg(long)]
        json: bool,
    },
    /// Check the complex-linearity criterion on an instance file or on
    /// seeded random instances.
    Lemma31 {
        /// Instance file with keys j, phi, m, n (row-major scalar strings).
        model: Option<String>,
        /// Generate seeded random premise-satisfying instances instead.
        #[arg(long)]
        random: bool,
        /// Real dimension (even) for random instances.
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        json: bool,
    },
}

fn group_cap() -> Result<usize, CommandError> {
    match std::env::var("KFORGE_MAX_GROUP") {
        Err(_) => Ok(DEFAULT_GROUP_CAP),
        Ok(text) => text
            .parse()
            .map_err(|_| CommandError::Parse(format!("invalid KFORGE_MAX_GROUP value {text:?}"))),
    }
}

fn run() -> Result<(kforge::Report, bool), CommandError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { model, json } => {
            Ok((commands::cmd_validate(&model, group_cap()?)?, json))
        }
        Command::Solve {
            model,
            order,
            invariant_metric,
            json,
        } => {
            let options = SolveOptions {
                order,
                invariant_metric,
                cap: group_cap()?,
            };
            Ok((commands::cmd_solve(&model, &options)?, json))
        }
        Command::Equivariance { model, order, json } => {
            Ok((commands::cmd_equivariance(&model, order, group_cap()?)?, json))
        }
        Command::Complexify { model, json } => Ok((commands::cmd_complexify(&model)?, json)),
        Command::Lemma31 {
            model,
            random,
            dim,
            seed,
            count,
            json,
        } => {
            let input = match (model, random) {
                (Some(path), false) => Lemma31Input::File(path),
                (None, true) => Lemma31Input::Random { dim, seed, count },
                (Some(_), true) => {
                    return Err(CommandError::Parse(
                        "give either an instance file or --random, not both".into(),
                    ))
                }
                (None, false) => {
                    return Err(CommandError::Parse(
                        "give an instance file or use --random".into(),
                    ))
                }
            };
            Ok((commands::cmd_lemma31(&input)?, json))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok((report, json)) => {
            print!("{}", report.render(json));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(error) => {
            eprintln!("kforge: error: {error}");
            ExitCode::from(error.exit_code() as u8)
        }
    }
}
