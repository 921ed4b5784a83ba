//! Command-line front end for the 1-loop and torsion polynomial pipeline.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{JobConfig, Outcome};

#[derive(Debug, Parser)]
#[command(
    name = "fibertorsion",
    version,
    about = "1-loop and torsion polynomials of layered triangulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the layered triangulation and its Ptolemy and face equations.
    Build {
        #[arg(long)]
        monodromy: PathBuf,
        /// `trivial`, or a sign or cocycle file.
        #[arg(long, default_value = "trivial")]
        obstruction: String,
    },
    /// Check that a solution closes up around the monodromy.
    Verify {
        #[arg(long)]
        monodromy: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long, default_value = "trivial")]
        obstruction: String,
        #[arg(long)]
        json: bool,
    },
    /// Compute the selected polynomials of a verified solution.
    Invariants {
        #[arg(long)]
        monodromy: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long, default_value = "trivial")]
        obstruction: String,
        #[arg(long, value_enum, default_value_t = NChoice::Both)]
        n: NChoice,
        #[arg(long, value_enum, default_value_t = MethodChoice::Both)]
        method: MethodChoice,
        #[arg(long)]
        json: bool,
    },
    /// Run the embedded m036 fixtures end to end and check the known polynomials.
    Demo {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NChoice {
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    Both,
}

impl NChoice {
    fn values(self) -> Vec<u32> {
        match self {
            NChoice::Two => vec![2],
            NChoice::Three => vec![3],
            NChoice::Both => vec![2, 3],
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodChoice {
    Full,
    Reduced,
    Both,
}

impl MethodChoice {
    fn values(self) -> Vec<fibertorsion::Method> {
        use fibertorsion::Method::*;
        match self {
            MethodChoice::Full => vec![FullMatrix],
            MethodChoice::Reduced => vec![ReducedJacobian],
            MethodChoice::Both => vec![FullMatrix, ReducedJacobian],
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<(Outcome, bool)> {
    Ok(match cli.command {
        Command::Build {
            monodromy,
            obstruction,
        } => (commands::build(&monodromy, &obstruction)?, false),
        Command::Verify {
            monodromy,
            solution,
            obstruction,
            json,
        } => (commands::verify(&monodromy, &solution, &obstruction)?, json),
        Command::Invariants {
            monodromy,
            solution,
            obstruction,
            n,
            method,
            json,
        } => {
            let config = JobConfig {
                monodromy,
                solution,
                obstruction,
                n: n.values(),
                methods: method.values(),
            };
            (commands::invariants(&config)?, json)
        }
        Command::Demo { json } => (commands::demo()?, json),
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((outcome, json)) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.json).expect("json values serialize")
                );
            } else {
                print!("{}", outcome.text);
            }
            for failure in &outcome.failures {
                eprintln!("check failed: {failure}");
            }
            if outcome.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
