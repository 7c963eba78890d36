//! `cagv`: generalised GV invariants of cA_n crepant partial resolutions.

mod commands;
mod error;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use error::CliError;
use input::{Format, Job, Mode, Options, QInput, Settings};

#[derive(Parser, Debug)]
#[command(
    name = "cagv",
    version,
    about = "Generalised GV invariants of cA_n crepant partial resolutions"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Truncation degree for realised flags and capped mode (default 64).
    #[arg(long, global = true)]
    trunc: Option<u32>,
    /// How h-polynomials are computed.
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// Seed for sampling and witness searches (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Degree guard for exact mode (default 100000).
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Job document; standard input when absent or `-`.
    input: Option<PathBuf>,
    /// Inline flag: germs separated by `;`, each a single factor.
    #[arg(long, conflicts_with = "input")]
    flag: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// N, GV and Toda tables of a flag or potential.
    Invariants(Input),
    /// Flop curve `index` and check covariance of the tables.
    Flop {
        index: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Contract every curve outside `--keep`.
    Contract {
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Reverse the flag.
    Reflect(Input),
    /// Realise a potential as a flag and compare both routes.
    Potential(Input),
    /// Predicted against computed N_st for a potential.
    Predict(Input),
    /// Sample maps with prescribed q values and test the obstruction bound.
    CheckQ {
        /// Comma-separated q values on a chain, e.g. `1,3` or `2,inf`.
        #[arg(long, value_delimiter = ',', conflicts_with = "input")]
        q: Option<Vec<String>>,
        /// Number of samples (default 50).
        #[arg(long)]
        samples: Option<usize>,
        input: Option<PathBuf>,
    },
    /// Classify a cA_2 table (N11, N22, N12) and build a witness.
    CheckCa2 {
        #[arg(long, value_delimiter = ',', conflicts_with = "input")]
        triple: Option<Vec<String>>,
        input: Option<PathBuf>,
    },
    /// Quick internal consistency checks.
    Selftest,
}

fn load(input: &Input) -> Result<(Job, Options), CliError> {
    match &input.flag {
        Some(list) => Ok((Job::Flag(input::flag_from_list(list)?), Options::default())),
        None => input::read_document(input.input.as_deref()),
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let flags = Options {
        format: cli.format,
        trunc: cli.trunc,
        mode: cli.mode,
        seed: cli.seed,
        max_degree: cli.max_degree,
        samples: None,
    };
    let (job, doc_opts, flags) = match &cli.command {
        Command::Invariants(i)
        | Command::Flop { input: i, .. }
        | Command::Contract { input: i, .. }
        | Command::Reflect(i)
        | Command::Potential(i)
        | Command::Predict(i) => {
            let (job, o) = load(i)?;
            (Some(job), o, flags)
        }
        Command::CheckQ { q, samples, input } => {
            let flags = Options {
                samples: *samples,
                ..flags
            };
            match q {
                Some(q) => {
                    let q = input::counts_from_list("--q", q)?;
                    (
                        Some(Job::QSpec(QInput::Q {
                            n: None,
                            s: None,
                            t: None,
                            q,
                        })),
                        Options::default(),
                        flags,
                    )
                }
                None => {
                    let (job, o) = input::read_document(input.as_deref())?;
                    (Some(job), o, flags)
                }
            }
        }
        Command::CheckCa2 { triple, input } => match triple {
            Some(t) => match input::counts_from_list("--triple", t)?[..] {
                [a, b, c] => (
                    Some(Job::QSpec(QInput::Triple(a, b, c))),
                    Options::default(),
                    flags,
                ),
                _ => return Err(CliError::Parse("--triple takes three values".into())),
            },
            None => {
                let (job, o) = input::read_document(input.as_deref())?;
                (Some(job), o, flags)
            }
        },
        Command::Selftest => (None, Options::default(), flags),
    };
    let settings = Settings::resolve(&flags.or(&doc_opts))?;
    let report = match (&cli.command, &job) {
        (Command::Invariants(_), Some(job)) => commands::invariants(job, &settings)?,
        (Command::Flop { index, .. }, Some(job)) => commands::flop(job, &settings, *index)?,
        (Command::Contract { keep, .. }, Some(job)) => commands::contract(job, &settings, keep)?,
        (Command::Reflect(_), Some(job)) => commands::reflect(job, &settings)?,
        (Command::Potential(_), Some(job)) => commands::potential(job, &settings)?,
        (Command::Predict(_), Some(job)) => commands::predict(job, &settings)?,
        (Command::CheckQ { .. }, Some(Job::QSpec(q))) => {
            commands::check_q(&commands::qspec_of(q)?, &settings)?
        }
        (Command::CheckCa2 { .. }, Some(Job::QSpec(q))) => {
            let triple = match q {
                QInput::Triple(a, b, c) => (*a, *b, *c),
                QInput::Q { q, .. } if q.len() == 3 => (q[0], q[1], q[2]),
                _ => {
                    return Err(CliError::Semantic(
                        "check-ca2 needs a triple (N11, N22, N12)".into(),
                    ))
                }
            };
            commands::check_ca2(triple, &settings)?
        }
        (Command::Selftest, _) => commands::selftest()?,
        (_, Some(job)) => {
            return Err(CliError::Semantic(format!(
                "this command does not take a {} document",
                job.kind()
            )))
        }
        (_, None) => unreachable!("every other command loads a job"),
    };
    Ok(report.render(settings.format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("cagv: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
