//! `germs` — invariants of normal surface singularities from their weighted
//! resolution dual graphs, plus the built-in verification sweeps.
//!
//! Exit status: 0 success (and all checks passing for `verify`); 1 a
//! computation failed or a verification suite reported failures; 2 bad
//! usage, unparseable or invalid input.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use germs::freeness::{self, FreenessProblem};
use germs::{etypes, verify};

mod doc;
mod report;

#[derive(Parser)]
#[command(
    name = "germs",
    version,
    about = "Invariants of normal surface singularity germs from weighted dual graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Plain-text report.
    #[default]
    Text,
    /// JSON with exact "p/q" rationals.
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Fundamental cycle, discrepancies, delta, mu and classification.
    Invariants {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Classification of the germ only.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The invariant mu(B, y) only.
    Mu {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Base-point-freeness test; requires a [d_data] section.
    Freeness {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a verification sweep; exits 0 only if every check passes.
    Verify {
        suite: Suite,
        /// Inclusive center-weight range for the appendix sweep.
        #[arg(long, default_value = "2..6", value_parser = parse_m_range)]
        m: MRange,
        /// Number of random cases per randomized suite.
        #[arg(long, default_value_t = 500)]
        trials: u64,
        /// Seed for the randomized suites.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// Replay the built-in exceptional-family table against the solver.
    Appendix,
    /// Determinant, sign and closed-form identities on random chains/forks.
    Continuants,
    /// Randomized bound checks: mu < 1, delta ranges, the constant c.
    Lemmas,
}

#[derive(Clone, Copy)]
struct MRange {
    lo: u32,
    hi: u32,
}

fn parse_m_range(s: &str) -> Result<MRange, String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected an inclusive range like 2..6, got '{s}'"))?;
    let lo: u32 = lo.trim().parse().map_err(|_| format!("bad range start '{lo}'"))?;
    let hi: u32 = hi.trim().parse().map_err(|_| format!("bad range end '{hi}'"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(MRange { lo, hi })
}

enum CmdError {
    /// Unreadable, unparseable or invalid input: exit 2.
    Input(doc::InputError),
    /// `freeness` without a [d_data] section: exit 2.
    MissingDData,
    /// The computation itself rejected the germ: exit 1.
    Compute(germs::Error),
    /// Writing the report failed (a closed pipe exits quietly).
    Io(io::Error),
}

impl From<doc::InputError> for CmdError {
    fn from(e: doc::InputError) -> Self {
        CmdError::Input(e)
    }
}

impl From<germs::Error> for CmdError {
    fn from(e: germs::Error) -> Self {
        CmdError::Compute(e)
    }
}

impl From<io::Error> for CmdError {
    fn from(e: io::Error) -> Self {
        CmdError::Io(e)
    }
}

fn emit<T: Serialize>(format: Format, value: &T, text: String) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        Format::Text => out.write_all(text.as_bytes())?,
        Format::Machine => {
            let json = serde_json::to_string_pretty(value).expect("report serializes");
            out.write_all(json.as_bytes())?;
            out.write_all(b"\n")?;
        }
    }
    out.flush()
}

fn run(cli: Cli) -> Result<ExitCode, CmdError> {
    match cli.command {
        Command::Invariants { file, format } => {
            let input = doc::load(&file)?;
            let rep = report::invariants(&input.graph, &input.boundary)?;
            emit(format, &rep, rep.text())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { file, format } => {
            let input = doc::load(&file)?;
            let rep = report::classify(&input.graph)?;
            emit(format, &rep, rep.text())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mu { file, format } => {
            let input = doc::load(&file)?;
            let rep = report::mu(&input.graph, &input.boundary)?;
            emit(format, &rep, rep.text())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Freeness { file, format } => {
            let input = doc::load(&file)?;
            let d = input.d_data.ok_or(CmdError::MissingDData)?;
            let problem = FreenessProblem {
                graph: input.graph,
                boundary: input.boundary,
                d_squared: d.d_squared,
                min_dc: d.min_dc,
            };
            let verdict = freeness::check_freeness(&problem)?;
            let rep = report::freeness(&verdict, d.components.curves.len());
            emit(format, &rep, rep.text(&verdict))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, m, trials, seed, format } => {
            let all_pass = match suite {
                Suite::Appendix => {
                    let rep = report::appendix(&etypes::verify_appendix(m.lo, m.hi));
                    emit(format, &rep, rep.text())?;
                    rep.all_pass
                }
                Suite::Continuants => {
                    let rep = report::suite(&verify::continuants_suite(trials, seed));
                    emit(format, &rep, rep.text())?;
                    rep.all_pass
                }
                Suite::Lemmas => {
                    let rep = report::suite(&verify::lemmas_suite(trials, seed));
                    emit(format, &rep, rep.text())?;
                    rep.all_pass
                }
            };
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CmdError::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CmdError::MissingDData) => {
            eprintln!("error: the freeness test needs a [d_data] section (at least d_squared)");
            ExitCode::from(2)
        }
        Err(CmdError::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
        Err(CmdError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CmdError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
