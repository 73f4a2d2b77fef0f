//! `cdk`: command-line driver for the proof-term kernel.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cdkernel::cli::{self, NormalizeOptions, Outcome, Status, FUEL_ENV};
use cdkernel::generate::GenConfig;
use cdkernel::selftest::{self, Options};

#[derive(Parser)]
#[command(
    name = "cdk",
    version,
    about = "Proof terms for intuitionistic logic of constant domains"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Type-check every definition of a file.
    Check { file: PathBuf },
    /// Normalize definitions (those named by #normalize, or all of them).
    Normalize {
        file: PathBuf,
        #[arg(long)]
        fuel: Option<usize>,
        /// Print every intermediate term.
        #[arg(long)]
        trace: bool,
        /// Emit traces as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Replace every D by its IL⊥ translation and print the resulting file.
    Translate {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Normalize, then extract witnesses, disjuncts and universal bodies.
    Extract {
        file: PathBuf,
        #[arg(long)]
        fuel: Option<usize>,
    },
    /// Run the invariant suite over every .cd file of a directory.
    Selftest {
        dir: PathBuf,
        /// Number of random terms to add to the sweep.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        fuel: Option<usize>,
        /// Process jobs on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
}

fn read(path: &Path) -> Result<(String, String), Outcome> {
    let name = path.display().to_string();
    match std::fs::read_to_string(path) {
        Ok(text) => Ok((name, text)),
        Err(e) => Err(Outcome {
            stdout: String::new(),
            stderr: format!("{name}: {e}\n"),
            status: Status::ParseError,
        }),
    }
}

fn run(args: Args) -> Outcome {
    let env = std::env::var(FUEL_ENV).ok();
    let fuel = |requested| cli::effective_fuel(requested, env.as_deref());
    let file_command = |path: &Path, f: &dyn Fn(&str, &str) -> Outcome| match read(path) {
        Ok((name, text)) => f(&name, &text),
        Err(o) => o,
    };
    match args.command {
        Command::Check { file } => file_command(&file, &cli::run_check),
        Command::Normalize {
            file,
            fuel: n,
            trace,
            json,
        } => {
            let opts = NormalizeOptions {
                fuel: fuel(n),
                trace,
                json,
            };
            file_command(&file, &|name, text| cli::run_normalize(name, text, opts))
        }
        Command::Translate { file, output } => {
            let mut out = file_command(&file, &cli::run_translate);
            if let (Some(path), Status::Ok | Status::TypeError) = (output, out.status) {
                if let Err(e) = std::fs::write(&path, &out.stdout) {
                    out.stderr.push_str(&format!("{}: {e}\n", path.display()));
                    out.status = Status::TypeError;
                }
                out.stdout.clear();
            }
            out
        }
        Command::Extract { file, fuel: n } => {
            let fuel = fuel(n);
            file_command(&file, &|name, text| cli::run_extract(name, text, fuel))
        }
        Command::Selftest {
            dir,
            random,
            seed,
            fuel: n,
            sequential,
        } => {
            let opts = Options {
                fuel: fuel(n),
                ..Options::default()
            };
            let mut report = match selftest::run_corpus(&dir, &opts) {
                Ok(r) => r,
                Err(e) => {
                    return Outcome {
                        stdout: String::new(),
                        stderr: format!("{}: {e}\n", dir.display()),
                        status: Status::ParseError,
                    }
                }
            };
            if random > 0 {
                report.merge(selftest::run_random(
                    seed,
                    random,
                    &GenConfig::default(),
                    &opts,
                    !sequential,
                ));
            }
            let failed_parse = report.failed(selftest::Check::Parse) > 0;
            Outcome {
                stdout: report.to_string(),
                stderr: String::new(),
                status: match (report.ok(), failed_parse) {
                    (true, _) => Status::Ok,
                    (false, true) => Status::ParseError,
                    (false, false) => Status::TypeError,
                },
            }
        }
    }
}

fn main() -> ExitCode {
    let out = run(Args::parse());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.status as u8)
}
