use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use theta_cas::{exit, run_session, Session};

#[derive(Parser)]
#[command(
    name = "theta-cas",
    about = "Theta pairings and homological algebra over graded hypersurfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a session file.
    Run {
        file: PathBuf,
        /// Also write the JSON report to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Worker threads for Gram-matrix entries.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Check a session file without running it.
    Validate { file: PathBuf },
    /// Print the version.
    Version,
}

fn read(path: &Path) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(exit::IO as u8)
    })
}

fn load(path: &Path) -> Result<Session, ExitCode> {
    let text = read(path)?;
    Session::from_json(&text).map_err(|errors| {
        for e in errors {
            eprintln!("schema error: {e}");
        }
        ExitCode::from(exit::SCHEMA as u8)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Version => {
            println!("theta-cas {}", env!("CARGO_PKG_VERSION"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { file } => load(&file).map(|_| {
            println!("ok");
            ExitCode::SUCCESS
        }),
        Command::Run { file, json, threads } => load(&file).and_then(|session| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build()
                .map_err(|e| {
                    eprintln!("error: cannot start worker threads: {e}");
                    ExitCode::from(exit::IO as u8)
                })?;
            let report = pool.install(|| run_session(&session));
            print!("{}", report.to_table());
            if let Some(path) = json {
                std::fs::write(&path, report.to_json()).map_err(|e| {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    ExitCode::from(exit::IO as u8)
                })?;
            }
            if report.status == "ok" {
                Ok(ExitCode::SUCCESS)
            } else {
                for t in report
                    .tasks
                    .iter()
                    .filter_map(|t| t.error.as_ref().map(|e| (t.index, e)))
                {
                    eprintln!("task {} failed: {} ({})", t.0, t.1.message, t.1.name);
                }
                Ok(ExitCode::from(exit::MATH as u8))
            }
        }),
    };
    result.unwrap_or_else(|code| code)
}
