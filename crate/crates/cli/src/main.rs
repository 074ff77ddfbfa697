use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quatsplit::io::{run_command, Command, Flags};

/// Differential splitting certificates for quaternion algebras over Q(t).
#[derive(Parser)]
#[command(name = "quatsplit", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build and verify a splitting certificate.
    Split(Opts),
    /// Check a certificate file.
    Verify(Opts),
    /// Show the splitting Riccati equation and its rational solutions.
    Riccati(Opts),
    /// Look for a standard pair of generators.
    Standard(Opts),
    /// Run the finite-splitting and non-splitting tests.
    Criteria(Opts),
}

#[derive(Args)]
struct Opts {
    /// Problem file (certificate JSON for `verify`).
    input: PathBuf,
    #[arg(long, default_value_t = 16)]
    n_max: u32,
    #[arg(long, default_value_t = 4)]
    degree_bound: usize,
    /// Candidate cap for searches.
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    #[arg(long)]
    json: bool,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Require both non-splitting conditions at once.
    #[arg(long)]
    conjunction: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, o) = match cli.cmd {
        Cmd::Split(o) => (Command::Split, o),
        Cmd::Verify(o) => (Command::Verify, o),
        Cmd::Riccati(o) => (Command::Riccati, o),
        Cmd::Standard(o) => (Command::Standard, o),
        Cmd::Criteria(o) => (Command::Criteria, o),
    };
    let flags = Flags {
        n_max: o.n_max,
        degree_bound: o.degree_bound,
        budget: o.budget,
        json: o.json,
        out: o.out,
        conjunction: o.conjunction,
    };
    let out = run_command(cmd, &o.input, &flags);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
