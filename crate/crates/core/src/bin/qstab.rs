use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qstab::cli::{self, Command, CubicArg, FormArg, JobSpec};

/// Eigenvalues, stability and hyperstability of quaternion matrix polynomials.
#[derive(Parser, Debug)]
#[command(name = "qstab", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Polynomial JSON file
    #[arg(long)]
    input: PathBuf,
    /// Region JSON file
    #[arg(long)]
    region: Option<PathBuf>,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Treat an open ball region as closed
    #[arg(long)]
    closed: bool,
    #[arg(long, value_enum)]
    form: Option<FormArg>,
    #[arg(long, value_enum)]
    cubic_leading: Option<CubicArg>,
    /// Report wall-clock timings
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let a = Args::parse();
    let job = JobSpec {
        command: a.command,
        input: a.input,
        region: a.region,
        samples: a.samples,
        seed: a.seed,
        closed: a.closed,
        form: a.form,
        cubic_leading: a.cubic_leading,
        timings: a.timings,
    };
    let out = cli::run(&job);
    print!("{}", out.render());
    ExitCode::from(out.code as u8)
}
