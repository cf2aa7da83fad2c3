use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use mspotty::cli::{run, Command, OutputFormat, RunConfig};
use mspotty::codes::{Limits, DEFAULT_MAX_SWEEP};

/// m-spotty RT weight enumerators and MacWilliams identities over finite
/// Frobenius rings.
#[derive(Debug, Parser)]
#[command(name = "mspotty", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Ring spec, e.g. Z6, F(2,2;1,1,1), chain(2,1,2;0,1), prod(Z2,Z3)
    #[arg(long)]
    ring: Option<String>,
    /// Generator matrix file (text or JSON)
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    b: Option<usize>,
    /// Spotty parameter; overrides the matrix file header
    #[arg(long)]
    t: Option<usize>,
    /// Ring order for vtable
    #[arg(long)]
    l: Option<u64>,
    /// RT weight of the witness byte; with --k, vtable also prints S(k, j)
    #[arg(long)]
    j: Option<usize>,
    /// RT weight of the summed bytes; with --j, vtable also prints S(k, j)
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Bound on brute-force sweeps (coefficient tuples and ambient vectors)
    #[arg(long, default_value_t = DEFAULT_MAX_SWEEP)]
    max_sweep: u64,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = RunConfig {
        command: args.command,
        ring: args.ring,
        input: args.input,
        b: args.b,
        t: args.t,
        l: args.l,
        j: args.j,
        k: args.k,
        format: args.format,
        limits: Limits::with_max_sweep(args.max_sweep),
    };
    let out = run(&config);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.exit_code as u8)
}
