//! `tdroute`: fastest paths on graphs with time-dependent edge costs.

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use tdroute_cli::commands::{self, BenchArgs, CheckFifoArgs, ExpandArgs, RouteArgs};

#[derive(Parser)]
#[command(
    name = "tdroute",
    about = "Routing engine for directed graphs with time-dependent travel times",
    long_about = "Routing engine for directed graphs with time-dependent travel times.\n\
        Exit codes: 0 success, 1 usage or parse error, 2 unreachable,\n\
        3 FIFO violation, 4 truncated expansion.\n\
        TDROUTE_HORIZON overrides the default expansion horizon."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a route or a distance/arrival table.
    Route(RouteArgs),
    /// Check edges for the FIFO property; prints witnesses.
    CheckFifo(CheckFifoArgs),
    /// Expand the reachable (node, time) states from a start state.
    Expand(ExpandArgs),
    /// Deterministic micro-benchmarks over generated instances.
    Bench(BenchArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not usage errors.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => commands::EXIT_USAGE as u8,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = match cli.command {
        Command::Route(args) => commands::route(&args),
        Command::CheckFifo(args) => commands::check_fifo(&args),
        Command::Expand(args) => commands::expand(&args),
        Command::Bench(args) => commands::bench(&args),
    };
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
