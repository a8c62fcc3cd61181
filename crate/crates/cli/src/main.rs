use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod ticks;

#[derive(Parser)]
#[command(
    name = "sfc",
    version,
    about = "Affine signal flow circuits: semantics, simulation, analysis"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a circuit file and print its sort.
    Check { file: PathBuf },
    /// Print the denotation as a canonical constraint system.
    Dsem { file: PathBuf },
    /// Exit 0 when two circuits are equivalent, 1 otherwise with a witness.
    Equiv { a: PathBuf, b: PathBuf },
    /// Simulate from an initial state.
    Sim {
        file: PathBuf,
        /// First clock (at most 0).
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        start: i64,
        /// Number of ticks.
        #[arg(long, required_unless_present = "trajectory")]
        steps: Option<usize>,
        /// Left boundary values: ticks separated by `,`, ports by `;`.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        inputs: String,
        /// Right boundary values in the same format; when absent they are solved for.
        #[arg(long, allow_hyphen_values = true)]
        outputs: Option<String>,
        /// With both boundaries given, accept when any choice of successors works.
        #[arg(long)]
        existential: bool,
        /// Check a recorded trajectory (`t: [lefts] | [rights]` per line) instead.
        #[arg(long, conflicts_with_all = ["start", "steps", "inputs", "outputs"])]
        trajectory: Option<PathBuf>,
    },
    /// Read `lefts | rights` lines from stdin and take one tick per line.
    StepRepl {
        file: PathBuf,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        start: i64,
    },
    /// Search for an input/output split making the circuit a rational affine map.
    Realisable {
        file: PathBuf,
        #[arg(long, default_value_t = sfc_core::analysis::DEFAULT_PORT_CAP)]
        cap: usize,
    },
    /// Print a context telling two inequivalent circuits apart.
    Distinguish { a: PathBuf, b: PathBuf },
    /// Check every axiom on the denotations.
    Axioms {
        /// Comma-separated scalar samples.
        #[arg(long, default_value = "1,-1,2,1/2,3", allow_hyphen_values = true)]
        samples: String,
    },
    /// Print Laurent coefficients of a fraction on `[from, to)`.
    Laurent {
        fraction: String,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
    },
    /// Print the netlist in Graphviz dot syntax.
    ExportGraph { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(cli.command, cli.json) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
