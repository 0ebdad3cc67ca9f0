//! `addcomb` — exact search and verification for additive combinatorics.
//!
//! Exit codes: 0 verified success, 1 input error, 2 validated negative
//! (no solution / not found / failed sweep), 3 budget exhausted.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use addcomb_cli::commands::{
    check_identity_cmd, cn_witness_cmd, find_ordering_cmd, latin_cmd, sumset_cmd, sweep_cmd,
    Global,
};
use addcomb_cli::report::{Outcome, Report};

#[derive(Parser)]
#[command(
    name = "addcomb",
    version,
    about = "Exact-arithmetic searches, identity checkers and verification sweeps \
             for additive combinatorics"
)]
struct Cli {
    /// 64-bit seed for any randomized instance generation (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cap on search nodes / evaluations; exceeding it exits with code 3.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock timing in the report (off by default so identical
    /// runs emit byte-identical reports).
    #[arg(long, global = true)]
    timing: bool,
    /// Progress notes on stderr; report bytes are unaffected.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order the sets of a family so all column sums are distinct.
    FindOrdering {
        /// Group spec, e.g. "Z/6", "Z^2", "Z x Z/4".
        #[arg(long)]
        group: Option<String>,
        /// JSON file: array of arrays of element strings "r:v1,..;t:k".
        #[arg(long)]
        sets: Option<PathBuf>,
        /// Use the even-row-count solver (last set must have odd orders).
        #[arg(long)]
        even_last_odd_order: bool,
        /// Run a built-in counterexample fixture instead (only "klein").
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Find a Latin transversal of an addition cube, subcube, cube file, or
    /// seeded random Latin cube.
    Latin {
        /// Side of the addition cube of Z/N.
        #[arg(long = "N")]
        n: Option<usize>,
        /// Three JSON index files selecting a subcube of the addition cube.
        #[arg(long, num_args = 3)]
        subcube: Option<Vec<PathBuf>>,
        /// JSON cube file (3-level nested arrays).
        #[arg(long)]
        cube: Option<PathBuf>,
        /// Generate seeded random Latin cubes of this side instead.
        #[arg(long)]
        random_cube: Option<usize>,
        /// Number of random cubes to try.
        #[arg(long)]
        trials: Option<u64>,
    },
    /// Run an identity checker on seeded random instances.
    CheckIdentity {
        /// Which identity family: 2.1, 3.1, 3.2 or 3.3.
        #[arg(long)]
        which: String,
        /// Matrix dimension (1..=4).
        #[arg(long)]
        n: usize,
        /// Number of seeded trials.
        #[arg(long, default_value_t = 10)]
        trials: u64,
    },
    /// Certify a polynomial's target coefficient and find a grid witness.
    CnWitness {
        /// Polynomial file in canonical text form (e.g. "2*x1*x2 - 1").
        #[arg(long)]
        poly: PathBuf,
        /// Grid file: {"field": p|"integers", "sets": [[..]], "target_degrees": [..]}.
        #[arg(long)]
        grid: PathBuf,
    },
    /// Run a restricted-sumset theorem on an instance file.
    Sumset {
        /// Which statement: 1.2, 1.3, 1.4, 5.1 or c5.1.
        #[arg(long)]
        theorem: String,
        /// JSON parameter bundle.
        #[arg(long)]
        params: PathBuf,
        /// Prime field modulus (field-side statements).
        #[arg(long)]
        field: Option<u64>,
    },
    /// Run a named verification sweep.
    Sweep {
        /// One of: theorem-1.1, counterexamples, corollary-1.1, identities,
        /// lemma-2.2, lemma-4.1, lemma-5.1, bounds, cross-check,
        /// engine-oracles, conjecture-probe.
        name: String,
        /// Size limit where the sweep takes one (e.g. corollary-1.1).
        #[arg(long = "N")]
        n: Option<usize>,
        /// Trial count where the sweep takes one.
        #[arg(long)]
        trials: Option<u64>,
    },
}

fn emit(report: &Report, out: Option<&PathBuf>) -> Result<(), String> {
    let text = report.to_json();
    match out {
        Some(path) => std::fs::write(path, text.as_bytes())
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // All argument problems are input errors under the exit-code
            // contract, including --help/--version style early exits.
            use clap::error::ErrorKind;
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let global = Global {
        seed: cli.seed,
        budget: cli.budget,
    };
    let started = Instant::now();
    let run = match &cli.command {
        Command::FindOrdering {
            group,
            sets,
            even_last_odd_order,
            fixture,
        } => find_ordering_cmd(
            &global,
            group.as_deref(),
            sets.as_deref(),
            *even_last_odd_order,
            fixture.as_deref(),
        ),
        Command::Latin {
            n,
            subcube,
            cube,
            random_cube,
            trials,
        } => latin_cmd(
            &global,
            *n,
            subcube.as_deref(),
            cube.as_deref(),
            *random_cube,
            *trials,
        ),
        Command::CheckIdentity { which, n, trials } => {
            check_identity_cmd(&global, which, *n, *trials)
        }
        Command::CnWitness { poly, grid } => cn_witness_cmd(&global, poly, grid),
        Command::Sumset {
            theorem,
            params,
            field,
        } => sumset_cmd(&global, theorem, params, *field),
        Command::Sweep { name, n, trials } => sweep_cmd(&global, name, *n, *trials),
    };
    match run {
        Ok((mut report, outcome)) => {
            if cli.timing {
                report.timing_ms = Some(started.elapsed().as_millis());
            }
            if let Err(msg) = emit(&report, cli.out.as_ref()) {
                eprintln!("error: {msg}");
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(Outcome::InputError.exit_code() as u8)
        }
    }
}
