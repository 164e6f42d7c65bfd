//! `arbor`: replay, generate, and verify update traces.
//!
//! Exit codes: 0 success, 1 invariant failure or verification
//! counterexample, 2 malformed trace, bad parameters, or I/O trouble.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use arbor_cli::{
    generate, replay, verify, Algo, CheckMode, ReplayConfig, ReplayError, Trace, VerifyConfig,
    Workload,
};

#[derive(Parser)]
#[command(name = "arbor", version, about = "Low out-degree orientation workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a trace file, optionally checking invariants and writing stats.
    Run {
        /// Trace file to replay.
        #[arg(long)]
        trace: PathBuf,
        /// Orientation variant.
        #[arg(long, default_value = "naive")]
        algo: Algo,
        /// Provisioned arboricity (degree bound reporting; spectrum sizing).
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        /// Degree bound trade-off parameter, must exceed 1.
        #[arg(long, default_value_t = 2.0)]
        beta: f64,
        /// Per-op checking: none, fast, or full.
        #[arg(long, default_value = "none")]
        check: CheckMode,
        /// Write the stats report here.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Generate a seeded workload trace.
    Gen {
        /// Workload kind: forest-union, sliding-window, or star-churn.
        #[arg(long)]
        kind: Workload,
        /// Output trace path.
        #[arg(long)]
        trace: PathBuf,
        /// Vertex count.
        #[arg(long)]
        n: usize,
        /// Arboricity budget (forests, window width, hub count).
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        /// Operations to emit.
        #[arg(long)]
        ops: usize,
        /// RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive and randomized differential verification.
    Verify {
        /// Exhaustive search vertex limit (at most 6).
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Exhaustive search trace length limit (at most 10).
        #[arg(long, default_value_t = 8)]
        ops: usize,
        /// Base seed for the randomized runs.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn oracle_limit() -> usize {
    match std::env::var("ARBOR_ORACLE_LIMIT") {
        Ok(raw) => raw.parse().unwrap_or_else(|_| {
            eprintln!("ignoring unparsable ARBOR_ORACLE_LIMIT `{raw}`");
            16
        }),
        Err(_) => 16,
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { trace, algo, alpha, beta, check, stats } => {
            run(trace, algo, alpha, beta, check, stats)
        }
        Command::Gen { kind, trace, n, alpha, ops, seed } => gen(kind, trace, n, alpha, ops, seed),
        Command::Verify { n, ops, seed } => run_verify(n, ops, seed),
    }
}

fn run(
    trace_path: PathBuf,
    algo: Algo,
    alpha: u32,
    beta: f64,
    check: CheckMode,
    stats: Option<PathBuf>,
) -> ExitCode {
    let text = match std::fs::read_to_string(&trace_path) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("cannot read {}: {e}", trace_path.display());
            return ExitCode::from(2);
        }
    };
    let trace = match Trace::parse(&text) {
        Ok(trace) => trace,
        Err(e) => {
            eprintln!("malformed trace {}: {e}", trace_path.display());
            return ExitCode::from(2);
        }
    };
    let config = ReplayConfig {
        algo,
        alpha,
        beta,
        check,
        oracle_limit: oracle_limit(),
        ..ReplayConfig::default()
    };
    let outcome = match replay(&trace, &config) {
        Ok(outcome) => outcome,
        Err(e @ ReplayError::Params(_)) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
        Err(e @ ReplayError::Trace { .. }) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = stats {
        if let Err(e) = std::fs::write(&path, outcome.report.render()) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match outcome.failure {
        None => {
            println!(
                "ok: {} ops, max flips {}, max out-degree {}, bound {} ({})",
                outcome.report.rows.len(),
                outcome.report.max_flips,
                outcome.report.max_out_degree,
                outcome.report.bound,
                if outcome.report.bound_satisfied { "satisfied" } else { "exceeded" },
            );
            ExitCode::SUCCESS
        }
        Some((op_index, detail)) => {
            eprintln!("invariant failure at op {op_index}: {detail}");
            ExitCode::from(1)
        }
    }
}

fn gen(
    kind: Workload,
    trace_path: PathBuf,
    n: usize,
    alpha: u32,
    ops: usize,
    seed: u64,
) -> ExitCode {
    let trace = match generate(kind, n, alpha, ops, seed) {
        Ok(trace) => trace,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = std::fs::write(&trace_path, trace.render()) {
        eprintln!("cannot write {}: {e}", trace_path.display());
        return ExitCode::from(2);
    }
    println!("wrote {} ops to {}", trace.ops.len(), trace_path.display());
    ExitCode::SUCCESS
}

fn run_verify(n: usize, ops: usize, seed: u64) -> ExitCode {
    let config = VerifyConfig { max_n: n, max_ops: ops, seed };
    let report = match verify(&config) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("invalid parameters: {e}");
            return ExitCode::from(2);
        }
    };
    for line in &report.lines {
        println!("{line}");
    }
    if report.clean() {
        println!("verify: clean");
        ExitCode::SUCCESS
    } else {
        for failure in &report.failures {
            eprintln!("counterexample: {failure}");
        }
        ExitCode::from(1)
    }
}
