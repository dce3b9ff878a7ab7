//! `mfas`: feedback arc sets with certified size bounds for digraphs
//! without short directed cycles.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod io;
mod report;

#[derive(Parser)]
#[command(
    name = "mfas",
    version,
    about = "Feedback arc sets with certified size bounds for m-free digraphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a feedback arc set X with (m-2)*|X| <= gamma(G), plus a
    /// replayable certificate
    Solve {
        /// Edge-list file
        #[arg(long)]
        input: PathBuf,
        /// Forbidden cycle length bound (the input must have girth > m)
        #[arg(long)]
        m: usize,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Record wall time in the report (off by default so reports are
        /// byte-identical across runs)
        #[arg(long)]
        timings: bool,
        /// Accepted for interface uniformity; solving is single-threaded
        /// and deterministic
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Replay a report's certificate against the input graph
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        /// Report produced by `solve`
        #[arg(long)]
        report: PathBuf,
    },
    /// Exact minimum feedback arc set (small graphs)
    Exact {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Refuse inputs with more vertices than this
        #[arg(long, default_value_t = 20)]
        guard_exact: usize,
    },
    /// Per-vertex layer sizes, cut counts, denominators and ratios
    Stats {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        /// Restrict rows to one vertex
        #[arg(long)]
        vertex: Option<u32>,
    },
    /// Generate a seeded instance file
    Gen {
        /// cycle | circulant | blowup | er
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: Option<usize>,
        /// Declared girth bound the instance must respect
        #[arg(long)]
        m: usize,
        /// Circulant step list, e.g. `1,2`
        #[arg(long)]
        steps: Option<String>,
        /// Blow-up base cycle length
        #[arg(long)]
        base_len: Option<usize>,
        /// Blow-up class sizes, e.g. `2,2,2,2,2`
        #[arg(long)]
        sizes: Option<String>,
        /// Edge probability for `er`, exact rational (`3/10` or `0.3`)
        #[arg(long)]
        p: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve (and exactly check, where feasible) the built-in seeded corpus
    Bench {
        /// Restrict to these m values, e.g. `4,5`
        #[arg(long)]
        m: Option<String>,
        /// Restrict to these models, e.g. `cycle,er`
        #[arg(long)]
        models: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Run the exact oracle only up to this many vertices
        #[arg(long, default_value_t = 20)]
        guard_exact: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.cmd {
        Cmd::Solve {
            input,
            m,
            output,
            timings,
            jobs: _,
        } => commands::cmd_solve(input, *m, output.as_deref(), *timings),
        Cmd::Verify { input, m, report } => commands::cmd_verify(input, *m, report),
        Cmd::Exact {
            input,
            output,
            guard_exact,
        } => commands::cmd_exact(input, output.as_deref(), *guard_exact),
        Cmd::Stats { input, m, vertex } => commands::cmd_stats(input, *m, *vertex),
        Cmd::Gen {
            model,
            n,
            m,
            steps,
            base_len,
            sizes,
            p,
            seed,
            output,
        } => commands::cmd_gen(
            model,
            *n,
            *m,
            steps.as_ref(),
            base_len.as_ref().copied(),
            sizes.as_ref(),
            p.as_ref(),
            *seed,
            output.as_deref(),
        ),
        Cmd::Bench {
            m,
            models,
            jobs,
            guard_exact,
        } => commands::cmd_bench(m.as_ref(), models.as_ref(), *jobs, *guard_exact),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code as u8)
        }
    }
}
