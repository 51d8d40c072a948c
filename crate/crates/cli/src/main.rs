//! Command-line driver: build the graphlet atlas, precompute conversion
//! matrices, generate per-vertex net frequency maps, verify against the
//! brute-force reference, and export the inclusion lattice.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure, 3 I/O error.

mod cache;
mod commands;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gsurf", version, about = "Per-vertex graphlet frequency maps")]
struct Cli {
    /// Cap the worker thread count (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate graphlet families and print their sizes.
    Atlas {
        /// Largest family (node count), at most 8.
        #[arg(long, default_value_t = 5)]
        max: u8,
        /// Write the atlas export here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build, verify, and serialize the conversion matrices.
    Matrices {
        #[arg(long, default_value_t = 5)]
        t: u8,
        /// orbit | hatted
        #[arg(long, default_value = "orbit")]
        mode: String,
        /// Output directory (defaults to the matrix cache).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count graphlet frequencies on a source graph.
    Count {
        #[arg(long)]
        input: PathBuf,
        /// edgelist | mtx | auto (by extension)
        #[arg(long, default_value = "auto")]
        format: String,
        #[arg(long, default_value_t = 5)]
        t: u8,
        /// Disable the zero filters.
        #[arg(long)]
        no_filters: bool,
        /// Disable the reduced systems.
        #[arg(long)]
        no_reduced: bool,
        /// Write the frequency map as CSV here (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the columnar JSON variant.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write run statistics as JSON.
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Aggregate orbit channels into per-pattern counts on output.
        #[arg(long)]
        hatted: bool,
        /// Run on a breadth-first sample of this many vertices.
        #[arg(long)]
        sample_bfs: Option<usize>,
        /// Reject inputs that need normalization instead of fixing them.
        #[arg(long)]
        strict: bool,
    },
    /// Compare engine output against the brute-force reference.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "auto")]
        format: String,
        #[arg(long, default_value_t = 5)]
        t: u8,
        /// Subset-enumeration budget for the reference.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        /// Write the reference counts as CSV (same schema, tagged oracle).
        #[arg(long)]
        dump_reference: Option<PathBuf>,
    },
    /// Export the graphlet inclusion lattice as a DOT file.
    Hasse {
        #[arg(long, default_value_t = 5)]
        t: u8,
        /// orbit | hatted
        #[arg(long, default_value = "orbit")]
        mode: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    Io(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let res = match cli.cmd {
        Cmd::Atlas { max, out } => commands::atlas(max, out),
        Cmd::Matrices { t, mode, out } => commands::matrices(t, &mode, out),
        Cmd::Count {
            input,
            format,
            t,
            no_filters,
            no_reduced,
            out,
            json,
            stats,
            hatted,
            sample_bfs,
            strict,
        } => commands::count(commands::CountArgs {
            input,
            format,
            t,
            filters: !no_filters,
            reduced: !no_reduced,
            out,
            json,
            stats,
            hatted,
            sample_bfs,
            strict,
        }),
        Cmd::Verify {
            input,
            format,
            t,
            budget,
            dump_reference,
        } => commands::verify(input, &format, t, budget, dump_reference),
        Cmd::Hasse { t, mode, out } => commands::hasse(t, &mode, out),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(3)
        }
    }
}
