use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chromabound::commands::{
    self, CheckArgs, ClassSel, ColorArgs, DecomposeArgs, GenArgs, OracleArgs, VerifyArgs,
};
use chromabound::report::Config;

/// Coloring toolkit for three hereditary graph classes defined by a
/// five-vertex forbidden forest plus the diamond: class colorers with
/// certificates, exact desk-scale oracles, decomposition reports, seeded
/// generators, and a corpus verification harness.
#[derive(Parser)]
#[command(name = "chromabound", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color a graph with the class algorithm and print chi, omega, bound.
    Color {
        /// Target class: p12p2, 2p1p3, 3p1p2, or auto.
        #[arg(long, default_value = "auto")]
        class: String,
        /// Input file (.g6 one graph per line, .el edge list, .col DIMACS).
        input: PathBuf,
        /// Write the derivation certificate as JSON.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Color a good graph with a supplied three-clique partition file.
        #[arg(long)]
        good: bool,
        /// Partition file: three whitespace-separated index lists.
        #[arg(long, requires = "good")]
        partition: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Oracle node budget.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Test class membership; exits 1 with a witness on violation.
    Check {
        #[arg(long, default_value = "auto")]
        class: String,
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exact oracles: chi, omega, alpha, perfect.
    Oracle {
        /// One of: chi, omega, alpha, perfect.
        what: String,
        input: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        budget: Option<u64>,
        /// Perfection certification tier.
        #[arg(long = "tier-n")]
        tier_n: Option<usize>,
    },
    /// Generate seeded class members (or good graphs) as graph6 lines.
    Gen {
        /// p12p2, 2p1p3, 3p1p2, or good.
        #[arg(long)]
        class: String,
        #[arg(short)]
        n: usize,
        /// Edge density (matching density for good graphs).
        #[arg(short, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Output directory.
        #[arg(short)]
        o: PathBuf,
    },
    /// Print the C5 neighborhood partition and its property report.
    Decompose { input: PathBuf },
    /// Run the harness over a corpus directory or a generated corpus.
    Verify {
        #[arg(long, default_value = "auto")]
        class: String,
        /// Corpus directory of .g6/.el/.col files.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Generated corpus size (used when --dir is absent).
        #[arg(long, default_value_t = 100)]
        gen_count: usize,
        /// Maximum generated order.
        #[arg(long, default_value_t = 18)]
        gen_n: usize,
        /// Generated edge density before repair.
        #[arg(long, default_value_t = 0.5)]
        gen_p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Write the JSON report to a file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write per-graph certificates into a directory.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        /// Oracle chi comparison tier.
        #[arg(long = "tier-n")]
        tier_n: Option<usize>,
        /// Soft per-graph wall-clock hint in milliseconds.
        #[arg(long)]
        time_hint_ms: Option<u64>,
        /// Worker count; CHROMABOUND_THREADS overrides.
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn thread_count(flag: Option<usize>) -> usize {
    if let Ok(value) = std::env::var("CHROMABOUND_THREADS") {
        if let Ok(parsed) = value.parse::<usize>() {
            return parsed.max(1);
        }
    }
    flag.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|v| v.get())
            .unwrap_or(1)
    })
}

fn class_or_exit(name: &str) -> Result<ClassSel, ExitCode> {
    commands::parse_class(name).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(commands::EXIT_USAGE as u8)
    })
}

/// Die quietly on closed pipes like ordinary unix filters.
#[cfg(unix)]
fn reset_sigpipe() {
    // SAFETY: resetting a signal disposition before any other work
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Color { class, input, certificate, good, partition, json, budget } => {
            let class = match class_or_exit(&class) {
                Ok(c) => c,
                Err(code) => return code,
            };
            let mut config = Config::default();
            if let Some(b) = budget {
                config.oracle_node_budget = b;
            }
            commands::cmd_color(&ColorArgs {
                class,
                input,
                certificate,
                json,
                good_partition: if good { partition } else { None },
                config,
            })
        }
        Command::Check { class, input, json } => {
            let class = match class_or_exit(&class) {
                Ok(c) => c,
                Err(code) => return code,
            };
            commands::cmd_check(&CheckArgs { class, input, json })
        }
        Command::Oracle { what, input, json, budget, tier_n } => {
            let mut config = Config::default();
            if let Some(b) = budget {
                config.oracle_node_budget = b;
            }
            if let Some(t) = tier_n {
                config.perfect_tier = t;
            }
            commands::cmd_oracle(&OracleArgs { what, input, json, config })
        }
        Command::Gen { class, n, p, seed, count, o } => {
            commands::cmd_gen(&GenArgs { class, n, p, seed, count, out_dir: o })
        }
        Command::Decompose { input } => commands::cmd_decompose(&DecomposeArgs { input }),
        Command::Verify {
            class,
            dir,
            gen_count,
            gen_n,
            gen_p,
            seed,
            json,
            out,
            cert_dir,
            budget,
            tier_n,
            time_hint_ms,
            threads,
        } => {
            let class = match class_or_exit(&class) {
                Ok(c) => c,
                Err(code) => return code,
            };
            let mut config = Config {
                seed,
                threads: thread_count(threads),
                time_hint_ms,
                ..Config::default()
            };
            if let Some(b) = budget {
                config.oracle_node_budget = b;
            }
            if let Some(t) = tier_n {
                config.chi_tier = t;
            }
            commands::cmd_verify(&VerifyArgs {
                class,
                dir,
                gen_count,
                gen_n,
                gen_p,
                json,
                out,
                cert_dir,
                config,
            })
        }
    };
    ExitCode::from(code as u8)
}
