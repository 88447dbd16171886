//! `wcorr`: graphs, right-angled Coxeter groups, graph products, link
//! invariants and q-Fock numerics from the command line.
//!
//! Reports are one JSON document on stdout (CSV for the `qfock` sweeps).
//! Exit status: 0 success, 1 a checked property failed, 2 bad input.

mod commands;
mod error;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use error::CliError;

/// Environment variable capping the bytes of a single dense matrix.
pub const MATRIX_BUDGET_ENV: &str = "WCORR_MAX_MATRIX_BYTES";

#[derive(Parser, Debug)]
#[command(name = "wcorr", version, about = "Graph products, Coxeter groups and q-Fock numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simple graphs: rigidity and isomorphism.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Right-angled Coxeter groups.
    #[command(subcommand)]
    Coxeter(CoxeterCmd),
    /// Graph products of groups.
    #[command(subcommand)]
    Gp(GpCmd),
    /// Link invariants.
    #[command(subcommand)]
    Inv(InvCmd),
    /// Truncated q-Fock space sweeps (CSV output).
    #[command(subcommand)]
    Qfock(QfockCmd),
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Checks link(link s) = {s} for every vertex; exit 1 if a witness is found.
    Rigid {
        /// Graph as a .json/.dot file or inline JSON.
        graph: String,
    },
    /// Label-preserving isomorphism by exhaustive search; exit 1 if none exists.
    Iso {
        a: String,
        b: String,
        #[arg(long, default_value_t = wcorr::graphs::DEFAULT_ISO_CAP)]
        max_vertices: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CoxeterCmd {
    /// ShortLex normal form of a word.
    Reduce {
        #[arg(long)]
        graph: String,
        /// Whitespace-separated vertex names; empty for the identity.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Decides equality of two words; exit 1 if they differ.
    Equal {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        word1: String,
        #[arg(long)]
        word2: String,
    },
    /// Number of elements of each length.
    Growth {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        max_length: usize,
        /// Maximal number of elements to enumerate.
        #[arg(long, default_value_t = wcorr::Budget::DEFAULT_LIMIT)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug)]
enum GpCmd {
    /// Syllable normal form; input {"graph":..,"labels":..,"syllables":[..]}.
    NormalForm { descriptor: String },
    /// Builds the index-k graph; input {"graph":..,"s1":..,"k":..,"quotient":..}.
    GammaPrime { descriptor: String },
    /// Checks the index-k construction; exit 1 on any failure.
    Verify {
        descriptor: String,
        /// Radius of the exhaustive injectivity check.
        #[arg(long, default_value_t = 3)]
        radius: usize,
        /// Random pairs for the homomorphism check.
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        /// Word length of the random elements.
        #[arg(long, default_value_t = 2)]
        pair_radius: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = wcorr::Budget::DEFAULT_LIMIT)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug)]
enum InvCmd {
    /// Compares the free products of powers of F2 indexed by two sets.
    Gf {
        #[arg(long = "F", value_delimiter = ',', required = true)]
        family: Vec<usize>,
        #[arg(long = "Fprime", value_delimiter = ',', required = true)]
        family_prime: Vec<usize>,
    },
    /// Partitions factor labels into blocks with prescribed label multisets.
    TensorMatch {
        /// Factor labels, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<String>,
        /// One block signature per occurrence, labels comma separated.
        #[arg(long, required = true)]
        b: Vec<String>,
    },
}

#[derive(Args, Debug, Clone)]
struct QList {
    /// Comma-separated q values in [-1, 1].
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-0.9,-0.5,0,0.5,0.9")]
    q: Vec<f64>,
}

#[derive(Subcommand, Debug)]
enum QfockCmd {
    /// Extreme eigenvalues of T_n; exit 1 if some T_n is not PSD.
    Tn {
        #[command(flatten)]
        q: QList,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
    /// Vacuum moments against the pair-partition count; exit 1 on mismatch.
    Moments {
        #[command(flatten)]
        q: QList,
        #[arg(long, value_delimiter = ',', default_value = "2,4,6,8")]
        powers: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
    /// Decay of the compressed maps in the level n; fitted constant on stderr.
    Decay {
        #[command(flatten)]
        q: QList,
        /// Number of second-summand factors in x = y.
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        dim_h: usize,
        #[arg(long, default_value_t = 1)]
        dim_k: usize,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Singular values of E∘Γ(R_t) per level; exit 1 if not (cos t)^n.
    Deform {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0.3,0.7853981633974483,1.5707963267948966")]
        t: Vec<f64>,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        q: f64,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
}

/// A finished command: its report and whether the checked property held.
pub struct Outcome {
    pub report: String,
    pub passed: bool,
}

impl Outcome {
    pub fn ok(report: String) -> Self {
        Outcome { report, passed: true }
    }

    pub fn json(value: &impl serde::Serialize, passed: bool) -> Result<Self, CliError> {
        Ok(Outcome {
            report: serde_json::to_string(value)?,
            passed,
        })
    }
}

fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    use commands::*;
    match cli.command {
        Command::Graph(GraphCmd::Rigid { graph }) => graph::rigid(&graph),
        Command::Graph(GraphCmd::Iso { a, b, max_vertices }) => graph::iso(&a, &b, max_vertices),
        Command::Coxeter(CoxeterCmd::Reduce { graph, word }) => coxeter::reduce(&graph, &word),
        Command::Coxeter(CoxeterCmd::Equal { graph, word1, word2 }) => coxeter::equal(&graph, &word1, &word2),
        Command::Coxeter(CoxeterCmd::Growth { graph, max_length, budget }) => {
            coxeter::growth(&graph, max_length, budget)
        }
        Command::Gp(GpCmd::NormalForm { descriptor }) => gp::normal_form(&descriptor),
        Command::Gp(GpCmd::GammaPrime { descriptor }) => gp::gamma_prime(&descriptor),
        Command::Gp(GpCmd::Verify {
            descriptor,
            radius,
            pairs,
            pair_radius,
            seed,
            budget,
        }) => gp::verify(&descriptor, radius, pairs, pair_radius, seed, budget),
        Command::Inv(InvCmd::Gf { family, family_prime }) => inv::gf(&family, &family_prime),
        Command::Inv(InvCmd::TensorMatch { a, b }) => inv::tensor_match(&a, &b),
        Command::Qfock(QfockCmd::Tn { q, dim, n_max }) => qfock::tn(&q.q, dim, n_max),
        Command::Qfock(QfockCmd::Moments { q, powers, dim }) => qfock::moments(&q.q, &powers, dim),
        Command::Qfock(QfockCmd::Decay {
            q,
            k,
            n_max,
            dim_h,
            dim_k,
            samples,
            seed,
        }) => qfock::decay(&q.q, k, n_max, dim_h, dim_k, samples, seed),
        Command::Qfock(QfockCmd::Deform { t, q, dim, n_max }) => qfock::deform(&t, q, dim, n_max),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let message = rendered.trim_start_matches("error: ").trim_end();
            eprintln!("{}", CliError::Usage(message.to_string()));
            return ExitCode::from(2);
        }
    };
    match dispatch(cli) {
        Ok(outcome) => {
            println!("{}", outcome.report.trim_end());
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
