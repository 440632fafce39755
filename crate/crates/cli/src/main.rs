//! star-ks: construct and verify the KS-set family on Johnson
//! configurations, analyze the star games and their Bell inequalities, and
//! reproduce the headline numbers end to end with persistent JSON
//! certificates.
//!
//! Exit codes: 0 verified success, 1 verification failure, 2 usage error,
//! 3 budget exceeded / indeterminate.

mod certificate;
mod commands;
mod pipelines;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "star-ks", version, about)]
pub struct Cli {
    /// Cap worker threads (default: all cores). Results are identical for
    /// any setting.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Time budget in seconds for exhaustive searches; exceeding it yields
    /// an indeterminate result (exit 3), never a wrong one.
    #[arg(long, global = true)]
    pub budget_seconds: Option<f64>,

    /// Directory for artifacts and certificates.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generalized Hadamard matrices and S-Hadamard matrices.
    Hadamard {
        #[command(subcommand)]
        cmd: HadamardCmd,
    },
    /// KS sets: construction, verification, graphs, golden data export.
    Kset {
        #[command(subcommand)]
        cmd: KsetCmd,
    },
    /// Designs: affine planes, factorizations, embeddings, recursion.
    Design {
        #[command(subcommand)]
        cmd: DesignCmd,
    },
    /// Star games: classical optima, quantum values, B-KS, visibility.
    Game {
        #[command(subcommand)]
        cmd: GameCmd,
    },
    /// Bell functionals: coefficients, local bounds, non-tightness.
    Bell {
        #[command(subcommand)]
        cmd: BellCmd,
    },
    /// Named end-to-end pipelines with persistent stage artifacts.
    Pipeline {
        #[command(subcommand)]
        name: PipelineName,
    },
}

#[derive(Subcommand)]
pub enum HadamardCmd {
    /// Build a GH matrix (two-block construction, multiplication table, or
    /// Kronecker product of two stored matrices).
    Build {
        #[arg(long, value_enum)]
        kind: GhKind,
        /// Prime parameter for jungnickel / mult-table.
        #[arg(long)]
        q: Option<u32>,
        /// Quadratic non-residue (default: smallest).
        #[arg(long)]
        c: Option<u32>,
        /// Left factor file for kronecker.
        #[arg(long)]
        left: Option<PathBuf>,
        /// Right factor file for kronecker.
        #[arg(long)]
        right: Option<PathBuf>,
        /// Output file name (under --out-dir).
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Verify a stored GH or S-Hadamard matrix.
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// Convert a stored GH matrix to a verified S-Hadamard matrix.
    Convert {
        #[arg(long)]
        file: PathBuf,
        #[arg(short, long)]
        out: Option<String>,
        /// Normalize the first row to all-ones.
        #[arg(long)]
        normalize: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum GhKind {
    Jungnickel,
    MultTable,
    Kronecker,
}

#[derive(Subcommand)]
pub enum KsetCmd {
    /// Build the KS set for J(N,2): N-1 = 2q routes through the GH
    /// construction, N = 9 through the Paley-factor embedding; an explicit
    /// S-Hadamard file overrides.
    Build {
        #[arg(long)]
        n: Option<u16>,
        #[arg(long)]
        c: Option<u32>,
        #[arg(long)]
        from_shadamard: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Verify a stored KS set: bases, parity, optional exhaustive search.
    Verify {
        #[arg(long)]
        file: PathBuf,
        /// Also run the exhaustive assignment search.
        #[arg(long)]
        search: bool,
        /// Use all exact orthogonalities as constraints (not only
        /// within-basis ones).
        #[arg(long)]
        full_orthogonality: bool,
    },
    /// Orthogonality graph and faithfulness analysis.
    Graph {
        #[arg(long)]
        file: PathBuf,
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Export a golden KS set (N = 7, 9, or 11) to JSON.
    Export {
        #[arg(long)]
        n: u16,
        #[arg(short, long)]
        out: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum DesignCmd {
    /// The affine plane AG(2,k) as a (k²,k,1)-RBIBD.
    Ag2 {
        #[arg(long)]
        k: u32,
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Turn a stored λ=1 RBIBD into a factorization of K_v.
    Factorize {
        #[arg(long)]
        rbibd: PathBuf,
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Embed per-factor representations into one KS set.
    Embed {
        #[arg(long)]
        factorization: PathBuf,
        /// One KS-set file per factor, in factor order.
        #[arg(long = "rep", required = true)]
        reps: Vec<PathBuf>,
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Compose a base KS set with an RBIBD into a larger KS set.
    Recurse {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        rbibd: PathBuf,
        #[arg(short, long)]
        out: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum VariantArg {
    Colored,
    LineLine,
    PointLine,
}

impl From<VariantArg> for star_ks_core::games::Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Colored => star_ks_core::games::Variant::Colored,
            VariantArg::LineLine => star_ks_core::games::Variant::LineLine,
            VariantArg::PointLine => star_ks_core::games::Variant::PointLine,
        }
    }
}

#[derive(Subcommand)]
pub enum GameCmd {
    /// Exact classical optimum of a star game.
    Classical {
        #[arg(long)]
        n: u16,
        #[arg(long, value_enum, default_value = "colored")]
        variant: VariantArg,
    },
    /// Exact quantum value of the colored game on a KS realization.
    Quantum {
        #[arg(long)]
        n: u16,
        #[arg(long)]
        kset: PathBuf,
    },
    /// Bipartite-KS solving: one pair, or the full N-2 enumeration.
    Bks {
        #[arg(long)]
        kset: PathBuf,
        /// Remove this pair's bases from Alice's side, e.g. 1,2.
        #[arg(long)]
        remove_a: Option<String>,
        /// Remove this pair's bases from Bob's side, e.g. 3,4.
        #[arg(long)]
        remove_b: Option<String>,
        /// Enumerate all removed-pair choices and classify.
        #[arg(long)]
        enumerate: bool,
    },
    /// Werner-noise visibility threshold for a variant and dimension.
    Visibility {
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value = "colored")]
        variant: VariantArg,
    },
}

#[derive(Subcommand)]
pub enum BellCmd {
    /// Build the functional and export its coefficient matrices as CSV.
    Build {
        #[arg(long)]
        n: u16,
    },
    /// Exact local bound with witness; optionally the quantum value of a
    /// stored KS realization.
    Bound {
        #[arg(long)]
        n: u16,
        #[arg(long)]
        kset: Option<PathBuf>,
    },
    /// Non-tightness certificate: saturating points, forced zeros, exact
    /// affine rank.
    Certify {
        #[arg(long)]
        n: u16,
        /// Cap on saturating points before the certificate is flagged
        /// incomplete.
        #[arg(long, default_value_t = 2_000_000)]
        max_saturating: usize,
    },
}

#[derive(Subcommand, Clone, Copy)]
pub enum PipelineName {
    /// D³ → S-Hadamard → 21-vector KS set → classical 24/25 → quantum 1 →
    /// Bell bound 24 → non-tightness certificate.
    PaperN7,
    /// Paley factorization of K₉ → 36-vector KS set → classical 48/49 →
    /// quantum 1 → Bell bound 48.
    PaperN9,
    /// GH(5,2) → 55-vector KS set → faithfulness extras → quantum 1.
    PaperN11,
    /// 55-vector base + AG(2,11) → KS candidate for J(121,2); structural
    /// verification only (parity is the accepted certificate).
    PaperN121,
}

/// Overall outcome, mapped to the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Indeterminate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // A pre-existing global pool (e.g. in tests) keeps its size; results
        // do not depend on it by contract.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match commands::dispatch(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Ok(Outcome::Indeterminate) => ExitCode::from(3),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
