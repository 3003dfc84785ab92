use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use simprep_core::replacement::DEFAULT_BUDGET;

#[derive(Debug, Parser)]
#[command(
    name = "simprep",
    version,
    about = "Simplicial replacements, Betti numbers and persistence barcodes"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Write the artifact to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Artifact format (default: from the --out extension, else csv for
    /// barcodes and json otherwise).
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Cap on poset elements plus cover queries.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simplicial replacement of a box scene or a declared cover catalog.
    Replace(ReplaceArgs),
    /// Barcodes of a finite filtration.
    Barcode(BarcodeArgs),
    /// Barcodes of the sub-level filtration of a polynomial on a 1-D set.
    SaBarcode(SaBarcodeArgs),
    /// Nerve of the labelled sets of a box scene.
    Nerve(NerveArgs),
    /// Betti numbers of a complex file.
    Betti(BettiArgs),
}

#[derive(Debug, Args)]
pub struct ReplaceArgs {
    /// Box scene file; its sets are first split into their boxes.
    #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
    pub scene: Option<PathBuf>,
    /// Declared cover catalog file.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    /// Input labels (default: every label of the scene, or the catalog ids
    /// that never occur as members).
    #[arg(long, value_delimiter = ',')]
    pub labels: Vec<String>,
    /// Homology degrees 0..=ell are reported.
    #[arg(long)]
    pub ell: usize,
}

#[derive(Debug, Args)]
pub struct BarcodeArgs {
    /// Filtration file.
    #[arg(long)]
    pub filtration: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub ell: usize,
}

#[derive(Debug, Args)]
pub struct SaBarcodeArgs {
    /// Closed formula in X, e.g. "1 - X^2 >= 0".
    #[arg(long)]
    pub set: String,
    /// Filtering polynomial in X.
    #[arg(long)]
    pub poly: String,
    #[arg(long, default_value_t = 0)]
    pub ell: usize,
    /// Intersect the set with [-R, R]; required when it is unbounded.
    #[arg(long)]
    pub radius: Option<String>,
}

#[derive(Debug, Args)]
pub struct NerveArgs {
    /// Box scene file.
    #[arg(long)]
    pub scene: PathBuf,
    /// Highest reported degree (default: dimension of the nerve).
    #[arg(long)]
    pub ell: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BettiArgs {
    /// Complex file `{"vertices": n, "simplices": [[..], ..]}`.
    #[arg(long)]
    pub complex: PathBuf,
    /// Highest reported degree (default: dimension of the complex).
    #[arg(long)]
    pub ell: Option<usize>,
}
