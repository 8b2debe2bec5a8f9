use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "spinlocus", version, about = "Multidegree combinatorics of compactified Picard varieties and spin curves")]
pub struct Cli {
    /// Print one JSON object on stdout instead of a table.
    #[arg(long, global = true)]
    pub json: bool,

    /// Refuse subset enumeration on graphs with more vertices than this.
    #[arg(long, global = true, default_value_t = 12)]
    pub max_vertices: usize,

    /// Worker threads for enumeration. Output order does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Genus, stability and a summary of a dual graph.
    Info(InfoArgs),
    /// Check or enumerate multidegrees satisfying the Basic Inequality.
    Bi(BiArgs),
    /// Spin multidegrees, stability of spin curves and the spin locus.
    Spin(SpinArgs),
    /// Scalar invariants of the Picard variety.
    Numerics(NumericsArgs),
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct BiArgs {
    pub graph: PathBuf,

    /// Total degree d. Defaults to the sum of --multidegree.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "multidegree")]
    pub total: Option<i64>,

    /// Comma-separated degrees, in vertex-id order.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "enumerate")]
    pub multidegree: Option<Vec<i64>>,

    /// List every multidegree of total d satisfying the inequality (default).
    #[arg(long)]
    pub enumerate: bool,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["blowups", "locus", "decide", "split_curve"]))]
pub struct SpinArgs {
    /// Graph file; not needed with --split-curve.
    #[arg(required_unless_present = "split_curve")]
    pub graph: Option<PathBuf>,

    /// Twist exponent t of the degree (2t+1)(g-1).
    #[arg(short = 't', long = "twist")]
    pub t: i64,

    /// Allow t < 10. Results there are exploratory only.
    #[arg(long)]
    pub unsafe_t: bool,

    /// Blow-up file: report spin parity, spin multidegree and stability.
    #[arg(long)]
    pub blowups: Option<PathBuf>,

    /// List the fiber components met by the spin locus.
    #[arg(long)]
    pub locus: bool,

    /// Decide one multidegree (comma-separated, vertex-id order).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub decide: Option<Vec<i64>>,

    /// Closed-form table for the split curve of genus -g.
    #[arg(long)]
    pub split_curve: bool,

    #[arg(short = 'g', long = "genus", required_if_eq("split_curve", "true"))]
    pub genus: Option<i64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Scalar {
    /// Kouvidakis class k_{d,g}.
    Kdg,
    /// Whether gcd(d-g+1, 2g-2) = 1.
    Coarse,
    /// Rank of the rational divisor class group.
    Rank,
    /// Smallest equivalent degree >= 20(g-1).
    Normalize,
}

#[derive(Debug, Args)]
pub struct NumericsArgs {
    pub scalar: Scalar,

    #[arg(short = 'g', long = "genus")]
    pub genus: i64,

    #[arg(short = 'd', long = "degree", allow_hyphen_values = true)]
    pub degree: Option<i64>,
}
