use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "rspec", version, about = "Sector statistics and prime/zero duality over zeta zero tables")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Zero table, one ordinate per line (default: $RSPEC_ZEROS_FILE, then the bundled 1000-zero fixture)
    #[arg(long, global = true, value_name = "PATH")]
    pub zeros_file: Option<PathBuf>,
    /// Keep only the first N ordinates of the table
    #[arg(long, global = true, value_name = "N")]
    pub limit: Option<usize>,
    /// Write CSV here (plus a sibling .manifest.json) instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Also render an SVG chart
    #[arg(long, global = true, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    /// Worker thread cap; results do not depend on it
    #[arg(long, global = true, value_name = "K")]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect the zero table
    Zeros {
        #[command(subcommand)]
        cmd: ZerosCmd,
    },
    /// p-sector histograms
    Sector {
        #[command(subcommand)]
        cmd: SectorCmd,
    },
    /// Sector correlations
    Corr {
        #[command(subcommand)]
        cmd: CorrCmd,
    },
    /// Poset-annotated resonances in a correlation row
    Resonance(ResonanceArgs),
    /// Divisibility poset on primes
    Poset {
        #[command(subcommand)]
        cmd: PosetCmd,
    },
    /// Euclid candidate 2·q1⋯qr + 1 with a primality verdict
    Euclid(EuclidArgs),
    /// Truncated explicit-formula detector sums
    Duality {
        #[command(subcommand)]
        cmd: DualityCmd,
    },
    /// Regenerate the data behind a reference figure
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Subcommand)]
pub enum ZerosCmd {
    /// Count, first and last ordinate
    Info,
    /// Zeros up to height T against the main term of N(T)
    Count {
        #[arg(long = "t", value_name = "T")]
        height: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum SectorCmd {
    /// Histogram of frac(t·ln p / 2πq): CSV bin_low,bin_high,count
    Hist {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        compression: u32,
        #[arg(long, default_value_t = rspec_core::sector::DEFAULT_BINS)]
        bins: usize,
        /// Zeros used (default: all loaded)
        #[arg(long)]
        zeros: Option<usize>,
    },
    /// 2D histogram after M·α = (ln p1, ln p2)/2π: CSV x_bin,y_bin,count
    Bihist {
        #[arg(long)]
        p1: u64,
        #[arg(long)]
        p2: u64,
        /// m11,m12,m21,m22
        #[arg(long, default_value = "1,1,1,-1", allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, default_value_t = rspec_core::sector::DEFAULT_BINS_2D)]
        bins: usize,
        #[arg(long)]
        zeros: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Raw,
    Centered,
}

impl From<Mode> for rspec_core::CorrelationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Raw => Self::Raw,
            Mode::Centered => Self::Centered,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum CorrCmd {
    /// c(X_p, X_q) over the first K primes: CSV q,c
    Row {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 100)]
        primes: usize,
        #[arg(long, default_value_t = 1000)]
        zeros: usize,
        #[arg(long, value_enum, default_value_t = Mode::Raw)]
        mode: Mode,
    },
    /// Square matrix over the first K primes
    Matrix {
        #[arg(long, default_value_t = 100)]
        primes: usize,
        #[arg(long, default_value_t = 1000)]
        zeros: usize,
        #[arg(long, value_enum, default_value_t = Mode::Raw)]
        mode: Mode,
    },
}

#[derive(Debug, Args)]
pub struct ResonanceArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 100)]
    pub primes: usize,
    #[arg(long, default_value_t = 1000)]
    pub zeros: usize,
    /// Primes up to this bound stay out of the baseline
    #[arg(long, default_value_t = 50)]
    pub floor: u64,
    /// z-score threshold
    #[arg(long, default_value_t = 3.0)]
    pub z: f64,
    #[arg(long, value_enum, default_value_t = Mode::Raw)]
    pub mode: Mode,
}

#[derive(Debug, Subcommand)]
pub enum PosetCmd {
    /// Pratt tree as indented text and CSV edges parent,child,exponent
    Tree {
        #[arg(long)]
        p: u64,
    },
    /// Primes q with q | p − 1
    Preds {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Debug, Args)]
pub struct EuclidArgs {
    /// Distinct odd primes, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub factors: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct PeakArgs {
    /// Append a peak table
    #[arg(long)]
    pub peaks: bool,
    #[arg(long, default_value_t = 0.0)]
    pub prominence: f64,
}

#[derive(Debug, Subcommand)]
pub enum DualityCmd {
    /// −Σ cos(t_n ln x) over the first C zeros: CSV abscissa,value
    ZerosToPrimes {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 1.5)]
        xmin: f64,
        #[arg(long, default_value_t = 10.5)]
        xmax: f64,
        #[arg(long, default_value_t = 0.001)]
        step: f64,
        #[command(flatten)]
        peaks: PeakArgs,
    },
    /// −Σ_{n≤X} Λ(n) n^{-1/2} cos(t ln n): CSV abscissa,value
    PrimesToZeros {
        /// Prime-power bound X
        #[arg(long, default_value_t = 10_000)]
        xmax: u64,
        #[arg(long, default_value_t = 10.0)]
        tmin: f64,
        #[arg(long, default_value_t = 16.0)]
        tmax: f64,
        #[arg(long, default_value_t = 0.001)]
        step: f64,
        #[command(flatten)]
        peaks: PeakArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    #[value(name = "fig3")]
    Fig3,
    #[value(name = "fig4")]
    Fig4,
    #[value(name = "fig5_bihist")]
    Fig5Bihist,
    #[value(name = "fig5_corr19")]
    Fig5Corr19,
    #[value(name = "fig6_corr29")]
    Fig6Corr29,
    #[value(name = "all")]
    All,
}

impl Figure {
    pub const EACH: [Figure; 5] = [Self::Fig3, Self::Fig4, Self::Fig5Bihist, Self::Fig5Corr19, Self::Fig6Corr29];

    pub fn name(self) -> &'static str {
        match self {
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
            Self::Fig5Bihist => "fig5_bihist",
            Self::Fig5Corr19 => "fig5_corr19",
            Self::Fig6Corr29 => "fig6_corr29",
            Self::All => "all",
        }
    }
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub figure: Figure,
    /// Directory for the CSV, SVG, manifest and note files
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}
