use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qudiscord::discord::OptimizerConfig;
use qudiscord::linalg::DEFAULT_PSD_TOLERANCE;
use qudiscord::Subsystem;

#[derive(Debug, Parser)]
#[command(name = "qudiscord", version, about = "Quantum discord for qubit- and qutrit-measured bipartite states")]
pub struct Cli {
    /// Raise log verbosity (repeatable). Logs go to standard error.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutual information, classical correlation and discord of a density file.
    Compute(ComputeArgs),
    /// Correlations along a one-parameter family, as CSV.
    Sweep(SweepArgs),
    /// Write a canonical state as a density file.
    Gen(GenArgs),
    /// Exact parameter counts of X-type state families.
    Count(CountArgs),
    /// Check a density file and report its sparsity structure.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    A,
    B,
}

impl From<Side> for Subsystem {
    fn from(s: Side) -> Self {
        match s {
            Side::A => Subsystem::A,
            Side::B => Subsystem::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    /// One JSON object.
    Record,
}

/// Logarithm base: a real number above 1, or `dim` for the measured side's dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaseChoice {
    Dimension,
    Fixed(f64),
}

fn parse_base(s: &str) -> Result<BaseChoice, String> {
    match s {
        "dim" => Ok(BaseChoice::Dimension),
        "e" => Ok(BaseChoice::Fixed(std::f64::consts::E)),
        _ => match s.parse::<f64>() {
            Ok(b) if b.is_finite() && b > 1.0 => Ok(BaseChoice::Fixed(b)),
            _ => Err(format!("expected `dim`, `e` or a real number above 1, got `{s}`")),
        },
    }
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long, default_value = "dim", value_parser = parse_base)]
    pub base: BaseChoice,
    /// Measured subsystem.
    #[arg(long, value_enum, default_value = "a", ignore_case = true)]
    pub side: Side,
    /// Grid points per angle for the coarse search.
    #[arg(long, default_value_t = OptimizerConfig::default().grid_points_per_angle)]
    pub grid: usize,
    #[arg(long, default_value_t = OptimizerConfig::default().restarts)]
    pub restarts: usize,
    /// Simplex convergence tolerance.
    #[arg(long, default_value_t = OptimizerConfig::default().simplex_tolerance)]
    pub tol: f64,
    #[arg(long, default_value_t = OptimizerConfig::default().max_iterations)]
    pub max_iter: usize,
    /// Search polar angles only, with every phase at zero.
    #[arg(long)]
    pub freeze_phases: bool,
    #[arg(long, default_value_t = OptimizerConfig::default().rng_seed)]
    pub seed: u64,
    /// Eigenvalues down to minus this are clamped to zero.
    #[arg(long, default_value_t = DEFAULT_PSD_TOLERANCE)]
    pub psd_tol: f64,
}

impl SearchArgs {
    pub fn optimizer(&self) -> OptimizerConfig {
        OptimizerConfig {
            grid_points_per_angle: self.grid,
            restarts: self.restarts,
            simplex_tolerance: self.tol,
            max_iterations: self.max_iter,
            freeze_phases: self.freeze_phases,
            rng_seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    /// `p |Ψ⟩⟨Ψ| + (1-p) I/d²`.
    #[value(alias = "werner")]
    Isotropic,
    /// `p ρ + (1-p) I/(d_A d_B)` for the state in `--input`.
    Noisy,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub family: SweepFamily,
    /// Local dimension for the isotropic family.
    #[arg(short, long, default_value_t = 3)]
    pub d: usize,
    /// Density file for the noisy family.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Swept parameter.
    #[arg(long, default_value = "p")]
    pub param: String,
    #[arg(long, default_value_t = 0.0)]
    pub start: f64,
    #[arg(long, default_value_t = 1.0)]
    pub stop: f64,
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    /// Output path; standard output when absent.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub state: GenState,
    /// Output path; standard output when absent.
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum GenState {
    /// Maximally entangled `Σ|ii⟩/√d`.
    Bell { d: usize },
    /// Bell state mixed with white noise.
    #[command(alias = "werner")]
    Isotropic { d: usize, p: f64 },
    /// X-state from its diagonal and upper anti-diagonal.
    X {
        /// Dimension of A.
        d: usize,
        /// Dimension of B (defaults to that of A).
        #[arg(short = 'D', long)]
        dim_b: Option<usize>,
        /// Comma-separated diagonal; uniform when absent.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        diagonal: Option<Vec<f64>>,
        /// Comma-separated `re:im` entries `ρ[i][n-1-i]` for `i < n/2`; zero when absent.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        antidiagonal: Option<Vec<String>>,
    },
    /// `Σ p_i |i⟩⟨i| ⊗ ρ_i` with computational-basis kets and seeded random partners.
    Qc {
        /// Comma-separated probabilities, one per level of A.
        #[arg(long, value_delimiter = ',', required = true)]
        probs: Vec<f64>,
        #[arg(short = 'D', long)]
        dim_b: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Seeded random density of the given rank (full rank when absent).
    Random {
        d: usize,
        #[arg(short = 'D', long)]
        dim_b: usize,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Seeded random X-state.
    RandomX {
        d: usize,
        #[arg(short = 'D', long)]
        dim_b: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// `I / (d_A d_B)`.
    MaximallyMixed {
        d: usize,
        #[arg(short = 'D', long)]
        dim_b: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountFamily {
    General,
    X,
    ExtendedX,
    Su2,
    U1,
    Pure,
    Qc,
}

#[derive(Debug, Clone, Args)]
pub struct CountArgs {
    #[arg(value_enum, required_unless_present = "table2")]
    pub family: Option<CountFamily>,
    /// Print both panels of the enumeration table.
    #[arg(long)]
    pub table2: bool,
    /// Last copy count of the table.
    #[arg(long, default_value_t = 4, requires = "table2")]
    pub max_n: u32,
    #[arg(long, conflicts_with_all = ["qutrits", "d"])]
    pub qubits: bool,
    #[arg(long, conflicts_with = "d")]
    pub qutrits: bool,
    /// Local dimension.
    #[arg(short, long)]
    pub d: Option<u32>,
    /// Number of copies.
    #[arg(short, long)]
    pub n: Option<u32>,
    /// Partner dimension for a `d × D` pair.
    #[arg(short = 'D', long = "partner")]
    pub big_d: Option<u32>,
    /// Also print the nested sub-algebra pattern.
    #[arg(long)]
    pub structure: bool,
}

impl CountArgs {
    pub fn local_dim(&self) -> Option<u32> {
        if self.qubits {
            Some(2)
        } else if self.qutrits {
            Some(3)
        } else {
            self.d
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_PSD_TOLERANCE)]
    pub psd_tol: f64,
    /// Entries at or below this magnitude count as zero for the structure report.
    #[arg(long, default_value_t = 1e-12)]
    pub zero_tol: f64,
}
