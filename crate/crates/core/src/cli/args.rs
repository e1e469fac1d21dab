use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(name = "maxplus", version, about = "Max-plus Martin boundaries, eigenvectors and Busemann points")]
pub struct Cli {
    /// Arithmetic: `integer` is exact (tolerance 0, integer weights only).
    #[arg(long, value_enum, default_value_t = Mode::Float, global = true)]
    pub mode: Mode,
    /// Comparison tolerance; defaults to 0 (integer) or 1e-9 (float).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Integer,
    Float,
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// Edge list (`src dst weight` lines) or JSON `{nodes, edges}`.
    #[arg(long)]
    pub graph: PathBuf,
    /// Comma-separated node set, overriding the one implied by the edges.
    #[arg(long, value_delimiter = ',')]
    pub nodes: Option<Vec<String>>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Spectral radius, recurrent nodes and recurrence classes.
    Spectra {
        #[command(flatten)]
        graph: GraphArgs,
        /// Optional reference row; checks ρ ≤ 0 against it.
        #[arg(long)]
        pi: Option<String>,
    },
    /// Kleene closures A* and A⁺.
    Star {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Martin kernels and the minimal Martin space of a finite kernel.
    Martin {
        #[command(flatten)]
        graph: GraphArgs,
        /// `basepoint:NODE`, `sigma:FILE` or `explicit:FILE`.
        #[arg(long)]
        pi: String,
    },
    /// Representing measure of a (super-)harmonic vector.
    Decompose {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        pi: String,
        /// `node value` lines; unlisted nodes are -inf.
        #[arg(long)]
        vector: PathBuf,
    },
    /// Boundary point of an infinite kernel along a target sequence.
    Boundary(BoundaryArgs),
    /// Busemann points of a norm.
    Busemann(BusemannArgs),
    /// Lax-Oleinik eigenvector checks for L = ‖v‖^p / p.
    Laxoleinik(LaxArgs),
    /// Built-in example suite.
    Fixtures {
        #[arg(long, default_value = "paper")]
        suite: String,
    },
}

#[derive(Debug, Clone, Args)]
pub struct BoundaryArgs {
    /// z, z2, ex1, ex2, triangle, tripod, hedgehog, nontight or file:RULE.json
    #[arg(long)]
    pub rule: String,
    /// Target sequence in `k`, e.g. `k`, `(k,1)`, `(2k,-k)`.
    #[arg(long, default_value = "k", allow_hyphen_values = true)]
    pub targets: String,
    #[arg(long, default_value_t = 1)]
    pub kmin: i64,
    /// Defaults to window + 10.
    #[arg(long)]
    pub kmax: Option<i64>,
    /// Window radius.
    #[arg(long, default_value_t = 4)]
    pub window: i64,
    /// Truncation radius; defaults to window + target level + margin.
    #[arg(long)]
    pub radius: Option<i64>,
    /// Probe sequence for H♭(ξ, ξ), same syntax as `--targets`; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub probe: Vec<String>,
    /// Build an eigenvector with this eigenvalue along the targets instead.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct BusemannArgs {
    /// linf, l1, l2 or file:POLY.json
    #[arg(long, default_value = "linf")]
    pub norm: String,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[command(subcommand)]
    pub action: BusemannAction,
}

#[derive(Debug, Clone, Subcommand)]
pub enum BusemannAction {
    /// All Busemann points (one per face of the dual ball), checked.
    Enumerate {
        /// Offset X of every point; zero by default.
        #[arg(long = "X", value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
        /// Grid spacing for the ζ-harmonicity check.
        #[arg(long, default_value_t = 0.1)]
        h: f64,
        /// Grid half-width.
        #[arg(long, default_value_t = 10.0)]
        extent: f64,
    },
    /// Limit of the ray t ↦ X + t·y.
    Ray {
        #[arg(long = "X", value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Vec<f64>,
        #[arg(long, default_value_t = 1e6)]
        t_max: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LaxCheck {
    Eigen,
    Asymptotics,
    Characterization,
}

#[derive(Debug, Clone, Args)]
pub struct LaxArgs {
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    /// `h,extent`; defaults to a spacing tied to the optimal displacement.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, value_enum, default_value_t = LaxCheck::Eigen)]
    pub check: LaxCheck,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Norm in L; l2 by default.
    #[arg(long, default_value = "l2")]
    pub norm: String,
}
