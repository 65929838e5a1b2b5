//! Command-line parameters. Each struct is echoed verbatim in its output;
//! output paths are omitted so that replays to different files match.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Args, Serialize, Deserialize, PartialEq)]
pub struct BoundsArgs {
    /// Single dimension; emits JSON.
    #[arg(long, conflicts_with = "n_max")]
    pub n: Option<usize>,
    /// First dimension of a sweep.
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    /// Last dimension of a sweep; emits CSV.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Exponent in `n^{-λ}` used to choose the cap angle.
    #[arg(long, default_value_t = 2.6)]
    pub lambda: f64,
    /// Radius for an explicit main-inequality evaluation (requires --alpha).
    #[arg(long, requires = "alpha")]
    pub r: Option<f64>,
    #[arg(long, requires = "r")]
    pub alpha: Option<f64>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize, PartialEq)]
pub struct WitnessArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    /// Monte Carlo samples for the overlap and edge-measure estimates.
    #[arg(long, default_value_t = 4000)]
    pub samples: usize,
    /// JSON body specification; defaults to a centred ball of --body-radius.
    #[arg(long)]
    pub body: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    pub body_radius: f64,
    /// Radius of the sampling ball.
    #[arg(long, default_value_t = 0.55)]
    pub r: f64,
    /// Cap angle; defaults to the largest angle with `2r cos(α/2) = 1`.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Require the edge threshold `2r cos(α/2)` to be at most 1.
    #[arg(long)]
    pub unit_diameter: bool,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Thickening of the body.
    #[arg(long, default_value_t = 0.02)]
    pub eps: f64,
    /// Radius of the translation region; defaults to r plus the body's
    /// diameter bound.
    #[arg(long)]
    pub v_radius: Option<f64>,
    /// Points drawn per attempt.
    #[arg(long, default_value_t = 60)]
    pub m: usize,
    #[arg(long, default_value_t = 64)]
    pub max_retries: usize,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize, PartialEq)]
pub struct VerifyArgs {
    /// Certificate produced by `witness`.
    pub certificate: PathBuf,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize, PartialEq)]
pub struct JungArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    /// Number of random clouds.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Points per cloud; random in `[2, 4n]` when absent.
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Caps,
    Jung,
    Chernoff,
    Sweep,
    Cone,
    Edges,
    Coclique,
    Cover,
    Bounds,
    All,
}

#[derive(Clone, Debug, Args, Serialize, Deserialize, PartialEq)]
pub struct AuditArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub seed: u64,
    /// Monte Carlo samples per check; each suite has its own default.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Deliberately break the construction under test (cone, cover).
    #[arg(long)]
    pub fault_injection: bool,
    /// Succeed only if some check fails.
    #[arg(long)]
    pub expect_fail: bool,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}
