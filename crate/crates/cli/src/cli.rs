use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::str::FromStr;

/// Geometric discord, the observable bound Q and negativity for qubit-qudit
/// states. All numeric output is CSV with a header row.
#[derive(Debug, Parser)]
#[command(name = "qcorr", version)]
pub struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// D_G, Q, theta and negativity of a state file.
    Measure {
        state_file: PathBuf,
    },
    /// (D_G, Q) for random two-qubit states.
    Scatter {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// D_G, Q and entropic discord of the DQC1 output state over a grid of
    /// ancilla polarisations.
    Dqc1 {
        #[arg(long, default_value = "0:1:21")]
        mu_grid: Grid,
    },
    /// Observables needed to reach Q without tomography.
    Plan {
        #[arg(long, value_enum, default_value_t = PlanSetting::Nmr)]
        setting: PlanSetting,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Runs the multicopy and localization identity suite.
    Verify {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Correlation trajectory of a two-qubit state under a channel.
    Dynamics {
        #[command(subcommand)]
        channel: DynamicsCommand,
    },
    /// Largest D_G − Q along the evolution for a family of initial states.
    MaxGap {
        #[command(subcommand)]
        family: MaxGapCommand,
    },
    /// D_G and Q from NMR expectation values given as `label,value` CSV.
    Reconstruct {
        csv_file: PathBuf,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Writes a state file.
    State {
        #[command(subcommand)]
        kind: StateKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlanSetting {
    Nmr,
    OpticalProjective,
    OpticalSwap,
}

#[derive(Debug, Args)]
pub struct LorentzianArgs {
    #[arg(long, default_value_t = 1.0)]
    pub gamma0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
}

#[derive(Debug, Subcommand)]
pub enum DynamicsCommand {
    /// Werner state under independent Lorentzian amplitude damping.
    Lorentzian {
        #[command(flatten)]
        params: LorentzianArgs,
        #[arg(long, default_value_t = 0.75)]
        r: f64,
        #[arg(long, default_value = "0:10:501")]
        t: Grid,
        /// Write to an automatically named file in this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Bell-diagonal state under local phase flip.
    Phaseflip {
        #[arg(long, default_value = "1,-0.6,0.6", allow_hyphen_values = true)]
        c: Triple,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value = "0:2:401")]
        t: Grid,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum MaxGapCommand {
    /// Werner family over `r`, Lorentzian channel.
    Werner {
        #[command(flatten)]
        params: LorentzianArgs,
        #[arg(long, default_value = "0:1:11")]
        r_grid: Grid,
        #[arg(long, default_value = "0:10:201")]
        t: Grid,
    },
    /// `c(0) = (1, −s, s)` over `s`, phase-flip channel.
    Phaseflip {
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value = "0.05:0.95:19")]
        s_grid: Grid,
        #[arg(long, default_value = "0:2:401")]
        t: Grid,
    },
}

#[derive(Debug, Subcommand)]
pub enum StateKind {
    /// `r|Ψ⁺⟩⟨Ψ⁺| + (1−r)I/4`.
    Werner {
        #[arg(long)]
        r: f64,
    },
    /// `|Φ⁺⟩⟨Φ⁺|`.
    Bell,
    /// `(I + Σ cᵢ σᵢ⊗σᵢ)/4`.
    BellDiagonal {
        #[arg(long, allow_hyphen_values = true)]
        c: Triple,
    },
    /// Random state of rank `rank` on `2⊗d`.
    Random {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// `start:end:points`, inclusive on both ends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        qcorr_core::dqc1::linspace(self.start, self.end, self.points)
    }
}

fn finite(s: &str) -> Result<f64, String> {
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("`{s}` is not a finite number"))
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, end, points] = parts[..] else {
            return Err(format!("expected start:end:points, found `{s}`"));
        };
        let grid = Grid {
            start: finite(start)?,
            end: finite(end)?,
            points: points
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| format!("point count `{points}` is not a positive integer"))?,
        };
        if grid.points > 1 && grid.end <= grid.start {
            return Err(format!("end {} must exceed start {}", grid.end, grid.start));
        }
        Ok(grid)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triple(pub [f64; 3]);

impl FromStr for Triple {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let values = s.split(',').map(finite).collect::<Result<Vec<_>, _>>()?;
        <[f64; 3]>::try_from(values)
            .map(Triple)
            .map_err(|v| format!("expected three comma-separated numbers, found {}", v.len()))
    }
}
