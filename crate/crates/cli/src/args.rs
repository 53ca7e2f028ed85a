//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{GridConfig, JobConfig, OutputConfig, ParamsConfig, TransformConfig};

#[derive(Debug, Parser)]
#[command(
    name = "susy-trm",
    version,
    about = "SUSY partners of the trigonometric Rosen-Morse potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form bound-state energies.
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample the initial and partner potentials.
    Transform {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        transform: TransformArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the predicted spectrum of a partner with the numerical oracle.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        transform: TransformArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample a solution: a seed, a bound state, or a mapped/new state.
    Eval {
        #[command(flatten)]
        common: CommonArgs,
        /// bound:<n>, general:<eps>:<lambda>, L:<eps>, R:<eps>, complex:<re>:<im>:<L|R>,
        /// seed1, seed2, missing, new1, new2 or mapped:<n>
        #[arg(long)]
        state: Option<String>,
        #[command(flatten)]
        transform: TransformArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum { .. } => "spectrum",
            Command::Transform { .. } => "transform",
            Command::Verify { .. } => "verify",
            Command::Eval { .. } => "eval",
        }
    }

    pub fn config_path(&self) -> Option<&PathBuf> {
        match self {
            Command::Spectrum { common, .. }
            | Command::Transform { common, .. }
            | Command::Verify { common, .. }
            | Command::Eval { common, .. } => common.config.as_ref(),
        }
    }

    /// The job described by the flags alone.
    pub fn to_config(&self) -> JobConfig {
        let mut job = JobConfig::default();
        match self {
            Command::Spectrum { common, output } => {
                common.apply(&mut job);
                output.apply(&mut job);
            }
            Command::Transform {
                common,
                transform,
                grid,
                output,
            }
            | Command::Verify {
                common,
                transform,
                grid,
                output,
            } => {
                common.apply(&mut job);
                transform.apply(&mut job);
                grid.apply(&mut job);
                output.apply(&mut job);
            }
            Command::Eval {
                common,
                state,
                transform,
                grid,
                output,
            } => {
                common.apply(&mut job);
                transform.apply(&mut job);
                grid.apply(&mut job);
                output.apply(&mut job);
                job.state = state.clone();
            }
        }
        job
    }
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Number of levels to list or predict.
    #[arg(long)]
    pub levels: Option<usize>,
    /// JSON job file; flags take precedence over its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Run the oracle single-threaded.
    #[arg(long)]
    pub sequential: bool,
}

impl CommonArgs {
    fn apply(&self, job: &mut JobConfig) {
        job.params = ParamsConfig {
            a: self.a,
            b: self.b,
        };
        job.levels = self.levels;
        job.sequential = self.sequential.then_some(true);
    }
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// 1 or 2.
    #[arg(long)]
    pub order: Option<u8>,
    /// real, complex or confluent (second order).
    #[arg(long)]
    pub case: Option<String>,
    /// First-order seed.
    #[arg(long, allow_hyphen_values = true)]
    pub seed: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub seed1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub seed2: Option<String>,
    /// Bound state index of the confluent case.
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub w0: Option<f64>,
}

impl TransformArgs {
    fn apply(&self, job: &mut JobConfig) {
        job.transform = TransformConfig {
            order: self.order,
            case: self.case.clone(),
            seed: self.seed.clone(),
            seed1: self.seed1.clone(),
            seed2: self.seed2.clone(),
            j: self.j,
            w0: self.w0,
        };
    }
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Oracle grid size (default from SUSY_TRM_GRID or 4001).
    #[arg(long)]
    pub n_points: Option<usize>,
    /// Endpoint inset of grids and samples.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Rows of CSV output.
    #[arg(long)]
    pub points: Option<usize>,
}

impl GridArgs {
    fn apply(&self, job: &mut JobConfig) {
        job.grid = GridConfig {
            n_points: self.n_points,
            delta: self.delta,
            points: self.points,
        };
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file (stdout when absent).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// JSON sidecar of `transform`.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
    /// json or csv.
    #[arg(long)]
    pub format: Option<String>,
}

impl OutputArgs {
    fn apply(&self, job: &mut JobConfig) {
        job.output = OutputConfig {
            path: self.output.clone(),
            sidecar: self.sidecar.clone(),
            format: self.format.clone(),
        };
    }
}
