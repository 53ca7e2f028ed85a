//! Job description shared by command-line flags and JSON job files.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Default, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    pub command: Option<String>,
    pub params: ParamsConfig,
    pub transform: TransformConfig,
    pub grid: GridConfig,
    pub output: OutputConfig,
    /// Number of predicted or listed levels.
    pub levels: Option<usize>,
    /// Replaces the predicted spectrum of the partner potential.
    pub predicted_spectrum: Option<Vec<f64>>,
    /// Solution selector for `eval`.
    pub state: Option<String>,
    pub sequential: Option<bool>,
}

#[derive(Debug, Default, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamsConfig {
    pub a: Option<f64>,
    pub b: Option<f64>,
}

#[derive(Debug, Default, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TransformConfig {
    pub order: Option<u8>,
    pub case: Option<String>,
    pub seed: Option<String>,
    pub seed1: Option<String>,
    pub seed2: Option<String>,
    pub j: Option<usize>,
    pub w0: Option<f64>,
}

#[derive(Debug, Default, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    /// Oracle grid size.
    pub n_points: Option<usize>,
    /// Endpoint inset.
    pub delta: Option<f64>,
    /// Rows of sampled CSV output.
    pub points: Option<usize>,
}

#[derive(Debug, Default, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub sidecar: Option<PathBuf>,
    pub format: Option<String>,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("invalid config {}: {e}", path.display())))
    }

    /// Fields set in `self` win over those in `base`.
    pub fn overlay(self, base: JobConfig) -> JobConfig {
        JobConfig {
            command: self.command.or(base.command),
            params: ParamsConfig {
                a: self.params.a.or(base.params.a),
                b: self.params.b.or(base.params.b),
            },
            transform: TransformConfig {
                order: self.transform.order.or(base.transform.order),
                case: self.transform.case.or(base.transform.case),
                seed: self.transform.seed.or(base.transform.seed),
                seed1: self.transform.seed1.or(base.transform.seed1),
                seed2: self.transform.seed2.or(base.transform.seed2),
                j: self.transform.j.or(base.transform.j),
                w0: self.transform.w0.or(base.transform.w0),
            },
            grid: GridConfig {
                n_points: self.grid.n_points.or(base.grid.n_points),
                delta: self.grid.delta.or(base.grid.delta),
                points: self.grid.points.or(base.grid.points),
            },
            output: OutputConfig {
                path: self.output.path.or(base.output.path),
                sidecar: self.output.sidecar.or(base.output.sidecar),
                format: self.output.format.or(base.output.format),
            },
            levels: self.levels.or(base.levels),
            predicted_spectrum: self.predicted_spectrum.or(base.predicted_spectrum),
            state: self.state.or(base.state),
            sequential: self.sequential.or(base.sequential),
        }
    }

    pub fn has_transform(&self) -> bool {
        let t = &self.transform;
        t.order.is_some()
            || t.case.is_some()
            || t.seed.is_some()
            || t.seed1.is_some()
            || t.seed2.is_some()
            || t.j.is_some()
    }
}
