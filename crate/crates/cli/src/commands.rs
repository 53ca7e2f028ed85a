//! The four subcommands.

use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use susy_trm::oracle::{interior_points, Grid};
use susy_trm::{
    verify, Execution, SeedSpec, SolutionEvaluator, TransformSpec, Transformation, TrmParams,
    DEFAULT_LEVELS,
};

use crate::config::JobConfig;
use crate::error::CliError;
use crate::format::{significant, to_csv, to_json, CSV_DIGITS, SCHEMA};

/// Environment variable overriding the default oracle grid size.
pub const GRID_ENV: &str = "SUSY_TRM_GRID";
/// Default number of CSV rows.
pub const DEFAULT_SAMPLES: usize = 1000;
/// Default level count of `spectrum`.
pub const DEFAULT_SPECTRUM_LEVELS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

/// A fully validated job.
struct Job {
    config: JobConfig,
    params: TrmParams,
    mode: Execution,
}

impl Job {
    fn new(config: JobConfig) -> Result<Self, CliError> {
        let a = config
            .params
            .a
            .ok_or_else(|| CliError::config("missing parameter a"))?;
        let b = config
            .params
            .b
            .ok_or_else(|| CliError::config("missing parameter b"))?;
        let params = TrmParams::new(a, b)?;
        let mode = if config.sequential == Some(true) {
            Execution::Sequential
        } else {
            Execution::Parallel
        };
        Ok(Job {
            config,
            params,
            mode,
        })
    }

    fn format(&self, allowed: &[Format]) -> Result<Format, CliError> {
        let format = match self.config.output.format.as_deref() {
            None => allowed[0],
            Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some(other) => {
                return Err(CliError::config(format!("unknown output format {other:?}")))
            }
        };
        if !allowed.contains(&format) {
            return Err(CliError::config(format!(
                "format {format:?} is not available for this command"
            )));
        }
        Ok(format)
    }

    fn delta(&self) -> Result<f64, CliError> {
        let delta = self.config.grid.delta.unwrap_or(Grid::DEFAULT_DELTA);
        if !(delta > 0.0 && delta <= 1e-3) {
            return Err(CliError::config(format!(
                "delta must lie in (0, 1e-3], got {delta}"
            )));
        }
        Ok(delta)
    }

    fn grid(&self) -> Result<Grid, CliError> {
        let n_points = match self.config.grid.n_points {
            Some(n) => n,
            None => match std::env::var(GRID_ENV) {
                Ok(text) => text.trim().parse().map_err(|_| {
                    CliError::config(format!("{GRID_ENV} must be an integer, got {text:?}"))
                })?,
                Err(_) => Grid::DEFAULT_POINTS,
            },
        };
        Ok(Grid::new(n_points, self.delta()?)?)
    }

    fn sample_points(&self) -> Result<Vec<f64>, CliError> {
        let count = self.config.grid.points.unwrap_or(DEFAULT_SAMPLES);
        if count < 2 {
            return Err(CliError::config("points must be at least 2"));
        }
        let delta = self.delta()?;
        // abscissae are rounded to their printed form so a CSV can be re-evaluated exactly
        Ok(interior_points(delta, PI - delta, count)
            .into_iter()
            .map(|x| {
                significant(x, CSV_DIGITS)
                    .parse()
                    .expect("formatted float parses")
            })
            .collect())
    }

    fn transform_spec(&self) -> Result<TransformSpec, CliError> {
        let t = &self.config.transform;
        let seed = |field: &str, value: &Option<String>| -> Result<SeedSpec, CliError> {
            let text = value.as_deref().ok_or_else(|| {
                CliError::config(format!("--{field} is required for this transformation"))
            })?;
            Ok(text.parse::<SeedSpec>()?)
        };
        let order = match t.order {
            Some(order) => order,
            None if t.seed.is_some() && t.seed1.is_none() && t.case.is_none() => 1,
            None => 2,
        };
        match order {
            1 => {
                if t.case.is_some() {
                    return Err(CliError::config(
                        "--case applies to second-order transformations",
                    ));
                }
                Ok(TransformSpec::FirstOrder {
                    seed: seed("seed", &t.seed)?,
                })
            }
            2 => match t.case.as_deref().unwrap_or("real") {
                "real" => Ok(TransformSpec::Real {
                    seed1: seed("seed1", &t.seed1)?,
                    seed2: seed("seed2", &t.seed2)?,
                }),
                "complex" => {
                    let field = if t.seed1.is_some() { "seed1" } else { "seed" };
                    let value = if t.seed1.is_some() { &t.seed1 } else { &t.seed };
                    match seed(field, value)? {
                        SeedSpec::Complex { epsilon, side } => {
                            Ok(TransformSpec::Complex { epsilon, side })
                        }
                        other => Err(CliError::config(format!(
                            "the complex case needs a complex:<re>:<im>:<L|R> seed, got {other}"
                        ))),
                    }
                }
                "confluent" => Ok(TransformSpec::Confluent {
                    j: t.j.ok_or_else(|| {
                        CliError::config("--j is required for the confluent case")
                    })?,
                    w0: t.w0.ok_or_else(|| {
                        CliError::config("--w0 is required for the confluent case")
                    })?,
                }),
                other => Err(CliError::config(format!(
                    "unknown case {other:?}; expected real, complex or confluent"
                ))),
            },
            other => Err(CliError::config(format!(
                "order must be 1 or 2, got {other}"
            ))),
        }
    }

    fn transformation(&self) -> Result<Transformation, CliError> {
        let spec = self.transform_spec()?;
        let mut t = spec
            .build(&self.params)?
            .with_levels(self.config.levels.unwrap_or(DEFAULT_LEVELS));
        if let Some(spectrum) = &self.config.predicted_spectrum {
            t = t.with_predicted_spectrum(spectrum.clone());
        }
        Ok(t)
    }
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Output {
            path: path.to_path_buf(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Output {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

pub fn run(command: &str, config: JobConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    if let Some(expected) = &config.command {
        if expected != command {
            return Err(CliError::config(format!(
                "config is for command {expected:?}, not {command:?}"
            )));
        }
    }
    let job = Job::new(config)?;
    match command {
        "spectrum" => spectrum(&job, stdout),
        "transform" => transform(&job, stdout),
        "verify" => verification(&job, stdout),
        "eval" => eval(&job, stdout),
        other => Err(CliError::config(format!("unknown command {other:?}"))),
    }
}

#[derive(Serialize)]
struct SpectrumDocument {
    schema: &'static str,
    a: f64,
    b: f64,
    levels: Vec<Level>,
}

#[derive(Serialize)]
struct Level {
    n: usize,
    #[serde(rename = "E_n")]
    energy: f64,
}

fn spectrum(job: &Job, stdout: &mut dyn Write) -> Result<(), CliError> {
    let format = job.format(&[Format::Json, Format::Csv])?;
    let count = job.config.levels.unwrap_or(DEFAULT_SPECTRUM_LEVELS);
    let energies = job.params.spectrum(count);
    let text = match format {
        Format::Json => to_json(&SpectrumDocument {
            schema: SCHEMA,
            a: job.params.a(),
            b: job.params.b(),
            levels: energies
                .iter()
                .enumerate()
                .map(|(n, &energy)| Level { n, energy })
                .collect(),
        }),
        Format::Csv => {
            let rows: Vec<Vec<f64>> = energies
                .iter()
                .enumerate()
                .map(|(n, &e)| vec![n as f64, e])
                .collect();
            to_csv(&["n", "E_n"], &rows)
        }
    };
    emit(job.config.output.path.as_deref(), &text, stdout)
}

#[derive(Serialize)]
struct Coefficients {
    left: f64,
    right: f64,
}

#[derive(Serialize)]
struct Sidecar {
    schema: &'static str,
    a: f64,
    b: f64,
    order: u8,
    case: &'static str,
    transform: String,
    predicted_spectrum: Vec<f64>,
    singular_coefficients: Coefficients,
    warnings: Vec<String>,
    points: usize,
    delta: f64,
}

fn transform(job: &Job, stdout: &mut dyn Write) -> Result<(), CliError> {
    job.format(&[Format::Csv])?;
    let t = job.transformation()?;
    let v = t.potential();
    let points = job.sample_points()?;
    let rows = points
        .iter()
        .map(|&x| Ok(vec![x, job.params.potential(x)?, v.eval(x)?]))
        .collect::<Result<Vec<_>, CliError>>()?;
    let partner = if t.provenance().order() == 1 {
        "V1"
    } else {
        "V2"
    };
    emit(
        job.config.output.path.as_deref(),
        &to_csv(&["x", "V0", partner], &rows),
        stdout,
    )?;

    let sidecar = job.config.output.sidecar.clone().or_else(|| {
        job.config
            .output
            .path
            .as_ref()
            .map(|p| p.with_extension("json"))
    });
    if let Some(path) = sidecar {
        let c = v.singular_coefficients();
        let doc = Sidecar {
            schema: SCHEMA,
            a: job.params.a(),
            b: job.params.b(),
            order: t.provenance().order(),
            case: t.provenance().label(),
            transform: t.spec().to_string(),
            predicted_spectrum: v.predicted_spectrum().to_vec(),
            singular_coefficients: Coefficients {
                left: c.left,
                right: c.right,
            },
            warnings: v.warnings().to_vec(),
            points: points.len(),
            delta: job.delta()?,
        };
        emit(Some(&path), &to_json(&doc), stdout)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyDocument {
    schema: &'static str,
    a: f64,
    b: f64,
    case: &'static str,
    transform: String,
    passed: bool,
    n_points: usize,
    certified_tolerance: f64,
    levels: Vec<LevelReport>,
    offending: Vec<f64>,
    unexpected: Vec<f64>,
    eigenvalues: Vec<f64>,
    coarse_eigenvalues: Vec<f64>,
    node_counts: Vec<NodeCount>,
    residuals: Vec<Residual>,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct LevelReport {
    predicted: f64,
    oracle: Option<f64>,
    deviation: f64,
    matched: bool,
}

#[derive(Serialize)]
struct NodeCount {
    state: String,
    nodes: usize,
}

#[derive(Serialize)]
struct Residual {
    solution: String,
    residual: f64,
}

fn verification(job: &Job, stdout: &mut dyn Write) -> Result<(), CliError> {
    job.format(&[Format::Json])?;
    let t = job.transformation()?;
    let grid = job.grid()?;
    let report = verify(&t, &grid, job.mode)?;
    let offending: Vec<f64> = report
        .comparison
        .levels
        .iter()
        .filter(|l| !l.matched)
        .map(|l| l.predicted)
        .collect();
    let doc = VerifyDocument {
        schema: SCHEMA,
        a: job.params.a(),
        b: job.params.b(),
        case: report.provenance.label(),
        transform: t.spec().to_string(),
        passed: report.passed(),
        n_points: report.spectrum.n_points,
        certified_tolerance: report.comparison.tolerance,
        levels: report
            .comparison
            .levels
            .iter()
            .map(|l| LevelReport {
                predicted: l.predicted,
                oracle: l.oracle,
                deviation: l.deviation,
                matched: l.matched,
            })
            .collect(),
        offending: offending.clone(),
        unexpected: report.comparison.unexpected.clone(),
        eigenvalues: report.spectrum.eigenvalues.clone(),
        coarse_eigenvalues: report.spectrum.coarse_eigenvalues.clone(),
        node_counts: report
            .node_counts
            .iter()
            .map(|(state, nodes)| NodeCount {
                state: state.clone(),
                nodes: *nodes,
            })
            .collect(),
        residuals: report
            .residuals
            .iter()
            .map(|r| Residual {
                solution: r.label.clone(),
                residual: r.residual,
            })
            .collect(),
        warnings: report.warnings.clone(),
    };
    emit(job.config.output.path.as_deref(), &to_json(&doc), stdout)?;
    if report.passed() {
        return Ok(());
    }
    let mut problems = Vec::new();
    if !offending.is_empty() {
        problems.push(format!(
            "predicted levels without an oracle match: {offending:?}"
        ));
    }
    if !report.comparison.unexpected.is_empty() {
        problems.push(format!(
            "unpredicted oracle levels: {:?}",
            report.comparison.unexpected
        ));
    }
    Err(CliError::Verification(problems.join("; ")))
}

/// Resolve an `eval` selector.
fn select(job: &Job, selector: &str) -> Result<SolutionEvaluator, CliError> {
    let transformed = |what: &str| -> Result<Transformation, CliError> {
        if !job.config.has_transform() {
            return Err(CliError::config(format!(
                "state {what:?} needs a transformation (--order, --seed, ...)"
            )));
        }
        job.transformation()
    };
    let unavailable = |e: susy_trm::Error| match e {
        susy_trm::Error::Precondition(message) => CliError::Config(message),
        other => other.into(),
    };
    let nth = |states: Vec<SolutionEvaluator>, index: usize, what: &str| {
        states.into_iter().nth(index).ok_or_else(|| {
            CliError::config(format!(
                "state {what:?} does not exist for this transformation"
            ))
        })
    };
    match selector {
        "seed" | "seed1" => nth(transformed(selector)?.seeds(), 0, selector),
        "seed2" => nth(transformed(selector)?.seeds(), 1, selector),
        "missing" => {
            let t = transformed(selector)?;
            if t.provenance().order() != 1 {
                return Err(CliError::config(
                    "the missing state belongs to first-order transformations; use new1 or new2",
                ));
            }
            nth(t.new_states().map_err(unavailable)?, 0, selector)
        }
        "new1" | "new2" => {
            let t = transformed(selector)?;
            if t.provenance().order() != 2 {
                return Err(CliError::config(
                    "new1 and new2 belong to second-order transformations; use missing",
                ));
            }
            let index = if selector == "new1" { 0 } else { 1 };
            nth(t.new_states().map_err(unavailable)?, index, selector)
        }
        _ => {
            if let Some(n) = selector.strip_prefix("mapped:") {
                let n: usize = n.parse().map_err(|_| {
                    CliError::config(format!(
                        "mapped:<n> needs a non-negative integer, got {n:?}"
                    ))
                })?;
                return transformed(selector)?.mapped_state(n).map_err(unavailable);
            }
            let spec: SeedSpec = selector.parse().map_err(|e: susy_trm::Error| {
                CliError::config(format!("invalid state selector {selector:?}: {e}"))
            })?;
            Ok(spec.build(&job.params)?)
        }
    }
}

fn eval(job: &Job, stdout: &mut dyn Write) -> Result<(), CliError> {
    job.format(&[Format::Csv])?;
    let selector = job
        .config
        .state
        .as_deref()
        .ok_or_else(|| CliError::config("--state is required"))?;
    let solution = select(job, selector)?;
    let rows = job
        .sample_points()?
        .iter()
        .map(|&x| {
            let s = solution.eval(x)?;
            Ok(vec![
                x,
                s.value.re,
                s.value.im,
                s.derivative.re,
                s.derivative.im,
            ])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    emit(
        job.config.output.path.as_deref(),
        &to_csv(&["x", "re", "im", "d_re", "d_im"], &rows),
        stdout,
    )
}
