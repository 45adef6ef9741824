//! Flag and config-file merging, and selection of the working point.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use crate::error::Error;
use crate::oracle::{default_grid, GridSpec};
use crate::potential::{PotentialParams, Variant};
use crate::qhj::{enumerate_qes_sets, infinity_analysis, qes_target_v2, ratio_to_f64, QesClassification, QesSet};

pub const CONFIG_ENV: &str = "QHJ_SPECTRA_CONFIG";
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// How close `λ - b₁ - b₁'` must be to an integer for a set to be admitted.
pub const LAMBDA_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Failures of the command line itself, as opposed to the library.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Config(String),
    Io(String),
    Library(Error),
}

impl CliError {
    pub fn kind(&self) -> &str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Config(_) => "config",
            CliError::Io(_) => "io",
            CliError::Library(e) => e.kind(),
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Config(m) | CliError::Io(m) => m.clone(),
            CliError::Library(e) => e.to_string(),
        }
    }

    /// 1 for oracle mismatches, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(e) if e.is_mismatch() => 1,
            _ => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Flags shared by every subcommand. A config file uses the same names.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub v1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub v2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// real, i-cosh or i-sinh
    #[arg(long)]
    pub variant: Option<String>,
    /// Residue set 1..4; needs --n
    #[arg(long)]
    pub set: Option<u8>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Oracle box half-width L
    #[arg(long)]
    pub grid_l: Option<f64>,
    /// Oracle interior point count N
    #[arg(long)]
    pub grid_n: Option<usize>,
    /// Oracle match tolerance [default: 1e-6]
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON file with the same field names as the flags
    #[arg(long, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FileConfig {
    pub v1: Option<f64>,
    pub v2: Option<f64>,
    pub alpha: Option<f64>,
    pub variant: Option<String>,
    pub set: Option<u8>,
    pub n: Option<u32>,
    pub lambda: Option<f64>,
    pub grid_l: Option<f64>,
    pub grid_n: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
}

pub fn read_config(path: &Path) -> CliResult<FileConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Flags merged over the config file.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    pub v1: Option<f64>,
    pub v2: Option<f64>,
    pub alpha: Option<f64>,
    pub variant: Variant,
    pub set: Option<u8>,
    pub n: Option<u32>,
    pub lambda: Option<f64>,
    pub grid_l: Option<f64>,
    pub grid_n: Option<usize>,
    pub tol: f64,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
}

/// Sample-only flags, merged the same way.
#[derive(Debug, Clone, Copy, Default)]
pub struct SampleFlags {
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
}

pub fn merge(flags: &CommonArgs, sample: SampleFlags) -> CliResult<Settings> {
    let file = match &flags.config {
        Some(path) => read_config(path)?,
        None => FileConfig::default(),
    };
    let variant = match flags.variant.as_ref().or(file.variant.as_ref()) {
        Some(tag) => tag.parse::<Variant>().map_err(|e| CliError::Usage(e.to_string()))?,
        None => Variant::RealSinhGordon,
    };
    let tol = flags.tol.or(file.tol).unwrap_or(DEFAULT_TOLERANCE);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    Ok(Settings {
        v1: flags.v1.or(file.v1),
        v2: flags.v2.or(file.v2),
        alpha: flags.alpha.or(file.alpha),
        variant,
        set: flags.set.or(file.set),
        n: flags.n.or(file.n),
        lambda: flags.lambda.or(file.lambda),
        grid_l: flags.grid_l.or(file.grid_l),
        grid_n: flags.grid_n.or(file.grid_n),
        tol,
        format: flags.format.or(file.format),
        output: flags.output.clone().or(file.output),
        x_min: sample.x_min.or(file.x_min),
        x_max: sample.x_max.or(file.x_max),
        points: sample.points.or(file.points),
    })
}

fn required(value: Option<f64>, flag: &str) -> CliResult<f64> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
}

impl Settings {
    pub fn v1(&self) -> CliResult<f64> {
        required(self.v1, "v1")
    }

    pub fn alpha(&self) -> CliResult<f64> {
        required(self.alpha, "alpha")
    }

    /// Grid flags over the default grid for `levels` levels.
    pub fn grid(&self, params: &PotentialParams, levels: usize) -> CliResult<Option<GridSpec>> {
        if self.grid_l.is_none() && self.grid_n.is_none() {
            return Ok(None);
        }
        let base = default_grid(params, levels)?;
        let grid = GridSpec::new(
            self.grid_l.unwrap_or(base.half_width),
            self.grid_n.unwrap_or(base.points),
        )?;
        Ok(Some(grid))
    }
}

/// The parameters and admissible sets a solve, verify or sample run works on.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkingPoint {
    pub params: PotentialParams,
    pub classification: QesClassification,
}

enum Selector {
    V2(f64),
    Set(QesSet),
    Lambda(f64),
}

fn selector(settings: &Settings) -> CliResult<Selector> {
    let set = match (settings.set, settings.n) {
        (Some(i), Some(n)) => Some(QesSet::new(i, n)?),
        (None, None) => None,
        _ => return Err(CliError::Usage("--set and --n must be given together".into())),
    };
    let given = [settings.v2.is_some(), set.is_some(), settings.lambda.is_some()];
    match given.iter().filter(|g| **g).count() {
        0 => Err(CliError::Usage(
            "one of --v2, --set with --n, or --lambda is required".into(),
        )),
        1 => Ok(if let Some(v2) = settings.v2 {
            Selector::V2(v2)
        } else if let Some(set) = set {
            Selector::Set(set)
        } else {
            Selector::Lambda(settings.lambda.unwrap())
        }),
        _ => Err(CliError::Usage(
            "--v2, --set with --n, and --lambda are mutually exclusive".into(),
        )),
    }
}

/// Resolve the working point; `fallback_lambda` is used when no selector is
/// given at all.
pub fn working_point(settings: &Settings, fallback_lambda: Option<f64>) -> CliResult<WorkingPoint> {
    if settings.variant != Variant::RealSinhGordon {
        return Err(Error::UnsupportedBranch(format!(
            "the {} variant has complex lambda and no physical QES levels",
            settings.variant
        ))
        .into());
    }
    let v1 = settings.v1()?;
    let alpha = settings.alpha()?;
    let unselected = settings.v2.is_none() && settings.set.is_none() && settings.n.is_none() && settings.lambda.is_none();
    let sel = match fallback_lambda {
        Some(l) if unselected => Selector::Lambda(l),
        _ => selector(settings)?,
    };
    let (params, classification) = match sel {
        Selector::V2(v2) => {
            let params = PotentialParams::new(v1, v2, alpha)?;
            params.require_positive_v1()?;
            let lambda = infinity_analysis(&params)?.lambda;
            (params, enumerate_qes_sets(lambda, LAMBDA_TOLERANCE)?)
        }
        Selector::Set(set) => {
            let params = PotentialParams::new(v1, 0.0, alpha)?;
            params.require_positive_v1()?;
            let params = params.with_v2(qes_target_v2(&set, v1, params.alpha())?)?;
            let classification = QesClassification {
                lambda: ratio_to_f64(&set.lambda()),
                sets: vec![set],
                total_levels: set.n + 1,
            };
            (params, classification)
        }
        Selector::Lambda(lambda) => {
            let params = PotentialParams::new(v1, 0.0, alpha)?;
            params.require_positive_v1()?;
            let v2 = -2.0 * v1.sqrt() * params.alpha() * lambda;
            (params.with_v2(v2)?, enumerate_qes_sets(lambda, LAMBDA_TOLERANCE)?)
        }
    };
    if classification.is_empty() {
        return Err(Error::NoAdmissibleSets(classification.lambda).into());
    }
    Ok(WorkingPoint {
        params,
        classification,
    })
}
