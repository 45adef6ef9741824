//! The `qhj-spectra` command line.
//!
//! Every subcommand prints one JSON document (CSV for `sample`) and exits
//! with 0 on success, 1 when the oracle rejects an analytic or printed
//! level, and 2 on usage or parameter errors.

mod config;
pub mod format;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::oracle::{adjudicate, default_grid, verify_qes, Candidate};
use crate::potential::{classify_symmetry, evaluate_potential, PotentialParams, Variant, COMPLEX_VARIANT_ALPHA};
use crate::qes::{
    build_pencil, evaluate_wavefunction, printed_energy, reproduce_reference_tables, solve_levels,
    wavefunction, ClosedFormWavefunction, QesLevel,
};
use crate::qhj::{enumerate_qes_sets, infinity_analysis};

pub use config::{
    merge, working_point, CliError, CliResult, CommonArgs, FileConfig, Format, SampleFlags,
    Settings, WorkingPoint, CONFIG_ENV, DEFAULT_TOLERANCE, LAMBDA_TOLERANCE,
};

pub const DEFAULT_SAMPLE_POINTS: usize = 1001;

#[derive(Debug, Parser)]
#[command(name = "qhj-spectra", version, about = "Quasi-exactly-solvable levels of V1 sinh²(αx) + V2 cosh(αx)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// PT symmetry, the exponent lambda and the admissible residue sets
    Classify(CommonArgs),
    /// Closed-form energies and eigenfunctions
    Solve(CommonArgs),
    /// Check the closed-form levels against the finite-difference oracle
    Verify(VerifyArgs),
    /// Potential and eigenfunctions on a uniform grid, as CSV
    Sample(SampleArgs),
    /// Reference tables next to the computed values, with adjudication flags
    Table(CommonArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Check the printed M = 3 energies instead of the computed ones
    #[arg(long = "assert-paper-table-3.2")]
    pub table_3_2: bool,
    /// Check the printed M = 2 energies instead of the computed ones
    #[arg(long = "assert-paper-table-3.3", conflicts_with = "table_3_2")]
    pub table_3_3: bool,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Left end of the range [default: -5/alpha]
    #[arg(long, allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    /// Right end of the range [default: 5/alpha]
    #[arg(long, allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    /// Number of rows [default: 1001]
    #[arg(long)]
    pub points: Option<usize>,
}

/// What a run produced: the exit code, the document, and where it goes.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub body: String,
    /// `None` means stdout.
    pub output: Option<PathBuf>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify(_) => "classify",
            Command::Solve(_) => "solve",
            Command::Verify(_) => "verify",
            Command::Sample(_) => "sample",
            Command::Table(_) => "table",
        }
    }

    fn settings(&self) -> CliResult<Settings> {
        match self {
            Command::Classify(c) | Command::Solve(c) | Command::Table(c) => merge(c, SampleFlags::default()),
            Command::Verify(v) => merge(&v.common, SampleFlags::default()),
            Command::Sample(s) => merge(
                &s.common,
                SampleFlags {
                    x_min: s.x_min,
                    x_max: s.x_max,
                    points: s.points,
                },
            ),
        }
    }
}

fn json_body(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Parse `args` (including the program name) and run the command without
/// touching stdout or the file system.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            let body = if code == 0 {
                text
            } else {
                json_body(&format::error(None, "usage", text.trim()))
            };
            return Outcome { code, body, output: None };
        }
    };
    run(&cli.command)
}

pub fn run(command: &Command) -> Outcome {
    let name = command.name();
    let settings = match command.settings() {
        Ok(s) => s,
        Err(e) => return failure(name, &e),
    };
    let result = match command {
        Command::Classify(_) => classify(&settings).map(|d| (0, json_body(&d))),
        Command::Solve(_) => json_only(&settings, name).and_then(|_| solve(&settings)).map(|d| (0, json_body(&d))),
        Command::Verify(v) => json_only(&settings, name).and_then(|_| verify(&settings, v)),
        Command::Sample(_) => sample(&settings),
        Command::Table(_) => json_only(&settings, name).and_then(|_| table(&settings)).map(|d| (0, json_body(&d))),
    };
    match result {
        Ok((code, body)) => Outcome {
            code,
            body,
            output: settings.output.clone(),
        },
        Err(e) => failure(name, &e),
    }
}

fn failure(command: &str, e: &CliError) -> Outcome {
    let doc = format::error(Some(command), e.kind(), &e.message());
    Outcome {
        code: e.exit_code(),
        body: json_body(&doc),
        output: None,
    }
}

fn json_only(settings: &Settings, command: &str) -> CliResult<()> {
    match settings.format {
        Some(Format::Csv) => Err(CliError::Usage(format!(
            "{command} only writes JSON; csv is available for sample"
        ))),
        _ => Ok(()),
    }
}

/// Entry point for the binary: writes the document and returns the exit code.
pub fn main() -> i32 {
    let outcome = execute(std::env::args_os());
    match &outcome.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &outcome.body) {
                let err = CliError::Io(format!("cannot write {}: {e}", path.display()));
                print!("{}", json_body(&format::error(None, err.kind(), &err.message())));
                return err.exit_code();
            }
        }
        None => print!("{}", outcome.body),
    }
    outcome.code
}

fn classify(settings: &Settings) -> CliResult<Value> {
    let v1 = settings.v1()?;
    let v2 = settings
        .v2
        .ok_or_else(|| CliError::Usage("--v2 is required".into()))?;
    let (params, classification) = if settings.variant == Variant::RealSinhGordon {
        let params = PotentialParams::new(v1, v2, settings.alpha()?)?;
        params.require_positive_v1()?;
        let lambda = infinity_analysis(&params)?.lambda;
        let c = enumerate_qes_sets(lambda, LAMBDA_TOLERANCE)?;
        (params, format::classification(&c))
    } else {
        (PotentialParams::new(v1, v2, COMPLEX_VARIANT_ALPHA)?, Value::Null)
    };
    let report = classify_symmetry(&params, settings.variant)?;
    Ok(json!({
        "command": "classify",
        "params": format::params(params.v1(), params.v2(), params.alpha(), settings.variant),
        "symmetry": format::symmetry(&report),
        "classification": classification,
    }))
}

fn levels_with_wavefunctions(wp: &WorkingPoint) -> CliResult<Vec<(QesLevel, ClosedFormWavefunction)>> {
    let mut out = Vec::new();
    for set in &wp.classification.sets {
        for level in solve_levels(&build_pencil(set, &wp.params)?, &wp.params)? {
            let wf = wavefunction(&level, &wp.params)?;
            out.push((level, wf));
        }
    }
    out.sort_by(|a, b| a.0.energy.partial_cmp(&b.0.energy).unwrap());
    Ok(out)
}

fn working_point_header(wp: &WorkingPoint) -> Value {
    json!({
        "params": format::params(wp.params.v1(), wp.params.v2(), wp.params.alpha(), Variant::RealSinhGordon),
        "classification": format::classification(&wp.classification),
    })
}

fn with_header(command: &str, wp: &WorkingPoint, fields: Value) -> Value {
    let mut doc = working_point_header(wp);
    let map = doc.as_object_mut().expect("header is an object");
    map.insert("command".into(), Value::String(command.into()));
    if let Value::Object(extra) = fields {
        map.extend(extra);
    }
    doc
}

fn solve(settings: &Settings) -> CliResult<Value> {
    let wp = working_point(settings, None)?;
    let levels = levels_with_wavefunctions(&wp)?;
    let levels: Vec<Value> = levels.iter().map(|(l, wf)| format::level(l, wf)).collect();
    Ok(with_header("solve", &wp, json!({ "levels": levels })))
}

/// Printed energies of one reference table as oracle candidates, with the
/// `λ` the table is stated at.
fn printed_candidates(table: &str, params: &PotentialParams) -> Vec<Candidate> {
    let sets: &[(u8, u32)] = if table == "3.2" { &[(1, 1), (2, 0)] } else { &[(3, 0), (4, 0)] };
    sets.iter()
        .filter_map(|&(set, n)| {
            printed_energy(table, set, params.v1(), params.alpha()).map(|energy| Candidate {
                label: format!("table {table} set {set} printed"),
                set_index: Some(set),
                n: Some(n),
                energy,
                node_count: None,
                parity: None,
            })
        })
        .collect()
}

fn verify(settings: &Settings, args: &VerifyArgs) -> CliResult<(i32, String)> {
    let table = match (args.table_3_2, args.table_3_3) {
        (true, _) => Some(("3.2", 1.5)),
        (_, true) => Some(("3.3", 1.0)),
        _ => None,
    };
    let wp = working_point(settings, table.map(|t| t.1))?;
    let mode = table.map_or("analytic".to_string(), |(t, _)| format!("paper-table-{t}"));
    let result = match table {
        None => {
            let grid = settings.grid(&wp.params, wp.classification.total_levels as usize + 2)?;
            verify_qes(&wp.params, &wp.classification, settings.tol, grid)
        }
        Some((t, lambda)) => {
            if (wp.classification.lambda - lambda).abs() > LAMBDA_TOLERANCE {
                return Err(CliError::Usage(format!(
                    "table {t} is stated at lambda = {lambda}, not {}",
                    wp.classification.lambda
                )));
            }
            let candidates = printed_candidates(t, &wp.params);
            let grid = match settings.grid(&wp.params, candidates.len() + 2)? {
                Some(g) => g,
                None => default_grid(&wp.params, candidates.len() + 2)?,
            };
            adjudicate(&wp.params, &grid, &candidates, settings.tol)
        }
    };
    match result {
        Ok(report) => {
            let code = if report.overall_pass { 0 } else { 1 };
            let doc = with_header(
                "verify",
                &wp,
                json!({ "mode": mode, "report": format::verification(&report) }),
            );
            Ok((code, json_body(&doc)))
        }
        Err(e) if e.is_mismatch() => {
            let err = CliError::Library(e);
            let mut doc = with_header("verify", &wp, json!({ "mode": mode }));
            doc.as_object_mut()
                .expect("header is an object")
                .insert("error".into(), json!({ "kind": err.kind(), "message": err.message() }));
            Ok((err.exit_code(), json_body(&doc)))
        }
        Err(e) => Err(e.into()),
    }
}

fn sample(settings: &Settings) -> CliResult<(i32, String)> {
    let wp = working_point(settings, None)?;
    let alpha = wp.params.alpha();
    let x_min = settings.x_min.unwrap_or(-5.0 / alpha);
    let x_max = settings.x_max.unwrap_or(5.0 / alpha);
    let points = settings.points.unwrap_or(DEFAULT_SAMPLE_POINTS);
    if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
        return Err(CliError::Usage("need finite --x-min < --x-max".into()));
    }
    if points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let levels = levels_with_wavefunctions(&wp)?;
    let mut header = vec!["x".to_string(), "V".to_string()];
    header.extend(levels.iter().map(|(l, _)| {
        format!("psi[set={} n={} E={}]", l.set.set_index, l.set.n, format::number(l.energy))
    }));
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let x = x_min + (x_max - x_min) * i as f64 / (points - 1) as f64;
        let mut row = vec![x, evaluate_potential(&wp.params, Variant::RealSinhGordon, x)?.re];
        row.extend(levels.iter().map(|(_, wf)| evaluate_wavefunction(wf, x)));
        rows.push(row);
    }

    let body = match settings.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Io(e.to_string());
            w.write_record(&header).map_err(io)?;
            for row in &rows {
                w.write_record(row.iter().map(|v| format::number(*v))).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
            String::from_utf8(bytes).expect("CSV output is ASCII")
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| Value::Array(r.iter().map(|v| format::num(*v)).collect()))
                .collect();
            json_body(&with_header("sample", &wp, json!({ "columns": header, "rows": rows })))
        }
    };
    Ok((0, body))
}

fn table(settings: &Settings) -> CliResult<Value> {
    let v1 = settings.v1.unwrap_or(1.0);
    let alpha = settings.alpha.unwrap_or(1.0);
    let params = PotentialParams::new(v1, 0.0, alpha)?;
    params.require_positive_v1()?;
    let tables = reproduce_reference_tables(v1, params.alpha())?;
    let mut doc = format::tables(&tables);
    doc.as_object_mut()
        .expect("tables render as an object")
        .insert("command".into(), Value::String("table".into()));
    Ok(doc)
}
