//! Batch front end for `moment-core`: one job reads a moment sequence, runs
//! one command and produces a deterministic report.

pub mod commands;
pub mod ingest;
pub mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use moment_core::families;
use moment_core::{Error, MomentSequence};
use serde_json::{json, Value};

use crate::commands::CommandRegistry;
use crate::ingest::SchemaError;
use crate::report::{digest, mode_tag, Renderer};

pub const MIN_PRECISION: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    File(PathBuf),
    Generator { name: String, terms: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// Command-specific parameters as given on the command line.
pub type Params = BTreeMap<&'static str, String>;

#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub command: String,
    pub input: Input,
    pub params: Params,
    pub precision: u32,
    pub format: Format,
}

#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Schema(SchemaError),
    Core(Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }

    fn record(&self) -> Value {
        match self {
            Failure::Validation(msg) => json!({
                "class": "validation",
                "code": "InvalidParameter",
                "message": msg,
            }),
            Failure::Schema(e) => json!({
                "class": "validation",
                "code": "SchemaError",
                "message": e.message,
                "line": e.line,
                "column": e.column,
                "field": e.field,
            }),
            Failure::Core(e) => {
                let debug = format!("{e:?}");
                let code: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
                json!({
                    "class": if e.is_numerical() { "numerical" } else { "validation" },
                    "code": code,
                    "message": e.to_string(),
                })
            }
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Validation(msg) => f.write_str(msg),
            Failure::Schema(e) => write!(f, "schema error: {e}"),
            Failure::Core(e) => e.fmt(f),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        Failure::Schema(e)
    }
}

/// Finished job: the exit code and the document to emit.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    /// Report or error record as JSON, or the CSV table.
    pub body: String,
    pub error: Option<String>,
}

fn reproducibility(job: &JobSpec) -> Value {
    let mut params: serde_json::Map<String, Value> = job
        .params
        .iter()
        .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
        .collect();
    params.insert("precision".into(), json!(job.precision));
    params.insert("format".into(), json!(job.format.as_str()));
    match &job.input {
        Input::File(p) => params.insert("file".into(), json!(p.display().to_string())),
        Input::Generator { name, terms } => {
            params.insert("terms".into(), json!(terms));
            params.insert("generator".into(), json!(name))
        }
    };
    json!({
        "tool": "moments",
        "version": env!("CARGO_PKG_VERSION"),
        "command": job.command,
        "parameters": params,
    })
}

fn input_block(job: &JobSpec, seq: &MomentSequence) -> Value {
    let source = match &job.input {
        Input::File(p) => json!({ "file": p.display().to_string() }),
        Input::Generator { name, terms } => json!({ "generator": name, "terms": terms }),
    };
    json!({
        "source": source,
        "kind": seq.kind.as_str(),
        "label": seq.label,
        "max_index": seq.k(),
        "mode": mode_tag(seq.mode()),
        "digest": digest(seq),
    })
}

fn load(job: &JobSpec) -> Result<MomentSequence, Failure> {
    match &job.input {
        Input::File(path) => Ok(ingest::read_moments(path, job.precision)?),
        Input::Generator { name, terms } => Ok(families::generate(name, *terms, job.precision)?),
    }
}

fn execute(job: &JobSpec, registry: &CommandRegistry) -> Result<(Value, Option<String>), Failure> {
    if job.precision < MIN_PRECISION {
        return Err(Failure::Validation(format!(
            "precision must be at least {MIN_PRECISION} bits"
        )));
    }
    let command = registry.get(&job.command).ok_or_else(|| {
        Failure::Validation(format!(
            "unknown command `{}`; expected one of {}",
            job.command,
            registry.names().join(", ")
        ))
    })?;
    if job.format == Format::Csv && !command.tabular() {
        return Err(Failure::Validation(format!(
            "csv output is only available for tabular commands, not `{}`",
            job.command
        )));
    }
    if let Some(extra) = job.params.keys().find(|k| !command.params().contains(k)) {
        return Err(Failure::Validation(format!(
            "--{extra} does not apply to `{}`",
            job.command
        )));
    }
    let plan = command.plan(&job.params, job.precision).map_err(Failure::Validation)?;
    let seq = load(job)?;
    let renderer = Renderer::new(job.precision);
    let out = plan.execute(&seq, job.precision, &renderer)?;
    let doc = json!({
        "status": "ok",
        "command": job.command,
        "input": input_block(job, &seq),
        "precision_bits": job.precision,
        "float_digits": renderer.digits,
        "result": out.result,
        "reproducibility": reproducibility(job),
    });
    let csv = match (job.format, out.table) {
        (Format::Csv, Some(t)) => Some(t.to_csv().map_err(|e| Failure::Validation(e.to_string()))?),
        _ => None,
    };
    Ok((doc, csv))
}

pub fn run(job: &JobSpec) -> Outcome {
    run_with(job, &CommandRegistry::standard())
}

pub fn run_with(job: &JobSpec, registry: &CommandRegistry) -> Outcome {
    match execute(job, registry) {
        Ok((_, Some(csv))) => Outcome {
            exit_code: 0,
            body: csv,
            error: None,
        },
        Ok((doc, None)) => Outcome {
            exit_code: 0,
            body: pretty(&doc),
            error: None,
        },
        Err(f) => {
            let doc = json!({
                "status": "error",
                "command": job.command,
                "error": f.record(),
                "reproducibility": reproducibility(job),
            });
            Outcome {
                exit_code: f.exit_code(),
                body: pretty(&doc),
                error: Some(f.to_string()),
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}
