use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use principalize_core::oracle::{replay_trace, OracleConfig, VerificationReport};
use principalize_core::{principalize_many, EngineConfig};
use serde::Serialize;

use crate::dot::to_dot;
use crate::error::{CliError, InputError};
use crate::instance::Instance;
use crate::trace_file::TraceFile;

pub const MAX_LEAVES_VAR: &str = "PRINCIPALIZE_MAX_LEAVES";

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Read {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), InputError> {
    fs::write(path, text).map_err(|source| InputError::Write {
        path: path.to_owned(),
        source,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), InputError> {
    match out {
        Some(path) => write(path, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| InputError::Write {
                path: "<stdout>".into(),
                source,
            }),
    }
}

pub fn load_instance(path: &Path) -> Result<Instance, InputError> {
    Instance::parse(&read(path)?).map_err(|e| in_file(path, e))
}

pub fn load_trace(path: &Path) -> Result<TraceFile, InputError> {
    TraceFile::parse(&read(path)?).map_err(|e| in_file(path, e))
}

fn in_file(path: &Path, e: InputError) -> InputError {
    InputError::Invalid(format!("{}: {e}", path.display()))
}

pub fn cmd_run(
    instance: &Path,
    out: Option<&Path>,
    max_steps: Option<usize>,
) -> Result<(), CliError> {
    let inst = load_instance(instance)?;
    let state = inst.to_state()?;
    let config = EngineConfig {
        max_steps: max_steps.unwrap_or(EngineConfig::DEFAULT_MAX_STEPS),
    };
    let (_, trace) = principalize_many(&state, &config)?;
    emit(out, &TraceFile::new(trace).to_json())?;
    Ok(())
}

/// Oracle leaf cap, from the environment if set.
pub fn oracle_config() -> Result<OracleConfig, InputError> {
    match std::env::var(MAX_LEAVES_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(|max_leaves| OracleConfig { max_leaves })
            .map_err(|_| InputError::Invalid(format!("{MAX_LEAVES_VAR}={v:?} is not a count"))),
        Err(std::env::VarError::NotPresent) => Ok(OracleConfig::default()),
        Err(e) => Err(InputError::Invalid(format!("{MAX_LEAVES_VAR}: {e}"))),
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReportFile<'a> {
    pub format_version: u32,
    pub certified: bool,
    pub error: Option<String>,
    pub report: Option<&'a VerificationReport>,
}

/// `<trace>.report.json` next to the trace.
pub fn report_path(trace: &Path) -> PathBuf {
    let mut name = trace.file_name().unwrap_or_default().to_os_string();
    name.push(".report.json");
    trace.with_file_name(name)
}

pub fn cmd_verify(instance: &Path, trace: &Path) -> Result<(), CliError> {
    let inst = load_instance(instance)?;
    if !inst.toric {
        return Err(InputError::Invalid(format!(
            "{}: verify handles toric instances only (set toric = true)",
            instance.display()
        ))
        .into());
    }
    let file = load_trace(trace)?;
    let config = oracle_config()?;
    let replayed = replay_trace(
        inst.supports.len(),
        inst.coeff_matrix(),
        &file.trace,
        &config,
    );
    let (report, verdict) = match &replayed {
        Ok(report) => (Some(report), report.verdict()),
        Err(e) => (None, Err(e.clone())),
    };
    let record = VerifyReportFile {
        format_version: crate::trace_file::FORMAT_VERSION,
        certified: verdict.is_ok(),
        error: verdict.as_ref().err().map(ToString::to_string),
        report,
    };
    let mut text = serde_json::to_string_pretty(&record).expect("report serializes");
    text.push('\n');
    write(&report_path(trace), &text)?;
    verdict?;
    Ok(())
}

pub fn cmd_export_dot(trace: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let file = load_trace(trace)?;
    emit(out, &to_dot(&file))?;
    Ok(())
}
