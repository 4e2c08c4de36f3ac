//! Trace files: pretty-printed JSON with a top-level `format_version`.
//!
//! Field order follows the struct definitions, so identical runs give
//! byte-identical files. `σ` is written as `"-inf"` or `[p, q]`.

use principalize_core::{blowup_nerve, Nerve, Trace};
use serde::{Deserialize, Serialize};

use crate::error::InputError;
use crate::instance::position;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceFile {
    pub format_version: u32,
    pub trace: Trace,
}

impl TraceFile {
    pub fn new(trace: Trace) -> Self {
        TraceFile {
            format_version: FORMAT_VERSION,
            trace,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("trace serializes");
        s.push('\n');
        s
    }

    /// Parses and checks that the trace is internally consistent: a valid
    /// initial state, dense labels and centers, and a final nerve obtained
    /// by replaying the centers.
    pub fn parse(text: &str) -> Result<TraceFile, InputError> {
        let file: TraceFile = serde_json::from_str(text).map_err(|e| {
            let offset = text
                .split_inclusive('\n')
                .take(e.line().saturating_sub(1))
                .map(str::len)
                .sum::<usize>()
                + e.column().saturating_sub(1);
            let (line, column) = position(text, offset);
            InputError::At {
                line,
                column,
                message: e.to_string(),
            }
        })?;
        if file.format_version != FORMAT_VERSION {
            return Err(InputError::Invalid(format!(
                "unsupported trace format_version {}, expected {FORMAT_VERSION}",
                file.format_version
            )));
        }
        let trace = &file.trace;
        let invalid = |m: String| InputError::Invalid(format!("inconsistent trace: {m}"));
        let initial = &trace.initial;
        initial.validate().map_err(|e| invalid(e.to_string()))?;
        check_normalized(initial.nerve()).map_err(invalid)?;
        check_normalized(&trace.final_nerve).map_err(invalid)?;
        if initial.step != 0 {
            return Err(invalid(format!("initial step is {}", initial.step)));
        }
        for (k, label) in initial.arrangement.labels().iter().enumerate() {
            if label.id != k {
                return Err(invalid(format!("label {k} has id {}", label.id)));
            }
        }
        let n = initial.arrangement.vertex_count();
        let mut nerve = initial.nerve().clone();
        for (t, step) in trace.steps.iter().enumerate() {
            if step.step != t + 1 || step.new_label.id != n + t {
                return Err(invalid(format!("step {} is out of sequence", t + 1)));
            }
            if step.exceptional_coeffs.len() != initial.divisors.len() {
                return Err(invalid(format!(
                    "step {} has wrong coefficient count",
                    t + 1
                )));
            }
            nerve = blowup_nerve(&nerve, step.center)
                .map_err(|e| invalid(format!("step {}: {e}", t + 1)))?;
        }
        if nerve != trace.final_nerve {
            return Err(invalid(
                "final nerve does not follow from the centers".into(),
            ));
        }
        Ok(file)
    }

    /// Name of support `id`, following exceptional labels through the steps.
    pub fn label_name(&self, id: usize) -> &str {
        let labels = self.trace.initial.arrangement.labels();
        match labels.get(id) {
            Some(l) => &l.name,
            None => &self.trace.steps[id - labels.len()].new_label.name,
        }
    }
}

fn check_normalized(nerve: &Nerve) -> Result<(), String> {
    let rebuilt = Nerve::from_maximal(nerve.vertex_count(), nerve.maximal_sets().iter().cloned())
        .map_err(|e| e.to_string())?;
    if &rebuilt != nerve {
        return Err("nerve is not a sorted antichain of maximal sets".into());
    }
    Ok(())
}
