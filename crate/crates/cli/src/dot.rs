use std::fmt::Write;

use crate::trace_file::TraceFile;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The blow-up tower as a chain `X0 -> X1 -> …`. Each edge carries the
/// center and the `(σ, τ)` it reduced.
pub fn to_dot(file: &TraceFile) -> String {
    let steps = &file.trace.steps;
    let mut out = String::from("digraph blowups {\n    rankdir=LR;\n    node [shape=box];\n");
    writeln!(out, "    X0 [label=\"X0\"];").unwrap();
    for step in steps {
        let name = escape(&step.new_label.name);
        writeln!(
            out,
            "    X{} [label=\"X{}\\n{}\"];",
            step.step, step.step, name
        )
        .unwrap();
    }
    for step in steps {
        let (i, j) = step.center;
        writeln!(
            out,
            "    X{} -> X{} [label=\"{} ∩ {}\\n{} τ={}\"];",
            step.step - 1,
            step.step,
            escape(file.label_name(i)),
            escape(file.label_name(j)),
            step.sigma_before,
            step.tau_before
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
