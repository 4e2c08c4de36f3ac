use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use principalize::commands::report_path;
use principalize::TraceFile;
use tempfile::TempDir;

const X2_Y: &str = r#"format_version = 1
toric = true
supports = ["x", "y"]
nerve = "full"

[[divisors]]
x = 2

[[divisors]]
y = 1
"#;

const XY: &str = r#"format_version = 1
toric = true
supports = ["x", "y"]
nerve = "full"

[[divisors]]
x = 1

[[divisors]]
y = 1
"#;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_principalize"));
    c.env_remove("PRINCIPALIZE_MAX_LEAVES");
    c
}

fn principalize(args: &[&Path]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn setup(instance: &str) -> (TempDir, std::path::PathBuf) {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("instance.toml");
    fs::write(&path, instance).unwrap();
    (dir, path)
}

fn run_to_file(dir: &TempDir, instance: &Path) -> std::path::PathBuf {
    let trace = dir.path().join("trace.json");
    let out = principalize(&["run".as_ref(), instance, "--out".as_ref(), &trace]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    trace
}

#[test]
fn run_xy_writes_one_step() {
    let (dir, inst) = setup(XY);
    let trace = run_to_file(&dir, &inst);
    let file = TraceFile::parse(&fs::read_to_string(trace).unwrap()).unwrap();
    assert_eq!(file.trace.len(), 1);
}

#[test]
fn run_to_stdout_is_deterministic() {
    let (_dir, inst) = setup(X2_Y);
    let a = principalize(&["run".as_ref(), &inst]);
    let b = principalize(&["run".as_ref(), &inst]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn run_rejects_unknown_name_with_exit_2() {
    let (_dir, inst) = setup(
        &X2_Y
            .replace("nerve = \"full\"", "nerve = [[\"x\", \"z\"]]")
            .replace("toric = true\n", ""),
    );
    let out = principalize(&["run".as_ref(), &inst]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn run_missing_file_is_exit_2() {
    let dir = TempDir::new().unwrap();
    assert_eq!(
        code(&principalize(&[
            "run".as_ref(),
            &dir.path().join("nope.toml")
        ])),
        2
    );
}

#[test]
fn zero_step_cap_is_exit_3() {
    let (_dir, inst) = setup(X2_Y);
    let out = bin()
        .arg("run")
        .arg(&inst)
        .args(["--max-steps", "0"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn verify_own_trace_is_exit_0_with_report() {
    let (dir, inst) = setup(X2_Y);
    let trace = run_to_file(&dir, &inst);
    let out = principalize(&["verify".as_ref(), &inst, &trace]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(report_path(&trace)).unwrap()).unwrap();
    assert_eq!(report["certified"], true);
    assert_eq!(report["report"]["leaf_count"], 3);
}

#[test]
fn verify_truncated_trace_is_exit_4() {
    let (dir, inst) = setup(X2_Y);
    let trace = run_to_file(&dir, &inst);
    let file = TraceFile::parse(&fs::read_to_string(&trace).unwrap()).unwrap();
    let short = TraceFile::new(file.trace.truncated(1).unwrap());
    fs::write(&trace, short.to_json()).unwrap();
    let out = principalize(&["verify".as_ref(), &inst, &trace]);
    assert_eq!(code(&out), 4);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(report_path(&trace)).unwrap()).unwrap();
    assert_eq!(report["certified"], false);
}

#[test]
fn verify_foreign_trace_is_exit_4() {
    let (dir, inst) = setup(X2_Y);
    let trace = run_to_file(&dir, &inst);
    let other = dir.path().join("xy.toml");
    fs::write(&other, XY).unwrap();
    assert_eq!(code(&principalize(&["verify".as_ref(), &other, &trace])), 4);
}

#[test]
fn verify_non_toric_is_exit_2() {
    let (dir, inst) = setup(X2_Y);
    let trace = run_to_file(&dir, &inst);
    let plain = dir.path().join("plain.toml");
    fs::write(&plain, X2_Y.replace("toric = true\n", "")).unwrap();
    assert_eq!(code(&principalize(&["verify".as_ref(), &plain, &trace])), 2);
}

#[test]
fn leaf_cap_from_environment() {
    let (dir, inst) = setup(X2_Y);
    let trace = run_to_file(&dir, &inst);
    let capped = bin()
        .env("PRINCIPALIZE_MAX_LEAVES", "1")
        .arg("verify")
        .arg(&inst)
        .arg(&trace)
        .output()
        .unwrap();
    assert_eq!(code(&capped), 3);
    let garbage = bin()
        .env("PRINCIPALIZE_MAX_LEAVES", "lots")
        .arg("verify")
        .arg(&inst)
        .arg(&trace)
        .output()
        .unwrap();
    assert_eq!(code(&garbage), 2);
}

#[test]
fn export_dot_shapes() {
    let (dir, inst) = setup(X2_Y);
    let trace = run_to_file(&dir, &inst);
    let out = principalize(&["export-dot".as_ref(), &trace]);
    assert_eq!(code(&out), 0);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches(" [label=\"X").count(), 3);
    assert_eq!(dot.matches(" -> ").count(), 2);
    assert!(dot.contains("(2,1)") && dot.contains("(1,1)"));
    let again = principalize(&["export-dot".as_ref(), &trace]);
    assert_eq!(dot.as_bytes(), again.stdout.as_slice());

    let one = TraceFile::parse(&fs::read_to_string(&trace).unwrap()).unwrap();
    fs::write(
        &trace,
        TraceFile::new(one.trace.truncated(1).unwrap()).to_json(),
    )
    .unwrap();
    let dot = String::from_utf8(principalize(&["export-dot".as_ref(), &trace]).stdout).unwrap();
    assert_eq!(dot.matches(" [label=\"X").count(), 2);

    let same = dir.path().join("same.toml");
    fs::write(&same, X2_Y.replace("y = 1", "x = 2")).unwrap();
    let trace0 = dir.path().join("zero.json");
    assert_eq!(
        code(&principalize(&[
            "run".as_ref(),
            &same,
            "--out".as_ref(),
            &trace0
        ])),
        0
    );
    let dot = String::from_utf8(principalize(&["export-dot".as_ref(), &trace0]).stdout).unwrap();
    assert_eq!(dot.matches(" [label=\"X").count(), 1);
    assert_eq!(dot.matches(" -> ").count(), 0);
}

#[test]
fn export_dot_rejects_garbage_with_exit_2() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("t.json");
    fs::write(&trace, "not json").unwrap();
    assert_eq!(code(&principalize(&["export-dot".as_ref(), &trace])), 2);
}
