#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

pub fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

pub fn command(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_catmod"));
    cmd.args(args).env_remove("CATMOD_CONFIG");
    cmd
}

pub fn run(args: &[&str]) -> Output {
    command(args).output().expect("binary runs")
}

/// Parsed standard output and exit code.
pub fn run_json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let code = out.status.code().expect("exit code");
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: stdout is not JSON ({e}): {text}"));
    (value, code)
}
