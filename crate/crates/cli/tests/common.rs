#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub struct Run {
    pub stdout: Vec<u8>,
    pub stderr: String,
    pub code: i32,
}

impl Run {
    pub fn text(&self) -> String {
        String::from_utf8(self.stdout.clone()).unwrap()
    }
}

pub fn wigner(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_wigner"))
        .args(args)
        .output()
        .expect("spawn wigner");
    Run {
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        code: out.status.code().expect("exit code"),
    }
}

/// Golden cases: (golden file name, arguments relative to the fixtures).
pub const GOLDEN_CASES: &[(&str, &str, &str)] = &[
    ("reconstruct_identity.txt", "reconstruct", "identity.json"),
    (
        "reconstruct_antiunitary_identity.txt",
        "reconstruct",
        "antiunitary_identity.json",
    ),
    (
        "reconstruct_diag_general.txt",
        "reconstruct",
        "diag_general.json",
    ),
    ("conformance_identity.txt", "conformance", "identity.json"),
    (
        "conformance_antiunitary_identity.txt",
        "conformance",
        "antiunitary_identity.json",
    ),
    (
        "conformance_diag_general.txt",
        "conformance",
        "diag_general.json",
    ),
];

pub fn run_golden_case(command: &str, file: &str) -> Run {
    let path = fixture(file);
    let path = path.to_str().unwrap();
    match command {
        "conformance" => wigner(&[command, path, "--seed", "7"]),
        _ => wigner(&[command, path]),
    }
}
