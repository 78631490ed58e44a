//! Golden cases for the `ggm` binary. Set `GGM_BLESS=1` to rewrite them.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    /// Commands run in order; only the last one's output is recorded.
    pub commands: &'static [&'static str],
    /// Files under the scratch directory compared against the golden copy.
    pub files: &'static [&'static str],
}

pub const CASES: &[Case] = &[
    Case { name: "marking", commands: &["marking {fx}/marking.json"], files: &[] },
    Case { name: "slope", commands: &["slope {fx}/oblique.json"], files: &[] },
    Case { name: "classify", commands: &["classify {fx}/square_q1_p2.json"], files: &[] },
    Case { name: "classify_detail", commands: &["classify --detail {fx}/oblique.json"], files: &[] },
    Case { name: "classify_invalid", commands: &["classify {fx}/invalid.json"], files: &[] },
    Case { name: "equiv", commands: &["equiv --prism 1,2 --lens 8,3"], files: &[] },
    Case { name: "equiv_lens", commands: &["equiv --lens 7,2 --lens 7,3"], files: &[] },
    Case {
        name: "build",
        commands: &["build --grid 256 {fx}/oblique.json --out {dir}/build"],
        files: &["build/disk_1.csv", "build/disk_2.csv"],
    },
    Case {
        name: "verify",
        commands: &["disk --grid 256 --length 2 -o {dir}/d.csv", "verify {dir}/d.csv"],
        files: &[],
    },
    Case {
        name: "deform",
        commands: &[
            "disk --grid 256 --length 2 -o {dir}/d0.csv",
            "disk --grid 256 --length 2 --shape flat -o {dir}/d1.csv",
            "factor --n-sigma 32 --n-phi 32 {dir}/d0.csv -o {dir}/u0.csv",
            "factor --n-sigma 32 --n-phi 32 {dir}/d1.csv -o {dir}/u1.csv",
            "deform --steps 4 {dir}/u1.csv {dir}/u0.csv --out {dir}/path",
        ],
        files: &["path/manifest.json", "path/step_002.csv"],
    },
    Case { name: "moduli_lens", commands: &["moduli --lens 7,2 --bound 5"], files: &[] },
    Case { name: "moduli_prism", commands: &["moduli --prism 1,2"], files: &[] },
    Case { name: "cover", commands: &["cover {fx}/one_sided.json"], files: &[] },
    Case {
        name: "mesh",
        commands: &["disk --grid 256 --length 1 -o {dir}/d.csv", "mesh --rings 4 --segments 6 {dir}/d.csv"],
        files: &[],
    },
    Case { name: "gen", commands: &["gen --seed 7 --count 4"], files: &[] },
    Case { name: "disk", commands: &["disk --grid 128 --length 1.5 --collar 0.1"], files: &[] },
    Case {
        name: "factor",
        commands: &["disk --grid 256 --length 1 -o {dir}/d.csv", "factor --n-sigma 16 --n-phi 4 {dir}/d.csv"],
        files: &[],
    },
    Case { name: "usage_error", commands: &["moduli --lens 7"], files: &[] },
];

fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

/// Everything a case produces: stdout, exit status with stderr, and files.
pub fn run_case(case: &Case) -> Vec<(String, Vec<u8>)> {
    let dir = tempfile::tempdir().expect("scratch dir");
    let fx = tests_dir().join("fixtures");
    let mut out = Vec::new();
    for (i, cmd) in case.commands.iter().enumerate() {
        let args: Vec<String> = cmd
            .split_whitespace()
            .map(|a| a.replace("{fx}", fx.to_str().unwrap()).replace("{dir}", dir.path().to_str().unwrap()))
            .collect();
        let o = Command::new(env!("CARGO_BIN_EXE_ggm")).args(&args).output().expect("run ggm");
        if i + 1 < case.commands.len() {
            assert!(o.status.success(), "{}: setup `{cmd}` failed: {}", case.name, String::from_utf8_lossy(&o.stderr));
            continue;
        }
        let status = format!("exit {}\n{}", o.status.code().unwrap_or(-1), String::from_utf8_lossy(&o.stderr));
        out.push(("stdout".to_string(), o.stdout));
        out.push(("status".to_string(), status.into_bytes()));
    }
    for f in case.files {
        let bytes = fs::read(dir.path().join(f)).unwrap_or_else(|e| panic!("{}: missing {f}: {e}", case.name));
        out.push((f.replace('/', "__"), bytes));
    }
    out
}

/// Compares against the golden directory, or rewrites it under `GGM_BLESS`.
pub fn check_golden(case: &Case, produced: &[(String, Vec<u8>)]) -> Result<(), String> {
    let dir = tests_dir().join("golden").join(case.name);
    if std::env::var_os("GGM_BLESS").is_some() {
        let _ = fs::remove_dir_all(&dir);
        fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
        for (name, bytes) in produced {
            fs::write(dir.join(name), bytes).map_err(|e| e.to_string())?;
        }
        return Ok(());
    }
    for (name, bytes) in produced {
        let expected = fs::read(dir.join(name)).map_err(|e| format!("{}/{name}: {e}", case.name))?;
        if &expected != bytes {
            return Err(format!("{}/{name} differs from the golden copy", case.name));
        }
    }
    Ok(())
}
