//! Text formats: CSV for profiles and conformal grids, a JSON manifest for
//! isotopy paths, OBJ for surfaces of revolution.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::arith::{fmt_real, parse_real};
use crate::diskmetric::DiskProfile;
use crate::error::{Error, Result};
use crate::isotopy::{ConformalDisk, IsotopyPath, PathStep};

const GRID_TOL: f64 = 1e-9;

fn check_header(rdr: &mut csv::Reader<impl Read>, expected: &[&str]) -> Result<()> {
    let headers = rdr.headers()?;
    let got: Vec<&str> = headers.iter().map(str::trim).collect();
    if got != expected {
        return Err(Error::Parse(format!("expected CSV header {:?}, got {:?}", expected.join(","), got.join(","))));
    }
    Ok(())
}

fn parse_row(record: &csv::StringRecord, width: usize, line: usize) -> Result<Vec<f64>> {
    if record.len() != width {
        return Err(Error::Parse(format!("line {line}: expected {width} fields, got {}", record.len())));
    }
    record
        .iter()
        .map(|s| parse_real(s).map_err(|e| Error::Parse(format!("line {line}: {e}"))))
        .collect()
}

pub fn write_profile(d: &DiskProfile, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["rho", "h"])?;
    for (i, h) in d.samples().iter().enumerate() {
        w.write_record([fmt_real(d.rho(i)), fmt_real(*h)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_profile(input: impl Read) -> Result<DiskProfile> {
    let mut rdr = csv::Reader::from_reader(input);
    check_header(&mut rdr, &["rho", "h"])?;
    let mut rho = Vec::new();
    let mut h = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = parse_row(&rec?, 2, i + 2)?;
        rho.push(row[0]);
        h.push(row[1]);
    }
    if rho.len() < 2 {
        return Err(Error::GridTooCoarse { got: rho.len().saturating_sub(1), min: 1 });
    }
    let n = rho.len() - 1;
    let rho_max = rho[n];
    for (i, r) in rho.iter().enumerate() {
        let expected = rho_max * i as f64 / n as f64;
        if (r - expected).abs() > GRID_TOL * rho_max.abs() {
            return Err(Error::GridMismatch(format!("rho[{i}] = {r} is off the uniform grid (expected {expected})")));
        }
    }
    DiskProfile::new(rho_max, h)
}

pub fn write_conformal(d: &ConformalDisk, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["sigma", "phi", "u"])?;
    for j in 0..=d.n_sigma() {
        for k in 0..d.n_phi() {
            w.write_record([fmt_real(d.sigma(j)), fmt_real(d.phi(k)), fmt_real(d.at(j, k))])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_conformal(input: impl Read) -> Result<ConformalDisk> {
    let mut rdr = csv::Reader::from_reader(input);
    check_header(&mut rdr, &["sigma", "phi", "u"])?;
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        rows.push(parse_row(&rec?, 3, i + 2)?);
    }
    let n_phi = rows.iter().take_while(|r| r[0] == 0.0).count();
    if n_phi == 0 || rows.len() % n_phi != 0 {
        return Err(Error::GridMismatch(format!("{} rows do not form a polar grid", rows.len())));
    }
    let n_sigma = rows.len() / n_phi - 1;
    if n_sigma == 0 {
        return Err(Error::GridTooCoarse { got: 0, min: crate::isotopy::MIN_GRID });
    }
    for (idx, r) in rows.iter().enumerate() {
        let (j, k) = (idx / n_phi, idx % n_phi);
        let sigma = j as f64 / n_sigma as f64;
        let phi = 2.0 * PI * k as f64 / n_phi as f64;
        if (r[0] - sigma).abs() > GRID_TOL || (r[1] - phi).abs() > GRID_TOL * 2.0 * PI {
            return Err(Error::GridMismatch(format!("row {} = ({}, {}) is off the {n_sigma}x{n_phi} grid", idx + 2, r[0], r[1])));
        }
    }
    ConformalDisk::new(n_sigma, n_phi, rows.into_iter().map(|r| r[2]).collect())
}

#[derive(Serialize)]
struct ManifestStep<'a> {
    file: String,
    #[serde(flatten)]
    step: &'a PathStep,
}

#[derive(Serialize)]
struct Manifest<'a> {
    #[serde(with = "crate::arith::real_str")]
    r: f64,
    n_sigma: usize,
    n_phi: usize,
    steps: Vec<ManifestStep<'a>>,
}

pub fn step_file_name(m: usize) -> String {
    format!("step_{m:03}.csv")
}

/// Writes `step_XXX.csv` for every member and `manifest.json`.
pub fn write_path(path: &IsotopyPath, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut steps = Vec::new();
    for (m, (step, disk)) in path.steps.iter().zip(&path.disks).enumerate() {
        let name = step_file_name(m);
        write_conformal(disk, fs::File::create(dir.join(&name))?)?;
        steps.push(ManifestStep { file: name, step });
    }
    let (n_sigma, n_phi) = path.disks.first().map_or((0, 0), |d| (d.n_sigma(), d.n_phi()));
    let manifest = Manifest { r: path.r, n_sigma, n_phi, steps };
    let mut f = fs::File::create(dir.join("manifest.json"))?;
    serde_json::to_writer_pretty(&mut f, &manifest)?;
    f.write_all(b"\n")?;
    Ok(())
}

/// Surface of revolution with radius `h(ρ)` and height `∫ sqrt(1 - h'²) dρ`,
/// sampled on `rings` circles of `segments` vertices plus the pole.
pub fn profile_mesh(d: &DiskProfile, rings: usize, segments: usize) -> Result<String> {
    let n = d.n();
    if rings == 0 || segments < 3 {
        return Err(Error::OutOfRange(format!("mesh needs rings >= 1 and segments >= 3, got {rings}, {segments}")));
    }
    let h = d.samples();
    let dx = d.delta();
    let slope = |i: usize| -> f64 {
        if i == 0 {
            (h[1] - h[0]) / dx
        } else if i == n {
            (h[n] - h[n - 1]) / dx
        } else {
            (h[i + 1] - h[i - 1]) / (2.0 * dx)
        }
    };
    let rise: Vec<f64> = (0..=n).map(|i| (1.0 - slope(i).powi(2)).max(0.0).sqrt()).collect();
    let mut z = vec![0.0; n + 1];
    for i in 1..=n {
        z[i] = z[i - 1] + 0.5 * dx * (rise[i - 1] + rise[i]);
    }

    let rings = rings.min(n);
    let mut obj = String::new();
    writeln!(obj, "# surface of revolution, {rings} rings x {segments} segments").unwrap();
    writeln!(obj, "v 0.0000000000000000 0.0000000000000000 {}", fmt_real(z[0])).unwrap();
    for r in 1..=rings {
        let i = r * n / rings;
        for s in 0..segments {
            let a = 2.0 * PI * s as f64 / segments as f64;
            writeln!(obj, "v {} {} {}", fmt_real(h[i] * a.cos()), fmt_real(h[i] * a.sin()), fmt_real(z[i])).unwrap();
        }
    }
    let vertex = |r: usize, s: usize| 2 + (r - 1) * segments + s % segments;
    for s in 0..segments {
        writeln!(obj, "f 1 {} {}", vertex(1, s), vertex(1, s + 1)).unwrap();
    }
    for r in 1..rings {
        for s in 0..segments {
            writeln!(
                obj,
                "f {} {} {} {}",
                vertex(r, s),
                vertex(r + 1, s),
                vertex(r + 1, s + 1),
                vertex(r, s + 1)
            )
            .unwrap();
        }
    }
    Ok(obj)
}
