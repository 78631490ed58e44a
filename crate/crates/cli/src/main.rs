//! `ggm`: construct, verify, classify and deform graph-manifold metrics.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use ggm_core::arith::{self, parse_int, rat};
use ggm_core::assembly::{absorb_flat_slab, classify, double_cover, ClassificationResult, GgmDescription};
use ggm_core::cylinder::CylinderParams;
use ggm_core::diskmetric::{attach_flat_collar, standard_disk, synthesize_standard_disk, verify, Shape, Tolerances};
use ggm_core::exactlat::{FlatTorus, GramMatrix, LatticeVector, Marking, MarkingParams, Orientation};
use ggm_core::io::{profile_mesh, read_conformal, read_profile, write_conformal, write_path, write_profile};
use ggm_core::isotopy::{deform, standard_factor};
use ggm_core::moduli::{enumerate_lens_components, prism_component_count};
use ggm_core::slope::{SlopeClass, SlopeData};
use ggm_core::spaceform::{spaceform_equivalent, LensType, PrismType, SpaceForm};
use ggm_core::{Error, Int};

#[derive(Parser)]
#[command(name = "ggm", version, about = "Graph-manifold metrics of nonnegative scalar curvature")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Tolerance on the boundary geodesic defect.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol_geodesic: f64,
    /// Relative tolerance on boundary flatness.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol_flatness: f64,
    /// Radial grid size of synthesized disks.
    #[arg(long, global = true, default_value_t = 2048)]
    grid: usize,
    /// Number of isotopy steps.
    #[arg(long, global = true, default_value_t = 32)]
    steps: usize,
    /// Write the report here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized marking of a primitive vector on a flat torus.
    Marking { input: PathBuf },
    /// Slope data and class of a two-sided description.
    Slope { input: PathBuf },
    /// Space form of a description.
    Classify {
        input: PathBuf,
        /// Print the full classification instead of the space form.
        #[arg(long)]
        detail: bool,
    },
    /// Whether two space forms are diffeomorphic.
    Equiv {
        #[arg(long, value_name = "P,Q")]
        lens: Vec<String>,
        #[arg(long, value_name = "M,N")]
        prism: Vec<String>,
    },
    /// Cylinder parameters and disk profiles for a description.
    Build {
        input: PathBuf,
        /// Directory for the disk profile CSVs.
        #[arg(long)]
        out: PathBuf,
    },
    /// Curvature report of a disk profile CSV.
    Verify { profile: PathBuf },
    /// Conformal isotopy from a factor to a reference factor.
    Deform {
        factor: PathBuf,
        reference: PathBuf,
        /// Directory for the path CSVs and manifest.
        #[arg(long)]
        out: PathBuf,
        /// Lower bound allowed on the curvature density.
        #[arg(long, default_value_t = 1e-6)]
        tol_curvature: f64,
    },
    /// Connected components of the moduli space.
    Moduli {
        #[arg(long, value_name = "P,Q", conflicts_with = "prism", required_unless_present = "prism")]
        lens: Option<String>,
        #[arg(long, value_name = "M,N")]
        prism: Option<String>,
        #[arg(long, default_value_t = 10)]
        bound: u64,
    },
    /// Orientation double cover of a one-sided description.
    Cover { input: PathBuf },
    /// OBJ surface of revolution of a disk profile.
    Mesh {
        profile: PathBuf,
        #[arg(long, default_value_t = 64)]
        rings: usize,
        #[arg(long, default_value_t = 64)]
        segments: usize,
    },
    /// Random valid descriptions.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Synthesize a disk profile with a given boundary length.
    Disk {
        #[arg(long)]
        length: f64,
        #[arg(long, value_enum, default_value_t = ShapeArg::Symmetric)]
        shape: ShapeArg,
        /// Flat collar to attach at the boundary.
        #[arg(long, default_value_t = 0.0)]
        collar: f64,
    },
    /// Conformal factor of a disk profile on a polar grid.
    Factor {
        profile: PathBuf,
        #[arg(long, default_value_t = 256)]
        n_sigma: usize,
        #[arg(long, default_value_t = 256)]
        n_phi: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Symmetric,
    Flat,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Shape {
        match s {
            ShapeArg::Symmetric => Shape::SymmetricBump,
            ShapeArg::Flat => Shape::FlatBump,
        }
    }
}

enum Failure {
    Core(Error),
    Usage(String),
    /// A report was written but it records a failed check.
    Rejected,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn emit_error(message: &str, kind: &str) {
    let line = serde_json::json!({ "error": message, "kind": kind });
    eprintln!("{line}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            emit_error(msg.lines().next().unwrap_or("usage error").trim_start_matches("error: "), "usage");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            emit_error(&m, "usage");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            emit_error(&e.to_string(), e.kind());
            ExitCode::from(if e.is_validation() { 1 } else { 2 })
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let cfg = &cli.config;
    if !(cfg.tol_geodesic > 0.0 && cfg.tol_flatness > 0.0) {
        return Err(Failure::Usage("tolerances must be positive".into()));
    }
    let tol = Tolerances { geodesic: cfg.tol_geodesic, flatness: cfg.tol_flatness, ..Tolerances::default() };
    match &cli.command {
        Command::Marking { input } => {
            let req: MarkingRequest = read_json(input)?;
            let torus = FlatTorus::new(req.gram, req.orientation)?;
            let marking = torus.normalized_marking(&req.v)?;
            let params = torus.marking_params(&marking)?;
            emit_json(cfg, &MarkingReport { marking, params })
        }
        Command::Slope { input } => {
            let g: GgmDescription = read_json(input)?;
            let c = classify(&g)?;
            let report = SlopeReport {
                slope: c.slope.slope().to_string(),
                reverse_slope: c.slope.reverse_slope().to_string(),
                data: c.slope,
                class: c.slope_class,
            };
            emit_json(cfg, &report)
        }
        Command::Classify { input, detail } => {
            let g: GgmDescription = read_json(input)?;
            let c = classify(&g)?;
            if *detail {
                emit_json(cfg, &c)
            } else {
                emit_json(cfg, &c.spaceform)
            }
        }
        Command::Equiv { lens, prism } => {
            let mut forms = Vec::new();
            for l in lens {
                let (p, q) = parse_pair(l)?;
                forms.push(SpaceForm::Lens(LensType::new(p, q)?));
            }
            for m in prism {
                let (m, n) = parse_pair(m)?;
                forms.push(SpaceForm::Prism(PrismType::new(m, n)?));
            }
            if forms.len() != 2 {
                return Err(Failure::Usage(format!("equiv needs exactly two space forms, got {}", forms.len())));
            }
            emit_json(cfg, &spaceform_equivalent(&forms[0], &forms[1]))
        }
        Command::Build { input, out } => {
            let g: GgmDescription = read_json(input)?;
            let classification = classify(&g)?;
            let absorbed = absorb_flat_slab(&g)?;
            fs::create_dir_all(out).map_err(io_err)?;
            let mut disks = Vec::new();
            for (i, (cyl, collar)) in classification.cylinders.iter().zip(&absorbed.disk_collars).enumerate() {
                let mut d = standard_disk(cfg.grid, cyl.r)?;
                if *collar > 0.0 {
                    d = attach_flat_collar(&d, *collar, &tol)?;
                }
                let file = format!("disk_{}.csv", i + 1);
                write_profile(&d, fs::File::create(out.join(&file)).map_err(io_err)?)?;
                disks.push(DiskEntry { file, rho_max: d.rho_max(), n: d.n() });
            }
            emit_json(cfg, &BuildReport { cylinders: classification.cylinders.clone(), classification, disks })
        }
        Command::Verify { profile } => {
            let d = read_profile(open(profile)?)?;
            let report = verify(&d, &tol)?;
            emit_json(cfg, &report)?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Rejected)
            }
        }
        Command::Deform { factor, reference, out, tol_curvature } => {
            let u = read_conformal(open(factor)?)?;
            let u0 = read_conformal(open(reference)?)?;
            let path = deform(&u, &u0, cfg.steps, *tol_curvature)?;
            write_path(&path, out)?;
            emit_json(cfg, &path.steps)
        }
        Command::Moduli { lens, prism, bound } => {
            if let Some(l) = lens {
                let (p, q) = parse_pair(l)?;
                if *bound < 1 {
                    return Err(Failure::Usage("bound must be at least 1".into()));
                }
                emit_json(cfg, &enumerate_lens_components(&LensType::new(p, q)?, *bound)?)
            } else {
                let (m, n) = parse_pair(prism.as_deref().unwrap_or_default())?;
                emit_json(cfg, &prism_component_count(&PrismType::new(m, n)?))
            }
        }
        Command::Cover { input } => {
            let g: GgmDescription = read_json(input)?;
            let description = double_cover(&g)?;
            let classification = classify(&description)?;
            emit_json(cfg, &CoverReport { description, classification })
        }
        Command::Mesh { profile, rings, segments } => {
            let d = read_profile(open(profile)?)?;
            emit_text(cfg, &profile_mesh(&d, *rings, *segments)?)
        }
        Command::Gen { seed, count } => emit_json(cfg, &generate(*seed, *count)),
        Command::Disk { length, shape, collar } => {
            let shape = Shape::from(*shape);
            let mut d = synthesize_standard_disk(|x| shape.eval(x), cfg.grid, *length)?;
            if *collar > 0.0 {
                d = attach_flat_collar(&d, *collar, &tol)?;
            }
            let mut buf = Vec::new();
            write_profile(&d, &mut buf)?;
            emit_bytes(cfg, &buf)
        }
        Command::Factor { profile, n_sigma, n_phi } => {
            let d = read_profile(open(profile)?)?;
            let u = standard_factor(&d, *n_sigma, *n_phi)?;
            let mut buf = Vec::new();
            write_conformal(&u, &mut buf)?;
            emit_bytes(cfg, &buf)
        }
    }
}

#[derive(Deserialize)]
struct MarkingRequest {
    gram: GramMatrix,
    #[serde(default)]
    orientation: Orientation,
    v: LatticeVector,
}

#[derive(Serialize)]
struct MarkingReport {
    marking: Marking,
    params: MarkingParams,
}

#[derive(Serialize)]
struct SlopeReport {
    data: SlopeData,
    slope: String,
    reverse_slope: String,
    class: SlopeClass,
}

#[derive(Serialize)]
struct DiskEntry {
    file: String,
    #[serde(with = "arith::real_str")]
    rho_max: f64,
    n: usize,
}

#[derive(Serialize)]
struct BuildReport {
    classification: ClassificationResult,
    cylinders: Vec<CylinderParams>,
    disks: Vec<DiskEntry>,
}

#[derive(Serialize)]
struct CoverReport {
    description: GgmDescription,
    classification: ClassificationResult,
}

fn io_err(e: io::Error) -> Failure {
    Failure::Core(Error::Io(e.to_string()))
}

fn open(path: &Path) -> std::result::Result<fs::File, Failure> {
    fs::File::open(path).map_err(|e| Failure::Core(Error::Io(format!("{}: {e}", path.display()))))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> std::result::Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Core(Error::Io(format!("{}: {e}", path.display()))))?;
    serde_json::from_str(&text).map_err(|e| Failure::Core(Error::Parse(format!("{}: {e}", path.display()))))
}

fn parse_pair(s: &str) -> std::result::Result<(Int, Int), Failure> {
    let (a, b) = s.split_once(',').ok_or_else(|| Failure::Usage(format!("expected two integers \"a,b\", got {s:?}")))?;
    Ok((parse_int(a.trim())?, parse_int(b.trim())?))
}

fn emit_json(cfg: &Config, value: &impl Serialize) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Core(Error::Parse(e.to_string())))?;
    text.push('\n');
    emit_bytes(cfg, text.as_bytes())
}

fn emit_text(cfg: &Config, text: &str) -> Outcome {
    emit_bytes(cfg, text.as_bytes())
}

fn emit_bytes(cfg: &Config, bytes: &[u8]) -> Outcome {
    match &cfg.output {
        Some(path) => fs::write(path, bytes).map_err(io_err),
        None => io::stdout().lock().write_all(bytes).map_err(io_err),
    }
}

fn random_primitive(rng: &mut ChaCha8Rng, bound: i64) -> LatticeVector {
    loop {
        let v = LatticeVector::new(rng.random_range(-bound..=bound), rng.random_range(-bound..=bound));
        if v.is_primitive() {
            return v;
        }
    }
}

fn generate(seed: u64, count: usize) -> Vec<GgmDescription> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if rng.random_bool(0.5) {
            let g11 = rat(rng.random_range(1..=20), rng.random_range(1..=10));
            let g22 = rat(rng.random_range(1..=20), rng.random_range(1..=10));
            let g12 = rat(rng.random_range(-10..=10), rng.random_range(1..=10));
            let Ok(torus) = FlatTorus::from_gram(g11, g12, g22) else { continue };
            let f1 = random_primitive(&mut rng, 9);
            let f2 = random_primitive(&mut rng, 9);
            if f1.same_line(&f2) {
                continue;
            }
            out.push(GgmDescription::two_sided(&torus, f1, f2, 0.0));
        } else {
            let (m, n): (i64, i64) = (rng.random_range(1..=9), rng.random_range(1..=9));
            if m.gcd(&n) != 1 {
                continue;
            }
            let r1 = rat(rng.random_range(1..=20), rng.random_range(1..=10));
            let r2 = rat(rng.random_range(1..=20), rng.random_range(1..=10));
            out.push(GgmDescription::one_sided(r1, r2, LatticeVector::new(m, n), 0.0));
        }
    }
    out
}
