//! Job descriptions and their execution.

use std::path::PathBuf;

use num_rational::BigRational;
use serde::Serialize;
use stringy_core::error::{Error, Result};
use stringy_core::koszul::compare_with_decomposition;
use stringy_core::lattice::*;
use stringy_core::scalar::{Field, Fp, MIN_CHARACTERISTIC, PRIME_B, PRIME_C};
use stringy_core::semigroup::{generic_quotient_dims, DegreeOneElement, MAX_ATTEMPTS};
use stringy_core::stringy::*;
use stringy_core::{FieldKind, MERSENNE_31};

use crate::io::{self, Input};
use crate::verify::{self, FixtureSet, Suite};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Which of the two stringy E-functions to compute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EstSource {
    Hypersurface(PathBuf),
    Toric(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Dual { polytope: PathBuf },
    CheckReflexive { polytope: PathBuf },
    Faces { input: PathBuf, dual: bool },
    SPoly { input: PathBuf },
    TildeS { input: PathBuf },
    GPoly { input: PathBuf, dual: bool },
    BPoly { input: PathBuf, dual: bool },
    Est(EstSource),
    Hodge { input: PathBuf },
    Box { input: PathBuf },
    RingDims { input: PathBuf, heights: Option<PathBuf> },
    Koszul { polytope: PathBuf, heights: Option<PathBuf>, cap: Option<usize> },
    Subdivide { input: PathBuf, heights: PathBuf },
    Verify { fixtures: Vec<String>, suites: Vec<String> },
}

/// Everything a run depends on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub seed: u64,
    pub field: FieldKind,
    pub format: Format,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec { command, seed: 0, field: FieldKind::Prime(MERSENNE_31), format: Format::Json }
    }
}

/// Exit status with the text destined for standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Runs a job. Errors of any module are input errors (exit 2); a failed
/// comparison or verification exits 1.
pub fn run(spec: &JobSpec) -> Outcome {
    match execute(spec) {
        Ok((stdout, passed)) => Outcome { code: if passed { EXIT_OK } else { EXIT_FAILED }, stdout, stderr: String::new() },
        Err(e) => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => json(value),
        Format::Text => {
            let mut s = text();
            s.push('\n');
            s
        }
    }
}

fn source(p: &std::path::Path) -> String {
    p.display().to_string()
}

fn cone_of(path: &std::path::Path) -> Result<GradedCone> {
    io::read_input(path)?.cone(&source(path))
}

fn polytope_of(path: &std::path::Path) -> Result<LatticePolytope> {
    Ok(io::read_input(path)?.polytope(&source(path))?.clone())
}

fn pair_of(path: &std::path::Path) -> Result<PairInvariants> {
    Ok(PairInvariants::new(&ReflexivePair::new(&polytope_of(path)?)?))
}

fn subdivision_of(cone: &GradedCone, heights: Option<&PathBuf>) -> Result<FanSubdivision> {
    match heights {
        Some(h) => regular_subdivision(cone, &io::read_heights(h)?),
        None => Ok(FanSubdivision::trivial(cone)),
    }
}

fn execute(spec: &JobSpec) -> Result<(String, bool)> {
    let f = spec.format;
    let out = match &spec.command {
        Command::Dual { polytope } => {
            let d = dual_polytope(&polytope_of(polytope)?)?;
            let file = io::dual_file(&d);
            render(f, &file, || {
                let rows: Vec<String> = d.vertices.iter().map(|v| {
                    let xs: Vec<String> = v.iter().map(ToString::to_string).collect();
                    format!("({})", xs.join(", "))
                }).collect();
                rows.join("\n")
            })
        }
        Command::CheckReflexive { polytope } => {
            let r = is_reflexive(&polytope_of(polytope)?);
            format!("{r}\n")
        }
        Command::Faces { input, dual } => {
            let mut cone = cone_of(input)?;
            if *dual {
                cone = dual_cone(&cone)?;
            }
            let lattice = cone.face_lattice()?;
            let faces: Vec<io::FaceEntry> = lattice
                .faces()
                .iter()
                .map(|face| io::FaceEntry { dim: face.dim, generators: cone.subcone(&face.generators).generators().to_vec() })
                .collect();
            let file = io::FacesFile { dim: cone.dim(), faces, covers: lattice.covers().to_vec() };
            render(f, &file, || {
                let rows: Vec<String> =
                    file.faces.iter().enumerate().map(|(i, e)| format!("{i}: dim {} generators {:?}", e.dim, e.generators)).collect();
                rows.join("\n")
            })
        }
        Command::SPoly { input } => {
            let p = s_polynomial(&cone_of(input)?)?;
            render(f, &io::univariate_file(&p), || p.to_string())
        }
        Command::TildeS { input } => {
            let p = tilde_s_polynomial(&cone_of(input)?)?;
            render(f, &io::univariate_file(&p), || p.to_string())
        }
        Command::GPoly { input, dual } => {
            let lattice = cone_of(input)?.face_lattice()?;
            let whole = lattice.poset().whole();
            let p = lattice.poset().g_of(if *dual { whole.flipped() } else { whole });
            render(f, &io::univariate_file(&p), || p.to_string())
        }
        Command::BPoly { input, dual } => {
            let lattice = cone_of(input)?.face_lattice()?;
            let whole = lattice.poset().whole();
            let p = lattice.poset().b_of(if *dual { whole.flipped() } else { whole });
            render(f, &io::laurent_file(&p), || p.to_string())
        }
        Command::Est(EstSource::Hypersurface(path)) => {
            let e = e_st_hypersurface(&pair_of(path)?)?;
            render(f, &io::laurent_file(&e), || e.to_string())
        }
        Command::Est(EstSource::Toric(path)) => {
            let e = e_st_toric(io::read_input(path)?.fan(&source(path))?)?;
            render(f, &io::laurent_file(&e), || e.to_string())
        }
        Command::Hodge { input } => {
            let table = match io::read_input(input)? {
                Input::Fan(fan) => toric_string_table(&fan)?,
                Input::Polytope(p) => {
                    let inv = PairInvariants::new(&ReflexivePair::new(&p)?);
                    stringy_hodge_table(&e_st_hypersurface(&inv)?, p.rank() as i64 - 1)?
                }
                Input::Cone(_) => {
                    return Err(Error::ParseError(format!("{}: expected a polytope or a fan", source(input))));
                }
            };
            render(f, &io::hodge_file(&table), || table.to_string())
        }
        Command::Box { input } => {
            let table = box_points(&cone_of(input)?)?;
            let file = io::box_file(&table);
            render(f, &file, || {
                let rows: Vec<String> = file.shifts.iter().map(|s| format!("l = {}: {:?}", s.shift, s.points)).collect();
                format!("counts {:?}\n{}", file.counts, rows.join("\n")).trim_end().to_string()
            })
        }
        Command::RingDims { input, heights } => {
            let cone = cone_of(input)?;
            let sigma = subdivision_of(&cone, heights.as_ref())?;
            let r = generic_quotient_dims(&cone, &sigma, spec.seed, spec.field)?;
            let file = io::quotient_file(&r);
            render(f, &file, || {
                format!(
                    "R0 {:?}\nR0 interior {:?}\nR1 {:?}\nseed {}\nfield {}\nsubdivision {}",
                    file.dims_r0,
                    file.dims_r0_interior,
                    file.dims_r1,
                    file.seed.map_or("none".into(), |s| s.to_string()),
                    file.field,
                    file.subdivision.kind
                )
            })
        }
        Command::Koszul { polytope, heights, cap } => {
            let inv = pair_of(polytope)?;
            let sigma = match heights {
                Some(h) => Some(regular_subdivision(&inv.pair.k_star, &io::read_heights(h)?)?),
                None => None,
            };
            let file = koszul_report(&inv, sigma.as_ref(), *cap, spec.seed, spec.field)?;
            let passed = file.matches;
            let out = render(f, &file, || {
                let dims = |v: &[io::GradeDim]| -> String {
                    v.iter().map(|g| format!("(T={}, Q={}): {}", g.t, g.q, g.dim)).collect::<Vec<_>>().join(", ")
                };
                format!(
                    "matches {}\nD^2 = 0 {}\ncap {}\ncomputed {}\nexpected {}\nboundary {}",
                    file.matches,
                    file.d_squared_zero,
                    file.cap,
                    dims(&file.computed),
                    dims(&file.expected),
                    dims(&file.boundary)
                )
            });
            return Ok((out, passed));
        }
        Command::Subdivide { input, heights } => {
            let cone = cone_of(input)?;
            let sigma = regular_subdivision(&cone, &io::read_heights(heights)?)?;
            let file = io::subdivision_file(&sigma);
            render(f, &file, || {
                let rows: Vec<String> = sigma.max_cones().iter().map(|c| format!("{:?}", c.generators())).collect();
                rows.join("\n")
            })
        }
        Command::Verify { fixtures, suites } => return verify_command(fixtures, suites, spec.seed, f),
    };
    Ok((out, true))
}

/// The dual cone, spanned by the inward facet normals.
fn dual_cone(cone: &GradedCone) -> Result<GradedCone> {
    let gens: Vec<Vec<i64>> = cone.facets().to_vec();
    GradedCone::new(cone.ambient_rank(), &gens)
}

#[derive(Debug, Serialize)]
struct VerifyFile {
    passed: bool,
    seed: u64,
    checks: Vec<verify::Check>,
}

fn verify_command(fixtures: &[String], suites: &[String], seed: u64, format: Format) -> Result<(String, bool)> {
    let set = FixtureSet::select(fixtures)?;
    let chosen: Vec<Suite> = if suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        suites
            .iter()
            .map(|s| {
                Suite::parse(s).ok_or_else(|| {
                    let known: Vec<&str> = Suite::ALL.iter().map(|x| x.id()).collect();
                    Error::ParseError(format!("unknown suite `{s}`; known suites: {}", known.join(", ")))
                })
            })
            .collect::<Result<_>>()?
    };
    let checks: Vec<verify::Check> = chosen.iter().map(|&s| verify::run_suite(s, &set, seed)).collect();
    let passed = checks.iter().all(|c| c.passed);
    let file = VerifyFile { passed, seed, checks };
    let out = render(format, &file, || {
        let mut lines: Vec<String> = file
            .checks
            .iter()
            .map(|c| format!("{} {:<18} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.title, c.detail))
            .collect();
        lines.push(if passed { "all suites passed".into() } else { "some suites failed".into() });
        lines.join("\n")
    });
    Ok((out, passed))
}

fn koszul_in<F: Field>(
    inv: &PairInvariants,
    sigma: Option<&FanSubdivision>,
    cap: Option<usize>,
    seed: u64,
) -> Result<io::KoszulFile> {
    for attempt in 0..MAX_ATTEMPTS as u64 {
        let s = seed.wrapping_add(attempt);
        let f = DegreeOneElement::<F>::random(&inv.pair.k, s);
        let g = DegreeOneElement::<F>::random(&inv.pair.k_star, s.wrapping_add(1000));
        match compare_with_decomposition(inv, &f, &g, cap, sigma) {
            Ok(r) => return Ok(io::koszul_file(&r, s, F::descriptor())),
            Err(Error::NotRegular(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NotGenericAfterRetries { attempts: MAX_ATTEMPTS })
}

fn koszul_report(
    inv: &PairInvariants,
    sigma: Option<&FanSubdivision>,
    cap: Option<usize>,
    seed: u64,
    field: FieldKind,
) -> Result<io::KoszulFile> {
    match field {
        FieldKind::Rational => koszul_in::<BigRational>(inv, sigma, cap, seed),
        FieldKind::Prime(MERSENNE_31) => koszul_in::<Fp<MERSENNE_31>>(inv, sigma, cap, seed),
        FieldKind::Prime(PRIME_B) => koszul_in::<Fp<PRIME_B>>(inv, sigma, cap, seed),
        FieldKind::Prime(PRIME_C) => koszul_in::<Fp<PRIME_C>>(inv, sigma, cap, seed),
        FieldKind::Prime(p) if p < MIN_CHARACTERISTIC => {
            Err(Error::FieldCharacteristicTooSmall { p, min: MIN_CHARACTERISTIC })
        }
        FieldKind::Prime(p) => Err(Error::UnsupportedField(format!("no backend for the prime {p}"))),
    }
}
