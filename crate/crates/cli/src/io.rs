//! JSON file formats for inputs and reports.
//!
//! Every integer that can exceed 64 bits (polynomial coefficients, Hodge
//! numbers) is written as a decimal string; rational indices are written as
//! `"p/q"` strings.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use stringy_core::error::{Error, Result};
use stringy_core::koszul::{Grade, KoszulReport};
use stringy_core::lattice::{Fan, FanSubdivision, GradedCone, LatticePolytope, Provenance, RationalPolytope};
use stringy_core::semigroup::GradedQuotientReport;
use stringy_core::stringy::{BoxPointTable, HodgeTable};
use stringy_core::{BivariateLaurentPolynomial as Laurent, UnivariatePolynomial as Uni};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub rank: usize,
    pub vertices: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanFile {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeFile {
    pub rank: usize,
    pub generators: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightsFile {
    pub heights: Vec<i64>,
}

/// Any of the geometric input files, told apart by their keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Polytope(LatticePolytope),
    Cone(GradedCone),
    Fan(Fan),
}

impl Input {
    /// The cone a cone-valued command works on: the cone over a polytope, or the cone itself.
    pub fn cone(&self, source: &str) -> Result<GradedCone> {
        match self {
            Input::Polytope(p) => Ok(stringy_core::lattice::gorenstein_cone_over(p)),
            Input::Cone(c) => Ok(c.clone()),
            Input::Fan(_) => Err(Error::ParseError(format!("{source}: expected a polytope or a cone, found a fan"))),
        }
    }

    pub fn polytope(&self, source: &str) -> Result<&LatticePolytope> {
        match self {
            Input::Polytope(p) => Ok(p),
            _ => Err(Error::ParseError(format!("{source}: expected a polytope file with `rank` and `vertices`"))),
        }
    }

    pub fn fan(&self, source: &str) -> Result<&Fan> {
        match self {
            Input::Fan(f) => Ok(f),
            _ => Err(Error::ParseError(format!("{source}: expected a fan file with `rank`, `rays` and `cones`"))),
        }
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))
}

/// Deserializes `text`, naming the offending field and position on failure.
pub fn parse<T: DeserializeOwned>(source: &str, text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            Error::ParseError(format!("{source}: {inner}"))
        } else {
            Error::ParseError(format!("{source}: field `{path}`: {inner}"))
        }
    })
}

fn check_lengths(source: &str, field: &str, rows: &[Vec<i64>], rank: usize) -> Result<()> {
    match rows.iter().position(|r| r.len() != rank) {
        Some(i) => Err(Error::ParseError(format!(
            "{source}: field `{field}[{i}]`: expected {rank} coordinates, found {}",
            rows[i].len()
        ))),
        None => Ok(()),
    }
}

fn located(source: &str, e: Error) -> Error {
    match e {
        Error::ParseError(m) => Error::ParseError(format!("{source}: {m}")),
        other => other,
    }
}

pub fn parse_polytope(source: &str, text: &str) -> Result<LatticePolytope> {
    let f: PolytopeFile = parse(source, text)?;
    check_lengths(source, "vertices", &f.vertices, f.rank)?;
    LatticePolytope::new(f.rank, &f.vertices).map_err(|e| located(source, e))
}

pub fn parse_fan(source: &str, text: &str) -> Result<Fan> {
    let f: FanFile = parse(source, text)?;
    check_lengths(source, "rays", &f.rays, f.rank)?;
    Fan::new(f.rank, &f.rays, &f.cones).map_err(|e| located(source, e))
}

pub fn parse_cone(source: &str, text: &str) -> Result<GradedCone> {
    let f: ConeFile = parse(source, text)?;
    check_lengths(source, "generators", &f.generators, f.rank)?;
    GradedCone::new(f.rank, &f.generators).map_err(|e| located(source, e))
}

pub fn parse_input(source: &str, text: &str) -> Result<Input> {
    let value: Value = parse(source, text)?;
    let has = |k: &str| value.get(k).is_some();
    if has("vertices") {
        parse_polytope(source, text).map(Input::Polytope)
    } else if has("rays") {
        parse_fan(source, text).map(Input::Fan)
    } else if has("generators") {
        parse_cone(source, text).map(Input::Cone)
    } else {
        Err(Error::ParseError(format!("{source}: expected one of the fields `vertices`, `rays` or `generators`")))
    }
}

pub fn read_input(path: &Path) -> Result<Input> {
    parse_input(&path.display().to_string(), &read_text(path)?)
}

pub fn read_heights(path: &Path) -> Result<Vec<i64>> {
    let f: HeightsFile = parse(&path.display().to_string(), &read_text(path)?)?;
    Ok(f.heights)
}

pub fn polytope_file(p: &LatticePolytope) -> PolytopeFile {
    PolytopeFile { rank: p.rank(), vertices: p.vertices().to_vec() }
}

/// A polar dual: integral vertices as integers, otherwise every entry as a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualFile {
    pub rank: usize,
    pub integral: bool,
    pub vertices: Vec<Vec<Value>>,
}

pub fn dual_file(p: &RationalPolytope) -> DualFile {
    let integral = p.is_integral();
    let vertices = p
        .vertices
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| match i64::try_from(x.to_integer()) {
                    Ok(n) if integral => Value::from(n),
                    _ => Value::from(x.to_string()),
                })
                .collect()
        })
        .collect();
    DualFile { rank: p.rank, integral, vertices }
}

/// A subdivision written as a fan whose rays are the generators of its cells.
pub fn subdivision_file(s: &FanSubdivision) -> FanFile {
    let mut rays: Vec<Vec<i64>> = s.max_cones().iter().flat_map(|c| c.generators().iter().cloned()).collect();
    rays.sort();
    rays.dedup();
    let cones = s
        .max_cones()
        .iter()
        .map(|c| {
            let mut idx: Vec<usize> = c.generators().iter().map(|g| rays.binary_search(g).expect("collected above")).collect();
            idx.sort_unstable();
            idx
        })
        .collect();
    FanFile { rank: s.parent().ambient_rank(), rays, cones }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermFile {
    #[serde(flatten)]
    pub exponents: BTreeMap<String, i64>,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialFile {
    pub vars: Vec<String>,
    pub terms: Vec<TermFile>,
}

/// A parsed polynomial file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Polynomial {
    Univariate(Uni),
    Laurent(Laurent),
}

pub fn univariate_file(p: &Uni) -> PolynomialFile {
    let terms = p
        .terms()
        .map(|(d, c)| TermFile { exponents: BTreeMap::from([("t".to_string(), d as i64)]), c: c.to_string() })
        .collect();
    PolynomialFile { vars: vec!["t".into()], terms }
}

pub fn laurent_file(p: &Laurent) -> PolynomialFile {
    let terms = p
        .terms()
        .map(|((a, b), c)| TermFile {
            exponents: BTreeMap::from([("u".to_string(), a), ("v".to_string(), b)]),
            c: c.to_string(),
        })
        .collect();
    PolynomialFile { vars: vec!["u".into(), "v".into()], terms }
}

fn big(source: &str, field: &str, s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| Error::ParseError(format!("{source}: field `{field}`: `{s}` is not a decimal integer")))
}

pub fn parse_polynomial(source: &str, text: &str) -> Result<Polynomial> {
    let f: PolynomialFile = parse(source, text)?;
    let vars: Vec<&str> = f.vars.iter().map(String::as_str).collect();
    let exponent = |i: usize, t: &TermFile, var: &str| -> Result<i64> {
        if t.exponents.len() != vars.len() {
            return Err(Error::ParseError(format!("{source}: field `terms[{i}]`: expected exponents for {vars:?}")));
        }
        t.exponents
            .get(var)
            .copied()
            .ok_or_else(|| Error::ParseError(format!("{source}: field `terms[{i}].{var}`: missing exponent")))
    };
    match vars.as_slice() {
        ["t"] => {
            let mut p = Uni::zero();
            for (i, t) in f.terms.iter().enumerate() {
                let d = exponent(i, t, "t")?;
                let d = usize::try_from(d)
                    .map_err(|_| Error::ParseError(format!("{source}: field `terms[{i}].t`: negative exponent {d}")))?;
                p.add_term(d, big(source, &format!("terms[{i}].c"), &t.c)?);
            }
            Ok(Polynomial::Univariate(p))
        }
        ["u", "v"] => {
            let mut p = Laurent::zero();
            for (i, t) in f.terms.iter().enumerate() {
                p.add_term(exponent(i, t, "u")?, exponent(i, t, "v")?, big(source, &format!("terms[{i}].c"), &t.c)?);
            }
            Ok(Polynomial::Laurent(p))
        }
        _ => Err(Error::ParseError(format!("{source}: field `vars`: expected [\"t\"] or [\"u\", \"v\"], found {vars:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeEntry {
    pub p: String,
    pub q: String,
    pub h: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeFile {
    pub dimension: i64,
    pub entries: Vec<HodgeEntry>,
}

pub fn hodge_file(t: &HodgeTable) -> HodgeFile {
    let entries = t
        .entries()
        .iter()
        .map(|((p, q), h)| HodgeEntry { p: p.to_string(), q: q.to_string(), h: h.to_string() })
        .collect();
    HodgeFile { dimension: t.dimension(), entries }
}

pub fn parse_hodge(source: &str, text: &str) -> Result<HodgeTable> {
    let f: HodgeFile = parse(source, text)?;
    let mut t = HodgeTable::new(f.dimension);
    for (i, e) in f.entries.iter().enumerate() {
        let index = |name: &str, s: &str| {
            Ratio::<i64>::from_str(s)
                .map_err(|_| Error::ParseError(format!("{source}: field `entries[{i}].{name}`: `{s}` is not a rational number")))
        };
        t.add(index("p", &e.p)?, index("q", &e.q)?, &big(source, &format!("entries[{i}].h"), &e.h)?);
    }
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceEntry {
    pub dim: usize,
    pub generators: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacesFile {
    pub dim: usize,
    pub faces: Vec<FaceEntry>,
    pub covers: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxShift {
    pub shift: usize,
    pub points: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxFile {
    pub dim: usize,
    pub counts: Vec<usize>,
    pub shifts: Vec<BoxShift>,
}

pub fn box_file(t: &BoxPointTable) -> BoxFile {
    let dim = t.cone.dim();
    BoxFile {
        dim,
        counts: (0..=dim).map(|l| t.count(l)).collect(),
        shifts: t.by_shift.iter().map(|(l, pts)| BoxShift { shift: *l, points: pts.clone() }).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionInfo {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heights: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<Vec<i64>>,
}

pub fn subdivision_info(p: &Provenance) -> SubdivisionInfo {
    match p {
        Provenance::Trivial => SubdivisionInfo { kind: "trivial".into(), heights: None, perturbation: None },
        Provenance::Explicit => SubdivisionInfo { kind: "explicit".into(), heights: None, perturbation: None },
        Provenance::Heights { heights, perturbation } => {
            SubdivisionInfo { kind: "heights".into(), heights: Some(heights.clone()), perturbation: perturbation.clone() }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientFile {
    pub dims_r0: Vec<usize>,
    pub dims_r0_interior: Vec<usize>,
    pub dims_r1: Vec<usize>,
    pub seed: Option<u64>,
    pub field: String,
    pub subdivision: SubdivisionInfo,
}

pub fn quotient_file(r: &GradedQuotientReport) -> QuotientFile {
    QuotientFile {
        dims_r0: r.dims_r0.clone(),
        dims_r0_interior: r.dims_r0_interior.clone(),
        dims_r1: r.dims_r1.clone(),
        seed: r.seed,
        field: r.field.clone(),
        subdivision: subdivision_info(&r.subdivision),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeDim {
    pub t: usize,
    pub q: i64,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExteriorDim {
    pub exterior: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulFile {
    pub matches: bool,
    pub d_squared_zero: bool,
    pub cap: usize,
    pub seed: u64,
    pub field: String,
    pub computed: Vec<GradeDim>,
    pub expected: Vec<GradeDim>,
    pub expected_by_exterior: Vec<ExteriorDim>,
    pub boundary: Vec<GradeDim>,
}

fn grade_dims(m: &BTreeMap<Grade, usize>) -> Vec<GradeDim> {
    m.iter().map(|(&(t, q), &dim)| GradeDim { t, q, dim }).collect()
}

pub fn koszul_file(r: &KoszulReport, seed: u64, field: String) -> KoszulFile {
    KoszulFile {
        matches: r.matches,
        d_squared_zero: r.d_squared_zero,
        cap: r.cap,
        seed,
        field,
        computed: grade_dims(&r.computed),
        expected: grade_dims(&r.expected),
        expected_by_exterior: r.expected_by_exterior.iter().map(|(&exterior, &dim)| ExteriorDim { exterior, dim }).collect(),
        boundary: grade_dims(&r.boundary),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagnostics_name_the_field() {
        let text = "{\n  \"rank\": 2,\n  \"vertices\": [\n    [1, 0],\n    [0, \"x\"]\n  ]\n}";
        let e = parse_polytope("p.json", text).unwrap_err().to_string();
        assert!(e.contains("vertices[1][1]"), "{e}");
        assert!(e.contains("line 5"), "{e}");
        let text = "{\"rank\": 2, \"vertices\": [[1, 0], [0, 1, 1]]}";
        let e = parse_polytope("p.json", text).unwrap_err().to_string();
        assert!(e.contains("vertices[1]"), "{e}");
        let e = parse_polytope("p.json", "{\"rank\": 2}").unwrap_err().to_string();
        assert!(e.contains("missing field `vertices`"), "{e}");
    }

    #[test]
    fn polynomial_files_round_trip() {
        let mut p = Laurent::zero();
        p.add_term(-2, 3, BigInt::from_str("123456789012345678901234567890").unwrap());
        p.add_term(0, 0, BigInt::from(-1));
        let text = serde_json::to_string(&laurent_file(&p)).unwrap();
        assert_eq!(parse_polynomial("x", &text).unwrap(), Polynomial::Laurent(p));
        let q = Uni::from_coeffs(&[BigInt::from(1), BigInt::from(0), BigInt::from(5)]);
        let text = serde_json::to_string(&univariate_file(&q)).unwrap();
        assert_eq!(text, r#"{"vars":["t"],"terms":[{"t":0,"c":"1"},{"t":2,"c":"5"}]}"#);
        assert_eq!(parse_polynomial("x", &text).unwrap(), Polynomial::Univariate(q));
    }

    #[test]
    fn malformed_polynomials() {
        let bad = [
            r#"{"vars":["t"],"terms":[{"t":-1,"c":"1"}]}"#,
            r#"{"vars":["u","v"],"terms":[{"u":1,"c":"1"}]}"#,
            r#"{"vars":["u","v"],"terms":[{"u":1,"v":0,"c":"1.5"}]}"#,
            r#"{"vars":["x"],"terms":[]}"#,
        ];
        for text in bad {
            assert!(matches!(parse_polynomial("x", text), Err(Error::ParseError(_))), "{text}");
        }
    }

    #[test]
    fn input_kinds() {
        assert!(matches!(parse_input("x", r#"{"rank":1,"vertices":[[-1],[1]]}"#), Ok(Input::Polytope(_))));
        assert!(matches!(parse_input("x", r#"{"rank":1,"rays":[[1],[-1]],"cones":[[0],[1]]}"#), Ok(Input::Fan(_))));
        assert!(matches!(parse_input("x", r#"{"rank":2,"generators":[[0,1],[2,1]]}"#), Ok(Input::Cone(_))));
        assert!(matches!(parse_input("x", r#"{"rank":2}"#), Err(Error::ParseError(_))));
        assert!(matches!(parse_input("x", "not json"), Err(Error::ParseError(_))));
    }
}
