//! The verification suites, run over the shipped fixture files.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use stringy_core::error::{Error, Result};
use stringy_core::koszul::compare_with_decomposition;
use stringy_core::lattice::*;
use stringy_core::poly::Monomial;
use stringy_core::semigroup::{generic_quotient_dims, ring_string_cohomology_table, DegreeOneElement};
use stringy_core::stringy::*;
use stringy_core::{BivariateLaurentPolynomial as Laurent, FieldKind, PrimeField, UnivariatePolynomial as Uni, MERSENNE_31};

use crate::io;

/// Shipped fixture files, by name.
pub const SHIPPED: &[(&str, &str)] = &[
    ("segment", include_str!("../fixtures/segment.json")),
    ("diamond", include_str!("../fixtures/diamond.json")),
    ("square", include_str!("../fixtures/square.json")),
    ("p2", include_str!("../fixtures/p2.json")),
    ("p2_dual", include_str!("../fixtures/p2_dual.json")),
    ("cube", include_str!("../fixtures/cube.json")),
    ("octahedron", include_str!("../fixtures/octahedron.json")),
    ("quartic", include_str!("../fixtures/quartic.json")),
    ("quartic_dual", include_str!("../fixtures/quartic_dual.json")),
    ("quintic", include_str!("../fixtures/quintic.json")),
    ("quintic_dual", include_str!("../fixtures/quintic_dual.json")),
    ("segment_m1_2", include_str!("../fixtures/segment_m1_2.json")),
    ("fan_p1", include_str!("../fixtures/fan_p1.json")),
    ("fan_p2", include_str!("../fixtures/fan_p2.json")),
    ("fan_p112", include_str!("../fixtures/fan_p112.json")),
    ("cone_a1", include_str!("../fixtures/cone_a1.json")),
    ("cone_a2", include_str!("../fixtures/cone_a2.json")),
    ("cone_unit_square", include_str!("../fixtures/cone_unit_square.json")),
];

/// Mirror pairs among the polytope fixtures.
pub const MIRROR_PAIRS: &[(&str, &str)] = &[
    ("diamond", "square"),
    ("p2", "p2_dual"),
    ("cube", "octahedron"),
    ("quartic", "quartic_dual"),
    ("quintic", "quintic_dual"),
];

/// Reference Hodge numbers `(p, q, h)` of the fixture hypersurfaces; unlisted entries vanish.
pub fn golden_hodge(name: &str) -> Option<Vec<(i64, i64, i64)>> {
    let elliptic = vec![(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)];
    let k3 = vec![(0, 0, 1), (2, 0, 1), (1, 1, 20), (0, 2, 1), (2, 2, 1)];
    let quintic = |a: i64, b: i64| {
        vec![(0, 0, 1), (1, 1, a), (2, 2, a), (3, 3, 1), (3, 0, 1), (0, 3, 1), (2, 1, b), (1, 2, b)]
    };
    match name {
        "segment" => Some(vec![(0, 0, 2)]),
        "diamond" | "square" | "p2" | "p2_dual" => Some(elliptic),
        "cube" | "octahedron" | "quartic" | "quartic_dual" => Some(k3),
        "quintic" => Some(quintic(1, 101)),
        "quintic_dual" => Some(quintic(101, 1)),
        _ => None,
    }
}

/// Expected toric E-functions of the fan fixtures as `(a, b, c)` terms of `c u^a v^b`.
pub fn golden_toric(name: &str) -> Option<Vec<(i64, i64, i64)>> {
    match name {
        "fan_p1" => Some(vec![(0, 0, 1), (1, 1, 1)]),
        "fan_p2" => Some(vec![(0, 0, 1), (1, 1, 1), (2, 2, 1)]),
        "fan_p112" => Some(vec![(0, 0, 1), (1, 1, 2), (2, 2, 1)]),
        _ => None,
    }
}

pub fn laurent(terms: &[(i64, i64, i64)]) -> Laurent {
    let mut p = Laurent::zero();
    for &(a, b, c) in terms {
        p.add_term(a, b, BigInt::from(c));
    }
    p
}

/// Parsed fixtures, in shipping order.
#[derive(Debug, Clone, Default)]
pub struct FixtureSet {
    pub polytopes: Vec<(String, LatticePolytope)>,
    pub fans: Vec<(String, Fan)>,
    pub cones: Vec<(String, GradedCone)>,
}

impl FixtureSet {
    pub fn shipped() -> Result<Self> {
        Self::select(&["all".to_string()])
    }

    /// The named fixtures; `all` selects every shipped file.
    pub fn select(names: &[String]) -> Result<Self> {
        let all = names.iter().any(|n| n == "all");
        if let Some(bad) = names.iter().find(|n| *n != "all" && !SHIPPED.iter().any(|(s, _)| s == n)) {
            let known: Vec<&str> = SHIPPED.iter().map(|(s, _)| *s).collect();
            return Err(Error::ParseError(format!("unknown fixture `{bad}`; known fixtures: all, {}", known.join(", "))));
        }
        let mut set = FixtureSet::default();
        for (name, text) in SHIPPED {
            if !all && !names.iter().any(|n| n == name) {
                continue;
            }
            let source = format!("fixtures/{name}.json");
            match io::parse_input(&source, text)? {
                io::Input::Polytope(p) => set.polytopes.push((name.to_string(), p)),
                io::Input::Fan(f) => set.fans.push((name.to_string(), f)),
                io::Input::Cone(c) => set.cones.push((name.to_string(), c)),
            }
        }
        Ok(set)
    }

    pub fn is_complete(&self) -> bool {
        self.polytopes.len() + self.fans.len() + self.cones.len() == SHIPPED.len()
    }

    pub fn polytope(&self, name: &str) -> Option<&LatticePolytope> {
        self.polytopes.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    /// Reflexive polytope fixtures with their pair invariants.
    pub fn reflexive(&self) -> Vec<(String, PairInvariants)> {
        self.polytopes
            .iter()
            .filter(|(_, p)| is_reflexive(p))
            .map(|(n, p)| (n.clone(), PairInvariants::new(&ReflexivePair::new(p).expect("reflexive"))))
            .collect()
    }

    /// Both cones of every reflexive fixture and the standalone cones, without repeats.
    pub fn all_cones(&self) -> Vec<(String, GradedCone)> {
        let mut out: Vec<(String, GradedCone)> = Vec::new();
        for (name, inv) in self.reflexive() {
            for (suffix, c) in [("K", inv.pair.k), ("K*", inv.pair.k_star)] {
                if !out.iter().any(|(_, d)| *d == c) {
                    out.push((format!("{name}/{suffix}"), c));
                }
            }
        }
        for (name, c) in &self.cones {
            if !out.iter().any(|(_, d)| d == c) {
                out.push((name.clone(), c.clone()));
            }
        }
        out
    }
}

/// One verification suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    TwoFormulas,
    MirrorDuality,
    GoldenHodge,
    PosetIdentities,
    TildeS,
    GradedDimensions,
    BoxPoints,
    ToricE,
    Koszul,
    ConjectureTable,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::TwoFormulas,
        Suite::MirrorDuality,
        Suite::GoldenHodge,
        Suite::PosetIdentities,
        Suite::TildeS,
        Suite::GradedDimensions,
        Suite::BoxPoints,
        Suite::ToricE,
        Suite::Koszul,
        Suite::ConjectureTable,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::TwoFormulas => "two-formulas",
            Suite::MirrorDuality => "mirror-duality",
            Suite::GoldenHodge => "golden-hodge",
            Suite::PosetIdentities => "poset-identities",
            Suite::TildeS => "tilde-s",
            Suite::GradedDimensions => "graded-dimensions",
            Suite::BoxPoints => "box-points",
            Suite::ToricE => "toric-e",
            Suite::Koszul => "koszul",
            Suite::ConjectureTable => "conjecture-table",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Suite::TwoFormulas => "tilde-S and orthogonal-pair formulas for E_st agree",
            Suite::MirrorDuality => "E_st of mirror pairs are exchanged by u -> 1/u",
            Suite::GoldenHodge => "stringy Hodge numbers match reference values",
            Suite::PosetIdentities => "B = B via G and the G convolution inverse on every interval",
            Suite::TildeS => "tilde-S palindromic, simplicial form, inversion to S",
            Suite::GradedDimensions => "R0 and R1 dimensions equal S and tilde-S, both backends",
            Suite::BoxPoints => "box points count tilde-S coefficients",
            Suite::ToricE => "toric E-functions and orbit closures",
            Suite::Koszul => "Koszul cohomology matches the face decomposition",
            Suite::ConjectureTable => "string cohomology table sums to E_st, independent of subdivision",
        }
    }

    /// Wall-clock budget for the suite over the full fixture set.
    pub fn budget(self) -> Duration {
        match self {
            Suite::TwoFormulas => Duration::from_secs(60),
            Suite::GoldenHodge => Duration::from_secs(600),
            Suite::GradedDimensions => Duration::from_secs(300),
            Suite::Koszul => Duration::from_secs(600),
            _ => Duration::from_secs(600),
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.id() == s)
    }
}

/// Outcome of one suite. `detail` is deterministic for a given fixture set and seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub detail: String,
}

/// Collects failures while a suite runs.
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failures: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn error(&mut self, what: String, e: Error) {
        self.checked += 1;
        self.failures.push(format!("{what}: {e}"));
    }

    fn finish(self, suite: Suite, unit: &str, elapsed: Duration) -> Check {
        let mut failures = self.failures;
        if elapsed > suite.budget() {
            failures.push(format!("over the {} s budget", suite.budget().as_secs()));
        }
        let detail = if failures.is_empty() {
            format!("{} {unit} checked", self.checked)
        } else {
            let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
            format!("{} of {} {unit} failed: {}", failures.len(), self.checked, shown.join("; "))
        };
        Check { id: suite.id().into(), title: suite.title().into(), passed: failures.is_empty() && self.checked > 0, detail }
    }
}

/// `(-u)^n p(1/u, v)`.
pub fn mirror_transform(p: &Laurent, n: i64) -> Laurent {
    let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    p.substitute(&Monomial::new(BigInt::one(), -1, 0), &Monomial::v()).shift(n, 0).scale(&sign)
}

/// Runs one suite with seeds `seed, seed + 1, seed + 2` where randomness is involved.
pub fn run_suite(suite: Suite, set: &FixtureSet, seed: u64) -> Check {
    let start = Instant::now();
    let (tally, unit) = match suite {
        Suite::TwoFormulas => (two_formulas(set), "polytopes"),
        Suite::MirrorDuality => (mirror_duality(set), "pairs"),
        Suite::GoldenHodge => (golden_hodge_suite(set), "tables"),
        Suite::PosetIdentities => (poset_identities(set), "intervals"),
        Suite::TildeS => (tilde_s(set), "faces"),
        Suite::GradedDimensions => (graded_dimensions(set, seed), "reports"),
        Suite::BoxPoints => (box_points_suite(set), "cones"),
        Suite::ToricE => (toric(set), "values"),
        Suite::Koszul => (koszul(set, seed), "complexes"),
        Suite::ConjectureTable => (conjecture_table(set, seed), "tables"),
    };
    tally.finish(suite, unit, start.elapsed())
}

pub fn run_all(set: &FixtureSet, seed: u64) -> Vec<Check> {
    Suite::ALL.iter().map(|&s| run_suite(s, set, seed)).collect()
}

fn two_formulas(set: &FixtureSet) -> Tally {
    let mut t = Tally::new();
    for (name, inv) in set.reflexive() {
        match (e_st_hypersurface(&inv), e_st_oracle(&inv)) {
            (Ok(a), Ok(b)) => t.expect(a == b, || format!("{name}: {a} != {b}")),
            (Err(e), _) | (_, Err(e)) => t.error(name, e),
        }
    }
    t
}

fn mirror_duality(set: &FixtureSet) -> Tally {
    let mut t = Tally::new();
    for (a, b) in MIRROR_PAIRS {
        let (Some(pa), Some(pb)) = (set.polytope(a), set.polytope(b)) else { continue };
        let result = (|| -> Result<bool> {
            let ea = e_st_hypersurface(&PairInvariants::new(&ReflexivePair::new(pa)?))?;
            let eb = e_st_hypersurface(&PairInvariants::new(&ReflexivePair::new(pb)?))?;
            Ok(ea == mirror_transform(&eb, pa.rank() as i64 - 1))
        })();
        match result {
            Ok(ok) => t.expect(ok, || format!("{a}/{b}: not exchanged")),
            Err(e) => t.error(format!("{a}/{b}"), e),
        }
    }
    t
}

fn golden_hodge_suite(set: &FixtureSet) -> Tally {
    let mut t = Tally::new();
    for (name, inv) in set.reflexive() {
        let Some(golden) = golden_hodge(&name) else { continue };
        let table = e_st_oracle(&inv).and_then(|e| stringy_hodge_table(&e, inv.pair.rank() as i64 - 1));
        match table {
            Ok(table) => {
                let mut expected = HodgeTable::new(table.dimension());
                for (p, q, h) in golden {
                    expected.add(p.into(), q.into(), &BigInt::from(h));
                }
                t.expect(table == expected, || format!("{name}: got {}", table.to_string().replace('\n', ", ")));
            }
            Err(e) => t.error(name, e),
        }
    }
    t
}

fn face_lattices(set: &FixtureSet) -> Vec<(String, FaceLattice)> {
    let mut out = Vec::new();
    for (name, c) in set.all_cones() {
        match c.face_lattice() {
            Ok(f) => out.push((name, f)),
            Err(e) => panic!("fixture cone {name} has no face lattice: {e}"),
        }
    }
    out
}

fn poset_identities(set: &FixtureSet) -> Tally {
    let mut t = Tally::new();
    for (name, faces) in face_lattices(set) {
        let poset = faces.poset();
        for iv in poset.intervals() {
            let ok = [iv, iv.flipped()]
                .iter()
                .all(|&v| poset.b_of(v) == poset.b_via_g_of(v) && poset.convolution_inverse_check_of(v));
            t.expect(ok, || format!("{name}: interval {iv:?}"));
        }
    }
    if set.is_complete() && t.checked < 200 {
        t.failures.push(format!("only {} intervals", t.checked));
    }
    t
}

fn tilde_s(set: &FixtureSet) -> Tally {
    let mut t = Tally::new();
    for (name, c) in set.all_cones() {
        let inv = match ConeInvariants::new(&c) {
            Ok(inv) => inv,
            Err(e) => {
                t.error(name, e);
                continue;
            }
        };
        for f in 0..inv.faces().len() {
            let ts = inv.tilde_s(f);
            let mut ok = ts.is_palindromic(inv.dim_of(f)) && inv.s_from_tilde(f) == *inv.s(f);
            if inv.face_cone(f).is_simplicial() {
                ok &= inv.tilde_s_simplicial(f).as_ref() == Ok(ts);
            }
            t.expect(ok, || format!("{name}: face {f}"));
        }
    }
    t
}

fn coefficients(p: &Uni, len: usize) -> Vec<usize> {
    (0..len).map(|k| usize::try_from(p.coeff(k)).unwrap_or(usize::MAX)).collect()
}

fn graded_dimensions(set: &FixtureSet, seed: u64) -> Tally {
    let mut t = Tally::new();
    for (name, c) in set.all_cones() {
        if c.dim() > 4 {
            continue;
        }
        let n = c.dim();
        let expected = s_polynomial(&c).and_then(|s| Ok((coefficients(&s, n + 2), coefficients(&tilde_s_polynomial(&c)?, n + 2))));
        let (s, ts) = match expected {
            Ok(x) => x,
            Err(e) => {
                t.error(name, e);
                continue;
            }
        };
        let subdivided = match random_regular_subdivision(&c, seed) {
            Ok(sigma) if !sigma.is_trivial() => sigma,
            Ok(_) => {
                t.expect(false, || format!("{name}: no nontrivial regular subdivision"));
                continue;
            }
            Err(e) => {
                t.error(name, e);
                continue;
            }
        };
        for sigma in [FanSubdivision::trivial(&c), subdivided] {
            for s_ in seed..seed + 3 {
                let label = || format!("{name} seed {s_} {} cells", sigma.max_cones().len());
                let prime = generic_quotient_dims(&c, &sigma, s_, FieldKind::Prime(MERSENNE_31));
                let rational = generic_quotient_dims(&c, &sigma, s_, FieldKind::Rational);
                match (prime, rational) {
                    (Ok(p), Ok(q)) => {
                        t.expect(p.dims_r0 == s && p.dims_r1 == ts, || format!("{}: dims {:?} {:?}", label(), p.dims_r0, p.dims_r1));
                        t.expect(p.same_dims(&q), || format!("{}: backends disagree", label()));
                    }
                    (Err(e), _) | (_, Err(e)) => t.error(label(), e),
                }
            }
        }
    }
    t
}

fn box_points_suite(set: &FixtureSet) -> Tally {
    let mut t = Tally::new();
    for (name, c) in set.all_cones() {
        let Ok(inv) = ConeInvariants::new(&c) else { continue };
        for f in 0..inv.faces().len() {
            let face = inv.face_cone(f);
            if !face.is_simplicial() {
                continue;
            }
            match box_points(&face) {
                Ok(table) => {
                    let ts = inv.tilde_s(f);
                    let ok = (0..=face.dim()).all(|l| BigInt::from(table.count(l)) == ts.coeff(l));
                    t.expect(ok, || format!("{name}: face {f}"));
                }
                Err(e) => t.error(format!("{name}: face {f}"), e),
            }
        }
    }
    t
}

fn toric(set: &FixtureSet) -> Tally {
    let mut t = Tally::new();
    for (name, fan) in &set.fans {
        match e_st_toric(fan) {
            Ok(e) => {
                if let Some(golden) = golden_toric(name) {
                    t.expect(e == laurent(&golden), || format!("{name}: E = {e}"));
                }
                match toric_string_table(fan) {
                    Ok(table) => t.expect(table.to_polynomial() == Some(e.clone()), || format!("{name}: string table")),
                    Err(err) => t.error(name.clone(), err),
                }
            }
            Err(e) => t.error(name.clone(), e),
        }
        if name == "fan_p2" {
            for ray in 0..fan.rays().len() {
                match e_int_orbit_closure(fan, &[ray]) {
                    Ok(e) => t.expect(e == laurent(&[(0, 0, 1), (1, 1, 1)]), || format!("{name}: ray {ray} gives {e}")),
                    Err(err) => t.error(format!("{name}: ray {ray}"), err),
                }
            }
        }
    }
    t
}

/// Fixtures whose Koszul complexes are compared.
pub const KOSZUL_FIXTURES: &[&str] = &["segment", "diamond", "p2"];

fn koszul(set: &FixtureSet, seed: u64) -> Tally {
    let mut t = Tally::new();
    for (name, inv) in set.reflexive() {
        if !KOSZUL_FIXTURES.contains(&name.as_str()) {
            continue;
        }
        let sigma = match random_regular_subdivision(&inv.pair.k_star, seed) {
            Ok(s) => s,
            Err(e) => {
                t.error(name, e);
                continue;
            }
        };
        for s in seed..seed + 3 {
            let f = DegreeOneElement::<PrimeField>::random(&inv.pair.k, s);
            let g = DegreeOneElement::<PrimeField>::random(&inv.pair.k_star, s + 1000);
            for sub in [None, Some(&sigma)] {
                let label = || format!("{name} seed {s}{}", if sub.is_some() { " subdivided" } else { "" });
                match compare_with_decomposition(&inv, &f, &g, None, sub) {
                    Ok(r) => t.expect(r.matches, || format!("{}: {:?} vs {:?}", label(), r.computed, r.expected)),
                    Err(e) => t.error(label(), e),
                }
            }
        }
    }
    t
}

fn conjecture_table(set: &FixtureSet, seed: u64) -> Tally {
    let mut t = Tally::new();
    for (name, inv) in set.reflexive() {
        let result = (|| -> Result<()> {
            let e = e_st_hypersurface(&inv)?;
            let trivial = FanSubdivision::trivial(&inv.pair.k_star);
            let base = string_cohomology_table(&inv, &trivial)?;
            t.expect(base.to_polynomial().as_ref() == Some(&e), || format!("{name}: signed sum differs from E_st"));
            for s in seed..seed + 2 {
                let sigma = random_regular_subdivision(&inv.pair.k_star, s)?;
                let other = string_cohomology_table(&inv, &sigma)?;
                t.expect(other == base, || format!("{name}: table changes under subdivision {s}"));
                if inv.pair.rank() <= 2 {
                    let ring = ring_string_cohomology_table(&inv, &sigma, s, FieldKind::Prime(MERSENNE_31))?;
                    t.expect(ring == base, || format!("{name}: ring dimensions differ under subdivision {s}"));
                }
            }
            Ok(())
        })();
        if let Err(e) = result {
            t.error(name, e);
        }
    }
    t
}
