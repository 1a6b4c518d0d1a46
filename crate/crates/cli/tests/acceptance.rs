//! Acceptance suite: one PASS/FAIL line per criterion, each timed against its budget.
//!
//! Every criterion runs the shipped verification suite over the bundled fixture
//! files and, separately, an oracle written here against the core library.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use stringy_cli::verify::{run_suite, FixtureSet, Suite};
use stringy_core::fixtures;
use stringy_core::koszul::expected_dims;
use stringy_core::lattice::*;
use stringy_core::poset::Interval;
use stringy_core::stringy::*;
use stringy_core::{BivariateLaurentPolynomial as Laurent, UnivariatePolynomial as Uni};

type Oracle = fn() -> std::result::Result<String, String>;

struct Criterion {
    number: usize,
    suite: Suite,
    budget: Duration,
    oracle: Oracle,
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn laurent(terms: &[(i64, i64, i64)]) -> Laurent {
    let mut p = Laurent::zero();
    for &(a, b, c) in terms {
        p.add_term(a, b, BigInt::from(c));
    }
    p
}

fn pair(name: &str) -> PairInvariants {
    let p = fixtures::reflexive_polytopes().into_iter().find(|(n, _)| *n == name).unwrap().1;
    PairInvariants::new(&ReflexivePair::new(&p).unwrap())
}

fn cones() -> Vec<(String, GradedCone)> {
    let mut out = Vec::new();
    for (name, p) in fixtures::reflexive_polytopes() {
        let pair = ReflexivePair::new(&p).unwrap();
        out.push((format!("{name}/K"), pair.k));
        out.push((format!("{name}/K*"), pair.k_star));
    }
    for (name, c) in fixtures::cones() {
        out.push((name.to_string(), c));
    }
    out
}

/// `(1 - t)^n` times the degree-graded point counts, truncated at `n = dim C`.
fn s_oracle(c: &GradedCone) -> Uni {
    let n = c.dim();
    let mut acc = Uni::zero();
    for k in 0..=n {
        let count = BigInt::from(c.lattice_points_at_degree(k, false).len());
        acc = &acc + &(&Uni::one_minus_t().pow(n) * &Uni::monomial(count, k)).truncate_above(n);
    }
    acc
}

/// Alternating face sum of point-count S-polynomials weighted by G of face intervals.
fn tilde_s_oracle(inv: &ConeInvariants, c: usize) -> Uni {
    let faces = inv.faces();
    let mut acc = Uni::zero();
    for c1 in (0..faces.len()).filter(|&c1| faces.le(c1, c)) {
        let g = faces.poset().g_of(Interval::new(c1, c));
        let sign = if (inv.dim_of(c) - inv.dim_of(c1)) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        acc = &acc + &(&s_oracle(&inv.face_cone(c1)) * &g).scale(&sign);
    }
    acc
}

fn criterion_1() -> std::result::Result<String, String> {
    let reflexive = fixtures::reflexive_polytopes();
    ensure(reflexive.len() >= 6, || format!("only {} reflexive fixtures", reflexive.len()))?;
    for (name, p) in &reflexive {
        let inv = PairInvariants::new(&ReflexivePair::new(p).unwrap());
        let a = e_st_hypersurface(&inv).map_err(|e| format!("{name}: {e}"))?;
        let b = e_st_oracle(&inv).map_err(|e| format!("{name}: {e}"))?;
        ensure(a == b, || format!("{name}: {a} != {b}"))?;
    }
    Ok(format!("{} polytopes", reflexive.len()))
}

fn criterion_2() -> std::result::Result<String, String> {
    let pairs = [("diamond", "square"), ("cube", "octahedron"), ("quartic", "quartic_dual")];
    for (a, b) in pairs {
        let x = pair(a);
        let n = x.pair.rank() as i64 - 1;
        let ex = e_st_hypersurface(&x).unwrap();
        let ey = e_st_hypersurface(&pair(b)).unwrap();
        let mut flipped = Laurent::zero();
        for ((i, j), c) in ey.terms() {
            flipped.add_term(n - i, j, if n % 2 == 0 { c.clone() } else { -c.clone() });
        }
        ensure(ex == flipped, || format!("{a}/{b}"))?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn criterion_3() -> std::result::Result<String, String> {
    let table = |name: &str| {
        let inv = pair(name);
        stringy_hodge_table(&e_st_oracle(&inv).unwrap(), inv.pair.rank() as i64 - 1).unwrap()
    };
    let h = |v: i64| BigInt::from(v);
    for name in ["diamond", "square", "p2", "p2_dual"] {
        let t = table(name);
        for (p, q) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            ensure(t.h(p, q) == h(1), || format!("{name} h^{{{p},{q}}}"))?;
        }
    }
    for name in ["cube", "octahedron", "quartic", "quartic_dual"] {
        ensure(table(name).h(1, 1) == h(20), || format!("{name} h^{{1,1}}"))?;
    }
    let start = Instant::now();
    let quintic = table("quintic");
    let mirror = table("quintic_dual");
    let elapsed = start.elapsed();
    ensure(quintic.h(1, 1) == h(1) && quintic.h(2, 1) == h(101), || "quintic".into())?;
    ensure(mirror.h(1, 1) == h(101) && mirror.h(2, 1) == h(1), || "mirror quintic".into())?;
    ensure(elapsed < Duration::from_secs(600), || format!("quintic took {elapsed:?}"))?;
    Ok(format!("9 tables, quintic pair in {:.1} s", elapsed.as_secs_f64()))
}

fn criterion_4() -> std::result::Result<String, String> {
    let mut intervals = 0;
    for (_, c) in cones() {
        let inv = ConeInvariants::new(&c).unwrap();
        let faces = inv.faces();
        for a in 0..faces.len() {
            for b in (0..faces.len()).filter(|&b| faces.le(a, b)) {
                // G of a Boolean interval is 1
                if inv.face_cone(b).is_simplicial() && inv.dim_of(b) > inv.dim_of(a) {
                    let g = faces.poset().g_of(Interval::new(a, b));
                    ensure(g == Uni::one(), || format!("G of a Boolean interval is {g}"))?;
                }
                intervals += 1;
            }
        }
    }
    ensure(intervals >= 200, || format!("only {intervals} intervals"))?;
    Ok(format!("{intervals} intervals"))
}

fn criterion_5() -> std::result::Result<String, String> {
    let mut faces = 0;
    for (name, c) in cones() {
        let inv = ConeInvariants::new(&c).unwrap();
        for f in 0..inv.faces().len() {
            ensure(inv.tilde_s(f) == &tilde_s_oracle(&inv, f), || format!("{name} face {f}"))?;
            faces += 1;
        }
    }
    Ok(format!("{faces} faces"))
}

fn criterion_6() -> std::result::Result<String, String> {
    let mut checked = 0;
    for (name, c) in cones().into_iter().filter(|(_, c)| c.dim() <= 4) {
        let s = s_polynomial(&c).unwrap();
        ensure(s == s_oracle(&c), || format!("{name}: S"))?;
        let inv = ConeInvariants::new(&c).unwrap();
        let top = inv.faces().len() - 1;
        ensure(tilde_s_polynomial(&c).unwrap() == tilde_s_oracle(&inv, top), || format!("{name}: tilde-S"))?;
        checked += 1;
    }
    Ok(format!("{checked} cones"))
}

/// Points of the half-open parallelepiped found by solving each lattice point of its bounding box.
fn box_oracle(gens: &[Vec<i64>]) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    if gens.is_empty() {
        counts.insert(0, 1);
        return counts;
    }
    let r = gens[0].len();
    let lo: Vec<i64> = (0..r).map(|i| gens.iter().map(|g| g[i].min(0)).sum()).collect();
    let hi: Vec<i64> = (0..r).map(|i| gens.iter().map(|g| g[i].max(0)).sum()).collect();
    let mut x = lo.clone();
    'outer: loop {
        if let Some(coords) = solve(gens, &x) {
            if coords.iter().all(|a| a.is_positive() && *a < BigRational::one()) {
                let l: BigRational = coords.iter().sum();
                *counts.entry(usize::try_from(l.to_integer()).unwrap()).or_insert(0) += 1;
            }
        }
        for i in 0..r {
            if x[i] < hi[i] {
                x[i] += 1;
                continue 'outer;
            }
            x[i] = lo[i];
        }
        break;
    }
    counts
}

fn solve(gens: &[Vec<i64>], x: &[i64]) -> Option<Vec<BigRational>> {
    let k = gens.len();
    let q = |v: i64| BigRational::from_integer(v.into());
    let mut rows: Vec<Vec<BigRational>> =
        (0..x.len()).map(|i| gens.iter().map(|g| q(g[i])).chain([q(x[i])]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(row, p);
        let inv = rows[row][col].recip();
        rows[row].iter_mut().for_each(|v| *v *= inv.clone());
        for i in 0..rows.len() {
            if i != row && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..=k {
                    let y = &f * &rows[row][j];
                    rows[i][j] -= y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|v| !v[k].is_zero()) {
        return None;
    }
    let mut out = vec![BigRational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = rows[i][k].clone();
    }
    Some(out)
}

fn criterion_7() -> std::result::Result<String, String> {
    let mut simplicial = 0;
    for (name, c) in cones() {
        let inv = ConeInvariants::new(&c).unwrap();
        for f in 0..inv.faces().len() {
            let face = inv.face_cone(f);
            if !face.is_simplicial() || face.dim() > 4 {
                continue;
            }
            let oracle = box_oracle(face.generators());
            for l in 0..=face.dim() {
                let n = oracle.get(&l).copied().unwrap_or(0);
                ensure(BigInt::from(n) == inv.tilde_s(f).coeff(l), || format!("{name} face {f} l={l}"))?;
            }
            simplicial += 1;
        }
    }
    Ok(format!("{simplicial} simplicial cones"))
}

fn criterion_8() -> std::result::Result<String, String> {
    let cases = [
        ("P1", fixtures::fan_p1(), laurent(&[(0, 0, 1), (1, 1, 1)])),
        ("P2", fixtures::fan_p2(), laurent(&[(0, 0, 1), (1, 1, 1), (2, 2, 1)])),
        ("P(1,1,2)", fixtures::fan_p112(), laurent(&[(0, 0, 1), (1, 1, 2), (2, 2, 1)])),
    ];
    for (name, fan, expected) in &cases {
        ensure(e_st_toric(fan).unwrap() == *expected, || name.to_string())?;
    }
    let ray = e_int_orbit_closure(&fixtures::fan_p2(), &[0]).unwrap();
    ensure(ray == laurent(&[(0, 0, 1), (1, 1, 1)]), || format!("P2 ray closure {ray}"))?;
    Ok("3 fans and one orbit closure".into())
}

fn criterion_9() -> std::result::Result<String, String> {
    for name in ["diamond", "segment", "p2"] {
        let inv = pair(name);
        let mut oracle: BTreeMap<(usize, i64), usize> = BTreeMap::new();
        for c in 0..inv.k.faces().len() {
            let cs = inv.pair.dual_face(c);
            let e = inv.k_star.dim_of(cs) as i64;
            let left = tilde_s_oracle(&inv.k, c);
            let right = tilde_s_oracle(&inv.k_star, cs);
            for (i, x) in left.terms() {
                for (j, y) in right.terms() {
                    let n: usize = (x * y).try_into().unwrap();
                    *oracle.entry((i + j, e + i as i64 - j as i64)).or_insert(0) += n;
                }
            }
        }
        ensure(expected_dims(&inv).0 == oracle, || format!("{name}: expected decomposition"))?;
    }
    Ok("3 decompositions".into())
}

fn criterion_10() -> std::result::Result<String, String> {
    let reflexive = fixtures::reflexive_polytopes();
    for (name, p) in &reflexive {
        let inv = PairInvariants::new(&ReflexivePair::new(p).unwrap());
        let e = e_st_oracle(&inv).unwrap();
        let sigma = random_regular_subdivision(&inv.pair.k_star, 7).unwrap();
        let table = string_cohomology_table(&inv, &sigma).map_err(|e| format!("{name}: {e}"))?;
        ensure(table.to_polynomial().as_ref() == Some(&e), || format!("{name}"))?;
    }
    Ok(format!("{} polytopes", reflexive.len()))
}

fn main() -> ExitCode {
    let minutes = |m: u64| Duration::from_secs(60 * m);
    let criteria = [
        Criterion { number: 1, suite: Suite::TwoFormulas, budget: minutes(1), oracle: criterion_1 },
        Criterion { number: 2, suite: Suite::MirrorDuality, budget: minutes(10), oracle: criterion_2 },
        Criterion { number: 3, suite: Suite::GoldenHodge, budget: minutes(10), oracle: criterion_3 },
        Criterion { number: 4, suite: Suite::PosetIdentities, budget: minutes(10), oracle: criterion_4 },
        Criterion { number: 5, suite: Suite::TildeS, budget: minutes(10), oracle: criterion_5 },
        Criterion { number: 6, suite: Suite::GradedDimensions, budget: minutes(5), oracle: criterion_6 },
        Criterion { number: 7, suite: Suite::BoxPoints, budget: minutes(10), oracle: criterion_7 },
        Criterion { number: 8, suite: Suite::ToricE, budget: minutes(10), oracle: criterion_8 },
        Criterion { number: 9, suite: Suite::Koszul, budget: minutes(10), oracle: criterion_9 },
        Criterion { number: 10, suite: Suite::ConjectureTable, budget: minutes(10), oracle: criterion_10 },
    ];
    let set = FixtureSet::shipped().expect("shipped fixtures parse");
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let check = run_suite(c.suite, &set, 0);
        let suite_time = start.elapsed();
        let oracle = (c.oracle)();
        let in_budget = suite_time < c.budget;
        let passed = check.passed && oracle.is_ok() && in_budget;
        if !passed {
            failed += 1;
        }
        let oracle_note = match &oracle {
            Ok(s) => format!("oracle ok ({s})"),
            Err(s) => format!("oracle FAILED ({s})"),
        };
        println!(
            "{} criterion {:>2} {:<18} {:>7.1} s / {:>4} s  {}; {}",
            if passed { "PASS" } else { "FAIL" },
            c.number,
            check.id,
            suite_time.as_secs_f64(),
            c.budget.as_secs(),
            check.detail,
            oracle_note,
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
