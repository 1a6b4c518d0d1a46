use num_bigint::BigInt;
use proptest::prelude::*;
use stringy_core::fixtures;
use stringy_core::lattice::{FaceLattice, ReflexivePair};
use stringy_core::poset::{g_polynomial, h_polynomial, EulerianPoset, GradedPoset, Interval};
use stringy_core::{BivariateLaurentPolynomial as Laurent, UnivariatePolynomial as Uni};

fn uni(cs: &[i64]) -> Uni {
    Uni::from_coeffs(&cs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
}

/// Face lattices of both cones of every reflexive fixture and of every fixture cone.
fn fixture_lattices() -> Vec<(String, FaceLattice)> {
    let mut out = Vec::new();
    for (name, p) in fixtures::reflexive_polytopes() {
        let pair = ReflexivePair::new(&p).unwrap();
        out.push((format!("{name}/K"), pair.k.face_lattice().unwrap()));
        out.push((format!("{name}/K*"), pair.k_star.face_lattice().unwrap()));
    }
    for (name, c) in fixtures::cones() {
        out.push((name.to_string(), c.face_lattice().unwrap()));
    }
    out
}

/// Toric h-vector of a simplicial polytope from its f-vector:
/// `h(t) = sum_i f_{i-1} t^i (1 - t)^{d - i}`.
fn simplicial_h(f: &[i64]) -> Uni {
    let d = f.len() - 1;
    let mut h = Uni::zero();
    for (i, &fi) in f.iter().enumerate() {
        let term = Uni::one_minus_t().pow(d - i).shift(i).scale(&BigInt::from(fi));
        h = &h + &term;
    }
    h
}

/// f-vector of the polytope whose cone has the given face lattice, with `f_{-1} = 1` first.
fn f_vector(faces: &FaceLattice) -> Vec<i64> {
    let poset = faces.poset();
    let rank = poset.rank();
    (0..rank).map(|r| (0..poset.len()).filter(|&x| poset.rank_of(x) == r).count() as i64).collect()
}

#[test]
fn b_identities_on_every_fixture_interval() {
    let mut count = 0;
    for (name, faces) in fixture_lattices() {
        let poset = faces.poset();
        for iv in poset.intervals() {
            for view in [iv, iv.flipped()] {
                assert_eq!(poset.b_of(view), poset.b_via_g_of(view), "{name} {view:?}");
                assert!(poset.convolution_inverse_check_of(view), "{name} {view:?}");
            }
            count += 1;
        }
    }
    assert!(count >= 200, "only {count} intervals");
}

#[test]
fn interval_views_match_materialized_posets() {
    for (name, faces) in fixture_lattices().into_iter().take(12) {
        let poset = faces.poset();
        for iv in poset.intervals() {
            let (sub, labels) = poset.interval(iv.lo, iv.hi);
            assert_eq!(labels.first(), Some(&iv.lo), "{name}");
            assert_eq!(poset.g_of(iv), g_polynomial(&sub), "{name} {iv:?}");
            assert_eq!(poset.h_of(iv), h_polynomial(&sub), "{name} {iv:?}");
            assert_eq!(poset.g_of(iv.flipped()), g_polynomial(&sub.dual()), "{name} {iv:?}");
            assert_eq!(poset.b_of(iv.flipped()), sub.dual().b_polynomial(), "{name} {iv:?}");
        }
    }
}

// G and H of a face lattice are read from the top down, so they are the
// toric g and h of the dual polytope.

#[test]
fn g_matches_vertex_counts_in_low_rank() {
    // polygons: g = 1 + (n - 3) t; 3-polytopes: g = 1 + (f_0 - 4) t
    for (name, p) in fixtures::reflexive_polytopes() {
        let pair = ReflexivePair::new(&p).unwrap();
        let faces = pair.k.face_lattice().unwrap();
        let f = f_vector(&pair.k_star.face_lattice().unwrap());
        let expected = match p.rank() {
            1 => uni(&[1]),
            2 => uni(&[1, f[1] - 3]),
            3 => uni(&[1, f[1] - 4]),
            _ => continue,
        };
        assert_eq!(faces.poset().g_of(faces.poset().whole()), expected, "{name}");
    }
}

#[test]
fn toric_h_of_simple_polytopes() {
    for name in ["diamond", "p2", "p2_dual", "cube", "quartic", "quartic_dual", "quintic", "quintic_dual"] {
        let p = fixtures::reflexive_polytopes().into_iter().find(|(n, _)| *n == name).unwrap().1;
        let pair = ReflexivePair::new(&p).unwrap();
        let faces = pair.k.face_lattice().unwrap();
        let h = faces.poset().h_of(faces.poset().whole());
        assert_eq!(h, simplicial_h(&f_vector(&pair.k_star.face_lattice().unwrap())), "{name}");
        assert!(h.is_palindromic(p.rank()), "{name}");
    }
}

#[test]
fn cube_and_octahedron_lattices_are_dual() {
    let pair = ReflexivePair::new(&fixtures::cube()).unwrap();
    let k = pair.k.face_lattice().unwrap();
    let ks = pair.k_star.face_lattice().unwrap();
    let a = k.poset();
    let b = ks.poset();
    assert_eq!(a.g_of(a.whole().flipped()), b.g_of(b.whole()));
    assert_eq!(a.b_of(a.whole().flipped()), b.b_of(b.whole()));
    assert_eq!(a.h_of(a.whole()), uni(&[1, 3, 3, 1]));
    assert_eq!(b.h_of(b.whole()), uni(&[1, 5, 5, 1]));
}

fn boolean(n: usize) -> EulerianPoset {
    EulerianPoset::new(GradedPoset::boolean(n)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn boolean_lattices(n in 0usize..6) {
        let p = boolean(n);
        prop_assert_eq!(p.g_polynomial(), uni(&[1]));
        prop_assert_eq!(p.h_polynomial(), Uni::from_coeffs(&vec![BigInt::from(1); n.max(1)]));
        let one_minus_u = &Laurent::one() - &Laurent::monomial(BigInt::from(1), 1, 0);
        prop_assert_eq!(p.b_polynomial(), one_minus_u.pow(n));
        prop_assert!(p.convolution_inverse_check());
    }

    #[test]
    fn every_interval_of_a_boolean_lattice_is_boolean(n in 1usize..5, seed in 0usize..64) {
        let p = boolean(n);
        let ivs = p.intervals();
        let iv: Interval = ivs[seed % ivs.len()];
        let k = p.rank_of(iv.hi) - p.rank_of(iv.lo);
        prop_assert_eq!(p.b_of(iv), boolean(k).b_polynomial());
        prop_assert_eq!(p.g_of(iv.flipped()), uni(&[1]));
    }
}
