use num_bigint::BigInt;
use num_integer::binomial;
use stringy_core::error::Error;
use stringy_core::fixtures;
use stringy_core::lattice::*;

fn lattice_count(p: &LatticePolytope, k: usize) -> usize {
    gorenstein_cone_over(p).lattice_points_at_degree(k, false).len()
}

/// Brute-force count of lattice points of `k P` in a box, using only
/// membership in the convex hull through the facet inequalities.
fn brute_count(p: &LatticePolytope, k: i64) -> usize {
    let ineqs = p.facet_inequalities();
    let r = p.rank();
    let lo: Vec<i64> = (0..r).map(|i| p.vertices().iter().map(|v| v[i]).min().unwrap() * k).collect();
    let hi: Vec<i64> = (0..r).map(|i| p.vertices().iter().map(|v| v[i]).max().unwrap() * k).collect();
    let mut count = 0;
    let mut x = lo.clone();
    loop {
        if ineqs.iter().all(|(a, c)| a.iter().zip(&x).map(|(ai, xi)| ai * xi).sum::<i64>() + c * k >= 0) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == r {
                return count;
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

#[test]
fn reflexive_fixtures_and_their_duals() {
    for (name, p) in fixtures::reflexive_polytopes() {
        assert!(is_reflexive(&p), "{name}");
        let dual = dual_polytope(&p).unwrap().to_lattice().unwrap();
        assert!(is_reflexive(&dual), "{name}");
        let back = dual_polytope(&dual).unwrap().to_lattice().unwrap();
        assert_eq!(back, p, "{name}");
        assert_eq!(p.lattice_points(true), vec![vec![0; p.rank()]], "{name}");
    }
}

#[test]
fn non_reflexive_segment() {
    let p = fixtures::segment_m1_2();
    assert!(!is_reflexive(&p));
    let dual = dual_polytope(&p).unwrap();
    assert!(!dual.is_integral());
    assert!(matches!(ReflexivePair::new(&p), Err(Error::NotReflexivePair(_))));
}

#[test]
fn origin_outside_interior() {
    let p = LatticePolytope::new(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
    assert_eq!(dual_polytope(&p).unwrap_err(), Error::OriginNotInterior);
    assert!(!is_reflexive(&p));
}

#[test]
fn malformed_input_is_rejected() {
    assert!(matches!(LatticePolytope::new(2, &[vec![0, 0], vec![1, 0], vec![2, 0]]), Err(Error::ParseError(_))));
    assert!(matches!(LatticePolytope::new(2, &[vec![0, 0, 1]]), Err(Error::ParseError(_))));
    assert!(matches!(GradedCone::new(2, &[vec![1]]), Err(Error::ParseError(_))));
    let big = vec![vec![1; 9]];
    assert!(matches!(GradedCone::new(9, &big), Err(Error::DimensionBudgetExceeded { dim: 9, budget: 8 })));
}

#[test]
fn lattice_point_counts_match_closed_forms() {
    for k in 0..4usize {
        let kk = k as i64;
        assert_eq!(lattice_count(&fixtures::cube(), k), ((2 * k + 1) as usize).pow(3));
        assert_eq!(lattice_count(&fixtures::square(), k), ((2 * k + 1) as usize).pow(2));
        assert_eq!(lattice_count(&fixtures::p2_dual(), k), (3 * k + 1) * (3 * k + 2) / 2);
        assert_eq!(BigInt::from(lattice_count(&fixtures::quartic(), k)), binomial(BigInt::from(4 * kk + 3), BigInt::from(3)));
        assert_eq!(lattice_count(&fixtures::diamond(), k), 2 * k * k + 2 * k + 1);
        // area 3/2 and three boundary points
        assert_eq!(2 * lattice_count(&fixtures::p2(), k), 3 * k * k + 3 * k + 2);
    }
    assert_eq!(lattice_count(&fixtures::quintic(), 1), 126);
}

#[test]
fn lattice_points_agree_with_brute_force() {
    for (name, p) in fixtures::polytopes() {
        if p.rank() > 3 {
            continue;
        }
        for k in 0..3 {
            assert_eq!(lattice_count(&p, k), brute_count(&p, k as i64), "{name} k={k}");
        }
    }
}

#[test]
fn interior_points_of_dilates() {
    // for a reflexive polytope the interior of (k + 1) P is a translate-free copy of k P
    for (name, p) in fixtures::reflexive_polytopes() {
        let c = gorenstein_cone_over(&p);
        for k in 0..3 {
            assert_eq!(c.lattice_points_at_degree(k + 1, true).len(), c.lattice_points_at_degree(k, false).len(), "{name}");
        }
    }
}

#[test]
fn dual_faces_pair_off() {
    for (name, p) in fixtures::reflexive_polytopes() {
        let pair = ReflexivePair::new(&p).unwrap();
        let dim = pair.k.dim();
        assert_eq!(dim, p.rank() + 1);
        for c in 0..pair.faces.len() {
            let cs = pair.dual_face(c);
            let dc = pair.faces.faces()[c].dim;
            let dcs = pair.faces_star.faces()[cs].dim;
            assert_eq!(dc + dcs, dim, "{name}");
            assert_eq!(pair.dual_face_star(cs), c, "{name}");
            for d in 0..pair.faces.len() {
                if pair.faces.le(c, d) {
                    assert!(pair.faces_star.le(pair.dual_face(d), cs), "{name}");
                }
            }
        }
        // faces of K and K* are orthogonal in pairs
        for c in 0..pair.faces.len() {
            let cs = pair.dual_face(c);
            for m in pair.faces.faces()[c].generators.ones() {
                for n in pair.faces_star.faces()[cs].generators.ones() {
                    assert_eq!(pairing(&pair.k.generators()[m], &pair.k_star.generators()[n]), 0, "{name}");
                }
            }
        }
    }
}

#[test]
fn face_counts() {
    let count = |p: &LatticePolytope| ReflexivePair::new(p).unwrap().faces.len();
    assert_eq!(count(&fixtures::cube()), 1 + 8 + 12 + 6 + 1);
    assert_eq!(count(&fixtures::octahedron()), 1 + 6 + 12 + 8 + 1);
    assert_eq!(count(&fixtures::quintic()), 32);
    assert_eq!(count(&fixtures::diamond()), 1 + 4 + 4 + 1);
}

#[test]
fn gorenstein_degree() {
    for (name, p) in fixtures::reflexive_polytopes() {
        let pair = ReflexivePair::new(&p).unwrap();
        for g in pair.k.generators() {
            assert_eq!(pair.k.degree_of(g), 1, "{name}");
        }
        let apex: Vec<i64> = std::iter::repeat(0).take(p.rank()).chain([1]).collect();
        assert!(pair.k_star.contains_in_interior(&apex), "{name}");
    }
    let c = GradedCone::new(2, &[vec![1, 0], vec![1, 2]]).unwrap();
    assert_eq!(c.deg(), &[1, 0]);
    assert!(matches!(GradedCone::new(2, &[vec![1, 0], vec![1, 3], vec![2, 1]]).map(|c| c.dim()), Ok(2)));
    assert!(matches!(GradedCone::new(2, &[vec![2, 1], vec![1, 2]]), Err(Error::NotGorenstein(_))));
}

#[test]
fn fans() {
    for (name, f) in fixtures::fans() {
        f.check_complete().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    assert_eq!(fixtures::fan_p2().cones().len(), 7);
    assert_eq!(fixtures::fan_p1().cones().len(), 3);
    let bad = Fan::new(2, &[vec![1, 0]], &[vec![0, 3]]);
    assert!(matches!(bad, Err(Error::ParseError(_))));
    let half = Fan::new(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
    assert!(matches!(half.check_complete(), Err(Error::NotComplete(_))));
}

#[test]
fn regular_subdivisions_of_fixture_cones() {
    for (name, p) in fixtures::reflexive_polytopes() {
        if p.rank() > 3 {
            continue;
        }
        let c = gorenstein_cone_over(&p);
        for seed in 0..3 {
            let s = random_regular_subdivision(&c, seed).unwrap();
            s.validate().unwrap();
            assert!(!s.is_trivial(), "{name} seed={seed}");
            assert!(s.max_cones().iter().all(GradedCone::is_simplicial), "{name}");
            let again = random_regular_subdivision(&c, seed).unwrap();
            assert_eq!(s, again, "{name}");
        }
    }
}

#[test]
fn heights_must_match_points() {
    let c = fixtures::cone_unit_square();
    assert!(matches!(regular_subdivision(&c, &[0, 1]), Err(Error::InvalidSubdivision(_))));
}

#[test]
fn star_subdivision_through_the_apex() {
    // lowering the interior point of the diamond cuts it into four cones
    let c = gorenstein_cone_over(&fixtures::diamond());
    let pts = c.lattice_points_at_degree(1, false);
    let heights: Vec<i64> = pts.iter().map(|q| if c.contains_in_interior(q) { 0 } else { 1 }).collect();
    let s = regular_subdivision(&c, &heights).unwrap();
    assert_eq!(s.max_cones().len(), 4);
    let restricted = s.restrict_to_face(&c);
    assert_eq!(restricted.max_cones().len(), 4);
}
