//! Bundled polytopes, fans and cones used by the test suites and the CLI.

use crate::lattice::{Fan, GradedCone, LatticePolytope};

fn polytope(rank: usize, vertices: &[&[i64]]) -> LatticePolytope {
    LatticePolytope::new(rank, &vertices.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).expect("fixture polytope")
}

/// `conv{(+-1, 0), (0, +-1)}`.
pub fn diamond() -> LatticePolytope {
    polytope(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])
}

/// `[-1, 1]^2`.
pub fn square() -> LatticePolytope {
    polytope(2, &[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])
}

/// `conv{(1, 0), (0, 1), (-1, -1)}`, the fan polytope of the projective plane.
pub fn p2() -> LatticePolytope {
    polytope(2, &[&[1, 0], &[0, 1], &[-1, -1]])
}

/// `conv{(2, -1), (-1, 2), (-1, -1)}`, the Newton polytope of plane cubics.
pub fn p2_dual() -> LatticePolytope {
    polytope(2, &[&[2, -1], &[-1, 2], &[-1, -1]])
}

/// `[-1, 1]^3`.
pub fn cube() -> LatticePolytope {
    polytope(3, &[
        &[1, 1, 1],
        &[1, 1, -1],
        &[1, -1, 1],
        &[1, -1, -1],
        &[-1, 1, 1],
        &[-1, 1, -1],
        &[-1, -1, 1],
        &[-1, -1, -1],
    ])
}

/// `conv{+-e_i}` in rank 3.
pub fn octahedron() -> LatticePolytope {
    polytope(3, &[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]])
}

/// Newton polytope of quartic surfaces in projective 3-space.
pub fn quartic() -> LatticePolytope {
    polytope(3, &[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3], &[-1, -1, -1]])
}

/// `conv{e_1, e_2, e_3, -e_1 - e_2 - e_3}`, polar dual of [`quartic`].
pub fn quartic_dual() -> LatticePolytope {
    polytope(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]])
}

/// Newton polytope of quintic threefolds in projective 4-space.
pub fn quintic() -> LatticePolytope {
    polytope(4, &[&[4, -1, -1, -1], &[-1, 4, -1, -1], &[-1, -1, 4, -1], &[-1, -1, -1, 4], &[-1, -1, -1, -1]])
}

/// `conv{e_1, .., e_4, -e_1 - .. - e_4}`, polar dual of [`quintic`]; its
/// hypersurfaces are the mirror quintic.
pub fn quintic_dual() -> LatticePolytope {
    polytope(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, -1, -1, -1]])
}

/// The segment `[-1, 1]`.
pub fn segment() -> LatticePolytope {
    polytope(1, &[&[-1], &[1]])
}

/// The segment `[-1, 2]`, which is not reflexive.
pub fn segment_m1_2() -> LatticePolytope {
    polytope(1, &[&[-1], &[2]])
}

/// Every reflexive polytope fixture, by name.
pub fn reflexive_polytopes() -> Vec<(&'static str, LatticePolytope)> {
    vec![
        ("segment", segment()),
        ("diamond", diamond()),
        ("square", square()),
        ("p2", p2()),
        ("p2_dual", p2_dual()),
        ("cube", cube()),
        ("octahedron", octahedron()),
        ("quartic", quartic()),
        ("quartic_dual", quartic_dual()),
        ("quintic", quintic()),
        ("quintic_dual", quintic_dual()),
    ]
}

/// Every polytope fixture by name, including non-reflexive ones.
pub fn polytopes() -> Vec<(&'static str, LatticePolytope)> {
    let mut v = reflexive_polytopes();
    v.push(("segment_m1_2", segment_m1_2()));
    v
}

/// Fan of the projective line.
pub fn fan_p1() -> Fan {
    Fan::new(1, &[vec![1], vec![-1]], &[vec![0], vec![1]]).expect("fixture fan")
}

/// Fan of the projective plane.
pub fn fan_p2() -> Fan {
    Fan::new(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]], &[vec![0, 1], vec![1, 2], vec![0, 2]]).expect("fixture fan")
}

/// Fan of the weighted projective plane `P(1,1,2)`.
pub fn fan_p112() -> Fan {
    Fan::new(2, &[vec![1, 0], vec![0, 1], vec![-1, -2]], &[vec![0, 1], vec![1, 2], vec![0, 2]]).expect("fixture fan")
}

/// Every fan fixture, by name.
pub fn fans() -> Vec<(&'static str, Fan)> {
    vec![("p1", fan_p1()), ("p2", fan_p2()), ("p112", fan_p112())]
}

fn cone(rank: usize, gens: &[&[i64]]) -> GradedCone {
    GradedCone::new(rank, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).expect("fixture cone")
}

/// The `A_1` cone spanned by `(0, 1)` and `(2, 1)`.
pub fn cone_a1() -> GradedCone {
    cone(2, &[&[0, 1], &[2, 1]])
}

/// The `A_2` cone spanned by `(0, 1)` and `(3, 1)`.
pub fn cone_a2() -> GradedCone {
    cone(2, &[&[0, 1], &[3, 1]])
}

/// The cone over the unit square.
pub fn cone_unit_square() -> GradedCone {
    cone(3, &[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]])
}

/// Every standalone cone fixture, by name.
pub fn cones() -> Vec<(&'static str, GradedCone)> {
    vec![("a1", cone_a1()), ("a2", cone_a2()), ("unit_square", cone_unit_square())]
}
