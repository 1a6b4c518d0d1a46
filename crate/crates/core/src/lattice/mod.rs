//! Exact lattice geometry: polytopes, polar duality, Gorenstein cones, face
//! lattices, dual faces, lattice points, fans and regular subdivisions.

mod cone;
mod fan;
mod hull;

pub use cone::{deg_functional, Face, FaceLattice, GradedCone, AMBIENT_RANK_BUDGET};
pub use fan::{random_regular_subdivision, regular_subdivision, regular_subdivision_with, Fan, FanCone, FanSubdivision, Provenance};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// A full-dimensional lattice polytope given by its vertices (sorted).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    rank: usize,
    vertices: Vec<Vec<i64>>,
}

/// A polytope with rational vertices (sorted), as produced by polar duality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPolytope {
    pub rank: usize,
    pub vertices: Vec<Vec<BigRational>>,
}

impl RationalPolytope {
    /// The same polytope as a lattice polytope, if every vertex is integral.
    pub fn to_lattice(&self) -> Option<LatticePolytope> {
        let verts: Option<Vec<Vec<i64>>> = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| if x.is_integer() { i64::try_from(x.to_integer()).ok() } else { None })
                    .collect()
            })
            .collect();
        LatticePolytope::new(self.rank, &verts?).ok()
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().flatten().all(|x| x.is_integer())
    }
}

impl LatticePolytope {
    /// The convex hull of `points`; must be full-dimensional.
    pub fn new(rank: usize, points: &[Vec<i64>]) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ParseError("polytope rank must be positive".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != rank) {
            return Err(Error::ParseError(format!("vertex {p:?} does not have length {rank}")));
        }
        let lifted: Vec<Vec<i64>> = points.iter().map(|p| homogenize(p)).collect();
        let cone = GradedCone::new(rank + 1, &lifted)?;
        if cone.dim() != rank + 1 {
            return Err(Error::ParseError(format!("polytope is not full-dimensional in rank {rank}")));
        }
        let mut vertices: Vec<Vec<i64>> = cone.generators().iter().map(|g| g[..rank].to_vec()).collect();
        vertices.sort();
        Ok(LatticePolytope { rank, vertices })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Inequalities `<a, x> + c >= 0` for the facets, as `(a, c)` with primitive `(a, c)`.
    pub fn facet_inequalities(&self) -> Vec<(Vec<i64>, i64)> {
        let cone = gorenstein_cone_over(self);
        cone.facets().iter().map(|f| (f[..self.rank].to_vec(), f[self.rank])).collect()
    }

    pub fn contains_origin_in_interior(&self) -> bool {
        self.facet_inequalities().iter().all(|(_, c)| *c > 0)
    }

    /// Lattice points of the polytope (or of its interior), sorted.
    pub fn lattice_points(&self, interior_only: bool) -> Vec<Vec<i64>> {
        gorenstein_cone_over(self)
            .lattice_points_at_degree(1, interior_only)
            .into_iter()
            .map(|p| p[..self.rank].to_vec())
            .collect()
    }
}

fn homogenize(p: &[i64]) -> Vec<i64> {
    let mut v = p.to_vec();
    v.push(1);
    v
}

/// The polar dual `{n : <m, n> >= -1 for all m in P}`.
pub fn dual_polytope(p: &LatticePolytope) -> Result<RationalPolytope> {
    let ineqs = p.facet_inequalities();
    if ineqs.iter().any(|(_, c)| *c <= 0) {
        return Err(Error::OriginNotInterior);
    }
    let mut vertices: Vec<Vec<BigRational>> = ineqs
        .iter()
        .map(|(a, c)| a.iter().map(|&x| BigRational::new(BigInt::from(x), BigInt::from(*c))).collect())
        .collect();
    vertices.sort();
    Ok(RationalPolytope { rank: p.rank(), vertices })
}

/// Zero is the only interior lattice point and the polar dual is a lattice polytope.
pub fn is_reflexive(p: &LatticePolytope) -> bool {
    let Ok(dual) = dual_polytope(p) else {
        return false;
    };
    let interior = p.lattice_points(true);
    interior.len() == 1 && interior[0].iter().all(|x| *x == 0) && dual.is_integral()
}

/// The cone over `P x {1}`, with degree the last coordinate.
pub fn gorenstein_cone_over(p: &LatticePolytope) -> GradedCone {
    let lifted: Vec<Vec<i64>> = p.vertices().iter().map(|v| homogenize(v)).collect();
    GradedCone::new(p.rank() + 1, &lifted).expect("cones over lattice polytopes are Gorenstein")
}

/// A reflexive polytope with its dual, both Gorenstein cones and their face
/// lattices, and the order-reversing bijection between faces.
#[derive(Debug, Clone)]
pub struct ReflexivePair {
    pub polytope: LatticePolytope,
    pub dual: LatticePolytope,
    pub k: GradedCone,
    pub k_star: GradedCone,
    pub faces: FaceLattice,
    pub faces_star: FaceLattice,
    dual_of: Vec<usize>,
    dual_of_star: Vec<usize>,
}

impl ReflexivePair {
    pub fn new(p: &LatticePolytope) -> Result<Self> {
        if !is_reflexive(p) {
            return Err(Error::NotReflexivePair("polytope is not reflexive".into()));
        }
        let dual = dual_polytope(p)?.to_lattice().expect("reflexive duals are lattice polytopes");
        let k = gorenstein_cone_over(p);
        let k_star = gorenstein_cone_over(&dual);
        let faces = k.face_lattice()?;
        let faces_star = k_star.face_lattice()?;
        let dual_of = dual_face_map(&k, &faces, &k_star, &faces_star)?;
        let dual_of_star = dual_face_map(&k_star, &faces_star, &k, &faces)?;
        Ok(ReflexivePair { polytope: p.clone(), dual, k, k_star, faces, faces_star, dual_of, dual_of_star })
    }

    /// The pair with the roles of the polytope and its dual exchanged.
    pub fn mirror(&self) -> ReflexivePair {
        ReflexivePair {
            polytope: self.dual.clone(),
            dual: self.polytope.clone(),
            k: self.k_star.clone(),
            k_star: self.k.clone(),
            faces: self.faces_star.clone(),
            faces_star: self.faces.clone(),
            dual_of: self.dual_of_star.clone(),
            dual_of_star: self.dual_of.clone(),
        }
    }

    /// Rank `d` of the polytope; the cones have dimension `d + 1`.
    pub fn rank(&self) -> usize {
        self.polytope.rank()
    }

    /// Index in `faces_star` of the face dual to face `c` of `k`.
    pub fn dual_face(&self, c: usize) -> usize {
        self.dual_of[c]
    }

    /// Index in `faces` of the face dual to face `c` of `k_star`.
    pub fn dual_face_star(&self, c: usize) -> usize {
        self.dual_of_star[c]
    }
}

/// For each face of `a`, the face of `b` generated by the normals of the facets containing it.
fn dual_face_map(a: &GradedCone, fa: &FaceLattice, b: &GradedCone, fb: &FaceLattice) -> Result<Vec<usize>> {
    let gen_of_facet: Vec<usize> = a
        .facets()
        .iter()
        .map(|f| {
            b.generators()
                .iter()
                .position(|g| g == f)
                .ok_or_else(|| Error::NotReflexivePair(format!("facet normal {f:?} is not a dual generator")))
        })
        .collect::<Result<_>>()?;
    fa.faces()
        .iter()
        .map(|face| {
            let mut gens = FixedBitSet::with_capacity(b.generators().len());
            for f in face.facets.ones() {
                gens.insert(gen_of_facet[f]);
            }
            fb.index_of(&gens).ok_or_else(|| Error::NotReflexivePair("dual generator set is not a face".into()))
        })
        .collect()
}

/// Pairing of a primal and a dual lattice vector.
pub fn pairing(m: &[i64], n: &[i64]) -> i64 {
    crate::linalg::dot(m, n)
}
