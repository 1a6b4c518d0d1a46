//! Gorenstein cones, their faces, and lattice points graded by degree.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::hull::cone_hull;
use crate::error::{Error, Result};
use crate::linalg::{dot, integer_kernel, integer_solve, primitive_i64, rank_i64};
use crate::poset::EulerianPoset;

/// Largest ambient rank the enumerations accept.
pub const AMBIENT_RANK_BUDGET: usize = 8;

/// A pointed rational cone whose primitive generators all have degree one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedCone {
    ambient_rank: usize,
    generators: Vec<Vec<i64>>,
    facets: Vec<Vec<i64>>,
    equations: Vec<Vec<i64>>,
    deg: Vec<i64>,
    dim: usize,
}

/// The unique functional with value one on every generator, extended to the
/// ambient lattice by fixing free parameters to zero.
pub fn deg_functional(generators: &[Vec<i64>]) -> Result<Vec<i64>> {
    let Some(first) = generators.first() else {
        return Err(Error::NotGorenstein("no generators".into()));
    };
    let ones = vec![1i64; generators.len()];
    integer_solve(generators, &ones, first.len())
        .ok_or_else(|| Error::NotGorenstein("no integral functional takes value 1 on every generator".into()))
}

impl GradedCone {
    /// The cone spanned by `points` (zero vectors are ignored).
    pub fn new(ambient_rank: usize, points: &[Vec<i64>]) -> Result<Self> {
        if ambient_rank > AMBIENT_RANK_BUDGET {
            return Err(Error::DimensionBudgetExceeded { dim: ambient_rank, budget: AMBIENT_RANK_BUDGET });
        }
        if let Some(p) = points.iter().find(|p| p.len() != ambient_rank) {
            return Err(Error::ParseError(format!("point {p:?} does not have length {ambient_rank}")));
        }
        let mut prims: Vec<Vec<i64>> =
            points.iter().filter(|p| p.iter().any(|&x| x != 0)).map(|p| primitive_i64(p)).collect();
        prims.sort();
        prims.dedup();
        if prims.is_empty() {
            return Ok(GradedCone {
                ambient_rank,
                generators: vec![],
                facets: vec![],
                equations: unit_vectors(ambient_rank),
                deg: vec![0; ambient_rank],
                dim: 0,
            });
        }
        let hull = cone_hull(&prims, ambient_rank);
        let facet_rank = if hull.facets.is_empty() { 0 } else { rank_i64(&hull.facets) };
        let pointed = if hull.dim == 1 { hull.facets.len() == 1 } else { facet_rank == hull.dim };
        if !pointed {
            return Err(Error::NotGorenstein("cone is not pointed".into()));
        }
        // a point is extreme when the face cut out by its tight facets is a ray
        let tight_of: Vec<FixedBitSet> = (0..prims.len())
            .map(|i| {
                let mut t = FixedBitSet::with_capacity(hull.facets.len());
                for (f, set) in hull.tight.iter().enumerate() {
                    if set.contains(i) {
                        t.insert(f);
                    }
                }
                t
            })
            .collect();
        let generators: Vec<Vec<i64>> = (0..prims.len())
            .filter(|&i| {
                (0..prims.len()).all(|j| j == i || !tight_of[i].is_subset(&tight_of[j]) || prims[j] == prims[i])
            })
            .map(|i| prims[i].clone())
            .collect();
        let deg = deg_functional(&generators)?;
        let equations = integer_kernel(&generators, ambient_rank);
        Ok(GradedCone { ambient_rank, generators, facets: hull.facets, equations, deg, dim: hull.dim })
    }

    /// The zero cone `{0}` in the given ambient rank.
    pub fn zero(ambient_rank: usize) -> Self {
        GradedCone::new(ambient_rank, &[]).expect("zero cone")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn facets(&self) -> &[Vec<i64>] {
        &self.facets
    }

    /// Lattice equations cutting out the linear span (empty when full-dimensional).
    pub fn equations(&self) -> &[Vec<i64>] {
        &self.equations
    }

    pub fn deg(&self) -> &[i64] {
        &self.deg
    }

    pub fn degree_of(&self, p: &[i64]) -> i64 {
        dot(&self.deg, p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_simplicial(&self) -> bool {
        self.generators.len() == self.dim
    }

    pub fn in_span(&self, p: &[i64]) -> bool {
        self.equations.iter().all(|e| dot(e, p) == 0)
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.in_span(p) && self.facets.iter().all(|f| dot(f, p) >= 0)
    }

    /// Membership in the relative interior. The zero cone is its own interior.
    pub fn contains_in_interior(&self, p: &[i64]) -> bool {
        self.in_span(p) && self.facets.iter().all(|f| dot(f, p) > 0)
    }

    /// Facets on which `p` vanishes.
    pub fn tight_facets(&self, p: &[i64]) -> FixedBitSet {
        let mut t = FixedBitSet::with_capacity(self.facets.len());
        for (i, f) in self.facets.iter().enumerate() {
            if dot(f, p) == 0 {
                t.insert(i);
            }
        }
        t
    }

    /// Generators lying on each facet.
    pub fn facet_generator_sets(&self) -> Vec<FixedBitSet> {
        self.facets
            .iter()
            .map(|f| {
                let mut s = FixedBitSet::with_capacity(self.generators.len());
                for (j, g) in self.generators.iter().enumerate() {
                    if dot(f, g) == 0 {
                        s.insert(j);
                    }
                }
                s
            })
            .collect()
    }

    /// Generators of the minimal face containing `p`.
    pub fn minimal_face_generators(&self, p: &[i64]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.generators.len());
        s.insert_range(..);
        for (f, set) in self.facets.iter().zip(self.facet_generator_sets()) {
            if dot(f, p) == 0 {
                s.intersect_with(&set);
            }
        }
        s
    }

    /// The face spanned by a subset of the generators, as a cone in its own right.
    pub fn subcone(&self, gens: &FixedBitSet) -> GradedCone {
        let pts: Vec<Vec<i64>> = gens.ones().map(|i| self.generators[i].clone()).collect();
        let mut c = GradedCone::new(self.ambient_rank, &pts).expect("faces of Gorenstein cones are Gorenstein");
        if !pts.is_empty() {
            c.deg = self.deg.clone();
        }
        c
    }

    /// All lattice points of degree `k` (or those in the relative interior), sorted.
    pub fn lattice_points_at_degree(&self, k: usize, interior_only: bool) -> Vec<Vec<i64>> {
        let r = self.ambient_rank;
        if self.dim == 0 {
            return if k == 0 { vec![vec![0; r]] } else { vec![] };
        }
        let k = k as i64;
        let lo: Vec<i64> = (0..r).map(|j| k * self.generators.iter().map(|g| g[j]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..r).map(|j| k * self.generators.iter().map(|g| g[j]).max().unwrap()).collect();
        // solve the degree equation for a coordinate with a unit coefficient when possible
        let solved = (0..r).rev().find(|&j| self.deg[j].abs() == 1);
        let mut out = Vec::new();
        let mut p = lo.clone();
        let free: Vec<usize> = (0..r).filter(|&j| Some(j) != solved).collect();
        'outer: loop {
            let ok = match solved {
                Some(j) => {
                    let rest: i64 = free.iter().map(|&i| self.deg[i] * p[i]).sum();
                    p[j] = (k - rest) * self.deg[j];
                    p[j] >= lo[j] && p[j] <= hi[j]
                }
                None => dot(&self.deg, &p) == k,
            };
            if ok {
                let inside = if interior_only { self.contains_in_interior(&p) } else { self.contains(&p) };
                if inside {
                    out.push(p.clone());
                }
            }
            for &i in free.iter().rev() {
                if p[i] < hi[i] {
                    p[i] += 1;
                    continue 'outer;
                }
                p[i] = lo[i];
            }
            break;
        }
        out.sort();
        out
    }

    pub fn face_lattice(&self) -> Result<FaceLattice> {
        FaceLattice::new(self)
    }
}

fn unit_vectors(r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
}

/// A face of a cone, recorded by the generators it contains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub generators: FixedBitSet,
    /// Facets of the parent cone containing this face.
    pub facets: FixedBitSet,
    pub dim: usize,
}

/// All faces of a cone ordered by dimension, with their cover relations.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    faces: Vec<Face>,
    covers: Vec<(usize, usize)>,
    index: HashMap<FixedBitSet, usize>,
    poset: EulerianPoset,
}

impl FaceLattice {
    pub fn new(cone: &GradedCone) -> Result<Self> {
        if cone.dim() > AMBIENT_RANK_BUDGET {
            return Err(Error::DimensionBudgetExceeded { dim: cone.dim(), budget: AMBIENT_RANK_BUDGET });
        }
        let ng = cone.generators().len();
        let facet_sets = cone.facet_generator_sets();
        let mut all = FixedBitSet::with_capacity(ng);
        all.insert_range(..);
        let mut sets = vec![all.clone()];
        let mut seen: HashMap<FixedBitSet, ()> = HashMap::from([(all, ())]);
        let mut i = 0;
        while i < sets.len() {
            let s = sets[i].clone();
            for f in &facet_sets {
                let mut t = s.clone();
                t.intersect_with(f);
                if seen.insert(t.clone(), ()).is_none() {
                    sets.push(t);
                }
            }
            i += 1;
        }
        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|s| {
                let gens: Vec<Vec<i64>> = s.ones().map(|j| cone.generators()[j].clone()).collect();
                let dim = if gens.is_empty() { 0 } else { rank_i64(&gens) };
                let mut facets = FixedBitSet::with_capacity(facet_sets.len());
                for (fi, f) in facet_sets.iter().enumerate() {
                    if s.is_subset(f) {
                        facets.insert(fi);
                    }
                }
                Face { generators: s, facets, dim }
            })
            .collect();
        faces.sort_by(|a, b| {
            (a.dim, a.generators.ones().collect::<Vec<_>>()).cmp(&(b.dim, b.generators.ones().collect::<Vec<_>>()))
        });
        let mut covers = Vec::new();
        for (x, a) in faces.iter().enumerate() {
            for (y, b) in faces.iter().enumerate() {
                if b.dim == a.dim + 1 && a.generators.is_subset(&b.generators) {
                    covers.push((x, y));
                }
            }
        }
        let index = faces.iter().enumerate().map(|(i, f)| (f.generators.clone(), i)).collect();
        let ranks: Vec<usize> = faces.iter().map(|f| f.dim).collect();
        let poset = EulerianPoset::from_covers(&ranks, &covers)?;
        Ok(FaceLattice { faces, covers, index, poset })
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn poset(&self) -> &EulerianPoset {
        &self.poset
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn index_of(&self, generators: &FixedBitSet) -> Option<usize> {
        self.index.get(generators).copied()
    }

    /// The minimal face containing `p`.
    pub fn face_of_point(&self, cone: &GradedCone, p: &[i64]) -> usize {
        self.index[&cone.minimal_face_generators(p)]
    }

    /// Is face `x` contained in face `y`?
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.poset.le(x, y)
    }
}
