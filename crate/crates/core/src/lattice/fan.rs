//! Complete fans and subdivisions of a single cone.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cone::GradedCone;
use super::hull::cone_hull;
use crate::error::{Error, Result};
use crate::linalg::{dot, primitive_i64};

/// A cone of a fan, given by the indices of its rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCone {
    pub rays: Vec<usize>,
    pub cone: GradedCone,
}

/// A fan in `Z^rank` given by its rays and maximal cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    cones: Vec<FanCone>,
}

impl Fan {
    /// Builds the fan and all its cones; every cone must be Gorenstein.
    pub fn new(rank: usize, rays: &[Vec<i64>], max_cones: &[Vec<usize>]) -> Result<Self> {
        for r in rays {
            if r.len() != rank {
                return Err(Error::ParseError(format!("ray {r:?} does not have length {rank}")));
            }
        }
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in max_cones {
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::ParseError(format!("cone refers to missing ray {bad}")));
            }
            let pts: Vec<Vec<i64>> = c.iter().map(|&i| rays[i].clone()).collect();
            let cone = GradedCone::new(rank, &pts)?;
            let lattice = cone.face_lattice()?;
            for face in lattice.faces() {
                let mut ids: Vec<usize> = face
                    .generators
                    .ones()
                    .map(|g| {
                        let v = &cone.generators()[g];
                        c.iter().copied().find(|&i| primitive_i64(&rays[i]) == *v).expect("generator is a ray")
                    })
                    .collect();
                ids.sort();
                all.insert(ids);
            }
        }
        let mut cones: Vec<FanCone> = all
            .into_iter()
            .map(|ids| {
                let pts: Vec<Vec<i64>> = ids.iter().map(|&i| rays[i].clone()).collect();
                Ok(FanCone { cone: GradedCone::new(rank, &pts)?, rays: ids })
            })
            .collect::<Result<_>>()?;
        cones.sort_by(|a, b| (a.cone.dim(), &a.rays).cmp(&(b.cone.dim(), &b.rays)));
        Ok(Fan { rank, rays: rays.to_vec(), max_cones: max_cones.to_vec(), cones })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Every cone of the fan, including `{0}`, ordered by dimension.
    pub fn cones(&self) -> &[FanCone] {
        &self.cones
    }

    /// Index of the cone with the given rays.
    pub fn find(&self, rays: &[usize]) -> Option<usize> {
        let mut r = rays.to_vec();
        r.sort();
        self.cones.iter().position(|c| c.rays == r)
    }

    /// Combinatorial completeness: every maximal cone is full-dimensional and
    /// every codimension-one cone borders exactly two of them.
    pub fn check_complete(&self) -> Result<()> {
        let d = self.rank;
        let full: Vec<&FanCone> = self.cones.iter().filter(|c| c.cone.dim() == d).collect();
        if full.is_empty() {
            return Err(Error::NotComplete("no full-dimensional cone".into()));
        }
        for c in &self.cones {
            let is_max = !self.cones.iter().any(|o| o.rays.len() > c.rays.len() && c.rays.iter().all(|r| o.rays.contains(r)));
            if is_max && c.cone.dim() != d {
                return Err(Error::NotComplete(format!("maximal cone {:?} is not full-dimensional", c.rays)));
            }
            if c.cone.dim() + 1 == d {
                let n = full.iter().filter(|o| c.rays.iter().all(|r| o.rays.contains(r))).count();
                if n != 2 {
                    return Err(Error::NotComplete(format!("wall {:?} borders {n} maximal cones", c.rays)));
                }
            }
        }
        Ok(())
    }

    /// Does cone `a` contain cone `b` (as indices into `cones`)?
    pub fn contains_cone(&self, a: usize, b: usize) -> bool {
        self.cones[b].rays.iter().all(|r| self.cones[a].rays.contains(r))
    }
}

/// How a subdivision was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Trivial,
    Explicit,
    /// Lower hull of lifted degree-one points; `perturbation` records any
    /// generic refinement applied to make every cell simplicial.
    Heights { heights: Vec<i64>, perturbation: Option<Vec<i64>> },
}

/// A fan subdividing a Gorenstein cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanSubdivision {
    parent: GradedCone,
    max_cones: Vec<GradedCone>,
    provenance: Provenance,
}

impl FanSubdivision {
    /// The subdivision consisting of the cone itself.
    pub fn trivial(parent: &GradedCone) -> Self {
        FanSubdivision { parent: parent.clone(), max_cones: vec![parent.clone()], provenance: Provenance::Trivial }
    }

    /// A subdivision given cell by cell; validated before it is returned.
    pub fn explicit(parent: &GradedCone, cells: Vec<GradedCone>) -> Result<Self> {
        let s = FanSubdivision { parent: parent.clone(), max_cones: cells, provenance: Provenance::Explicit };
        s.validate()?;
        Ok(s)
    }

    pub fn parent(&self) -> &GradedCone {
        &self.parent
    }

    pub fn max_cones(&self) -> &[GradedCone] {
        &self.max_cones
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_trivial(&self) -> bool {
        self.max_cones.len() == 1
    }

    /// Maximal cones containing `p`.
    pub fn cells_containing(&self, p: &[i64]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.max_cones.len());
        for (i, c) in self.max_cones.iter().enumerate() {
            if c.contains(p) {
                s.insert(i);
            }
        }
        s
    }

    /// The subdivision induced on a face of the parent, given by its generators.
    pub fn restrict_to_face(&self, face: &GradedCone) -> FanSubdivision {
        let mut cells: Vec<GradedCone> = Vec::new();
        for c in &self.max_cones {
            let pts: Vec<Vec<i64>> = c.generators().iter().filter(|g| face.contains(g)).cloned().collect();
            if pts.is_empty() {
                continue;
            }
            let cell = GradedCone::new(face.ambient_rank(), &pts).expect("faces of cells are cones");
            if cell.dim() == face.dim() && !cells.contains(&cell) {
                cells.push(cell);
            }
        }
        if face.dim() == 0 {
            cells = vec![face.clone()];
        }
        cells.sort_by(|a, b| a.generators().cmp(b.generators()));
        let provenance = if cells.len() == 1 { Provenance::Trivial } else { self.provenance.clone() };
        FanSubdivision { parent: face.clone(), max_cones: cells, provenance }
    }

    /// Checks containment, coverage on points of degree at most 3, that
    /// overlapping cells meet in common faces, and that interior walls are
    /// shared by exactly two cells.
    pub fn validate(&self) -> Result<()> {
        let d = self.parent.dim();
        for (i, c) in self.max_cones.iter().enumerate() {
            if c.dim() != d {
                return Err(Error::InvalidSubdivision(format!("cell {i} has dimension {} instead of {d}", c.dim())));
            }
            if let Some(g) = c.generators().iter().find(|g| !self.parent.contains(g)) {
                return Err(Error::InvalidSubdivision(format!("cell {i} has generator {g:?} outside the cone")));
            }
        }
        for k in 0..=3 {
            for p in self.parent.lattice_points_at_degree(k, false) {
                let cells = self.cells_containing(&p);
                if cells.count_ones(..) == 0 {
                    return Err(Error::InvalidSubdivision(format!("point {p:?} is not covered")));
                }
                let faces: Vec<Vec<Vec<i64>>> = cells
                    .ones()
                    .map(|i| {
                        let c = &self.max_cones[i];
                        c.minimal_face_generators(&p).ones().map(|g| c.generators()[g].clone()).collect()
                    })
                    .collect();
                if faces.windows(2).any(|w| w[0] != w[1]) {
                    return Err(Error::InvalidSubdivision(format!("cells overlap improperly at {p:?}")));
                }
            }
        }
        let mut walls: HashMap<Vec<Vec<i64>>, usize> = HashMap::new();
        for c in &self.max_cones {
            for set in c.facet_generator_sets() {
                let gens: Vec<Vec<i64>> = set.ones().map(|g| c.generators()[g].clone()).collect();
                let on_boundary = self
                    .parent
                    .facets()
                    .iter()
                    .any(|f| gens.iter().all(|g| dot(f, g) == 0));
                if !on_boundary {
                    *walls.entry(gens).or_insert(0) += 1;
                }
            }
        }
        if let Some((w, n)) = walls.iter().find(|(_, &n)| n != 2) {
            return Err(Error::InvalidSubdivision(format!("interior wall {w:?} is shared by {n} cells")));
        }
        Ok(())
    }
}

/// Lower-hull subdivision from integer heights on the degree-one points.
///
/// Equal heights on a cell give a coarse (non-simplicial) cell; no
/// perturbation is applied.
pub fn regular_subdivision(parent: &GradedCone, heights: &[i64]) -> Result<FanSubdivision> {
    regular_subdivision_with(parent, heights, false)
}

/// Like [`regular_subdivision`]; with `refine` set, a deterministic generic
/// perturbation of the heights is applied whenever some cell is not simplicial.
pub fn regular_subdivision_with(parent: &GradedCone, heights: &[i64], refine: bool) -> Result<FanSubdivision> {
    let points = parent.lattice_points_at_degree(1, false);
    if points.len() != heights.len() {
        return Err(Error::InvalidSubdivision(format!(
            "{} heights given for {} degree-one points",
            heights.len(),
            points.len()
        )));
    }
    let cells = lower_hull_cells(parent, &points, heights)?;
    let mut perturbation = None;
    let cells = if refine && cells.iter().any(|c| !c.is_simplicial()) {
        const SCALE: i64 = 1 << 20;
        let mut found = None;
        for attempt in 0..8u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + attempt);
            let eps: Vec<i64> = heights.iter().map(|_| rng.gen_range(0..1000)).collect();
            let lifted: Vec<i64> = heights.iter().zip(&eps).map(|(h, e)| h * SCALE + e).collect();
            let cand = lower_hull_cells(parent, &points, &lifted)?;
            if cand.iter().all(|c| c.is_simplicial()) {
                found = Some((cand, eps));
                break;
            }
        }
        let (cand, eps) = found.ok_or_else(|| Error::DegenerateLift("no simplicial refinement found".into()))?;
        perturbation = Some(eps);
        cand
    } else {
        cells
    };
    let s = FanSubdivision {
        parent: parent.clone(),
        max_cones: cells,
        provenance: Provenance::Heights { heights: heights.to_vec(), perturbation },
    };
    s.validate()?;
    Ok(s)
}

/// Regular subdivision from pseudo-random heights in `0..10`, drawn from `seed`.
/// Later seeds are tried when a draw leaves the cone undivided; cones with no
/// proper regular subdivision come back trivial.
pub fn random_regular_subdivision(parent: &GradedCone, seed: u64) -> Result<FanSubdivision> {
    let n = parent.lattice_points_at_degree(1, false).len();
    let mut last = None;
    for attempt in 0..8 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let heights: Vec<i64> = (0..n).map(|_| rng.gen_range(0..10)).collect();
        let s = regular_subdivision_with(parent, &heights, true)?;
        if !s.is_trivial() {
            return Ok(s);
        }
        last = Some(s);
    }
    Ok(last.expect("at least one attempt"))
}

fn lower_hull_cells(parent: &GradedCone, points: &[Vec<i64>], heights: &[i64]) -> Result<Vec<GradedCone>> {
    let r = parent.ambient_rank();
    let mut lifted: Vec<Vec<i64>> = points
        .iter()
        .zip(heights)
        .map(|(p, h)| {
            let mut v = p.clone();
            v.push(*h);
            v
        })
        .collect();
    let mut up = vec![0; r + 1];
    up[r] = 1;
    lifted.push(up);
    let hull = cone_hull(&lifted, r + 1);
    let mut cells = Vec::new();
    for (f, tight) in hull.facets.iter().zip(&hull.tight) {
        if f[r] <= 0 {
            continue;
        }
        let pts: Vec<Vec<i64>> = tight.ones().filter(|&i| i < points.len()).map(|i| points[i].clone()).collect();
        let cell = GradedCone::new(r, &pts)?;
        if cell.dim() != parent.dim() {
            return Err(Error::DegenerateLift(format!("lower cell of dimension {}", cell.dim())));
        }
        cells.push(cell);
    }
    cells.sort_by(|a, b| a.generators().cmp(b.generators()));
    cells.dedup();
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_cone() -> GradedCone {
        GradedCone::new(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]).unwrap()
    }

    #[test]
    fn zero_heights_are_trivial() {
        let c = square_cone();
        let s = regular_subdivision(&c, &[0, 0, 0, 0]).unwrap();
        assert_eq!(s.max_cones().len(), 1);
        assert_eq!(s.max_cones()[0], c);
    }

    #[test]
    fn one_raised_corner_splits_the_square() {
        let c = square_cone();
        // degree-one points in canonical order: (0,0),(0,1),(1,0),(1,1)
        let s = regular_subdivision(&c, &[0, 0, 0, 1]).unwrap();
        assert_eq!(s.max_cones().len(), 2);
        assert!(s.max_cones().iter().all(|m| m.is_simplicial()));
    }

    #[test]
    fn refinement_triangulates() {
        let c = square_cone();
        let s = regular_subdivision_with(&c, &[0, 0, 0, 0], true).unwrap();
        assert_eq!(s.max_cones().len(), 2);
        assert!(matches!(s.provenance(), Provenance::Heights { perturbation: Some(_), .. }));
    }

    #[test]
    fn random_heights_divide_the_square() {
        let s = random_regular_subdivision(&square_cone(), 3).unwrap();
        assert_eq!(s.max_cones().len(), 2);
    }

    #[test]
    fn overlapping_cells_are_rejected() {
        let c = square_cone();
        let a = GradedCone::new(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![1, 1, 1]]).unwrap();
        let b = GradedCone::new(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert!(matches!(FanSubdivision::explicit(&c, vec![a, b]), Err(Error::InvalidSubdivision(_))));
    }

    #[test]
    fn p2_fan_is_complete() {
        let f = Fan::new(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]], &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(f.cones().len(), 7);
        f.check_complete().unwrap();
        let half = Fan::new(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]], &[vec![0, 1], vec![1, 2]]).unwrap();
        assert!(matches!(half.check_complete(), Err(Error::NotComplete(_))));
    }
}
