//! Graded quotients of plain and deformed semigroup rings of Gorenstein cones
//! by the logarithmic derivatives of a degree-one element.
//!
//! Every graded piece is spanned by the lattice points of that degree in
//! canonical order; multiplication maps are assembled on demand and ranked
//! by incremental elimination over a [`Field`].

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{FanSubdivision, GradedCone, Provenance};
use crate::exact::rational_rank;
use crate::linalg::{rref, to_q, Echelon};
use crate::poly::UniPoly;
use crate::scalar::{Field, FieldKind, Fp, MERSENNE_31, MIN_CHARACTERISTIC, PRIME_B, PRIME_C};
use crate::stringy::{s_polynomial, table_from_face_polynomials, HodgeTable, PairInvariants};

/// Number of reseeds before a genericity failure is reported.
pub const MAX_ATTEMPTS: usize = 5;

/// Random coefficients are drawn from `1..=COEFFICIENT_BOUND`.
pub const COEFFICIENT_BOUND: i64 = 1_000_000;

/// `g = sum g(m) [m]` over the degree-one lattice points of a cone.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeOneElement<F: Field> {
    cone: GradedCone,
    points: Vec<Vec<i64>>,
    coefficients: Vec<F>,
    seed: Option<u64>,
}

impl<F: Field> DegreeOneElement<F> {
    pub fn zero(cone: &GradedCone) -> Self {
        let points = cone.lattice_points_at_degree(1, false);
        let coefficients = vec![F::zero(); points.len()];
        DegreeOneElement { cone: cone.clone(), points, coefficients, seed: None }
    }

    /// Coefficients drawn uniformly from `1..=COEFFICIENT_BOUND` by a seeded generator.
    pub fn random(cone: &GradedCone, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Self::zero(cone);
        for c in g.coefficients.iter_mut() {
            *c = F::from_i64(rng.gen_range(1..=COEFFICIENT_BOUND)).expect("small integers embed");
        }
        g.seed = Some(seed);
        g
    }

    /// Coefficients aligned with the canonical order of degree-one points.
    pub fn from_coefficients(cone: &GradedCone, coefficients: Vec<F>) -> Result<Self> {
        let mut g = Self::zero(cone);
        if coefficients.len() != g.points.len() {
            return Err(Error::ParseError(format!(
                "{} coefficients given for {} degree-one points",
                coefficients.len(),
                g.points.len()
            )));
        }
        g.coefficients = coefficients;
        Ok(g)
    }

    /// Replaces the coefficient of a degree-one point.
    pub fn with_coefficient(mut self, point: &[i64], value: F) -> Result<Self> {
        let i = self.points.iter().position(|p| p == point).ok_or_else(|| Error::PointOutsideCone(point.to_vec()))?;
        self.coefficients[i] = value;
        Ok(self)
    }

    pub fn cone(&self) -> &GradedCone {
        &self.cone
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn coefficients(&self) -> &[F] {
        &self.coefficients
    }

    pub fn coefficient(&self, point: &[i64]) -> F {
        self.points.iter().position(|p| p == point).map_or_else(F::zero, |i| self.coefficients[i].clone())
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn field(&self) -> String {
        F::descriptor()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }

    /// The restriction to a subcone (a face or a cell of a subdivision).
    pub fn restrict(&self, sub: &GradedCone) -> Self {
        let mut g = Self::zero(sub);
        for (p, c) in g.points.iter().zip(g.coefficients.iter_mut()) {
            *c = self.coefficient(p);
        }
        g.seed = self.seed;
        g
    }
}

/// Product `[m1][m2]` in the ring deformed by `sigma`: `m1 + m2` when both
/// points lie in a common cell, zero (`None`) otherwise.
pub fn deformed_product(sigma: &FanSubdivision, m1: &[i64], m2: &[i64]) -> Result<Option<Vec<i64>>> {
    for m in [m1, m2] {
        if !sigma.parent().contains(m) {
            return Err(Error::PointOutsideCone(m.to_vec()));
        }
    }
    let mut common = sigma.cells_containing(m1);
    common.intersect_with(&sigma.cells_containing(m2));
    Ok((common.count_ones(..) > 0).then(|| m1.iter().zip(m2).map(|(a, b)| a + b).collect()))
}

/// Coordinates whose unit functionals descend to a basis of `Hom(L, Z) / C^perp`.
pub fn derivative_functionals(cone: &GradedCone) -> Vec<usize> {
    if cone.dim() == 0 {
        return vec![];
    }
    let mut m = to_q(cone.generators());
    rref(&mut m)
}

/// `g_j = sum (m . n_j) g(m) [m]` for the functionals of [`derivative_functionals`],
/// as coefficient vectors over the degree-one points.
pub fn logarithmic_derivatives<F: Field>(g: &DegreeOneElement<F>) -> Vec<Vec<F>> {
    derivative_functionals(&g.cone)
        .into_iter()
        .map(|j| {
            g.points
                .iter()
                .zip(&g.coefficients)
                .map(|(m, c)| F::from_i64(m[j]).expect("small integers embed") * c.clone())
                .collect()
        })
        .collect()
}

/// Graded dimensions of `R0`, of its interior module, and of `R1`, for degrees `0..=dim + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedQuotientReport {
    pub dims_r0: Vec<usize>,
    pub dims_r0_interior: Vec<usize>,
    pub dims_r1: Vec<usize>,
    pub seed: Option<u64>,
    pub field: String,
    pub subdivision: Provenance,
}

fn as_poly(v: &[usize]) -> UniPoly<BigInt> {
    UniPoly::from_coeffs(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
}

impl GradedQuotientReport {
    pub fn r0_polynomial(&self) -> UniPoly<BigInt> {
        as_poly(&self.dims_r0)
    }

    pub fn r0_interior_polynomial(&self) -> UniPoly<BigInt> {
        as_poly(&self.dims_r0_interior)
    }

    pub fn r1_polynomial(&self) -> UniPoly<BigInt> {
        as_poly(&self.dims_r1)
    }

    /// Same dimensions regardless of seed, field and provenance.
    pub fn same_dims(&self, other: &Self) -> bool {
        self.dims_r0 == other.dims_r0 && self.dims_r0_interior == other.dims_r0_interior && self.dims_r1 == other.dims_r1
    }
}

/// Lattice points of one degree and the derivative images landing there.
struct PieceRows<F: Field> {
    points: Vec<Vec<i64>>,
    cells: Vec<FixedBitSet>,
    index: HashMap<Vec<i64>, usize>,
    interior: Vec<usize>,
    interior_index: HashMap<usize, usize>,
    /// `d [q]` for every derivative `d` and every point `q` one degree lower.
    image: Vec<Vec<(usize, F)>>,
    /// The rows of `image` coming from interior points, in interior coordinates.
    interior_image: Vec<Vec<(usize, F)>>,
}

fn piece_rows<F: Field>(g: &DegreeOneElement<F>, sigma: &FanSubdivision) -> Result<Vec<PieceRows<F>>> {
    if sigma.parent() != g.cone() {
        return Err(Error::InvalidSubdivision("subdivision is not of the element's cone".into()));
    }
    let cone = g.cone();
    let n = cone.dim();
    let derivs = logarithmic_derivatives(g);
    let support: Vec<usize> = (0..g.points.len()).filter(|&i| !g.coefficients[i].is_zero()).collect();
    let one_cells: Vec<FixedBitSet> = g.points.iter().map(|m| sigma.cells_containing(m)).collect();
    let mut pieces: Vec<PieceRows<F>> = Vec::with_capacity(n + 2);
    for k in 0..=n + 1 {
        let points = cone.lattice_points_at_degree(k, false);
        let cells: Vec<FixedBitSet> = points.iter().map(|q| sigma.cells_containing(q)).collect();
        let index: HashMap<Vec<i64>, usize> = points.iter().enumerate().map(|(i, q)| (q.clone(), i)).collect();
        let interior: Vec<usize> = (0..points.len()).filter(|&i| cone.contains_in_interior(&points[i])).collect();
        let interior_index: HashMap<usize, usize> = interior.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let mut image = Vec::new();
        let mut interior_image = Vec::new();
        if k > 0 {
            let prev = &pieces[k - 1];
            for (src, q) in prev.points.iter().enumerate() {
                let is_interior = prev.interior_index.contains_key(&src);
                // targets of [m][q] for m in the support, with their deformed products
                let targets: Vec<(usize, usize)> = support
                    .iter()
                    .filter(|&&m| !one_cells[m].is_disjoint(&prev.cells[src]))
                    .map(|&m| {
                        let t: Vec<i64> = g.points[m].iter().zip(q).map(|(a, b)| a + b).collect();
                        (m, index[&t])
                    })
                    .collect();
                for d in &derivs {
                    let entries: Vec<(usize, F)> = targets.iter().map(|&(m, t)| (t, d[m].clone())).collect();
                    if is_interior {
                        interior_image.push(entries.iter().map(|(t, x)| (interior_index[t], x.clone())).collect());
                    }
                    image.push(entries);
                }
            }
        }
        pieces.push(PieceRows { points, cells, index, interior, interior_index, image, interior_image });
    }
    Ok(pieces)
}

/// One graded piece of the deformed ring and of its interior module.
struct Piece<F: Field> {
    points: Vec<Vec<i64>>,
    cells: Vec<FixedBitSet>,
    index: HashMap<Vec<i64>, usize>,
    interior: Vec<usize>,
    interior_index: HashMap<usize, usize>,
    /// Image of the derivatives in `A_k`.
    image: Echelon<F>,
    /// Image of the derivatives in the interior part of `A_k`, in interior coordinates.
    interior_image: Echelon<F>,
    /// `image` plus the interior unit vectors.
    with_interior: Echelon<F>,
}

/// The quotients `R0`, `R0` of the interior, and `R1` up to degree `dim + 1`.
struct Quotient<F: Field> {
    sigma: FanSubdivision,
    pieces: Vec<Piece<F>>,
}

fn check_characteristic<F: Field>() -> Result<()> {
    let p = F::characteristic();
    if p != 0 && p < MIN_CHARACTERISTIC {
        return Err(Error::FieldCharacteristicTooSmall { p, min: MIN_CHARACTERISTIC });
    }
    Ok(())
}

fn echelon_of<F: Field>(rows: &[Vec<(usize, F)>], width: usize) -> Echelon<F> {
    let mut e = Echelon::new(width);
    for r in rows {
        if e.is_full() {
            break;
        }
        e.insert_sparse(r);
    }
    e
}

impl<F: Field> Quotient<F> {
    fn new(g: &DegreeOneElement<F>, sigma: &FanSubdivision) -> Result<Self> {
        check_characteristic::<F>()?;
        let pieces = piece_rows(g, sigma)?
            .into_iter()
            .map(|r| {
                let image = echelon_of(&r.image, r.points.len());
                let interior_image = echelon_of(&r.interior_image, r.interior.len());
                let mut with_interior = image.clone();
                for &i in &r.interior {
                    if with_interior.is_full() {
                        break;
                    }
                    with_interior.insert_sparse(&[(i, F::one())]);
                }
                Piece {
                    points: r.points,
                    cells: r.cells,
                    index: r.index,
                    interior: r.interior,
                    interior_index: r.interior_index,
                    image,
                    interior_image,
                    with_interior,
                }
            })
            .collect();
        Ok(Quotient { sigma: sigma.clone(), pieces })
    }

    fn dims_r0(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.points.len() - p.image.rank()).collect()
    }

    fn dims_r0_interior(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.interior.len() - p.interior_image.rank()).collect()
    }

    fn dims_r1(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.with_interior.rank() - p.image.rank()).collect()
    }

    fn dim(&self) -> usize {
        self.pieces.len() - 2
    }

    /// Monomials (indices into `points`) whose classes form a basis of `R0_k`.
    fn r0_basis(&self, k: usize) -> Vec<usize> {
        self.pieces[k].image.non_pivot_columns()
    }

    /// Interior monomials (indices into `points`) whose classes form a basis of the interior quotient.
    fn r0_interior_basis(&self, k: usize) -> Vec<usize> {
        let p = &self.pieces[k];
        p.interior_image.non_pivot_columns().into_iter().map(|a| p.interior[a]).collect()
    }

    /// Interior monomials whose images in `R0_k` form a basis of `R1_k`.
    fn r1_basis(&self, k: usize) -> Vec<usize> {
        let p = &self.pieces[k];
        let mut e = p.image.clone();
        p.interior.iter().copied().filter(|&i| e.insert_sparse(&[(i, F::one())])).collect()
    }

    /// The functional on the top interior piece vanishing on the derivative image.
    fn top_functional(&self, v: Vec<F>) -> F {
        let top = &self.pieces[self.dim()];
        let mut w = v;
        top.interior_image.reduce(&mut w);
        w.into_iter().find(|x| !x.is_zero()).unwrap_or_else(F::zero)
    }

    /// `phi([a][b])` for monomials of complementary degrees, `b` interior.
    fn pair(&self, ka: usize, a: usize, kb: usize, b: usize) -> F {
        let pa = &self.pieces[ka];
        let pb = &self.pieces[kb];
        let top = &self.pieces[self.dim()];
        let mut v = vec![F::zero(); top.interior.len()];
        if !pa.cells[a].is_disjoint(&pb.cells[b]) {
            let t: Vec<i64> = pa.points[a].iter().zip(&pb.points[b]).map(|(x, y)| x + y).collect();
            v[top.interior_index[&top.index[&t]]] = F::one();
        }
        self.top_functional(v)
    }
}

fn report<F: Field>(q: &Quotient<F>, g: &DegreeOneElement<F>) -> GradedQuotientReport {
    GradedQuotientReport {
        dims_r0: q.dims_r0(),
        dims_r0_interior: q.dims_r0_interior(),
        dims_r1: q.dims_r1(),
        seed: g.seed(),
        field: F::descriptor(),
        subdivision: q.sigma.provenance().clone(),
    }
}

/// Graded dimensions of `R0(g, C)`, `R0(g, C°)` and `R1(g, C)` in the ring deformed by `sigma`.
pub fn graded_quotient_dims<F: Field>(g: &DegreeOneElement<F>, sigma: &FanSubdivision) -> Result<GradedQuotientReport> {
    Ok(report(&Quotient::new(g, sigma)?, g))
}

/// Graded dimensions over the rationals, with every rank computed by
/// [`rational_rank`] rather than by elimination in rational arithmetic.
pub fn exact_quotient_dims(g: &DegreeOneElement<BigRational>, sigma: &FanSubdivision) -> Result<GradedQuotientReport> {
    let mut report = GradedQuotientReport {
        dims_r0: vec![],
        dims_r0_interior: vec![],
        dims_r1: vec![],
        seed: g.seed(),
        field: BigRational::descriptor(),
        subdivision: sigma.provenance().clone(),
    };
    for r in piece_rows(g, sigma)? {
        let w = r.points.len();
        let image = rational_rank(&r.image, w);
        let interior = rational_rank(&r.interior_image, r.interior.len());
        let mut with_units = r.image;
        with_units.extend(r.interior.iter().map(|&i| vec![(i, BigRational::one())]));
        let with_interior = rational_rank(&with_units, w);
        report.dims_r0.push(w - image);
        report.dims_r0_interior.push(r.interior.len() - interior);
        report.dims_r1.push(with_interior - image);
    }
    Ok(report)
}

/// Sigma-regularity over the rationals, through [`exact_quotient_dims`].
pub fn exact_is_sigma_regular(g: &DegreeOneElement<BigRational>, sigma: &FanSubdivision) -> Result<Regularity> {
    for (i, cell) in sigma.max_cones().iter().enumerate() {
        let restricted = g.restrict(cell);
        let dims = exact_quotient_dims(&restricted, &FanSubdivision::trivial(cell))?.dims_r0;
        if !finite_at_cutoff(&dims, cell)? {
            return Ok(Regularity { regular: false, witness: Some(i) });
        }
    }
    Ok(Regularity { regular: true, witness: None })
}

/// Outcome of a regularity test; `witness` is the first failing cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regularity {
    pub regular: bool,
    pub witness: Option<usize>,
}

/// Non-deformed quotient of a single cone is finite at the cutoff: zero in
/// degree `dim + 1` and of total dimension `S(C, 1)`.
fn finite_at_cutoff(dims_r0: &[usize], cone: &GradedCone) -> Result<bool> {
    let total: usize = dims_r0.iter().sum();
    let expected = s_polynomial(cone)?.value_at_one();
    Ok(dims_r0.last() == Some(&0) && BigInt::from(total) == expected)
}

/// Sigma-regularity, tested cell by cell on the restrictions of `g`.
pub fn is_sigma_regular<F: Field>(g: &DegreeOneElement<F>, sigma: &FanSubdivision) -> Result<Regularity> {
    for (i, cell) in sigma.max_cones().iter().enumerate() {
        let restricted = g.restrict(cell);
        let dims = Quotient::new(&restricted, &FanSubdivision::trivial(cell))?.dims_r0();
        if !finite_at_cutoff(&dims, cell)? {
            return Ok(Regularity { regular: false, witness: Some(i) });
        }
    }
    Ok(Regularity { regular: true, witness: None })
}

fn require_regular<F: Field>(g: &DegreeOneElement<F>, sigma: &FanSubdivision) -> Result<()> {
    let r = is_sigma_regular(g, sigma)?;
    match r.witness {
        Some(i) => Err(Error::NotRegular(format!("element is degenerate on cell {i}"))),
        None => Ok(()),
    }
}

/// The pairing `R0_k x R0(C°)_{dim-k} -> R0(C°)_dim` on monomial bases.
/// Empty for `k > dim`.
pub fn pairing_matrix<F: Field>(g: &DegreeOneElement<F>, sigma: &FanSubdivision, k: usize) -> Result<Vec<Vec<F>>> {
    require_regular(g, sigma)?;
    let n = g.cone().dim();
    if k > n {
        return Ok(vec![]);
    }
    let q = Quotient::new(g, sigma)?;
    let cols = q.r0_interior_basis(n - k);
    Ok(q.r0_basis(k).into_iter().map(|a| cols.iter().map(|&b| q.pair(k, a, n - k, b)).collect()).collect())
}

/// The induced pairing `R1_k x R1_{dim-k}`, lifting the second factor to the interior module.
pub fn r1_pairing_matrix<F: Field>(g: &DegreeOneElement<F>, sigma: &FanSubdivision, k: usize) -> Result<Vec<Vec<F>>> {
    require_regular(g, sigma)?;
    let n = g.cone().dim();
    if k > n {
        return Ok(vec![]);
    }
    let q = Quotient::new(g, sigma)?;
    let cols = q.r1_basis(n - k);
    Ok(q.r1_basis(k).into_iter().map(|a| cols.iter().map(|&b| q.pair(k, a, n - k, b)).collect()).collect())
}

/// Rank of a matrix given by rows.
pub fn matrix_rank<F: Field>(m: &[Vec<F>]) -> usize {
    let width = m.first().map_or(0, Vec::len);
    crate::linalg::rank(m, width)
}

fn check_field(field: FieldKind) -> Result<()> {
    if let FieldKind::Prime(p) = field {
        if p < MIN_CHARACTERISTIC {
            return Err(Error::FieldCharacteristicTooSmall { p, min: MIN_CHARACTERISTIC });
        }
        if !FieldKind::SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::UnsupportedField(format!("no backend for the prime {p}")));
        }
    }
    Ok(())
}

fn regular_report<F: Field>(cone: &GradedCone, sigma: &FanSubdivision, seed: u64) -> Result<Option<GradedQuotientReport>> {
    let g = DegreeOneElement::<F>::random(cone, seed);
    if !is_sigma_regular(&g, sigma)?.regular {
        return Ok(None);
    }
    graded_quotient_dims(&g, sigma).map(Some)
}

fn regular_report_in(field: FieldKind, cone: &GradedCone, sigma: &FanSubdivision, seed: u64) -> Result<Option<GradedQuotientReport>> {
    match field {
        FieldKind::Rational => {
            let g = DegreeOneElement::<BigRational>::random(cone, seed);
            if !exact_is_sigma_regular(&g, sigma)?.regular {
                return Ok(None);
            }
            exact_quotient_dims(&g, sigma).map(Some)
        }
        FieldKind::Prime(MERSENNE_31) => regular_report::<Fp<MERSENNE_31>>(cone, sigma, seed),
        FieldKind::Prime(PRIME_B) => regular_report::<Fp<PRIME_B>>(cone, sigma, seed),
        FieldKind::Prime(PRIME_C) => regular_report::<Fp<PRIME_C>>(cone, sigma, seed),
        FieldKind::Prime(p) => Err(Error::UnsupportedField(format!("no backend for the prime {p}"))),
    }
}

/// Report for a random Sigma-regular element over `field`, reseeding (and
/// rotating through the supported primes) up to [`MAX_ATTEMPTS`] times.
pub fn generic_quotient_dims(cone: &GradedCone, sigma: &FanSubdivision, seed: u64, field: FieldKind) -> Result<GradedQuotientReport> {
    check_field(field)?;
    let start = match field {
        FieldKind::Prime(p) => FieldKind::SUPPORTED_PRIMES.iter().position(|&q| q == p).unwrap_or(0),
        FieldKind::Rational => 0,
    };
    for attempt in 0..MAX_ATTEMPTS {
        let f = match field {
            FieldKind::Rational => FieldKind::Rational,
            FieldKind::Prime(_) => FieldKind::Prime(FieldKind::SUPPORTED_PRIMES[(start + attempt) % 3]),
        };
        if let Some(r) = regular_report_in(f, cone, sigma, seed.wrapping_add(attempt as u64))? {
            return Ok(r);
        }
    }
    Err(Error::NotGenericAfterRetries { attempts: MAX_ATTEMPTS })
}

/// Prime-field report certified against the rational backend on the same
/// seed; a disagreement is treated as an unlucky prime and the next prime is tried.
pub fn certified_quotient_dims(cone: &GradedCone, sigma: &FanSubdivision, seed: u64) -> Result<(GradedQuotientReport, GradedQuotientReport)> {
    let exact = regular_report_in(FieldKind::Rational, cone, sigma, seed)?
        .ok_or(Error::NotGenericAfterRetries { attempts: 1 })?;
    for &p in &FieldKind::SUPPORTED_PRIMES {
        if let Some(r) = regular_report_in(FieldKind::Prime(p), cone, sigma, seed)? {
            if r.same_dims(&exact) {
                return Ok((r, exact));
            }
        }
    }
    Err(Error::NotGenericAfterRetries { attempts: FieldKind::SUPPORTED_PRIMES.len() })
}

/// The string cohomology table with every tilde-S polynomial replaced by the
/// Hilbert function of `R1` of the face: trivial subdivision on faces of `K`,
/// the restriction of `sigma` on faces of `K*`.
pub fn ring_string_cohomology_table(
    inv: &PairInvariants,
    sigma: &FanSubdivision,
    seed: u64,
    field: FieldKind,
) -> Result<HodgeTable> {
    if sigma.parent() != &inv.pair.k_star {
        return Err(Error::InvalidSubdivision("subdivision is not of the dual cone".into()));
    }
    let k = (0..inv.k.faces().len())
        .map(|c| {
            let face = inv.k.face_cone(c);
            Ok(generic_quotient_dims(&face, &FanSubdivision::trivial(&face), seed, field)?.r1_polynomial())
        })
        .collect::<Result<Vec<_>>>()?;
    let k_star = (0..inv.k_star.faces().len())
        .map(|c| {
            let face = inv.k_star.face_cone(c);
            Ok(generic_quotient_dims(&face, &sigma.restrict_to_face(&face), seed, field)?.r1_polynomial())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(table_from_face_polynomials(inv, &k, &k_star))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice::regular_subdivision;
    use num_traits::Zero;

    type F = Fp<MERSENNE_31>;

    #[test]
    fn ring_table_matches_diamond() {
        let p = fixtures::diamond();
        let inv = PairInvariants::new(&crate::lattice::ReflexivePair::new(&p).unwrap());
        let sigma = FanSubdivision::trivial(&inv.pair.k_star);
        let ring = ring_string_cohomology_table(&inv, &sigma, 3, FieldKind::Prime(MERSENNE_31)).unwrap();
        assert_eq!(ring, crate::stringy::string_cohomology_table(&inv, &sigma).unwrap());
    }

    #[test]
    fn exact_ranks_match_rational_elimination() {
        for (_, c) in fixtures::cones() {
            let sigma = crate::lattice::random_regular_subdivision(&c, 1).unwrap();
            for s in [FanSubdivision::trivial(&c), sigma] {
                let g = DegreeOneElement::<BigRational>::random(&c, 9);
                let fast = exact_quotient_dims(&g, &s).unwrap();
                let slow = graded_quotient_dims(&g, &s).unwrap();
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn a1_dims() {
        let c = fixtures::cone_a1();
        let g = DegreeOneElement::<F>::random(&c, 1);
        let r = graded_quotient_dims(&g, &FanSubdivision::trivial(&c)).unwrap();
        assert_eq!(r.dims_r0, vec![1, 1, 0, 0]);
        assert_eq!(r.dims_r0_interior, vec![0, 1, 1, 0]);
        assert_eq!(r.dims_r1, vec![0, 1, 0, 0]);
    }

    #[test]
    fn unit_square_with_split() {
        let c = fixtures::cone_unit_square();
        let split = regular_subdivision(&c, &[0, 0, 0, 1]).unwrap();
        for sigma in [FanSubdivision::trivial(&c), split] {
            let g = DegreeOneElement::<F>::random(&c, 7);
            assert!(is_sigma_regular(&g, &sigma).unwrap().regular);
            let r = graded_quotient_dims(&g, &sigma).unwrap();
            assert_eq!(r.dims_r0, vec![1, 1, 0, 0, 0]);
            assert_eq!(r.dims_r1, vec![0, 0, 0, 0, 0]);
        }
    }

    #[test]
    fn deformed_products() {
        let c = fixtures::cone_unit_square();
        let split = regular_subdivision(&c, &[0, 0, 0, 1]).unwrap();
        let triv = FanSubdivision::trivial(&c);
        assert_eq!(deformed_product(&triv, &[1, 0, 1], &[0, 1, 1]).unwrap(), Some(vec![1, 1, 2]));
        assert_eq!(deformed_product(&split, &[0, 0, 0], &[1, 1, 1]).unwrap(), Some(vec![1, 1, 1]));
        assert!(matches!(deformed_product(&triv, &[2, 0, 1], &[0, 0, 0]), Err(Error::PointOutsideCone(_))));
        // interior points of the two triangles multiply to zero
        let centre = |c: &GradedCone| -> Vec<i64> { (0..3).map(|j| c.generators().iter().map(|g| g[j]).sum()).collect() };
        let cells = split.max_cones();
        assert_eq!(deformed_product(&split, &centre(&cells[0]), &centre(&cells[1])).unwrap(), None);
    }

    #[test]
    fn missing_vertex_is_not_regular() {
        let c = fixtures::cone_a1();
        let g = DegreeOneElement::<F>::random(&c, 3).with_coefficient(&[0, 1], F::new(0)).unwrap();
        let r = is_sigma_regular(&g, &FanSubdivision::trivial(&c)).unwrap();
        assert_eq!(r, Regularity { regular: false, witness: Some(0) });
        assert!(matches!(pairing_matrix(&g, &FanSubdivision::trivial(&c), 0), Err(Error::NotRegular(_))));
    }

    #[test]
    fn pairing_examples() {
        let c = fixtures::cone_a1();
        let sigma = FanSubdivision::trivial(&c);
        let g = DegreeOneElement::<F>::random(&c, 2);
        let m = pairing_matrix(&g, &sigma, 0).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(matrix_rank(&m), 1);
        assert!(pairing_matrix(&g, &sigma, 3).unwrap().is_empty());
    }

    #[test]
    fn small_prime_is_rejected() {
        let c = fixtures::cone_a1();
        let err = generic_quotient_dims(&c, &FanSubdivision::trivial(&c), 0, FieldKind::Prime(65537)).unwrap_err();
        assert!(matches!(err, Error::FieldCharacteristicTooSmall { .. }));
        type Small = Fp<65537>;
        let g = DegreeOneElement::<Small>::random(&c, 0);
        assert!(matches!(graded_quotient_dims(&g, &FanSubdivision::trivial(&c)), Err(Error::FieldCharacteristicTooSmall { .. })));
    }

    #[test]
    fn derivatives_of_a1() {
        let c = fixtures::cone_a1();
        let g = DegreeOneElement::<F>::from_coefficients(&c, vec![F::new(1); 3]).unwrap();
        let d = logarithmic_derivatives(&g);
        assert_eq!(d, vec![vec![F::new(0), F::new(1), F::new(2)], vec![F::new(1), F::new(1), F::new(1)]]);
        assert!(logarithmic_derivatives(&DegreeOneElement::<F>::zero(&c)).iter().flatten().all(|x| x.is_zero()));
    }
}
