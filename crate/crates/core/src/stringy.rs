//! S and tilde-S polynomials of Gorenstein cones, stringy E-functions of
//! Calabi-Yau hypersurfaces and complete toric varieties, Hodge tables and
//! box points.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Fan, FaceLattice, FanSubdivision, GradedCone, ReflexivePair};
use crate::linalg::dot;
use crate::poly::{LaurentPoly, Monomial, UniPoly};
use crate::poset::Interval;

type Uni = UniPoly<BigInt>;
type Laurent = LaurentPoly<BigInt>;

fn sign(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `trunc_{<= n}[(1 - t)^n * sum_k counts[k] t^k]`.
fn series_times_power(counts: &[u64], n: usize) -> Uni {
    let series = Uni::from_coeffs(&counts.iter().take(n + 1).map(|&c| BigInt::from(c)).collect::<Vec<_>>());
    (&Uni::one_minus_t().pow(n) * &series).truncate_above(n)
}

/// S-polynomial from a direct count of lattice points of degree at most `dim C`.
pub fn s_polynomial(c: &GradedCone) -> Result<Uni> {
    let n = c.dim();
    let counts: Vec<u64> = (0..=n).map(|k| c.lattice_points_at_degree(k, false).len() as u64).collect();
    Ok(series_times_power(&counts, n))
}

/// S-polynomial reversed, `t^{dim C} S(C, 1/t)`, computed from interior points.
pub fn s_polynomial_interior(c: &GradedCone) -> Result<Uni> {
    let n = c.dim();
    let counts: Vec<u64> = (0..=n).map(|k| c.lattice_points_at_degree(k, true).len() as u64).collect();
    Ok(series_times_power(&counts, n))
}

/// Tilde-S polynomial of a Gorenstein cone.
pub fn tilde_s_polynomial(c: &GradedCone) -> Result<Uni> {
    let inv = ConeInvariants::new(c)?;
    Ok(inv.tilde_s(inv.faces().top()).clone())
}

/// Tilde-S polynomial of a simplicial cone as a plain alternating face sum.
pub fn tilde_s_simplicial(c: &GradedCone) -> Result<Uni> {
    if !c.is_simplicial() {
        return Err(Error::NotSimplicial { generators: c.generators().len(), dim: c.dim() });
    }
    let inv = ConeInvariants::new(c)?;
    inv.tilde_s_simplicial(inv.faces().top())
}

/// Face lattice of a cone together with lattice-point counts attributed to
/// the relative interior of each face, and the S and tilde-S polynomials of
/// every face.
#[derive(Debug, Clone)]
pub struct ConeInvariants {
    cone: GradedCone,
    faces: FaceLattice,
    /// `interior[f][k]` counts points of degree `k <= dim C` in the relative interior of face `f`.
    interior: Vec<Vec<u64>>,
    s: Vec<Uni>,
    tilde_s: Vec<Uni>,
}

impl ConeInvariants {
    pub fn new(cone: &GradedCone) -> Result<Self> {
        let faces = cone.face_lattice()?;
        Ok(Self::with_faces(cone, faces))
    }

    /// Reuses an already computed face lattice of `cone`.
    pub fn with_faces(cone: &GradedCone, faces: FaceLattice) -> Self {
        let n = cone.dim();
        let by_facets: HashMap<FixedBitSet, usize> =
            faces.faces().iter().enumerate().map(|(i, f)| (f.facets.clone(), i)).collect();
        let mut interior = vec![vec![0u64; n + 1]; faces.len()];
        for k in 0..=n {
            for p in cone.lattice_points_at_degree(k, false) {
                let f = by_facets[&cone.tight_facets(&p)];
                interior[f][k] += 1;
            }
        }
        let s: Vec<Uni> = (0..faces.len())
            .map(|f| {
                let dim = faces.faces()[f].dim;
                let mut closed = vec![0u64; n + 1];
                for g in 0..faces.len() {
                    if faces.le(g, f) {
                        for (c, x) in closed.iter_mut().zip(&interior[g]) {
                            *c += x;
                        }
                    }
                }
                series_times_power(&closed, dim)
            })
            .collect();
        let poset = faces.poset();
        let tilde_s: Vec<Uni> = (0..faces.len())
            .map(|f| {
                let dim = faces.faces()[f].dim;
                let mut acc = Uni::zero();
                for g in 0..faces.len() {
                    if faces.le(g, f) {
                        let w = poset.g_of(Interval::new(g, f));
                        acc += &(&s[g] * &w).scale(&sign(dim - faces.faces()[g].dim));
                    }
                }
                acc
            })
            .collect();
        ConeInvariants { cone: cone.clone(), faces, interior, s, tilde_s }
    }

    pub fn cone(&self) -> &GradedCone {
        &self.cone
    }

    pub fn faces(&self) -> &FaceLattice {
        &self.faces
    }

    pub fn dim_of(&self, f: usize) -> usize {
        self.faces.faces()[f].dim
    }

    /// The face `f` as a cone in its own right.
    pub fn face_cone(&self, f: usize) -> GradedCone {
        self.cone.subcone(&self.faces.faces()[f].generators)
    }

    pub fn s(&self, f: usize) -> &Uni {
        &self.s[f]
    }

    pub fn tilde_s(&self, f: usize) -> &Uni {
        &self.tilde_s[f]
    }

    /// `t^{dim F} S(F, 1/t)` computed from the interior point counts of `F`.
    pub fn s_interior_form(&self, f: usize) -> Uni {
        series_times_power(&self.interior[f], self.dim_of(f))
    }

    /// Alternating face sum without G-polynomial weights; requires `f` simplicial.
    pub fn tilde_s_simplicial(&self, f: usize) -> Result<Uni> {
        let face = &self.faces.faces()[f];
        if face.generators.count_ones(..) != face.dim {
            return Err(Error::NotSimplicial { generators: face.generators.count_ones(..), dim: face.dim });
        }
        let mut acc = Uni::zero();
        for g in 0..self.faces.len() {
            if self.faces.le(g, f) {
                acc += &self.s[g].scale(&sign(face.dim - self.dim_of(g)));
            }
        }
        Ok(acc)
    }

    /// `sum_{G <= F} tilde S(G) G([G, F]^*)`, which must reproduce `S(F)`.
    pub fn s_from_tilde(&self, f: usize) -> Uni {
        let poset = self.faces.poset();
        let mut acc = Uni::zero();
        for g in 0..self.faces.len() {
            if self.faces.le(g, f) {
                acc += &(&self.tilde_s[g] * &poset.g_of(Interval::new(g, f).flipped()));
            }
        }
        acc
    }
}

/// Lattice points `sum a_i g_i` with every `a_i` in `(0, 1)`, grouped by `l = sum a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxPointTable {
    pub cone: GradedCone,
    pub by_shift: BTreeMap<usize, Vec<Vec<i64>>>,
}

impl BoxPointTable {
    pub fn count(&self, l: usize) -> usize {
        self.by_shift.get(&l).map_or(0, Vec::len)
    }
}

/// Box points of a simplicial cone. The zero cone has the single point `0` at shift 0.
pub fn box_points(c: &GradedCone) -> Result<BoxPointTable> {
    if !c.is_simplicial() {
        return Err(Error::NotSimplicial { generators: c.generators().len(), dim: c.dim() });
    }
    let mut by_shift = BTreeMap::new();
    if c.dim() == 0 {
        by_shift.insert(0, vec![vec![0; c.ambient_rank()]]);
        return Ok(BoxPointTable { cone: c.clone(), by_shift });
    }
    // in a simplicial cone each facet misses exactly one generator; the
    // coordinate along that generator is the facet value rescaled
    let bounds: Vec<(&Vec<i64>, i64)> = c
        .facets()
        .iter()
        .filter_map(|f| c.generators().iter().map(|g| dot(f, g)).find(|&v| v > 0).map(|v| (f, v)))
        .collect();
    for l in 1..c.dim() {
        let pts: Vec<Vec<i64>> = c
            .lattice_points_at_degree(l, true)
            .into_iter()
            .filter(|p| bounds.iter().all(|(f, v)| dot(f, p) < *v))
            .collect();
        if !pts.is_empty() {
            by_shift.insert(l, pts);
        }
    }
    Ok(BoxPointTable { cone: c.clone(), by_shift })
}

/// S and tilde-S data for both cones of a reflexive pair, with aligned face indices.
#[derive(Debug, Clone)]
pub struct PairInvariants {
    pub pair: ReflexivePair,
    pub k: ConeInvariants,
    pub k_star: ConeInvariants,
}

impl PairInvariants {
    pub fn new(pair: &ReflexivePair) -> Self {
        PairInvariants {
            pair: pair.clone(),
            k: ConeInvariants::with_faces(&pair.k, pair.faces.clone()),
            k_star: ConeInvariants::with_faces(&pair.k_star, pair.faces_star.clone()),
        }
    }

    /// The same data with the roles of the two cones exchanged.
    pub fn mirror(&self) -> PairInvariants {
        PairInvariants { pair: self.pair.mirror(), k: self.k_star.clone(), k_star: self.k.clone() }
    }
}

/// Divides by `uv`, failing if some term is not divisible.
fn divide_by_uv(p: Laurent, what: &str) -> Result<Laurent> {
    if let Some(((a, b), _)) = p.terms().find(|((a, b), _)| *a < 1 || *b < 1) {
        return Err(Error::DivisionNotExact(format!("{what}: term u^{a} v^{b} is not divisible by uv")));
    }
    Ok(p.shift(-1, -1))
}

/// Stringy E-function of the Calabi-Yau hypersurface from tilde-S polynomials.
pub fn e_st_hypersurface(inv: &PairInvariants) -> Result<Laurent> {
    let mut num = Laurent::zero();
    for c in 0..inv.k.faces().len() {
        let cs = inv.pair.dual_face(c);
        let dim = inv.k.dim_of(c);
        let left = inv.k.tilde_s(c).substitute(&Monomial::v_over_u());
        let right = inv.k_star.tilde_s(cs).substitute(&Monomial::uv());
        num += &(&left * &right).shift(dim as i64, 0).scale(&sign(dim));
    }
    divide_by_uv(num, "tilde-S face sum")
}

/// Stringy E-function from the sum over orthogonal point pairs, grouped by
/// pairs of faces and summed in closed form through S-polynomials and the
/// B-polynomials of dual face intervals.
pub fn e_st_oracle(inv: &PairInvariants) -> Result<Laurent> {
    let faces = inv.k.faces();
    let poset = faces.poset();
    let mut num = Laurent::zero();
    for d in 0..faces.len() {
        let ds = inv.pair.dual_face(d);
        let dim_d = inv.k.dim_of(d);
        let right = inv.k_star.s(ds).substitute(&Monomial::uv());
        for c in 0..faces.len() {
            if !faces.le(c, d) {
                continue;
            }
            let b = poset.b_of(Interval::new(c, d).flipped());
            let left = inv.k.s(c).substitute(&Monomial::v_over_u());
            let term = &(&b * &left) * &right;
            num += &term.shift(inv.k.dim_of(c) as i64, 0).scale(&sign(dim_d));
        }
    }
    divide_by_uv(num, "orthogonal pair sum")
}

type Key = (Ratio<i64>, Ratio<i64>);

/// Hodge numbers `h^{p,q}` indexed by exact rational pairs; zero entries are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HodgeTable {
    entries: BTreeMap<Key, BigInt>,
    dimension: i64,
}

impl HodgeTable {
    pub fn new(dimension: i64) -> Self {
        HodgeTable { entries: BTreeMap::new(), dimension }
    }

    pub fn dimension(&self) -> i64 {
        self.dimension
    }

    pub fn entries(&self) -> &BTreeMap<Key, BigInt> {
        &self.entries
    }

    pub fn get(&self, p: Ratio<i64>, q: Ratio<i64>) -> BigInt {
        self.entries.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// `h^{p,q}` at integral indices.
    pub fn h(&self, p: i64, q: i64) -> BigInt {
        self.get(Ratio::from_integer(p), Ratio::from_integer(q))
    }

    pub fn add(&mut self, p: Ratio<i64>, q: Ratio<i64>, value: &BigInt) {
        let e = self.entries.entry((p, q)).or_default();
        *e += value;
        if e.is_zero() {
            self.entries.remove(&(p, q));
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|((p, q), v)| self.get(*q, *p) == *v)
    }

    /// First negative entry, if any.
    pub fn first_negative(&self) -> Option<(Key, BigInt)> {
        self.entries.iter().find(|(_, v)| v.is_negative()).map(|(k, v)| (*k, v.clone()))
    }

    /// `h^{p,q}` moved to `(dim - p, q)`, the expected table of the mirror.
    pub fn mirror(&self) -> HodgeTable {
        let d = Ratio::from_integer(self.dimension);
        HodgeTable { entries: self.entries.iter().map(|((p, q), v)| ((d - p, *q), v.clone())).collect(), dimension: self.dimension }
    }

    /// `sum (-1)^{p+q} h^{p,q} u^p v^q`; `None` if some index is not integral.
    pub fn to_polynomial(&self) -> Option<Laurent> {
        let mut out = Laurent::zero();
        for ((p, q), v) in &self.entries {
            if !p.is_integer() || !q.is_integer() {
                return None;
            }
            let (p, q) = (p.to_integer(), q.to_integer());
            out.add_term(p, q, v * sign((p + q).rem_euclid(2) as usize));
        }
        Some(out)
    }
}

impl fmt::Display for HodgeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((p, q), v) in &self.entries {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "h^{{{p},{q}}} = {v}")?;
        }
        Ok(())
    }
}

/// Hodge numbers `h^{p,q} = (-1)^{p+q} a_{p,q}` read off from an E-polynomial.
pub fn stringy_hodge_table(e: &Laurent, dimension: i64) -> Result<HodgeTable> {
    if !e.is_polynomial() {
        return Err(Error::ParseError("E-polynomial has negative exponents".into()));
    }
    let mut t = HodgeTable::new(dimension);
    for ((p, q), c) in e.terms() {
        let h = c * sign((p + q) as usize);
        if h.is_negative() {
            return Err(Error::NegativeHodgeNumber { p, q, value: h.to_string() });
        }
        t.add(Ratio::from_integer(p), Ratio::from_integer(q), &h);
    }
    Ok(t)
}

fn fan_cone_faces(fan: &Fan, idx: usize) -> Result<FaceLattice> {
    fan.cones()[idx].cone.face_lattice()
}

/// Face index of fan cone `small` inside the face lattice of fan cone `big`.
fn face_in(fan: &Fan, big: usize, small: usize, lattice: &FaceLattice) -> usize {
    let big_cone = &fan.cones()[big].cone;
    let mut gens = FixedBitSet::with_capacity(big_cone.generators().len());
    for &r in &fan.cones()[small].rays {
        let v = crate::linalg::primitive_i64(&fan.rays()[r]);
        let j = big_cone.generators().iter().position(|g| *g == v).expect("ray of a face is a generator");
        gens.insert(j);
    }
    lattice.index_of(&gens).expect("subcone of a fan cone is a face")
}

fn uv_minus_one_pow(k: usize) -> Laurent {
    let mut base = Laurent::monomial(BigInt::one(), 1, 1);
    base.add_term(0, 0, -BigInt::one());
    base.pow(k)
}

/// Stringy E-function of a complete toric variety given by a fan of Gorenstein cones.
pub fn e_st_toric(fan: &Fan) -> Result<Laurent> {
    fan.check_complete()?;
    let d = fan.rank();
    let mut acc = Laurent::zero();
    for c in fan.cones() {
        let s = s_polynomial(&c.cone)?.substitute(&Monomial::uv());
        acc += &(&uv_minus_one_pow(d - c.cone.dim()) * &s);
    }
    Ok(acc)
}

/// Intersection-cohomology E-polynomial of the orbit closure of the cone with the given rays.
pub fn e_int_orbit_closure(fan: &Fan, rays: &[usize]) -> Result<Laurent> {
    let i = fan.find(rays).ok_or_else(|| Error::ConeNotInFan(format!("{rays:?}")))?;
    e_int_by_index(fan, i)
}

fn e_int_by_index(fan: &Fan, i: usize) -> Result<Laurent> {
    let d = fan.rank();
    let mut acc = Laurent::zero();
    for j in 0..fan.cones().len() {
        if !fan.contains_cone(j, i) {
            continue;
        }
        let lattice = fan_cone_faces(fan, j)?;
        let lo = face_in(fan, j, i, &lattice);
        let g = lattice.poset().g_of(Interval::new(lo, lattice.top()).flipped());
        acc += &(&uv_minus_one_pow(d - fan.cones()[j].cone.dim()) * &g.substitute(&Monomial::uv()));
    }
    Ok(acc)
}

/// Toric string-cohomology table: `h^{p,p} = sum_sigma sum_k [E_int(sigma)]_{p-k} tilde S(sigma)_k`.
pub fn toric_string_table(fan: &Fan) -> Result<HodgeTable> {
    fan.check_complete()?;
    let mut t = HodgeTable::new(fan.rank() as i64);
    for (i, c) in fan.cones().iter().enumerate() {
        let e = e_int_by_index(fan, i)?;
        let ts = tilde_s_polynomial(&c.cone)?;
        for ((a, b), x) in e.terms() {
            debug_assert_eq!(a, b);
            for (k, y) in ts.terms() {
                let p = Ratio::from_integer(a + k as i64);
                t.add(p, p, &(x * y));
            }
        }
    }
    if let Some(((p, q), v)) = t.first_negative() {
        return Err(Error::NegativeHodgeNumber { p: p.to_integer(), q: q.to_integer(), value: v.to_string() });
    }
    Ok(t)
}

/// Dimension table of string cohomology assembled from tilde-S coefficients
/// of dual face pairs. `sigma` must subdivide `K*`; the table does not depend on it.
pub fn string_cohomology_table(inv: &PairInvariants, sigma: &FanSubdivision) -> Result<HodgeTable> {
    if sigma.parent() != &inv.pair.k_star {
        return Err(Error::InvalidSubdivision("subdivision is not of the dual cone".into()));
    }
    sigma.validate()?;
    let k: Vec<Uni> = (0..inv.k.faces().len()).map(|c| inv.k.tilde_s(c).clone()).collect();
    let ks: Vec<Uni> = (0..inv.k_star.faces().len()).map(|c| inv.k_star.tilde_s(c).clone()).collect();
    Ok(table_from_face_polynomials(inv, &k, &ks))
}

/// Assembles the string cohomology table from one polynomial per face of `K`
/// and one per face of `K*`, indexed like the face lattices of `inv`.
pub fn table_from_face_polynomials(inv: &PairInvariants, k: &[Uni], k_star: &[Uni]) -> HodgeTable {
    let d = inv.pair.rank() as i64;
    let mut t = HodgeTable::new(d - 1);
    for (c, kc) in k.iter().enumerate() {
        let cs = inv.pair.dual_face(c);
        let dim_c = inv.k.dim_of(c) as i64;
        let dim_cs = inv.k_star.dim_of(cs) as i64;
        for (i, x) in k_star[cs].terms() {
            for (j, y) in kc.terms() {
                let (i, j) = (i as i64, j as i64);
                let sum = 2 * i + d - dim_cs - 1;
                let diff = 2 * j - dim_c;
                t.add(Ratio::new(sum - diff, 2), Ratio::new(sum + diff, 2), &(x * y));
            }
        }
    }
    t
}
