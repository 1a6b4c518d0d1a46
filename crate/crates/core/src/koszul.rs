//! The complex `V = Lambda^*(N) (x) span{[m] (x) [n] : m in K, n in K*, m.n = 0}`
//! with differential `D = sum f_m (contraction by m) (x) [m] + sum g_n (n wedge) (x) [n]`,
//! and its cohomology compared with the face decomposition through tilde-S
//! polynomials.
//!
//! A basis element `e_I (x) [m] (x) [n]` has exterior degree `e = |I|`,
//! `a = deg m`, `b = deg n`. The differential raises `T = a + b` by one and
//! preserves `Q = e + a - b`, so cohomology is graded by `(T, Q)`. Elements
//! with `a + b > cap` span a subcomplex; the truncated space is the quotient.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::lattice::{FanSubdivision, GradedCone, ReflexivePair};
use crate::linalg::{dot, Echelon};
use crate::scalar::Field;
use crate::semigroup::{is_sigma_regular, DegreeOneElement};
use crate::stringy::PairInvariants;

/// Cohomological degree `T = deg m + deg n` and weight `Q = e + deg m - deg n`.
pub type Grade = (usize, i64);

/// A basis element: exterior multi-index as a bit mask, and indices of `m` and `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairedMonomial {
    pub exterior: u32,
    pub m: usize,
    pub n: usize,
}

/// Graded basis of the truncated space.
#[derive(Debug, Clone)]
pub struct PairedMonomialSpace {
    pub rank: usize,
    pub cap: usize,
    pub m_points: Vec<Vec<i64>>,
    pub n_points: Vec<Vec<i64>>,
    pub m_degree: Vec<usize>,
    pub n_degree: Vec<usize>,
    pub by_grade: BTreeMap<Grade, Vec<PairedMonomial>>,
}

impl PairedMonomialSpace {
    pub fn new(pair: &ReflexivePair, cap: usize) -> Self {
        let rank = pair.k.ambient_rank();
        let collect = |c: &GradedCone| -> (Vec<Vec<i64>>, Vec<usize>) {
            let mut pts = Vec::new();
            let mut deg = Vec::new();
            for k in 0..=cap {
                for p in c.lattice_points_at_degree(k, false) {
                    pts.push(p);
                    deg.push(k);
                }
            }
            (pts, deg)
        };
        let (m_points, m_degree) = collect(&pair.k);
        let (n_points, n_degree) = collect(&pair.k_star);
        let mut by_grade: BTreeMap<Grade, Vec<PairedMonomial>> = BTreeMap::new();
        for (m, mp) in m_points.iter().enumerate() {
            for (n, np) in n_points.iter().enumerate() {
                let (a, b) = (m_degree[m], n_degree[n]);
                if a + b > cap || dot(mp, np) != 0 {
                    continue;
                }
                for exterior in 0..(1u32 << rank) {
                    let e = exterior.count_ones() as i64;
                    let grade = (a + b, e + a as i64 - b as i64);
                    by_grade.entry(grade).or_default().push(PairedMonomial { exterior, m, n });
                }
            }
        }
        PairedMonomialSpace { rank, cap, m_points, n_points, m_degree, n_degree, by_grade }
    }

    pub fn dim(&self) -> usize {
        self.by_grade.values().map(Vec::len).sum()
    }
}

/// The differential from one graded piece to the next, one row per source basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialBlock<F: Field> {
    pub source: Grade,
    pub target: Grade,
    pub matrix: Vec<Vec<F>>,
}

/// The truncated complex with all its differential blocks.
#[derive(Debug, Clone)]
pub struct KoszulComplex<F: Field> {
    pub space: PairedMonomialSpace,
    pub blocks: Vec<DifferentialBlock<F>>,
}

/// `(-1)^{#{j in I : j < i}}`.
fn wedge_sign(mask: u32, i: usize) -> bool {
    (mask & ((1u32 << i) - 1)).count_ones() % 2 == 1
}

/// Assembles every block of `D`. No regularity is required; with `sigma`
/// the products on the dual side are taken in the deformed ring.
pub fn build_complex<F: Field>(
    pair: &ReflexivePair,
    f: &DegreeOneElement<F>,
    g: &DegreeOneElement<F>,
    cap: Option<usize>,
    sigma: Option<&FanSubdivision>,
) -> Result<KoszulComplex<F>> {
    let dim = pair.k.dim();
    let cap = cap.unwrap_or(dim);
    if cap < dim {
        return Err(Error::CapTooSmall { cap, dim });
    }
    if f.cone() != &pair.k || g.cone() != &pair.k_star {
        return Err(Error::NotReflexivePair("elements must live on the two cones of the pair".into()));
    }
    if let Some(s) = sigma {
        if s.parent() != &pair.k_star {
            return Err(Error::InvalidSubdivision("subdivision is not of the dual cone".into()));
        }
    }
    let space = PairedMonomialSpace::new(pair, cap);
    let m_index: HashMap<&[i64], usize> = space.m_points.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let n_index: HashMap<&[i64], usize> = space.n_points.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let n_cells: Vec<FixedBitSet> = match sigma {
        Some(s) => space.n_points.iter().map(|p| s.cells_containing(p)).collect(),
        None => vec![],
    };
    let f_terms: Vec<(&Vec<i64>, F)> =
        f.points().iter().zip(f.coefficients()).filter(|(_, c)| !c.is_zero()).map(|(p, c)| (p, c.clone())).collect();
    let g_terms: Vec<(usize, F)> = g
        .points()
        .iter()
        .zip(g.coefficients())
        .filter(|(_, c)| !c.is_zero())
        .map(|(p, c)| (n_index[p.as_slice()], c.clone()))
        .collect();
    let add = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let int = |x: i64| F::from_i64(x).expect("small integers embed");

    let mut blocks = Vec::new();
    for (&source, elems) in &space.by_grade {
        let target = (source.0 + 1, source.1);
        let Some(targets) = space.by_grade.get(&target) else {
            continue;
        };
        let pos: HashMap<PairedMonomial, usize> = targets.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let mut matrix = Vec::with_capacity(elems.len());
        for el in elems {
            let mut row = vec![F::zero(); targets.len()];
            let mp = &space.m_points[el.m];
            let np = &space.n_points[el.n];
            // contraction by m, multiplied by [m] on the K side
            for (m, c) in &f_terms {
                let Some(&m1) = m_index.get(add(mp, m).as_slice()) else {
                    continue;
                };
                if dot(&space.m_points[m1], np) != 0 {
                    continue;
                }
                let mut sign = false;
                for i in 0..space.rank {
                    if el.exterior & (1 << i) != 0 {
                        if m[i] != 0 {
                            let key = PairedMonomial { exterior: el.exterior & !(1 << i), m: m1, n: el.n };
                            if let Some(&t) = pos.get(&key) {
                                let v = c.clone() * int(m[i]);
                                row[t] = if sign { row[t].clone() - v } else { row[t].clone() + v };
                            }
                        }
                        sign = !sign;
                    }
                }
            }
            // wedge with n, multiplied by [n] on the K* side
            for (n, c) in &g_terms {
                let nv = &space.n_points[*n];
                if sigma.is_some() && n_cells[el.n].is_disjoint(&n_cells[*n]) {
                    continue;
                }
                let Some(&n1) = n_index.get(add(np, nv).as_slice()) else {
                    continue;
                };
                if dot(mp, &space.n_points[n1]) != 0 {
                    continue;
                }
                for i in 0..space.rank {
                    if el.exterior & (1 << i) == 0 && nv[i] != 0 {
                        let key = PairedMonomial { exterior: el.exterior | (1 << i), m: el.m, n: n1 };
                        if let Some(&t) = pos.get(&key) {
                            let v = c.clone() * int(nv[i]);
                            row[t] = if wedge_sign(el.exterior, i) { row[t].clone() - v } else { row[t].clone() + v };
                        }
                    }
                }
            }
            matrix.push(row);
        }
        blocks.push(DifferentialBlock { source, target, matrix });
    }
    Ok(KoszulComplex { space, blocks })
}

fn block_rank<F: Field>(b: &DifferentialBlock<F>) -> usize {
    let width = b.matrix.first().map_or(0, Vec::len);
    let mut e = Echelon::new(width);
    for r in &b.matrix {
        if e.is_full() {
            break;
        }
        e.insert(r.clone());
    }
    e.rank()
}

impl<F: Field> KoszulComplex<F> {
    pub fn block(&self, source: Grade) -> Option<&DifferentialBlock<F>> {
        self.blocks.iter().find(|b| b.source == source)
    }

    /// Every composable pair of blocks multiplies to zero.
    pub fn d_squared_is_zero(&self) -> bool {
        self.blocks.iter().all(|b1| {
            let Some(b2) = self.block(b1.target) else {
                return true;
            };
            b1.matrix.iter().all(|row| {
                let mut acc = vec![F::zero(); b2.matrix.first().map_or(0, Vec::len)];
                for (x, r2) in row.iter().zip(&b2.matrix) {
                    if !x.is_zero() {
                        for (a, y) in acc.iter_mut().zip(r2) {
                            *a = a.clone() + x.clone() * y.clone();
                        }
                    }
                }
                acc.iter().all(|a| a.is_zero())
            })
        })
    }

    /// `dim ker - dim im` for every graded piece, including the truncation boundary.
    pub fn cohomology_dims(&self) -> BTreeMap<Grade, usize> {
        let ranks: HashMap<Grade, usize> = self.blocks.iter().map(|b| (b.source, block_rank(b))).collect();
        let mut out = BTreeMap::new();
        for (&grade, elems) in &self.space.by_grade {
            let out_rank = ranks.get(&grade).copied().unwrap_or(0);
            let in_rank = if grade.0 == 0 { 0 } else { ranks.get(&(grade.0 - 1, grade.1)).copied().unwrap_or(0) };
            let h = elems.len() - out_rank - in_rank;
            if h > 0 {
                out.insert(grade, h);
            }
        }
        out
    }
}

/// Cohomology dimensions of a complex (see [`KoszulComplex::cohomology_dims`]).
pub fn cohomology_dims<F: Field>(c: &KoszulComplex<F>) -> BTreeMap<Grade, usize> {
    c.cohomology_dims()
}

/// Dimensions predicted by the face decomposition: face `C` contributes
/// `tilde S(C)_i * tilde S(C*)_j` at exterior degree `dim C*`, `T = i + j`,
/// `Q = dim C* + i - j`. Returns the dimensions by grade and by exterior degree.
pub fn expected_dims(inv: &PairInvariants) -> (BTreeMap<Grade, usize>, BTreeMap<usize, usize>) {
    let mut by_grade: BTreeMap<Grade, usize> = BTreeMap::new();
    let mut by_exterior: BTreeMap<usize, usize> = BTreeMap::new();
    for c in 0..inv.k.faces().len() {
        let cs = inv.pair.dual_face(c);
        let e = inv.k_star.dim_of(cs);
        for (i, x) in inv.k.tilde_s(c).terms() {
            for (j, y) in inv.k_star.tilde_s(cs).terms() {
                let n = usize::try_from(x * y).expect("tilde-S coefficients are nonnegative");
                *by_grade.entry((i + j, e as i64 + i as i64 - j as i64)).or_default() += n;
                *by_exterior.entry(e).or_default() += n;
            }
        }
    }
    by_grade.retain(|_, v| *v > 0);
    by_exterior.retain(|_, v| *v > 0);
    (by_grade, by_exterior)
}

/// Computed against predicted cohomology; pieces at `T = cap` are listed
/// separately since truncation leaves their kernels unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulReport {
    pub cap: usize,
    pub computed: BTreeMap<Grade, usize>,
    pub expected: BTreeMap<Grade, usize>,
    pub expected_by_exterior: BTreeMap<usize, usize>,
    pub boundary: BTreeMap<Grade, usize>,
    pub d_squared_zero: bool,
    pub matches: bool,
}

impl KoszulReport {
    pub fn total(&self) -> usize {
        self.computed.values().sum()
    }
}

/// Builds the complex for regular `f` and `g` and compares its cohomology
/// below the cap with the face decomposition.
pub fn compare_with_decomposition<F: Field>(
    inv: &PairInvariants,
    f: &DegreeOneElement<F>,
    g: &DegreeOneElement<F>,
    cap: Option<usize>,
    sigma: Option<&FanSubdivision>,
) -> Result<KoszulReport> {
    let pair = &inv.pair;
    if !is_sigma_regular(f, &FanSubdivision::trivial(&pair.k))?.regular {
        return Err(Error::NotRegular("f is degenerate".into()));
    }
    let trivial = FanSubdivision::trivial(&pair.k_star);
    if !is_sigma_regular(g, sigma.unwrap_or(&trivial))?.regular {
        return Err(Error::NotRegular("g is degenerate".into()));
    }
    let complex = build_complex(pair, f, g, cap, sigma)?;
    let cap = complex.space.cap;
    let all = complex.cohomology_dims();
    let (computed, boundary): (BTreeMap<Grade, usize>, BTreeMap<Grade, usize>) =
        all.into_iter().partition(|((t, _), _)| *t < cap);
    let (expected, expected_by_exterior) = expected_dims(inv);
    let d_squared_zero = complex.d_squared_is_zero();
    let matches = d_squared_zero && computed == expected;
    Ok(KoszulReport { cap, computed, expected, expected_by_exterior, boundary, d_squared_zero, matches })
}
