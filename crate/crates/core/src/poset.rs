//! Graded and Eulerian posets with the G, H and B polynomial invariants.
//!
//! Intervals of a poset and their duals are addressed by [`Interval`]; the
//! recursions run directly on the parent poset and are memoized per interval.
//! Materialized copies ([`EulerianPoset::interval`], [`EulerianPoset::dual`])
//! exist for cross-checking and for callers that want standalone posets.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Mutex;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Monomial, UniPoly};

type Uni = UniPoly<BigInt>;
type Laurent = LaurentPoly<BigInt>;

/// A finite graded poset with a least and a greatest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoset {
    rank: Vec<usize>,
    covers: Vec<(usize, usize)>,
    /// `up[x]` is the principal filter of `x`.
    up: Vec<FixedBitSet>,
    bottom: usize,
    top: usize,
}

impl GradedPoset {
    /// Builds a poset from cover relations, deriving ranks from the least element.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut has_below = vec![false; n];
        for &(_, y) in covers {
            has_below[y] = true;
        }
        let mins: Vec<usize> = (0..n).filter(|&x| !has_below[x]).collect();
        if mins.len() != 1 {
            return Err(Error::NotGraded(format!("expected one minimal element, found {}", mins.len())));
        }
        let mut rank = vec![usize::MAX; n];
        rank[mins[0]] = 0;
        let mut queue = VecDeque::from([mins[0]]);
        while let Some(x) = queue.pop_front() {
            for &(a, b) in covers {
                if a == x && rank[b] == usize::MAX {
                    rank[b] = rank[x] + 1;
                    queue.push_back(b);
                }
            }
        }
        if rank.contains(&usize::MAX) {
            return Err(Error::NotGraded("some element is not above the minimum".into()));
        }
        Self::with_ranks(&rank, covers)
    }

    /// Builds a poset from explicit ranks; every cover must raise the rank by one.
    pub fn with_ranks(rank: &[usize], covers: &[(usize, usize)]) -> Result<Self> {
        let n = rank.len();
        for &(x, y) in covers {
            if x >= n || y >= n {
                return Err(Error::NotGraded(format!("cover ({x}, {y}) out of range")));
            }
            if rank[y] != rank[x] + 1 {
                return Err(Error::NotGraded(format!("maximal chains disagree at cover ({x}, {y})")));
            }
        }
        let mut has_below = vec![false; n];
        let mut has_above = vec![false; n];
        for &(x, y) in covers {
            has_above[x] = true;
            has_below[y] = true;
        }
        let mins: Vec<usize> = (0..n).filter(|&x| !has_below[x]).collect();
        let maxs: Vec<usize> = (0..n).filter(|&x| !has_above[x]).collect();
        if mins.len() != 1 || maxs.len() != 1 {
            return Err(Error::NotGraded("poset must have a unique minimum and maximum".into()));
        }
        if rank[mins[0]] != 0 {
            return Err(Error::NotGraded("the minimum must have rank 0".into()));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| std::cmp::Reverse(rank[x]));
        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|x| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(x);
                s
            })
            .collect();
        for &x in &order {
            for &(a, b) in covers {
                if a == x {
                    let above = up[b].clone();
                    up[x].union_with(&above);
                }
            }
        }
        Ok(GradedPoset { rank: rank.to_vec(), covers: covers.to_vec(), up, bottom: mins[0], top: maxs[0] })
    }

    /// The Boolean lattice of subsets of an `n`-element set.
    pub fn boolean(n: usize) -> Self {
        let size = 1usize << n;
        let rank: Vec<usize> = (0..size).map(|s| s.count_ones() as usize).collect();
        let mut covers = Vec::new();
        for s in 0..size {
            for i in 0..n {
                if s & (1 << i) == 0 {
                    covers.push((s, s | (1 << i)));
                }
            }
        }
        Self::with_ranks(&rank, &covers).expect("Boolean lattice is graded")
    }

    /// The chain `0 < 1 < ... < n`.
    pub fn chain(n: usize) -> Self {
        let rank: Vec<usize> = (0..=n).collect();
        let covers: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
        Self::with_ranks(&rank, &covers).expect("chains are graded")
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank_of(&self, x: usize) -> usize {
        self.rank[x]
    }

    /// Rank of the whole poset.
    pub fn rank(&self) -> usize {
        self.rank[self.top] - self.rank[self.bottom]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// Elements of `[x, y]`.
    pub fn between(&self, x: usize, y: usize) -> Vec<usize> {
        self.up[x].ones().filter(|&z| self.le(z, y)).collect()
    }

    /// The first interval of positive rank violating the Eulerian condition.
    fn first_unbalanced(&self) -> Option<(usize, usize)> {
        for x in 0..self.len() {
            for y in self.up[x].ones() {
                if x == y {
                    continue;
                }
                let s: i64 = self.between(x, y).iter().map(|&z| if self.rank[z] % 2 == 0 { 1 } else { -1 }).sum();
                if s != 0 {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Every interval of positive rank has as many even-rank as odd-rank elements.
    pub fn is_eulerian(&self) -> bool {
        self.first_unbalanced().is_none()
    }

    /// The subposet `[x, y]`, relabelled `0..`, together with the original labels.
    pub fn interval(&self, x: usize, y: usize) -> (GradedPoset, Vec<usize>) {
        let elems = self.between(x, y);
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let rank: Vec<usize> = elems.iter().map(|&e| self.rank[e] - self.rank[x]).collect();
        let covers: Vec<(usize, usize)> = self
            .covers
            .iter()
            .filter_map(|&(a, b)| Some((*pos.get(&a)?, *pos.get(&b)?)))
            .collect();
        (GradedPoset::with_ranks(&rank, &covers).expect("intervals of graded posets are graded"), elems)
    }

    /// The dual poset: same elements, order reversed, rank complemented.
    pub fn dual(&self) -> GradedPoset {
        let top = self.rank[self.top];
        let rank: Vec<usize> = self.rank.iter().map(|r| top - r).collect();
        let covers: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        GradedPoset::with_ranks(&rank, &covers).expect("duals of graded posets are graded")
    }
}

/// Is `p` Eulerian?
pub fn is_eulerian(p: &GradedPoset) -> bool {
    p.is_eulerian()
}

/// An interval `[lo, hi]` of a poset, or its dual when `dual` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
    pub dual: bool,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        Interval { lo, hi, dual: false }
    }

    pub fn flipped(self) -> Self {
        Interval { dual: !self.dual, ..self }
    }
}

/// A graded poset verified to be Eulerian, with memoized polynomial invariants.
pub struct EulerianPoset {
    poset: GradedPoset,
    g_memo: Mutex<HashMap<Interval, Uni>>,
    b_memo: Mutex<HashMap<Interval, Laurent>>,
}

impl Clone for EulerianPoset {
    fn clone(&self) -> Self {
        EulerianPoset::new_unchecked(self.poset.clone())
    }
}

impl fmt::Debug for EulerianPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EulerianPoset").field("poset", &self.poset).finish()
    }
}

impl PartialEq for EulerianPoset {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset
    }
}

fn t_minus_one_pow(k: usize) -> Uni {
    Uni::t_minus_one().pow(k)
}

impl EulerianPoset {
    pub fn new(poset: GradedPoset) -> Result<Self> {
        if let Some((lo, hi)) = poset.first_unbalanced() {
            return Err(Error::NotEulerian { lo, hi });
        }
        Ok(Self::new_unchecked(poset))
    }

    fn new_unchecked(poset: GradedPoset) -> Self {
        EulerianPoset { poset, g_memo: Mutex::new(HashMap::new()), b_memo: Mutex::new(HashMap::new()) }
    }

    pub fn from_covers(ranks: &[usize], covers: &[(usize, usize)]) -> Result<Self> {
        Self::new(GradedPoset::with_ranks(ranks, covers)?)
    }

    pub fn graded(&self) -> &GradedPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.poset.rank()
    }

    pub fn rank_of(&self, x: usize) -> usize {
        self.poset.rank_of(x)
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.poset.le(x, y)
    }

    pub fn bottom(&self) -> usize {
        self.poset.bottom()
    }

    pub fn top(&self) -> usize {
        self.poset.top()
    }

    /// The whole poset as an interval.
    pub fn whole(&self) -> Interval {
        Interval::new(self.bottom(), self.top())
    }

    /// All intervals `[x, y]` with `x <= y`.
    pub fn intervals(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.poset.up[x].ones() {
                out.push(Interval::new(x, y));
            }
        }
        out
    }

    /// Materialized interval `[x, y]` (relabelled) with the original labels.
    pub fn interval(&self, x: usize, y: usize) -> (EulerianPoset, Vec<usize>) {
        let (p, labels) = self.poset.interval(x, y);
        (EulerianPoset::new_unchecked(p), labels)
    }

    /// Materialized dual poset.
    pub fn dual(&self) -> EulerianPoset {
        EulerianPoset::new_unchecked(self.poset.dual())
    }

    fn interval_rank(&self, iv: Interval) -> usize {
        self.rank_of(iv.hi) - self.rank_of(iv.lo)
    }

    fn members(&self, iv: Interval) -> Vec<usize> {
        self.poset.between(iv.lo, iv.hi)
    }

    fn min_of(&self, iv: Interval) -> usize {
        if iv.dual {
            iv.hi
        } else {
            iv.lo
        }
    }

    fn max_of(&self, iv: Interval) -> usize {
        if iv.dual {
            iv.lo
        } else {
            iv.hi
        }
    }

    /// Rank of `z` inside the (possibly dual) interval.
    fn rank_in(&self, iv: Interval, z: usize) -> usize {
        if iv.dual {
            self.rank_of(iv.hi) - self.rank_of(z)
        } else {
            self.rank_of(z) - self.rank_of(iv.lo)
        }
    }

    /// `[min, z]` inside the interval, in the interval's orientation.
    fn lower(iv: Interval, z: usize) -> Interval {
        if iv.dual {
            Interval { lo: z, hi: iv.hi, dual: true }
        } else {
            Interval { lo: iv.lo, hi: z, dual: false }
        }
    }

    /// `[z, max]` inside the interval, in the interval's orientation.
    fn upper(iv: Interval, z: usize) -> Interval {
        if iv.dual {
            Interval { lo: iv.lo, hi: z, dual: true }
        } else {
            Interval { lo: z, hi: iv.hi, dual: false }
        }
    }

    /// H-polynomial of an interval (or of its dual).
    pub fn h_of(&self, iv: Interval) -> Uni {
        if self.interval_rank(iv) == 0 {
            return Uni::one();
        }
        let bottom = self.min_of(iv);
        let mut h = Uni::zero();
        for z in self.members(iv) {
            if z == bottom {
                continue;
            }
            h += &(&t_minus_one_pow(self.rank_in(iv, z) - 1) * &self.g_of(Self::upper(iv, z)));
        }
        h
    }

    /// G-polynomial of an interval (or of its dual).
    pub fn g_of(&self, iv: Interval) -> Uni {
        if let Some(g) = self.g_memo.lock().expect("memo lock").get(&iv) {
            return g.clone();
        }
        let r = self.interval_rank(iv);
        let g = if r == 0 {
            Uni::one()
        } else {
            (&Uni::one_minus_t() * &self.h_of(iv)).truncate_below(Ratio::new(r as i64, 2))
        };
        self.g_memo.lock().expect("memo lock").insert(iv, g.clone());
        g
    }

    /// B-polynomial of an interval (or of its dual) by the defining recursion.
    pub fn b_of(&self, iv: Interval) -> Laurent {
        if let Some(b) = self.b_memo.lock().expect("memo lock").get(&iv) {
            return b.clone();
        }
        let r = self.interval_rank(iv);
        let b = if r == 0 {
            Laurent::one()
        } else {
            let top = self.max_of(iv);
            let mut acc = self.g_of(iv).substitute(&Monomial::uv());
            for z in self.members(iv) {
                if z == top {
                    continue;
                }
                let shift = (r - self.rank_in(iv, z)) as i64;
                let term = &self.b_of(Self::lower(iv, z)) * &self.g_of(Self::upper(iv, z)).substitute(&Monomial::v_over_u());
                acc -= &term.shift(shift, 0);
            }
            acc
        };
        self.b_memo.lock().expect("memo lock").insert(iv, b.clone());
        b
    }

    /// B-polynomial assembled from G-polynomials of intervals and their duals.
    pub fn b_via_g_of(&self, iv: Interval) -> Laurent {
        let r = self.interval_rank(iv);
        let mut acc = Laurent::zero();
        for z in self.members(iv) {
            let k = r - self.rank_in(iv, z);
            let left = self.g_of(Self::upper(iv, z).flipped()).substitute(&Monomial::v_over_u());
            let right = self.g_of(Self::lower(iv, z)).substitute(&Monomial::uv());
            let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            acc += &(&left * &right).shift(k as i64, 0).scale(&sign);
        }
        acc
    }

    /// Both convolution sums pairing G with the signed dual G vanish.
    pub fn convolution_inverse_check_of(&self, iv: Interval) -> bool {
        let r = self.interval_rank(iv);
        if r == 0 {
            return true;
        }
        let mut first = Uni::zero();
        let mut second = Uni::zero();
        for z in self.members(iv) {
            let lo = Self::lower(iv, z);
            let hi = Self::upper(iv, z);
            let k = self.rank_in(iv, z);
            let a = &self.g_of(lo.flipped()) * &self.g_of(hi);
            let b = &self.g_of(lo) * &self.g_of(hi.flipped());
            if k % 2 == 0 {
                first += &a;
            } else {
                first -= &a;
            }
            if (r - k) % 2 == 0 {
                second += &b;
            } else {
                second -= &b;
            }
        }
        first.is_zero() && second.is_zero()
    }

    pub fn g_polynomial(&self) -> Uni {
        self.g_of(self.whole())
    }

    pub fn h_polynomial(&self) -> Uni {
        self.h_of(self.whole())
    }

    pub fn b_polynomial(&self) -> Laurent {
        self.b_of(self.whole())
    }

    pub fn b_via_g(&self) -> Laurent {
        self.b_via_g_of(self.whole())
    }

    pub fn convolution_inverse_check(&self) -> bool {
        self.convolution_inverse_check_of(self.whole())
    }
}

/// G-polynomial of an Eulerian poset.
pub fn g_polynomial(p: &EulerianPoset) -> Uni {
    p.g_polynomial()
}

/// H-polynomial of an Eulerian poset.
pub fn h_polynomial(p: &EulerianPoset) -> Uni {
    p.h_polynomial()
}

/// B-polynomial of an Eulerian poset.
pub fn b_polynomial(p: &EulerianPoset) -> Laurent {
    p.b_polynomial()
}

/// B-polynomial via the G-polynomial expansion.
pub fn b_via_g(p: &EulerianPoset) -> Laurent {
    p.b_via_g()
}

/// Both G-convolution identities hold on the whole poset.
pub fn convolution_inverse_check(p: &EulerianPoset) -> bool {
    p.convolution_inverse_check()
}
