//! Exact ranks of rational matrices through modular arithmetic.
//!
//! Rows are scaled to integers. Elimination modulo `2^31 - 1` selects `r`
//! independent rows and pivot columns, so the rank over `Q` is at least `r`.
//! The remaining columns are then expressed through the pivot columns by
//! p-adic lifting and rational reconstruction, and the resulting `width - r`
//! kernel vectors are checked exactly against every row, which bounds the
//! rank by `r`. When the check fails the rank is computed by rational
//! elimination instead.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::Echelon;
use crate::scalar::{Fp, MERSENNE_31};

const P: u64 = MERSENNE_31;
type F = Fp<P>;

/// Sparse integer row: `(column, value)` pairs with distinct columns.
type IntRow = Vec<(usize, i64)>;

fn integer_rows(rows: &[Vec<(usize, BigRational)>]) -> Option<Vec<IntRow>> {
    rows.iter()
        .map(|row| {
            let mut merged: std::collections::BTreeMap<usize, BigRational> = std::collections::BTreeMap::new();
            for (c, x) in row {
                *merged.entry(*c).or_insert_with(BigRational::zero) += x;
            }
            let den = merged.values().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            merged
                .into_iter()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (x.numer() * (&den / x.denom())).to_i64().map(|v| (c, v)))
                .collect()
        })
        .collect()
}

fn rational_elimination(rows: &[Vec<(usize, BigRational)>], width: usize) -> usize {
    let mut e = Echelon::<BigRational>::new(width);
    for r in rows {
        if e.is_full() {
            break;
        }
        e.insert_sparse(r);
    }
    e.rank()
}

/// Rank over `Q` of the matrix with the given sparse rows.
pub fn rational_rank(rows: &[Vec<(usize, BigRational)>], width: usize) -> usize {
    match integer_rows(rows) {
        Some(int) => integer_rank(&int, width).unwrap_or_else(|| rational_elimination(rows, width)),
        None => rational_elimination(rows, width),
    }
}

/// Certified rank, or `None` when the kernel check did not go through.
fn integer_rank(rows: &[IntRow], width: usize) -> Option<usize> {
    let mut e = Echelon::<F>::new(width);
    let mut chosen = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if e.is_full() {
            break;
        }
        let entries: Vec<(usize, F)> = row.iter().map(|&(c, v)| (c, F::new(v))).collect();
        if e.insert_sparse(&entries) {
            chosen.push(i);
        }
    }
    let r = chosen.len();
    let free = e.non_pivot_columns();
    if free.is_empty() || r == rows.len() {
        return Some(r);
    }
    if r == 0 {
        return rows.iter().all(|row| row.is_empty()).then_some(0);
    }
    let pivots: Vec<usize> = (0..width).filter(|&c| e.is_pivot(c)).collect();
    let mut position = vec![None; width];
    for (j, &c) in pivots.iter().enumerate() {
        position[c] = Some((true, j));
    }
    for (j, &c) in free.iter().enumerate() {
        position[c] = Some((false, j));
    }
    // A = chosen rows on pivot columns, B = chosen rows on free columns.
    let mut a_rows: Vec<Vec<(usize, i64)>> = Vec::with_capacity(r);
    let mut b = vec![vec![0i128; free.len()]; r];
    for (i, &ri) in chosen.iter().enumerate() {
        let mut a = Vec::new();
        for &(c, v) in &rows[ri] {
            match position[c] {
                Some((true, j)) => a.push((j, v)),
                Some((false, j)) => b[i][j] = v as i128,
                None => unreachable!(),
            }
        }
        a_rows.push(a);
    }
    let inverse = invert_mod_p(&a_rows, r)?;
    let log_h: f64 = chosen
        .iter()
        .map(|&ri| {
            let n2: f64 = rows[ri].iter().map(|&(_, v)| (v as f64) * (v as f64)).sum();
            0.5 * n2.log2()
        })
        .sum();
    let steps = ((2.0 * log_h + 8.0) / (P as f64).log2()).ceil() as usize + 1;
    let solution = dixon(&a_rows, &inverse, b, steps);
    let modulus = BigInt::from(P).pow(steps as u32);
    let (numerators, denominator) = reconstruct(&solution, &modulus)?;
    // kernel vectors: d e_f - sum_j N[j][f] e_{pivot j}
    let verified = rows.iter().all(|row| {
        let mut acc = vec![BigInt::zero(); free.len()];
        for &(c, v) in row {
            match position[c] {
                Some((true, j)) => {
                    for (f, a) in acc.iter_mut().enumerate() {
                        *a += &numerators[j][f] * v;
                    }
                }
                Some((false, f)) => acc[f] -= &denominator * v,
                None => unreachable!(),
            }
        }
        acc.iter().all(Zero::is_zero)
    });
    verified.then_some(r)
}

fn mul_mod(a: u64, b: u64) -> u64 {
    a * b % P
}

fn pow_mod(mut base: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

fn residue(v: i128) -> u64 {
    v.rem_euclid(P as i128) as u64
}

/// Dense inverse of the square matrix modulo `P`.
fn invert_mod_p(rows: &[Vec<(usize, i64)>], n: usize) -> Option<Vec<Vec<u64>>> {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = vec![0u64; 2 * n];
            for &(c, x) in row {
                v[c] = residue(x as i128);
            }
            v[n + i] = 1;
            v
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| m[i][col] != 0)?;
        m.swap(col, piv);
        let inv = pow_mod(m[col][col], P - 2);
        for x in m[col].iter_mut() {
            *x = mul_mod(*x, inv);
        }
        let pivot_row = m[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == col || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = (*x + P - mul_mod(f, *y)) % P;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// p-adic digits of `A^{-1} B`, one `r x f` digit matrix per step.
fn dixon(a_rows: &[Vec<(usize, i64)>], inverse: &[Vec<u64>], mut b: Vec<Vec<i128>>, steps: usize) -> Vec<Vec<Vec<u64>>> {
    let r = inverse.len();
    let f = b.first().map_or(0, Vec::len);
    let mut digits = Vec::with_capacity(steps);
    for _ in 0..steps {
        let b_mod: Vec<Vec<u64>> = b.iter().map(|row| row.iter().map(|&v| residue(v)).collect()).collect();
        let mut x = vec![vec![0u64; f]; r];
        for (i, inv_row) in inverse.iter().enumerate() {
            let mut acc = vec![0u128; f];
            for (k, &y) in inv_row.iter().enumerate() {
                if y != 0 {
                    for (a, &bv) in acc.iter_mut().zip(&b_mod[k]) {
                        *a += (y * bv) as u128;
                    }
                }
            }
            for (xv, a) in x[i].iter_mut().zip(acc) {
                *xv = (a % P as u128) as u64;
            }
        }
        for (i, row) in a_rows.iter().enumerate() {
            for &(c, v) in row {
                for (bv, &xv) in b[i].iter_mut().zip(&x[c]) {
                    *bv -= v as i128 * xv as i128;
                }
            }
            for bv in b[i].iter_mut() {
                debug_assert_eq!(*bv % P as i128, 0);
                *bv /= P as i128;
            }
        }
        digits.push(x);
    }
    digits
}

/// Wang's rational reconstruction of `u` modulo `m` with numerator and
/// denominator bounded by `sqrt(m / 2)`.
fn wang(u: &BigInt, m: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Integer numerators over one common denominator.
fn reconstruct(digits: &[Vec<Vec<u64>>], modulus: &BigInt) -> Option<(Vec<Vec<BigInt>>, BigInt)> {
    let r = digits.first().map_or(0, Vec::len);
    let f = digits.first().and_then(|d| d.first()).map_or(0, Vec::len);
    let bound = (modulus / 2u32).sqrt();
    let p = BigInt::from(P);
    let mut values = vec![vec![BigInt::zero(); f]; r];
    for (i, row) in values.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            for step in digits.iter().rev() {
                *v = &*v * &p + step[i][j];
            }
        }
    }
    let mut den = BigInt::one();
    let mut fractions: Vec<Vec<(BigInt, BigInt)>> = vec![Vec::with_capacity(f); r];
    for (i, row) in values.iter().enumerate() {
        for v in row {
            let mut y = (&den * v).mod_floor(modulus);
            if y > modulus / 2u32 {
                y -= modulus;
            }
            let (num, d) = if y.abs() <= bound {
                (y, den.clone())
            } else {
                let (a, b) = wang(&(&den * v), modulus, &bound)?;
                (a, &den * b)
            };
            den = den.lcm(&d);
            fractions[i].push((num, d));
        }
    }
    let numerators = fractions
        .into_iter()
        .map(|row| row.into_iter().map(|(a, d)| a * (&den / d)).collect())
        .collect();
    Some((numerators, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<(usize, BigRational)>> {
        rows.iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, BigRational::from_integer(v.into()))).collect())
            .collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rational_rank(&q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]), 3), 2);
        assert_eq!(rational_rank(&q(&[&[1, 2], &[3, 4]]), 2), 2);
        assert_eq!(rational_rank(&q(&[&[0, 0]]), 2), 0);
        assert_eq!(rational_rank(&[], 4), 0);
    }

    #[test]
    fn dependency_hidden_modulo_p() {
        // the second row is the first plus P times a unit vector
        let p = P as i64;
        let rows = q(&[&[1, 1, 0], &[1, 1 + p, 0], &[2, 2, 0]]);
        assert_eq!(rational_rank(&rows, 3), 2);
    }

    #[test]
    fn agrees_with_rational_elimination() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let width = rng.gen_range(1..9);
            let basis: Vec<Vec<i64>> = (0..rng.gen_range(1..6)).map(|_| (0..width).map(|_| rng.gen_range(-9..10)).collect()).collect();
            let rows: Vec<Vec<i64>> = (0..rng.gen_range(1..10))
                .map(|_| {
                    let c: Vec<i64> = basis.iter().map(|_| rng.gen_range(-1_000_000..1_000_000)).collect();
                    (0..width).map(|j| basis.iter().zip(&c).map(|(b, x)| b[j] * x).sum()).collect()
                })
                .collect();
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = q(&refs);
            assert_eq!(rational_rank(&m, width), rational_elimination(&m, width));
        }
    }
}
