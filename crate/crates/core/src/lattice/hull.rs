//! Facets of a pointed rational cone by the double description method.
//!
//! The facet normals of `cone(P)` are the extreme rays of the dual cone
//! `{y : p . y >= 0 for p in P}`. Rays are kept as primitive `i128` vectors
//! together with the set of constraints they make tight; adjacency of two
//! rays is decided combinatorially from those sets.

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::linalg::{primitive_integer, rref, to_q};

/// Facet description of the cone spanned by a finite point set.
#[derive(Debug, Clone)]
pub(crate) struct Hull {
    /// Dimension of the linear span.
    pub dim: usize,
    /// Inward facet normals as ambient functionals (zero outside `coords`).
    pub facets: Vec<Vec<i64>>,
    /// For each facet, the input points lying on it.
    pub tight: Vec<FixedBitSet>,
}

#[derive(Clone)]
struct Ray {
    v: Vec<i128>,
    tight: FixedBitSet,
}

fn primitive_i128(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

fn dot128(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Computes the facets of `cone(points)`. The cone must be pointed; zero
/// points are allowed and ignored.
pub(crate) fn cone_hull(points: &[Vec<i64>], ambient: usize) -> Hull {
    let n = points.len();
    let mut m = to_q(points);
    let coords = if m.is_empty() { vec![] } else { rref(&mut m) };
    let dim = coords.len();
    if dim == 0 {
        return Hull { dim, facets: vec![], tight: vec![] };
    }
    let proj: Vec<Vec<i128>> = points.iter().map(|p| coords.iter().map(|&c| p[c] as i128).collect()).collect();

    // an initial basis of `dim` independent constraints
    let mut basis: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    for (i, p) in proj.iter().enumerate() {
        let mut rows = echelon.clone();
        rows.push(p.iter().map(|&x| BigRational::from_integer(x.into())).collect());
        let mut probe = rows.clone();
        if rref(&mut probe).len() > basis.len() {
            basis.push(i);
            echelon = rows;
            if basis.len() == dim {
                break;
            }
        }
    }
    let inv = invert(&echelon);
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let col: Vec<BigRational> = (0..dim).map(|i| inv[i][j].clone()).collect();
            let v: Vec<i128> = primitive_integer(&col).into_iter().map(i128::from).collect();
            let mut tight = FixedBitSet::with_capacity(n);
            for (k, &b) in basis.iter().enumerate() {
                if k != j {
                    tight.insert(b);
                }
            }
            Ray { v, tight }
        })
        .collect();

    let mut processed = FixedBitSet::with_capacity(n);
    for &b in &basis {
        processed.insert(b);
    }
    for i in 0..n {
        if processed.contains(i) {
            continue;
        }
        processed.insert(i);
        let a = &proj[i];
        let vals: Vec<i128> = rays.iter().map(|r| dot128(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&r| vals[r] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&r| vals[r] < 0).collect();
        if neg.is_empty() {
            for (r, ray) in rays.iter_mut().enumerate() {
                if vals[r] == 0 {
                    ray.tight.insert(i);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].tight.clone();
                common.intersect_with(&rays[q].tight);
                if common.count_ones(..) + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(r, ray)| r == p || r == q || !common.is_subset(&ray.tight));
                if !adjacent {
                    continue;
                }
                let (sp, sq) = (vals[p], vals[q]);
                let mut v: Vec<i128> = rays[q].v.iter().zip(&rays[p].v).map(|(x, y)| sp * x - sq * y).collect();
                primitive_i128(&mut v);
                common.insert(i);
                fresh.push(Ray { v, tight: common });
            }
        }
        let mut next: Vec<Ray> = Vec::new();
        for (r, mut ray) in rays.into_iter().enumerate() {
            if vals[r] > 0 {
                next.push(ray);
            } else if vals[r] == 0 {
                ray.tight.insert(i);
                next.push(ray);
            }
        }
        next.extend(fresh);
        rays = next;
    }

    let mut facets: Vec<(Vec<i64>, FixedBitSet)> = rays
        .into_iter()
        .map(|r| {
            let mut f = vec![0i64; ambient];
            for (k, &c) in coords.iter().enumerate() {
                f[c] = r.v[k].to_i64().expect("facet normal overflow");
            }
            let mut tight = FixedBitSet::with_capacity(n);
            for (j, p) in proj.iter().enumerate() {
                if dot128(p, &r.v).is_zero() {
                    tight.insert(j);
                }
            }
            (f, tight)
        })
        .collect();
    facets.sort_by(|a, b| a.0.cmp(&b.0));
    facets.dedup_by(|a, b| a.0 == b.0);
    let (facets, tight) = facets.into_iter().unzip();
    Hull { dim, facets, tight }
}

fn invert(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut aug: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| BigRational::from_integer(i128::from(i == j).into())));
            r
        })
        .collect();
    rref(&mut aug);
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_cone_has_four_facets() {
        let pts = vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]];
        let h = cone_hull(&pts, 3);
        assert_eq!(h.dim, 3);
        assert_eq!(h.facets.len(), 4);
        for t in &h.tight {
            assert_eq!(t.count_ones(..), 2);
        }
    }

    #[test]
    fn redundant_points_are_harmless() {
        let pts = vec![vec![0, 1], vec![1, 1], vec![2, 1], vec![1, 1]];
        let h = cone_hull(&pts, 2);
        assert_eq!(h.facets, vec![vec![-1, 2], vec![1, 0]]);
    }

    #[test]
    fn lower_dimensional_cone_projects() {
        // a 2-dimensional cone inside a plane of Z^3
        let pts = vec![vec![1, 0, 1], vec![0, 1, 1]];
        let h = cone_hull(&pts, 3);
        assert_eq!(h.dim, 2);
        assert_eq!(h.facets.len(), 2);
        for (f, t) in h.facets.iter().zip(&h.tight) {
            assert_eq!(t.count_ones(..), 1);
            for (j, p) in pts.iter().enumerate() {
                let v: i64 = f.iter().zip(p).map(|(a, b)| a * b).sum();
                assert_eq!(v == 0, t.contains(j));
                assert!(v >= 0);
            }
        }
    }

    #[test]
    fn octahedron_cone() {
        let mut pts = Vec::new();
        for i in 0..3 {
            for s in [-1, 1] {
                let mut p = vec![0, 0, 0, 1];
                p[i] = s;
                pts.push(p);
            }
        }
        let h = cone_hull(&pts, 4);
        assert_eq!(h.facets.len(), 8);
        assert!(h.facets.iter().all(|f| f[3] == 1));
    }
}
