//! Vertex enumeration of a bounded polytope `{t : g·t >= h}` by the double
//! description method on the homogenised cone.

use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};

use super::Rational;

struct Ray {
    y: Vec<Rational>,
    /// Processed constraints that are tight at this ray.
    zero: FixedBitSet,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Scales a nonzero vector so its last nonzero entry has absolute value 1.
fn normalize(mut y: Vec<Rational>) -> Vec<Rational> {
    if let Some(k) = y.iter().rposition(|x| !x.is_zero()) {
        let s = y[k].abs();
        for x in y.iter_mut() {
            *x /= &s;
        }
    }
    y
}

/// Solves `a·x = b` for square invertible `a`; `None` if singular.
fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let d = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        let prow = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().expect("augmented")).collect())
}

fn rank(rows: &[&Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| (*r).clone()).collect();
    let width = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let prow = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if !row[col].is_zero() {
                let f = &row[col] / &prow[col];
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Vertices of the polytope, assumed bounded and nonempty. Returns them in
/// no particular order.
pub(crate) fn vertices(f: usize, constraints: &[(Vec<Rational>, Rational)]) -> Vec<Vec<Rational>> {
    let d = f + 1;
    // homogenised rows: g·t - h·λ >= 0, and λ >= 0
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (g, h) in constraints {
        if g.iter().all(Zero::is_zero) {
            continue;
        }
        let mut row = g.clone();
        row.push(-h.clone());
        let row = normalize(row);
        if !rows.contains(&row) {
            rows.push(row);
        }
    }
    let mut lambda = vec![Rational::zero(); d];
    lambda[f] = Rational::one();
    rows.push(lambda);

    // initial basis of d independent rows
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut cand: Vec<&Vec<Rational>> = basis.iter().map(|&j| &rows[j]).collect();
        cand.push(&rows[i]);
        if rank(&cand) == cand.len() {
            basis.push(i);
            if basis.len() == d {
                break;
            }
        }
    }
    assert_eq!(basis.len(), d, "a bounded polytope has a pointed cone");
    let a: Vec<Vec<Rational>> = basis.iter().map(|&i| rows[i].clone()).collect();
    let nrows = rows.len();
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let mut e = vec![Rational::zero(); d];
            e[j] = Rational::one();
            let y = solve(&a, &e).expect("independent rows");
            let mut zero = FixedBitSet::with_capacity(nrows);
            for (k, &bi) in basis.iter().enumerate() {
                if k != j {
                    zero.insert(bi);
                }
            }
            Ray { y: normalize(y), zero }
        })
        .collect();

    for (i, row) in rows.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|r| dot(row, &r.y)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].zero.clone();
                common.intersect_with(&rays[q].zero);
                if common.count_ones(..) + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len()).filter(|&r| r != p && r != q).all(|r| !common.is_subset(&rays[r].zero));
                if adjacent {
                    let y: Vec<Rational> =
                        rays[q].y.iter().zip(&rays[p].y).map(|(yq, yp)| &vals[p] * yq - &vals[q] * yp).collect();
                    common.insert(i);
                    next.push(Ray { y: normalize(y), zero: common });
                }
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_zero() {
                r.zero.insert(i);
                kept.push(r);
            } else if vals[k].is_positive() {
                kept.push(r);
            }
        }
        kept.extend(next);
        rays = kept;
    }

    rays.into_iter()
        .filter(|r| r.y[f].is_positive())
        .map(|r| {
            let l = r.y[f].clone();
            r.y[..f].iter().map(|x| x / &l).collect()
        })
        .collect()
}
