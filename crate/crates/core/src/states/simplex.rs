//! Two-phase dense-tableau simplex over exact rationals with Bland's rule.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Lp {
    Optimal { value: Rational, t: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Reduced costs, last entry is minus the objective value.
    z: Vec<Rational>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[j].is_zero() {
                let f = row[j].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        if !self.z[j].is_zero() {
            let f = self.z[j].clone();
            for (x, y) in self.z.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        self.basis[r] = j;
    }

    /// Minimises over columns `< limit`. Returns false if unbounded.
    fn run(&mut self, limit: usize) -> bool {
        loop {
            let Some(j) = (0..limit).find(|&j| self.z[j].is_negative()) else {
                return true;
            };
            let rhs = self.z.len() - 1;
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[j].is_positive() {
                    let ratio = &row[rhs] / &row[j];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j),
                None => return false,
            }
        }
    }
}

/// Minimises `c·t` subject to `g·t >= h` for every `(g, h)`; `t` is free.
pub(crate) fn minimize(c: &[Rational], constraints: &[(Vec<Rational>, Rational)]) -> Lp {
    let f = c.len();
    let m = constraints.len();
    // columns: u (f), w (f), surplus (m), artificial (m), rhs
    let width = 2 * f + 2 * m + 1;
    let rhs = width - 1;
    let mut rows = Vec::with_capacity(m);
    for (i, (g, h)) in constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); width];
        let sign = if h.is_negative() { -Rational::one() } else { Rational::one() };
        for (k, gk) in g.iter().enumerate() {
            row[k] = &sign * gk;
            row[f + k] = -(&sign * gk);
        }
        row[2 * f + i] = -sign.clone();
        row[2 * f + m + i] = Rational::one();
        row[rhs] = &sign * h;
        rows.push(row);
    }
    let mut z = vec![Rational::zero(); width];
    for row in &rows {
        for (j, x) in row.iter().enumerate() {
            if !(2 * f + m..2 * f + 2 * m).contains(&j) {
                z[j] -= x;
            }
        }
    }
    let mut t = Tableau { basis: (2 * f + m..2 * f + 2 * m).collect(), rows, z };
    t.run(2 * f + 2 * m);
    if !t.z[rhs].is_zero() {
        return Lp::Infeasible;
    }
    // drive artificial variables out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= 2 * f + m {
            match (0..2 * f + m).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    // phase two
    let cost = |j: usize| -> Rational {
        if j < f {
            c[j].clone()
        } else if j < 2 * f {
            -c[j - f].clone()
        } else {
            Rational::zero()
        }
    };
    let mut z = vec![Rational::zero(); width];
    for (j, zj) in z.iter_mut().enumerate().take(2 * f + m) {
        *zj = cost(j);
    }
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        let cb = cost(b);
        if !cb.is_zero() {
            for (zj, x) in z.iter_mut().zip(row) {
                *zj -= &cb * x;
            }
        }
    }
    t.z = z;
    if !t.run(2 * f + m) {
        return Lp::Unbounded;
    }
    let mut x = vec![Rational::zero(); 2 * f];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if b < 2 * f {
            x[b] = row[rhs].clone();
        }
    }
    let sol: Vec<Rational> = (0..f).map(|k| &x[k] - &x[f + k]).collect();
    let value = sol.iter().zip(c).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
    Lp::Optimal { value, t: sol }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn small_programs() {
        // min x + y with x >= 1, y >= 2, x - y >= -5
        let cons = vec![(vec![q(1), q(0)], q(1)), (vec![q(0), q(1)], q(2)), (vec![q(1), q(-1)], q(-5))];
        match minimize(&[q(1), q(1)], &cons) {
            Lp::Optimal { value, t } => {
                assert_eq!(value, q(3));
                assert_eq!(t, [q(1), q(2)]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(minimize(&[q(-1), q(0)], &cons), Lp::Unbounded);
        let bad = vec![(vec![q(1)], q(1)), (vec![q(-1)], q(0))];
        assert_eq!(minimize(&[q(1)], &bad), Lp::Infeasible);
    }

    #[test]
    fn fractional_optimum() {
        // min -x with 3x <= 2 written as -3x >= -2
        match minimize(&[q(-1)], &[(vec![q(-3)], q(-2))]) {
            Lp::Optimal { t, .. } => assert_eq!(t, [Rational::new(2.into(), 3.into())]),
            other => panic!("{other:?}"),
        }
    }
}
