//! Parametrisation of the solutions of a linear equality system.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::Rational;

/// `v = p + M·t` over free parameters `t`. Every parameter is one of the
/// original variables that is still unconstrained, so `M` has full column
/// rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Affine {
    pub p: Vec<Rational>,
    pub m: Vec<Vec<Rational>>,
    pub free: usize,
}

/// The equality system has no solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Inconsistent;

impl Affine {
    pub fn identity(n: usize) -> Self {
        let m = (0..n)
            .map(|i| {
                let mut row = vec![Rational::zero(); n];
                row[i] = Rational::one();
                row
            })
            .collect();
        Affine { p: vec![Rational::zero(); n], m, free: n }
    }

    /// Imposes `Σ c·v_i = rhs` and eliminates one parameter when the
    /// equation is not already implied.
    pub fn constrain(&mut self, coeffs: &[(usize, Rational)], rhs: &Rational) -> Result<(), Inconsistent> {
        let mut row = vec![Rational::zero(); self.free];
        let mut constant = Rational::zero();
        for (i, c) in coeffs {
            constant += c * &self.p[*i];
            for (r, mij) in row.iter_mut().zip(&self.m[*i]) {
                *r += c * mij;
            }
        }
        self.impose(&row, &(rhs - constant))
    }

    /// Imposes `row·t = rhs` directly in parameter space.
    pub fn impose(&mut self, row: &[Rational], rhs: &Rational) -> Result<(), Inconsistent> {
        let Some(c) = row.iter().rposition(|r| !r.is_zero()) else {
            return if rhs.is_zero() { Ok(()) } else { Err(Inconsistent) };
        };
        // t_c = (rhs - Σ_{j≠c} row_j t_j) / row_c
        let pivot = &row[c];
        let base = rhs / pivot;
        let slopes: Vec<Rational> = row.iter().map(|r| r / pivot).collect();
        for (pi, mi) in self.p.iter_mut().zip(self.m.iter_mut()) {
            let coef = mi[c].clone();
            if !coef.is_zero() {
                *pi += &coef * &base;
                for (j, mij) in mi.iter_mut().enumerate() {
                    if j != c {
                        *mij -= &coef * &slopes[j];
                    }
                }
            }
            mi.remove(c);
        }
        self.free -= 1;
        Ok(())
    }

    pub fn eval(&self, t: &[Rational]) -> Vec<Rational> {
        self.p
            .iter()
            .zip(&self.m)
            .map(|(pi, mi)| mi.iter().zip(t).fold(pi.clone(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.m[i].iter().all(Zero::is_zero)
    }
}
