//! Atoms and element orders.

use alloc::vec;
use alloc::vec::Vec;

use crate::order::OrderStructure;
use crate::table::PartialSumTable;
use crate::{EffectAlgebra, Elem};

/// `ord(x)`: the greatest `k` such that the k-fold sum `k·x` exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(usize),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<usize> {
        match self {
            Multiplicity::Finite(k) => Some(k),
            Multiplicity::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomTable {
    /// Atoms in increasing index order.
    pub atoms: Vec<Elem>,
    /// `ord` of every element. The zero has infinite order.
    pub ord: Vec<Multiplicity>,
    /// `multiples[x][k - 1] = k·x` for `1 <= k <= ord(x)`; empty for zero.
    pub multiples: Vec<Vec<Elem>>,
    /// Every nonzero element dominates an atom.
    pub is_atomic: bool,
    /// Every nonzero element has finite order.
    pub is_archimedean: bool,
}

impl AtomTable {
    pub(crate) fn compute(sum: &PartialSumTable, order: &OrderStructure) -> Self {
        let n = sum.len();
        let atoms: Vec<Elem> = (1..n).filter(|&a| order.poset().down(a).len() == 2).collect();
        let mut ord = vec![Multiplicity::Infinite; n];
        let mut multiples = vec![Vec::new(); n];
        for x in 1..n {
            let mut mult = vec![x];
            let mut cur = x;
            // k·x for k > n cannot all be distinct, so n steps decide ord.
            while mult.len() <= n {
                match sum.get(cur, x) {
                    Some(next) => {
                        mult.push(next);
                        cur = next;
                    }
                    None => break,
                }
            }
            if mult.len() <= n {
                ord[x] = Multiplicity::Finite(mult.len());
                multiples[x] = mult;
            }
        }
        let is_atomic = (1..n).all(|x| atoms.iter().any(|&a| order.leq(a, x)));
        let is_archimedean = ord[1..].iter().all(|o| o.finite().is_some());
        AtomTable { atoms, ord, multiples, is_atomic, is_archimedean }
    }

    pub fn is_atom(&self, e: Elem) -> bool {
        self.atoms.binary_search(&e).is_ok()
    }

    pub fn multiple(&self, x: Elem, k: usize) -> Option<Elem> {
        if k == 0 {
            return Some(0);
        }
        if x == 0 {
            return Some(0);
        }
        self.multiples[x].get(k - 1).copied()
    }
}

/// Atoms, orders and the atomic/Archimedean flags of `e`.
pub fn atom_analysis(e: &EffectAlgebra) -> &AtomTable {
    e.atom_table()
}
