//! Finite posets and the order derived from a sum table.

use alloc::vec;
use alloc::vec::Vec;

use crate::table::PartialSumTable;
use crate::{Elem, ElemSet};

const NONE: u16 = u16::MAX;

/// A finite partial order stored as down-sets and up-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    down: Vec<ElemSet>,
    up: Vec<ElemSet>,
}

impl Poset {
    /// Builds the poset from a relation. The caller guarantees it is a
    /// partial order; see [`Poset::is_partial_order`].
    pub fn from_fn(n: usize, leq: impl Fn(Elem, Elem) -> bool) -> Self {
        let mut down = vec![ElemSet::empty(n); n];
        let mut up = vec![ElemSet::empty(n); n];
        for (a, up_a) in up.iter_mut().enumerate() {
            for (b, down_b) in down.iter_mut().enumerate() {
                if leq(a, b) {
                    down_b.insert(a);
                    up_a.insert(b);
                }
            }
        }
        Poset { down, up }
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.down[b].contains(a)
    }

    /// `{x : x <= b}`
    pub fn down(&self, b: Elem) -> &ElemSet {
        &self.down[b]
    }

    /// `{x : a <= x}`
    pub fn up(&self, a: Elem) -> &ElemSet {
        &self.up[a]
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| self.leq(a, a))
            && (0..n).all(|a| (0..n).all(|b| a == b || !(self.leq(a, b) && self.leq(b, a))))
            && (0..n).all(|b| self.down[b].iter().all(|a| self.down[a].is_subset(&self.down[b])))
    }

    /// The greatest element of `set`, if it has one.
    pub fn greatest_of(&self, set: &ElemSet) -> Option<Elem> {
        let cand = set.iter().max_by_key(|&m| self.down[m].len())?;
        set.is_subset(&self.down[cand]).then_some(cand)
    }

    /// The least element of `set`, if it has one.
    pub fn least_of(&self, set: &ElemSet) -> Option<Elem> {
        let cand = set.iter().max_by_key(|&m| self.up[m].len())?;
        set.is_subset(&self.up[cand]).then_some(cand)
    }

    /// Common lower bounds of every member of `set` (all elements if empty).
    pub fn lower_bounds(&self, set: &ElemSet) -> ElemSet {
        let mut lb = ElemSet::full(self.len());
        for x in set.iter() {
            lb.intersect_with(&self.down[x]);
        }
        lb
    }

    pub fn upper_bounds(&self, set: &ElemSet) -> ElemSet {
        let mut ub = ElemSet::full(self.len());
        for x in set.iter() {
            ub.intersect_with(&self.up[x]);
        }
        ub
    }

    /// Join of an arbitrary subset (the empty join is the bottom).
    pub fn sup(&self, set: &ElemSet) -> Option<Elem> {
        self.least_of(&self.upper_bounds(set))
    }

    pub fn inf(&self, set: &ElemSet) -> Option<Elem> {
        self.greatest_of(&self.lower_bounds(set))
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.greatest_of(&self.down[a].intersection(&self.down[b]))
    }

    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.least_of(&self.up[a].intersection(&self.up[b]))
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let n = self.len();
        let mut out = Vec::new();
        for b in 0..n {
            for a in self.down[b].iter() {
                if a == b {
                    continue;
                }
                let between = self.up[a].intersection(&self.down[b]);
                if between.len() == 2 {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Length of the longest chain from a minimal element to each element.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<Elem> = (0..n).collect();
        order.sort_by_key(|&x| self.down[x].len());
        let mut h = vec![0usize; n];
        for &x in &order {
            h[x] = self.down[x].iter().filter(|&y| y != x).map(|y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// The same set with the order reversed.
    pub fn dual(&self) -> Poset {
        Poset { down: self.up.clone(), up: self.down.clone() }
    }

    /// The induced suborder on `members` (in increasing index order).
    pub fn restrict(&self, members: &[Elem]) -> Poset {
        Poset::from_fn(members.len(), |i, j| self.leq(members[i], members[j]))
    }
}

/// Order-theoretic structure derived from a validated sum table.
#[derive(Clone, Debug)]
pub struct OrderStructure {
    poset: Poset,
    supp: Vec<Elem>,
    // n×n tables, row-major; NONE where undefined.
    minus: Vec<u16>,
    meet: Vec<u16>,
    join: Vec<u16>,
    is_lattice: bool,
}

impl OrderStructure {
    /// Derives the order by witness search: `a <= b` iff `a ⊕ c = b` for
    /// some `c`, and then `b ⊖ a = c`. Expects a validated table.
    pub fn derive(table: &PartialSumTable, one: Elem) -> Self {
        let n = table.len();
        let mut minus = vec![NONE; n * n];
        let mut supp = vec![0; n];
        for (x, y, z) in table.triples() {
            minus[z * n + x] = y as u16;
            minus[z * n + y] = x as u16;
            if z == one {
                supp[x] = y;
                supp[y] = x;
            }
        }
        let poset = Poset::from_fn(n, |a, b| minus[b * n + a] != NONE);
        let mut meet = vec![NONE; n * n];
        let mut join = vec![NONE; n * n];
        let mut is_lattice = true;
        for a in 0..n {
            for b in a..n {
                let m = poset.meet(a, b);
                let j = poset.join(a, b);
                is_lattice &= m.is_some() && j.is_some();
                let m = m.map_or(NONE, |m| m as u16);
                let j = j.map_or(NONE, |j| j as u16);
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        OrderStructure { poset, supp, minus, meet, join, is_lattice }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.supp.len()
    }

    pub fn is_empty(&self) -> bool {
        self.supp.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn supp(&self, a: Elem) -> Elem {
        self.supp[a]
    }

    /// `b ⊖ a`, defined exactly when `a <= b`.
    #[inline]
    pub fn minus(&self, b: Elem, a: Elem) -> Option<Elem> {
        get(&self.minus, self.len(), b, a)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        get(&self.meet, self.len(), a, b)
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        get(&self.join, self.len(), a, b)
    }

    pub fn is_lattice(&self) -> bool {
        self.is_lattice
    }
}

#[inline]
fn get(t: &[u16], n: usize, a: Elem, b: Elem) -> Option<Elem> {
    match t[a * n + b] {
        NONE => None,
        v => Some(v as Elem),
    }
}
