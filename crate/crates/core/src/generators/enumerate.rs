//! Exhaustive enumeration of finite effect algebras up to isomorphism.
//!
//! Every effect algebra has a labelling in which `0` is first, `1` is last
//! and `x ⊕ y > max(x, y)` for nonzero `x, y` (take any linear extension of
//! its order). The search fixes such labellings: it first picks the
//! orthosupplement as an involution of the middle elements, then assigns
//! every remaining pair a value in `{undefined} ∪ (max(x, y), 1)`, pruning
//! with associativity after each assignment. Survivors are deduplicated by
//! canonical form.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::canon::{canonical_form, CanonicalForm};
use crate::table::PartialSumTable;
use crate::{Caps, EffectAlgebra, Elem, Result};

const UNDEF: u16 = u16::MAX;
const UNKNOWN: u16 = u16::MAX - 1;

/// One top-level choice: the orthosupplement on the middle elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub n: usize,
    /// `supp[x]` for every element.
    pub supp: Vec<Elem>,
}

/// All involutions of `1..n-1`, extended by `0 <-> n-1`.
pub fn top_level_branches(n: usize) -> Vec<Branch> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut supp = vec![usize::MAX; n];
    supp[0] = n - 1;
    supp[n - 1] = 0;
    fn go(n: usize, supp: &mut Vec<Elem>, out: &mut Vec<Branch>) {
        let Some(x) = (1..n - 1).find(|&x| supp[x] == usize::MAX) else {
            out.push(Branch { n, supp: supp.clone() });
            return;
        };
        for y in x..n - 1 {
            if supp[y] == usize::MAX {
                supp[x] = y;
                supp[y] = x;
                go(n, supp, out);
                supp[x] = usize::MAX;
                supp[y] = usize::MAX;
            }
        }
    }
    go(n, &mut supp, &mut out);
    out
}

struct Search {
    n: usize,
    cells: Vec<u16>,
    free: Vec<(Elem, Elem)>,
    found: BTreeMap<CanonicalForm, EffectAlgebra>,
}

impl Search {
    #[inline]
    fn get(&self, x: usize, y: usize) -> u16 {
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        self.cells[a * self.n + b]
    }

    fn set(&mut self, x: usize, y: usize, v: u16) {
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        self.cells[a * self.n + b] = v;
    }

    /// `(a ⊕ b) ⊕ c` as far as it is known.
    fn left(&self, a: usize, b: usize, c: usize) -> u16 {
        match self.get(a, b) {
            UNDEF => UNDEF,
            UNKNOWN => UNKNOWN,
            ab => self.get(ab as usize, c),
        }
    }

    /// Associativity on every triple whose entries are all known and
    /// that involves the pair `(x, y)`.
    fn consistent(&self, x: usize, y: usize) -> bool {
        let n = self.n;
        let check = |a: usize, b: usize, c: usize| {
            let l = self.left(a, b, c);
            let r = self.left(b, c, a);
            l == UNKNOWN || r == UNKNOWN || l == r
        };
        for c in 1..n {
            // (x, y) as the first or the second inner pair
            if !check(x, y, c) || !check(y, x, c) || !check(c, x, y) || !check(c, y, x) {
                return false;
            }
            // (x, y) as an outer pair: a ⊕ c is x or y
            for a in 1..n {
                let ac = self.get(a, c) as usize;
                if ac == x && (!check(a, c, y) || !check(y, a, c)) {
                    return false;
                }
                if ac == y && (!check(a, c, x) || !check(x, a, c)) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, i: usize) {
        if i == self.free.len() {
            self.emit();
            return;
        }
        let (x, y) = self.free[i];
        let lo = x.max(y) + 1;
        let values = core::iter::once(UNDEF).chain((lo..self.n - 1).map(|z| z as u16));
        for v in values {
            self.set(x, y, v);
            if self.consistent(x, y) {
                self.run(i + 1);
            }
        }
        self.set(x, y, UNKNOWN);
    }

    fn emit(&mut self) {
        let n = self.n;
        let mut t = PartialSumTable::new(n).expect("small");
        for x in 0..n {
            for y in x..n {
                let v = self.get(x, y);
                if v != UNDEF {
                    t.set(x, y, Some(v as usize)).expect("in range");
                }
            }
        }
        // the pruning is partial; the constructor runs the full check
        if let Ok(e) = EffectAlgebra::unlabeled(t, n - 1) {
            let (form, perm) = canonical_form(&e);
            self.found.entry(form).or_insert_with(|| relabel(&e.permuted(&perm).expect("perm fixes 0")));
        }
    }
}

/// Labels `0`, `e1`, `e2`, …, `1`.
fn relabel(e: &EffectAlgebra) -> EffectAlgebra {
    let labels = e
        .elems()
        .map(|x| match x {
            0 => "0".into(),
            x if x == e.one() => "1".into(),
            x => alloc::format!("e{x}"),
        })
        .collect();
    EffectAlgebra::new(labels, e.table().clone(), e.one()).expect("same table")
}

/// The algebras of one branch, keyed by canonical form.
pub fn enumerate_branch(branch: &Branch) -> Vec<(CanonicalForm, EffectAlgebra)> {
    let n = branch.n;
    let mut cells = vec![UNKNOWN; n * n];
    let mut free = Vec::new();
    for x in 0..n {
        for y in x..n {
            let v = if x == 0 {
                y as u16
            } else if branch.supp[x] == y {
                (n - 1) as u16
            } else if y == n - 1 || x.max(y) + 1 >= n - 1 {
                // nothing but 1 lies above, and 1 is reserved for supplements
                UNDEF
            } else {
                free.push((x, y));
                UNKNOWN
            };
            cells[x * n + y] = v;
        }
    }
    let mut s = Search { n, cells, free, found: BTreeMap::new() };
    s.run(0);
    s.found.into_iter().collect()
}

/// All effect algebras with exactly `n` elements up to isomorphism, in
/// canonical-form order.
pub fn enumerate_size(n: usize, caps: &Caps) -> Result<Vec<EffectAlgebra>> {
    Caps::check(caps.enumerate, "enumerated carrier", n)?;
    let mut all: BTreeMap<CanonicalForm, EffectAlgebra> = BTreeMap::new();
    for b in top_level_branches(n) {
        all.extend(enumerate_branch(&b));
    }
    Ok(all.into_values().collect())
}

/// All effect algebras with `2..=max_size` elements up to isomorphism,
/// by size, then canonical form.
pub fn enumerate(max_size: usize, caps: &Caps) -> Result<Vec<EffectAlgebra>> {
    Caps::check(caps.enumerate, "enumerated carrier", max_size)?;
    let mut out = Vec::new();
    for n in 2..=max_size {
        out.extend(enumerate_size(n, caps)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let caps = Caps::default();
        assert_eq!(enumerate_size(2, &caps).unwrap().len(), 1);
        assert_eq!(enumerate_size(3, &caps).unwrap().len(), 1);
        assert_eq!(enumerate_size(4, &caps).unwrap().len(), 3);
    }

    #[test]
    fn involution_counts() {
        // involutions on k points: 1, 1, 2, 4, 10
        let counts: Vec<_> = (2..7).map(|n| top_level_branches(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 10]);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(enumerate(9, &Caps::default()).unwrap_err().is_cap());
    }
}
