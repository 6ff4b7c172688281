use alloc::vec::Vec;

use crate::structure::Multiplicity;
use crate::{EffectAlgebra, Elem};

/// An isomorphism invariant that is complete: two effect algebras are
/// isomorphic iff their canonical forms are equal.
///
/// Elements are first ordered by the invariant vector (height, `ord`,
/// number of defined sums in the row); the table is then the
/// lexicographically least over all relabelings that respect that order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub invariants: Vec<(usize, usize, usize)>,
    pub one: Elem,
    pub table: Vec<u16>,
}

fn invariants(e: &EffectAlgebra) -> Vec<(usize, usize, usize)> {
    let heights = e.poset().heights();
    e.elems()
        .map(|x| {
            let ord = match e.ord(x) {
                Multiplicity::Finite(k) => k,
                Multiplicity::Infinite => usize::MAX,
            };
            let defined = e.elems().filter(|&y| e.sum(x, y).is_some()).count();
            (heights[x], ord, defined)
        })
        .collect()
}

/// The canonical form and a relabeling `old -> new` that realises it.
pub fn canonical_form(e: &EffectAlgebra) -> (CanonicalForm, Vec<Elem>) {
    let inv = invariants(e);
    let mut order: Vec<Elem> = e.elems().collect();
    order.sort_by_key(|&x| (inv[x], x));
    // classes of equal invariants, as ranges of `order`
    let mut classes: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=order.len() {
        if i == order.len() || inv[order[i]] != inv[order[start]] {
            classes.push((start, i));
            start = i;
        }
    }
    let mut best: Option<(Vec<u16>, Vec<Elem>)> = None;
    let mut slots = order.clone();
    permute_classes(&classes, 0, &mut slots, &mut |slots| {
        // slots[new] = old
        let mut perm = alloc::vec![0; slots.len()];
        for (new, &old) in slots.iter().enumerate() {
            perm[old] = new;
        }
        let table = e.table().permuted(&perm).raw().to_vec();
        if best.as_ref().is_none_or(|(t, _)| table < *t) {
            best = Some((table, perm));
        }
    });
    let (table, perm) = best.expect("at least the identity");
    let mut sorted_inv = inv.clone();
    sorted_inv.sort();
    (CanonicalForm { invariants: sorted_inv, one: perm[e.one()], table }, perm)
}

/// Calls `f` for every arrangement of `slots` obtained by permuting within
/// each class range.
fn permute_classes(classes: &[(usize, usize)], c: usize, slots: &mut [Elem], f: &mut impl FnMut(&[Elem])) {
    let Some(&(lo, hi)) = classes.get(c) else {
        f(slots);
        return;
    };
    heap_permutations(lo, hi - lo, slots, &mut |slots| permute_classes(classes, c + 1, slots, f));
}

fn heap_permutations(lo: usize, k: usize, slots: &mut [Elem], f: &mut impl FnMut(&mut [Elem])) {
    if k <= 1 {
        f(slots);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(lo, k - 1, slots, f);
        if k.is_multiple_of(2) {
            slots.swap(lo + i, lo + k - 1);
        } else {
            slots.swap(lo, lo + k - 1);
        }
    }
    heap_permutations(lo, k - 1, slots, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{boolean, chain, hsum_of_chains};

    #[test]
    fn relabelled_copies_agree() {
        let hs = hsum_of_chains(&[3, 4]).unwrap();
        let swapped = hs.permuted(&[0, 2, 1, 3, 4]).unwrap();
        assert_eq!(canonical_form(&hs).0, canonical_form(&swapped).0);
    }

    #[test]
    fn different_algebras_differ() {
        let forms =
            [chain(4).unwrap(), boolean(2).unwrap(), hsum_of_chains(&[3, 3]).unwrap()].map(|e| canonical_form(&e).0);
        assert_ne!(forms[0], forms[1]);
        assert_ne!(forms[1], forms[2]);
        assert_ne!(forms[0], forms[2]);
    }

    #[test]
    fn relabeling_realises_the_form() {
        let b8 = boolean(3).unwrap();
        let (form, perm) = canonical_form(&b8);
        let relabelled = b8.permuted(&perm).unwrap();
        assert_eq!(relabelled.table().raw(), &form.table[..]);
    }
}
