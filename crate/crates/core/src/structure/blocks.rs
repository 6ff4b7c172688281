use alloc::format;
use alloc::vec::Vec;

use crate::error::falsified;
use crate::{Elem, ElemSet, LatticeEa, Result};

/// `x ↔ y`: `x ∨ y = x ⊕ (y ⊖ (x ∧ y))`, the right side being defined.
pub fn compatible(e: LatticeEa<'_>, x: Elem, y: Elem) -> bool {
    let d = e.diff(y, e.meet(x, y));
    e.sum(x, d) == Some(e.join(x, y))
}

/// Compatibility relation, blocks and the sets `B(E)`, `C(E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// `compat[x]` is the set of elements compatible with `x`.
    pub compat: Vec<ElemSet>,
    /// Maximal pairwise-compatible sets, sorted lexicographically by
    /// their member indices.
    pub blocks: Vec<ElemSet>,
    /// A single block equal to `E`.
    pub is_mv: bool,
    pub is_block_finite: bool,
    /// Intersection of all blocks.
    pub b_e: ElemSet,
    /// `B(E) ∩ S(E)`.
    pub c_e: ElemSet,
}

impl BlockDecomposition {
    /// Index of the first block containing `x`.
    pub fn block_of(&self, x: Elem) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(x))
    }
}

/// Blocks as the maximal cliques of the compatibility graph. Each clique is
/// re-verified to be a sub-lattice effect algebra; a failure is reported as
/// a falsification, never repaired.
pub fn blocks(e: LatticeEa<'_>) -> Result<BlockDecomposition> {
    let n = e.len();
    let compat: Vec<ElemSet> =
        (0..n).map(|x| ElemSet::from_elems(n, (0..n).filter(|&y| compatible(e, x, y)))).collect();
    let mut found = Vec::new();
    bron_kerbosch(&compat, ElemSet::empty(n), ElemSet::full(n), ElemSet::empty(n), &mut found);
    found.sort();
    for block in &found {
        if !e.sub_effect_algebra(block).is_sub_lattice_effect_algebra() {
            return Err(falsified(
                "maximal compatible sets are sub-lattice effect algebras",
                format!("{:?}", block.to_vec()),
            ));
        }
    }
    let mut b_e = ElemSet::full(n);
    for block in &found {
        b_e.intersect_with(block);
    }
    let c_e = b_e.intersection(&sharp_set(e));
    Ok(BlockDecomposition {
        is_mv: found.len() == 1 && found[0].is_full(),
        is_block_finite: true,
        compat,
        blocks: found,
        b_e,
        c_e,
    })
}

fn bron_kerbosch(adj: &[ElemSet], r: ElemSet, mut p: ElemSet, mut x: ElemSet, out: &mut Vec<ElemSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p.iter().chain(x.iter()).max_by_key(|&u| p.intersection_len(&adj[u])).expect("p is nonempty");
    let mut skip = adj[pivot].clone();
    skip.remove(pivot);
    for v in p.difference(&skip).iter().collect::<Vec<_>>() {
        // every element is compatible with itself, so adj[v] contains v
        let mut nbrs = adj[v].clone();
        nbrs.remove(v);
        let mut r2 = r.clone();
        r2.insert(v);
        bron_kerbosch(adj, r2, p.intersection(&nbrs), x.intersection(&nbrs), out);
        p.remove(v);
        x.insert(v);
    }
}

fn sharp_set(e: LatticeEa<'_>) -> ElemSet {
    ElemSet::from_elems(e.len(), e.elems().filter(|&x| e.meet(x, e.supp(x)) == 0))
}

/// `S(E) = {x : x ∧ x' = 0}`, verified to be a sub-lattice effect algebra
/// satisfying the orthomodular law `a <= b ⇒ b = a ∨ (b ∧ a')`.
pub fn sharp_elements(e: LatticeEa<'_>) -> Result<ElemSet> {
    let s = sharp_set(e);
    let check = e.sub_effect_algebra(&s);
    if !check.is_sub_lattice_effect_algebra() {
        return Err(falsified("the sharp elements form a sub-lattice effect algebra", format!("{:?}", check.failure)));
    }
    for a in s.iter() {
        for b in s.iter().filter(|&b| e.leq(a, b)) {
            if e.join(a, e.meet(b, e.supp(a))) != b {
                return Err(falsified("orthomodular law on sharp elements", format!("({a}, {b})")));
            }
        }
    }
    Ok(s)
}
