//! Dedekind–MacNeille completion of finite posets and closedness of
//! subsets under arbitrary joins and meets.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::falsified;
use crate::order::Poset;
use crate::structure::{blocks, sharp_elements};
use crate::{EffectAlgebra, Elem, ElemSet, Error, LatticeEa, Result};

/// The cut lattice of a finite poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DMCompletion {
    /// `(A, A^u)` with `A = A^{ul}`, sorted by the size of `A`, then
    /// lexicographically. Inclusion of lower sets is the order.
    pub cuts: Vec<(ElemSet, ElemSet)>,
    /// Element `p` goes to the cut of `↓p`.
    pub embedding: Vec<usize>,
    /// Every cut is principal, i.e. the source was already complete.
    pub is_isomorphic_to_source: bool,
}

impl DMCompletion {
    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.cuts[i].0.is_subset(&self.cuts[j].0)
    }

    /// The cut order as a poset.
    pub fn poset(&self) -> Poset {
        Poset::from_fn(self.len(), |i, j| self.leq(i, j))
    }

    pub fn is_complete_lattice(&self) -> bool {
        let p = self.poset();
        let all = ElemSet::full(self.len());
        p.sup(&all).is_some()
            && p.inf(&all).is_some()
            && (0..self.len()).all(|i| (0..self.len()).all(|j| p.meet(i, j).is_some() && p.join(i, j).is_some()))
    }

    /// Every cut is the least cut above the embedded elements it contains.
    pub fn is_join_dense(&self) -> bool {
        let p = self.poset();
        (0..self.len()).all(|c| {
            let below = ElemSet::from_elems(self.len(), self.cuts[c].0.iter().map(|x| self.embedding[x]));
            p.sup(&below) == Some(c)
        })
    }

    /// Every cut is the greatest cut below the embedded upper bounds.
    pub fn is_meet_dense(&self) -> bool {
        let p = self.poset();
        (0..self.len()).all(|c| {
            let above = ElemSet::from_elems(self.len(), self.cuts[c].1.iter().map(|x| self.embedding[x]));
            p.inf(&above) == Some(c)
        })
    }

    /// Embedding preserves and reflects the order of `source`.
    pub fn is_order_embedding(&self, source: &Poset) -> bool {
        let n = source.len();
        (0..n).all(|a| (0..n).all(|b| source.leq(a, b) == self.leq(self.embedding[a], self.embedding[b])))
    }
}

/// Cuts as the intersection closure of the principal down-sets together
/// with the whole carrier.
pub fn dm_complete(p: &Poset) -> DMCompletion {
    let n = p.len();
    let mut family: BTreeSet<ElemSet> = BTreeSet::new();
    let mut list: Vec<ElemSet> = Vec::new();
    push(ElemSet::full(n), &mut family, &mut list);
    for x in 0..n {
        push(p.down(x).clone(), &mut family, &mut list);
    }
    let generators: Vec<ElemSet> = (0..n).map(|x| p.down(x).clone()).collect();
    for g in &generators {
        for i in 0..list.len() {
            let s = list[i].intersection(g);
            push(s, &mut family, &mut list);
        }
    }
    list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let cuts: Vec<(ElemSet, ElemSet)> = list
        .into_iter()
        .map(|a| {
            let upper = p.upper_bounds(&a);
            (a, upper)
        })
        .collect();
    let embedding: Vec<usize> =
        (0..n).map(|x| cuts.iter().position(|(a, _)| a == p.down(x)).expect("principal cuts are listed")).collect();
    let mut hit = ElemSet::empty(cuts.len());
    for &c in &embedding {
        hit.insert(c);
    }
    DMCompletion { is_isomorphic_to_source: hit.is_full(), cuts, embedding }
}

fn push(s: ElemSet, family: &mut BTreeSet<ElemSet>, list: &mut Vec<ElemSet>) {
    if family.insert(s.clone()) {
        list.push(s);
    }
}

/// The completion of the order of `e` is `e` itself and atoms go to atoms.
pub fn mc_check(e: &EffectAlgebra) -> bool {
    let c = dm_complete(e.poset());
    if !c.is_isomorphic_to_source {
        return false;
    }
    let p = c.poset();
    let bottom = c.embedding[0];
    let cut_atoms: Vec<usize> =
        (0..c.len()).filter(|&i| i != bottom && p.down(i).len() == 2 && p.leq(bottom, i)).collect();
    let mut embedded_atoms: Vec<usize> = e.atoms().iter().map(|&a| c.embedding[a]).collect();
    embedded_atoms.sort_unstable();
    cut_atoms == embedded_atoms
}

/// Closedness of `D` under arbitrary joins, arbitrary meets, and both
/// (complete sublattice), evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosednessReport {
    pub subset: ElemSet,
    pub joins_closed: bool,
    pub meets_closed: bool,
    pub complete_sublattice: bool,
}

fn closure_stays_inside(d: &ElemSet, start: Elem, op: impl Fn(Elem, Elem) -> Elem) -> bool {
    let mut reached = ElemSet::from_elems(d.universe(), [start]);
    let mut frontier = alloc::vec![start];
    while let Some(s) = frontier.pop() {
        for x in d.iter() {
            let t = op(s, x);
            if !reached.contains(t) {
                reached.insert(t);
                frontier.push(t);
            }
        }
    }
    reached.is_subset(d)
}

/// Evaluates the three closedness conditions for a sub-lattice effect
/// algebra `D`. On a finite lattice they must agree; disagreement is a
/// falsification.
pub fn closedness(e: LatticeEa<'_>, d: &ElemSet) -> Result<ClosednessReport> {
    if !e.sub_effect_algebra(d).is_sub_lattice_effect_algebra() {
        return Err(Error::InvalidArgument(format!("{:?} is not a sub-lattice effect algebra", d.to_vec())));
    }
    // joins of all subsets, grown from the empty join
    let joins_closed = closure_stays_inside(d, 0, |a, b| e.join(a, b));
    let meets_closed = closure_stays_inside(d, e.one(), |a, b| e.meet(a, b));
    let complete_sublattice = d.contains(0)
        && d.contains(e.one())
        && d.iter().all(|a| d.iter().all(|b| d.contains(e.meet(a, b)) && d.contains(e.join(a, b))));
    if joins_closed != meets_closed || meets_closed != complete_sublattice {
        return Err(falsified("join-closed, meet-closed and complete sublattice agree", format!("{:?}", d.to_vec())));
    }
    Ok(ClosednessReport { subset: d.clone(), joins_closed, meets_closed, complete_sublattice })
}

/// The subsets checked by default: every block, `S(E)`, `B(E)`, `C(E)`.
pub fn default_targets(e: LatticeEa<'_>) -> Result<Vec<(String, ElemSet)>> {
    let decomposition = blocks(e)?;
    let mut out: Vec<(String, ElemSet)> =
        decomposition.blocks.iter().enumerate().map(|(i, b)| (format!("block {i}"), b.clone())).collect();
    out.push(("S(E)".into(), sharp_elements(e)?));
    out.push(("B(E)".into(), decomposition.b_e.clone()));
    out.push(("C(E)".into(), decomposition.c_e.clone()));
    Ok(out)
}
