//! Validated finite effect algebras.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::order::{OrderStructure, Poset};
use crate::structure::atoms::{AtomTable, Multiplicity};
use crate::table::{validate, PartialSumTable};
use crate::{Elem, ElemSet, Error, Result};

/// A finite effect algebra `(E; ⊕, 0, 1)`.
///
/// Instances only exist validated: [`EffectAlgebra::new`] rejects tables
/// that violate an axiom. The zero is always element `0`; the one is
/// declared. The induced order and the atom table are derived once here and
/// the value is immutable afterwards.
#[derive(Clone, Debug)]
pub struct EffectAlgebra {
    labels: Vec<String>,
    sum: PartialSumTable,
    one: Elem,
    order: OrderStructure,
    atoms: AtomTable,
}

impl EffectAlgebra {
    pub fn new(labels: Vec<String>, sum: PartialSumTable, one: Elem) -> Result<Self> {
        let n = sum.len();
        if labels.len() != n {
            return Err(Error::Malformed(format!("{} labels for a carrier of size {n}", labels.len())));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::Malformed(format!("element {i} has an empty label")));
            }
            if labels[..i].contains(l) {
                return Err(Error::Malformed(format!("duplicate label {l:?}")));
            }
        }
        let report = validate(&sum, 0, one)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::NotEffectAlgebra(format!(
                "{} violations, first: {} witness {:?}",
                report.violations.len(),
                v.axiom.tag(),
                v.witness
            )));
        }
        Ok(Self::from_valid(labels, sum, one))
    }

    /// Labels are the decimal indices.
    pub fn unlabeled(sum: PartialSumTable, one: Elem) -> Result<Self> {
        let labels = (0..sum.len()).map(|i| format!("{i}")).collect();
        Self::new(labels, sum, one)
    }

    fn from_valid(labels: Vec<String>, sum: PartialSumTable, one: Elem) -> Self {
        let order = OrderStructure::derive(&sum, one);
        let atoms = AtomTable::compute(&sum, &order);
        EffectAlgebra { labels, sum, one, order, atoms }
    }

    pub fn len(&self) -> usize {
        self.sum.len()
    }

    /// Always false: a carrier has at least two elements.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elems(&self) -> core::ops::Range<Elem> {
        0..self.len()
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn table(&self) -> &PartialSumTable {
        &self.sum
    }

    /// `a ⊕ b`, if defined.
    #[inline]
    pub fn sum(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.sum.get(a, b)
    }

    pub fn order(&self) -> &OrderStructure {
        &self.order
    }

    pub fn poset(&self) -> &Poset {
        self.order.poset()
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.order.leq(a, b)
    }

    /// The orthosupplement `a'`.
    #[inline]
    pub fn supp(&self, a: Elem) -> Elem {
        self.order.supp(a)
    }

    /// `b ⊖ a`. Asking for an incomparable pair is an error.
    pub fn minus(&self, b: Elem, a: Elem) -> Result<Elem> {
        self.order.minus(b, a).ok_or(Error::NotComparable { a, b })
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.order.meet(a, b)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.order.join(a, b)
    }

    pub fn is_lattice(&self) -> bool {
        self.order.is_lattice()
    }

    pub fn atom_table(&self) -> &AtomTable {
        &self.atoms
    }

    pub fn atoms(&self) -> &[Elem] {
        &self.atoms.atoms
    }

    pub fn is_atom(&self, e: Elem) -> bool {
        self.atoms.is_atom(e)
    }

    pub fn ord(&self, x: Elem) -> Multiplicity {
        self.atoms.ord[x]
    }

    /// `k·x` for `1 <= k <= ord(x)`; `0·x = 0`.
    pub fn multiple(&self, x: Elem, k: usize) -> Option<Elem> {
        self.atoms.multiple(x, k)
    }

    pub fn as_lattice(&self) -> Result<LatticeEa<'_>> {
        if self.is_lattice() {
            Ok(LatticeEa(self))
        } else {
            Err(Error::NotLattice)
        }
    }

    /// Checks whether `q` is a sub-effect algebra: it contains 1 and
    /// whenever two of `a, b, a⊕b` lie in `q`, so does the third.
    pub fn sub_effect_algebra(&self, q: &ElemSet) -> SubAlgebraCheck {
        let failure = if !q.contains(self.one) {
            Some(SubFailure::MissingOne)
        } else {
            self.sum.triples().find_map(|(a, b, c)| {
                let inside = [a, b, c].iter().filter(|&&x| q.contains(x)).count();
                (inside == 2).then_some(SubFailure::Closure { a, b, c })
            })
        };
        let is_sublattice = self.is_lattice()
            && q.iter().all(|a| {
                q.iter().all(|b| {
                    self.meet(a, b).is_some_and(|m| q.contains(m)) && self.join(a, b).is_some_and(|j| q.contains(j))
                })
            });
        SubAlgebraCheck { is_sub: failure.is_none(), failure, is_sublattice }
    }

    /// The sub-effect algebra on `q` with the restricted sum. Members keep
    /// their relative order, so element `i` of the result is the `i`-th
    /// smallest member of `q`.
    pub fn restrict(&self, q: &ElemSet) -> Result<EffectAlgebra> {
        let check = self.sub_effect_algebra(q);
        if let Some(f) = check.failure {
            return Err(Error::InvalidArgument(format!("not a sub-effect algebra: {f:?}")));
        }
        let members = q.to_vec();
        let mut index = alloc::vec![usize::MAX; self.len()];
        for (i, &m) in members.iter().enumerate() {
            index[m] = i;
        }
        let mut t = PartialSumTable::new(members.len())?;
        for (a, b, c) in self.sum.triples() {
            if q.contains(a) && q.contains(b) {
                t.set(index[a], index[b], Some(index[c]))?;
            }
        }
        let labels = members.iter().map(|&m| self.labels[m].clone()).collect();
        EffectAlgebra::new(labels, t, index[self.one])
    }

    /// Index of `e` in [`EffectAlgebra::dual`]: zero and one swap places.
    pub fn dual_index(&self, e: Elem) -> Elem {
        if e == 0 {
            self.one
        } else if e == self.one {
            0
        } else {
            e
        }
    }

    /// The dual effect algebra: same carrier, order reversed, with
    /// `a ⊕* b = (a' ⊕ b')'` where defined. Elements are relabelled by
    /// [`EffectAlgebra::dual_index`] so the new zero (the old one) sits at
    /// index 0.
    pub fn dual(&self) -> EffectAlgebra {
        let n = self.len();
        let mut t = PartialSumTable::new(n).expect("same size as a valid table");
        for a in 0..n {
            for b in a..n {
                if let Some(s) = self.sum(self.supp(a), self.supp(b)) {
                    let (da, db, ds) = (self.dual_index(a), self.dual_index(b), self.dual_index(self.supp(s)));
                    t.set(da, db, Some(ds)).expect("indices in range");
                }
            }
        }
        let mut labels = self.labels.clone();
        labels.swap(0, self.one);
        EffectAlgebra::new(labels, t, self.one).expect("the dual of an effect algebra is one")
    }

    /// The same algebra with elements renumbered `old -> perm[old]`.
    /// `perm` must fix 0.
    pub fn permuted(&self, perm: &[Elem]) -> Result<EffectAlgebra> {
        if perm.len() != self.len() || perm[0] != 0 {
            return Err(Error::InvalidArgument("permutation must fix zero".into()));
        }
        let mut labels = alloc::vec![String::new(); self.len()];
        for (old, &new) in perm.iter().enumerate() {
            labels[new] = self.labels[old].clone();
        }
        EffectAlgebra::new(labels, self.sum.permuted(perm), perm[self.one])
    }
}

/// Result of [`EffectAlgebra::sub_effect_algebra`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubAlgebraCheck {
    pub is_sub: bool,
    pub failure: Option<SubFailure>,
    /// Closed under meets and joins of `E` (false when `E` is no lattice).
    pub is_sublattice: bool,
}

impl SubAlgebraCheck {
    pub fn is_sub_lattice_effect_algebra(&self) -> bool {
        self.is_sub && self.is_sublattice
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubFailure {
    MissingOne,
    /// `a ⊕ b = c` with exactly two of the three inside.
    Closure {
        a: Elem,
        b: Elem,
        c: Elem,
    },
}

/// A lattice effect algebra: every pair has a meet and a join.
///
/// Finite lattice effect algebras are automatically atomic and
/// Archimedean, so this view is the precondition for almost all of the
/// structural and topological operations.
#[derive(Clone, Copy, Debug)]
pub struct LatticeEa<'a>(&'a EffectAlgebra);

impl<'a> LatticeEa<'a> {
    pub fn algebra(self) -> &'a EffectAlgebra {
        self.0
    }

    #[inline]
    pub fn meet(self, a: Elem, b: Elem) -> Elem {
        self.0.order.meet(a, b).expect("lattice")
    }

    #[inline]
    pub fn join(self, a: Elem, b: Elem) -> Elem {
        self.0.order.join(a, b).expect("lattice")
    }

    /// `b ⊖ a` for `a <= b`.
    #[inline]
    pub fn diff(self, b: Elem, a: Elem) -> Elem {
        self.0.order.minus(b, a).expect("a <= b")
    }

    pub fn join_all(self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems.into_iter().fold(0, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems.into_iter().fold(self.0.one, |acc, x| self.meet(acc, x))
    }

    /// Multiplicity of an atom, which is always finite here.
    pub fn n_of(self, atom: Elem) -> usize {
        self.0.ord(atom).finite().expect("finite instances are Archimedean")
    }
}

impl Deref for LatticeEa<'_> {
    type Target = EffectAlgebra;

    fn deref(&self) -> &EffectAlgebra {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{boolean, chain, hsum_of_chains};

    fn hs2c3() -> EffectAlgebra {
        hsum_of_chains(&[3, 3]).unwrap()
    }

    #[test]
    fn chain_order_and_supplement() {
        let c3 = chain(3).unwrap();
        let a = c3.find("a").unwrap();
        assert!(c3.leq(0, a) && c3.leq(a, c3.one()));
        assert_eq!(c3.supp(a), a);
        assert_eq!(c3.minus(c3.one(), a).unwrap(), a);
    }

    #[test]
    fn horizontal_sum_of_chains_is_a_lattice() {
        let e = hs2c3();
        let (a, b) = (e.find("a").unwrap(), e.find("b").unwrap());
        assert!(!e.leq(a, b) && !e.leq(b, a));
        assert_eq!(e.meet(a, b), Some(0));
        assert_eq!(e.join(a, b), Some(e.one()));
        assert!(e.is_lattice());
        assert!(matches!(e.minus(a, b), Err(Error::NotComparable { .. })));
    }

    #[test]
    fn boolean_diamond() {
        let b4 = boolean(2).unwrap();
        let (p, q) = (b4.find("p").unwrap(), b4.find("q").unwrap());
        assert_eq!(b4.supp(p), q);
        assert_eq!(b4.join(p, q), Some(b4.one()));
    }

    #[test]
    fn sub_effect_algebra_examples() {
        let e = hs2c3();
        let n = e.len();
        let a = e.find("a").unwrap();
        let trivial = ElemSet::from_elems(n, [0, e.one()]);
        assert!(e.sub_effect_algebra(&trivial).is_sub);
        let block = ElemSet::from_elems(n, [0, a, e.one()]);
        let c = e.sub_effect_algebra(&block);
        assert!(c.is_sub && c.is_sublattice);
        assert_eq!(e.sub_effect_algebra(&ElemSet::empty(n)).failure, Some(SubFailure::MissingOne));

        let b4 = boolean(2).unwrap();
        let (p, q) = (b4.find("p").unwrap(), b4.find("q").unwrap());
        let c = b4.sub_effect_algebra(&ElemSet::from_elems(4, [0, p, b4.one()]));
        assert_eq!(c.failure, Some(SubFailure::Closure { a: p, b: q, c: b4.one() }));
    }

    #[test]
    fn dual_reverses_order() {
        let c4 = chain(4).unwrap();
        let d = c4.dual();
        for x in c4.elems() {
            for y in c4.elems() {
                assert_eq!(c4.leq(x, y), d.leq(c4.dual_index(y), c4.dual_index(x)));
            }
            assert_eq!(c4.dual_index(c4.supp(x)), d.supp(c4.dual_index(x)));
        }
    }

    #[test]
    fn restriction_keeps_sums() {
        let e = hs2c3();
        let a = e.find("a").unwrap();
        let r = e.restrict(&ElemSet::from_elems(4, [0, a, 3])).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r.sum(1, 1), Some(r.one()));
    }
}
