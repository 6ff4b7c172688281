use alloc::format;
use alloc::vec::Vec;

use crate::error::falsified;
use crate::{Elem, Error, LatticeEa, Result};

/// Witnesses for one atom `a` and level `l`: a list of `(c, j)` such that
/// `x ≰ (l·a)'` implies `j·c <= x` for some listed pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomWitnesses {
    pub atom: Elem,
    pub level: usize,
    pub witnesses: Vec<(Elem, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AOReport {
    /// `(a, A_a)` with `A_a = {atoms b : b ≰ a'}`, atoms in index order.
    pub per_atom: Vec<(Elem, Vec<Elem>)>,
    /// Every `A_a` is finite, which always holds for finite carriers.
    pub is_almost_orthogonal: bool,
    /// One entry per atom `a` and `1 <= l <= n_a`.
    pub witnesses: Vec<AtomWitnesses>,
}

impl AOReport {
    pub fn a_set(&self, atom: Elem) -> Option<&[Elem]> {
        self.per_atom.iter().find(|(a, _)| *a == atom).map(|(_, s)| s.as_slice())
    }

    pub fn witnesses_for(&self, atom: Elem, level: usize) -> Option<&AtomWitnesses> {
        self.witnesses.iter().find(|w| w.atom == atom && w.level == level)
    }
}

/// The sets `A_a` and, for every atom `a` and level `l`, the witness list:
/// the atoms of `A_a` with `j = 1`, plus `a` itself with `j = n_a - l + 1`
/// when `a` is not sharp.
///
/// Each list is checked to cover (every `x ≰ (l·a)'` lies above some
/// `j·c`), to consist of elements `j·c ≰ (l·a)'`, and to need every entry
/// from `A_a` (dropping one breaks the covering).
pub fn almost_orthogonality(e: LatticeEa<'_>) -> Result<AOReport> {
    let per_atom: Vec<(Elem, Vec<Elem>)> = e
        .atoms()
        .iter()
        .map(|&a| {
            let sa = e.supp(a);
            (a, e.atoms().iter().copied().filter(|&b| !e.leq(b, sa)).collect())
        })
        .collect();
    let mut witnesses = Vec::new();
    for (a, set) in &per_atom {
        for l in 1..=e.n_of(*a) {
            witnesses.push(build(e, *a, l, set)?);
        }
    }
    Ok(AOReport { per_atom, is_almost_orthogonal: true, witnesses })
}

/// The verified witness list for a single atom and level.
pub fn atom_witnesses(e: LatticeEa<'_>, a: Elem, l: usize) -> Result<AtomWitnesses> {
    if !e.is_atom(a) {
        return Err(Error::InvalidArgument(format!("element {a} is not an atom")));
    }
    if l == 0 || l > e.n_of(a) {
        return Err(Error::InvalidArgument(format!("level {l} is outside 1..={}", e.n_of(a))));
    }
    let sa = e.supp(a);
    let set: Vec<Elem> = e.atoms().iter().copied().filter(|&b| !e.leq(b, sa)).collect();
    build(e, a, l, &set)
}

fn build(e: LatticeEa<'_>, a: Elem, l: usize, set: &[Elem]) -> Result<AtomWitnesses> {
    let na = e.n_of(a);
    let mut list: Vec<(Elem, usize)> = set.iter().map(|&b| (b, 1)).collect();
    if e.meet(a, e.supp(a)) != 0 {
        list.push((a, na - l + 1));
    }
    verify(e, a, l, &list)?;
    Ok(AtomWitnesses { atom: a, level: l, witnesses: list })
}

fn verify(e: LatticeEa<'_>, a: Elem, l: usize, list: &[(Elem, usize)]) -> Result<()> {
    let bound = e.supp(e.multiple(a, l).expect("l <= n_a"));
    let elems: Vec<Elem> = list.iter().map(|&(c, j)| e.multiple(c, j).expect("j <= n_c")).collect();
    let witness = || format!("atom {a}, level {l}, list {list:?}");
    if elems.iter().any(|&m| e.leq(m, bound)) {
        return Err(falsified("witness multiples lie outside [0, (la)']", witness()));
    }
    // for each x outside [0, (la)'], which witnesses lie below it
    let mut sole = alloc::vec![false; elems.len()];
    for x in e.elems().filter(|&x| !e.leq(x, bound)) {
        let below: Vec<usize> = (0..elems.len()).filter(|&i| e.leq(elems[i], x)).collect();
        match below.as_slice() {
            [] => return Err(falsified("the witness list covers E \\ [0, (la)']", format!("{}, x = {x}", witness()))),
            [i] => sole[*i] = true,
            _ => {}
        }
    }
    // the entry for `a` itself when `a` is unsharp completes the covering in
    // general but can be redundant, as in glued 3-chains; the `A_a` entries
    // never are
    let self_entry = (e.meet(a, e.supp(a)) != 0).then(|| list.len() - 1);
    if let Some(i) = (0..list.len()).find(|&i| !sole[i] && Some(i) != self_entry) {
        return Err(falsified("the witness list is minimal", format!("{}, redundant entry {i}", witness())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{boolean, chain, hsum_of_chains};

    #[test]
    fn boolean_atoms_are_orthogonal() {
        let b4 = boolean(2).unwrap();
        let r = almost_orthogonality(b4.as_lattice().unwrap()).unwrap();
        // a sharp atom a has a ≰ a' itself, so A_a = {a}
        assert_eq!(r.a_set(1), Some(&[1][..]));
        assert_eq!(r.witnesses_for(1, 1).unwrap().witnesses, [(1, 1)]);
    }

    #[test]
    fn glued_chains() {
        let hs = hsum_of_chains(&[3, 3]).unwrap();
        let r = almost_orthogonality(hs.as_lattice().unwrap()).unwrap();
        assert_eq!(r.a_set(1), Some(&[2][..]));
        assert_eq!(r.a_set(2), Some(&[1][..]));
        assert_eq!(r.witnesses_for(1, 1).unwrap().witnesses, [(2, 1), (1, 2)]);
        assert_eq!(r.witnesses.len(), 4);
    }

    #[test]
    fn chain_atom() {
        let c3 = chain(3).unwrap();
        let r = almost_orthogonality(c3.as_lattice().unwrap()).unwrap();
        assert_eq!(r.a_set(1), Some(&[][..]));
        assert_eq!(r.witnesses_for(1, 1).unwrap().witnesses, [(1, 2)]);
        assert_eq!(r.witnesses_for(1, 2).unwrap().witnesses, [(1, 1)]);
    }
}
