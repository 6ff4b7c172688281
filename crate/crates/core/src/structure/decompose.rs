use alloc::format;
use alloc::vec::Vec;

use crate::error::falsified;
use crate::{Elem, LatticeEa, Result};

/// `x = ⊕ k_α·a_α = ⋁ k_α·a_α` over mutually distinct atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub target: Elem,
    /// `(atom, k)` pairs in the order they were chosen.
    pub terms: Vec<(Elem, usize)>,
}

impl Decomposition {
    /// The elements `k·a` of the terms.
    pub fn multiples<'a>(&'a self, e: LatticeEa<'a>) -> impl Iterator<Item = Elem> + 'a {
        self.terms.iter().map(move |&(a, k)| e.multiple(a, k).expect("k <= ord(a)"))
    }

    /// `⊕` of the terms, if defined.
    pub fn oplus(&self, e: LatticeEa<'_>) -> Option<Elem> {
        self.multiples(e).try_fold(0, |acc, m| e.sum(acc, m))
    }

    pub fn join(&self, e: LatticeEa<'_>) -> Elem {
        e.join_all(self.multiples(e))
    }

    /// Every `k` equals `ord` of its atom.
    pub fn all_full(&self, e: LatticeEa<'_>) -> bool {
        self.terms.iter().all(|&(a, k)| k == e.n_of(a))
    }
}

/// Greedy atomic decomposition: take the least-index atom below the
/// residual with its largest multiple below the residual, subtract, repeat.
///
/// The result is checked to reconstruct `x` by `⊕` and by join. If the
/// greedy choice fails the join check, an exhaustive search over
/// multiplicity assignments takes over. The sharpness criterion (`x` sharp
/// iff every `k` is the order of its atom) is cross-checked too.
pub fn decompose(e: LatticeEa<'_>, x: Elem) -> Result<Decomposition> {
    if x == 0 {
        return Ok(Decomposition { target: 0, terms: Vec::new() });
    }
    let mut d = greedy(e, x);
    if d.oplus(e) != Some(x) || d.join(e) != x {
        d = exhaustive(e, x)
            .ok_or_else(|| falsified("every element is a sum and join of atom multiples", format!("x = {x}")))?;
    }
    let sharp = e.meet(x, e.supp(x)) == 0;
    if sharp != d.all_full(e) {
        return Err(falsified(
            "x is sharp iff every multiplicity is the order of its atom",
            format!("x = {x}, terms {:?}", d.terms),
        ));
    }
    Ok(d)
}

fn greedy(e: LatticeEa<'_>, x: Elem) -> Decomposition {
    let mut terms = Vec::new();
    let mut residual = x;
    while residual != 0 {
        let Some(&a) = e.atoms().iter().find(|&&a| e.leq(a, residual)) else {
            break;
        };
        let k = (1..=e.n_of(a))
            .take_while(|&k| e.multiple(a, k).is_some_and(|m| e.leq(m, residual)))
            .last()
            .expect("a <= residual");
        terms.push((a, k));
        residual = e.diff(residual, e.multiple(a, k).expect("k <= ord(a)"));
    }
    Decomposition { target: x, terms }
}

/// Depth-first over atoms in index order, larger multiplicities first.
fn exhaustive(e: LatticeEa<'_>, x: Elem) -> Option<Decomposition> {
    fn go(e: LatticeEa<'_>, x: Elem, i: usize, acc: Elem, terms: &mut Vec<(Elem, usize)>) -> bool {
        if i == e.atoms().len() {
            let d = Decomposition { target: x, terms: terms.clone() };
            return acc == x && d.join(e) == x;
        }
        let a = e.atoms()[i];
        for k in (0..=e.n_of(a)).rev() {
            let m = e.multiple(a, k).expect("k <= ord(a)");
            let Some(next) = e.sum(acc, m) else { continue };
            if !e.leq(next, x) {
                continue;
            }
            if k > 0 {
                terms.push((a, k));
            }
            if go(e, x, i + 1, next, terms) {
                return true;
            }
            if k > 0 {
                terms.pop();
            }
        }
        false
    }
    let mut terms = Vec::new();
    go(e, x, 0, 0, &mut terms).then_some(Decomposition { target: x, terms })
}
