use crate::{Caps, Elem, ElemSet, LatticeEa, Result};

/// Literal check of compactness: for every `D ⊆ E` with `u <= ⋁D`, some
/// finite `F ⊆ D` has `u <= ⋁F`. The witness `F` is found by shrinking `D`
/// one element at a time while the bound survives.
///
/// Exhaustive over all `2^n` subsets, so the carrier is capped. On finite
/// lattices every element is compact.
pub fn is_compact_element(e: LatticeEa<'_>, u: Elem, caps: &Caps) -> Result<bool> {
    scan(e, u, caps, |d| e.leq(u, join_of(e, d)))
}

/// Literal check of strong compactness: for every `D ⊆ E` such that `u`
/// lies below every upper bound of `D`, some finite `F ⊆ D` has
/// `u <= ⋁F`.
pub fn is_s_compact(e: LatticeEa<'_>, u: Elem, caps: &Caps) -> Result<bool> {
    scan(e, u, caps, |d| e.poset().upper_bounds(d).iter().all(|c| e.leq(u, c)))
}

fn join_of(e: LatticeEa<'_>, d: &ElemSet) -> Elem {
    e.join_all(d.iter())
}

fn scan(e: LatticeEa<'_>, u: Elem, caps: &Caps, premise: impl Fn(&ElemSet) -> bool) -> Result<bool> {
    let n = e.len();
    Caps::check(caps.compact, "compactness subset scan", n)?;
    for mask in 0u64..(1u64 << n) {
        let d = ElemSet::from_elems(n, (0..n).filter(|i| mask >> i & 1 == 1));
        if premise(&d) && !finite_subjoin_exists(e, u, d) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn finite_subjoin_exists(e: LatticeEa<'_>, u: Elem, mut f: ElemSet) -> bool {
    if !e.leq(u, join_of(e, &f)) {
        return false;
    }
    for x in f.to_vec() {
        f.remove(x);
        if !e.leq(u, join_of(e, &f)) {
            f.insert(x);
        }
    }
    true
}
