use alloc::vec;
use alloc::vec::Vec;

use crate::order::Poset;
use crate::{Caps, Elem, ElemSet, Error, LatticeEa, Result};

/// Bitmask families need one bit per element.
const MASK_BITS: usize = 24;

/// An explicit topology given by its closed sets, as bitmasks over the
/// carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedTopology {
    pub n: usize,
    /// All closed sets, sorted by mask value.
    pub closed: Vec<u64>,
    pub is_discrete: bool,
    /// Checked through minimal open neighbourhoods: the smallest open sets
    /// around two distinct points never meet.
    pub is_hausdorff_witnessed: bool,
}

impl GeneratedTopology {
    pub(crate) fn from_subbasis(n: usize, subbasis: impl IntoIterator<Item = u64>) -> Self {
        let closed = closure(n, subbasis);
        let full = full_mask(n);
        let is_discrete = closed.len() == 1usize << n;
        let minimal_open: Vec<u64> = (0..n)
            .map(|x| {
                let outside = closed.iter().filter(|&&c| c >> x & 1 == 0).fold(0, |acc, &c| acc | c);
                full & !outside
            })
            .collect();
        let is_hausdorff_witnessed = (0..n).all(|x| (x + 1..n).all(|y| minimal_open[x] & minimal_open[y] == 0));
        GeneratedTopology { n, closed, is_discrete, is_hausdorff_witnessed }
    }

    pub fn is_closed(&self, set: &ElemSet) -> bool {
        self.closed.binary_search(&to_mask(set)).is_ok()
    }

    pub fn is_open(&self, set: &ElemSet) -> bool {
        self.is_closed(&set.complement())
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn to_mask(set: &ElemSet) -> u64 {
    set.iter().fold(0, |acc, x| acc | 1 << x)
}

pub(crate) fn check_cap(n: usize, caps: &Caps) -> Result<()> {
    Caps::check(caps.topology.min(MASK_BITS), "explicit topology", n)
}

/// Closed sets generated by a closed subbasis: all finite unions of
/// subbasis members, then all intersections of those, plus `∅` and `E`.
fn closure(n: usize, subbasis: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut seen = vec![false; 1usize << n];
    let mut unions = vec![0u64];
    seen[0] = true;
    for g in subbasis {
        for i in 0..unions.len() {
            let u = unions[i] | g;
            if !seen[u as usize] {
                seen[u as usize] = true;
                unions.push(u);
            }
        }
    }
    let full = full_mask(n);
    let mut family = unions.clone();
    if !seen[full as usize] {
        seen[full as usize] = true;
        family.push(full);
    }
    for &g in &unions {
        for i in 0..family.len() {
            let s = family[i] & g;
            if !seen[s as usize] {
                seen[s as usize] = true;
                family.push(s);
            }
        }
    }
    family.sort_unstable();
    family
}

fn interval_masks(poset: &Poset) -> Vec<u64> {
    let n = poset.len();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| poset.leq(a, b))
        .map(|(a, b)| to_mask(&poset.up(a).intersection(poset.down(b))))
        .collect()
}

/// The interval topology: closed intervals as a closed subbasis.
pub fn generate_topology(e: LatticeEa<'_>, caps: &Caps) -> Result<GeneratedTopology> {
    check_cap(e.len(), caps)?;
    Ok(GeneratedTopology::from_subbasis(e.len(), interval_masks(e.poset())))
}

/// Compares the interval topology of the sublattice `f` (as a lattice in
/// its own right) with the trace of the interval topology of `E` on `f`.
pub fn subspace_topology_check(e: LatticeEa<'_>, f: &ElemSet, caps: &Caps) -> Result<bool> {
    if f.is_empty() {
        return Err(Error::InvalidArgument("empty subset".into()));
    }
    let closed_under = f.iter().all(|a| f.iter().all(|b| f.contains(e.meet(a, b)) && f.contains(e.join(a, b))));
    if !closed_under {
        return Err(Error::InvalidArgument("subset is not a sublattice".into()));
    }
    let whole = generate_topology(e, caps)?;
    let members: Vec<Elem> = f.to_vec();
    let own = GeneratedTopology::from_subbasis(members.len(), interval_masks(&e.poset().restrict(&members)));
    let compress = |mask: u64| -> u64 { members.iter().enumerate().fold(0, |acc, (i, &m)| acc | (mask >> m & 1) << i) };
    let mut trace: Vec<u64> = whole.closed.iter().map(|&c| compress(c)).collect();
    trace.sort_unstable();
    trace.dedup();
    Ok(trace == own.closed)
}
