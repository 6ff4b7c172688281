//! Interval topology at finite scale.
//!
//! On a finite lattice every singleton `[x, x]` is an interval, so the
//! interval topology `τ_i` is discrete, and so is the order topology `τ_o`
//! (an order-convergent net on a finite poset is eventually constant).
//! What is interesting at this scale are the explicit witnesses: the
//! clopen partitions, separating interval pairs and block-wise covers that
//! make the topology Hausdorff on almost orthogonal or block-finite
//! algebras. Each witness is machine-checked before it is returned.
//!
//! Explicit closed-set families are exponential in the carrier and only
//! generated below [`Caps::topology`](crate::Caps::topology).

mod generated;
mod phi;
mod witness;

use crate::{EffectAlgebra, Elem, ElemSet};

pub use generated::{generate_topology, subspace_topology_check, GeneratedTopology};
pub use phi::{phi_eval, topologies_agree, PhiFamily, PhiSeparator, TopologyAgreement};
pub use witness::{
    ao_partition, blockfinite_cover, clopen_check, separate, ClopenWitness, CoverCase, CoverWitness, PartitionWitness,
    SeparationWitness, Witnesser,
};

/// A closed interval `[lo, hi] = {x : lo <= x <= hi}` with `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Elem,
    pub hi: Elem,
    pub members: ElemSet,
}

impl Interval {
    /// `None` when `lo ≰ hi`, that is, when the interval is empty.
    pub fn new(e: &EffectAlgebra, lo: Elem, hi: Elem) -> Option<Interval> {
        e.leq(lo, hi).then(|| Interval { lo, hi, members: e.poset().up(lo).intersection(e.poset().down(hi)) })
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }
}

/// Union of the members of `intervals`.
pub fn union_of<'a>(n: usize, intervals: impl IntoIterator<Item = &'a Interval>) -> ElemSet {
    let mut u = ElemSet::empty(n);
    for i in intervals {
        u.union_with(&i.members);
    }
    u
}
