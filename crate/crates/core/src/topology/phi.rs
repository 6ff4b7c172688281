use alloc::format;
use alloc::vec::Vec;

use super::generate_topology;
use super::generated::{check_cap, full_mask, to_mask, GeneratedTopology};
use crate::error::falsified;
use crate::{Caps, Elem, ElemSet, LatticeEa, Result};

/// The functions `f_u(x) = [u <= x]` for `u ∈ 𝒰` and `g_v(x) = [x <= v]`
/// for `v ∈ 𝒱`, where `𝒰` holds the nonempty finite joins of atom
/// multiples `l·a` and `𝒱 = {v : v' ∈ 𝒰}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiFamily {
    pub u_set: Vec<Elem>,
    pub v_set: Vec<Elem>,
}

/// The function that tells two points apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiSeparator {
    F(Elem),
    G(Elem),
}

impl PhiFamily {
    pub fn f(e: LatticeEa<'_>, u: Elem, x: Elem) -> u8 {
        e.leq(u, x) as u8
    }

    pub fn g(e: LatticeEa<'_>, v: Elem, x: Elem) -> u8 {
        e.leq(x, v) as u8
    }

    /// First `f_u`, then first `g_v`, with different values on `x`, `y`.
    pub fn separator(&self, e: LatticeEa<'_>, x: Elem, y: Elem) -> Option<PhiSeparator> {
        self.u_set
            .iter()
            .find(|&&u| Self::f(e, u, x) != Self::f(e, u, y))
            .map(|&u| PhiSeparator::F(u))
            .or_else(|| self.v_set.iter().find(|&&v| Self::g(e, v, x) != Self::g(e, v, y)).map(|&v| PhiSeparator::G(v)))
    }

    /// Preimages of `1` and `0` under every function, as element sets.
    pub fn preimages(&self, e: LatticeEa<'_>) -> Vec<ElemSet> {
        let mut out = Vec::new();
        for &u in &self.u_set {
            let s = e.poset().up(u).clone();
            out.push(s.complement());
            out.push(s);
        }
        for &v in &self.v_set {
            let s = e.poset().down(v).clone();
            out.push(s.complement());
            out.push(s);
        }
        out
    }
}

/// Builds the family and checks that it separates every pair of points.
pub fn phi_eval(e: LatticeEa<'_>) -> Result<PhiFamily> {
    let n = e.len();
    let mut in_u = ElemSet::empty(n);
    let mut u_set: Vec<Elem> = Vec::new();
    for &a in e.atoms() {
        for l in 1..=e.n_of(a) {
            let m = e.multiple(a, l).expect("l <= n_a");
            if !in_u.contains(m) {
                in_u.insert(m);
                u_set.push(m);
            }
        }
    }
    let mut i = 0;
    while i < u_set.len() {
        for j in 0..i {
            let m = e.join(u_set[i], u_set[j]);
            if !in_u.contains(m) {
                in_u.insert(m);
                u_set.push(m);
            }
        }
        i += 1;
    }
    u_set.sort_unstable();
    let mut v_set: Vec<Elem> = u_set.iter().map(|&u| e.supp(u)).collect();
    v_set.sort_unstable();
    let family = PhiFamily { u_set, v_set };
    for x in 0..n {
        for y in x + 1..n {
            if family.separator(e, x, y).is_none() {
                return Err(falsified("the functions f_u, g_v separate points", format!("({x}, {y})")));
            }
        }
    }
    Ok(family)
}

/// Sizes of the three closed-set families and whether they coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyAgreement {
    /// Closed sets of the interval topology.
    pub interval: usize,
    /// Closed sets of the topology generated by the `{0,1}`-valued
    /// functions of [`PhiFamily`].
    pub phi: usize,
    /// `2^n`: the order topology of a finite poset is discrete.
    pub order: usize,
    pub agree: bool,
}

/// Interval topology, order topology and the `Φ` topology, compared as
/// explicit families. Above the topology cap this returns the cap error;
/// callers fall back to [`phi_eval`], which checks separation pair by pair.
pub fn topologies_agree(e: LatticeEa<'_>, caps: &Caps) -> Result<TopologyAgreement> {
    check_cap(e.len(), caps)?;
    let n = e.len();
    let interval = generate_topology(e, caps)?;
    let family = phi_eval(e)?;
    let phi = GeneratedTopology::from_subbasis(n, family.preimages(e).iter().map(to_mask));
    // the discrete family is every mask 0..=full
    let order_count = full_mask(n) as usize + 1;
    let discrete_agrees = |t: &GeneratedTopology| t.closed.len() == order_count;
    Ok(TopologyAgreement {
        interval: interval.closed.len(),
        phi: phi.closed.len(),
        order: order_count,
        agree: interval.closed == phi.closed && discrete_agrees(&interval),
    })
}
