//! Check suites: exhaustive checks of the proved finite-scale claims on
//! one instance. Each suite re-verifies the witnesses it receives rather
//! than trusting the producing function.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::completion::{closedness, default_targets, dm_complete, mc_check};
use crate::states::{extend_state, extreme_states, extreme_states_on, find_state, is_state};
use crate::structure::{almost_orthogonality, blocks, decompose, is_compact_element, sharp_elements};
use crate::topology::{phi_eval, topologies_agree, union_of, Witnesser};
use crate::{Caps, EffectAlgebra, Error, LatticeEa, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    /// Blocks, sharp elements, almost-orthogonality witness lists and
    /// compactness of every element.
    Structure,
    /// Atom decompositions reconstruct by `⊕` and by join; full
    /// multiplicities exactly on sharp elements.
    Decomposition,
    /// `x∧y = 0, x <= y'` iff `kx∧ly = 0, kx <= (ly)'`.
    Multiples,
    /// Clopen partitions at every atom and level, and clopen complements
    /// of every `[kb, (la)']`.
    Partitions,
    /// Disjoint interval neighbourhoods for every pair.
    Separation,
    /// Block-wise interval covers for every pair `x ≰ y`.
    Covers,
    /// `Φ` separates points; below the topology cap the interval, order
    /// and `Φ` topologies coincide.
    Topologies,
    /// Returned states are exact states.
    States,
    /// Every extreme state of `S(E)` extends to `E`.
    StateExtension,
    /// The completion is the algebra itself with atoms preserved, and the
    /// three closedness conditions agree on the default subsets.
    Completion,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Structure,
        Suite::Decomposition,
        Suite::Multiples,
        Suite::Partitions,
        Suite::Separation,
        Suite::Covers,
        Suite::Topologies,
        Suite::States,
        Suite::StateExtension,
        Suite::Completion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Decomposition => "decomposition",
            Suite::Multiples => "multiples",
            Suite::Partitions => "partitions",
            Suite::Separation => "separation",
            Suite::Covers => "covers",
            Suite::Topologies => "topologies",
            Suite::States => "states",
            Suite::StateExtension => "state-extension",
            Suite::Completion => "completion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// A falsification, with the claim and a witness.
    Fail(String),
    /// A brute-force cap stopped the check.
    Skipped(String),
    /// The suite needs a lattice.
    NotApplicable(String),
}

impl Outcome {
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail(_) => "FAIL",
            Outcome::Skipped(_) => "SKIPPED(cap)",
            Outcome::NotApplicable(_) => "N/A",
        }
    }

    pub fn detail(&self) -> Option<&str> {
        match self {
            Outcome::Pass => None,
            Outcome::Fail(s) | Outcome::Skipped(s) | Outcome::NotApplicable(s) => Some(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub suite: Suite,
    pub outcome: Outcome,
    /// Individual claims checked.
    pub checked: usize,
    /// Parts left out because of a cap; the rest still ran.
    pub partial: Option<String>,
}

struct Run {
    checked: usize,
    partial: Option<String>,
}

impl Run {
    fn claim(&mut self, holds: bool, claim: &'static str, witness: impl FnOnce() -> String) -> Result<()> {
        self.checked += 1;
        if holds {
            Ok(())
        } else {
            Err(Error::Falsified { claim, witness: witness() })
        }
    }

    /// Runs `f`; a cap error marks the run partial instead of failing it.
    fn capped<T>(&mut self, r: Result<T>) -> Result<Option<T>> {
        match r {
            Err(e) if e.is_cap() => {
                self.partial = Some(format!("{e}"));
                Ok(None)
            }
            other => other.map(Some),
        }
    }
}

/// Runs one suite.
pub fn run_suite(e: &EffectAlgebra, suite: Suite, caps: &Caps) -> SuiteResult {
    let mut run = Run { checked: 0, partial: None };
    let result = match e.as_lattice() {
        Err(_) if suite != Suite::States => {
            return SuiteResult {
                suite,
                outcome: Outcome::NotApplicable("the order is not a lattice".into()),
                checked: 0,
                partial: None,
            }
        }
        Err(_) => states(e, caps, &mut run),
        Ok(l) => match suite {
            Suite::Structure => structure(l, caps, &mut run),
            Suite::Decomposition => decomposition(l, &mut run),
            Suite::Multiples => multiples(l, &mut run),
            Suite::Partitions => partitions(l, &mut run),
            Suite::Separation => separation(l, &mut run),
            Suite::Covers => covers(l, &mut run),
            Suite::Topologies => topologies(l, caps, &mut run),
            Suite::States => states(e, caps, &mut run),
            Suite::StateExtension => state_extension(l, caps, &mut run),
            Suite::Completion => completion(l, &mut run),
        },
    };
    let outcome = match result {
        Ok(()) => Outcome::Pass,
        Err(err) if err.is_cap() => Outcome::Skipped(format!("{err}")),
        Err(err) => Outcome::Fail(format!("{err}")),
    };
    SuiteResult { suite, outcome, checked: run.checked, partial: run.partial }
}

/// Runs every suite in order.
pub fn check_all(e: &EffectAlgebra, caps: &Caps) -> Vec<SuiteResult> {
    Suite::ALL.iter().map(|&s| run_suite(e, s, caps)).collect()
}

fn structure(e: LatticeEa<'_>, caps: &Caps, run: &mut Run) -> Result<()> {
    let n = e.len();
    let d = blocks(e)?;
    let mut union = crate::ElemSet::empty(n);
    for b in &d.blocks {
        union.union_with(b);
        run.claim(
            e.sub_effect_algebra(b).is_sub_lattice_effect_algebra(),
            "a block is a sub-lattice effect algebra",
            || format!("{:?}", b.to_vec()),
        )?;
        for x in b.iter().filter(|&x| x != 0) {
            let atom_of_block = b.iter().filter(|&y| y != 0 && e.leq(y, x)).count() == 1;
            if atom_of_block {
                run.claim(e.is_atom(x), "an atom of a block is an atom of E", || format!("{x}"))?;
            }
        }
    }
    run.claim(union.is_full(), "the blocks cover E", || format!("{:?}", union.complement().to_vec()))?;
    for (set, what) in [(&d.b_e, "B(E) is a sub-effect algebra"), (&d.c_e, "C(E) is a sub-effect algebra")] {
        run.claim(e.sub_effect_algebra(set).is_sub, what, || format!("{:?}", set.to_vec()))?;
    }
    let s = sharp_elements(e)?;
    for x in s.iter() {
        for y in s.iter().filter(|&y| e.leq(x, y)) {
            // orthomodular law inside S(E)
            let back = e.join(x, e.meet(e.supp(x), y));
            run.claim(back == y, "S(E) is orthomodular", || format!("({x}, {y})"))?;
        }
    }
    let ao = almost_orthogonality(e)?;
    for w in &ao.witnesses {
        let covers = |list: &[(usize, usize)]| {
            let la_c = e.supp(e.multiple(w.atom, w.level).expect("level <= n_a"));
            e.elems()
                .all(|x| e.leq(x, la_c) || list.iter().any(|&(c, j)| e.leq(e.multiple(c, j).expect("j <= n_c"), x)))
        };
        run.claim(covers(&w.witnesses), "a witness list covers every x ≰ (la)'", || {
            format!("atom {}, level {}", w.atom, w.level)
        })?;
        let unsharp = e.meet(w.atom, e.supp(w.atom)) != 0;
        let necessary = w.witnesses.len() - usize::from(unsharp);
        for i in 0..necessary {
            let mut shorter = w.witnesses.clone();
            shorter.remove(i);
            run.claim(!covers(&shorter), "every A_a entry of a witness list is needed", || {
                format!("atom {}, level {}, entry {i}", w.atom, w.level)
            })?;
        }
    }
    if let Some(compact) =
        run.capped(e.elems().map(|u| is_compact_element(e, u, caps)).collect::<Result<Vec<bool>>>())?
    {
        for (u, &c) in compact.iter().enumerate() {
            run.claim(c, "every element of a finite lattice is compact", || format!("{u}"))?;
        }
        for c in e.elems() {
            for d in e.elems().filter(|&d| e.leq(c, e.supp(d))) {
                let s = e.sum(c, d).expect("c <= d'");
                run.claim(compact[s], "c ⊕ d is compact for compact c <= d'", || format!("({c}, {d})"))?;
            }
        }
    }
    Ok(())
}

fn decomposition(e: LatticeEa<'_>, run: &mut Run) -> Result<()> {
    for x in e.elems().filter(|&x| x != 0) {
        let d = decompose(e, x)?;
        run.claim(d.oplus(e) == Some(x), "the ⊕ of the decomposition terms is x", || format!("{x}"))?;
        run.claim(d.join(e) == x, "the join of the decomposition terms is x", || format!("{x}"))?;
        let sharp = e.meet(x, e.supp(x)) == 0;
        run.claim(d.all_full(e) == sharp, "full multiplicities exactly on sharp elements", || format!("{x}"))?;
    }
    Ok(())
}

fn multiples(e: LatticeEa<'_>, run: &mut Run) -> Result<()> {
    let ord = |x| e.ord(x).finite().unwrap_or(0);
    for x in e.elems().filter(|&x| x != 0) {
        for y in e.elems().filter(|&y| y != 0) {
            let base = e.meet(x, y) == 0 && e.leq(x, e.supp(y));
            for k in 1..=ord(x) {
                let kx = e.multiple(x, k).expect("k <= ord x");
                for l in 1..=ord(y) {
                    let ly = e.multiple(y, l).expect("l <= ord y");
                    let scaled = e.meet(kx, ly) == 0 && e.leq(kx, e.supp(ly));
                    run.claim(base == scaled, "orthogonality of x, y passes to kx, ly and back", || {
                        format!("x={x}, y={y}, k={k}, l={l}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn partitions(e: LatticeEa<'_>, run: &mut Run) -> Result<()> {
    let w = Witnesser::new(e)?;
    let n = e.len();
    let levels: Vec<(usize, usize)> = e.atoms().iter().flat_map(|&a| (1..=e.n_of(a)).map(move |l| (a, l))).collect();
    for &(a, l) in &levels {
        let p = w.partition(a, l)?;
        let tail = union_of(n, &p.tail);
        run.claim(p.head.members.is_disjoint(&tail), "the head is disjoint from the tail", || {
            format!("atom {a}, level {l}")
        })?;
        run.claim(p.head.members.union(&tail).is_full(), "head and tail cover E", || format!("atom {a}, level {l}"))?;
        let la = e.multiple(a, l).expect("l <= n_a");
        run.claim(p.head.lo == 0 && p.head.hi == e.supp(la), "the head is [0, (la)']", || {
            format!("atom {a}, level {l}")
        })?;
    }
    for &(b, k) in &levels {
        for &(a, l) in &levels {
            let c = w.clopen_check(b, k, a, l)?;
            let rest = union_of(n, &c.complement);
            let inside = c.interval.as_ref().map_or(crate::ElemSet::empty(n), |iv| iv.members.clone());
            let ok = inside.is_disjoint(&rest) && inside.union(&rest).is_full();
            run.claim(ok, "the complement of [kb, (la)'] is a finite union of intervals", || {
                format!("b={b}, k={k}, a={a}, l={l}")
            })?;
        }
    }
    Ok(())
}

fn separation(e: LatticeEa<'_>, run: &mut Run) -> Result<()> {
    let w = Witnesser::new(e)?;
    for x in e.elems() {
        for y in e.elems().filter(|&y| y != x) {
            let s = w.separate(x, y)?;
            let (px, py) = if s.swapped { (y, x) } else { (x, y) };
            let ok = (s.x, s.y) == (px, py)
                && s.up.lo == e.multiple(s.atom_b, s.k).expect("k <= n_b")
                && s.up.hi == e.one()
                && s.down.lo == 0
                && s.down.hi == e.supp(e.multiple(s.atom_a, s.l).expect("l <= n_a"))
                && s.up.contains(px)
                && s.down.contains(py)
                && s.up.members.is_disjoint(&s.down.members);
            run.claim(ok, "[kb, 1] and [0, (la)'] separate the pair", || format!("({x}, {y})"))?;
        }
    }
    Ok(())
}

fn covers(e: LatticeEa<'_>, run: &mut Run) -> Result<()> {
    let w = Witnesser::new(e)?;
    for x in e.elems() {
        for y in e.elems().filter(|&y| !e.leq(x, y)) {
            let c = w.blockfinite_cover(x, y)?;
            let ok = c.covered(e.len()).is_full()
                && c.per_block.len() == w.blocks().blocks.len()
                && c.per_block.iter().all(|entry| {
                    entry.j.members.is_disjoint(&entry.k.members)
                        && [&entry.j, &entry.k].iter().all(|iv| !(iv.contains(x) && iv.contains(y)))
                });
            run.claim(ok, "block intervals cover E without holding both points", || format!("({x}, {y})"))?;
        }
    }
    Ok(())
}

fn topologies(e: LatticeEa<'_>, caps: &Caps, run: &mut Run) -> Result<()> {
    let phi = phi_eval(e)?;
    for x in e.elems() {
        for y in e.elems().filter(|&y| y != x) {
            run.claim(phi.separator(e, x, y).is_some(), "Φ separates points", || format!("({x}, {y})"))?;
        }
    }
    if let Some(agreement) = run.capped(topologies_agree(e, caps))? {
        run.claim(agreement.agree, "interval, order and Φ topologies coincide", || {
            format!("{} / {} / {} closed sets", agreement.interval, agreement.order, agreement.phi)
        })?;
    }
    Ok(())
}

fn states(e: &EffectAlgebra, caps: &Caps, run: &mut Run) -> Result<()> {
    if let Some(s) = find_state(e)? {
        run.claim(is_state(e, &s.values).is_ok(), "a found state is a state", || format!("{:?}", s.values))?;
    }
    if let Some(all) = run.capped(extreme_states(e, caps))? {
        for s in all {
            run.claim(is_state(e, &s.values).is_ok(), "an extreme state is a state", || format!("{:?}", s.values))?;
        }
    }
    Ok(())
}

fn state_extension(e: LatticeEa<'_>, caps: &Caps, run: &mut Run) -> Result<()> {
    let s = sharp_elements(e)?;
    let Some(on_s) = run.capped(extreme_states_on(&e, &s, caps))? else {
        return Ok(());
    };
    for given in on_s {
        let p = extend_state(e, &s, &given)?;
        let ok = p.feasible
            && p.witness
                .as_ref()
                .is_some_and(|w| is_state(&e, &w.values).is_ok() && given.iter().all(|(x, v)| w.value(*x) == v));
        run.claim(ok, "a state on S(E) extends to E", || format!("{given:?}"))?;
    }
    Ok(())
}

fn completion(e: LatticeEa<'_>, run: &mut Run) -> Result<()> {
    let c = dm_complete(e.poset());
    run.claim(
        c.len() == e.len() && c.is_order_embedding(e.poset()),
        "the completion of a finite lattice is itself",
        || format!("{} cuts", c.len()),
    )?;
    run.claim(mc_check(&e), "the completion preserves atoms", String::new)?;
    for (name, d) in default_targets(e)? {
        let r = closedness(e, &d)?;
        run.claim(
            r.joins_closed && r.meets_closed && r.complete_sublattice,
            "default subsets are complete sublattices",
            || name,
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{boolean, chain, hsum_of_chains};

    #[test]
    fn small_instances_pass_everything() {
        let caps = Caps::default();
        for e in [chain(4).unwrap(), boolean(2).unwrap(), hsum_of_chains(&[3, 3]).unwrap()] {
            for r in check_all(&e, &caps) {
                assert_eq!(r.outcome, Outcome::Pass, "{:?} on {:?}", r.suite, e.labels());
                assert!(r.partial.is_none());
            }
        }
    }

    #[test]
    fn caps_skip_parts() {
        let caps = Caps { topology: 3, ..Caps::default() };
        let r = run_suite(&chain(5).unwrap(), Suite::Topologies, &caps);
        assert_eq!(r.outcome, Outcome::Pass);
        assert!(r.partial.is_some());
    }
}
