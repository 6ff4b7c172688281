use alloc::format;
use alloc::vec::Vec;

use super::{union_of, Interval};
use crate::error::falsified;
use crate::structure::{atom_witnesses, blocks, compatible, decompose, BlockDecomposition, Decomposition};
use crate::{EffectAlgebra, Elem, ElemSet, Error, LatticeEa, Result};

/// The clopen partition `E = [0, (la)'] ⊔ ⋃ [j·c, 1]` built from the
/// almost-orthogonality witnesses of atom `a` at level `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionWitness {
    pub atom: Elem,
    pub level: usize,
    pub head: Interval,
    /// `[j·c, 1]` for every witness `(c, j)`, then `[(n_a + 1 - l)·a, 1]`
    /// unless it is already listed.
    pub tail: Vec<Interval>,
}

/// Complement of `[kb, (la)']` as a finite union of intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClopenWitness {
    /// `None` when `kb ≰ (la)'`: the interval is empty.
    pub interval: Option<Interval>,
    /// Intervals `[0, (j·c)']` from the dual partition, then `[j·c, 1]`
    /// from the partition of `E`.
    pub complement: Vec<Interval>,
}

/// Disjoint clopen neighbourhoods `x ∈ [kb, 1]`, `y ∈ [0, (la)']`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationWitness {
    /// The pair as separated, with `x ≰ y`.
    pub x: Elem,
    pub y: Elem,
    /// The requested pair had `x <= y` and was swapped.
    pub swapped: bool,
    pub atom_b: Elem,
    pub k: usize,
    pub atom_a: Elem,
    pub l: usize,
    pub up: Interval,
    pub down: Interval,
}

/// How the intervals for one block were chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverCase {
    /// `x, y` in the block: `l·a <= x`, `l·a ≰ y`.
    Inside { atom: Elem, level: usize },
    /// `x` outside the block, `atom` in the block and incompatible with `x`.
    XOutside { atom: Elem },
    /// `y` outside the block, `atom` in the block and incompatible with `y`.
    YOutside { atom: Elem },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverEntry {
    pub block: usize,
    pub case: CoverCase,
    pub j: Interval,
    pub k: Interval,
}

/// Two intervals per block covering `E`, none holding both `x` and `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverWitness {
    pub x: Elem,
    pub y: Elem,
    pub per_block: Vec<CoverEntry>,
}

/// `[kb, 1]` with its complement `⋃ [0, m]`, obtained from a partition of
/// the dual algebra.
#[derive(Debug, Clone)]
struct UpPartition {
    atom: Elem,
    level: usize,
    up: Interval,
    complement: Vec<Interval>,
}

/// Precomputed material for witness extraction on one instance: the dual
/// algebra, every partition of `E` and of the dual, decompositions and
/// blocks. Build once, then ask for as many witnesses as needed.
#[derive(Debug, Clone)]
pub struct Witnesser<'a> {
    e: LatticeEa<'a>,
    decompositions: Vec<Decomposition>,
    partitions: Vec<PartitionWitness>,
    up_partitions: Vec<UpPartition>,
    blocks: BlockDecomposition,
}

/// Head bound and tail lower bounds of the partition for `(a, l)`, in the
/// indices of `e`.
fn raw_partition(e: LatticeEa<'_>, a: Elem, l: usize) -> Result<(Elem, Vec<Elem>)> {
    let w = atom_witnesses(e, a, l)?;
    let mut lows: Vec<Elem> = w.witnesses.iter().map(|&(c, j)| e.multiple(c, j).expect("j <= n_c")).collect();
    let last = e.multiple(a, e.n_of(a) + 1 - l).expect("1 <= l <= n_a");
    if !lows.contains(&last) {
        lows.push(last);
    }
    let head = e.supp(e.multiple(a, l).expect("l <= n_a"));
    Ok((head, lows))
}

fn check_partition(e: &EffectAlgebra, part: &Interval, rest: &[Interval], what: &'static str) -> Result<()> {
    let rest_union = union_of(e.len(), rest);
    if !part.members.is_disjoint(&rest_union) || !part.members.union(&rest_union).is_full() {
        return Err(falsified(what, format!("[{}, {}]", part.lo, part.hi)));
    }
    Ok(())
}

fn interval(e: &EffectAlgebra, lo: Elem, hi: Elem) -> Interval {
    Interval::new(e, lo, hi).expect("lo <= hi by construction")
}

/// The partition of [`PartitionWitness`], verified.
pub fn ao_partition(e: LatticeEa<'_>, a: Elem, l: usize) -> Result<PartitionWitness> {
    let (head, lows) = raw_partition(e, a, l)?;
    let w = PartitionWitness {
        atom: a,
        level: l,
        head: interval(&e, 0, head),
        tail: lows.into_iter().map(|lo| interval(&e, lo, e.one())).collect(),
    };
    check_partition(&e, &w.head, &w.tail, "[0, (la)'] and its tail partition E")?;
    Ok(w)
}

impl<'a> Witnesser<'a> {
    pub fn new(e: LatticeEa<'a>) -> Result<Self> {
        let decompositions = e.elems().map(|x| decompose(e, x)).collect::<Result<Vec<_>>>()?;
        let mut partitions = Vec::new();
        let mut up_partitions = Vec::new();
        let dual = e.dual();
        let d = dual.as_lattice().map_err(|_| falsified("the dual of a lattice is a lattice", ""))?;
        for &a in e.atoms() {
            // the dual atom is the coatom a'
            let da = e.dual_index(e.supp(a));
            for l in 1..=e.n_of(a) {
                partitions.push(ao_partition(e, a, l)?);
                let (head, lows) = raw_partition(d, da, l)?;
                let up = interval(&e, e.dual_index(head), e.one());
                if up.lo != e.multiple(a, l).expect("l <= n_a") {
                    return Err(falsified("the dual partition head is [la, 1]", format!("atom {a}, level {l}")));
                }
                let complement: Vec<Interval> = lows.into_iter().map(|m| interval(&e, 0, e.dual_index(m))).collect();
                check_partition(&e, &up, &complement, "[la, 1] and its dual tail partition E")?;
                up_partitions.push(UpPartition { atom: a, level: l, up, complement });
            }
        }
        Ok(Witnesser { e, decompositions, partitions, up_partitions, blocks: blocks(e)? })
    }

    pub fn partition(&self, a: Elem, l: usize) -> Result<&PartitionWitness> {
        self.partitions
            .iter()
            .find(|p| p.atom == a && p.level == l)
            .ok_or_else(|| Error::InvalidArgument(format!("no atom {a} with level {l}")))
    }

    fn up_partition(&self, b: Elem, k: usize) -> Result<&UpPartition> {
        self.up_partitions
            .iter()
            .find(|p| p.atom == b && p.level == k)
            .ok_or_else(|| Error::InvalidArgument(format!("no atom {b} with level {k}")))
    }

    pub fn blocks(&self) -> &BlockDecomposition {
        &self.blocks
    }

    /// Complement of `[kb, (la)']`: the dual tail of `[kb, 1]` together with
    /// the tail of `[0, (la)']`.
    pub fn clopen_check(&self, b: Elem, k: usize, a: Elem, l: usize) -> Result<ClopenWitness> {
        let e = self.e;
        let up = self.up_partition(b, k)?;
        let down = self.partition(a, l)?;
        let Some(iv) = Interval::new(&e, up.up.lo, down.head.hi) else {
            return Ok(ClopenWitness { interval: None, complement: alloc::vec![interval(&e, 0, e.one())] });
        };
        let mut complement = up.complement.clone();
        for t in &down.tail {
            if !complement.contains(t) {
                complement.push(t.clone());
            }
        }
        check_partition(&e, &iv, &complement, "[kb, (la)'] is clopen")?;
        Ok(ClopenWitness { interval: Some(iv), complement })
    }

    /// Separating neighbourhoods for `x != y`, following the constructive
    /// Hausdorff argument.
    ///
    /// After swapping so that `x ≰ y`, `kb` is the first decomposition term
    /// of `x` not below `y`, and `la` the first decomposition term of `y'`
    /// with `kb ≰ (la)'`. If either choice fails, all atoms and multiples
    /// are searched in index order, least multiplicity first.
    pub fn separate(&self, x: Elem, y: Elem) -> Result<SeparationWitness> {
        let e = self.e;
        if x == y {
            return Err(Error::InvalidArgument("cannot separate an element from itself".into()));
        }
        let (x, y, swapped) = if e.leq(x, y) { (y, x, true) } else { (x, y, false) };
        let all_multiples = || e.atoms().iter().flat_map(move |&a| (1..=e.n_of(a)).map(move |k| (a, k)));
        let mult = |(a, k): (Elem, usize)| e.multiple(a, k).expect("k <= n_a");

        let (b, k) = self.decompositions[x]
            .terms
            .iter()
            .copied()
            .find(|&t| !e.leq(mult(t), y))
            .or_else(|| all_multiples().find(|&t| e.leq(mult(t), x) && !e.leq(mult(t), y)))
            .ok_or_else(|| falsified("some atom multiple lies below x but not below y", format!("({x}, {y})")))?;
        let kb = mult((b, k));
        let yc = e.supp(y);
        let (a, l) = self.decompositions[yc]
            .terms
            .iter()
            .copied()
            .find(|&t| !e.leq(kb, e.supp(mult(t))))
            .or_else(|| all_multiples().find(|&t| e.leq(mult(t), yc) && !e.leq(kb, e.supp(mult(t)))))
            .ok_or_else(|| falsified("some atom multiple la has y <= (la)' and kb ≰ (la)'", format!("({x}, {y})")))?;

        let up = self.up_partition(b, k)?.up.clone();
        let down = self.partition(a, l)?.head.clone();
        if !up.contains(x) || !down.contains(y) || !up.members.is_disjoint(&down.members) {
            return Err(falsified("separating intervals are disjoint neighbourhoods", format!("({x}, {y})")));
        }
        Ok(SeparationWitness { x, y, swapped, atom_b: b, k, atom_a: a, l, up, down })
    }

    /// Two intervals per block that together cover `E` with no interval
    /// containing both `x` and `y`. Requires `x ≰ y`.
    pub fn blockfinite_cover(&self, x: Elem, y: Elem) -> Result<CoverWitness> {
        let e = self.e;
        if e.leq(x, y) {
            return Err(Error::InvalidArgument(format!("{x} <= {y}; a cover needs x ≰ y")));
        }
        let witness = || format!("({x}, {y})");
        let mut per_block = Vec::new();
        for (i, block) in self.blocks.blocks.iter().enumerate() {
            let block_atoms = || e.atoms().iter().copied().filter(|&a| block.contains(a));
            let incompatible = |z: Elem| block_atoms().find(|&a| !compatible(e, z, a));
            let (case, j, k) = if block.contains(x) && block.contains(y) {
                let (a, l) = block_atoms()
                    .flat_map(|a| (1..=e.n_of(a)).map(move |l| (a, l)))
                    .find(|&(a, l)| {
                        let la = e.multiple(a, l).expect("l <= n_a");
                        e.leq(la, x) && !e.leq(la, y)
                    })
                    .ok_or_else(|| falsified("an atom multiple of the block lies below x, not y", witness()))?;
                let n = e.n_of(a);
                let top = e.supp(e.multiple(a, n - l + 1).expect("1 <= l <= n_a"));
                (CoverCase::Inside { atom: a, level: l }, top, e.multiple(a, l).expect("l <= n_a"))
            } else {
                let (case, a) = if !block.contains(x) {
                    let a = incompatible(x).ok_or_else(|| {
                        falsified("an element outside a block is incompatible with one of its atoms", witness())
                    })?;
                    (CoverCase::XOutside { atom: a }, a)
                } else {
                    let a = incompatible(y).ok_or_else(|| {
                        falsified("an element outside a block is incompatible with one of its atoms", witness())
                    })?;
                    (CoverCase::YOutside { atom: a }, a)
                };
                (case, e.supp(a), e.multiple(a, e.n_of(a)).expect("n_a"))
            };
            let j = interval(&e, 0, j);
            let k = interval(&e, k, e.one());
            if !j.members.is_disjoint(&k.members) {
                return Err(falsified(
                    "the two intervals of a block are disjoint",
                    format!("{}, block {i}", witness()),
                ));
            }
            if [&j, &k].iter().any(|iv| iv.contains(x) && iv.contains(y)) {
                return Err(falsified("no cover interval contains both points", format!("{}, block {i}", witness())));
            }
            per_block.push(CoverEntry { block: i, case, j, k });
        }
        let covered = union_of(e.len(), per_block.iter().flat_map(|c| [&c.j, &c.k]));
        if !covered.is_full() {
            return Err(falsified("the block intervals cover E", witness()));
        }
        Ok(CoverWitness { x, y, per_block })
    }
}

/// One-off [`Witnesser::clopen_check`].
pub fn clopen_check(e: LatticeEa<'_>, b: Elem, k: usize, a: Elem, l: usize) -> Result<ClopenWitness> {
    Witnesser::new(e)?.clopen_check(b, k, a, l)
}

/// One-off [`Witnesser::separate`].
pub fn separate(e: LatticeEa<'_>, x: Elem, y: Elem) -> Result<SeparationWitness> {
    Witnesser::new(e)?.separate(x, y)
}

/// One-off [`Witnesser::blockfinite_cover`].
pub fn blockfinite_cover(e: LatticeEa<'_>, x: Elem, y: Elem) -> Result<CoverWitness> {
    Witnesser::new(e)?.blockfinite_cover(x, y)
}

impl CoverWitness {
    /// All elements covered by the listed intervals.
    pub fn covered(&self, n: usize) -> ElemSet {
        union_of(n, self.per_block.iter().flat_map(|c| [&c.j, &c.k]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{boolean, chain, horizontal_sum, hsum_of_chains};

    fn bounds(iv: &Interval) -> (Elem, Elem) {
        (iv.lo, iv.hi)
    }

    #[test]
    fn partition_examples() {
        let hs = hsum_of_chains(&[3, 3]).unwrap();
        let l = hs.as_lattice().unwrap();
        let p = ao_partition(l, 1, 1).unwrap();
        assert_eq!(p.head.members.to_vec(), [0, 1]);
        let tails: Vec<_> = p.tail.iter().map(|t| t.members.to_vec()).collect();
        assert_eq!(tails, [alloc::vec![2, 3], alloc::vec![3]]);

        let b4 = boolean(2).unwrap();
        let p = ao_partition(b4.as_lattice().unwrap(), 1, 1).unwrap();
        assert_eq!(bounds(&p.head), (0, 2));
        assert_eq!(p.tail.iter().map(bounds).collect::<Vec<_>>(), [(1, 3)]);

        let c3 = chain(3).unwrap();
        let p = ao_partition(c3.as_lattice().unwrap(), 1, 2).unwrap();
        assert_eq!(p.head.members.to_vec(), [0]);
        assert_eq!(p.tail.iter().map(bounds).collect::<Vec<_>>(), [(1, 2)]);
    }

    #[test]
    fn clopen_examples() {
        let hs = hsum_of_chains(&[3, 3]).unwrap();
        let w = clopen_check(hs.as_lattice().unwrap(), 1, 1, 1, 1).unwrap();
        assert_eq!(w.interval.unwrap().members.to_vec(), [1]);
        assert_eq!(union_of(4, &w.complement).to_vec(), [0, 2, 3]);

        let b4 = boolean(2).unwrap();
        let w = clopen_check(b4.as_lattice().unwrap(), 1, 1, 2, 1).unwrap();
        assert_eq!(bounds(w.interval.as_ref().unwrap()), (1, 1));

        // [q, (1·q)'] = [q, p] is empty
        let w = clopen_check(b4.as_lattice().unwrap(), 2, 1, 2, 1).unwrap();
        assert!(w.interval.is_none());
        assert_eq!(w.complement.len(), 1);
    }

    #[test]
    fn separation_examples() {
        let hs = hsum_of_chains(&[3, 3]).unwrap();
        let s = separate(hs.as_lattice().unwrap(), 1, 2).unwrap();
        assert_eq!((bounds(&s.up), bounds(&s.down)), ((1, 3), (0, 2)));

        let c3 = chain(3).unwrap();
        let l = c3.as_lattice().unwrap();
        let s = separate(l, 2, 0).unwrap();
        assert_eq!((bounds(&s.up), bounds(&s.down)), ((2, 2), (0, 0)));
        let s = separate(l, 2, 1).unwrap();
        assert_eq!((bounds(&s.up), bounds(&s.down)), ((2, 2), (0, 1)));
        let s = separate(l, 0, 2).unwrap();
        assert!(s.swapped);
        assert!(separate(l, 1, 1).is_err());
    }

    #[test]
    fn cover_examples() {
        let hs = hsum_of_chains(&[3, 3]).unwrap();
        let c = blockfinite_cover(hs.as_lattice().unwrap(), 1, 2).unwrap();
        let got: Vec<_> = c.per_block.iter().map(|b| (bounds(&b.j), bounds(&b.k))).collect();
        assert_eq!(got, [((0, 1), (3, 3)), ((0, 2), (3, 3))]);

        let b4 = boolean(2).unwrap();
        let c = blockfinite_cover(b4.as_lattice().unwrap(), 1, 2).unwrap();
        assert_eq!(c.per_block.len(), 1);
        assert_eq!(c.per_block[0].case, CoverCase::Inside { atom: 1, level: 1 });

        let e = horizontal_sum(&[b4.clone(), b4]).unwrap().algebra;
        let c = blockfinite_cover(e.as_lattice().unwrap(), 1, 3).unwrap();
        assert_eq!(c.per_block.len(), 2);
        assert!(c.covered(e.len()).is_full());
    }
}
