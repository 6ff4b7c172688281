//! Independent reference implementations. Everything here works on a plain
//! sum matrix and the textbook definitions, and shares no code with the
//! library beyond reading an instance's table.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use lea_core::generators::{boolean, chain, enumerate, horizontal_sum, hsum_of_chains, product};
use lea_core::{Caps, EffectAlgebra};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `t[a][b] = a ⊕ b`.
pub type Table = Vec<Vec<Option<usize>>>;

pub fn table_of(e: &EffectAlgebra) -> Table {
    let n = e.len();
    (0..n).map(|a| (0..n).map(|b| e.sum(a, b)).collect()).collect()
}

/// The four axioms as usually stated: commutativity; `b⊕c` and
/// `a⊕(b⊕c)` defined imply `a⊕b` and `(a⊕b)⊕c` defined and equal; a unique
/// `a'` with `a⊕a' = 1`; `a⊕1` defined only for `a = 0`.
pub fn is_effect_algebra(t: &Table, zero: usize, one: usize) -> bool {
    let n = t.len();
    if n < 2 || zero >= n || one >= n || zero == one {
        return false;
    }
    for a in 0..n {
        if t[a][one].is_some() && a != zero {
            return false;
        }
        if (0..n).filter(|&b| t[a][b] == Some(one)).count() != 1 {
            return false;
        }
        for b in 0..n {
            if t[a][b] != t[b][a] {
                return false;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let Some(bc) = t[b][c] else { continue };
                let Some(r) = t[a][bc] else { continue };
                match t[a][b] {
                    Some(ab) if t[ab][c] == Some(r) => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

/// An instance seen only through its sum matrix, with the order derived
/// from the definition and cached.
pub struct Naive {
    pub t: Table,
    pub one: usize,
    le: Vec<Vec<bool>>,
}

impl Naive {
    pub fn new(e: &EffectAlgebra) -> Self {
        Self::from_table(table_of(e), e.one())
    }

    pub fn from_table(t: Table, one: usize) -> Self {
        let n = t.len();
        // `a <= b` iff `a ⊕ c = b` for some `c`
        let le = (0..n).map(|a| (0..n).map(|b| t[a].contains(&Some(b))).collect()).collect();
        Naive { t, one, le }
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.t[a][b]
    }

    pub fn supp(&self, a: usize) -> usize {
        (0..self.len()).find(|&b| self.t[a][b] == Some(self.one)).expect("supplement")
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&x| self.leq(x, a) && self.leq(x, b)).collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&x| self.leq(x, m)))
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&x| self.leq(a, x) && self.leq(b, x)).collect();
        upper.iter().copied().find(|&m| upper.iter().all(|&x| self.leq(m, x)))
    }

    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.meet(a, b).is_some() && self.join(a, b).is_some()))
    }

    /// Elements just above 0.
    pub fn atoms(&self) -> Vec<usize> {
        (1..self.len()).filter(|&a| (1..self.len()).all(|x| x == a || !self.leq(x, a))).collect()
    }

    /// `[a, 2a, 3a, …]` up to the last defined multiple.
    pub fn multiples(&self, a: usize) -> Vec<usize> {
        let mut out = vec![a];
        while let Some(next) = self.t[*out.last().unwrap()][a] {
            if out.contains(&next) {
                break;
            }
            out.push(next);
        }
        out
    }

    pub fn interval(&self, lo: usize, hi: usize) -> BTreeSet<usize> {
        (0..self.len()).filter(|&x| self.leq(lo, x) && self.leq(x, hi)).collect()
    }

    pub fn is_sharp(&self, x: usize) -> bool {
        self.meet(x, self.supp(x)) == Some(0)
    }

    /// Additive, `[0,1]`-valued and normalised, checked entry by entry.
    pub fn is_state(&self, w: &[BigRational]) -> bool {
        let n = self.len();
        w.len() == n
            && w[self.one].is_one()
            && w.iter().all(|v| *v >= BigRational::zero() && *v <= BigRational::one())
            && (0..n).all(|a| (0..n).all(|b| self.t[a][b].is_none_or(|c| w[c] == &w[a] + &w[b])))
    }

    /// The state of an `(n+1)`-chain: walking `a, 2a, …, na = 1` by
    /// additivity gives `ω(ka) = k·ω(a)`, and `ω(1) = 1` pins `ω(a) = 1/n`.
    pub fn chain_state(&self) -> Vec<BigRational> {
        let m = self.multiples(self.atoms()[0]);
        let n = m.len();
        let mut w = vec![BigRational::zero(); self.len()];
        for (k, &x) in m.iter().enumerate() {
            w[x] = BigRational::new((k + 1).into(), n.into());
        }
        w
    }

    /// Point masses at the atoms of a Boolean algebra.
    pub fn boolean_extreme_states(&self) -> BTreeSet<Vec<BigRational>> {
        self.atoms()
            .into_iter()
            .map(|p| {
                (0..self.len()).map(|x| if self.leq(p, x) { BigRational::one() } else { BigRational::zero() }).collect()
            })
            .collect()
    }

    /// When every element other than 0 and 1 has `x ⊕ x = 1`, additivity
    /// forces `ω(x) = 1/2` and the state is unique.
    pub fn forced_half_state(&self) -> Option<Vec<BigRational>> {
        (0..self.len())
            .map(|x| match x {
                0 => Some(BigRational::zero()),
                x if x == self.one => Some(BigRational::one()),
                x if self.t[x][x] == Some(self.one) => Some(BigRational::new(1.into(), 2.into())),
                _ => None,
            })
            .collect()
    }
}

/// Size of the Dedekind–MacNeille completion of a poset, by checking every
/// subset `A` for `A = (A^u)^l`.
pub fn dm_size(n: usize, le: impl Fn(usize, usize) -> bool) -> usize {
    assert!(n <= 16);
    let upper =
        |s: u32| -> u32 { (0..n).filter(|&y| (0..n).all(|x| s >> x & 1 == 0 || le(x, y))).fold(0, |m, y| m | 1 << y) };
    let lower =
        |s: u32| -> u32 { (0..n).filter(|&x| (0..n).all(|y| s >> y & 1 == 0 || le(x, y))).fold(0, |m, x| m | 1 << x) };
    (0u32..1 << n).filter(|&s| lower(upper(s)) == s).count()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// The least relabelled `(one, table)` over every permutation fixing 0.
pub fn brute_canonical(t: &Table, one: usize) -> (usize, Vec<Option<usize>>) {
    let n = t.len();
    let rest: Vec<usize> = (1..n).collect();
    permutations(&rest)
        .into_iter()
        .map(|tail| {
            let mut p = vec![0];
            p.extend(tail);
            let mut flat = vec![None; n * n];
            for a in 0..n {
                for b in 0..n {
                    flat[p[a] * n + p[b]] = t[a][b].map(|c| p[c]);
                }
            }
            (p[one], flat)
        })
        .min()
        .unwrap()
}

/// Isomorphism classes of effect algebras on `n` elements, by trying every
/// table: zero is element 0 with its row fixed, one is `n - 1` (any
/// algebra can be relabelled that way), and every other unordered pair
/// ranges over "undefined" and all `n` elements.
pub fn unpruned_classes(n: usize) -> BTreeSet<(usize, Vec<Option<usize>>)> {
    let one = n - 1;
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut digits = vec![0usize; pairs.len()];
    let mut t: Table = vec![vec![None; n]; n];
    for x in 0..n {
        t[0][x] = Some(x);
        t[x][0] = Some(x);
    }
    let mut found = BTreeSet::new();
    loop {
        for (&(a, b), &d) in pairs.iter().zip(&digits) {
            let v = if d == 0 { None } else { Some(d - 1) };
            t[a][b] = v;
            t[b][a] = v;
        }
        if is_effect_algebra(&t, 0, one) {
            found.insert(brute_canonical(&t, one));
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return found;
            }
            digits[i] += 1;
            if digits[i] <= n {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Enumerated algebras up to size 6 and constructed ones up to size 64.
pub fn corpus() -> Vec<(String, EffectAlgebra)> {
    let caps = Caps::default();
    let mut out: Vec<(String, EffectAlgebra)> = enumerate(6, &caps)
        .unwrap()
        .into_iter()
        .enumerate()
        .map(|(i, e)| (format!("enumerated #{i} (size {})", e.len()), e))
        .collect();
    for n in 2..=64 {
        out.push((format!("chain {n}"), chain(n).unwrap()));
    }
    for k in 1..=6 {
        out.push((format!("boolean {k}"), boolean(k).unwrap()));
    }
    for lengths in [&[3, 3][..], &[3, 4], &[4, 4, 4], &[3, 3, 3, 3, 3], &[3; 10], &[5, 6, 7], &[2, 3, 9], &[20, 20, 20]]
    {
        out.push((format!("hsum of chains {lengths:?}"), hsum_of_chains(lengths).unwrap()));
    }
    let b = |k| boolean(k).unwrap();
    let c = |n| chain(n).unwrap();
    let hs = |parts: Vec<EffectAlgebra>| horizontal_sum(&parts).unwrap().algebra;
    let pr = |parts: Vec<EffectAlgebra>| product(&parts).unwrap();
    let hs2c3 = hsum_of_chains(&[3, 3]).unwrap();
    out.push(("hsum B2 B2".into(), hs(vec![b(2), b(2)])));
    out.push(("hsum B3 B3".into(), hs(vec![b(3), b(3)])));
    out.push(("hsum B2 C4 B3".into(), hs(vec![b(2), c(4), b(3)])));
    out.push(("C3 x C3".into(), pr(vec![c(3), c(3)])));
    out.push(("C3 x C4".into(), pr(vec![c(3), c(4)])));
    out.push(("C4 x C4 x C4".into(), pr(vec![c(4), c(4), c(4)])));
    out.push(("HS2C3 x C3".into(), pr(vec![hs2c3.clone(), c(3)])));
    out.push(("HS2C3 x HS2C3".into(), pr(vec![hs2c3.clone(), hs2c3.clone()])));
    out.push(("HS2C3 x B2".into(), pr(vec![hs2c3, b(2)])));
    out.push(("hsum (C3 x C3) C4".into(), hs(vec![pr(vec![c(3), c(3)]), c(4)])));
    for (name, e) in &out {
        assert!(e.len() <= 64, "{name}");
    }
    out
}
