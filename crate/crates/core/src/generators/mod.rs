//! Canonical constructions, the exhaustive small-model enumerator and
//! symbolic infinite families.

mod canon;
mod enumerate;
pub mod family;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::table::PartialSumTable;
use crate::{EffectAlgebra, Elem, Error, Result};

pub use canon::{canonical_form, CanonicalForm};
pub use enumerate::{enumerate, enumerate_branch, enumerate_size, top_level_branches, Branch};

/// Largest carrier the constructors will build.
pub const MAX_CONSTRUCTED: usize = 256;

fn check_size(size: usize) -> Result<()> {
    crate::Caps::check(MAX_CONSTRUCTED, "constructed carrier", size)
}

/// The chain `0 < a < 2a < … < (n-1)a = 1` on `n` elements.
pub fn chain(n: usize) -> Result<EffectAlgebra> {
    chain_named(n, "a")
}

/// [`chain`] with a chosen name for the atom.
pub fn chain_named(n: usize, atom: &str) -> Result<EffectAlgebra> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("chain needs n >= 2, got {n}")));
    }
    check_size(n)?;
    let mut t = PartialSumTable::new(n)?;
    for i in 0..n {
        for j in i..n {
            if i + j < n {
                t.set(i, j, Some(i + j))?;
            }
        }
    }
    let labels = (0..n)
        .map(|k| match k {
            0 => "0".to_string(),
            k if k == n - 1 => "1".to_string(),
            1 => atom.to_string(),
            k => format!("{k}{atom}"),
        })
        .collect();
    EffectAlgebra::new(labels, t, n - 1)
}

const BOOLEAN_ATOMS: &[&str] = &["p", "q", "r", "s", "t", "u", "v", "w"];

/// The Boolean algebra of subsets of `k` atoms (`2^k` elements). Element
/// `i` is the subset with bitmask `i`.
pub fn boolean(k: usize) -> Result<EffectAlgebra> {
    if k == 0 {
        return Err(Error::InvalidArgument("boolean(0) has a single element, so 0 = 1".into()));
    }
    if k >= 16 {
        return Err(Error::CapExceeded { what: "boolean atoms", size: k, cap: 15 });
    }
    let n = 1usize << k;
    check_size(n)?;
    let mut t = PartialSumTable::new(n)?;
    for x in 0..n {
        for y in x..n {
            if x & y == 0 {
                t.set(x, y, Some(x | y))?;
            }
        }
    }
    let atom_name = |i: usize| -> String {
        if k <= BOOLEAN_ATOMS.len() {
            BOOLEAN_ATOMS[i].to_string()
        } else {
            format!("p{}", i + 1)
        }
    };
    let labels = (0..n)
        .map(|x| match x {
            0 => "0".to_string(),
            x if x == n - 1 => "1".to_string(),
            x => (0..k).filter(|i| x >> i & 1 == 1).map(atom_name).collect::<Vec<_>>().join(""),
        })
        .collect();
    EffectAlgebra::new(labels, t, n - 1)
}

/// Output of [`horizontal_sum`].
#[derive(Debug, Clone)]
pub struct HorizontalSum {
    pub algebra: EffectAlgebra,
    /// Summands with only two elements. They contribute nothing beyond the
    /// shared 0 and 1 and are absorbed.
    pub absorbed: Vec<usize>,
    /// For every element, the summand it came from (`None` for 0 and 1).
    pub summand_of: Vec<Option<usize>>,
}

/// Glues the summands at a shared 0 and 1. Sums inside a summand are kept;
/// nontrivial elements of different summands have no sum.
///
/// Labels that occur in more than one summand get the suffix `_i` (the
/// 1-based summand number) in every summand.
pub fn horizontal_sum(summands: &[EffectAlgebra]) -> Result<HorizontalSum> {
    if summands.is_empty() {
        return Err(Error::InvalidArgument("horizontal sum of no summands".into()));
    }
    let inner = |s: &EffectAlgebra| -> Vec<Elem> { s.elems().filter(|&x| x != 0 && x != s.one()).collect() };
    let size = 2 + summands.iter().map(|s| inner(s).len()).sum::<usize>();
    check_size(size)?;
    let collide = {
        let mut seen: Vec<&str> = Vec::new();
        let mut clash = false;
        for s in summands {
            let mut mine: Vec<&str> = inner(s).into_iter().map(|x| s.label(x)).collect();
            mine.sort_unstable();
            mine.dedup();
            for l in &mine {
                clash |= seen.contains(l) || *l == "0" || *l == "1";
            }
            seen.extend(mine);
        }
        clash
    };

    let one = size - 1;
    let mut labels = Vec::with_capacity(size);
    labels.push("0".to_string());
    let mut summand_of = Vec::with_capacity(size);
    summand_of.push(None);
    let mut absorbed = Vec::new();
    // per summand: element -> new index
    let mut maps: Vec<Vec<Elem>> = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        let mut map = alloc::vec![0; s.len()];
        map[s.one()] = one;
        let xs = inner(s);
        if xs.is_empty() {
            absorbed.push(i);
        }
        for x in xs {
            map[x] = labels.len();
            labels.push(if collide { format!("{}_{}", s.label(x), i + 1) } else { s.label(x).to_string() });
            summand_of.push(Some(i));
        }
        maps.push(map);
    }
    labels.push("1".to_string());
    summand_of.push(None);

    let mut t = PartialSumTable::new(size)?;
    for x in 0..size {
        t.set(x, 0, Some(x))?;
    }
    for (s, map) in summands.iter().zip(&maps) {
        for (x, y, z) in s.table().triples() {
            t.set(map[x], map[y], Some(map[z]))?;
        }
    }
    Ok(HorizontalSum { algebra: EffectAlgebra::new(labels, t, one)?, absorbed, summand_of })
}

/// Horizontal sum of chains with the given sizes; the atom of the `i`-th
/// chain is named by the `i`-th letter (`a`, `b`, …).
pub fn hsum_of_chains(lengths: &[usize]) -> Result<EffectAlgebra> {
    let chains =
        lengths.iter().enumerate().map(|(i, &n)| chain_named(n, &letter_name(i))).collect::<Result<Vec<_>>>()?;
    Ok(horizontal_sum(&chains)?.algebra)
}

/// `a`, `b`, …, `z`, `a1`, `b1`, …
pub(crate) fn letter_name(i: usize) -> String {
    let c = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        format!("{c}")
    } else {
        format!("{c}{}", i / 26)
    }
}

/// The direct product with componentwise sums, defined when every
/// component is.
pub fn product(factors: &[EffectAlgebra]) -> Result<EffectAlgebra> {
    if factors.is_empty() {
        return Err(Error::InvalidArgument("product of no factors".into()));
    }
    let size = factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.len())).unwrap_or(usize::MAX);
    check_size(size)?;
    // mixed radix, first factor most significant
    let decode = |mut i: usize| -> Vec<Elem> {
        let mut digits = alloc::vec![0; factors.len()];
        for (d, f) in digits.iter_mut().zip(factors).rev() {
            *d = i % f.len();
            i /= f.len();
        }
        digits
    };
    let encode = |digits: &[Elem]| -> usize { digits.iter().zip(factors).fold(0, |acc, (&d, f)| acc * f.len() + d) };
    let mut t = PartialSumTable::new(size)?;
    for x in 0..size {
        let dx = decode(x);
        for y in x..size {
            let dy = decode(y);
            let s: Option<Vec<Elem>> =
                factors.iter().zip(dx.iter().zip(&dy)).map(|(f, (&a, &b))| f.sum(a, b)).collect();
            if let Some(s) = s {
                t.set(x, y, Some(encode(&s)))?;
            }
        }
    }
    let ones: Vec<Elem> = factors.iter().map(|f| f.one()).collect();
    let labels = (0..size)
        .map(|x| {
            let parts: Vec<&str> = decode(x).iter().zip(factors).map(|(&d, f)| f.label(d)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    EffectAlgebra::new(labels, t, encode(&ones))
}
