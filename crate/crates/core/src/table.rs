//! The partial sum table and the axiom validator.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Elem, Error, Result};

const UNDEFINED: u16 = u16::MAX;

/// Largest carrier a table can hold.
pub const MAX_CARRIER: usize = UNDEFINED as usize;

/// A commutative partial binary operation on `0..n`, stored as a dense
/// upper-triangular table. Keys are unordered pairs, so commutativity holds
/// by construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialSumTable {
    n: usize,
    entries: Vec<u16>,
}

impl PartialSumTable {
    /// A table on `n` elements with every sum undefined.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_CARRIER {
            return Err(Error::Malformed(format!("carrier of size {n} is too large")));
        }
        Ok(PartialSumTable { n, entries: vec![UNDEFINED; n * (n + 1) / 2] })
    }

    /// Builds a table from `x ⊕ y = z` triples. The `zero` row is filled in
    /// as `x ⊕ zero = x` before the triples are applied; a triple that
    /// contradicts an earlier one (or the implicit zero row) is an error.
    pub fn from_triples(n: usize, zero: Elem, triples: &[(Elem, Elem, Elem)]) -> Result<Self> {
        let mut t = PartialSumTable::new(n)?;
        if zero >= n {
            return Err(Error::Malformed(format!("zero {zero} outside carrier of size {n}")));
        }
        for x in 0..n {
            t.set(x, zero, Some(x))?;
        }
        for &(x, y, z) in triples {
            match t.get_checked(x, y)? {
                Some(old) if old != z => {
                    return Err(Error::Malformed(format!("contradictory sums for {{{x}, {y}}}: {old} and {z}")))
                }
                _ => t.set(x, y, Some(z))?,
            }
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    fn slot(&self, x: Elem, y: Elem) -> usize {
        let (i, j) = if x <= y { (x, y) } else { (y, x) };
        i * (2 * self.n - i + 1) / 2 + (j - i)
    }

    /// `x ⊕ y`, or `None` when undefined.
    #[inline]
    pub fn get(&self, x: Elem, y: Elem) -> Option<Elem> {
        match self.entries[self.slot(x, y)] {
            UNDEFINED => None,
            z => Some(z as Elem),
        }
    }

    fn get_checked(&self, x: Elem, y: Elem) -> Result<Option<Elem>> {
        if x >= self.n || y >= self.n {
            return Err(Error::Malformed(format!("pair ({x}, {y}) outside carrier of size {}", self.n)));
        }
        Ok(self.get(x, y))
    }

    /// Sets (or clears, with `None`) the entry for the unordered pair.
    pub fn set(&mut self, x: Elem, y: Elem, z: Option<Elem>) -> Result<()> {
        self.get_checked(x, y)?;
        let v = match z {
            None => UNDEFINED,
            Some(z) if z < self.n => z as u16,
            Some(z) => {
                return Err(Error::Malformed(format!("{x} ⊕ {y} = {z} lies outside carrier of size {}", self.n)))
            }
        };
        let s = self.slot(x, y);
        self.entries[s] = v;
        Ok(())
    }

    /// Defined entries as `(x, y, z)` with `x <= y`, in row-major order.
    pub fn triples(&self) -> impl Iterator<Item = (Elem, Elem, Elem)> + '_ {
        (0..self.n).flat_map(move |x| (x..self.n).filter_map(move |y| self.get(x, y).map(|z| (x, y, z))))
    }

    /// Applies a relabelling `old -> perm[old]`.
    pub fn permuted(&self, perm: &[Elem]) -> PartialSumTable {
        let mut t = PartialSumTable { n: self.n, entries: vec![UNDEFINED; self.entries.len()] };
        for (x, y, z) in self.triples() {
            let s = t.slot(perm[x], perm[y]);
            t.entries[s] = perm[z] as u16;
        }
        t
    }

    /// Raw entries in slot order; `u16::MAX` marks an undefined sum.
    pub fn raw(&self) -> &[u16] {
        &self.entries
    }
}

impl fmt::Debug for PartialSumTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.triples().map(|(x, y, z)| [x, y, z])).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// Commutativity. Structural for [`PartialSumTable`]; never reported.
    Commutativity,
    /// `(a⊕b)⊕c` is defined iff `a⊕(b⊕c)` is, and then they agree.
    Associativity,
    /// Every element has exactly one orthosupplement.
    UniqueSupplement,
    /// `1 ⊕ a` defined forces `a = 0`.
    ZeroOneLaw,
}

impl Axiom {
    pub fn tag(self) -> &'static str {
        match self {
            Axiom::Commutativity => "Ei",
            Axiom::Associativity => "Eii",
            Axiom::UniqueSupplement => "Eiii",
            Axiom::ZeroOneLaw => "Eiv",
        }
    }
}

/// One violated axiom instance.
///
/// Witness layout by axiom: associativity `[a, b, c]`; a missing
/// supplement `[a]`; two supplements `[a, b1, b2]`; the zero-one law
/// `[one, a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

/// Checks the effect-algebra axioms on `table` with the given zero and one.
///
/// Structural problems (carrier too small, zero equal to one, a zero row that
/// is not total) are errors; axiom failures are listed in the report, every
/// violated instance with a witness.
pub fn validate(table: &PartialSumTable, zero: Elem, one: Elem) -> Result<ValidationReport> {
    let n = table.len();
    if n < 2 {
        return Err(Error::Malformed(format!("carrier of size {n}, need at least 2")));
    }
    if zero >= n || one >= n {
        return Err(Error::Malformed(format!("zero {zero} or one {one} outside carrier")));
    }
    if zero == one {
        return Err(Error::Malformed("zero and one coincide".into()));
    }
    if let Some(x) = (0..n).find(|&x| table.get(x, zero).is_none()) {
        return Err(Error::Malformed(format!("{x} ⊕ zero is undefined; the zero row must be total")));
    }

    // dense copy: the scan below is the hot loop of every exhaustive sweep
    let dense: Vec<Option<Elem>> = (0..n * n).map(|i| table.get(i / n, i % n)).collect();
    let get = |x: Elem, y: Elem| dense[x * n + y];
    let mut violations = Vec::new();
    // When zero is an identity every triple containing it holds.
    // Commutativity maps (a, b, c) onto (c, b, a), so a <= c suffices.
    let identity = (0..n).all(|x| get(x, zero) == Some(x));
    let skip = |x: Elem| identity && x == zero;
    for a in (0..n).filter(|&a| !skip(a)) {
        for b in (0..n).filter(|&b| !skip(b)) {
            let ab = get(a, b);
            for c in (a..n).filter(|&c| !skip(c)) {
                let left = ab.and_then(|ab| get(ab, c));
                let right = get(b, c).and_then(|bc| get(a, bc));
                if left != right {
                    violations.push(Violation { axiom: Axiom::Associativity, witness: vec![a, b, c] });
                }
            }
        }
    }
    for a in 0..n {
        let mut supps = (0..n).filter(|&b| table.get(a, b) == Some(one));
        match (supps.next(), supps.next()) {
            (None, _) => violations.push(Violation { axiom: Axiom::UniqueSupplement, witness: vec![a] }),
            (Some(b1), Some(b2)) => {
                violations.push(Violation { axiom: Axiom::UniqueSupplement, witness: vec![a, b1, b2] })
            }
            _ => {}
        }
    }
    for a in 0..n {
        if a != zero && table.get(one, a).is_some() {
            violations.push(Violation { axiom: Axiom::ZeroOneLaw, witness: vec![one, a] });
        }
    }
    Ok(ValidationReport { violations })
}
