//! Symbolic families: finitely described, possibly infinite horizontal
//! sums of chains and Boolean algebras, their text grammar, and a verdict
//! engine that derives properties only from direct symbolic computation or
//! from a fixed rule base of proved implications.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{boolean, chain, horizontal_sum, hsum_of_chains, product};
use crate::error::falsified;
use crate::{Caps, EffectAlgebra, Error, Result};

/// A finite number or countably many.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Finite(usize),
    Infinite,
}

impl Count {
    fn add(self, other: Count) -> Count {
        match (self, other) {
            (Count::Finite(a), Count::Finite(b)) => Count::Finite(a + b),
            _ => Count::Infinite,
        }
    }

    fn mul(self, other: Count) -> Count {
        match (self, other) {
            (Count::Finite(0), _) | (_, Count::Finite(0)) => Count::Finite(0),
            (Count::Finite(a), Count::Finite(b)) => Count::Finite(a * b),
            _ => Count::Infinite,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(k) => write!(f, "{k}"),
            Count::Infinite => f.write_str("inf"),
        }
    }
}

/// A parsed family spec. See [`parse_spec`] for the grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spec {
    /// `chain:N`
    Chain(usize),
    /// `chain:N..`: one chain of every length `>= N`.
    ChainsFrom(usize),
    /// `boolean:K` or `boolean:inf` (the power set of a countable set).
    Boolean(Count),
    /// `hsum(item, …)` where an item is `spec` or `spec * count`.
    HSum(Vec<(Spec, Count)>),
    /// `prod(spec, …)`, finite factors only.
    Prod(Vec<Spec>),
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spec::Chain(n) => write!(f, "chain:{n}"),
            Spec::ChainsFrom(n) => write!(f, "chain:{n}.."),
            Spec::Boolean(k) => write!(f, "boolean:{k}"),
            Spec::HSum(items) => {
                f.write_str("hsum(")?;
                for (i, (s, c)) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    match c {
                        Count::Finite(1) => write!(f, "{s}")?,
                        c => write!(f, "{s} * {c}")?,
                    }
                }
                f.write_str(")")
            }
            Spec::Prod(items) => {
                f.write_str("prod(")?;
                for (i, s) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{s}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at column {}: {message}", .position + 1)]
pub struct SpecError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with([' ', '\t', '\n', '\r']) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SpecError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(format!("expected `{token}`"))
        }
    }

    fn int(&mut self) -> Result<usize, SpecError> {
        self.skip_ws();
        let digits = self.src[self.pos..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.err("expected a number");
        }
        let text = &self.src[self.pos..self.pos + digits];
        match text.parse() {
            Ok(v) => {
                self.pos += digits;
                Ok(v)
            }
            Err(_) => self.err("number too large"),
        }
    }

    fn count(&mut self) -> Result<Count, SpecError> {
        if self.eat("inf") {
            Ok(Count::Infinite)
        } else {
            self.int().map(Count::Finite)
        }
    }

    fn spec(&mut self) -> Result<Spec, SpecError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("chain:") {
            let n = self.int()?;
            if n < 2 {
                self.pos = start;
                return self.err("a chain needs at least 2 elements");
            }
            return Ok(if self.eat("..") { Spec::ChainsFrom(n) } else { Spec::Chain(n) });
        }
        if self.eat("boolean:") {
            let k = self.count()?;
            if k == Count::Finite(0) {
                self.pos = start;
                return self.err("boolean:0 has a single element");
            }
            return Ok(Spec::Boolean(k));
        }
        if self.eat("hsum(") {
            let mut items = Vec::new();
            loop {
                let s = self.spec()?;
                let c = if self.eat("*") { self.count()? } else { Count::Finite(1) };
                items.push((s, c));
                if self.eat(")") {
                    return Ok(Spec::HSum(items));
                }
                self.expect(",")?;
            }
        }
        if self.eat("prod(") {
            let mut items = Vec::new();
            loop {
                items.push(self.spec()?);
                if self.eat(")") {
                    return Ok(Spec::Prod(items));
                }
                self.expect(",")?;
            }
        }
        self.err("expected `chain:`, `boolean:`, `hsum(` or `prod(`")
    }
}

/// Parses a family spec.
///
/// ```text
/// spec  := "chain:" N [".."] | "boolean:" (N | "inf")
///        | "hsum(" item ("," item)* ")" | "prod(" spec ("," spec)* ")"
/// item  := spec ["*" (N | "inf")]
/// ```
pub fn parse_spec(src: &str) -> Result<Spec, SpecError> {
    let mut p = Parser { src, pos: 0 };
    let s = p.spec()?;
    p.skip_ws();
    if p.pos != src.len() {
        return p.err("unexpected trailing input");
    }
    Ok(s)
}

/// One summand kind of a symbolic horizontal sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summand {
    Chain(usize),
    /// One chain of each length `n, n+1, …`.
    ChainsFrom(usize),
    Boolean(Count),
}

impl Summand {
    /// Contributes elements besides 0 and 1.
    fn is_effective(self) -> bool {
        match self {
            Summand::Chain(n) => n >= 3,
            Summand::ChainsFrom(_) => true,
            Summand::Boolean(k) => k != Count::Finite(1),
        }
    }

    fn atoms(self) -> Count {
        match self {
            Summand::Chain(_) => Count::Finite(1),
            Summand::ChainsFrom(_) => Count::Infinite,
            Summand::Boolean(k) => k,
        }
    }

    /// Number of summands this entry stands for.
    fn multiplicity(self) -> Count {
        match self {
            Summand::ChainsFrom(_) => Count::Infinite,
            _ => Count::Finite(1),
        }
    }

    /// Every summand it stands for is a finite lattice.
    fn is_finite_lattice(self) -> bool {
        matches!(self, Summand::Chain(_) | Summand::ChainsFrom(_) | Summand::Boolean(Count::Finite(_)))
    }
}

/// The shape of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    HorizontalSumOfChains,
    HorizontalSumOfBooleans,
    /// A single finite chain.
    MvChain(usize),
    Mixed,
}

/// A horizontal sum of summand groups, each repeated `count` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicFamily {
    pub summands: Vec<(Summand, Count)>,
}

impl SymbolicFamily {
    pub fn from_spec(spec: &Spec) -> Result<Self> {
        let mut summands = Vec::new();
        flatten(spec, Count::Finite(1), &mut summands)?;
        Ok(SymbolicFamily { summands })
    }

    fn effective(&self) -> impl Iterator<Item = (Summand, Count)> + '_ {
        self.summands.iter().copied().filter(|(s, c)| s.is_effective() && *c != Count::Finite(0))
    }

    /// Number of summands with elements besides 0 and 1.
    pub fn summand_count(&self) -> Count {
        self.effective().fold(Count::Finite(0), |acc, (s, c)| acc.add(s.multiplicity().mul(c)))
    }

    pub fn kind(&self) -> FamilyKind {
        let eff: Vec<(Summand, Count)> = self.effective().collect();
        if let [(Summand::Chain(n), Count::Finite(1))] = eff.as_slice() {
            return FamilyKind::MvChain(*n);
        }
        if eff.iter().all(|(s, _)| matches!(s, Summand::Chain(_) | Summand::ChainsFrom(_))) {
            FamilyKind::HorizontalSumOfChains
        } else if eff.iter().all(|(s, _)| matches!(s, Summand::Boolean(_))) {
            FamilyKind::HorizontalSumOfBooleans
        } else {
            FamilyKind::Mixed
        }
    }

    /// Some atom has infinitely many atoms `b ≰ a'`. Atoms of different
    /// summands are never orthogonal, so this happens exactly when there
    /// are at least two summands and, seen from some summand, the others
    /// carry infinitely many atoms.
    fn some_atom_sees_infinitely_many(&self) -> bool {
        let eff: Vec<(Summand, Count)> = self.effective().collect();
        if self.summand_count() == Count::Infinite {
            return eff.iter().map(|(s, c)| s.multiplicity().mul(*c)).fold(Count::Finite(0), Count::add)
                != Count::Finite(1);
        }
        let Count::Finite(total) = self.summand_count() else { unreachable!() };
        total >= 2 && eff.iter().any(|(s, _)| s.atoms() == Count::Infinite)
    }
}

fn flatten(spec: &Spec, times: Count, out: &mut Vec<(Summand, Count)>) -> Result<()> {
    match spec {
        Spec::Chain(n) => out.push((Summand::Chain(*n), times)),
        Spec::ChainsFrom(n) => out.push((Summand::ChainsFrom(*n), times)),
        Spec::Boolean(k) => out.push((Summand::Boolean(*k), times)),
        Spec::HSum(items) => {
            for (s, c) in items {
                flatten(s, times.mul(*c), out)?;
            }
        }
        Spec::Prod(_) => {
            return Err(Error::InvalidArgument(
                "products have no symbolic family; use them only for finite generation".into(),
            ))
        }
    }
    Ok(())
}

/// A concrete finite summand.
#[derive(Debug, Clone, Copy)]
enum Concrete {
    Chain(usize),
    Boolean(usize),
}

fn assemble(parts: &[Concrete]) -> Result<EffectAlgebra> {
    if let [single] = parts {
        return match *single {
            Concrete::Chain(n) => chain(n),
            Concrete::Boolean(k) => boolean(k),
        };
    }
    if parts.iter().all(|p| matches!(p, Concrete::Chain(_))) {
        let lengths: Vec<usize> = parts
            .iter()
            .map(|p| match p {
                Concrete::Chain(n) => *n,
                Concrete::Boolean(_) => unreachable!(),
            })
            .collect();
        return hsum_of_chains(&lengths);
    }
    let algebras = parts
        .iter()
        .map(|p| match *p {
            Concrete::Chain(n) => chain(n),
            Concrete::Boolean(k) => boolean(k),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(horizontal_sum(&algebras)?.algebra)
}

impl Spec {
    /// Builds the finite instance the spec describes. Infinite specs are
    /// refused; see [`family_truncate`] for finite pieces of those.
    pub fn build(&self, caps: &Caps) -> Result<EffectAlgebra> {
        let e = match self {
            Spec::Prod(items) => {
                let factors = items.iter().map(|s| s.build(caps)).collect::<Result<Vec<_>>>()?;
                product(&factors)?
            }
            _ => {
                let family = SymbolicFamily::from_spec(self)?;
                let mut parts = Vec::new();
                for (s, c) in &family.summands {
                    let (Count::Finite(c), true) = (c, s.multiplicity() == Count::Finite(1)) else {
                        return Err(infinite(self));
                    };
                    let part = match s {
                        Summand::Chain(n) => Concrete::Chain(*n),
                        Summand::Boolean(Count::Finite(k)) => Concrete::Boolean(*k),
                        _ => return Err(infinite(self)),
                    };
                    parts.extend(core::iter::repeat_n(part, *c));
                }
                if parts.is_empty() {
                    return Err(Error::InvalidArgument(format!("`{self}` has no summands")));
                }
                assemble(&parts)?
            }
        };
        Caps::check(caps.carrier, "constructed carrier", e.len())?;
        Ok(e)
    }
}

fn infinite(spec: &Spec) -> Error {
    Error::InvalidArgument(format!("`{spec}` is infinite; analyse it as a family or truncate it"))
}

/// How to cut an infinite family down to a finite instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    /// Keep the first this many summands.
    pub summands: usize,
    /// Infinite Boolean summands keep this many atoms.
    pub atoms: usize,
}

/// The horizontal sum of the first `summands` summands, with infinite
/// Boolean summands cut down to `atoms` atoms.
pub fn family_truncate(f: &SymbolicFamily, t: Truncation, caps: &Caps) -> Result<EffectAlgebra> {
    if t.summands == 0 {
        return Err(Error::InvalidArgument("keep at least one summand".into()));
    }
    let mut parts: Vec<Concrete> = Vec::new();
    'groups: for (s, c) in &f.summands {
        let reps = match c {
            Count::Finite(k) => *k,
            Count::Infinite => usize::MAX,
        };
        for r in 0..reps {
            let (part, more) = match s {
                Summand::Chain(n) => (Concrete::Chain(*n), None),
                Summand::Boolean(Count::Finite(k)) => (Concrete::Boolean(*k), None),
                Summand::Boolean(Count::Infinite) => (Concrete::Boolean(t.atoms), None),
                Summand::ChainsFrom(n) => (Concrete::Chain(*n), Some(*n)),
            };
            match more {
                None => parts.push(part),
                Some(n) => {
                    let need = t.summands - parts.len();
                    parts.extend((0..need).map(|i| Concrete::Chain(n + i)));
                }
            }
            if parts.len() >= t.summands {
                break 'groups;
            }
            let _ = r;
        }
    }
    parts.truncate(t.summands);
    let size = 2 + parts
        .iter()
        .map(|p| match *p {
            Concrete::Chain(n) => n.saturating_sub(2),
            Concrete::Boolean(k) => (1usize << k.min(20)) - 2,
        })
        .sum::<usize>();
    Caps::check(caps.carrier, "truncated carrier", size)?;
    assemble(&parts)
}

/// Properties decided for a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Atomic,
    Archimedean,
    Complete,
    BlockFinite,
    /// A single block.
    Mv,
    AlmostOrthogonal,
    TauIHausdorff,
    TauICompact,
    CompactlyGenerated,
    OContinuous,
    /// `τ_i = τ_o = τ_Φ`.
    TauEqualities,
}

impl Property {
    pub const ALL: [Property; 11] = [
        Property::Atomic,
        Property::Archimedean,
        Property::Complete,
        Property::BlockFinite,
        Property::Mv,
        Property::AlmostOrthogonal,
        Property::TauIHausdorff,
        Property::TauICompact,
        Property::CompactlyGenerated,
        Property::OContinuous,
        Property::TauEqualities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Atomic => "atomic",
            Property::Archimedean => "archimedean",
            Property::Complete => "complete",
            Property::BlockFinite => "block_finite",
            Property::Mv => "mv",
            Property::AlmostOrthogonal => "almost_orthogonal",
            Property::TauIHausdorff => "tau_i_hausdorff",
            Property::TauICompact => "tau_i_compact",
            Property::CompactlyGenerated => "compactly_generated",
            Property::OContinuous => "o_continuous",
            Property::TauEqualities => "tau_equalities",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    fn of(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Truth::True => "TRUE",
            Truth::False => "FALSE",
            Truth::Unknown => "UNKNOWN",
        }
    }
}

/// Facts read off the description of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DirectFact {
    SummandsAtomic,
    SummandsArchimedean,
    SummandsComplete,
    BlocksAreSummands,
    AtomsOfOtherSummands,
    FiniteSummandsCompact,
}

impl DirectFact {
    pub fn statement(self) -> &'static str {
        match self {
            DirectFact::SummandsAtomic => {
                "chains and power-set Boolean algebras are atomic, and gluing at 0 and 1 keeps every atom"
            }
            DirectFact::SummandsArchimedean => {
                "every atom has finite order inside its summand (n-1 in an n-chain, 1 in a Boolean algebra)"
            }
            DirectFact::SummandsComplete => {
                "finite chains and power sets are complete, and a set meeting two summands has join 1"
            }
            DirectFact::BlocksAreSummands => {
                "each summand is a single block, so the blocks are the summands"
            }
            DirectFact::AtomsOfOtherSummands => {
                "b ≰ a' for every atom b of another summand, so A_a is finite iff the other summands carry finitely many atoms"
            }
            DirectFact::FiniteSummandsCompact => {
                "with finite summands every element is compact: a join over two summands is already the join of two members"
            }
        }
    }
}

/// The rule base. Each rule is a proved implication between properties of
/// lattice effect algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    MvHausdorff,
    AlmostOrthogonalHausdorff,
    AlmostOrthogonalCompactlyGenerated,
    AlmostOrthogonalTopologiesAgree,
    BlockFiniteHausdorff,
    CompleteIsCompact,
    IncompleteIsNotCompact,
    CompactlyGeneratedIsContinuous,
    ContinuousIsCompactlyGenerated,
    BlockFiniteNotAlmostOrthogonal,
    NotAlmostOrthogonalContinuousNotHausdorff,
    NotAlmostOrthogonalHausdorffNotContinuous,
    NotAlmostOrthogonalTopologiesDiffer,
}

use Property as P;

impl Rule {
    pub const ALL: [Rule; 13] = [
        Rule::MvHausdorff,
        Rule::AlmostOrthogonalHausdorff,
        Rule::AlmostOrthogonalCompactlyGenerated,
        Rule::AlmostOrthogonalTopologiesAgree,
        Rule::BlockFiniteHausdorff,
        Rule::CompleteIsCompact,
        Rule::IncompleteIsNotCompact,
        Rule::CompactlyGeneratedIsContinuous,
        Rule::ContinuousIsCompactlyGenerated,
        Rule::BlockFiniteNotAlmostOrthogonal,
        Rule::NotAlmostOrthogonalContinuousNotHausdorff,
        Rule::NotAlmostOrthogonalHausdorffNotContinuous,
        Rule::NotAlmostOrthogonalTopologiesDiffer,
    ];

    pub fn premises(self) -> &'static [(Property, bool)] {
        const ARCH_ATOMIC: [(Property, bool); 2] = [(P::Archimedean, true), (P::Atomic, true)];
        match self {
            Rule::MvHausdorff => &[(P::Mv, true), ARCH_ATOMIC[0], ARCH_ATOMIC[1]],
            Rule::AlmostOrthogonalHausdorff
            | Rule::AlmostOrthogonalCompactlyGenerated
            | Rule::AlmostOrthogonalTopologiesAgree => &[(P::AlmostOrthogonal, true), ARCH_ATOMIC[0], ARCH_ATOMIC[1]],
            Rule::BlockFiniteHausdorff => &[(P::BlockFinite, true), ARCH_ATOMIC[0], ARCH_ATOMIC[1]],
            Rule::CompleteIsCompact => &[(P::Complete, true)],
            Rule::IncompleteIsNotCompact => &[(P::Complete, false)],
            Rule::CompactlyGeneratedIsContinuous => &[(P::Complete, true), (P::CompactlyGenerated, true)],
            Rule::ContinuousIsCompactlyGenerated => &[(P::Complete, true), (P::Atomic, true), (P::OContinuous, true)],
            Rule::BlockFiniteNotAlmostOrthogonal => {
                &[(P::BlockFinite, true), (P::Complete, true), (P::Atomic, true), (P::AlmostOrthogonal, false)]
            }
            Rule::NotAlmostOrthogonalContinuousNotHausdorff => {
                &[(P::AlmostOrthogonal, false), ARCH_ATOMIC[0], ARCH_ATOMIC[1], (P::OContinuous, true)]
            }
            Rule::NotAlmostOrthogonalHausdorffNotContinuous => {
                &[(P::AlmostOrthogonal, false), ARCH_ATOMIC[0], ARCH_ATOMIC[1], (P::TauIHausdorff, true)]
            }
            Rule::NotAlmostOrthogonalTopologiesDiffer => {
                &[(P::AlmostOrthogonal, false), ARCH_ATOMIC[0], ARCH_ATOMIC[1]]
            }
        }
    }

    pub fn conclusions(self) -> &'static [(Property, bool)] {
        match self {
            Rule::MvHausdorff => &[(P::TauIHausdorff, true), (P::TauEqualities, true)],
            Rule::AlmostOrthogonalHausdorff | Rule::BlockFiniteHausdorff => &[(P::TauIHausdorff, true)],
            Rule::AlmostOrthogonalCompactlyGenerated => &[(P::CompactlyGenerated, true), (P::OContinuous, true)],
            Rule::AlmostOrthogonalTopologiesAgree => &[(P::TauEqualities, true)],
            Rule::CompleteIsCompact => &[(P::TauICompact, true)],
            Rule::IncompleteIsNotCompact => &[(P::TauICompact, false)],
            Rule::CompactlyGeneratedIsContinuous => &[(P::OContinuous, true)],
            Rule::ContinuousIsCompactlyGenerated => &[(P::CompactlyGenerated, true)],
            Rule::BlockFiniteNotAlmostOrthogonal => {
                &[(P::CompactlyGenerated, false), (P::OContinuous, false), (P::TauEqualities, false)]
            }
            Rule::NotAlmostOrthogonalContinuousNotHausdorff => &[(P::TauIHausdorff, false)],
            Rule::NotAlmostOrthogonalHausdorffNotContinuous => &[(P::OContinuous, false)],
            Rule::NotAlmostOrthogonalTopologiesDiffer => &[(P::TauEqualities, false)],
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Rule::MvHausdorff => {
                "an Archimedean atomic MV-effect algebra has a Hausdorff interval topology and τ_i = τ_o = τ_Φ"
            }
            Rule::AlmostOrthogonalHausdorff => {
                "an almost orthogonal Archimedean atomic lattice effect algebra has a Hausdorff interval topology"
            }
            Rule::AlmostOrthogonalCompactlyGenerated => {
                "an almost orthogonal Archimedean atomic lattice effect algebra is compactly generated, hence (o)-continuous"
            }
            Rule::AlmostOrthogonalTopologiesAgree => {
                "an almost orthogonal Archimedean atomic lattice effect algebra has τ_i = τ_o = τ_Φ"
            }
            Rule::BlockFiniteHausdorff => {
                "a block-finite Archimedean atomic lattice effect algebra has τ_i = τ_o Hausdorff"
            }
            Rule::CompleteIsCompact => "the interval topology of a complete lattice is compact",
            Rule::IncompleteIsNotCompact => "the interval topology of a lattice that is not complete is not compact",
            Rule::CompactlyGeneratedIsContinuous => {
                "a complete compactly generated lattice effect algebra is (o)-continuous"
            }
            Rule::ContinuousIsCompactlyGenerated => {
                "a complete atomic (o)-continuous lattice effect algebra is compactly generated"
            }
            Rule::BlockFiniteNotAlmostOrthogonal => {
                "for block-finite complete atomic lattice effect algebras, almost orthogonality, compact generation, (o)-continuity and τ_i = τ_o = τ_Φ are equivalent"
            }
            Rule::NotAlmostOrthogonalContinuousNotHausdorff
            | Rule::NotAlmostOrthogonalHausdorffNotContinuous
            | Rule::NotAlmostOrthogonalTopologiesDiffer => {
                "for Archimedean atomic lattice effect algebras, almost orthogonality, (o)-continuity with a Hausdorff τ_i, and τ_i = τ_o = τ_Φ are equivalent"
            }
        }
    }
}

/// Where a flag came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Justification {
    Direct(DirectFact),
    Rule(Rule),
}

impl Justification {
    pub fn statement(self) -> &'static str {
        match self {
            Justification::Direct(d) => d.statement(),
            Justification::Rule(r) => r.statement(),
        }
    }
}

/// One value per property, each decided flag with exactly one
/// justification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyVerdict {
    pub kind: FamilyKind,
    pub flags: Vec<(Property, Truth, Option<Justification>)>,
}

impl FamilyVerdict {
    pub fn get(&self, p: Property) -> Truth {
        self.flags.iter().find(|f| f.0 == p).map_or(Truth::Unknown, |f| f.1)
    }

    pub fn justification(&self, p: Property) -> Option<Justification> {
        self.flags.iter().find(|f| f.0 == p).and_then(|f| f.2)
    }

    /// Every rule-derived flag has its premises flagged as required.
    pub fn is_sound(&self) -> bool {
        self.flags.iter().all(|(_, truth, j)| match (truth, j) {
            (Truth::Unknown, None) => true,
            (Truth::Unknown, Some(_)) | (_, None) => false,
            (_, Some(Justification::Direct(_))) => true,
            (_, Some(Justification::Rule(r))) => r.premises().iter().all(|&(p, v)| self.get(p) == Truth::of(v)),
        })
    }
}

/// Decides the properties of a family: direct facts first, then the rule
/// base to a fixpoint. Whatever nothing decides stays `UNKNOWN`.
pub fn family_analyze(f: &SymbolicFamily) -> Result<FamilyVerdict> {
    let mut flags: Vec<(Property, Truth, Option<Justification>)> =
        Property::ALL.iter().map(|&p| (p, Truth::Unknown, None)).collect();
    let set = |flags: &mut Vec<(Property, Truth, Option<Justification>)>,
               p: Property,
               v: bool,
               j: Justification|
     -> Result<bool> {
        let slot = flags.iter_mut().find(|f| f.0 == p).expect("all properties listed");
        match slot.1 {
            Truth::Unknown => {
                *slot = (p, Truth::of(v), Some(j));
                Ok(true)
            }
            t if t == Truth::of(v) => Ok(false),
            _ => Err(falsified("the verdict rules are consistent", format!("{} from {:?}", p.name(), j))),
        }
    };

    let count = f.summand_count();
    let direct = |d| Justification::Direct(d);
    set(&mut flags, P::Atomic, true, direct(DirectFact::SummandsAtomic))?;
    set(&mut flags, P::Archimedean, true, direct(DirectFact::SummandsArchimedean))?;
    set(&mut flags, P::Complete, true, direct(DirectFact::SummandsComplete))?;
    set(&mut flags, P::BlockFinite, count != Count::Infinite, direct(DirectFact::BlocksAreSummands))?;
    set(&mut flags, P::Mv, matches!(count, Count::Finite(0 | 1)), direct(DirectFact::BlocksAreSummands))?;
    set(
        &mut flags,
        P::AlmostOrthogonal,
        !f.some_atom_sees_infinitely_many(),
        direct(DirectFact::AtomsOfOtherSummands),
    )?;
    if f.effective().all(|(s, _)| s.is_finite_lattice()) {
        set(&mut flags, P::CompactlyGenerated, true, direct(DirectFact::FiniteSummandsCompact))?;
    }

    loop {
        let mut changed = false;
        for rule in Rule::ALL {
            let fires = rule
                .premises()
                .iter()
                .all(|&(p, v)| flags.iter().find(|fl| fl.0 == p).is_some_and(|fl| fl.1 == Truth::of(v)));
            if fires {
                for &(p, v) in rule.conclusions() {
                    changed |= set(&mut flags, p, v, Justification::Rule(rule))?;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let verdict = FamilyVerdict { kind: f.kind(), flags };
    debug_assert!(verdict.is_sound());
    Ok(verdict)
}

/// Parses and analyses in one step.
pub fn analyze_spec(src: &str) -> Result<FamilyVerdict> {
    let spec = parse_spec(src).map_err(|e| Error::InvalidArgument(format!("{e}")))?;
    family_analyze(&SymbolicFamily::from_spec(&spec)?)
}

impl From<SpecError> for Error {
    fn from(e: SpecError) -> Self {
        Error::InvalidArgument(format!("{e}"))
    }
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn ok<T: Send + Sync>() {}
    ok::<SymbolicFamily>();
    ok::<Box<FamilyVerdict>>();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::almost_orthogonality;

    fn verdict(src: &str) -> FamilyVerdict {
        analyze_spec(src).unwrap()
    }

    #[test]
    fn grammar() {
        assert_eq!(parse_spec("chain:7").unwrap(), Spec::Chain(7));
        assert_eq!(
            parse_spec("hsum(chain:3 * inf)").unwrap(),
            Spec::HSum(alloc::vec![(Spec::Chain(3), Count::Infinite)])
        );
        assert_eq!(
            parse_spec(" hsum( boolean:inf*2 ) ").unwrap(),
            Spec::HSum(alloc::vec![(Spec::Boolean(Count::Infinite), Count::Finite(2))])
        );
        assert_eq!(parse_spec("chain:3..").unwrap(), Spec::ChainsFrom(3));
        let e = parse_spec("hsum(chain:3 * )").unwrap_err();
        assert_eq!(e.position, 15);
        assert_eq!(parse_spec("chain:1").unwrap_err().position, 0);
        assert!(parse_spec("chain:3 x").is_err());
        let s = parse_spec("hsum(chain:3, boolean:2 * 2)").unwrap();
        assert_eq!(parse_spec(&alloc::format!("{s}")).unwrap(), s);
    }

    #[test]
    fn infinitely_many_chains() {
        let v = verdict("hsum(chain:3 * inf)");
        assert_eq!(v.kind, FamilyKind::HorizontalSumOfChains);
        assert_eq!(v.get(P::TauIHausdorff), Truth::False);
        assert_eq!(v.get(P::TauICompact), Truth::True);
        assert_eq!(v.get(P::CompactlyGenerated), Truth::True);
        assert_eq!(v.get(P::AlmostOrthogonal), Truth::False);
        assert_eq!(v.get(P::BlockFinite), Truth::False);
        assert!(v.is_sound());
        assert_eq!(verdict("chain:3..").flags, v.flags);
    }

    #[test]
    fn finitely_many_infinite_booleans() {
        let v = verdict("hsum(boolean:inf * 2)");
        assert_eq!(v.get(P::AlmostOrthogonal), Truth::False);
        assert_eq!(v.get(P::BlockFinite), Truth::True);
        assert_eq!(v.get(P::TauIHausdorff), Truth::True);
        assert_eq!(v.get(P::TauICompact), Truth::True);
        assert_eq!(v.get(P::CompactlyGenerated), Truth::False);
        assert_eq!(v.justification(P::TauIHausdorff), Some(Justification::Rule(Rule::BlockFiniteHausdorff)));
    }

    #[test]
    fn single_chain_is_mv() {
        let v = verdict("chain:7");
        assert_eq!(v.kind, FamilyKind::MvChain(7));
        assert_eq!(v.get(P::AlmostOrthogonal), Truth::True);
        assert_eq!(v.justification(P::TauIHausdorff), Some(Justification::Rule(Rule::MvHausdorff)));
    }

    #[test]
    fn undecided_flags_stay_unknown() {
        let v = verdict("hsum(boolean:inf * inf)");
        assert_eq!(v.get(P::TauIHausdorff), Truth::Unknown);
        assert_eq!(v.get(P::CompactlyGenerated), Truth::Unknown);
        assert!(v.is_sound());
        // one infinite Boolean algebra alone is MV
        assert_eq!(verdict("boolean:inf").get(P::AlmostOrthogonal), Truth::True);
    }

    #[test]
    fn truncations_grow_witnesses() {
        let f = SymbolicFamily::from_spec(&parse_spec("hsum(chain:3 * inf)").unwrap()).unwrap();
        let caps = Caps::default();
        let sizes: Vec<usize> = [1, 2, 5]
            .iter()
            .map(|&k| {
                let e = family_truncate(&f, Truncation { summands: k, atoms: 3 }, &caps).unwrap();
                let l = e.as_lattice().unwrap();
                almost_orthogonality(l).unwrap().a_set(e.atoms()[0]).unwrap().len()
            })
            .collect();
        assert_eq!(sizes, [0, 1, 4]);
    }

    #[test]
    fn building_finite_specs() {
        let caps = Caps::default();
        let e = parse_spec("hsum(chain:3 * 2)").unwrap().build(&caps).unwrap();
        assert_eq!(e.labels(), ["0", "a", "b", "1"]);
        assert_eq!(parse_spec("prod(chain:3, chain:3)").unwrap().build(&caps).unwrap().len(), 9);
        assert!(parse_spec("hsum(chain:3 * inf)").unwrap().build(&caps).is_err());
        assert!(parse_spec("boolean:9").unwrap().build(&caps).unwrap_err().is_cap());
    }
}
