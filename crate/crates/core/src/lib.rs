//! Finite lattice effect algebras and a small theory of their interval
//! topologies.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function over immutable, validated instances; file formats, reports and
//! the command line live in the companion `lea-cli` crate.
//!
//! The central type is [`EffectAlgebra`]: a finite carrier with a partial
//! sum table, validated against the effect-algebra axioms at construction.
//! Order-theoretic structure (order, orthosupplement, difference, meets and
//! joins, atoms and their orders) is derived once and cached. Operations that
//! need a lattice take a [`LatticeEa`] view, obtained with
//! [`EffectAlgebra::as_lattice`].
//!
//! ```
//! use lea_core::generators::{chain, horizontal_sum};
//!
//! let c3 = chain(3).unwrap();
//! let hs = horizontal_sum(&[c3.clone(), c3]).unwrap().algebra;
//! let lattice = hs.as_lattice().unwrap();
//! let blocks = lea_core::structure::blocks(lattice).unwrap();
//! assert_eq!(blocks.blocks.len(), 2);
//! ```
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod caps;
pub mod completion;
mod error;
pub mod generators;
pub mod order;
mod set;
pub mod states;
pub mod structure;
pub mod suites;
pub mod table;
pub mod topology;

pub use algebra::{EffectAlgebra, LatticeEa};
pub use caps::Caps;
pub use error::Error;
pub use set::ElemSet;
pub use table::{validate, Axiom, PartialSumTable, ValidationReport, Violation};

/// Index of an element in the carrier. Index 0 is always the zero.
pub type Elem = usize;

pub type Result<T, E = Error> = core::result::Result<T, E>;
