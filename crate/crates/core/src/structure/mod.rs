//! Atomic, compatibility, block, sharpness, compactness and
//! almost-orthogonality structure of finite lattice effect algebras.

mod ao;
pub mod atoms;
mod blocks;
mod compact;
mod decompose;

pub use ao::{almost_orthogonality, atom_witnesses, AOReport, AtomWitnesses};
pub use atoms::{atom_analysis, AtomTable, Multiplicity};
pub use blocks::{blocks, compatible, sharp_elements, BlockDecomposition};
pub use compact::{is_compact_element, is_s_compact};
pub use decompose::{decompose, Decomposition};
