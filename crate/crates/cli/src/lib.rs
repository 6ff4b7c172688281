//! The `lea` command line.
//!
//! ```text
//! lea [--format human|machine] COMMAND
//!
//!   verify FILE                 check the axioms, exit 2 with a witness on failure
//!   analyze FILE                structure, witnesses, topology, completion, states
//!   blocks FILE                 blocks, S(E), B(E), C(E)
//!   decompose FILE ELEM         atom multiples summing (and joining) to ELEM
//!   separate FILE X Y           disjoint clopen intervals around X and Y
//!   cover FILE X Y              two intervals per block covering E, X and Y apart
//!   partition FILE ATOM L       the clopen partition at ATOM, level L
//!   states FILE [--extreme] [--extend-from sharp|e1|block:I]
//!   complete FILE               Dedekind–MacNeille completion and closedness
//!   gen SPEC                    print the instance file of a finite family spec
//!   enumerate --max-size N      all effect algebras up to isomorphism
//!   family SPEC                 symbolic verdicts for an infinite family
//!   check-all FILE              every check suite
//!   dot FILE [--highlight W]    Hasse diagram; W is separate:X,Y, cover:X,Y,
//!                               partition:ATOM,L or block:I
//! ```
//!
//! `FILE` may be `-` for standard input. Elements are named by label.
//!
//! Family specs:
//!
//! ```text
//! spec  := "chain:" N            a chain with N elements
//!        | "chain:" N ".."       one chain of every length >= N
//!        | "boolean:" K | "boolean:inf"
//!        | "hsum(" item ("," item)* ")"
//!        | "prod(" spec ("," spec)* ")"     finite factors only
//! item  := spec ["*" (N | "inf")]           repeated summands
//! ```
//!
//! Exit codes: 0 all checks pass, 1 usage, input or IO error, 2 a check
//! failed (falsification) or the table is not an effect algebra, 3 a
//! brute-force cap was exceeded. `EA_CAPS=topology=10,states=20` overrides
//! caps (keys: compact, topology, states, enumerate, carrier).

pub mod commands;
pub mod dot;
pub mod instance;
pub mod report;

use lea_core::Caps;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] lea_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 1,
            CliError::Core(e) if e.is_falsification() => 2,
            CliError::Core(lea_core::Error::NotEffectAlgebra(_)) => 2,
            CliError::Core(e) if e.is_cap() => 3,
            CliError::Core(_) => 1,
        }
    }
}

/// Parses `key=value,key=value` onto the default caps.
pub fn parse_caps(spec: &str) -> Result<Caps, CliError> {
    let mut caps = Caps::default();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("EA_CAPS: expected key=value, got {item:?}")))?;
        let v: usize = v.trim().parse().map_err(|_| CliError::Usage(format!("EA_CAPS: {k}: not a number: {v:?}")))?;
        if !caps.set(k.trim(), v) {
            return Err(CliError::Usage(format!("EA_CAPS: unknown cap {k:?}")));
        }
    }
    Ok(caps)
}
