//! Brute-force limits. Every exponential procedure checks its cap and
//! refuses with [`Error::CapExceeded`](crate::Error::CapExceeded) instead of
//! guessing.

/// Carrier-size limits for the exhaustive procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Subset scans in the compactness checks (2^n subsets).
    pub compact: usize,
    /// Explicit closed-set families of generated topologies.
    pub topology: usize,
    /// Variables in state-polytope vertex enumeration.
    pub states: usize,
    /// Largest carrier for the exhaustive enumerator.
    pub enumerate: usize,
    /// Largest carrier for constructed and truncated instances.
    pub carrier: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { compact: 16, topology: 12, states: 32, enumerate: 8, carrier: 256 }
    }
}

impl Caps {
    /// Sets a cap by name; returns false for an unknown key.
    pub fn set(&mut self, key: &str, value: usize) -> bool {
        let slot = match key {
            "compact" => &mut self.compact,
            "topology" => &mut self.topology,
            "states" => &mut self.states,
            "enumerate" => &mut self.enumerate,
            "carrier" => &mut self.carrier,
            _ => return false,
        };
        *slot = value;
        true
    }

    pub(crate) fn check(limit: usize, what: &'static str, size: usize) -> crate::Result<()> {
        if size > limit {
            Err(crate::Error::CapExceeded { what, size, cap: limit })
        } else {
            Ok(())
        }
    }
}
