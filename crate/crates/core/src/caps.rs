//! Enumeration caps for brute-force routines.

/// Upper bounds on every enumeration the crate performs. Exceeding one is
/// reported as [`crate::Error::CapExceeded`] or an "unknown" verdict, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Codewords enumerated by brute force (q^k).
    pub codewords: u64,
    /// Characteristic matrices returned by enumeration.
    pub matrices: u64,
    /// Vertices or edges expanded per time index.
    pub expand: u64,
    /// Cycles enumerated explicitly.
    pub cycles: u64,
    /// Candidate map tuples scanned by the isomorphism search.
    pub iso_scan: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            codewords: 1 << 20,
            matrices: 100_000,
            expand: 1 << 16,
            cycles: 1 << 20,
            iso_scan: 1_000_000,
        }
    }
}

impl Caps {
    /// Every cap set to `n`.
    pub fn uniform(n: u64) -> Self {
        Self {
            codewords: n,
            matrices: n,
            expand: n,
            cycles: n,
            iso_scan: n,
        }
    }

    /// Defaults, overridden by `TAILBITE_CAP` when it holds an integer.
    pub fn from_env() -> Self {
        std::env::var("TAILBITE_CAP")
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .map(Self::uniform)
            .unwrap_or_default()
    }
}
