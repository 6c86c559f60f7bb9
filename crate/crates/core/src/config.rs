//! Resource caps shared by the state-sum engines.

use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of Kauffman states enumerated by the reference state sum.
    pub bracket_states: u64,
    /// Maximum number of axis crossings expanded by the refined polynomial.
    pub axis_crossings: usize,
    /// Maximum number of spin assignments enumerated by brute force.
    pub spin_evaluations: u64,
    /// Largest diagram a random move may produce.
    pub crossing_budget: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            bracket_states: 1 << 26,
            axis_crossings: 24,
            spin_evaluations: 1 << 28,
            crossing_budget: 40,
        }
    }
}

impl Caps {
    /// Defaults, with `SYMKNOT_CAP_STATES` overriding the bracket state cap.
    pub fn from_env() -> Self {
        let mut c = Self::default();
        if let Some(v) = std::env::var("SYMKNOT_CAP_STATES").ok().and_then(|s| parse_cap(&s)) {
            c.bracket_states = v;
        }
        c
    }
}

/// Accepts a plain count or `2^k`.
pub fn parse_cap(s: &str) -> Option<u64> {
    let s = s.trim();
    match s.split_once('^') {
        Some(("2", k)) => k.trim().parse::<u32>().ok().filter(|&k| k < 64).map(|k| 1u64 << k),
        Some(_) => None,
        None => s.parse().ok().filter(|&v| v > 0),
    }
}

static DEFAULT_CAPS: OnceLock<Caps> = OnceLock::new();

pub fn default_caps() -> Caps {
    *DEFAULT_CAPS.get_or_init(Caps::from_env)
}
