//! Size caps for the exact searches.
//!
//! All caps can be overridden at once through the `BRACE_FORGE_CAP`
//! environment variable (a single integer applied to every cap).

/// Size caps consulted by operations that would otherwise run unbounded
/// exact searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum group order for full class/character analysis.
    pub char_order: usize,
    /// Maximum order of a lambda group for structural construction.
    pub lambda_order: usize,
    /// Maximum `p^n` accepted by the radical-brace constructor.
    pub radical_order: usize,
    /// Maximum `|A/Ann(A)|` in the isoclinism decider.
    pub isoclinism_quotient: usize,
    /// Maximum `|A'|` in the isoclinism decider.
    pub isoclinism_derived: usize,
    /// Maximum `d * |Lambda|` in the irreducibility test.
    pub rep_points: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            char_order: 4096,
            lambda_order: 20736,
            radical_order: 4096,
            isoclinism_quotient: 64,
            isoclinism_derived: 64,
            rep_points: 8192,
        }
    }
}

impl Caps {
    /// Default caps, with every field overridden by `BRACE_FORGE_CAP`
    /// when that variable is set to a positive integer.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Ok(raw) = std::env::var("BRACE_FORGE_CAP") {
            if let Ok(value) = raw.trim().parse::<usize>() {
                if value > 0 {
                    caps.char_order = value;
                    caps.lambda_order = value;
                    caps.radical_order = value;
                    caps.isoclinism_quotient = value;
                    caps.isoclinism_derived = value;
                    caps.rep_points = value;
                }
            }
        }
        caps
    }
}
