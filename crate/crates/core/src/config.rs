//! Resource limits for the search routines. Every potentially
//! exponential loop charges against one of these caps and returns a
//! structured error instead of running unbounded.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Bound on enumerated vectors or subspaces when walking submodule
    /// lattices.
    pub max_subspaces: usize,
    /// Bound on hom-space computations inside combinatorial searches.
    pub hom_budget: usize,
    /// Bound on module candidates generated per dimension vector.
    pub enum_candidates: usize,
    /// Number of randomized splitting attempts before falling back to
    /// exhaustive certification.
    pub random_trials: usize,
    /// Seed for all randomized attempts; fixed so runs are repeatable.
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_subspaces: 1_000_000,
            hom_budget: 1 << 20,
            enum_candidates: 1 << 22,
            random_trials: 64,
            seed: 42,
        }
    }
}
