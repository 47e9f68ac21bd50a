/// Size limits applied by the enumerating and solving routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Budgets {
    /// Largest group produced by generator closure.
    pub enumeration_cap: usize,
    /// Largest admissible (|G|-1)^2 for a cohomology computation.
    pub cohomology_unknowns: u64,
    /// Largest enumerated group of classes (H^2 sharp, Q(k,G), BM).
    pub class_enumeration: u64,
    /// Largest Hopf algebra dimension checked exhaustively.
    pub hopf_dim: usize,
    /// Number of sampled triples when the algebra is above `hopf_dim`.
    pub hopf_samples: usize,
    /// Seed for randomized projections and sampling.
    pub seed: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            enumeration_cap: 200_000,
            cohomology_unknowns: 150_000,
            class_enumeration: 1 << 12,
            hopf_dim: 64,
            hopf_samples: 20_000,
            seed: 0x5eed,
        }
    }
}
