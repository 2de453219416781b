/// Resource caps shared by the constructors and enumerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order any constructor will build.
    pub max_order: usize,
    /// Largest number of subgroups the lattice enumerator will hold.
    pub max_lattice: usize,
    /// Tables up to this order get an exhaustive associativity check.
    pub associativity_bound: usize,
    /// Node budget for isomorphism backtracking.
    pub iso_budget: u64,
    /// Coset table capacity for Todd-Coxeter enumeration.
    pub max_cosets: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 10_000,
            max_lattice: 100_000,
            associativity_bound: 512,
            iso_budget: 10_000_000,
            max_cosets: 20_000,
        }
    }
}
