use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} exceeds the configured cap of {limit}")]
    CapExceeded { what: &'static str, limit: usize },

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("generator {index} is not a bijection on {degree} points")]
    NotBijection { index: usize, degree: usize },

    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("action is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subset does not form a subgroup of the given group: {0}")]
    NotSubgroup(String),

    #[error("isomorphism search exceeded its node budget of {budget}")]
    SearchBudget { budget: u64 },

    #[error("coset enumeration exceeded {limit} cosets")]
    CosetOverflow { limit: usize },

    #[error("malformed relator: {0}")]
    MalformedRelator(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures caused by a configured resource cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::SearchBudget { .. } | Error::CosetOverflow { .. }
        )
    }
}
