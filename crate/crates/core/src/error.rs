use num_bigint::BigInt;

/// Errors surfaced by the exact-arithmetic and classification layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("element is a zero divisor")]
    ZeroDivisor,
    #[error("polynomial fails the q-symmetry functional equation for q = {q}")]
    NotQSymmetric { q: BigInt },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("generators do not span a full-rank lattice")]
    NotFullRank,
    #[error("lattice is not contained in the reference lattice")]
    NotContained,
    #[error("trace form is degenerate")]
    DegenerateTrace,
    #[error("not a Weil polynomial: {reason}")]
    NotWeil { reason: String },
    #[error("{0} is not a prime power")]
    NotPrimePower(BigInt),
    #[error("partition has {parts} parts but at most {max} are allowed")]
    PartitionTooLong { parts: usize, max: usize },
    #[error("enumeration bound exceeded ({candidates} candidates, cap {cap})")]
    BoundExceeded { candidates: BigInt, cap: usize },
    #[error("incomplete integer factorization: composite cofactor {cofactor}")]
    PartialFactorization { cofactor: BigInt },
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}
