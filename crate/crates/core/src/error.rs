use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the library. `kind` and `exit_code` are the stable
/// machine-readable classification used by the CLI and the JSON error schema.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    // --- discriminant / input construction ---
    #[error("invalid discriminant: {0}")]
    InvalidDiscriminant(String),
    #[error("factorization incomplete; supply factored form (composite cofactor {cofactor})")]
    IncompleteFactorization { cofactor: BigUint },
    #[error("|n| exceeds factorization bound {bound}; supply factored form")]
    FactorBoundExceeded { bound: BigUint },
    #[error("parse failure: {0}")]
    ParseFailure(String),

    // --- domain validation ---
    #[error("wild ramification at p = {prime}")]
    WildRamification { prime: BigUint },
    #[error("non-integral ramification index at p = {prime}: e_p = {m}/{denominator}")]
    NonIntegralRamificationIndex {
        prime: BigUint,
        m: u64,
        denominator: u64,
    },
    #[error("ramification index undefined at p = {prime}: v_p = m")]
    RamificationIndexUndefined { prime: BigUint },
    #[error("negative ramification index at p = {prime}: v_p = {valuation} > m = {m}")]
    RamificationIndexNegative {
        prime: BigUint,
        valuation: u64,
        m: u64,
    },
    #[error("non-integral f_d at d = {divisor}: w_d = {w} is not 1 mod d")]
    NonIntegralF { divisor: u64, w: BigUint },
    #[error("ramified prime incongruent at p = {prime}: strict mode requires p = 1 mod e_p = {e}")]
    PrimeIncongruent { prime: BigUint, e: u64 },
    #[error("sign inconsistent with odd degree: negative discriminant, m = {m}")]
    SignInconsistentOdd { m: u64 },
    #[error("sign inconsistent with degree 0 mod 4: negative discriminant, m = {m}")]
    SignInconsistentMod4 { m: u64 },
    #[error("degree must be at least 2, got {m}")]
    DegreeTooSmall { m: u64 },

    // --- coefficient machinery ---
    #[error("profile inconsistent: coefficient system has non-integral solution at g = {divisor}")]
    ProfileInconsistent { divisor: u64 },
    #[error("literal/system disagreement at d = {divisor} < m: literal {literal}, system {system}")]
    LiteralSystemMismatch {
        divisor: u64,
        literal: String,
        system: String,
    },
    #[error("{0} does not divide m")]
    NotADivisor(u64),

    // --- matrix / lattice preconditions ---
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix dimension {0} out of range")]
    BadDimension(usize),
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("shape comparison restricted to totally real (positive definite) forms")]
    IndefiniteShape,
    #[error("dimension {dim} exceeds cap {cap} for {operation}")]
    DimensionCapExceeded {
        dim: usize,
        cap: usize,
        operation: &'static str,
    },

    // --- misc argument errors ---
    #[error("{0}")]
    InvalidArgument(String),
    #[error("internal invariant breached: {0}")]
    InternalInvariant(String),
}

impl Error {
    /// Stable snake_case tag for the JSON error schema.
    pub fn kind(&self) -> &'static str {
        use Error::*;
        match self {
            InvalidDiscriminant(_) => "invalid_discriminant",
            IncompleteFactorization { .. } => "incomplete_factorization",
            FactorBoundExceeded { .. } => "factor_bound_exceeded",
            ParseFailure(_) => "parse_failure",
            WildRamification { .. } => "wild_ramification",
            NonIntegralRamificationIndex { .. } => "non_integral_ramification_index",
            RamificationIndexUndefined { .. } => "ramification_index_undefined",
            RamificationIndexNegative { .. } => "ramification_index_negative",
            NonIntegralF { .. } => "non_integral_f_d",
            PrimeIncongruent { .. } => "prime_incongruent",
            SignInconsistentOdd { .. } => "sign_inconsistent_with_odd_degree",
            SignInconsistentMod4 { .. } => "sign_inconsistent_with_degree",
            DegreeTooSmall { .. } => "degree_too_small",
            ProfileInconsistent { .. } => "profile_inconsistent",
            LiteralSystemMismatch { .. } => "literal_system_disagreement",
            NotADivisor(_) => "not_a_divisor",
            DimensionMismatch { .. } => "dimension_mismatch",
            BadDimension(_) => "bad_dimension",
            NotSymmetric { .. } => "not_symmetric",
            NotPositiveDefinite => "not_positive_definite",
            IndefiniteShape => "indefinite_shape",
            DimensionCapExceeded { .. } => "dimension_cap_exceeded",
            InvalidArgument(_) => "invalid_argument",
            InternalInvariant(_) => "internal_invariant",
        }
    }

    /// CLI exit code class: 1 = invariant breach, 2 = domain validation
    /// failure, 3 = input parse failure.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            InvalidDiscriminant(_)
            | IncompleteFactorization { .. }
            | FactorBoundExceeded { .. }
            | ParseFailure(_) => 3,
            ProfileInconsistent { .. }
            | LiteralSystemMismatch { .. }
            | InternalInvariant(_) => 1,
            _ => 2,
        }
    }
}
