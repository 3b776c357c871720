use thiserror::Error;

/// Errors surfaced by the exact and numeric computations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("rational function has a pole at n = {0}")]
    PoleAt(String),

    #[error("series reciprocal requires a nonzero constant term")]
    ReciprocalZeroConstant,

    #[error("series has nonzero coefficient below the expected valuation {expected} (index {index})")]
    ValuationTooLow { expected: usize, index: usize },

    #[error("numerator degree {num_degree} exceeds denominator degree {den_degree}; no expansion in nonpositive powers")]
    PolynomialPart { num_degree: usize, den_degree: usize },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("moment order r = {0} not supported (0..=4)")]
    UnsupportedOrder(u32),

    #[error("work budget exceeded: need ~{needed} kernel applications, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("sample too small: need at least {need}, got {got}")]
    InsufficientSample { need: usize, got: usize },

    #[error("fit is underdetermined: {unknowns} unknowns, {rows} usable rows")]
    Underdetermined { unknowns: usize, rows: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
