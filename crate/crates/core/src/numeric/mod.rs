//! Integers, rationals and cut-based reals, with the word encodings of integers and rationals.

mod encode;
mod int;
mod rat;
mod real;

use thiserror::Error;

pub use encode::{int_decode, int_encode, int_word, rat_decode, rat_encode};
pub use int::{int_arith, CanonInt, IntOp};
pub use rat::{rat_arith, rat_cmp, CanonRat, RatOp};
pub use real::{
    builtin_real, cauchy_limit, real_approx, real_arith, real_cmp, real_cmp_rat, real_extremum,
    real_from_rational, CutReal, CutSide, CutSource, Extremum, ModulusSequence, RealOp, PRECISION_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("malformed encoding at bit {position}: {reason}")]
    Decode { position: usize, reason: String },
    #[error("value too large: {0}")]
    TooLarge(String),
    #[error("{0}")]
    Parse(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
}
