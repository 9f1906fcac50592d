//! Exact cyclotomic arithmetic, deformed integers, the exact trigonometric
//! sign oracle and the arbitrary-precision complex fallback.

mod approx;
mod cyclotomic;
mod qnum;
pub mod rational_serde;
mod scalar;
mod trig;

pub(crate) use approx::pi_times as pi_times_rational;
pub use approx::{bits_for_digits, format_decimal, zero_tolerance_exponent, ApproxComplex, MIN_DIGITS};
pub use cyclotomic::{cyclotomic_polynomial, CyclotomicField, CyclotomicNumber};
pub use qnum::{q_brace, q_bracket, q_bracket_by_sum, QContext};
pub use scalar::Scalar;
pub use trig::{trig_sign, RationalAngle, TrigKind};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot lift an element of Q(zeta_{from}) into Q(zeta_{to})")]
    OrderMismatch { from: u32, to: u32 },
    #[error("exact and approximate scalars cannot be mixed without an explicit conversion")]
    MixedVariants,
    #[error("undefined parameter: {0}")]
    UndefinedParameter(String),
    #[error("precision of {0} digits is below the minimum of 16")]
    PrecisionTooLow(u32),
    #[error("weight {weight} is not expressible in Q(zeta_{order})")]
    WeightOutsideField { weight: String, order: u32 },
}
