//! The common coefficient type: either an exact cyclotomic value or an
//! arbitrary-precision complex approximation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use astro_float::BigFloat;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::approx::{bits_for_digits, zero_tolerance_exponent};
use super::{ApproxComplex, CyclotomicField, CyclotomicNumber, NumError, MIN_DIGITS};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Exact(CyclotomicNumber),
    Approx(ApproxComplex),
}

impl CyclotomicNumber {
    /// Numerical value `Σ c_j e^{2πij/N}` at `digits` decimal digits.
    pub fn to_approx(&self, digits: u32) -> ApproxComplex {
        let n = self.order() as i64;
        let den = super::approx::rational_to_float(
            &BigRational::from_integer(self.denominator().clone()),
            digits,
        );
        let mut acc = ApproxComplex::zero(digits);
        for (j, c) in self.numerators().iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let coeff = super::approx::rational_to_float(&BigRational::from_integer(c.clone()), digits);
            let z = if j == 0 {
                ApproxComplex::from_i64(1, digits)
            } else {
                ApproxComplex::cis_pi(
                    &BigRational::new((2 * j as i64).into(), n.into()),
                    digits,
                )
            };
            acc = acc.add(&z.scale(&coeff));
        }
        let p = bits_for_digits(digits);
        let inv = BigFloat::from_i64(1, p).div(&den, p, astro_float::RoundingMode::ToEven);
        acc.scale(&inv)
    }
}

impl Scalar {
    pub fn exact_integer(field: &std::sync::Arc<CyclotomicField>, v: i64) -> Self {
        Scalar::Exact(field.from_integer(v))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Precision of an approximate value, `None` for exact ones.
    pub fn digits(&self) -> Option<u32> {
        match self {
            Scalar::Exact(_) => None,
            Scalar::Approx(a) => Some(a.digits()),
        }
    }

    pub fn as_exact(&self) -> Option<&CyclotomicNumber> {
        match self {
            Scalar::Exact(x) => Some(x),
            Scalar::Approx(_) => None,
        }
    }

    /// A zero in the same backend (and field or precision) as `self`.
    pub fn zero_like(&self) -> Self {
        match self {
            Scalar::Exact(x) => Scalar::Exact(x.field().zero()),
            Scalar::Approx(a) => Scalar::Approx(ApproxComplex::zero(a.digits())),
        }
    }

    pub fn one_like(&self) -> Self {
        self.integer_like(1)
    }

    pub fn integer_like(&self, v: i64) -> Self {
        match self {
            Scalar::Exact(x) => Scalar::Exact(x.field().from_integer(v)),
            Scalar::Approx(a) => Scalar::Approx(ApproxComplex::from_i64(v, a.digits())),
        }
    }

    /// Exact zero test, or `|x| < 10^{-40}` (scaled for low precision) for approximations.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(x) => x.is_zero(),
            Scalar::Approx(a) => a.is_zero_within(zero_tolerance_exponent(a.digits())),
        }
    }

    pub fn is_zero_within(&self, tol_exp: u32) -> bool {
        match self {
            Scalar::Exact(x) => x.is_zero(),
            Scalar::Approx(a) => a.is_zero_within(tol_exp),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(x) => x.is_one(),
            Scalar::Approx(a) => {
                a.close_to(&ApproxComplex::from_i64(1, a.digits()), zero_tolerance_exponent(a.digits()))
            }
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, NumError> {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a + b)),
            (Scalar::Approx(a), Scalar::Approx(b)) => Ok(Scalar::Approx(a.add(b))),
            _ => Err(NumError::MixedVariants),
        }
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, NumError> {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a - b)),
            (Scalar::Approx(a), Scalar::Approx(b)) => Ok(Scalar::Approx(a.sub(b))),
            _ => Err(NumError::MixedVariants),
        }
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, NumError> {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a * b)),
            (Scalar::Approx(a), Scalar::Approx(b)) => Ok(Scalar::Approx(a.mul(b))),
            _ => Err(NumError::MixedVariants),
        }
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, NumError> {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.checked_div(b)?)),
            (Scalar::Approx(a), Scalar::Approx(b)) => Ok(Scalar::Approx(a.div(b)?)),
            _ => Err(NumError::MixedVariants),
        }
    }

    pub fn inv(&self) -> Result<Self, NumError> {
        match self {
            Scalar::Exact(a) => Ok(Scalar::Exact(a.inv()?)),
            Scalar::Approx(a) => Ok(Scalar::Approx(a.inv()?)),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self, NumError> {
        match self {
            Scalar::Exact(a) => Ok(Scalar::Exact(a.pow(e)?)),
            Scalar::Approx(a) => Ok(Scalar::Approx(a.powi(e)?)),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a.conj()),
            Scalar::Approx(a) => Scalar::Approx(a.conj()),
        }
    }

    /// Explicit downgrade to the approximate backend. Approximate inputs are
    /// re-rounded to `digits` when that lowers their precision.
    pub fn to_approx(&self, digits: u32) -> ApproxComplex {
        match self {
            Scalar::Exact(a) => a.to_approx(digits),
            Scalar::Approx(a) if a.digits() > digits => a.with_digits(digits),
            Scalar::Approx(a) => a.clone(),
        }
    }

    /// As [`Scalar::to_approx`], refusing precisions below 16 digits.
    pub fn to_complex(&self, digits: u32) -> Result<ApproxComplex, NumError> {
        if digits < MIN_DIGITS {
            return Err(NumError::PrecisionTooLow(digits));
        }
        Ok(self.to_approx(digits))
    }

    /// Difference below `10^{-tol_exp}`; exact pairs compare exactly.
    pub fn approx_eq(&self, o: &Self, tol_exp: u32) -> bool {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => {
                let d = self.digits().into_iter().chain(o.digits()).min().unwrap_or(64);
                self.to_approx(d).close_to(&o.to_approx(d), tol_exp)
            }
        }
    }
}

/// Structural equality: exact values compare exactly, approximations compare
/// bit-for-bit at equal precision, and the two backends never compare equal.
impl PartialEq for Scalar {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Approx(a), Scalar::Approx(b)) => {
                a.digits() == b.digits()
                    && a.re().cmp(b.re()) == Some(0)
                    && a.im().cmp(b.im()) == Some(0)
            }
            _ => false,
        }
    }
}

impl From<CyclotomicNumber> for Scalar {
    fn from(x: CyclotomicNumber) -> Self {
        Scalar::Exact(x)
    }
}

impl From<ApproxComplex> for Scalar {
    fn from(x: ApproxComplex) -> Self {
        Scalar::Approx(x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(x) => fmt::Display::fmt(x, f),
            Scalar::Approx(a) => fmt::Display::fmt(a, f),
        }
    }
}

// Operator forms panic when the backends differ; use the `checked_*`
// methods where inputs may legitimately be mixed.
macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).expect("mixed exact/approximate scalar arithmetic")
            }
        }
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Approx(a) => Scalar::Approx(a.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q_bracket;

    #[test]
    fn mixing_backends_is_refused() {
        let f = CyclotomicField::new(4);
        let e = Scalar::Exact(f.one());
        let a = Scalar::Approx(ApproxComplex::from_i64(1, 32));
        assert_eq!(e.checked_add(&a), Err(NumError::MixedVariants));
        let down = Scalar::Approx(e.to_approx(32));
        assert!(down.checked_add(&a).is_ok());
    }

    #[test]
    #[should_panic(expected = "mixed")]
    fn operator_mixing_panics() {
        let f = CyclotomicField::new(4);
        let _ = &Scalar::Exact(f.one()) + &Scalar::Approx(ApproxComplex::from_i64(1, 32));
    }

    #[test]
    fn zeta4_is_i() {
        let i = Scalar::Exact(CyclotomicField::new(4).zeta_pow(1));
        let z = i.to_complex(32).unwrap();
        assert!(z.close_to(&ApproxComplex::parse("0", "1", 32).unwrap(), 31));
    }

    #[test]
    fn bracket_sqrt2_numerically() {
        let b = Scalar::Exact(q_bracket(1, 2, 2).unwrap());
        let z = b.to_complex(32).unwrap();
        let sqrt2 = ApproxComplex::parse("1.4142135623730950488016887242096980785696", "0", 32).unwrap();
        assert!(z.close_to(&sqrt2, 31));
    }

    #[test]
    fn zero_converts_to_zero() {
        let z = Scalar::Exact(CyclotomicField::new(12).zero()).to_complex(20).unwrap();
        assert!(z.is_zero_within(100));
        assert_eq!(
            Scalar::Exact(CyclotomicField::new(12).zero()).to_complex(8).err(),
            Some(NumError::PrecisionTooLow(8))
        );
    }

    #[test]
    fn precision_follows_least_precise_operand() {
        let a = Scalar::Approx(ApproxComplex::from_i64(3, 64));
        let b = Scalar::Approx(ApproxComplex::from_i64(5, 24));
        assert_eq!((&a * &b).digits(), Some(24));
    }

    #[test]
    fn json_untagged_forms() {
        let e = Scalar::Exact(CyclotomicField::new(4).zeta_pow(1));
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"order":4,"coeffs":[[0,1],[1,1]]}"#);
        assert_eq!(serde_json::from_str::<Scalar>(&s).unwrap(), e);
        let a: Scalar = serde_json::from_str(r#"{"re":"0.5","im":"-2","digits":20}"#).unwrap();
        assert_eq!(a.digits(), Some(20));
    }
}
