//! Deformed integers `[x]` and `{x}` at `q = ζ_{4k}^m`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{CyclotomicField, CyclotomicNumber, NumError};

/// Arithmetic context for `q = e^{iπm/(2k)}` with rational exponents of
/// denominator dividing `den`. Values live in `Q(ζ_{4k·den})`, where
/// `q^{a/den} = ζ_{4k·den}^{m·a}`.
#[derive(Clone, Debug)]
pub struct QContext {
    m: i64,
    k: i64,
    den: i64,
    field: Arc<CyclotomicField>,
    inv_minus: CyclotomicNumber,
    inv_plus: Option<CyclotomicNumber>,
}

impl QContext {
    pub fn new(m: i64, k: i64, den: i64) -> Result<Self, NumError> {
        if k < 1 || den < 1 {
            return Err(NumError::UndefinedParameter(format!(
                "k = {k} and denominator {den} must be positive"
            )));
        }
        if m.rem_euclid(2 * k) == 0 {
            return Err(NumError::UndefinedParameter(format!(
                "q = ±1 for m = {m}, k = {k}"
            )));
        }
        let order = 4 * k * den;
        let field = CyclotomicField::new(u32::try_from(order).map_err(|_| {
            NumError::UndefinedParameter(format!("cyclotomic order {order} too large"))
        })?);
        let q = field.zeta_pow(m * den);
        let qi = field.zeta_pow(-m * den);
        let inv_minus = (&q - &qi).inv()?;
        let inv_plus = (&q + &qi).inv().ok();
        Ok(QContext {
            m,
            k,
            den,
            field,
            inv_minus,
            inv_plus,
        })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// Common denominator of admissible exponents.
    pub fn exponent_denominator(&self) -> i64 {
        self.den
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn one(&self) -> CyclotomicNumber {
        self.field.one()
    }

    /// `q^n` for integer `n`.
    pub fn q_pow_int(&self, n: i64) -> CyclotomicNumber {
        self.field.zeta_pow(self.m * self.den * n)
    }

    fn scaled_exponent(&self, x: &BigRational) -> Result<i64, NumError> {
        let scaled = x * BigRational::from_integer(BigInt::from(self.den));
        if !scaled.is_integer() {
            return Err(NumError::WeightOutsideField {
                weight: x.to_string(),
                order: self.field.order(),
            });
        }
        let modulus = BigInt::from(4 * self.k * self.den);
        let e = (scaled.to_integer() * self.m).mod_floor(&modulus);
        Ok(e.to_i64().expect("exponent reduced below the field order"))
    }

    /// `q^x` for rational `x` with denominator dividing the context's.
    pub fn q_pow(&self, x: &BigRational) -> Result<CyclotomicNumber, NumError> {
        Ok(self.field.zeta_pow(self.scaled_exponent(x)?))
    }

    /// `1/(q - q⁻¹)`.
    pub fn inv_q_minus(&self) -> &CyclotomicNumber {
        &self.inv_minus
    }

    /// `1/(q + q⁻¹)`; an error when `q = ±i`.
    pub fn inv_q_plus(&self) -> Result<&CyclotomicNumber, NumError> {
        self.inv_plus.as_ref().ok_or_else(|| {
            NumError::UndefinedParameter(format!("q = ±i for m = {}, k = {}", self.m, self.k))
        })
    }

    /// `[x] = (q^x - q^{-x})/(q - q⁻¹)`.
    pub fn bracket(&self, x: &BigRational) -> Result<CyclotomicNumber, NumError> {
        let e = self.scaled_exponent(x)?;
        let num = self.field.zeta_pow(e) - self.field.zeta_pow(-e);
        Ok(&num * &self.inv_minus)
    }

    /// `{x} = (q^x + q^{-x})/(q + q⁻¹)`.
    pub fn brace(&self, x: &BigRational) -> Result<CyclotomicNumber, NumError> {
        let e = self.scaled_exponent(x)?;
        let inv = self.inv_q_plus()?;
        let num = self.field.zeta_pow(e) + self.field.zeta_pow(-e);
        Ok(&num * inv)
    }

    pub fn bracket_int(&self, n: i64) -> CyclotomicNumber {
        self.bracket(&BigRational::from_integer(n.into()))
            .expect("integer exponents always lie in the field")
    }

    pub fn brace_int(&self, n: i64) -> Result<CyclotomicNumber, NumError> {
        self.brace(&BigRational::from_integer(n.into()))
    }
}

/// `[n]` at `q = ζ_{4k}^m`, in `Q(ζ_{4k})`.
pub fn q_bracket(m: i64, k: i64, n: i64) -> Result<CyclotomicNumber, NumError> {
    Ok(QContext::new(m, k, 1)?.bracket_int(n))
}

/// `{n}` at `q = ζ_{4k}^m`, in `Q(ζ_{4k})`.
pub fn q_brace(m: i64, k: i64, n: i64) -> Result<CyclotomicNumber, NumError> {
    QContext::new(m, k, 1)?.brace_int(n)
}

/// `[n]` through the division-free expansion `q^{n-1} + q^{n-3} + … + q^{1-n}`.
pub fn q_bracket_by_sum(m: i64, k: i64, n: i64) -> Result<CyclotomicNumber, NumError> {
    let ctx = QContext::new(m, k, 1)?;
    let a = n.abs();
    let mut acc = ctx.field().zero();
    for j in 0..a {
        acc = &acc + &ctx.q_pow_int(a - 1 - 2 * j);
    }
    Ok(if n < 0 { -acc } else { acc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ApproxComplex;

    #[test]
    fn bracket_examples() {
        assert!(q_bracket(1, 2, 0).unwrap().is_zero());
        assert!(q_bracket(1, 2, 4).unwrap().is_zero());
        let sqrt2 = q_bracket(1, 2, 2).unwrap();
        assert_eq!(&sqrt2 * &sqrt2, CyclotomicField::new(8).from_integer(2));
        assert!(sqrt2.is_real());
    }

    #[test]
    fn brace_examples() {
        assert!(q_brace(1, 2, 1).unwrap().is_one());
        assert!(q_brace(3, 7, 1).unwrap().is_one());
        assert!(q_brace(1, 3, 3).unwrap().is_zero());
        let b = q_brace(1, 2, 0).unwrap();
        assert_eq!(&b * &b, CyclotomicField::new(8).from_integer(2));
    }

    #[test]
    fn undefined_parameters() {
        assert!(matches!(q_bracket(4, 2, 1), Err(NumError::UndefinedParameter(_))));
        assert!(matches!(q_brace(2, 2, 1), Err(NumError::UndefinedParameter(_))));
        assert!(q_bracket(2, 2, 1).is_ok());
    }

    #[test]
    fn division_and_sum_forms_agree() {
        for k in 2..=6 {
            for m in 1..k {
                for n in -10..=10 {
                    assert_eq!(q_bracket(m, k, n).unwrap(), q_bracket_by_sum(m, k, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn fractional_exponents_use_larger_field() {
        let ctx = QContext::new(1, 2, 3).unwrap();
        assert_eq!(ctx.field().order(), 24);
        let third = BigRational::new(1.into(), 3.into());
        let q13 = ctx.q_pow(&third).unwrap();
        assert_eq!(q13.pow(3).unwrap(), ctx.q_pow_int(1));
        let half = BigRational::new(1.into(), 2.into());
        assert!(matches!(ctx.q_pow(&half), Err(NumError::WeightOutsideField { .. })));
    }

    #[test]
    fn bracket_matches_sine_ratio() {
        // [3] at θ = π/6 is sin(π/2)/sin(π/6) = 2
        let v = q_bracket(1, 3, 3).unwrap().to_approx(30);
        assert!(v.close_to(&ApproxComplex::from_i64(2, 30), 28));
    }
}
