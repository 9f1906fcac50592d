//! Exact signs of `sin(πr)` and `cos(πr)` for rational `r`.

use std::fmt;

use astro_float::RoundingMode;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::approx::{bits_for_digits, pi_times};
use super::ApproxComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigKind {
    Sin,
    Cos,
}

/// The angle `πr`, with `r` kept as a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalAngle {
    r: BigRational,
}

impl RationalAngle {
    pub fn new(r: BigRational) -> Self {
        RationalAngle { r }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The multiple of `π`.
    pub fn ratio(&self) -> &BigRational {
        &self.r
    }

    /// `r` reduced into `[0, 2)`.
    pub fn reduced(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        let q = (&self.r / &two).floor();
        &self.r - q * two
    }

    pub fn sin_sign(&self) -> i8 {
        let r = self.reduced();
        let one = BigRational::one();
        if r.is_zero() || r == one {
            0
        } else if r < one {
            1
        } else {
            -1
        }
    }

    /// `cos(πr) = sin(π(r + 1/2))`.
    pub fn cos_sign(&self) -> i8 {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        RationalAngle::new(&self.r + half).sin_sign()
    }

    pub fn sign(&self, kind: TrigKind) -> i8 {
        match kind {
            TrigKind::Sin => self.sin_sign(),
            TrigKind::Cos => self.cos_sign(),
        }
    }

    /// Numeric value of `sin(πr)` or `cos(πr)` as a real approximation.
    pub fn eval(&self, kind: TrigKind, digits: u32) -> ApproxComplex {
        let p = bits_for_digits(digits);
        let rm = RoundingMode::ToEven;
        let mut cc = astro_float::Consts::new().expect("astro-float constant cache");
        let x = pi_times(&self.reduced(), digits);
        let v = match kind {
            TrigKind::Sin => x.sin(p, rm, &mut cc),
            TrigKind::Cos => x.cos(p, rm, &mut cc),
        };
        ApproxComplex::from_real(v, digits)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r.is_negative() {
            write!(f, "-pi*{}", -&self.r)
        } else {
            write!(f, "pi*{}", self.r)
        }
    }
}

/// Exact sign in `{-1, 0, 1}` of `sin(πr)` or `cos(πr)`.
pub fn trig_sign(angle: &RationalAngle, kind: TrigKind) -> i8 {
    angle.sign(kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_signs() {
        assert_eq!(trig_sign(&RationalAngle::from_ratio(1, 2), TrigKind::Sin), 1);
        assert_eq!(trig_sign(&RationalAngle::from_ratio(1, 1), TrigKind::Sin), 0);
        assert_eq!(trig_sign(&RationalAngle::from_ratio(5, 6), TrigKind::Cos), -1);
    }

    #[test]
    fn cosine_zeros_and_negative_angles() {
        assert_eq!(RationalAngle::from_ratio(1, 2).cos_sign(), 0);
        assert_eq!(RationalAngle::from_ratio(-3, 2).cos_sign(), 0);
        assert_eq!(RationalAngle::from_ratio(-1, 3).sin_sign(), -1);
        assert_eq!(RationalAngle::from_ratio(-1, 3).cos_sign(), 1);
        assert_eq!(RationalAngle::from_ratio(7, 4).cos_sign(), 1);
        assert_eq!(RationalAngle::from_ratio(13, 2).sin_sign(), 1);
    }

    #[test]
    fn reduction_stays_in_window() {
        let r = RationalAngle::from_ratio(-7, 3).reduced();
        assert_eq!(r, BigRational::new(BigInt::from(5), BigInt::from(3)));
    }

    #[test]
    fn numeric_value_matches() {
        let v = RationalAngle::from_ratio(1, 6).eval(TrigKind::Sin, 30);
        assert!(v.close_to(&ApproxComplex::parse("0.5", "0", 30).unwrap(), 28));
    }
}
