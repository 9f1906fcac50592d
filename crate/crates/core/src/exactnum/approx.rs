//! Arbitrary-precision complex numbers backed by `astro-float`.
//!
//! Precision is tracked in decimal digits. Internally each value carries
//! `ceil(P·log2 10) + 64` bits so that chains of a few hundred operations
//! still meet a `10^{1-P}` absolute error target.

use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::NumError;

pub const MIN_DIGITS: u32 = 16;
const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 64;

pub fn bits_for_digits(digits: u32) -> usize {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
}

fn consts() -> Consts {
    Consts::new().expect("astro-float constant cache")
}

/// A complex value `re + i·im` at a fixed decimal precision.
#[derive(Clone)]
pub struct ApproxComplex {
    re: BigFloat,
    im: BigFloat,
    digits: u32,
}

impl ApproxComplex {
    pub fn from_parts(re: BigFloat, im: BigFloat, digits: u32) -> Self {
        ApproxComplex { re, im, digits }
    }

    pub fn zero(digits: u32) -> Self {
        let p = bits_for_digits(digits);
        Self::from_parts(BigFloat::from_i64(0, p), BigFloat::from_i64(0, p), digits)
    }

    pub fn from_i64(v: i64, digits: u32) -> Self {
        let p = bits_for_digits(digits);
        Self::from_parts(BigFloat::from_i64(v, p), BigFloat::from_i64(0, p), digits)
    }

    pub fn from_real(re: BigFloat, digits: u32) -> Self {
        let p = bits_for_digits(digits);
        Self::from_parts(re, BigFloat::from_i64(0, p), digits)
    }

    pub fn from_rational(r: &BigRational, digits: u32) -> Self {
        Self::from_real(rational_to_float(r, digits), digits)
    }

    /// Parse decimal strings such as `"0.37"` or `"-1.5e-3"`.
    pub fn parse(re: &str, im: &str, digits: u32) -> Result<Self, String> {
        Ok(Self::from_parts(
            parse_real(re, digits)?,
            parse_real(im, digits)?,
            digits,
        ))
    }

    /// `e^{iφ}` for a real angle `φ`.
    pub fn cis(angle: &BigFloat, digits: u32) -> Self {
        let p = bits_for_digits(digits);
        let mut cc = consts();
        Self::from_parts(angle.cos(p, RM, &mut cc), angle.sin(p, RM, &mut cc), digits)
    }

    /// `e^{iθx}` for real `θ` and complex `x`, i.e. `e^{−θ·Im x}·cis(θ·Re x)`.
    pub fn exp_i_times(theta: &BigFloat, x: &ApproxComplex) -> Self {
        let digits = x.digits;
        let p = bits_for_digits(digits);
        let mut cc = consts();
        let a = theta.mul(&x.re, p, RM);
        let b = theta.mul(&x.im, p, RM);
        let z = Self::from_parts(a.cos(p, RM, &mut cc), a.sin(p, RM, &mut cc), digits);
        if b.is_zero() {
            z
        } else {
            z.scale(&b.neg().exp(p, RM, &mut cc))
        }
    }

    /// `e^{iπr}` for a rational `r`.
    pub fn cis_pi(r: &BigRational, digits: u32) -> Self {
        Self::cis(&pi_times(r, digits), digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    fn bits(&self) -> usize {
        bits_for_digits(self.digits)
    }

    /// Same value at a different (usually lower) precision.
    pub fn with_digits(&self, digits: u32) -> Self {
        let p = bits_for_digits(digits);
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        let _ = re.set_precision(p, RM);
        let _ = im.set_precision(p, RM);
        Self::from_parts(re, im, digits)
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = self.digits.min(o.digits);
        let p = bits_for_digits(d);
        Self::from_parts(self.re.add(&o.re, p, RM), self.im.add(&o.im, p, RM), d)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let d = self.digits.min(o.digits);
        let p = bits_for_digits(d);
        Self::from_parts(self.re.sub(&o.re, p, RM), self.im.sub(&o.im, p, RM), d)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.digits.min(o.digits);
        let p = bits_for_digits(d);
        let rr = self.re.mul(&o.re, p, RM);
        let ii = self.im.mul(&o.im, p, RM);
        let ri = self.re.mul(&o.im, p, RM);
        let ir = self.im.mul(&o.re, p, RM);
        Self::from_parts(rr.sub(&ii, p, RM), ri.add(&ir, p, RM), d)
    }

    pub fn scale(&self, f: &BigFloat) -> Self {
        let p = self.bits();
        Self::from_parts(self.re.mul(f, p, RM), self.im.mul(f, p, RM), self.digits)
    }

    pub fn neg(&self) -> Self {
        Self::from_parts(self.re.neg(), self.im.neg(), self.digits)
    }

    pub fn conj(&self) -> Self {
        Self::from_parts(self.re.clone(), self.im.neg(), self.digits)
    }

    /// `|z|²`.
    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.bits();
        self.re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn modulus(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.bits(), RM)
    }

    pub fn inv(&self) -> Result<Self, NumError> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let p = self.bits();
        Ok(Self::from_parts(
            self.re.div(&n, p, RM),
            self.im.neg().div(&n, p, RM),
            self.digits,
        ))
    }

    pub fn div(&self, o: &Self) -> Result<Self, NumError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn powi(&self, e: i64) -> Result<Self, NumError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::from_i64(1, self.digits);
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Principal square root of a value that is real and nonnegative up to
    /// `tol_exp` decimal places; `None` otherwise.
    pub fn sqrt_nonneg_real(&self, tol_exp: u32) -> Option<Self> {
        let tol = pow10_neg(tol_exp, self.digits);
        if less_than(&abs(&self.im), &tol) && !less_than(&self.re, &tol.neg()) {
            let re = if self.re.is_negative() {
                BigFloat::from_i64(0, self.bits())
            } else {
                self.re.sqrt(self.bits(), RM)
            };
            Some(Self::from_real(re, self.digits))
        } else {
            None
        }
    }

    /// `|self - other| < 10^{-tol_exp}`.
    pub fn close_to(&self, other: &Self, tol_exp: u32) -> bool {
        self.sub(other).is_zero_within(tol_exp)
    }

    /// `|self| < 10^{-tol_exp}`.
    pub fn is_zero_within(&self, tol_exp: u32) -> bool {
        let tol = pow10_neg(tol_exp, self.digits);
        let t2 = tol.mul(&tol, self.bits(), RM);
        less_than(&self.norm_sqr(), &t2)
    }

    /// Absolute distance as an `f64`, for diagnostics only.
    pub fn distance_f64(&self, other: &Self) -> f64 {
        to_f64(&self.sub(other).modulus())
    }

    /// Real part rounded to `sig` significant digits.
    pub fn re_string(&self, sig: u32) -> String {
        format_decimal(&self.re, sig)
    }

    pub fn im_string(&self, sig: u32) -> String {
        format_decimal(&self.im, sig)
    }

    pub fn re_f64(&self) -> f64 {
        to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        to_f64(&self.im)
    }
}

/// Default zero tolerance exponent for a given precision: `10^{-40}` at the
/// default 64 digits, scaled down for lower precisions.
pub fn zero_tolerance_exponent(digits: u32) -> u32 {
    (digits * 3 / 4).min(40)
}

pub(crate) fn pi_times(r: &BigRational, digits: u32) -> BigFloat {
    let p = bits_for_digits(digits);
    let mut cc = consts();
    let pi = cc.pi(p, RM);
    pi.mul(&rational_to_float(r, digits), p, RM)
}

pub(crate) fn rational_to_float(r: &BigRational, digits: u32) -> BigFloat {
    let p = bits_for_digits(digits);
    let n = bigint_to_float(r.numer(), p);
    let d = bigint_to_float(r.denom(), p);
    n.div(&d, p, RM)
}

fn bigint_to_float(v: &BigInt, p: usize) -> BigFloat {
    let mut cc = consts();
    // integer strings are parsed exactly when they fit in the mantissa
    let bits = v.bits() as usize + 8;
    let exact = BigFloat::parse(&v.to_string(), Radix::Dec, p.max(bits), RM, &mut cc);
    let mut out = exact;
    let _ = out.set_precision(p, RM);
    out
}

pub(crate) fn parse_real(s: &str, digits: u32) -> Result<BigFloat, String> {
    let t = s.trim();
    let valid = !t.is_empty()
        && t.chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'))
        && t.chars().any(|c| c.is_ascii_digit());
    if !valid {
        return Err(format!("not a decimal number: {s:?}"));
    }
    let mut cc = consts();
    let v = BigFloat::parse(t, Radix::Dec, bits_for_digits(digits), RM, &mut cc);
    if v.is_nan() {
        return Err(format!("not a decimal number: {s:?}"));
    }
    Ok(v)
}

pub(crate) fn pow10_neg(e: u32, digits: u32) -> BigFloat {
    let mut cc = consts();
    BigFloat::parse(
        &format!("1e-{e}"),
        Radix::Dec,
        bits_for_digits(digits.max(e + 8)),
        RM,
        &mut cc,
    )
}

pub(crate) fn less_than(a: &BigFloat, b: &BigFloat) -> bool {
    matches!(a.cmp(b), Some(c) if c < 0)
}

pub(crate) fn abs(a: &BigFloat) -> BigFloat {
    if a.is_negative() {
        a.neg()
    } else {
        a.clone()
    }
}

fn to_f64(x: &BigFloat) -> f64 {
    format_decimal(x, 20).parse().unwrap_or(f64::NAN)
}

/// Round to `sig` significant decimal digits. Positional notation for
/// moderate exponents, scientific otherwise. Trailing zeros are dropped.
pub fn format_decimal(x: &BigFloat, sig: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut cc = consts();
    let raw = x
        .format(Radix::Dec, RM, &mut cc)
        .unwrap_or_else(|_| "NaN".into());
    let (negative, body) = match raw.strip_prefix('-') {
        Some(b) => (true, b.to_string()),
        None => (false, raw.clone()),
    };
    let (mant, exp) = match body.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (body.clone(), 0),
    };
    let mut ds: Vec<u8> = mant
        .bytes()
        .filter(|b| b.is_ascii_digit())
        .map(|b| b - b'0')
        .collect();
    // format always yields one digit before the point
    let mut exp = exp;
    while ds.len() > 1 && ds[0] == 0 {
        ds.remove(0);
        exp -= 1;
    }
    let sig = sig.max(1) as usize;
    if ds.len() > sig {
        let round_up = ds[sig] >= 5;
        ds.truncate(sig);
        if round_up {
            let mut i = sig;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.truncate(sig);
                    exp += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
    }
    while ds.len() > 1 && *ds.last().unwrap() == 0 {
        ds.pop();
    }
    let digits: String = ds.iter().map(|d| (b'0' + d) as char).collect();
    let sign = if negative { "-" } else { "" };
    if (-6..=20).contains(&exp) {
        let exp = exp as isize;
        let s = if exp < 0 {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        } else if (exp as usize) + 1 >= digits.len() {
            format!("{}{}", digits, "0".repeat(exp as usize + 1 - digits.len()))
        } else {
            let (a, b) = digits.split_at(exp as usize + 1);
            format!("{a}.{b}")
        };
        format!("{sign}{s}")
    } else if digits.len() == 1 {
        format!("{sign}{digits}e{exp}")
    } else {
        format!("{sign}{}.{}e{exp}", &digits[..1], &digits[1..])
    }
}

impl fmt::Debug for ApproxComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Approx[{}]({})", self.digits, self)
    }
}

impl fmt::Display for ApproxComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().map(|p| p as u32).unwrap_or(self.digits);
        let re = self.re_string(sig);
        if self.im.is_zero() {
            return write!(f, "{re}");
        }
        let im = self.im_string(sig);
        match im.strip_prefix('-') {
            Some(mag) => write!(f, "{re} - {mag}i"),
            None => write!(f, "{re} + {im}i"),
        }
    }
}

impl Serialize for ApproxComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Approx", 3)?;
        st.serialize_field("re", &self.re_string(self.digits))?;
        st.serialize_field("im", &self.im_string(self.digits))?;
        st.serialize_field("digits", &self.digits)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct ApproxRepr {
    re: String,
    im: String,
    digits: u32,
}

impl<'de> Deserialize<'de> for ApproxComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ApproxRepr::deserialize(d)?;
        if r.digits < MIN_DIGITS {
            return Err(de::Error::custom(NumError::PrecisionTooLow(r.digits)));
        }
        ApproxComplex::parse(&r.re, &r.im, r.digits).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn formatting_rounds_and_trims() {
        let x = parse_real("1.41421356237309504880", 32).unwrap();
        assert_eq!(format_decimal(&x, 5), "1.4142");
        let y = parse_real("-0.0000123456", 32).unwrap();
        assert_eq!(format_decimal(&y, 3), "-0.0000123");
        let z = parse_real("9.9996", 32).unwrap();
        assert_eq!(format_decimal(&z, 4), "10");
        let w = parse_real("1e-80", 32).unwrap();
        assert_eq!(format_decimal(&w, 10), "1e-80");
        assert_eq!(format_decimal(&parse_real("1234.5", 32).unwrap(), 10), "1234.5");
    }

    #[test]
    fn cis_quarter_turn_is_i() {
        let i = ApproxComplex::cis_pi(&rat(1, 2), 32);
        assert!(i.close_to(&ApproxComplex::parse("0", "1", 32).unwrap(), 31));
    }

    #[test]
    fn inverse_and_division() {
        let z = ApproxComplex::parse("3", "-4", 40).unwrap();
        let w = z.mul(&z.inv().unwrap());
        assert!(w.close_to(&ApproxComplex::from_i64(1, 40), 38));
        assert_eq!(ApproxComplex::zero(20).inv().err(), Some(NumError::DivisionByZero));
    }

    #[test]
    fn precision_is_minimum_of_operands() {
        let a = ApproxComplex::from_i64(1, 64);
        let b = ApproxComplex::from_i64(2, 20);
        assert_eq!(a.add(&b).digits(), 20);
        assert_eq!(a.mul(&b).digits(), 20);
    }

    #[test]
    fn json_round_trip() {
        let z = ApproxComplex::cis_pi(&rat(1, 3), 24);
        let s = serde_json::to_string(&z).unwrap();
        assert!(s.contains("\"digits\":24"));
        let back: ApproxComplex = serde_json::from_str(&s).unwrap();
        assert!(back.close_to(&z, 22));
        assert!(serde_json::from_str::<ApproxComplex>(r#"{"re":"1","im":"0","digits":8}"#).is_err());
    }

    #[test]
    fn sqrt_of_nonnegative_reals_only() {
        let two = ApproxComplex::from_i64(2, 32);
        let r = two.sqrt_nonneg_real(20).unwrap();
        assert!(r.mul(&r).close_to(&two, 30));
        assert!(ApproxComplex::from_i64(-1, 32).sqrt_nonneg_real(20).is_none());
    }
}
