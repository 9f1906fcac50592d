//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` modulo the
//! cyclotomic polynomial `Φ_N`, as an integer coefficient vector over a single
//! positive common denominator. The representation is canonical: the
//! coefficient vector always has length `φ(N)`, the denominator is positive
//! and coprime to the content of the numerators, and zero is `0/1`.
//!
//! Values of different orders can be combined; both operands are first lifted
//! into `Q(ζ_lcm)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeSeq, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::NumError;

/// The field `Q(ζ_N)` with its reduction data.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    /// `Φ_N`, lowest degree first; monic.
    modulus: Vec<BigInt>,
    /// `ζ^j` reduced into the power basis, for `j = 0..N`.
    powers: Vec<Vec<BigInt>>,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Arc<Self> {
        assert!(order >= 1, "cyclotomic order must be positive");
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut current = vec![BigInt::zero(); degree];
        current[0] = BigInt::one();
        for _ in 0..order {
            powers.push(current.clone());
            // multiply by x and fold the overflow coefficient back with Φ_N
            let top = current.pop().unwrap_or_else(BigInt::zero);
            current.insert(0, BigInt::zero());
            if !top.is_zero() {
                for (slot, c) in current.iter_mut().zip(&modulus) {
                    if !c.is_zero() {
                        *slot -= &top * c;
                    }
                }
            }
        }
        Arc::new(CyclotomicField {
            order,
            modulus,
            powers,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Coefficients of `Φ_N`, lowest degree first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    pub fn zero(self: &Arc<Self>) -> CyclotomicNumber {
        CyclotomicNumber {
            field: Arc::clone(self),
            num: vec![BigInt::zero(); self.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(self: &Arc<Self>) -> CyclotomicNumber {
        self.from_integer(1)
    }

    pub fn from_integer(self: &Arc<Self>, value: i64) -> CyclotomicNumber {
        self.from_rational(&BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_rational(self: &Arc<Self>, value: &BigRational) -> CyclotomicNumber {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = value.numer().clone();
        CyclotomicNumber::normalized(Arc::clone(self), num, value.denom().clone())
    }

    /// `ζ_N^e` for any integer exponent.
    pub fn zeta_pow(self: &Arc<Self>, exponent: i64) -> CyclotomicNumber {
        let j = exponent.rem_euclid(self.order as i64) as usize;
        CyclotomicNumber {
            field: Arc::clone(self),
            num: self.powers[j].clone(),
            den: BigInt::one(),
        }
    }

    /// Reduce an arbitrary-length integer polynomial in `ζ` modulo `Φ_N`.
    fn reduce(&self, mut poly: Vec<BigInt>) -> Vec<BigInt> {
        let degree = self.degree();
        if poly.len() <= degree {
            poly.resize(degree, BigInt::zero());
            return poly;
        }
        for i in (degree..poly.len()).rev() {
            let top = std::mem::take(&mut poly[i]);
            if top.is_zero() {
                continue;
            }
            let base = i - degree;
            for (j, c) in self.modulus[..degree].iter().enumerate() {
                if !c.is_zero() {
                    poly[base + j] -= &top * c;
                }
            }
        }
        poly.truncate(degree);
        poly
    }
}

/// `Φ_n` by exact division of `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    let mut memo = BTreeMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u32, memo: &mut BTreeMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_memo(d, memo);
            poly = divide_monic(&poly, &divisor);
        }
    }
    memo.insert(n, poly.clone());
    poly
}

fn divide_monic(dividend: &[BigInt], divisor: &[BigInt]) -> Vec<BigInt> {
    let dd = divisor.len() - 1;
    let mut rem = dividend.to_vec();
    let qlen = dividend.len() - dd;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in divisor.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    fn normalized(field: Arc<CyclotomicField>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if num.iter().all(Zero::is_zero) {
            return CyclotomicNumber {
                field,
                num,
                den: BigInt::one(),
            };
        }
        let mut g = den.abs();
        for c in &num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den = &den / &g;
        }
        CyclotomicNumber { field, num, den }
    }

    /// Build from rational coefficients of `1, ζ, ζ², …` (any length; reduced mod `Φ_N`).
    pub fn from_coefficients(field: &Arc<CyclotomicField>, coeffs: &[BigRational]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let poly: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let num = if poly.len() <= field.degree() {
            field.reduce(poly)
        } else {
            // fold powers ≥ N with ζ^N = 1 before reducing
            let n = field.order() as usize;
            let mut folded = vec![BigInt::zero(); n.min(poly.len())];
            for (j, c) in poly.into_iter().enumerate() {
                folded[j % n] += c;
            }
            field.reduce(folded)
        };
        Self::normalized(Arc::clone(field), num, den)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Canonical rational coefficients in the power basis.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The same value viewed in `Q(ζ_M)`; `M` must be a multiple of the current order.
    pub fn lift(&self, order: u32) -> Result<Self, NumError> {
        if order == self.order() {
            return Ok(self.clone());
        }
        if !order.is_multiple_of(self.order()) {
            return Err(NumError::OrderMismatch {
                from: self.order(),
                to: order,
            });
        }
        let target = CyclotomicField::new(order);
        Ok(self.lift_into(&target))
    }

    /// Lift into an already constructed field whose order is a multiple of ours.
    pub fn lift_to_field(&self, target: &Arc<CyclotomicField>) -> Result<Self, NumError> {
        if !target.order.is_multiple_of(self.order()) {
            return Err(NumError::OrderMismatch {
                from: self.order(),
                to: target.order,
            });
        }
        if target.order == self.order() {
            return Ok(self.clone());
        }
        Ok(self.lift_into(target))
    }

    fn lift_into(&self, target: &Arc<CyclotomicField>) -> Self {
        let step = (target.order / self.order()) as usize;
        let mut num = vec![BigInt::zero(); target.degree()];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, b) in num.iter_mut().zip(&target.powers[j * step]) {
                if !b.is_zero() {
                    *slot += c * b;
                }
            }
        }
        Self::normalized(Arc::clone(target), num, self.den.clone())
    }

    fn aligned<'a>(
        a: &'a CyclotomicNumber,
        b: &'a CyclotomicNumber,
    ) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if a.order() == b.order() {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let target = CyclotomicField::new(lcm(a.order(), b.order()));
        let la = if a.order() == target.order {
            Cow::Borrowed(a)
        } else {
            Cow::Owned(a.lift_into(&target))
        };
        let lb = if b.order() == target.order {
            Cow::Borrowed(b)
        } else {
            Cow::Owned(b.lift_into(&target))
        };
        (la, lb)
    }

    fn add_same(&self, other: &Self, negate: bool) -> Self {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        Self::normalized(Arc::clone(&self.field), num, den)
    }

    fn mul_same(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.field.zero();
        }
        let d = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let num = self.field.reduce(prod);
        Self::normalized(Arc::clone(&self.field), num, &self.den * &other.den)
    }

    /// Apply the Galois automorphism `ζ ↦ ζ^a` (`gcd(a, N) = 1`).
    pub fn galois(&self, a: i64) -> Self {
        let n = self.order() as i64;
        let mut num = vec![BigInt::zero(); self.field.degree()];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (a * j as i64).rem_euclid(n) as usize;
            for (slot, b) in num.iter_mut().zip(&self.field.powers[e]) {
                if !b.is_zero() {
                    *slot += c * b;
                }
            }
        }
        Self::normalized(Arc::clone(&self.field), num, self.den.clone())
    }

    /// Complex conjugation, `ζ ↦ ζ^{N-1}`.
    pub fn conj(&self) -> Self {
        self.galois(self.order() as i64 - 1)
    }

    /// `true` when the value is fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Multiplicative inverse through the field norm: `x⁻¹ = Π_{σ≠1} σ(x) / N(x)`.
    pub fn inv(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let n = self.order() as i64;
        let mut cofactor = self.field.one();
        for a in 2..n {
            if a.gcd(&n) == 1 {
                cofactor = cofactor.mul_same(&self.galois(a));
            }
        }
        let norm = self
            .mul_same(&cofactor)
            .as_rational()
            .expect("field norm is rational");
        let scale = self.field.from_rational(&norm.recip());
        Ok(cofactor.mul_same(&scale))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, NumError> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exponent: i64) -> Result<Self, NumError> {
        let base = if exponent < 0 { self.inv()? } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_same(&sq);
            }
        }
        Ok(acc)
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.order(), self)
    }
}

/// Prints a sum of rational multiples of `zeta(N)^j` that the expression
/// parser reads back exactly.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            let negative = r.is_negative();
            let mag = r.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let zeta = match j {
                0 => None,
                1 => Some(format!("zeta({})", self.order())),
                _ => Some(format!("zeta({})^{}", self.order(), j)),
            };
            match zeta {
                None => write!(f, "{}", mag)?,
                Some(z) if mag.is_one() => write!(f, "{}", z)?,
                Some(z) => write!(f, "{}*{}", mag, z)?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a CyclotomicNumber> for &'a CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
                let (a, b) = CyclotomicNumber::aligned(self, rhs);
                $body(&*a, &*b)
            }
        }
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CyclotomicNumber, b| a.add_same(b, false));
forward_binop!(Sub, sub, |a: &CyclotomicNumber, b| a.add_same(b, true));
forward_binop!(Mul, mul, |a: &CyclotomicNumber, b| a.mul_same(b));

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: Arc::clone(&self.field),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

/// JSON integer that falls back to a decimal string outside the `i64` range.
pub(crate) struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

pub(crate) struct OwnedJsonInt(pub BigInt);

impl<'de> Deserialize<'de> for OwnedJsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = OwnedJsonInt;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<OwnedJsonInt, E> {
                Ok(OwnedJsonInt(BigInt::from(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<OwnedJsonInt, E> {
                Ok(OwnedJsonInt(BigInt::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<OwnedJsonInt, E> {
                v.parse().map(OwnedJsonInt).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

struct CoeffList<'a>(&'a CyclotomicNumber);

impl Serialize for CoeffList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs = self.0.coefficients();
        let mut seq = s.serialize_seq(Some(coeffs.len()))?;
        for c in &coeffs {
            seq.serialize_element(&(JsonInt(c.numer()), JsonInt(c.denom())))?;
        }
        seq.end()
    }
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CyclotomicNumber", 2)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coeffs", &CoeffList(self))?;
        st.end()
    }
}

#[derive(Deserialize)]
struct CyclotomicRepr {
    order: u32,
    coeffs: Vec<(OwnedJsonInt, OwnedJsonInt)>,
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = CyclotomicRepr::deserialize(d)?;
        if repr.order == 0 {
            return Err(de::Error::custom("cyclotomic order must be positive"));
        }
        let mut coeffs = Vec::with_capacity(repr.coeffs.len());
        for (n, dd) in repr.coeffs {
            if dd.0.is_zero() {
                return Err(de::Error::custom("zero denominator"));
            }
            coeffs.push(BigRational::new(n.0, dd.0));
        }
        let field = CyclotomicField::new(repr.order);
        Ok(CyclotomicNumber::from_coefficients(&field, &coeffs))
    }
}
