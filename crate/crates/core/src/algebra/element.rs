//! Normal-ordered elements `Σ c · (a⁺)^i (a⁻)^j K^s`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::{Generator, QParam};
use crate::exactnum::{NumError, Scalar};

/// Exponents `(i, j, s)` of the normal-ordered word `(a⁺)^i (a⁻)^j K^s`.
pub type Monomial = (u32, u32, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grade {
    Even,
    Odd,
    Mixed,
}

/// A finite sum of normal-ordered monomials with nonzero coefficients.
#[derive(Clone)]
pub struct AlgebraElement {
    q: Arc<QParam>,
    terms: BTreeMap<Monomial, Scalar>,
}

/// One serialized term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRepr {
    pub i: u32,
    pub j: u32,
    pub s: i64,
    pub coeff: Scalar,
}

impl AlgebraElement {
    pub fn zero(q: &Arc<QParam>) -> Self {
        AlgebraElement {
            q: Arc::clone(q),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(q: &Arc<QParam>) -> Self {
        Self::scalar(q, q.one())
    }

    pub fn scalar(q: &Arc<QParam>, c: Scalar) -> Self {
        Self::monomial(q, (0, 0, 0), c)
    }

    pub fn monomial(q: &Arc<QParam>, key: Monomial, c: Scalar) -> Self {
        let mut e = Self::zero(q);
        e.add_term(key, c);
        e
    }

    pub fn generator(q: &Arc<QParam>, g: Generator) -> Self {
        let key = match g {
            Generator::Aplus => (1, 0, 0),
            Generator::Aminus => (0, 1, 0),
            Generator::K => (0, 0, 1),
            Generator::Kinv => (0, 0, -1),
        };
        Self::monomial(q, key, q.one())
    }

    /// Normal form of a product of generators.
    pub fn from_word(q: &Arc<QParam>, word: &[Generator]) -> Self {
        let mut e = Self::one(q);
        for g in word.iter().rev() {
            e = e.left_mul_generator(*g);
        }
        e
    }

    pub fn from_terms(q: &Arc<QParam>, terms: Vec<TermRepr>) -> Result<Self, NumError> {
        let mut e = Self::zero(q);
        for t in terms {
            let c = q.coerce(t.coeff)?;
            e.add_term((t.i, t.j, t.s), c);
        }
        Ok(e)
    }

    pub fn q(&self) -> &Arc<QParam> {
        &self.q
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: Monomial) -> Option<&Scalar> {
        self.terms.get(&key)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_repr(&self) -> Vec<TermRepr> {
        self.terms
            .iter()
            .map(|(&(i, j, s), c)| TermRepr {
                i,
                j,
                s,
                coeff: c.clone(),
            })
            .collect()
    }

    /// The scalar value when the element is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.q.zero()),
            1 => self.terms.get(&(0, 0, 0)).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, key: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            Some(prev) => {
                let sum = &prev + &c;
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn check_same(&self, other: &Self) {
        assert!(
            self.q.same_as(&other.q),
            "elements of different algebras cannot be combined"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.q.integer(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(&self.q);
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    /// `g · self`, re-normal-ordered.
    pub fn left_mul_generator(&self, g: Generator) -> Self {
        let q = &self.q;
        let mut out = Self::zero(q);
        for (&(x, y, t), c) in &self.terms {
            let d = x as i64 - y as i64;
            match g {
                Generator::Aplus => out.add_term((x + 1, y, t), c.clone()),
                Generator::K => out.add_term((x, y, t + 1), c * &q.q_pow(2 * d)),
                Generator::Kinv => out.add_term((x, y, t - 1), c * &q.q_pow(-2 * d)),
                Generator::Aminus => {
                    let sign = if x % 2 == 0 { c.clone() } else { -c };
                    out.add_term((x, y + 1, t), sign);
                    if x > 0 {
                        // a⁻(a⁺)^x = (−1)^x (a⁺)^x a⁻ + Σ_r (−1)^r (a⁺)^{x−1} H_{x−1−r},
                        // H_u (a⁻)^y = (a⁻)^y (q^{2(u−y)}K − q^{−2(u−y)}K⁻¹)/(q − q⁻¹)
                        let mut kp = q.zero();
                        let mut km = q.zero();
                        for r in 0..x as i64 {
                            let u = x as i64 - 1 - r;
                            let e = 2 * (u - y as i64);
                            if r % 2 == 0 {
                                kp = &kp + &q.q_pow(e);
                                km = &km + &q.q_pow(-e);
                            } else {
                                kp = &kp - &q.q_pow(e);
                                km = &km - &q.q_pow(-e);
                            }
                        }
                        let base = c * &q.inv_q_minus();
                        out.add_term((x - 1, y, t + 1), &base * &kp);
                        out.add_term((x - 1, y, t - 1), -(&base * &km));
                    }
                }
            }
        }
        out
    }

    /// The normal-ordered word of one monomial, left to right.
    pub fn monomial_word(key: Monomial) -> Vec<Generator> {
        let (i, j, s) = key;
        let mut w = Vec::with_capacity((i + j) as usize + s.unsigned_abs() as usize);
        w.extend(std::iter::repeat_n(Generator::Aplus, i as usize));
        w.extend(std::iter::repeat_n(Generator::Aminus, j as usize));
        let kg = if s >= 0 { Generator::K } else { Generator::Kinv };
        w.extend(std::iter::repeat_n(kg, s.unsigned_abs() as usize));
        w
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let q = &self.q;
        let mut out = Self::zero(q);
        for (&(i, j, s), c) in &self.terms {
            // K^s (a⁺)^x (a⁻)^y K^t = q^{2s(x−y)} (a⁺)^x (a⁻)^y K^{s+t}
            let mut acc = Self::zero(q);
            for (&(x, y, t), v) in &other.terms {
                let d = x as i64 - y as i64;
                acc.add_term((x, y, t + s), v * &q.q_pow(2 * s * d));
            }
            for _ in 0..j {
                acc = acc.left_mul_generator(Generator::Aminus);
            }
            for (&(x, y, t), v) in &acc.terms {
                out.add_term((x + i, y, t), c * v);
            }
        }
        out
    }

    /// Nonnegative integer power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.q);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Inverse of an invertible single term `c·K^s`.
    pub fn inverse_if_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(i, j, s), c) = self.terms.iter().next()?;
        if i != 0 || j != 0 {
            return None;
        }
        let inv = c.inv().ok()?;
        Some(Self::monomial(&self.q, (0, 0, -s), inv))
    }

    /// The antilinear antiinvolution: `ω(a±) = a∓`, `ω(K^{±1}) = K^{∓1}`,
    /// conjugated coefficients, reversed products. Computed by reversing each
    /// monomial word and normal-ordering again.
    pub fn omega(&self) -> Self {
        let mut out = Self::zero(&self.q);
        for (&key, c) in &self.terms {
            let word: Vec<Generator> = Self::monomial_word(key)
                .into_iter()
                .rev()
                .map(Generator::omega)
                .collect();
            let image = Self::from_word(&self.q, &word).scale(&c.conj());
            for (k, v) in image.terms {
                out.add_term(k, v);
            }
        }
        out
    }

    /// Homogeneous `Z₂`-degree. The zero element counts as even.
    pub fn grade(&self) -> Grade {
        let mut even = false;
        let mut odd = false;
        for &(i, j, _) in self.terms.keys() {
            if (i + j) % 2 == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (_, false) => Grade::Even,
            (false, true) => Grade::Odd,
            (true, true) => Grade::Mixed,
        }
    }

    /// The graded commutator `[x, y} = xy − (−1)^{|x||y|} yx` for homogeneous
    /// arguments; the ordinary commutator otherwise.
    pub fn supercommutator(&self, other: &Self) -> Self {
        let xy = self.mul(other);
        let yx = other.mul(self);
        if self.grade() == Grade::Odd && other.grade() == Grade::Odd {
            xy.add(&yx)
        } else {
            xy.sub(&yx)
        }
    }

    fn equal_terms(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((ka, va), (kb, vb))| ka == kb && va == vb)
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.q.same_as(&other.q) && self.equal_terms(other)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

fn monomial_text(key: Monomial) -> String {
    let (i, j, s) = key;
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("a+".to_string()),
        _ => parts.push(format!("a+^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("a-".to_string()),
        _ => parts.push(format!("a-^{j}")),
    }
    match s {
        0 => {}
        1 => parts.push("K".to_string()),
        _ => parts.push(format!("K^{s}")),
    }
    parts.join(" ")
}

/// Text form accepted back by the expression parser for exact coefficients.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&key, c)) in self.terms.iter().enumerate() {
            let mono = monomial_text(key);
            let rational = c.as_exact().and_then(|x| x.as_rational());
            let (negative, coeff) = match (&rational, c) {
                (Some(r), _) => {
                    let neg = r < &num_rational::BigRational::from_integer(0.into());
                    let mag = if neg { -r.clone() } else { r.clone() };
                    let one = num_rational::BigRational::from_integer(1.into());
                    let text = if mag == one && !mono.is_empty() {
                        String::new()
                    } else {
                        mag.to_string()
                    };
                    (neg, text)
                }
                (None, Scalar::Exact(x)) => (false, format!("({x})")),
                (None, Scalar::Approx(a)) => (false, format!("[{a}]")),
            };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (coeff.is_empty(), mono.is_empty()) {
                (true, _) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{coeff}")?,
                (false, false) => write!(f, "{coeff} {mono}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AlgebraElement", 1)?;
        st.serialize_field("terms", &self.to_repr())?;
        st.end()
    }
}

/// The Casimir element exactly as the quadratic expression
/// `2C = q²K² + q⁻²K⁻² + (q²−q⁻²)(q−q⁻¹)(q²K + q⁻²K⁻¹)a⁻a⁺ − (q²−q⁻²)²(a⁻)²(a⁺)²`.
/// On the vacuum module of weight `p` it acts as `(q^{2p−2} + q^{2−2p})/2`.
pub fn casimir_element_bare(q: &Arc<QParam>) -> AlgebraElement {
    use Generator::*;
    let w = |word: &[Generator]| AlgebraElement::from_word(q, word);
    let q2 = q.q_pow(2);
    let qm2 = q.q_pow(-2);
    let a = &q2 - &qm2;
    let b = &q.q_pow(1) - &q.q_pow(-1);
    let kk = w(&[K, K]).scale(&q2).add(&w(&[Kinv, Kinv]).scale(&qm2));
    let mixed = w(&[K])
        .scale(&q2)
        .add(&w(&[Kinv]).scale(&qm2))
        .mul(&w(&[Aminus, Aplus]))
        .scale(&(&a * &b));
    let quartic = w(&[Aminus, Aminus, Aplus, Aplus]).scale(&(&a * &a));
    let half = q.rational(&num_rational::BigRational::new(1.into(), 2.into()));
    kk.add(&mixed).sub(&quartic).scale(&half)
}

/// The Casimir element normalized so that its eigenvalue on the vacuum
/// module of weight `p` is `(q^{2p−2} + q^{2−2p})/2 + 2`; this is the bare
/// quadratic expression plus `2·1`.
pub fn casimir_element(q: &Arc<QParam>) -> AlgebraElement {
    casimir_element_bare(q).add(&AlgebraElement::scalar(q, q.integer(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn q12() -> Arc<QParam> {
        QParam::root_of_unity(1, 2).unwrap()
    }

    #[test]
    fn k_past_aplus() {
        let q = q12();
        let e = AlgebraElement::from_word(&q, &[K, Aplus]);
        assert_eq!(e, AlgebraElement::monomial(&q, (1, 0, 1), q.q_pow(2)));
    }

    #[test]
    fn anticommutator_relation() {
        let q = q12();
        let e = AlgebraElement::from_word(&q, &[Aminus, Aplus]).add(&AlgebraElement::from_word(&q, &[Aplus, Aminus]));
        let h = AlgebraElement::generator(&q, K)
            .sub(&AlgebraElement::generator(&q, Kinv))
            .scale(&q.inv_q_minus());
        assert_eq!(e, h);
    }

    #[test]
    fn empty_word_is_one() {
        let q = q12();
        assert_eq!(AlgebraElement::from_word(&q, &[]), AlgebraElement::one(&q));
    }

    #[test]
    fn k_times_kinv() {
        let q = q12();
        assert_eq!(AlgebraElement::from_word(&q, &[K, Kinv, Kinv, K]), AlgebraElement::one(&q));
    }

    #[test]
    fn omega_on_generators() {
        let q = q12();
        assert_eq!(
            AlgebraElement::generator(&q, Aplus).omega(),
            AlgebraElement::generator(&q, Aminus)
        );
        let ap_am = AlgebraElement::from_word(&q, &[Aplus, Aminus]);
        assert_eq!(ap_am.omega(), ap_am);
        // ω(i K) = −i K⁻¹ with i = q² at m=1, k=2
        let i = q.q_pow(2);
        let e = AlgebraElement::monomial(&q, (0, 0, 1), i.clone());
        assert_eq!(e.omega(), AlgebraElement::monomial(&q, (0, 0, -1), -i));
    }

    #[test]
    fn omega_closed_form() {
        // ω(c (a⁺)^i (a⁻)^j K^s) = c̄ q^{−2s(j−i)} (a⁺)^j (a⁻)^i K^{−s}
        let q = QParam::root_of_unity(2, 5).unwrap();
        let c = q.q_pow(3);
        let e = AlgebraElement::monomial(&q, (2, 1, 3), c.clone());
        let expected = AlgebraElement::monomial(&q, (1, 2, -3), &c.conj() * &q.q_pow(-2 * 3 * (1 - 2)));
        assert_eq!(e.omega(), expected);
    }

    #[test]
    fn grades() {
        let q = q12();
        assert_eq!(AlgebraElement::generator(&q, Aplus).grade(), Grade::Odd);
        assert_eq!(AlgebraElement::from_word(&q, &[Aplus, Aminus]).grade(), Grade::Even);
        assert_eq!(
            AlgebraElement::generator(&q, Aplus).add(&AlgebraElement::generator(&q, K)).grade(),
            Grade::Mixed
        );
        assert_eq!(casimir_element(&q).grade(), Grade::Even);
    }

    #[test]
    fn casimir_is_central_in_the_algebra() {
        for (m, k) in [(1, 2), (1, 3), (2, 5), (3, 7)] {
            let q = QParam::root_of_unity(m, k).unwrap();
            let c = casimir_element(&q);
            for g in Generator::ALL {
                let x = AlgebraElement::generator(&q, g);
                assert!(c.mul(&x).sub(&x.mul(&c)).is_zero(), "m={m} k={k} g={g}");
            }
        }
    }

    #[test]
    fn multiplication_is_associative_on_samples() {
        let q = QParam::root_of_unity(3, 8).unwrap();
        let a = AlgebraElement::from_word(&q, &[Aminus, K, Aplus]);
        let b = AlgebraElement::from_word(&q, &[Aminus, Aminus, Kinv]);
        let c = AlgebraElement::from_word(&q, &[Aplus, Aplus, Aminus]);
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn display_forms() {
        let q = q12();
        let e = AlgebraElement::from_word(&q, &[Aplus]).scale(&q.integer(3));
        assert_eq!(e.to_string(), "3 a+");
        let x = AlgebraElement::from_word(&q, &[Aminus, Aplus]);
        let s = x.to_string();
        assert!(s.starts_with("-a+ a-") || s.contains("- a+ a-"), "{s}");
        assert_eq!(AlgebraElement::zero(&q).to_string(), "0");
        assert_eq!(AlgebraElement::generator(&q, Kinv).to_string(), "K^-1");
    }

    #[test]
    fn json_terms() {
        let q = q12();
        let e = AlgebraElement::generator(&q, Aplus);
        let j = serde_json::to_string(&e).unwrap();
        assert_eq!(j, r#"{"terms":[{"i":1,"j":0,"s":0,"coeff":{"order":8,"coeffs":[[1,1],[0,1],[0,1],[0,1]]}}]}"#);
    }
}
