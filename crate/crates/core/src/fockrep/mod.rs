//! Fock (Verma) modules `F(p)`, their truncations and quotients
//! `W(|p;a⟩, |p;b⟩)`, singular-vector scans and concrete matrices.
//!
//! On the basis `|p;n⟩ = (a⁺)^n |p;0⟩`:
//!
//! ```text
//! K|p;n⟩  = q^{2n+p} |p;n⟩
//! a⁺|p;n⟩ = |p;n+1⟩
//! a⁻|p;n⟩ = [n]{n+p−1} |p;n−1⟩    n even
//! a⁻|p;n⟩ = [n+p−1]{n} |p;n−1⟩    n odd
//! ```

mod arith;
mod matrix;
mod module;
mod verify;

pub use arith::ModuleArith;
pub use matrix::Matrix;
pub use module::{
    a_minus_coefficient, is_irreducible, module_matrices, quotient_module, singular_vectors, verma_action,
    Action, SingularVector, SingularVectorReport, VanishingFactor,
};
pub use verify::{evaluate_element, verify_relations, RelationCheck, RelationReport};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::{ApproxComplex, NumError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error(transparent)]
    Num(#[from] NumError),
    #[error("index {n} outside the basis range {lo}..={hi}")]
    OutOfRange { n: u64, lo: u64, hi: String },
    #[error("a finite basis range is required")]
    Infinite,
    #[error("invalid module: {0}")]
    InvalidSpec(String),
    #[error("cannot cut at {cut}: {reason}")]
    InvalidQuotient { cut: u64, reason: String },
    #[error("a⁻ maps |p;{n}⟩ outside the span; the lower end is not singular")]
    NotInvariant { n: u64 },
    #[error("parameter mismatch: {0}")]
    Mismatch(String),
}

/// The deformation parameter of a module: an exact root of unity
/// `q = e^{iπm/(2k)}` or an approximate `q = e^{iθ}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Deformation {
    RootOfUnity { m: i64, k: i64 },
    Angle { theta: String, digits: u32 },
}

/// The weight `p` of the vacuum.
#[derive(Debug, Clone)]
pub enum Weight {
    Rational(BigRational),
    Approx(ApproxComplex),
}

impl Weight {
    pub fn integer(p: i64) -> Self {
        Weight::Rational(BigRational::from_integer(BigInt::from(p)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Weight::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Weight::Rational(r) => Some(r),
            Weight::Approx(_) => None,
        }
    }

    /// Integer value, when the weight is an exact integer.
    pub fn as_integer(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.as_rational()
            .filter(|r| r.is_integer())
            .and_then(|r| r.to_integer().to_i64())
    }

    /// Parse `"3"`, `"-3/2"` as exact rationals and decimals such as
    /// `"0.37"` as approximations at `digits`.
    pub fn parse(s: &str, digits: u32) -> Result<Self, String> {
        let t = s.trim();
        if let Ok(r) = BigRational::from_str(t) {
            return Ok(Weight::Rational(r));
        }
        ApproxComplex::parse(t, "0", digits).map(Weight::Approx)
    }
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Weight::Rational(a), Weight::Rational(b)) => a == b,
            (Weight::Approx(a), Weight::Approx(b)) => {
                a.digits() == b.digits() && a.re().cmp(b.re()) == Some(0) && a.im().cmp(b.im()) == Some(0)
            }
            _ => false,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Rational(r) => write!(f, "{r}"),
            Weight::Approx(a) => write!(f, "{a:.20}"),
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Weight::Rational(r) => s.serialize_str(&r.to_string()),
            Weight::Approx(a) => a.serialize(s),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WeightRepr {
    Int(i64),
    Text(String),
    Approx(ApproxComplex),
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match WeightRepr::deserialize(d)? {
            WeightRepr::Int(i) => Ok(Weight::integer(i)),
            WeightRepr::Text(t) => BigRational::from_str(t.trim())
                .map(Weight::Rational)
                .map_err(|_| de::Error::custom(format!("not a rational weight: {t:?}"))),
            WeightRepr::Approx(a) => Ok(Weight::Approx(a)),
        }
    }
}

/// The basis-truncated module `W(|p;n_lo⟩, |p;n_hi⟩)`; `n_hi = None` is the
/// full Verma module, handled lazily.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuleSpec {
    #[serde(flatten)]
    pub deformation: Deformation,
    pub p: Weight,
    pub n_lo: u64,
    pub n_hi: Option<u64>,
}

impl ModuleSpec {
    pub fn new(deformation: Deformation, p: Weight, n_lo: u64, n_hi: Option<u64>) -> Result<Self, FockError> {
        if let Some(hi) = n_hi {
            if hi < n_lo {
                return Err(FockError::InvalidSpec(format!("n_hi = {hi} < n_lo = {n_lo}")));
            }
        }
        if let Deformation::RootOfUnity { m, k } = deformation {
            if k < 1 || m.rem_euclid(2 * k) == 0 {
                return Err(FockError::Num(NumError::UndefinedParameter(format!(
                    "q = ±1 for m = {m}, k = {k}"
                ))));
            }
        }
        Ok(ModuleSpec {
            deformation,
            p,
            n_lo,
            n_hi,
        })
    }

    /// `W(|p;n_lo⟩, |p;n_hi⟩)` at `q = ζ_{4k}^m` with rational `p`.
    pub fn exact(m: i64, k: i64, p: BigRational, n_lo: u64, n_hi: u64) -> Result<Self, FockError> {
        Self::new(Deformation::RootOfUnity { m, k }, Weight::Rational(p), n_lo, Some(n_hi))
    }

    /// The vacuum module `W(|p;0⟩, |p;L⟩)` for integer `p`.
    pub fn vacuum(m: i64, k: i64, p: i64, top: u64) -> Result<Self, FockError> {
        Self::exact(m, k, BigRational::from_integer(p.into()), 0, top)
    }

    pub fn dimension(&self) -> Option<u64> {
        self.n_hi.map(|hi| hi - self.n_lo + 1)
    }

    pub fn params(&self) -> Option<(i64, i64)> {
        match self.deformation {
            Deformation::RootOfUnity { m, k } => Some((m, k)),
            Deformation::Angle { .. } => None,
        }
    }

    pub fn with_range(&self, n_lo: u64, n_hi: Option<u64>) -> Result<Self, FockError> {
        Self::new(self.deformation.clone(), self.p.clone(), n_lo, n_hi)
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.n_lo && self.n_hi.is_none_or(|hi| n <= hi)
    }

    pub(crate) fn range_error(&self, n: u64) -> FockError {
        FockError::OutOfRange {
            n,
            lo: self.n_lo,
            hi: self.n_hi.map_or("∞".into(), |h| h.to_string()),
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hi = self.n_hi.map_or("∞".to_string(), |h| h.to_string());
        match &self.deformation {
            Deformation::RootOfUnity { m, k } => {
                write!(f, "W(|{p};{lo}⟩,|{p};{hi}⟩) at m={m}, k={k}", p = self.p, lo = self.n_lo)
            }
            Deformation::Angle { theta, .. } => {
                write!(f, "W(|{p};{lo}⟩,|{p};{hi}⟩) at θ={theta}", p = self.p, lo = self.n_lo)
            }
        }
    }
}

/// Basis convention of a set of matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Verma,
    Orthonormal,
}

/// Generator matrices on a finite module, indexed by `basis_labels`.
#[derive(Debug, Clone)]
pub struct RepMatrices {
    pub spec: ModuleSpec,
    pub basis_kind: BasisKind,
    pub basis_labels: Vec<u64>,
    pub a_plus: Matrix,
    pub a_minus: Matrix,
    pub k: Matrix,
    pub k_inv: Matrix,
}

#[derive(Serialize, Deserialize)]
struct RepMatricesRepr {
    spec: ModuleSpec,
    basis_kind: BasisKind,
    basis_labels: Vec<u64>,
    #[serde(rename = "A_plus")]
    a_plus: Vec<Vec<crate::exactnum::Scalar>>,
    #[serde(rename = "A_minus")]
    a_minus: Vec<Vec<crate::exactnum::Scalar>>,
    #[serde(rename = "K")]
    k: Vec<Vec<crate::exactnum::Scalar>>,
    #[serde(rename = "K_inv")]
    k_inv: Vec<Vec<crate::exactnum::Scalar>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    decimal: Option<serde_json::Value>,
}

impl RepMatrices {
    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    /// JSON document with exact entries and, when `shadow_digits` is given,
    /// decimal shadows of every entry at that precision.
    pub fn to_json(&self, shadow_digits: Option<u32>) -> serde_json::Value {
        let decimal = shadow_digits.map(|d| {
            let shadow = |m: &Matrix| -> serde_json::Value {
                serde_json::to_value(m.to_approx(d).rows()).expect("serializable")
            };
            serde_json::json!({
                "digits": d,
                "A_plus": shadow(&self.a_plus),
                "A_minus": shadow(&self.a_minus),
                "K": shadow(&self.k),
                "K_inv": shadow(&self.k_inv),
            })
        });
        let repr = RepMatricesRepr {
            spec: self.spec.clone(),
            basis_kind: self.basis_kind,
            basis_labels: self.basis_labels.clone(),
            a_plus: self.a_plus.rows(),
            a_minus: self.a_minus.rows(),
            k: self.k.rows(),
            k_inv: self.k_inv.rows(),
            decimal,
        };
        serde_json::to_value(repr).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, String> {
        let repr: RepMatricesRepr = serde_json::from_value(value.clone()).map_err(|e| e.to_string())?;
        let dim = repr.basis_labels.len();
        let conv = |rows: Vec<Vec<crate::exactnum::Scalar>>| Matrix::from_rows(rows, dim);
        Ok(RepMatrices {
            spec: repr.spec,
            basis_kind: repr.basis_kind,
            basis_labels: repr.basis_labels,
            a_plus: conv(repr.a_plus)?,
            a_minus: conv(repr.a_minus)?,
            k: conv(repr.k)?,
            k_inv: conv(repr.k_inv)?,
        })
    }
}
