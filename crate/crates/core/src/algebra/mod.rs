//! The abstract superalgebra: generators, normal-ordered elements, the word
//! rewriting system, the expression grammar, the antiinvolution `ω`, the
//! `Z₂`-grading and the Casimir element.
//!
//! Defining relations, with `q` a fixed nonzero complex number, `q² ≠ 1`:
//!
//! ```text
//! K K⁻¹ = K⁻¹ K = 1,   K a± = q^{±2} a± K,   a⁺a⁻ + a⁻a⁺ = (K − K⁻¹)/(q − q⁻¹)
//! ```

mod element;
mod parser;
mod rewrite;

pub use element::{casimir_element, casimir_element_bare, AlgebraElement, Grade, Monomial, TermRepr};
pub use parser::{parse_ast, parse_expression, Expr, ParseError};
pub use rewrite::{normal_order, normal_order_with, RewriteStrategy};

use std::fmt;
use std::sync::Arc;

use astro_float::BigFloat;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exactnum::{pi_times_rational, ApproxComplex, NumError, QContext, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    #[serde(rename = "a+")]
    Aplus,
    #[serde(rename = "a-")]
    Aminus,
    K,
    #[serde(rename = "K^-1")]
    Kinv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::Aplus, Generator::Aminus, Generator::K, Generator::Kinv];

    /// `true` for the odd generators `a±`.
    pub fn is_odd(self) -> bool {
        matches!(self, Generator::Aplus | Generator::Aminus)
    }

    /// Image under `ω`: `a± ↦ a∓`, `K^{±1} ↦ K^{∓1}`.
    pub fn omega(self) -> Generator {
        match self {
            Generator::Aplus => Generator::Aminus,
            Generator::Aminus => Generator::Aplus,
            Generator::K => Generator::Kinv,
            Generator::Kinv => Generator::K,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Aplus => "a+",
            Generator::Aminus => "a-",
            Generator::K => "K",
            Generator::Kinv => "K^-1",
        })
    }
}

/// The deformation parameter `q`, either an exact root of unity or an
/// approximate point `e^{iθ}` on the unit circle.
#[derive(Clone, Debug)]
pub enum QParam {
    RootOfUnity(QContext),
    Angle {
        theta: BigFloat,
        digits: u32,
        q: ApproxComplex,
        inv_minus: ApproxComplex,
    },
}

impl QParam {
    /// `q = ζ_{4k}^m`.
    pub fn root_of_unity(m: i64, k: i64) -> Result<Arc<Self>, NumError> {
        Ok(Arc::new(QParam::RootOfUnity(QContext::new(m, k, 1)?)))
    }

    /// `q = e^{iθ}` at the given decimal precision.
    pub fn angle(theta: BigFloat, digits: u32) -> Result<Arc<Self>, NumError> {
        let q = ApproxComplex::cis(&theta, digits);
        let diff = q.sub(&q.inv()?);
        if diff.is_zero_within(digits / 2) {
            return Err(NumError::UndefinedParameter("q = ±1".into()));
        }
        let inv_minus = diff.inv()?;
        Ok(Arc::new(QParam::Angle {
            theta,
            digits,
            q,
            inv_minus,
        }))
    }

    /// `q = e^{iθ}` with `θ` given as a decimal string such as `"0.7"`.
    pub fn angle_decimal(theta: &str, digits: u32) -> Result<Arc<Self>, NumError> {
        let t = crate::exactnum::ApproxComplex::parse(theta, "0", digits)
            .map_err(NumError::UndefinedParameter)?;
        Self::angle(t.re().clone(), digits)
    }

    /// `q = e^{iπr}` approximated at the given precision.
    pub fn angle_pi_rational(r: &BigRational, digits: u32) -> Result<Arc<Self>, NumError> {
        Self::angle(pi_times_rational(r, digits), digits)
    }

    /// `(m, k)` for exact roots of unity.
    pub fn params(&self) -> Option<(i64, i64)> {
        match self {
            QParam::RootOfUnity(c) => Some((c.m(), c.k())),
            QParam::Angle { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, QParam::RootOfUnity(_))
    }

    pub fn digits(&self) -> Option<u32> {
        match self {
            QParam::RootOfUnity(_) => None,
            QParam::Angle { digits, .. } => Some(*digits),
        }
    }

    pub fn integer(&self, v: i64) -> Scalar {
        match self {
            QParam::RootOfUnity(c) => Scalar::Exact(c.field().from_integer(v)),
            QParam::Angle { digits, .. } => Scalar::Approx(ApproxComplex::from_i64(v, *digits)),
        }
    }

    pub fn rational(&self, r: &BigRational) -> Scalar {
        match self {
            QParam::RootOfUnity(c) => Scalar::Exact(c.field().from_rational(r)),
            QParam::Angle { digits, .. } => Scalar::Approx(ApproxComplex::from_rational(r, *digits)),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.integer(0)
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    /// `q^n`.
    pub fn q_pow(&self, n: i64) -> Scalar {
        match self {
            QParam::RootOfUnity(c) => Scalar::Exact(c.q_pow_int(n)),
            QParam::Angle { q, .. } => Scalar::Approx(q.powi(n).expect("q is nonzero")),
        }
    }

    /// `1/(q − q⁻¹)`.
    pub fn inv_q_minus(&self) -> Scalar {
        match self {
            QParam::RootOfUnity(c) => Scalar::Exact(c.inv_q_minus().clone()),
            QParam::Angle { inv_minus, .. } => Scalar::Approx(inv_minus.clone()),
        }
    }

    /// Coerce a scalar into this parameter's backend. Exact scalars become
    /// approximations when `q` is approximate; approximations are refused by
    /// an exact `q`.
    pub fn coerce(&self, s: Scalar) -> Result<Scalar, NumError> {
        match (self, s) {
            (QParam::RootOfUnity(_), Scalar::Approx(_)) => Err(NumError::MixedVariants),
            (QParam::Angle { digits, .. }, Scalar::Exact(x)) => Ok(Scalar::Approx(x.to_approx(*digits))),
            (_, s) => Ok(s),
        }
    }

    /// Identity of the underlying parameter, used to refuse mixing elements
    /// of different algebras.
    pub fn same_as(&self, other: &QParam) -> bool {
        match (self, other) {
            (QParam::RootOfUnity(a), QParam::RootOfUnity(b)) => a.m() == b.m() && a.k() == b.k(),
            (QParam::Angle { theta: a, digits: da, .. }, QParam::Angle { theta: b, digits: db, .. }) => {
                da == db && a.cmp(b) == Some(0)
            }
            _ => false,
        }
    }
}
