//! Per-module arithmetic: powers `q^{n+c·p}` and the deformed integers
//! `[n+c·p]`, `{n+c·p}` in the backend the module calls for.

use std::sync::Arc;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Deformation, FockError, ModuleSpec, Weight};
use crate::algebra::QParam;
use crate::exactnum::{pi_times_rational, ApproxComplex, NumError, QContext, Scalar};

#[derive(Clone, Debug)]
pub enum ModuleArith {
    /// Rational `p = a/d` at `q = ζ_{4k}^m`; values in `Q(ζ_{4kd})`.
    Exact { ctx: QContext, p: BigRational },
    /// Approximate `q = e^{iθ}` and complex `p`.
    Approx {
        theta: BigFloat,
        p: ApproxComplex,
        digits: u32,
        label: Option<(i64, i64)>,
        inv_minus: ApproxComplex,
        inv_plus: Option<ApproxComplex>,
    },
}

impl ModuleArith {
    pub fn for_spec(spec: &ModuleSpec) -> Result<Self, FockError> {
        match (&spec.deformation, &spec.p) {
            (Deformation::RootOfUnity { m, k }, Weight::Rational(p)) => {
                let den = i64::try_from(p.denom().clone())
                    .map_err(|_| FockError::InvalidSpec(format!("weight denominator of {p} too large")))?;
                Ok(ModuleArith::Exact {
                    ctx: QContext::new(*m, *k, den)?,
                    p: p.clone(),
                })
            }
            (Deformation::RootOfUnity { m, k }, Weight::Approx(p)) => {
                let digits = p.digits();
                let theta = pi_times_rational(&BigRational::new((*m).into(), (2 * *k).into()), digits);
                Self::approx(theta, p.clone(), digits, Some((*m, *k)))
            }
            (Deformation::Angle { theta, digits }, w) => {
                let t = ApproxComplex::parse(theta, "0", *digits).map_err(FockError::InvalidSpec)?;
                let p = match w {
                    Weight::Rational(r) => ApproxComplex::from_rational(r, *digits),
                    Weight::Approx(a) => a.with_digits((*digits).min(a.digits())),
                };
                let d = p.digits();
                Self::approx(t.re().clone(), p, d, None)
            }
        }
    }

    fn approx(theta: BigFloat, p: ApproxComplex, digits: u32, label: Option<(i64, i64)>) -> Result<Self, FockError> {
        let q = ApproxComplex::cis(&theta, digits);
        let qi = q.conj();
        let minus = q.sub(&qi);
        if minus.is_zero_within(digits / 2) {
            return Err(NumError::UndefinedParameter("q = ±1".into()).into());
        }
        let plus = q.add(&qi);
        let inv_plus = if plus.is_zero_within(digits / 2) {
            None
        } else {
            Some(plus.inv()?)
        };
        Ok(ModuleArith::Approx {
            theta,
            p,
            digits,
            label,
            inv_minus: minus.inv()?,
            inv_plus,
        })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ModuleArith::Exact { .. })
    }

    pub fn digits(&self) -> Option<u32> {
        match self {
            ModuleArith::Exact { .. } => None,
            ModuleArith::Approx { digits, .. } => Some(*digits),
        }
    }

    /// The algebra parameter matching this module, for evaluating elements.
    pub fn qparam(&self) -> Result<Arc<QParam>, FockError> {
        match self {
            ModuleArith::Exact { ctx, .. } => Ok(QParam::root_of_unity(ctx.m(), ctx.k())?),
            ModuleArith::Approx { theta, digits, .. } => Ok(QParam::angle(theta.clone(), *digits)?),
        }
    }

    pub fn integer(&self, v: i64) -> Scalar {
        match self {
            ModuleArith::Exact { ctx, .. } => Scalar::Exact(ctx.field().from_integer(v)),
            ModuleArith::Approx { digits, .. } => Scalar::Approx(ApproxComplex::from_i64(v, *digits)),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.integer(0)
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    fn exponent(p: &BigRational, n: i64, c: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n)) + p * BigRational::from_integer(BigInt::from(c))
    }

    fn approx_exponent(p: &ApproxComplex, n: i64, c: i64, digits: u32) -> ApproxComplex {
        ApproxComplex::from_i64(n, digits).add(&p.mul(&ApproxComplex::from_i64(c, digits)))
    }

    /// `q^{n + c·p}`.
    pub fn q_shift(&self, n: i64, c: i64) -> Result<Scalar, FockError> {
        match self {
            ModuleArith::Exact { ctx, p } => Ok(Scalar::Exact(ctx.q_pow(&Self::exponent(p, n, c))?)),
            ModuleArith::Approx { theta, p, digits, .. } => {
                let x = Self::approx_exponent(p, n, c, *digits);
                Ok(Scalar::Approx(ApproxComplex::exp_i_times(theta, &x)))
            }
        }
    }

    /// `[n + c·p]`.
    pub fn bracket(&self, n: i64, c: i64) -> Result<Scalar, FockError> {
        match self {
            ModuleArith::Exact { ctx, p } => Ok(Scalar::Exact(ctx.bracket(&Self::exponent(p, n, c))?)),
            ModuleArith::Approx {
                theta,
                p,
                digits,
                inv_minus,
                ..
            } => {
                let x = Self::approx_exponent(p, n, c, *digits);
                let a = ApproxComplex::exp_i_times(theta, &x);
                let b = ApproxComplex::exp_i_times(theta, &x.neg());
                Ok(Scalar::Approx(a.sub(&b).mul(inv_minus)))
            }
        }
    }

    /// `{n + c·p}`.
    pub fn brace(&self, n: i64, c: i64) -> Result<Scalar, FockError> {
        match self {
            ModuleArith::Exact { ctx, p } => Ok(Scalar::Exact(ctx.brace(&Self::exponent(p, n, c))?)),
            ModuleArith::Approx {
                theta,
                p,
                digits,
                inv_plus,
                ..
            } => {
                let inv = inv_plus
                    .as_ref()
                    .ok_or_else(|| NumError::UndefinedParameter("q = ±i".into()))?;
                let x = Self::approx_exponent(p, n, c, *digits);
                let a = ApproxComplex::exp_i_times(theta, &x);
                let b = ApproxComplex::exp_i_times(theta, &x.neg());
                Ok(Scalar::Approx(a.add(&b).mul(inv)))
            }
        }
    }

    /// Bring a scalar from the algebra (or elsewhere) into this module's
    /// backend: exact values are lifted into the module field, or explicitly
    /// downgraded to approximations when the module is approximate.
    pub fn coerce(&self, s: &Scalar) -> Result<Scalar, FockError> {
        match (self, s) {
            (ModuleArith::Exact { ctx, .. }, Scalar::Exact(x)) => Ok(Scalar::Exact(x.lift_to_field(ctx.field())?)),
            (ModuleArith::Exact { .. }, Scalar::Approx(_)) => Err(NumError::MixedVariants.into()),
            (ModuleArith::Approx { digits, .. }, other) => Ok(Scalar::Approx(other.to_approx(*digits))),
        }
    }

    /// Label `(m, k)` of the deformation when known.
    pub fn label(&self) -> Option<(i64, i64)> {
        match self {
            ModuleArith::Exact { ctx, .. } => Some((ctx.m(), ctx.k())),
            ModuleArith::Approx { label, .. } => *label,
        }
    }
}
