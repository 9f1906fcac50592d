//! Evaluating algebra elements on a module and checking the defining
//! relations on concrete matrices.

use serde::{Deserialize, Serialize};

use super::{FockError, Matrix, ModuleArith, RepMatrices};
use crate::algebra::{AlgebraElement, QParam};
use crate::exactnum::{zero_tolerance_exponent, Scalar};

/// Bring a scalar into the entry type of `rep`.
fn coerce_into(rep: &RepMatrices, s: &Scalar) -> Result<Scalar, FockError> {
    match rep.a_plus.zero_scalar() {
        Scalar::Exact(z) => match s {
            Scalar::Exact(x) => Ok(Scalar::Exact(x.lift_to_field(z.field())?)),
            Scalar::Approx(_) => Err(crate::exactnum::NumError::MixedVariants.into()),
        },
        Scalar::Approx(z) => Ok(Scalar::Approx(s.to_approx(z.digits()))),
    }
}

fn check_same_deformation(q: &QParam, rep: &RepMatrices) -> Result<(), FockError> {
    let arith = ModuleArith::for_spec(&rep.spec)?;
    let ok = match (q.params(), arith.label()) {
        (Some(a), Some(b)) => a == b,
        (None, None) => q.same_as(arith.qparam()?.as_ref()),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(FockError::Mismatch(format!(
            "element and module {} use different q",
            rep.spec
        )))
    }
}

/// The matrix of `e` on the module carried by `rep`.
pub fn evaluate_element(e: &AlgebraElement, rep: &RepMatrices) -> Result<Matrix, FockError> {
    check_same_deformation(e.q(), rep)?;
    let d = rep.dim();
    let zero = rep.a_plus.zero_scalar().clone();
    let mut out = Matrix::zeros(d, d, &zero);
    for (&(i, j, s), c) in e.terms() {
        let ks = if s >= 0 {
            rep.k.pow(s as u32)
        } else {
            rep.k_inv.pow(s.unsigned_abs() as u32)
        };
        let word = rep.a_plus.pow(i).mul(&rep.a_minus.pow(j)).mul(&ks);
        out = out.add(&word.scale(&coerce_into(rep, c)?));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
    /// Decided in exact arithmetic rather than by tolerance.
    pub exact: bool,
    /// Largest entry modulus of the residual.
    pub max_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Check `KK⁻¹ = K⁻¹K = 1`, `K a^± K⁻¹ = q^{±2} a^±` and
/// `{a⁺, a⁻} = (K − K⁻¹)/(q − q⁻¹)` on `rep`.
pub fn verify_relations(rep: &RepMatrices) -> Result<RelationReport, FockError> {
    let arith = ModuleArith::for_spec(&rep.spec)?;
    let q = arith.qparam()?;
    let zero = rep.a_plus.zero_scalar().clone();
    let exact = zero.is_exact();
    let tol = zero.digits().map(zero_tolerance_exponent).unwrap_or(0);
    let id = Matrix::identity(rep.dim(), &zero);
    let (ap, am, k, ki) = (&rep.a_plus, &rep.a_minus, &rep.k, &rep.k_inv);
    let q2 = coerce_into(rep, &q.q_pow(2))?;
    let qm2 = coerce_into(rep, &q.q_pow(-2))?;
    let inv_minus = coerce_into(rep, &q.inv_q_minus())?;
    let residuals = [
        ("K K^-1 = 1", k.mul(ki).sub(&id)),
        ("K^-1 K = 1", ki.mul(k).sub(&id)),
        ("K a+ K^-1 = q^2 a+", k.mul(ap).mul(ki).sub(&ap.scale(&q2))),
        ("K a- K^-1 = q^-2 a-", k.mul(am).mul(ki).sub(&am.scale(&qm2))),
        (
            "{a+, a-} = (K - K^-1)/(q - q^-1)",
            ap.mul(am).add(&am.mul(ap)).sub(&k.sub(ki).scale(&inv_minus)),
        ),
    ];
    let checks = residuals
        .into_iter()
        .map(|(name, r)| RelationCheck {
            name: name.to_string(),
            holds: if exact { r.is_zero() } else { r.is_zero_within(tol) },
            exact,
            max_abs: r.max_abs_f64(),
        })
        .collect();
    Ok(RelationReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{casimir_element, parse_expression};
    use crate::fockrep::{module_matrices, ModuleSpec};

    #[test]
    fn relations_hold_on_vacuum_modules() {
        for (m, k, p, top) in [(1, 2, 1, 1), (1, 3, 2, 1), (3, 4, 3, 1), (2, 5, 4, 6), (1, 4, 5, 7)] {
            let rep = module_matrices(&ModuleSpec::vacuum(m, k, p, top).unwrap()).unwrap();
            let r = verify_relations(&rep).unwrap();
            assert!(r.all_hold(), "{m} {k} {p}: {r:?}");
        }
    }

    #[test]
    fn truncation_at_a_nonsingular_top_breaks_the_anticommutator() {
        let rep = module_matrices(&ModuleSpec::vacuum(1, 3, 2, 3).unwrap()).unwrap();
        let r = verify_relations(&rep).unwrap();
        assert!(!r.all_hold());
        assert!(r.checks[0].holds);
    }

    #[test]
    fn casimir_is_scalar() {
        let rep = module_matrices(&ModuleSpec::vacuum(1, 3, 2, 3).unwrap()).unwrap();
        let c = casimir_element(rep_q(&rep).as_ref().unwrap());
        assert!(evaluate_element(&c, &rep).unwrap().scalar_value().is_some());
    }

    fn rep_q(rep: &RepMatrices) -> Result<std::sync::Arc<QParam>, FockError> {
        ModuleArith::for_spec(&rep.spec)?.qparam()
    }

    #[test]
    fn evaluation_matches_generators() {
        let rep = module_matrices(&ModuleSpec::vacuum(1, 2, 1, 1).unwrap()).unwrap();
        let q = rep_q(&rep).unwrap();
        let e = parse_expression("K^-1 + a+", Some(&q)).unwrap();
        let v = evaluate_element(&e, &rep).unwrap();
        assert!(v.sub(&rep.k_inv.add(&rep.a_plus)).is_zero());
        let other = QParam::root_of_unity(1, 3).unwrap();
        let bad = parse_expression("K", Some(&other)).unwrap();
        assert!(matches!(evaluate_element(&bad, &rep), Err(FockError::Mismatch(_))));
    }
}
