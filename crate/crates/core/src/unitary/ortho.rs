//! Orthonormal-basis matrices of unitarizable modules and the closed-form
//! two- and four-dimensional oracles.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{is_unitarizable, unitarity_tolerance, UnitaryError, VerdictStatus};
use crate::classify::AlgebraParams;
use crate::exactnum::{ApproxComplex, NumError, RationalAngle, Scalar, TrigKind, MIN_DIGITS};
use crate::fockrep::{
    a_minus_coefficient, verify_relations, BasisKind, Matrix, ModuleArith, ModuleSpec, RelationReport, RepMatrices,
    Weight,
};

/// Matrices on the orthonormal basis `|p;n)`: `a⁻|p;n) = √c_n |p;n−1)`,
/// `a⁺` the transpose, `K|p;n) = q^{2n+p}|p;n)`. Signs are certified exactly
/// first; square roots are taken at `digits`.
pub fn orthonormal_matrices(
    params: &AlgebraParams,
    p: &BigRational,
    top: u64,
    digits: u32,
) -> Result<RepMatrices, UnitaryError> {
    if digits < MIN_DIGITS {
        return Err(NumError::PrecisionTooLow(digits).into());
    }
    let w = Weight::Rational(p.clone());
    let verdict = is_unitarizable(params, &w, top)?;
    if verdict.status != VerdictStatus::Unitarizable {
        return Err(UnitaryError::NotUnitarizable(verdict.status));
    }
    let spec = ModuleSpec::new(params.deformation(), w, 0, Some(top))?;
    let arith = ModuleArith::for_spec(&spec)?;
    if !a_minus_coefficient(&arith, top + 1)?.0.is_zero() {
        return Err(UnitaryError::NotAModule(top + 1, top));
    }
    let d = (top + 1) as usize;
    let zero = Scalar::Approx(ApproxComplex::zero(digits));
    let tol = unitarity_tolerance(digits);
    let mut a_minus = Matrix::zeros(d, d, &zero);
    for n in 1..=top {
        let (c, _) = a_minus_coefficient(&arith, n)?;
        let root = c
            .to_approx(digits)
            .sqrt_nonneg_real(tol)
            .expect("positive by the exact verdict");
        a_minus.set((n - 1) as usize, n as usize, Scalar::Approx(root));
    }
    let mut kd = Vec::with_capacity(d);
    let mut kid = Vec::with_capacity(d);
    for n in 0..=top as i64 {
        let v = arith.q_shift(2 * n, 1)?.to_approx(digits);
        kid.push(Scalar::Approx(v.conj()));
        kd.push(Scalar::Approx(v));
    }
    Ok(RepMatrices {
        spec,
        basis_kind: BasisKind::Orthonormal,
        basis_labels: (0..=top).collect(),
        a_plus: a_minus.transpose(),
        a_minus,
        k: Matrix::diagonal(kd, &zero),
        k_inv: Matrix::diagonal(kid, &zero),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitarityReport {
    /// The matrices claim the orthonormal basis; Verma matrices violate the
    /// precondition.
    pub orthonormal_basis: bool,
    /// `(A⁻)† = A⁺` entrywise.
    pub a_minus_adjoint: bool,
    /// `K† = K⁻¹` entrywise.
    pub k_adjoint: bool,
    pub relations: RelationReport,
    pub max_deviation: f64,
}

impl UnitarityReport {
    pub fn all_hold(&self) -> bool {
        self.orthonormal_basis && self.a_minus_adjoint && self.k_adjoint && self.relations.all_hold()
    }
}

/// Check `(A⁻)† = A⁺` and `K† = K⁻¹` to `10^{1−digits}` and re-check the
/// defining relations.
pub fn verify_unitarity(rep: &RepMatrices, digits: u32) -> Result<UnitarityReport, UnitaryError> {
    let tol = digits.saturating_sub(1);
    let da = rep.a_minus.adjoint().sub(&rep.a_plus);
    let dk = rep.k.adjoint().sub(&rep.k_inv);
    let ok = |m: &Matrix| if m.zero_scalar().is_exact() { m.is_zero() } else { m.is_zero_within(tol) };
    Ok(UnitarityReport {
        orthonormal_basis: rep.basis_kind == BasisKind::Orthonormal,
        a_minus_adjoint: ok(&da),
        k_adjoint: ok(&dk),
        relations: verify_relations(rep)?,
        max_deviation: da.max_abs_f64().max(dk.max_abs_f64()),
    })
}

fn trig(num: i64, den: i64, kind: TrigKind, digits: u32) -> ApproxComplex {
    RationalAngle::from_ratio(num, den).eval(kind, digits)
}

/// `i e^{iπ r}`.
fn i_cis_pi(r: BigRational, digits: u32) -> Scalar {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    Scalar::Approx(ApproxComplex::cis_pi(&(half + r), digits))
}

fn sqrt_of(x: ApproxComplex) -> Scalar {
    let d = x.digits();
    Scalar::Approx(x.sqrt_nonneg_real(d / 2).expect("positive closed form"))
}

/// The two-dimensional unitarizable irrep of `m ≡ ±1 (mod 4)` in closed
/// form: weight `p` (`k−1` or `3k−1`), `a⁻ = [[0, √(cos θ / sin θ)], [0, 0]]`
/// and `K = diag(i e^{−iθ}, i e^{iθ})`. `None` for even `m`.
pub fn fixture_two_dim(params: &AlgebraParams, digits: u32) -> Option<(BigRational, Matrix, Matrix)> {
    let (m, k) = (params.m, params.k);
    let p = match m % 4 {
        1 => k - 1,
        3 => 3 * k - 1,
        _ => return None,
    };
    let zero = Scalar::Approx(ApproxComplex::zero(digits));
    let ratio = trig(m, 2 * k, TrigKind::Cos, digits)
        .div(&trig(m, 2 * k, TrigKind::Sin, digits))
        .expect("sin θ ≠ 0");
    let mut a = Matrix::zeros(2, 2, &zero);
    a.set(0, 1, sqrt_of(ratio));
    let th = BigRational::new(BigInt::from(m), BigInt::from(2 * k));
    let kk = Matrix::diagonal(vec![i_cis_pi(-th.clone(), digits), i_cis_pi(th, digits)], &zero);
    Some((BigRational::from_integer(BigInt::from(p)), a, kk))
}

/// The four-dimensional irrep at `m = 3`, `p = 3k−3`: `a⁻` superdiagonal
/// `(√(cos(9π/2k)/sin(3π/2k)), √(2 sin(3π/k)), √(cos(9π/2k)/sin(3π/2k)))`
/// and `K = diag(i e^{∓9iπ/2k}, i e^{∓3iπ/2k})` in increasing phase order.
pub fn fixture_four_dim(k: i64, digits: u32) -> (Matrix, Matrix) {
    let zero = Scalar::Approx(ApproxComplex::zero(digits));
    let outer = sqrt_of(
        trig(9, 2 * k, TrigKind::Cos, digits)
            .div(&trig(3, 2 * k, TrigKind::Sin, digits))
            .expect("sin ≠ 0"),
    );
    let inner = sqrt_of(trig(3, k, TrigKind::Sin, digits).mul(&ApproxComplex::from_i64(2, digits)));
    let mut a = Matrix::zeros(4, 4, &zero);
    a.set(0, 1, outer.clone());
    a.set(1, 2, inner);
    a.set(2, 3, outer);
    let r = |x: i64| BigRational::new(BigInt::from(x), BigInt::from(2 * k));
    let kk = Matrix::diagonal(
        vec![
            i_cis_pi(r(-9), digits),
            i_cis_pi(r(-3), digits),
            i_cis_pi(r(3), digits),
            i_cis_pi(r(9), digits),
        ],
        &zero,
    );
    (a, kk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockrep::module_matrices;

    fn close(a: &Matrix, b: &Matrix, tol: u32) -> bool {
        a.sub(b).is_zero_within(tol)
    }

    #[test]
    fn two_dim_matches_closed_form() {
        let ap = AlgebraParams::new(1, 2).unwrap();
        let (p, a, k) = fixture_two_dim(&ap, 64).unwrap();
        let rep = orthonormal_matrices(&ap, &p, 1, 64).unwrap();
        assert!(close(&rep.a_minus, &a, 40));
        assert!(close(&rep.k, &k, 40));
        assert!(close(&rep.a_plus, &a.transpose(), 40));
        assert!(verify_unitarity(&rep, 64).unwrap().all_hold());
    }

    #[test]
    fn four_dim_matches_closed_form() {
        let ap = AlgebraParams::new(3, 10).unwrap();
        let (a, k) = fixture_four_dim(10, 64);
        let rep = orthonormal_matrices(&ap, &BigRational::from_integer(27.into()), 3, 64).unwrap();
        assert!(close(&rep.a_minus, &a, 40));
        assert!(close(&rep.k, &k, 40));
        assert!(verify_unitarity(&rep, 64).unwrap().all_hold());
    }

    #[test]
    fn refusals() {
        let ap = AlgebraParams::new(2, 3).unwrap();
        assert!(matches!(
            orthonormal_matrices(&ap, &BigRational::from_integer(1.into()), 2, 64),
            Err(UnitaryError::NotUnitarizable(_))
        ));
        let ap = AlgebraParams::new(1, 2).unwrap();
        assert!(orthonormal_matrices(&ap, &BigRational::from_integer(1.into()), 1, 8).is_err());
        assert!(matches!(
            orthonormal_matrices(&ap, &BigRational::from_integer(2.into()), 1, 64),
            Err(UnitaryError::NotAModule(2, 1))
        ));
    }

    #[test]
    fn verma_basis_is_a_precondition_violation() {
        let rep = module_matrices(&ModuleSpec::vacuum(1, 3, 2, 1).unwrap()).unwrap();
        let r = verify_unitarity(&rep, 64).unwrap();
        assert!(!r.orthonormal_basis && !r.all_hold());
    }
}
