//! Central elements `(a^±)^{4k}`, `K^{2k}` and the families of modules that
//! share a dimension or a Casimir eigenvalue without being equivalent.

use serde::{Deserialize, Serialize};

use super::{AlgebraParams, Case, ClassifyError, IrrepDescriptor};
use crate::exactnum::{zero_tolerance_exponent, Scalar};
use crate::fockrep::{module_matrices, ModuleSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralReport {
    pub a_plus_power_zero: bool,
    pub a_minus_power_zero: bool,
    /// `K^{2k}` as a multiple of the identity, when it is one.
    pub k_power_scalar: Option<Scalar>,
}

impl CentralReport {
    pub fn all_hold(&self) -> bool {
        self.a_plus_power_zero && self.a_minus_power_zero && self.k_power_scalar.is_some()
    }
}

/// Evaluate `(a⁺)^{4k}`, `(a⁻)^{4k}` and `K^{2k}` on the module of `desc`.
pub fn central_checks(desc: &IrrepDescriptor) -> Result<CentralReport, ClassifyError> {
    let rep = module_matrices(&desc.spec())?;
    let k = desc.params.k as u32;
    let zero = |m: &crate::fockrep::Matrix| match rep.a_plus.zero_scalar().digits() {
        Some(d) => m.is_zero_within(zero_tolerance_exponent(d)),
        None => m.is_zero(),
    };
    Ok(CentralReport {
        a_plus_power_zero: zero(&rep.a_plus.pow(4 * k)),
        a_minus_power_zero: zero(&rep.a_minus.pow(4 * k)),
        k_power_scalar: rep.k.pow(2 * k).scalar_value(),
    })
}

/// Two simple modules of equal dimension and equal Casimir eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoincidencePair {
    pub family: &'static str,
    pub first: ModuleSpec,
    pub second: ModuleSpec,
}

/// The equal-dimension pairs `W(|p;0⟩,|p;L⟩)`, `W(|p+2k;0⟩,|p+2k;L⟩)`.
pub fn coincidence_pairs(params: &AlgebraParams) -> Result<Vec<CoincidencePair>, ClassifyError> {
    let (m, k) = (params.m, params.k);
    let mut out = Vec::new();
    let mut push = |family: &'static str, p: i64, top: i64| -> Result<(), ClassifyError> {
        out.push(CoincidencePair {
            family,
            first: ModuleSpec::vacuum(m, k, p, top as u64)?,
            second: ModuleSpec::vacuum(m, k, p + 2 * k, top as u64)?,
        });
        Ok(())
    };
    match params.case {
        Case::KEvenMOdd => {
            for p in (2..=2 * k).step_by(2) {
                push("even p", p, 2 * k - p)?;
            }
            for p in (1..k).step_by(2) {
                push("odd p below k", p, k - p)?;
            }
            for p in (k + 3..2 * k).step_by(2) {
                push("odd p above k+1", p, 3 * k - p)?;
            }
        }
        Case::KOddMOdd => {
            for p in (2..k).step_by(2) {
                push("even p below k", p, k - p)?;
            }
            for p in (k + 3..=2 * k).step_by(2) {
                push("even p above k+1", p, 2 * k - p)?;
            }
            push("p = k+1", k + 1, k - 1)?;
        }
        Case::KOddMEven => {}
    }
    Ok(out)
}

/// The four modules sharing one Casimir eigenvalue for even `p` in
/// `2..=2k` when `k` is even: dimensions `2k−p+1` (twice) and `p−1` (twice).
pub fn casimir_quadruple(params: &AlgebraParams, p: i64) -> Result<Option<[ModuleSpec; 4]>, ClassifyError> {
    let (m, k) = (params.m, params.k);
    if params.case != Case::KEvenMOdd || p % 2 != 0 || !(2..=2 * k).contains(&p) {
        return Ok(None);
    }
    let a = (2 * k - p) as u64;
    let b = (p - 2) as u64;
    Ok(Some([
        ModuleSpec::vacuum(m, k, p, a)?,
        ModuleSpec::vacuum(m, k, p + 2 * k, a)?,
        ModuleSpec::vacuum(m, k, 2 * k - p + 2, b)?,
        ModuleSpec::vacuum(m, k, 4 * k - p + 2, b)?,
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{find_intertwiner, vacuum_irreps, IrrepDescriptor, Derivation};
    use crate::fockrep::Weight;

    #[test]
    fn central_on_two_dim() {
        let ap = AlgebraParams::new(1, 2).unwrap();
        let d = IrrepDescriptor::build(&ap, Weight::integer(1), 1, Derivation::ClosedForm).unwrap();
        let r = central_checks(&d).unwrap();
        assert!(r.all_hold());
        let minus_one = r.k_power_scalar.unwrap();
        assert!((&minus_one + &minus_one.one_like()).is_zero());
        let d = IrrepDescriptor::build(&ap, Weight::integer(4), 0, Derivation::ClosedForm).unwrap();
        assert!(central_checks(&d).unwrap().all_hold());
    }

    #[test]
    fn central_on_all_small_irreps() {
        for ap in AlgebraParams::all_up_to(5) {
            for d in vacuum_irreps(&ap, None).unwrap() {
                assert!(central_checks(&d).unwrap().all_hold(), "{ap} p={}", d.p);
            }
        }
    }

    #[test]
    fn pairs_are_inequivalent() {
        for ap in AlgebraParams::all_up_to(7) {
            for pair in coincidence_pairs(&ap).unwrap() {
                assert_eq!(pair.first.dimension(), pair.second.dimension());
                assert!(find_intertwiner(&pair.first, &pair.second).unwrap().is_none());
            }
        }
    }

    #[test]
    fn quadruple_shape() {
        let ap = AlgebraParams::new(1, 4).unwrap();
        let q = casimir_quadruple(&ap, 2).unwrap().unwrap();
        let dims: Vec<_> = q.iter().map(|s| s.dimension().unwrap()).collect();
        assert_eq!(dims, vec![7, 7, 1, 1]);
        assert!(casimir_quadruple(&ap, 3).unwrap().is_none());
        assert!(casimir_quadruple(&AlgebraParams::new(1, 3).unwrap(), 2).unwrap().is_none());
    }
}
