//! Vacuum irreps `W(|p;0⟩, |p;L⟩)`: closed-form tops, scanned tops and
//! descriptors.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{AlgebraParams, Case, ClassifyError};
use crate::exactnum::Scalar;
use crate::fockrep::{singular_vectors, ModuleArith, ModuleSpec, Weight};
use crate::unitary::VerdictStatus;

/// Upper end `W` of the integer weight window `0 < p ≤ W` beyond which every
/// vacuum module is equivalent to one inside it.
pub fn normalization_window(params: &AlgebraParams) -> i64 {
    let k = params.k;
    match params.case {
        Case::KEvenMOdd | Case::KOddMOdd => 4 * k,
        Case::KOddMEven if params.m % 4 == 2 => 2 * k,
        Case::KOddMEven => k,
    }
}

/// Top index `L` for weights with no extra singular vectors.
pub fn generic_top(params: &AlgebraParams) -> u64 {
    match params.case {
        Case::KOddMOdd => (params.k - 1) as u64,
        _ => (2 * params.k - 1) as u64,
    }
}

/// Closed-form top index `L` of the simple vacuum module for integer `p` in
/// the normalization window; `None` outside it.
pub fn closed_form_top(params: &AlgebraParams, p: i64) -> Option<u64> {
    let k = params.k;
    if p < 1 || p > normalization_window(params) {
        return None;
    }
    let even = p % 2 == 0;
    let l = match params.case {
        Case::KEvenMOdd if even => {
            if p <= 2 * k {
                2 * k - p
            } else {
                4 * k - p
            }
        }
        Case::KEvenMOdd => {
            if p < k {
                k - p
            } else if p == k + 1 || p == 3 * k + 1 {
                2 * k - 1
            } else if p < 3 * k {
                3 * k - p
            } else {
                5 * k - p
            }
        }
        Case::KOddMOdd if even => {
            if p < k {
                k - p
            } else if p == k + 1 || p == 3 * k + 1 {
                k - 1
            } else if p <= 2 * k {
                2 * k - p
            } else if p < 3 * k {
                3 * k - p
            } else {
                4 * k - p
            }
        }
        Case::KOddMOdd => k - 1,
        Case::KOddMEven if even => 2 * k - p,
        Case::KOddMEven => {
            if p <= k {
                k - p
            } else {
                3 * k - p
            }
        }
    };
    Some(l as u64)
}

/// `L` = (first singular index above 0) − 1, by a direct scan of the `a⁻`
/// coefficients.
pub fn scan_top(params: &AlgebraParams, p: &Weight) -> Result<u64, ClassifyError> {
    let limit = 2 * params.k as u64;
    let report = singular_vectors(&params.deformation(), p, limit)?;
    let first = report
        .first_above(0)
        .expect("|p;2k⟩ or |p;k⟩ is always singular at a root of unity");
    Ok(first - 1)
}

/// Default sampling grid: every multiple of 1/2 in `(0, W]`.
pub fn default_grid(params: &AlgebraParams) -> Vec<BigRational> {
    (1..=2 * normalization_window(params))
        .map(|j| BigRational::new(BigInt::from(j), BigInt::from(2)))
        .collect()
}

/// How the top index of a descriptor was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Derivation {
    ClosedForm,
    Scan,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IrrepDescriptor {
    pub params: AlgebraParams,
    pub p: Weight,
    #[serde(rename = "L")]
    pub top: u64,
    pub dimension: u64,
    /// `q^{2n+p}` for `n = 0..=L`.
    pub k_spectrum: Vec<Scalar>,
    pub casimir: Scalar,
    pub derivation: Derivation,
    /// `L` equals the generic value.
    pub generic: bool,
    pub unitarizable: Option<VerdictStatus>,
}

impl PartialEq for IrrepDescriptor {
    fn eq(&self, o: &Self) -> bool {
        self.params == o.params && self.p == o.p && self.top == o.top
    }
}

impl IrrepDescriptor {
    pub fn build(params: &AlgebraParams, p: Weight, top: u64, derivation: Derivation) -> Result<Self, ClassifyError> {
        let spec = self_spec(params, &p, top)?;
        let arith = ModuleArith::for_spec(&spec)?;
        let k_spectrum = (0..=top as i64)
            .map(|n| arith.q_shift(2 * n, 1))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IrrepDescriptor {
            params: *params,
            casimir: casimir_eigenvalue(params, &p)?,
            generic: top == generic_top(params),
            p,
            top,
            dimension: top + 1,
            k_spectrum,
            derivation,
            unitarizable: None,
        })
    }

    pub fn spec(&self) -> ModuleSpec {
        self_spec(&self.params, &self.p, self.top).expect("validated at construction")
    }

    /// Ordering key `(p, L)`; approximate weights sort after rationals.
    pub fn cmp_key(&self, o: &Self) -> Ordering {
        match (&self.p, &o.p) {
            (Weight::Rational(a), Weight::Rational(b)) => a.cmp(b),
            (Weight::Rational(_), _) => Ordering::Less,
            (_, Weight::Rational(_)) => Ordering::Greater,
            (Weight::Approx(a), Weight::Approx(b)) => a.re().partial_cmp(b.re()).unwrap_or(Ordering::Equal),
        }
        .then(self.top.cmp(&o.top))
    }
}

fn self_spec(params: &AlgebraParams, p: &Weight, top: u64) -> Result<ModuleSpec, ClassifyError> {
    Ok(ModuleSpec::new(params.deformation(), p.clone(), 0, Some(top))?)
}

/// The simple vacuum modules: every integer `p` in the window with its
/// closed-form `L`, plus every non-integer point of `grid` with a scanned `L`.
/// Rows are ordered by `(p, L)`.
pub fn vacuum_irreps(params: &AlgebraParams, grid: Option<&[BigRational]>) -> Result<Vec<IrrepDescriptor>, ClassifyError> {
    let mut out = Vec::new();
    for p in 1..=normalization_window(params) {
        let w = Weight::integer(p);
        let (top, how) = match closed_form_top(params, p) {
            Some(l) => (l, Derivation::ClosedForm),
            None => (scan_top(params, &w)?, Derivation::Scan),
        };
        out.push(IrrepDescriptor::build(params, w, top, how)?);
    }
    let mut extra: Vec<&BigRational> = grid.unwrap_or(&[]).iter().filter(|r| !r.is_integer()).collect();
    extra.sort();
    extra.dedup();
    for r in extra {
        let w = Weight::Rational(r.clone());
        let top = scan_top(params, &w)?;
        out.push(IrrepDescriptor::build(params, w, top, Derivation::Scan)?);
    }
    out.sort_by(|a, b| a.cmp_key(b));
    Ok(out)
}

/// `(q^{2p−2} + q^{2−2p})/2 + 2`, the Casimir eigenvalue on any vacuum module
/// of weight `p`.
pub fn casimir_eigenvalue(params: &AlgebraParams, p: &Weight) -> Result<Scalar, ClassifyError> {
    let spec = ModuleSpec::new(params.deformation(), p.clone(), 0, None)?;
    let arith = ModuleArith::for_spec(&spec)?;
    let sum = &arith.q_shift(-2, 2)? + &arith.q_shift(2, -2)?;
    let half = match &sum {
        Scalar::Exact(x) => Scalar::Exact(x.field().from_rational(&BigRational::new(BigInt::one(), BigInt::from(2)))),
        Scalar::Approx(_) => arith.integer(2).inv()?,
    };
    Ok(&(&sum * &half) + &arith.integer(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::casimir_element;
    use crate::fockrep::{evaluate_element, module_matrices};

    fn params(m: i64, k: i64) -> AlgebraParams {
        AlgebraParams::new(m, k).unwrap()
    }

    #[test]
    fn small_case_tops() {
        let p = params(1, 2);
        let even: Vec<_> = [2, 4, 6, 8].iter().map(|&x| closed_form_top(&p, x).unwrap()).collect();
        assert_eq!(even, vec![2, 0, 2, 0]);
        let odd: Vec<_> = [1, 3, 5, 7].iter().map(|&x| closed_form_top(&p, x).unwrap()).collect();
        assert_eq!(odd, vec![1, 3, 1, 3]);
        let p3 = params(1, 3);
        assert!((1..12).step_by(2).all(|x| closed_form_top(&p3, x) == Some(2)));
        assert_eq!(closed_form_top(&params(2, 3), 1), Some(2));
        assert_eq!(closed_form_top(&p, 9), None);
        assert_eq!(closed_form_top(&p, 0), None);
    }

    #[test]
    fn closed_form_matches_scan_small() {
        for ap in AlgebraParams::all_up_to(6) {
            for p in 1..=normalization_window(&ap) {
                assert_eq!(
                    closed_form_top(&ap, p).unwrap(),
                    scan_top(&ap, &Weight::integer(p)).unwrap(),
                    "{ap} p={p}"
                );
            }
        }
    }

    #[test]
    fn descriptor_counts() {
        let d = vacuum_irreps(&params(1, 4), None).unwrap();
        assert_eq!(d.len(), 16);
        assert_eq!(d.iter().filter(|x| x.p.as_integer().unwrap() % 2 == 0).count(), 8);
        let d = vacuum_irreps(&params(3, 5), None).unwrap();
        let odd: Vec<_> = d.iter().filter(|x| x.p.as_integer().unwrap() % 2 == 1).collect();
        assert_eq!(odd.len(), 10);
        assert!(odd.iter().all(|x| x.dimension == 5));
    }

    #[test]
    fn generic_weights_on_grid() {
        let ap = params(1, 3);
        let grid = default_grid(&ap);
        assert_eq!(grid.len(), 24);
        let d = vacuum_irreps(&ap, Some(&grid)).unwrap();
        assert_eq!(d.len(), 24);
        let half = d.iter().find(|x| x.p == Weight::ratio(1, 2)).unwrap();
        assert_eq!((half.top, half.generic), (2, true));
        assert!(d.windows(2).all(|w| w[0].cmp_key(&w[1]) == Ordering::Less));
    }

    #[test]
    fn casimir_values() {
        let ap = params(1, 2);
        assert!(casimir_eigenvalue(&ap, &Weight::integer(1)).unwrap().as_exact().unwrap().as_rational() == Some(BigRational::from_integer(3.into())));
        let q = crate::algebra::QParam::root_of_unity(1, 2).unwrap();
        let c = casimir_element(&q);
        let rep = module_matrices(&ModuleSpec::vacuum(1, 2, 3, 3).unwrap()).unwrap();
        let v = evaluate_element(&c, &rep).unwrap().scalar_value().unwrap();
        assert_eq!(v, casimir_eigenvalue(&ap, &Weight::integer(3)).unwrap());
    }

    #[test]
    fn descriptor_spectrum() {
        let d = IrrepDescriptor::build(&params(1, 2), Weight::integer(1), 1, Derivation::ClosedForm).unwrap();
        assert_eq!(d.k_spectrum.len(), 2);
        assert_eq!(d.dimension, 2);
        let q = crate::exactnum::CyclotomicField::new(8);
        assert_eq!(d.k_spectrum[1], Scalar::Exact(q.zeta_pow(3)));
        assert_eq!(d, IrrepDescriptor::build(&params(1, 2), Weight::integer(1), 1, Derivation::Scan).unwrap());
    }
}
