//! Unitarizability with respect to the antiinvolution `(a⁻)† = a⁺`,
//! `K† = K⁻¹`: the normalization ladder, exact sign verdicts, the census of
//! unitarizable vacuum irreps, and orthonormal-basis matrices.
//!
//! With `|p;n) = α(p;n)|p;n⟩` orthonormal and `α(p;0) = 1`,
//!
//! ```text
//! |α(p;n)/α(p;n+1)|² = 2 sin(θ(n+p)) cos(θ(n+1)) / sin 2θ    n even
//! |α(p;n)/α(p;n+1)|² = 2 sin(θ(n+1)) cos(θ(n+p)) / sin 2θ    n odd
//! ```
//!
//! which is the `a⁻` coefficient on `|p;n+1⟩`. A module is unitarizable iff
//! every ratio for `n = 0..L−1` is positive.

mod ortho;

pub use ortho::{fixture_four_dim, fixture_two_dim, orthonormal_matrices, verify_unitarity, UnitarityReport};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{default_grid, vacuum_irreps, AlgebraParams, ClassifyError};
use crate::exactnum::{trig_sign, zero_tolerance_exponent, NumError, RationalAngle, Scalar, TrigKind};
use crate::fockrep::{a_minus_coefficient, FockError, ModuleArith, ModuleSpec, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnitaryError {
    #[error("unitarity needs a real weight, got {0}")]
    ComplexWeight(String),
    #[error("module is {0:?}, not unitarizable")]
    NotUnitarizable(VerdictStatus),
    #[error("|p;{0}> is not singular, so the truncation at L = {1} is not a module")]
    NotAModule(u64, u64),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

impl From<FockError> for UnitaryError {
    fn from(e: FockError) -> Self {
        UnitaryError::Classify(e.into())
    }
}

impl From<NumError> for UnitaryError {
    fn from(e: NumError) -> Self {
        UnitaryError::Classify(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Unitarizable,
    NotUnitarizable,
    /// Some ratio is exactly zero: the rescaling is singular there.
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderRatio {
    pub n: u64,
    /// `|α(p;n)/α(p;n+1)|²` as a real scalar.
    pub value: Scalar,
    pub sign: i8,
    /// The sign came from exact trigonometry rather than a tolerance.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationLadder {
    pub params: AlgebraParams,
    pub p: Weight,
    #[serde(rename = "L")]
    pub top: u64,
    pub ratios: Vec<LadderRatio>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitarityVerdict {
    pub status: VerdictStatus,
    /// Sign of the ratio for each `n = 0..L−1`.
    pub witnesses: Vec<i8>,
    pub first_failure: Option<u64>,
    pub first_zero: Option<u64>,
}

fn real_part(p: &Weight) -> Result<Option<&BigRational>, UnitaryError> {
    match p {
        Weight::Rational(r) => Ok(Some(r)),
        Weight::Approx(a) => {
            if !a.im().is_zero() {
                Err(UnitaryError::ComplexWeight(a.to_string()))
            } else {
                Ok(None)
            }
        }
    }
}

/// Exact sign of the ratio at `n` for rational `p`.
fn exact_sign(params: &AlgebraParams, p: &BigRational, n: u64) -> i8 {
    let theta = BigRational::new(BigInt::from(params.m), BigInt::from(2 * params.k));
    let int = |x: u64| BigRational::from_integer(BigInt::from(x));
    let (sin_arg, cos_arg) = if n.is_multiple_of(2) {
        (int(n) + p, int(n + 1))
    } else {
        (int(n + 1), int(n) + p)
    };
    let s = trig_sign(&RationalAngle::new(&theta * sin_arg), TrigKind::Sin);
    let c = trig_sign(&RationalAngle::new(&theta * cos_arg), TrigKind::Cos);
    let d = trig_sign(&RationalAngle::new(&theta * int(2)), TrigKind::Sin);
    s * c * d
}

/// The ratios `|α(p;n)/α(p;n+1)|²` for `n = 0..L−1`. `p = 0` is accepted.
pub fn unitarity_ratios(params: &AlgebraParams, p: &Weight, top: u64) -> Result<NormalizationLadder, UnitaryError> {
    let rational = real_part(p)?;
    let spec = ModuleSpec::new(params.deformation(), p.clone(), 0, None)?;
    let arith = ModuleArith::for_spec(&spec)?;
    let mut ratios = Vec::with_capacity(top as usize);
    for n in 0..top {
        let (value, _) = a_minus_coefficient(&arith, n + 1)?;
        let (sign, certified) = match rational {
            Some(r) => (exact_sign(params, r, n), true),
            None => {
                let d = arith.digits().unwrap_or(64);
                let v = value.to_approx(d);
                if v.is_zero_within(d / 2) {
                    (0, false)
                } else if v.re().is_negative() {
                    (-1, false)
                } else {
                    (1, false)
                }
            }
        };
        ratios.push(LadderRatio {
            n,
            value,
            sign,
            certified,
        });
    }
    Ok(NormalizationLadder {
        params: *params,
        p: p.clone(),
        top,
        ratios,
    })
}

pub fn is_unitarizable(params: &AlgebraParams, p: &Weight, top: u64) -> Result<UnitarityVerdict, UnitaryError> {
    let ladder = unitarity_ratios(params, p, top)?;
    let witnesses: Vec<i8> = ladder.ratios.iter().map(|r| r.sign).collect();
    let first_failure = witnesses.iter().position(|&s| s < 0).map(|i| i as u64);
    let first_zero = witnesses.iter().position(|&s| s == 0).map(|i| i as u64);
    let status = if first_failure.is_some() {
        VerdictStatus::NotUnitarizable
    } else if first_zero.is_some() {
        VerdictStatus::Boundary
    } else {
        VerdictStatus::Unitarizable
    };
    Ok(UnitarityVerdict {
        status,
        witnesses,
        first_failure,
        first_zero,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitarizableModule {
    #[serde(with = "crate::exactnum::rational_serde")]
    pub p: BigRational,
    #[serde(rename = "L")]
    pub top: u64,
    pub dimension: u64,
    pub verdict: UnitarityVerdict,
}

/// Unitarizable simple vacuum modules of `params` on a weight grid.
/// One-dimensional modules carry no condition at all and are listed apart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitaryCensus {
    pub params: AlgebraParams,
    pub modules: Vec<UnitarizableModule>,
    #[serde(with = "crate::exactnum::rational_serde::vec")]
    pub one_dimensional: Vec<BigRational>,
}

impl UnitaryCensus {
    pub fn pairs(&self) -> Vec<(BigRational, u64)> {
        self.modules.iter().map(|m| (m.p.clone(), m.top)).collect()
    }
}

/// Every unitarizable simple vacuum module over the integer window and the
/// non-integer points of `grid` (default: halves), ordered by `(p, L)`.
pub fn classify_unitarizable(params: &AlgebraParams, grid: Option<&[BigRational]>) -> Result<UnitaryCensus, UnitaryError> {
    let default;
    let grid = match grid {
        Some(g) => g,
        None => {
            default = default_grid(params);
            &default
        }
    };
    let mut modules = Vec::new();
    let mut one_dimensional = Vec::new();
    for d in vacuum_irreps(params, Some(grid))? {
        let p = d.p.as_rational().expect("grid weights are rational").clone();
        if d.top == 0 {
            one_dimensional.push(p);
            continue;
        }
        let verdict = is_unitarizable(params, &d.p, d.top)?;
        if verdict.status == VerdictStatus::Unitarizable {
            modules.push(UnitarizableModule {
                p,
                top: d.top,
                dimension: d.dimension,
                verdict,
            });
        }
    }
    Ok(UnitaryCensus {
        params: *params,
        modules,
        one_dimensional,
    })
}

/// One entry of the published list of unitarizable irreps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceEntry {
    #[serde(with = "crate::exactnum::rational_serde")]
    pub p: BigRational,
    #[serde(rename = "L")]
    pub top: u64,
    /// Row numbers (1 to 6) listing this module.
    pub rows: Vec<u8>,
}

/// The published list restricted to `params` and sampled on `grid`
/// (default: halves); row (1) uses the open range `0 < p < 2`, its `p = 2`
/// endpoint being a boundary case.
pub fn reference_table(params: &AlgebraParams, grid: Option<&[BigRational]>) -> Vec<ReferenceEntry> {
    let (m, k) = (params.m, params.k);
    let default;
    let grid = match grid {
        Some(g) => g,
        None => {
            default = default_grid(params);
            &default
        }
    };
    let int = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut rows: BTreeMap<(BigRational, u64), Vec<u8>> = BTreeMap::new();
    let mut add = |row: u8, p: BigRational, top: i64| rows.entry((p, top as u64)).or_default().push(row);
    if m == 1 && k % 2 == 1 {
        for p in grid.iter().filter(|p| p.is_positive() && **p < int(2)) {
            add(1, p.clone(), k - 1);
        }
        for p in (2..k).step_by(2) {
            add(3, int(p), k - p);
        }
    }
    if m == 1 && k % 2 == 0 {
        for p in (1..k).step_by(2) {
            add(2, int(p), k - p);
        }
    }
    if m % 4 == 1 {
        add(4, int(k - 1), 1);
    }
    if m % 4 == 3 {
        add(5, int(3 * k - 1), 1);
    }
    if m == 3 && k % 2 == 0 && k >= 10 {
        add(6, int(3 * k - 3), 3);
    }
    rows.into_iter()
        .map(|((p, top), rows)| ReferenceEntry { p, top, rows })
        .collect()
}

/// Tolerance exponent used for approximate unitarity checks at `digits`.
pub fn unitarity_tolerance(digits: u32) -> u32 {
    zero_tolerance_exponent(digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ap(m: i64, k: i64) -> AlgebraParams {
        AlgebraParams::new(m, k).unwrap()
    }

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn ladder_examples() {
        let l = unitarity_ratios(&ap(1, 3), &Weight::integer(1), 2).unwrap();
        for x in &l.ratios {
            assert!(x.value.as_exact().unwrap().is_one(), "{x:?}");
            assert_eq!(x.sign, 1);
        }
        let l = unitarity_ratios(&ap(1, 2), &Weight::integer(1), 1).unwrap();
        assert!(l.ratios[0].value.as_exact().unwrap().is_one());
    }

    #[test]
    fn signs_match_values() {
        for a in AlgebraParams::all_up_to(7) {
            for p in [r(1, 2), r(3, 1), r(7, 3), r(0, 1)] {
                let l = unitarity_ratios(&a, &Weight::Rational(p.clone()), 2 * a.k as u64).unwrap();
                for x in l.ratios {
                    let v = x.value.to_approx(30);
                    assert!(v.im_f64().abs() < 1e-20);
                    let s = if v.is_zero_within(20) { 0 } else if v.re_f64() < 0.0 { -1 } else { 1 };
                    assert_eq!(s, x.sign, "{a} p={p} n={}", x.n);
                }
            }
        }
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(is_unitarizable(&ap(1, 5), &Weight::ratio(3, 2), 4).unwrap().status, VerdictStatus::Unitarizable);
        assert_eq!(is_unitarizable(&ap(1, 4), &Weight::integer(3), 1).unwrap().status, VerdictStatus::Unitarizable);
        let b = is_unitarizable(&ap(1, 3), &Weight::integer(2), 2).unwrap();
        assert_eq!((b.status, b.first_zero), (VerdictStatus::Boundary, Some(1)));
        // p = 0 is accepted; |0;1⟩ is singular there, so the k-dim module is a boundary case
        let z = is_unitarizable(&ap(1, 3), &Weight::integer(0), 2).unwrap();
        assert_eq!((z.status, z.first_zero), (VerdictStatus::Boundary, Some(0)));
    }

    #[test]
    fn even_m_small_k_has_none() {
        let c = classify_unitarizable(&ap(2, 3), Some(&[])).unwrap();
        assert!(c.modules.is_empty());
    }

    #[test]
    fn census_examples() {
        let c = classify_unitarizable(&ap(5, 7), None).unwrap();
        assert_eq!(c.pairs(), vec![(r(6, 1), 1)]);
        let c = classify_unitarizable(&ap(3, 10), None).unwrap();
        assert_eq!(c.pairs(), vec![(r(27, 1), 3), (r(29, 1), 1)]);
        let c = classify_unitarizable(&ap(1, 3), None).unwrap();
        let expect: Vec<_> = reference_table(&ap(1, 3), None).into_iter().map(|e| (e.p, e.top)).collect();
        assert_eq!(c.pairs(), expect);
    }

    #[test]
    fn reference_rows() {
        let t = reference_table(&ap(1, 4), None);
        assert_eq!(t.len(), 2);
        assert_eq!(t[1].rows, vec![2, 4]);
        assert_eq!(reference_table(&ap(3, 10), None).len(), 2);
        assert!(reference_table(&ap(2, 5), None).is_empty());
    }

    #[test]
    fn complex_weight_refused() {
        let w = Weight::Approx(crate::exactnum::ApproxComplex::parse("0.5", "0.25", 32).unwrap());
        assert!(matches!(unitarity_ratios(&ap(1, 3), &w, 2), Err(UnitaryError::ComplexWeight(_))));
    }
}
