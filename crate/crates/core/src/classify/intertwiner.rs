//! Equivalence of finite modules via the canonical shift map.
//!
//! Lemma. Let `V = W(|p;a⟩, |p;b⟩)` and `V' = W(|p';a'⟩, |p';b'⟩)` be modules
//! of equal dimension whose `a⁻` has nonzero coefficients on every basis
//! vector above the lower end of `V'` (in particular when `V'` is simple).
//! Then every intertwiner `φ: V → V'` is a scalar multiple of the shift map
//! `|p;a+i⟩ ↦ |p';a'+i⟩`.
//!
//! Proof. `V` is generated by `|p;a⟩` under `a⁺`, so `φ` is fixed by
//! `φ|p;a⟩`. That vector is killed by `a⁻`, and on `V'` the kernel of `a⁻` is
//! spanned by `|p';a'⟩` when the coefficients above `a'` are nonzero. Hence
//! `φ|p;a⟩ = c|p';a'⟩` and `φ|p;a+i⟩ = c (a⁺)^i |p';a'⟩ = c|p';a'+i⟩`.
//!
//! The shift map is an intertwiner iff the `K` eigenvalues and the `a⁻`
//! coefficients agree position by position, which is what
//! [`find_intertwiner`] compares, exactly for rational weights.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{AlgebraParams, Case, ClassifyError};
use crate::exactnum::{zero_tolerance_exponent, Scalar};
use crate::fockrep::{a_minus_coefficient, FockError, ModuleArith, ModuleSpec, Weight};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntertwinerCertificate {
    pub source: ModuleSpec,
    pub target: ModuleSpec,
    /// `φ|p;n⟩ = |p';n + shift⟩`.
    pub shift: i64,
    /// `p' − p` when both weights are rational.
    pub weight_shift: Option<String>,
    /// Every comparison was exact.
    pub exact: bool,
    pub verified: bool,
}

fn same(a: &Scalar, b: &Scalar) -> bool {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => x == y,
        _ => {
            let d = a.digits().or(b.digits()).unwrap_or(64);
            a.to_approx(d).close_to(&b.to_approx(d), zero_tolerance_exponent(d))
        }
    }
}

fn lower_end_ok(arith: &ModuleArith, spec: &ModuleSpec) -> Result<(), FockError> {
    let (c, _) = a_minus_coefficient(arith, spec.n_lo)?;
    let zero = match &c {
        Scalar::Exact(x) => x.is_zero(),
        Scalar::Approx(_) => c.is_zero_within(arith.digits().unwrap_or(64) / 2),
    };
    if zero {
        Ok(())
    } else {
        Err(FockError::NotInvariant { n: spec.n_lo })
    }
}

/// Test the shift map between two finite modules. `Ok(None)` when the
/// dimensions differ, the deformations differ, or some action disagrees.
pub fn find_intertwiner(source: &ModuleSpec, target: &ModuleSpec) -> Result<Option<IntertwinerCertificate>, ClassifyError> {
    let (d1, d2) = (
        source.dimension().ok_or(FockError::Infinite)?,
        target.dimension().ok_or(FockError::Infinite)?,
    );
    if d1 != d2 || source.deformation != target.deformation {
        return Ok(None);
    }
    let (s, t) = (ModuleArith::for_spec(source)?, ModuleArith::for_spec(target)?);
    lower_end_ok(&s, source)?;
    lower_end_ok(&t, target)?;
    for i in 0..d1 {
        let (n, n2) = ((source.n_lo + i) as i64, (target.n_lo + i) as i64);
        if !same(&s.q_shift(2 * n, 1)?, &t.q_shift(2 * n2, 1)?) {
            return Ok(None);
        }
        if i > 0 && !same(&a_minus_coefficient(&s, n as u64)?.0, &a_minus_coefficient(&t, n2 as u64)?.0) {
            return Ok(None);
        }
    }
    let weight_shift = match (&source.p, &target.p) {
        (Weight::Rational(a), Weight::Rational(b)) => Some((b - a).to_string()),
        _ => None,
    };
    Ok(Some(IntertwinerCertificate {
        source: source.clone(),
        target: target.clone(),
        shift: target.n_lo as i64 - source.n_lo as i64,
        weight_shift,
        exact: s.is_exact() && t.is_exact(),
        verified: true,
    }))
}

/// An asserted equivalence between two finite modules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceClaim {
    pub name: &'static str,
    pub source: ModuleSpec,
    pub target: ModuleSpec,
}

/// Sample non-integer and integer weights for the families that hold for
/// every `p`.
fn sample_weights() -> Vec<BigRational> {
    [(1, 3), (1, 2), (5, 2), (2, 1), (7, 1)]
        .iter()
        .map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
        .collect()
}

/// Every equivalence asserted by the classification for `params`.
pub fn equivalence_claims(params: &AlgebraParams) -> Result<Vec<EquivalenceClaim>, ClassifyError> {
    let (m, k) = (params.m, params.k);
    let mut out = Vec::new();
    let mut push = |name: &'static str, p: BigRational, lo: i64, hi: i64, p2: BigRational, lo2: i64, hi2: i64| -> Result<(), ClassifyError> {
        out.push(EquivalenceClaim {
            name,
            source: ModuleSpec::exact(m, k, p, lo as u64, hi as u64)?,
            target: ModuleSpec::exact(m, k, p2, lo2 as u64, hi2 as u64)?,
        });
        Ok(())
    };
    let int = |x: i64| BigRational::from_integer(BigInt::from(x));

    // W(|p;0⟩,|p;2k−1⟩) ≅ W(|p+4ks;2kN⟩,|p+4ks;2kN+2k−1⟩)
    for p in sample_weights() {
        for (s, n) in [(0, 1), (1, 1), (1, 2), (2, 1)] {
            let p2 = &p + int(4 * k * s);
            push("vacuum periodicity", p.clone(), 0, 2 * k - 1, p2, 2 * k * n, 2 * k * n + 2 * k - 1)?;
        }
    }

    match params.case {
        Case::KEvenMOdd => {
            for p in (2..=2 * k).step_by(2) {
                let q = 4 * k - p + 2;
                push("even p, upper block below 2k", int(p), 2 * k - p + 1, 2 * k - 1, int(q), 0, 4 * k - q)?;
            }
            for p in (2 * k + 2..=4 * k).step_by(2) {
                let q = 4 * k - p + 2;
                push("even p, upper block above 2k", int(p), 4 * k - p + 1, 2 * k - 1, int(q), 0, 2 * k - q)?;
            }
            for p in (1..k).step_by(2) {
                let q = 2 * k - p + 2;
                push("odd p below k", int(p), k - p + 1, 2 * k - 1, int(q), 0, 3 * k - q)?;
            }
            for p in (k + 3..=2 * k + 1).step_by(2) {
                let q = 2 * k - p + 2;
                push("odd p in (k+1, 2k+1]", int(p), 3 * k - p + 1, 2 * k - 1, int(q), 0, k - q)?;
            }
            for p in (2 * k + 3..3 * k).step_by(2) {
                let q = 6 * k - p + 2;
                push("odd p in (2k+1, 3k)", int(p), 3 * k - p + 1, 2 * k - 1, int(q), 0, 5 * k - q)?;
            }
            for p in (3 * k + 3..4 * k).step_by(2) {
                let q = 6 * k - p + 2;
                push("odd p in (3k+1, 4k)", int(p), 5 * k - p + 1, 2 * k - 1, int(q), 0, 3 * k - q)?;
            }
        }
        Case::KOddMOdd => {
            for p in sample_weights() {
                let p2 = &p + int(2 * k);
                push("half-period vacuum to upper block", p.clone(), 0, k - 1, p2.clone(), k, 2 * k - 1)?;
                push("half-period vacuum to upper block, reversed", p2, 0, k - 1, p, k, 2 * k - 1)?;
            }
            for p in (2..k).step_by(2) {
                let q = 2 * k - p + 2;
                push("even p below k", int(p), k - p + 1, k - 1, int(q), 0, 2 * k - q)?;
            }
            for p in (k + 3..=2 * k).step_by(2) {
                let q = 4 * k - p + 2;
                push("even p in (k+1, 2k]", int(p), 2 * k - p + 1, k - 1, int(q), 0, 3 * k - q)?;
            }
            for p in (2 * k + 2..3 * k).step_by(2) {
                let q = 6 * k - p + 2;
                push("even p in (2k, 3k)", int(p), 3 * k - p + 1, k - 1, int(q), 0, 4 * k - q)?;
            }
            for p in (3 * k + 3..=4 * k).step_by(2) {
                let q = 4 * k - p + 2;
                push("even p in (3k+1, 4k]", int(p), 4 * k - p + 1, k - 1, int(q), 0, k - q)?;
            }
        }
        Case::KOddMEven => {
            for p in sample_weights() {
                push("weight shift by 2k", p.clone(), 0, 2 * k - 1, &p + int(2 * k), 0, 2 * k - 1)?;
                if m % 4 == 0 {
                    push("weight shift by k", p.clone(), 0, 2 * k - 1, &p + int(k), 0, 2 * k - 1)?;
                }
            }
            push("p = 1 upper half", int(1), k, 2 * k - 1, int(1), 0, k - 1)?;
            if m % 4 == 2 {
                for p in (3..=k).step_by(2) {
                    let q = 2 * k - p + 2;
                    push("odd p up to k", int(p), k - p + 1, 2 * k - 1, int(q), 0, 3 * k - q)?;
                }
                for p in (k + 2..2 * k).step_by(2) {
                    let q = 2 * k - p + 2;
                    push("odd p above k", int(p), 3 * k - p + 1, 2 * k - 1, int(q), 0, k - q)?;
                }
            } else {
                for p in (3..=k).step_by(2) {
                    let q = k - p + 2;
                    push("odd p up to k, quarter shift", int(p), k - p + 1, 2 * k - 1, int(q), 0, 2 * k - q)?;
                }
            }
            for p in (2..=2 * k).step_by(2) {
                let q = 2 * k - p + 2;
                push("even p upper block", int(p), 2 * k - p + 1, 2 * k - 1, int(q), 0, 2 * k - q)?;
            }
        }
    }
    Ok(out)
}
