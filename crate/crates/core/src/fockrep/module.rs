//! Basis action, singular vectors, matrices and quotients.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BasisKind, Deformation, FockError, Matrix, ModuleArith, ModuleSpec, RepMatrices, Weight};
use crate::algebra::Generator;
use crate::exactnum::Scalar;

/// Result of a generator acting on a basis vector.
#[derive(Debug, Clone, PartialEq)]
pub enum Action {
    Annihilated,
    To { coeff: Scalar, target: u64 },
}

/// The factor of an `a⁻` coefficient responsible for a zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VanishingFactor {
    /// `[n]`
    #[serde(rename = "[n]")]
    Bracket,
    /// `{n+p−1}`
    #[serde(rename = "{n+p-1}")]
    ShiftedBrace,
    /// `[n+p−1]`
    #[serde(rename = "[n+p-1]")]
    ShiftedBracket,
    /// `{n}`
    #[serde(rename = "{n}")]
    Brace,
}

impl fmt::Display for VanishingFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VanishingFactor::Bracket => "[n]",
            VanishingFactor::ShiftedBrace => "{n+p-1}",
            VanishingFactor::ShiftedBracket => "[n+p-1]",
            VanishingFactor::Brace => "{n}",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularVector {
    pub n: u64,
    pub factors: Vec<VanishingFactor>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularVectorReport {
    pub n_max: u64,
    pub entries: Vec<SingularVector>,
    /// Zeros were declared by a tolerance test rather than exactly.
    pub tolerance_based: bool,
}

impl SingularVectorReport {
    pub fn indices(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.n).collect()
    }

    /// First singular index strictly above `n`.
    pub fn first_above(&self, n: u64) -> Option<u64> {
        self.entries.iter().map(|e| e.n).find(|&i| i > n)
    }
}

/// Tolerance exponent for declaring an approximate coefficient zero.
fn singular_tolerance(arith: &ModuleArith) -> u32 {
    arith.digits().map_or(0, |d| d / 2)
}

fn vanishes(s: &Scalar, tol: u32) -> bool {
    match s {
        Scalar::Exact(x) => x.is_zero(),
        Scalar::Approx(_) => s.is_zero_within(tol),
    }
}

/// The `a⁻` coefficient on `|p;n⟩` together with its two factors.
pub fn a_minus_coefficient(
    arith: &ModuleArith,
    n: u64,
) -> Result<(Scalar, [(VanishingFactor, Scalar); 2]), FockError> {
    let ni = n as i64;
    let factors = if n.is_multiple_of(2) {
        [
            (VanishingFactor::Bracket, arith.bracket(ni, 0)?),
            (VanishingFactor::ShiftedBrace, arith.brace(ni - 1, 1)?),
        ]
    } else {
        [
            (VanishingFactor::ShiftedBracket, arith.bracket(ni - 1, 1)?),
            (VanishingFactor::Brace, arith.brace(ni, 0)?),
        ]
    };
    let c = &factors[0].1 * &factors[1].1;
    Ok((c, factors))
}

/// Action of one generator on `|p;n⟩` inside the module `spec`.
pub fn verma_action(spec: &ModuleSpec, g: Generator, n: u64) -> Result<Action, FockError> {
    if !spec.contains(n) {
        return Err(spec.range_error(n));
    }
    let arith = ModuleArith::for_spec(spec)?;
    verma_action_with(&arith, spec, g, n)
}

pub(crate) fn verma_action_with(
    arith: &ModuleArith,
    spec: &ModuleSpec,
    g: Generator,
    n: u64,
) -> Result<Action, FockError> {
    let ni = n as i64;
    Ok(match g {
        Generator::K => Action::To {
            coeff: arith.q_shift(2 * ni, 1)?,
            target: n,
        },
        Generator::Kinv => Action::To {
            coeff: arith.q_shift(-2 * ni, -1)?,
            target: n,
        },
        Generator::Aplus => {
            if spec.n_hi == Some(n) {
                Action::Annihilated
            } else {
                Action::To {
                    coeff: arith.one(),
                    target: n + 1,
                }
            }
        }
        Generator::Aminus => {
            let (c, _) = a_minus_coefficient(arith, n)?;
            if n == spec.n_lo {
                if vanishes(&c, singular_tolerance(arith)) {
                    Action::Annihilated
                } else {
                    return Err(FockError::NotInvariant { n });
                }
            } else {
                Action::To { coeff: c, target: n - 1 }
            }
        }
    })
}

/// Indices `n ≤ n_max` with `a⁻|p;n⟩ = 0`, with the vanishing factors. Exact
/// for rational weights at roots of unity; otherwise a `10^{−P/2}` test.
pub fn singular_vectors(deformation: &Deformation, p: &Weight, n_max: u64) -> Result<SingularVectorReport, FockError> {
    let spec = ModuleSpec::new(deformation.clone(), p.clone(), 0, None)?;
    let arith = ModuleArith::for_spec(&spec)?;
    let tol = singular_tolerance(&arith);
    let mut entries = Vec::new();
    for n in 0..=n_max {
        let (_, factors) = a_minus_coefficient(&arith, n)?;
        let zero: Vec<VanishingFactor> = factors
            .iter()
            .filter(|(_, v)| vanishes(v, tol))
            .map(|(f, _)| *f)
            .collect();
        if !zero.is_empty() {
            entries.push(SingularVector { n, factors: zero });
        }
    }
    Ok(SingularVectorReport {
        n_max,
        entries,
        tolerance_based: !arith.is_exact(),
    })
}

/// Matrices of `a⁺`, `a⁻`, `K`, `K⁻¹` in the basis `|p;n_lo⟩ … |p;n_hi⟩`,
/// with `a⁺|p;n_hi⟩ = 0`.
pub fn module_matrices(spec: &ModuleSpec) -> Result<RepMatrices, FockError> {
    let hi = spec.n_hi.ok_or(FockError::Infinite)?;
    let arith = ModuleArith::for_spec(spec)?;
    let labels: Vec<u64> = (spec.n_lo..=hi).collect();
    let d = labels.len();
    let zero = arith.zero();
    let mut a_plus = Matrix::zeros(d, d, &zero);
    let mut a_minus = Matrix::zeros(d, d, &zero);
    let mut kd = Vec::with_capacity(d);
    let mut kid = Vec::with_capacity(d);
    for (col, &n) in labels.iter().enumerate() {
        for g in Generator::ALL {
            if let Action::To { coeff, target } = verma_action_with(&arith, spec, g, n)? {
                let row = (target - spec.n_lo) as usize;
                match g {
                    Generator::Aplus => a_plus.set(row, col, coeff),
                    Generator::Aminus => a_minus.set(row, col, coeff),
                    Generator::K => kd.push(coeff),
                    Generator::Kinv => kid.push(coeff),
                }
            }
        }
    }
    Ok(RepMatrices {
        spec: spec.clone(),
        basis_kind: BasisKind::Verma,
        basis_labels: labels,
        a_plus,
        a_minus,
        k: Matrix::diagonal(kd, &zero),
        k_inv: Matrix::diagonal(kid, &zero),
    })
}

/// Keep `|p;n_lo⟩ … |p;cut−1⟩`, i.e. factor out the submodule generated by
/// the singular vector `|p;cut⟩`.
pub fn quotient_module(spec: &ModuleSpec, cut: u64) -> Result<ModuleSpec, FockError> {
    let hi = spec.n_hi.ok_or(FockError::Infinite)?;
    if cut <= spec.n_lo || cut > hi + 1 {
        return Err(FockError::InvalidQuotient {
            cut,
            reason: format!("must lie in {}..={}", spec.n_lo + 1, hi + 1),
        });
    }
    if cut == hi + 1 {
        return Ok(spec.clone());
    }
    let arith = ModuleArith::for_spec(spec)?;
    let (c, _) = a_minus_coefficient(&arith, cut)?;
    if !vanishes(&c, singular_tolerance(&arith)) {
        return Err(FockError::InvalidQuotient {
            cut,
            reason: format!("|p;{cut}⟩ is not singular"),
        });
    }
    spec.with_range(spec.n_lo, Some(cut - 1))
}

/// `true` when no basis vector strictly above `n_lo` is singular.
pub fn is_irreducible(spec: &ModuleSpec) -> Result<bool, FockError> {
    let hi = spec.n_hi.ok_or(FockError::Infinite)?;
    let arith = ModuleArith::for_spec(spec)?;
    let tol = singular_tolerance(&arith);
    for n in spec.n_lo + 1..=hi {
        let (c, _) = a_minus_coefficient(&arith, n)?;
        if vanishes(&c, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}
