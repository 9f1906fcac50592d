//! Admissible parameters, canonicalization, the vacuum-irrep classification,
//! Casimir eigenvalues, intertwiners and central-element checks.

mod central;
mod intertwiner;
mod irreps;

pub use central::{central_checks, coincidence_pairs, casimir_quadruple, CentralReport, CoincidencePair};
pub use intertwiner::{equivalence_claims, find_intertwiner, EquivalenceClaim, IntertwinerCertificate};
pub use irreps::{
    casimir_eigenvalue, closed_form_top, default_grid, generic_top, normalization_window, scan_top,
    vacuum_irreps, Derivation, IrrepDescriptor,
};

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fockrep::{Deformation, FockError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("q = e^(iπ·{m}/(2·{k})) is one of ±1, ±i and is excluded")]
    Excluded { m: i64, k: i64 },
    #[error("(m, k) = ({m}, {k}) is not admissible: need k ≥ 2, 1 ≤ m ≤ k−1, gcd(m, k) = 1")]
    Inadmissible { m: i64, k: i64 },
    #[error(transparent)]
    Fock(#[from] FockError),
}

impl From<crate::exactnum::NumError> for ClassifyError {
    fn from(e: crate::exactnum::NumError) -> Self {
        ClassifyError::Fock(e.into())
    }
}

/// The three parity classes of admissible `(m, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "k-even/m-odd")]
    KEvenMOdd,
    #[serde(rename = "k-odd/m-odd")]
    KOddMOdd,
    #[serde(rename = "k-odd/m-even")]
    KOddMEven,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::KEvenMOdd => "k-even/m-odd",
            Case::KOddMOdd => "k-odd/m-odd",
            Case::KOddMEven => "k-odd/m-even",
        })
    }
}

/// Admissible `q = ζ_{4k}^m`: `k ≥ 2`, `1 ≤ m ≤ k−1`, `gcd(m, k) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AlgebraParams {
    pub m: i64,
    pub k: i64,
    pub case: Case,
}

pub fn is_admissible(m: i64, k: i64) -> bool {
    k >= 2 && 1 <= m && m < k && m.gcd(&k) == 1
}

impl AlgebraParams {
    pub fn new(m: i64, k: i64) -> Result<Self, ClassifyError> {
        if !is_admissible(m, k) {
            return Err(ClassifyError::Inadmissible { m, k });
        }
        let case = match (k % 2 == 0, m % 2 == 0) {
            (true, _) => Case::KEvenMOdd,
            (false, false) => Case::KOddMOdd,
            (false, true) => Case::KOddMEven,
        };
        Ok(AlgebraParams { m, k, case })
    }

    pub fn deformation(&self) -> Deformation {
        Deformation::RootOfUnity { m: self.m, k: self.k }
    }

    /// Every admissible pair with `2 ≤ k ≤ max_k`, ordered by `(k, m)`.
    pub fn all_up_to(max_k: i64) -> Vec<Self> {
        (2..=max_k)
            .flat_map(|k| (1..k).filter_map(move |m| AlgebraParams::new(m, k).ok()))
            .collect()
    }
}

impl fmt::Display for AlgebraParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={}, k={}", self.m, self.k)
    }
}

/// One of the two isomorphisms `pB_q ≅ pB_{q̃}` with `q̃ = −q^ξ`, given by
/// `ã^± = a^{±ξ}`, `K̃ = −ξK`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Xi {
    /// `q ↦ −q`, i.e. `m ↦ m + 2k`.
    #[serde(rename = "+")]
    Plus,
    /// `q ↦ −q⁻¹`, i.e. `m ↦ 2k − m`.
    #[serde(rename = "-")]
    Minus,
}

/// Composite substitution relating generators of the raw and canonical
/// algebras: `a^±_raw = a^{±}_can` (or `a^{∓}_can` when `swap`) and
/// `K_raw = k_sign · K_can`. The map is its own inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMap {
    pub steps: Vec<Xi>,
    pub swap: bool,
    pub k_sign: i8,
}

impl GeneratorMap {
    pub fn identity() -> Self {
        GeneratorMap {
            steps: Vec::new(),
            swap: false,
            k_sign: 1,
        }
    }

    fn push(&mut self, xi: Xi) {
        self.steps.push(xi);
        match xi {
            Xi::Plus => self.k_sign = -self.k_sign,
            Xi::Minus => self.swap = !self.swap,
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.swap && self.k_sign == 1
    }

    /// Raw-parameter matrices from canonical ones: `(A⁺, A⁻, K, K⁻¹)` with
    /// the substitution applied.
    pub fn apply<T: Clone>(&self, a_plus: &T, a_minus: &T, k: &T, k_inv: &T, neg: impl Fn(&T) -> T) -> (T, T, T, T) {
        let (p, m) = if self.swap {
            (a_minus.clone(), a_plus.clone())
        } else {
            (a_plus.clone(), a_minus.clone())
        };
        if self.k_sign < 0 {
            (p, m, neg(k), neg(k_inv))
        } else {
            (p, m, k.clone(), k_inv.clone())
        }
    }
}

impl fmt::Display for GeneratorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, m) = if self.swap { ("a-", "a+") } else { ("a+", "a-") };
        let k = if self.k_sign < 0 { "-K" } else { "K" };
        let k_inv = if self.k_sign < 0 { "-K^-1" } else { "K^-1" };
        write!(f, "a+ -> {p}, a- -> {m}, K -> {k}, K^-1 -> {k_inv}")
    }
}

/// Reduce `e^{iπ m_raw/(2 k_raw)}` to an admissible pair via the `ξ = ±`
/// isomorphisms, returning the composed generator substitution.
pub fn canonicalize(m_raw: i64, k_raw: i64) -> Result<(AlgebraParams, GeneratorMap), ClassifyError> {
    if k_raw < 1 {
        return Err(ClassifyError::Inadmissible { m: m_raw, k: k_raw });
    }
    let g = m_raw.gcd(&k_raw);
    let (mut m, k) = (m_raw / g, k_raw / g);
    if k == 1 {
        return Err(ClassifyError::Excluded { m: m_raw, k: k_raw });
    }
    m = m.rem_euclid(4 * k);
    let mut map = GeneratorMap::identity();
    if m > 2 * k {
        m -= 2 * k;
        map.push(Xi::Plus);
    }
    if m > k {
        m = 2 * k - m;
        map.push(Xi::Minus);
    }
    Ok((AlgebraParams::new(m, k)?, map))
}
