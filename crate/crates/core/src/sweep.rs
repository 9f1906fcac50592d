//! Sweeps over admissible `(m, k)`: an execution switch (rayon or
//! sequential) and the per-algebra invariant suite.

use serde::{Deserialize, Serialize};

use crate::algebra::{casimir_element, QParam};
use crate::classify::{
    casimir_quadruple, central_checks, closed_form_top, coincidence_pairs, equivalence_claims, find_intertwiner,
    normalization_window, scan_top, vacuum_irreps, AlgebraParams, Case, ClassifyError,
};
use crate::fockrep::{evaluate_element, module_matrices, verify_relations, Weight};
use crate::unitary::{classify_unitarizable, reference_table, UnitaryError};

/// How a sweep runs its independent jobs. Results keep input order either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Apply `f` to every item, in parallel when asked and compiled in.
pub fn map_jobs<I, T, F>(items: &[I], exec: Execution, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &str) -> Self {
        CheckOutcome {
            name: name.to_string(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub params: AlgebraParams,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_TOPS: &str = "closed-form tops match the singular-vector scan";
pub const CHECK_RELATIONS: &str = "defining relations on every simple vacuum module";
pub const CHECK_CASIMIR: &str = "Casimir acts as the predicted scalar";
pub const CHECK_CENTRAL: &str = "(a±)^4k vanish and K^2k is scalar";
pub const CHECK_CLAIMS: &str = "asserted equivalences carry verified intertwiners";
pub const CHECK_PAIRS: &str = "equal-dimension pairs share the Casimir but are inequivalent";
pub const CHECK_QUADRUPLES: &str = "Casimir quadruples are pairwise inequivalent";
pub const CHECK_DISTINCT: &str = "vacuum irreps are pairwise inequivalent";
pub const CHECK_UNITARY: &str = "unitarizable census matches the published list";

/// Every check of the suite for one algebra.
pub fn verify_algebra(params: &AlgebraParams) -> Result<VerificationReport, UnitaryError> {
    let irreps = vacuum_irreps(params, None)?;
    let q = QParam::root_of_unity(params.m, params.k)?;
    let casimir = casimir_element(&q);

    let mut tops = CheckOutcome::new(CHECK_TOPS);
    for p in 1..=normalization_window(params) {
        let closed = closed_form_top(params, p);
        let scanned = scan_top(params, &Weight::integer(p))?;
        tops.record(closed == Some(scanned), || format!("p={p}: closed {closed:?}, scan {scanned}"));
    }

    let mut relations = CheckOutcome::new(CHECK_RELATIONS);
    let mut cas = CheckOutcome::new(CHECK_CASIMIR);
    let mut central = CheckOutcome::new(CHECK_CENTRAL);
    for d in &irreps {
        let rep = module_matrices(&d.spec())?;
        let ok = verify_relations(&rep)?.all_hold();
        relations.record(ok, || format!("p={} L={}", d.p, d.top));
        let value = evaluate_element(&casimir, &rep)?.scalar_value();
        cas.record(value.as_ref() == Some(&d.casimir), || format!("p={} L={}", d.p, d.top));
        central.record(central_checks(d)?.all_hold(), || format!("p={} L={}", d.p, d.top));
    }

    let mut claims = CheckOutcome::new(CHECK_CLAIMS);
    for c in equivalence_claims(params)? {
        let ok = find_intertwiner(&c.source, &c.target)?.is_some_and(|x| x.verified && x.exact);
        claims.record(ok, || format!("{}: {} vs {}", c.name, c.source, c.target));
    }

    let mut pairs = CheckOutcome::new(CHECK_PAIRS);
    for pair in coincidence_pairs(params)? {
        let c1 = crate::classify::casimir_eigenvalue(params, &pair.first.p)?;
        let c2 = crate::classify::casimir_eigenvalue(params, &pair.second.p)?;
        let ok = c1 == c2 && find_intertwiner(&pair.first, &pair.second)?.is_none();
        pairs.record(ok, || format!("{}: p={} vs p={}", pair.family, pair.first.p, pair.second.p));
    }

    let mut quads = CheckOutcome::new(CHECK_QUADRUPLES);
    if params.case == Case::KEvenMOdd {
        for p in (2..=2 * params.k).step_by(2) {
            let Some(four) = casimir_quadruple(params, p)? else { continue };
            let values = four
                .iter()
                .map(|s| crate::classify::casimir_eigenvalue(params, &s.p))
                .collect::<Result<Vec<_>, ClassifyError>>()?;
            let mut ok = values.iter().all(|v| *v == values[0]);
            for i in 0..4 {
                for j in i + 1..4 {
                    ok &= find_intertwiner(&four[i], &four[j])?.is_none();
                }
            }
            quads.record(ok, || format!("p={p}"));
        }
    }

    let mut distinct = CheckOutcome::new(CHECK_DISTINCT);
    let specs: Vec<_> = irreps.iter().map(|d| d.spec()).collect();
    for i in 0..specs.len() {
        for j in i + 1..specs.len() {
            if specs[i].dimension() != specs[j].dimension() {
                continue;
            }
            let ok = find_intertwiner(&specs[i], &specs[j])?.is_none();
            distinct.record(ok, || format!("p={} and p={}", specs[i].p, specs[j].p));
        }
    }

    let mut unitary = CheckOutcome::new(CHECK_UNITARY);
    let census = classify_unitarizable(params, None)?;
    let expected: Vec<_> = reference_table(params, None).into_iter().map(|e| (e.p, e.top)).collect();
    let got = census.pairs();
    unitary.record(got == expected, || {
        let show = |v: &[(num_rational::BigRational, u64)]| {
            v.iter().map(|(p, l)| format!("(p={p},L={l})")).collect::<Vec<_>>().join(" ")
        };
        let extra: Vec<_> = got.iter().filter(|x| !expected.contains(x)).cloned().collect();
        let missing: Vec<_> = expected.iter().filter(|x| !got.contains(x)).cloned().collect();
        format!("extra [{}] missing [{}]", show(&extra), show(&missing))
    });

    Ok(VerificationReport {
        params: *params,
        checks: vec![tops, relations, cas, central, claims, pairs, quads, distinct, unitary],
    })
}

/// Run the suite for every admissible `(m, k)` with `k ≤ max_k`.
pub fn verify_all(max_k: i64, exec: Execution) -> Vec<Result<VerificationReport, UnitaryError>> {
    map_jobs(&AlgebraParams::all_up_to(max_k), exec, verify_algebra)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_are_preserved() {
        let v: Vec<i64> = (0..100).collect();
        let a = map_jobs(&v, Execution::Parallel, |x| x * x);
        let b = map_jobs(&v, Execution::Sequential, |x| x * x);
        assert_eq!(a, b);
    }

    #[test]
    fn suite_on_a_small_algebra() {
        let r = verify_algebra(&AlgebraParams::new(1, 2).unwrap()).unwrap();
        for c in &r.checks {
            assert!(c.passed(), "{}: {:?}", c.name, c.failures);
        }
        assert!(r.check(CHECK_CLAIMS).unwrap().cases > 0);
    }

    #[test]
    fn census_mismatch_is_reported() {
        let r = verify_algebra(&AlgebraParams::new(2, 3).unwrap()).unwrap();
        assert!(!r.check(CHECK_UNITARY).unwrap().passed());
        assert!(r.check(CHECK_TOPS).unwrap().passed());
    }
}
