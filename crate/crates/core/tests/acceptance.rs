//! Acceptance criteria. Each test writes one `PASS`/`FAIL` line straight to
//! stdout (bypassing capture) and then asserts.

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use pbq_core::algebra::{casimir_element, normal_order_with, parse_expression, AlgebraElement, Generator, QParam, RewriteStrategy};
use pbq_core::classify::{
    casimir_eigenvalue, casimir_quadruple, central_checks, closed_form_top, default_grid, equivalence_claims,
    find_intertwiner, normalization_window, scan_top, vacuum_irreps, AlgebraParams, Case,
};
use pbq_core::exactnum::Scalar;
use pbq_core::fockrep::{
    evaluate_element, module_matrices, singular_vectors, verify_relations, Deformation, Matrix, RepMatrices, Weight,
};
use pbq_core::unitary::{classify_unitarizable, fixture_four_dim, fixture_two_dim, orthonormal_matrices, reference_table};
use proptest::test_runner::{Config, TestRunner};

const DIGITS: u32 = 64;
const TOL: u32 = 40;

fn report(n: u32, title: &str, pass: bool, detail: &str) {
    let line = format!(
        "acceptance {n:>2} {:<4} {title}{}{detail}\n",
        if pass { "PASS" } else { "FAIL" },
        if detail.is_empty() { "" } else { ": " }
    );
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
}

fn close(a: &Matrix, b: &Matrix) -> bool {
    a.sub(b).is_zero_within(TOL)
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[test]
fn two_dimensional_orthonormal_irreps_match_closed_form() {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut cases = 0;
    for params in AlgebraParams::all_up_to(9).into_iter().filter(|p| p.m % 2 == 1) {
        let start = Instant::now();
        let (p, a, k) = fixture_two_dim(&params, DIGITS).unwrap();
        let rep = orthonormal_matrices(&params, &p, 1, DIGITS).unwrap();
        let ok = close(&rep.a_minus, &a)
            && close(&rep.a_plus, &a.transpose())
            && close(&rep.k, &k)
            && close(&rep.k_inv, &k.adjoint());
        slowest = slowest.max(start.elapsed());
        cases += 1;
        if !ok {
            failures.push(params.to_string());
        }
    }
    let pass = failures.is_empty() && slowest < Duration::from_secs(1);
    report(
        1,
        "2x2 orthonormal matrices, m odd, k <= 9",
        pass,
        &format!("{cases} cases, slowest {slowest:?}, mismatches {failures:?}"),
    );
    assert!(pass);
}

#[test]
fn four_dimensional_orthonormal_irreps_match_closed_form() {
    let mut failures = Vec::new();
    for k in [10, 12, 14] {
        // q = e^{3iπ/2k} is the same number as for the gcd-reduced pair.
        let g = num_integer::gcd(3, k);
        let params = AlgebraParams::new(3 / g, k / g).unwrap();
        let (a, kk) = fixture_four_dim(k, DIGITS);
        let rep = orthonormal_matrices(&params, &int(3 * k - 3), 3, DIGITS).unwrap();
        let exact_transpose = rep.a_plus.entries().zip(rep.a_minus.transpose().entries()).all(|(x, y)| x == y);
        if !(close(&rep.a_minus, &a) && close(&rep.k, &kk) && exact_transpose) {
            failures.push(k);
        }
    }
    let pass = failures.is_empty();
    report(2, "4x4 orthonormal matrices, m = 3, k in {10, 12, 14}", pass, &format!("failing k {failures:?}"));
    assert!(pass);
}

#[test]
fn unitarizable_census_reproduces_published_list() {
    let mut mismatches = Vec::new();
    let mut even_m_nonempty = Vec::new();
    let mut large_m_not_single = Vec::new();
    let mut m3_not_two = Vec::new();
    for params in AlgebraParams::all_up_to(12) {
        let census = classify_unitarizable(&params, None).unwrap();
        let got = census.pairs();
        let expected: Vec<_> = reference_table(&params, None).into_iter().map(|e| (e.p, e.top)).collect();
        if got != expected {
            let extra: Vec<String> = got
                .iter()
                .filter(|x| !expected.contains(x))
                .map(|(p, l)| format!("p={p},L={l}"))
                .collect();
            let missing: Vec<String> = expected
                .iter()
                .filter(|x| !got.contains(x))
                .map(|(p, l)| format!("p={p},L={l}"))
                .collect();
            mismatches.push(format!("({params}) extra {extra:?} missing {missing:?}"));
        }
        if params.m % 2 == 0 && !got.is_empty() {
            even_m_nonempty.push(params.to_string());
        }
        if params.m >= 5 && params.m % 2 == 1 && !(got.len() == 1 && census.modules[0].dimension == 2) {
            large_m_not_single.push(params.to_string());
        }
        if params.m == 3 && params.k >= 10 && params.k % 2 == 0 && got.len() != 2 {
            m3_not_two.push(params.to_string());
        }
    }
    let pass = mismatches.is_empty();
    let detail = format!(
        "{} mismatching algebras; even m empty: {}; odd m >= 5 single 2-dim: {}; m = 3, even k >= 10 two irreps: {}; {}",
        mismatches.len(),
        even_m_nonempty.is_empty(),
        large_m_not_single.is_empty(),
        m3_not_two.is_empty(),
        mismatches.join("; ")
    );
    report(3, "unitarizable census equals the published list, k <= 12", pass, &detail);
    assert!(pass, "{detail}");
}

#[test]
fn closed_form_tops_agree_with_singular_vector_scan() {
    let mut mismatches = Vec::new();
    let mut cases = 0;
    for params in AlgebraParams::all_up_to(9) {
        for p in 1..=normalization_window(&params) {
            cases += 1;
            let closed = closed_form_top(&params, p);
            let scanned = scan_top(&params, &Weight::integer(p)).unwrap();
            if closed != Some(scanned) {
                mismatches.push(format!("({params}, p={p}) closed {closed:?} scan {scanned}"));
            }
        }
    }
    let pass = mismatches.is_empty();
    report(4, "closed-form L equals scanned L, k <= 9", pass, &format!("{cases} weights, mismatches {mismatches:?}"));
    assert!(pass);
}

/// `{a⁺, a⁻}` built as a graded supercommutator in the algebra, evaluated on
/// the module, against `(K − K⁻¹)/(q − q⁻¹)`.
fn graded_anticommutator_holds(rep: &RepMatrices, q: &std::sync::Arc<QParam>) -> bool {
    let ap = AlgebraElement::generator(q, Generator::Aplus);
    let am = AlgebraElement::generator(q, Generator::Aminus);
    let lhs = ap.supercommutator(&am);
    let rhs = AlgebraElement::generator(q, Generator::K)
        .sub(&AlgebraElement::generator(q, Generator::Kinv))
        .scale(&q.inv_q_minus());
    let diff = evaluate_element(&lhs.sub(&rhs), rep).unwrap();
    match diff.zero_scalar() {
        Scalar::Exact(_) => diff.is_zero(),
        Scalar::Approx(_) => diff.is_zero_within(TOL),
    }
}

#[test]
fn defining_relations_hold_on_every_emitted_module() {
    let mut failures = Vec::new();
    let mut exact_cases = 0;
    let mut approx_cases = 0;
    for params in AlgebraParams::all_up_to(9) {
        let q = QParam::root_of_unity(params.m, params.k).unwrap();
        let grid = default_grid(&params);
        for d in vacuum_irreps(&params, Some(&grid)).unwrap() {
            let rep = module_matrices(&d.spec()).unwrap();
            exact_cases += 1;
            if !(verify_relations(&rep).unwrap().all_hold() && graded_anticommutator_holds(&rep, &q)) {
                failures.push(format!("verma ({params}, p={}, L={})", d.p, d.top));
            }
        }
    }
    for params in AlgebraParams::all_up_to(12) {
        let q = QParam::root_of_unity(params.m, params.k).unwrap();
        for m in classify_unitarizable(&params, None).unwrap().modules {
            let rep = orthonormal_matrices(&params, &m.p, m.top, DIGITS).unwrap();
            approx_cases += 1;
            if !(verify_relations(&rep).unwrap().all_hold() && graded_anticommutator_holds(&rep, &q)) {
                failures.push(format!("orthonormal ({params}, p={}, L={})", m.p, m.top));
            }
        }
    }
    let pass = failures.is_empty();
    report(
        5,
        "relations hold exactly (Verma) and to 1e-40 (orthonormal)",
        pass,
        &format!("{exact_cases} exact, {approx_cases} approximate, failures {failures:?}"),
    );
    assert!(pass);
}

#[test]
fn casimir_is_scalar_and_quadruples_are_inequivalent() {
    let mut failures = Vec::new();
    let mut quads = 0;
    for params in AlgebraParams::all_up_to(9) {
        let q = QParam::root_of_unity(params.m, params.k).unwrap();
        let c = casimir_element(&q);
        for d in vacuum_irreps(&params, None).unwrap() {
            let rep = module_matrices(&d.spec()).unwrap();
            let value = evaluate_element(&c, &rep).unwrap().scalar_value();
            if value.as_ref() != Some(&d.casimir) {
                failures.push(format!("casimir ({params}, p={})", d.p));
            }
        }
        if params.case != Case::KEvenMOdd {
            continue;
        }
        for p in (2..=2 * params.k).step_by(2) {
            let four = casimir_quadruple(&params, p).unwrap().unwrap();
            quads += 1;
            let values: Vec<_> = four.iter().map(|s| casimir_eigenvalue(&params, &s.p).unwrap()).collect();
            let mut ok = values.iter().all(|v| *v == values[0]);
            for i in 0..4 {
                for j in i + 1..4 {
                    ok &= find_intertwiner(&four[i], &four[j]).unwrap().is_none();
                }
            }
            if !ok {
                failures.push(format!("quadruple ({params}, p={p})"));
            }
        }
    }
    let pass = failures.is_empty();
    report(6, "Casimir scalar with predicted value; quadruples distinct", pass, &format!("{quads} quadruples, failures {failures:?}"));
    assert!(pass);
}

#[test]
fn asserted_equivalences_have_exact_certificates() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for params in AlgebraParams::all_up_to(7) {
        for c in equivalence_claims(&params).unwrap() {
            cases += 1;
            let ok = find_intertwiner(&c.source, &c.target)
                .unwrap()
                .is_some_and(|x| x.verified && x.exact);
            if !ok {
                failures.push(format!("({params}) {}: {} -> {}", c.name, c.source, c.target));
            }
        }
    }
    let pass = failures.is_empty();
    report(7, "equivalence claims certified exactly, k <= 7", pass, &format!("{cases} claims, failures {failures:?}"));
    assert!(pass);
}

#[test]
fn central_elements_vanish_or_are_scalar() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for params in AlgebraParams::all_up_to(9) {
        for d in vacuum_irreps(&params, None).unwrap() {
            cases += 1;
            if !central_checks(&d).unwrap().all_hold() {
                failures.push(format!("({params}, p={})", d.p));
            }
        }
    }
    let pass = failures.is_empty();
    report(8, "(a±)^4k = 0 and K^2k scalar, k <= 9", pass, &format!("{cases} modules, failures {failures:?}"));
    assert!(pass);
}

#[test]
fn generic_q_has_only_the_vacuum_singular() {
    let def = Deformation::Angle {
        theta: "0.7".into(),
        digits: DIGITS,
    };
    let p = Weight::parse("0.37", DIGITS).unwrap();
    let r = singular_vectors(&def, &p, 200).unwrap();
    let pass = r.indices() == vec![0];
    report(9, "q = e^0.7i, p = 0.37: only n = 0 singular up to 200", pass, &format!("found {:?}", r.indices()));
    assert!(pass);
}

#[test]
fn rewriting_involution_and_parser_properties() {
    let qs: Vec<_> = [(1, 2), (1, 3), (2, 5), (3, 7)]
        .iter()
        .map(|&(m, k)| QParam::root_of_unity(m, k).unwrap())
        .collect();
    let gen = proptest::sample::select(Generator::ALL.to_vec());
    let word = proptest::collection::vec(gen.clone(), 0..=8);
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        ..Config::default()
    });
    let confluence = runner
        .run(&(word.clone(), 0usize..4, proptest::num::u64::ANY), |(w, i, seed)| {
            let q = &qs[i];
            let a = normal_order_with(q, &w, RewriteStrategy::Leftmost);
            let b = normal_order_with(q, &w, RewriteStrategy::Rightmost);
            let c = normal_order_with(q, &w, RewriteStrategy::Random(seed));
            proptest::prop_assert!(a == b && b == c);
            let back = parse_expression(&a.to_string(), Some(q)).unwrap();
            proptest::prop_assert_eq!(back, a);
            Ok(())
        })
        .is_ok();
    let term = (proptest::collection::vec(gen, 0..=4), -3i64..=3, -6i64..=6);
    let elem = proptest::collection::vec(term, 1..=3);
    let build = |q: &std::sync::Arc<QParam>, parts: &[(Vec<Generator>, i64, i64)]| {
        parts.iter().fold(AlgebraElement::zero(q), |acc, (w, c, e)| {
            acc.add(&AlgebraElement::from_word(q, w).scale(&(&q.integer(*c) * &q.q_pow(*e))))
        })
    };
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        ..Config::default()
    });
    let omega = runner
        .run(&(elem.clone(), elem, 0usize..4), |(x, y, i)| {
            let q = &qs[i];
            let (a, b) = (build(q, &x), build(q, &y));
            proptest::prop_assert_eq!(a.omega().omega(), a.clone());
            proptest::prop_assert_eq!(a.mul(&b).omega(), b.omega().mul(&a.omega()));
            for e in [&a, &b, &a.mul(&b)] {
                proptest::prop_assert_eq!(&parse_expression(&e.to_string(), Some(q)).unwrap(), e);
            }
            Ok(())
        })
        .is_ok();
    let pass = confluence && omega;
    report(
        10,
        "rewriting confluence, omega involution/antihomomorphism, parser round trip",
        pass,
        &format!("confluence+round-trip {confluence}, omega {omega}"),
    );
    assert!(pass);
}
