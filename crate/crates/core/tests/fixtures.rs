use std::path::PathBuf;

use num_rational::BigRational;
use pbq_core::classify::AlgebraParams;
use pbq_core::fockrep::{module_matrices, verify_relations, ModuleSpec, RepMatrices};
use pbq_core::unitary::{orthonormal_matrices, verify_unitarity};

fn load(name: &str) -> serde_json::Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn check(name: &str, m: i64, k: i64, p: i64, top: u64) {
    let golden = load(name);
    let live = orthonormal_matrices(&AlgebraParams::new(m, k).unwrap(), &BigRational::from_integer(p.into()), top, 64)
        .unwrap();
    assert_eq!(live.to_json(None), golden, "{name} drifted");
    let parsed = RepMatrices::from_json(&golden).unwrap();
    for (a, b) in [
        (&parsed.a_plus, &live.a_plus),
        (&parsed.a_minus, &live.a_minus),
        (&parsed.k, &live.k),
        (&parsed.k_inv, &live.k_inv),
    ] {
        assert!(a.sub(b).is_zero_within(60));
    }
    assert!(verify_unitarity(&parsed, 64).unwrap().all_hold());
}

#[test]
fn two_dimensional_golden() {
    check("two_dim_m1_k2.json", 1, 2, 1, 1);
}

#[test]
fn four_dimensional_golden() {
    check("four_dim_m3_k10.json", 3, 10, 27, 3);
}

#[test]
fn exact_matrices_round_trip() {
    let rep = module_matrices(&ModuleSpec::vacuum(1, 3, 2, 1).unwrap()).unwrap();
    let back = RepMatrices::from_json(&rep.to_json(Some(32))).unwrap();
    assert!(back.a_minus.sub(&rep.a_minus).is_zero());
    assert!(back.k.sub(&rep.k).is_zero());
    assert!(verify_relations(&back).unwrap().all_hold());
}
