//! Polynomials frozen from an independent enumeration of classical Dyck paths
//! (`tests/golden/gen_classical.py`). With all entries equal to 1 the vector
//! statistics reduce to the classical area and bounce.

use qtcatalan::catalan::{catalan_poly3, catalan_poly_k4, qt_vars};
use qtcatalan::dyck::KVec3;
use qtcatalan::polynomial::{parse_poly, SparsePoly};

fn golden(name: &str) -> SparsePoly {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    SparsePoly::from_json(&text).unwrap()
}

#[test]
fn c111_matches_classical_n3() {
    let want = golden("c111.json");
    assert_eq!(catalan_poly3(KVec3::new(1, 1, 1)), want);
    let written = parse_poly(&qt_vars(), "q^3 + q^2*t + q*t^2 + q*t + t^3").unwrap();
    assert_eq!(want, written);
}

#[test]
fn c1111_matches_classical_n4() {
    let want = golden("c1111.json");
    assert_eq!(catalan_poly_k4(1), want);
    assert_eq!(want.len(), 14);
    assert_eq!(want.eval_all_ones().unwrap(), 14);
}

#[test]
fn golden_json_round_trips() {
    let p = golden("c111.json");
    assert_eq!(SparsePoly::from_json(&p.to_json()).unwrap(), p);
}
