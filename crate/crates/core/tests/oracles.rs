mod common;

use common::{bspdf_comparisons, gaussian_entropy, mixture_entropy, tspdf_comparisons, Comparison};

const TOL: f64 = 1e-8;

fn assert_close(rows: &[Comparison]) {
    for c in rows {
        assert!(c.diff() <= TOL, "{c:?}: diff {:e}", c.diff());
    }
}

#[test]
fn bspdf_terms_match_trapezoid_oracle() {
    let rows = bspdf_comparisons(20, 20);
    assert!(rows.len() >= 60);
    assert_close(&rows);
}

#[test]
fn tspdf_terms_match_trapezoid_oracle() {
    let rows = tspdf_comparisons(21, 20);
    assert_eq!(rows.len(), 60);
    assert_close(&rows);
}

#[test]
fn oracle_reproduces_gaussian_entropy() {
    let e = mixture_entropy(&[0.3, 0.7], &[2.0, 2.0]);
    assert!((e - gaussian_entropy(2.0)).abs() < 1e-12);
}
