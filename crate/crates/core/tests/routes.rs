//! Zero-free formulas against truncated sums over 10⁵ zeros.
mod common;

use num_complex::Complex64;
use zosc_core::explicit::{rho_sum, HKind};
use zosc_core::series::{h_series, tail_bound};
use zosc_core::Constants;

#[test]
fn closed_forms_match_zero_sums() {
    let z = common::zeros();
    let t = common::tables(1000);
    let c = Constants::get();
    let xs = common::log_points(1.01, 1000.0, 60);
    assert!(tail_bound(z.max_gamma()) <= 1.5e-4);
    for kind in [HKind::H, HKind::H1, HKind::Hl(0.3), HKind::Hhalf] {
        let mut worst: f64 = 0.0;
        for &x in &xs {
            let exact = kind.eval(&t, c, x).unwrap().value;
            let s = h_series(z, kind.series_kind(), x, z.len()).unwrap();
            let d = (exact - s.value).abs();
            assert!(d <= s.tail_bound + 1e-9, "{kind:?} X = {x}: {d} > {}", s.tail_bound);
            worst = worst.max(d);
        }
        // The analytic tail bound is far from tight.
        assert!(worst < 1e-5, "{kind:?}: {worst}");
    }
}

#[test]
fn conditionally_convergent_rho_sum() {
    let z = common::zeros();
    let t = common::tables(100);
    let x: f64 = 10.0;
    let exact = rho_sum(&t, Constants::get(), x).unwrap().value;
    let mut acc = zosc_core::sum::ComplexNeumaier::new();
    for &g in z.gammas() {
        let rho = Complex64::new(0.5, g);
        acc.add(Complex64::new(x, 0.0).powc(rho) / rho);
    }
    let truncated = 2.0 * acc.value().re;
    assert!((exact - truncated).abs() < 0.05, "{exact} vs {truncated}");
}
