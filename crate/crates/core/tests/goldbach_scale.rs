mod common;

use zosc_core::goldbach::{conversion_roundtrip, estimate_c2, log_grid};
use zosc_core::Constants;

#[test]
fn c2_and_round_trip_at_1e5() {
    let t = common::tables(100_000);
    let c = Constants::get();
    let z = common::zeros();
    let est = estimate_c2(&t, c, z, &log_grid(1000, 100_000, 200), z.len()).unwrap();
    assert!(est.spread <= 0.03, "{est:?}");
    assert!((est.via_limit - est.via_limit_top_quarter).abs() < 0.005);
    let grid: Vec<usize> = (1..=100_000).collect();
    let rep = conversion_roundtrip(&t, c, z, &grid, est.via_zeros, z.len()).unwrap();
    assert!(rep.constant_difference_holds(), "{rep:?}");
    assert!(rep.r_max_error < 0.01 * 100_000.0);
}
