//! Value distributions of zeta pairs built from the shipped zero table.
mod common;

use zosc_core::mfunction::{invert_to_m_re, UGrid};
use zosc_core::series::tail_bound;
use zosc_core::verify::{distribution_check, point_mass};
use zosc_core::{make_zeta_pair, ZetaKind};

#[test]
fn h1_density_integrity_at_1000_zeros() {
    let p = make_zeta_pair(common::zeros(), ZetaKind::Hl(1.0), 1000).unwrap();
    let d = invert_to_m_re(&p, UGrid::default()).unwrap();
    let half_sum_sq: f64 = 0.5 * p.magnitudes().iter().map(|c| c * c).sum::<f64>();
    assert!((d.mass - 1.0).abs() < 1e-4, "mass {}", d.mass);
    assert!(d.negativity() < 1e-6);
    assert!(d.symmetry_defect() < 1e-6);
    assert!(d.support_leakage() < 1e-6);
    assert!((d.second_moment - half_sum_sq).abs() < 1e-4);
}

#[test]
fn density_refines_with_more_zeros() {
    let z = common::zeros();
    let p1 = make_zeta_pair(z, ZetaKind::Hl(1.0), 1000).unwrap();
    let p2 = make_zeta_pair(z, ZetaKind::Hl(1.0), 2000).unwrap();
    let grid = UGrid {
        points: 2001,
        half_width: Some(1.1 * p2.flags().m1_sum_abs),
    };
    let a = invert_to_m_re(&p1, grid).unwrap();
    let b = invert_to_m_re(&p2, grid).unwrap();
    let sup = a.m_re.iter().zip(&b.m_re).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    assert!(sup <= 10.0 * tail_bound(z.gammas()[999]), "{sup}");
}

#[test]
fn h1_flow_matches_density() {
    let p = make_zeta_pair(common::zeros(), ZetaKind::Hl(1.0), 20).unwrap();
    let d = invert_to_m_re(&p, UGrid::default()).unwrap();
    let short = distribution_check(&p, &d, 3e4).unwrap();
    let long = distribution_check(&p, &d, 6e4).unwrap();
    assert!(long < 0.02, "{long}");
    assert!(long <= short + 0.005, "{short} -> {long}");
}

#[test]
fn h1_point_mass() {
    let z = common::zeros();
    let a = point_mass(&make_zeta_pair(z, ZetaKind::Hl(1.0), 10_000).unwrap(), 1.0).unwrap();
    let b = point_mass(&make_zeta_pair(z, ZetaKind::Hl(1.0), 20_000).unwrap(), 1.0).unwrap();
    assert!(a > 0.95 && a < 0.96, "{a}");
    assert!((a / b - 1.0).abs() < 0.01);
}
