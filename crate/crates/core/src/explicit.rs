//! Zero-free closed forms for H(X), H₁(X), H_ℓ(X), H_{1/2}(X) and for the
//! conditionally convergent sums Σ_ρ X^{ρ−s}/(ρ−s) they are assembled from.
//!
//! Every evaluator takes 1 ≤ X ≤ n_max. Below X = 1 + 1e-6 the H-type
//! evaluators switch to a form whose value at X = 1 is the right limit.

use serde::Serialize;

use crate::arith::ArithTables;
use crate::error::{out_of_range, Error, Result};
use crate::specfun::{self, Constants};

/// Below this X the right-limit forms are used.
pub const RIGHT_LIMIT_EDGE: f64 = 1.0 + 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "route", content = "param", rename_all = "snake_case")]
pub enum Route {
    H,
    H1,
    Hl(f64),
    Hhalf,
    /// Σ_ρ X^ρ/ρ.
    RhoSum,
    /// Σ_ρ X^{ρ+1}/(ρ+1).
    RhoPlusOneSum,
    /// Σ_ρ X^{ρ−1}/(ρ−1).
    RhoMinusOneSum,
    /// Σ_ρ X^{ρ−s}/(ρ−s).
    ShiftedRhoSum(f64),
}

impl Route {
    pub fn tag(&self) -> String {
        match self {
            Route::H => "H".into(),
            Route::H1 => "H1".into(),
            Route::Hl(l) => format!("Hl({l})"),
            Route::Hhalf => "Hhalf".into(),
            Route::RhoSum => "rho_sum".into(),
            Route::RhoPlusOneSum => "rho_plus_one_sum".into(),
            Route::RhoMinusOneSum => "rho_minus_one_sum".into(),
            Route::ShiftedRhoSum(s) => format!("shifted_rho_sum({s})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExplicitEval {
    pub x: f64,
    pub value: f64,
    pub route: Route,
    pub right_limit: bool,
    pub components: Vec<(&'static str, f64)>,
}

impl ExplicitEval {
    fn new(x: f64, route: Route, right_limit: bool, components: Vec<(&'static str, f64)>) -> Self {
        let value = crate::sum::sum(components.iter().map(|c| c.1));
        Self {
            x,
            value,
            route,
            right_limit,
            components,
        }
    }
}

fn check_x(tables: &ArithTables, x: f64, strict: bool) -> Result<()> {
    let lo_ok = if strict { x > 1.0 } else { x >= 1.0 };
    if !lo_ok || !x.is_finite() || x > tables.n_max() as f64 {
        let lo = if strict { "(1" } else { "[1" };
        return Err(out_of_range("X", x, format!("{lo}, {}]", tables.n_max())));
    }
    Ok(())
}

/// log(1−X^{−2}) + X^{−1}log((1+X^{−1})/(1−X^{−1})).
fn h_log_bracket(x: f64) -> (f64, bool) {
    if x < RIGHT_LIMIT_EDGE {
        // 2log((X+1)/X) + ((X−1)/X)·log((X−1)/(X+1)); the second term vanishes at X = 1
        let d = x - 1.0;
        let second = if d == 0.0 { 0.0 } else { d / x * (d / (x + 1.0)).ln() };
        (2.0 * (1.0 / x).ln_1p() + second, true)
    } else {
        let r = 1.0 / x;
        ((-r * r).ln_1p() + r * (r.ln_1p() - (-r).ln_1p()), false)
    }
}

/// ½log(1−X^{−2}) + (X/2)log((X+1)/(X−1)).
fn h1_log_bracket(x: f64) -> (f64, bool) {
    if x < RIGHT_LIMIT_EDGE {
        let d = x - 1.0;
        let last = if d == 0.0 { 0.0 } else { 0.5 * d * d.ln() };
        (0.5 * (x + 1.0) * (x + 1.0).ln() - x.ln() - last, true)
    } else {
        let r = 1.0 / x;
        (0.5 * (-r * r).ln_1p() + 0.5 * x * (2.0 / (x - 1.0)).ln_1p(), false)
    }
}

/// H(X) from ψ and Σ nΛ(n).
pub fn explicit_h(tables: &ArithTables, consts: &Constants, x: f64) -> Result<ExplicitEval> {
    check_x(tables, x, false)?;
    let rs = x.sqrt();
    // Σ Λ(n)(1 − n/X); the weight vanishes at n = X, so no halving is needed
    let lambda_part = tables.psi(x)? - tables.psi_weighted_n(x)? / x;
    let (bracket, limit) = h_log_bracket(x);
    Ok(ExplicitEval::new(
        x,
        Route::H,
        limit,
        vec![
            ("half_sqrt_x", 0.5 * rs),
            ("lambda_sum", -lambda_part / rs),
            ("log_2pi", -consts.log_2pi / rs),
            ("zeta_prime_minus1", -12.0 * consts.zeta_prime_minus1 / (x * rs)),
            ("log_bracket", -0.5 * bracket / rs),
        ],
    ))
}

/// H₁(X) from ψ and Σ Λ(n)/n.
pub fn explicit_h1(tables: &ArithTables, consts: &Constants, x: f64) -> Result<ExplicitEval> {
    check_x(tables, x, false)?;
    let rs = x.sqrt();
    // Σ Λ(n)/√n·(√(X/n) − √(n/X)) = √X·ΣΛ/n − ψ/√X
    let lambda_part = rs * tables.psi_weighted_inv(x)? - tables.psi(x)? / rs;
    let (bracket, limit) = h1_log_bracket(x);
    Ok(ExplicitEval::new(
        x,
        Route::H1,
        limit,
        vec![
            ("lambda_sum", lambda_part),
            ("log_term", -rs * (x.ln() - consts.euler_gamma - 1.0)),
            ("log_2pi", -consts.log_2pi / rs),
            ("log_bracket", -(bracket - 1.0) / rs),
        ],
    ))
}

/// ℓ values the H_ℓ closed form cannot take.
pub fn check_ell(l: f64) -> Result<()> {
    if !l.is_finite() {
        return Err(out_of_range("ell", l, "finite"));
    }
    let excluded = l == 0.0
        || l == 0.5
        || l == 1.0
        || (l < 0.0 && l == l.round() && (l as i64) % 2 == 0)
        || (l > 1.0 && l == l.round() && (l as i64) % 2 == 1);
    if excluded {
        return Err(Error::Singular(format!("ell = {l}")));
    }
    // ζ'/ζ is needed at ℓ and 1 − ℓ
    let (lo, hi) = specfun::ZETA_RANGE;
    if !(l > lo && l < hi && 1.0 - l > lo && 1.0 - l < hi) {
        return Err(out_of_range("ell", l, "(-1.5, 2.5)"));
    }
    Ok(())
}

/// H_ℓ(X) for ℓ ∈ (−1.5, 2.5) \ {0, 1/2, 1}.
pub fn explicit_hl(tables: &ArithTables, _consts: &Constants, x: f64, l: f64) -> Result<ExplicitEval> {
    check_x(tables, x, false)?;
    check_ell(l)?;
    let e = l - 0.5;
    let k = 1.0 / (1.0 - 2.0 * l);
    let limit = x < RIGHT_LIMIT_EDGE;
    let lambda_sum = if limit {
        0.0
    } else {
        tables.primed_sum(
            |n| {
                let r = x / n as f64;
                (r.powf(e) - r.powf(-e)) / (n as f64).sqrt()
            },
            x,
        )?
    };
    let z = if limit { 1.0 } else { x.powi(-2) };
    let xe = if limit { 1.0 } else { x.powf(e) };
    // Φ(z,1,a) − Φ(z,1,b) = (b − a)·S and (b − a)/(1 − 2ℓ) = 1/2
    let a = 1.0 + 0.5 * l;
    let b = 1.0 + 0.5 * (1.0 - l);
    let s = specfun::lerch_product_sum(z, a, b)?;
    let rs = if limit { 1.0 } else { x.sqrt() };
    Ok(ExplicitEval::new(
        x,
        Route::Hl(l),
        limit,
        vec![
            ("sqrt_x_term", rs / (l * (l - 1.0))),
            ("lambda_sum", -k * lambda_sum),
            (
                "zeta_logderiv",
                -k * (specfun::zeta_logderiv(l, 0)? * xe - specfun::zeta_logderiv(1.0 - l, 0)? / xe),
            ),
            ("lerch", 0.25 * z * s / rs),
        ],
    ))
}

/// H_{1/2}(X).
pub fn explicit_hhalf(tables: &ArithTables, consts: &Constants, x: f64) -> Result<ExplicitEval> {
    check_x(tables, x, false)?;
    let limit = x < RIGHT_LIMIT_EDGE;
    let (lx, rs, z) = if limit { (0.0, 1.0, 1.0) } else { (x.ln(), x.sqrt(), x.powi(-2)) };
    let lambda_sum = if limit {
        0.0
    } else {
        tables.primed_sum(|n| (x / n as f64).ln() / (n as f64).sqrt(), x)?
    };
    let phi = if limit {
        specfun::trigamma(0.25)
    } else {
        specfun::lerch_phi(z, 2.0, 0.25)?
    };
    Ok(ExplicitEval::new(
        x,
        Route::Hhalf,
        limit,
        vec![
            ("sqrt_x_term", -4.0 * rs),
            ("lambda_sum", lambda_sum),
            ("zeta_logderiv", consts.zeta_logderiv_half * lx),
            ("zeta_logderiv_deriv", consts.zeta_logderiv_deriv_half),
            ("inv_sqrt_term", -4.0 / rs),
            ("lerch", phi / (4.0 * rs)),
        ],
    ))
}

/// Σ_ρ X^{ρ−s}/(ρ−s) for X > 1, s ∈ (−1.5, 4) \ {1}.
pub fn partial_sum_over_zeros(tables: &ArithTables, x: f64, s: f64) -> Result<ExplicitEval> {
    check_x(tables, x, true)?;
    let logderiv = specfun::zeta_logderiv(s, 0)?;
    let lambda_sum = tables.primed_sum(|n| (n as f64).powf(-s), x)?;
    let phi = specfun::lerch_phi(x.powi(-2), 1.0, 1.0 + 0.5 * s)?;
    Ok(ExplicitEval::new(
        x,
        Route::ShiftedRhoSum(s),
        false,
        vec![
            ("lambda_sum", -lambda_sum),
            ("power", x.powf(1.0 - s) / (1.0 - s)),
            ("zeta_logderiv", -logderiv),
            ("lerch", 0.5 * x.powf(-s - 2.0) * phi),
        ],
    ))
}

/// Σ_ρ X^ρ/ρ for X > 1.
pub fn rho_sum(tables: &ArithTables, consts: &Constants, x: f64) -> Result<ExplicitEval> {
    check_x(tables, x, true)?;
    Ok(ExplicitEval::new(
        x,
        Route::RhoSum,
        false,
        vec![
            ("x", x),
            ("lambda_sum", -tables.primed_sum(|_| 1.0, x)?),
            ("log_2pi", -consts.log_2pi),
            ("log", -0.5 * (-x.powi(-2)).ln_1p()),
        ],
    ))
}

/// Σ_ρ X^{ρ+1}/(ρ+1) for X > 1.
pub fn rho_plus_one_sum(tables: &ArithTables, consts: &Constants, x: f64) -> Result<ExplicitEval> {
    check_x(tables, x, true)?;
    Ok(ExplicitEval::new(
        x,
        Route::RhoPlusOneSum,
        false,
        vec![
            ("half_x_squared", 0.5 * x * x),
            ("lambda_sum", -tables.primed_sum(|n| n as f64, x)?),
            ("zeta_prime_minus1", 12.0 * consts.zeta_prime_minus1),
            ("log", 0.5 * (2.0 / (x - 1.0)).ln_1p()),
        ],
    ))
}

/// Σ_ρ X^{ρ−1}/(ρ−1) for X > 1.
pub fn rho_minus_one_sum(tables: &ArithTables, consts: &Constants, x: f64) -> Result<ExplicitEval> {
    check_x(tables, x, true)?;
    Ok(ExplicitEval::new(
        x,
        Route::RhoMinusOneSum,
        false,
        vec![
            ("log_x", x.ln()),
            ("lambda_sum", -tables.primed_sum(|n| 1.0 / n as f64, x)?),
            ("euler_gamma", -consts.euler_gamma),
            ("inv_x", -1.0 / x),
            ("log", 0.5 * (2.0 / (x - 1.0)).ln_1p()),
        ],
    ))
}

/// Closed-form evaluator selected by name, as used by the CLI and acceptance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum HKind {
    H,
    H1,
    Hl(f64),
    Hhalf,
}

impl HKind {
    pub fn eval(self, tables: &ArithTables, consts: &Constants, x: f64) -> Result<ExplicitEval> {
        match self {
            HKind::H => explicit_h(tables, consts, x),
            HKind::H1 => explicit_h1(tables, consts, x),
            HKind::Hl(l) => explicit_hl(tables, consts, x, l),
            HKind::Hhalf => explicit_hhalf(tables, consts, x),
        }
    }

    /// The zero sum with the same value.
    pub fn series_kind(self) -> crate::series::ZetaKind {
        use crate::series::ZetaKind;
        match self {
            HKind::H => ZetaKind::H,
            HKind::H1 => ZetaKind::Hl(1.0),
            HKind::Hl(l) => ZetaKind::Hl(l),
            HKind::Hhalf => ZetaKind::Hl(0.5),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{h_series, ZetaKind};
    use crate::zeros::{ZeroTable, FIRST_30};
    use proptest::prelude::*;

    fn setup() -> (ArithTables, &'static Constants) {
        (ArithTables::build(2000, false).unwrap(), Constants::get())
    }

    #[test]
    fn values_at_one() {
        let (t, c) = setup();
        let h = explicit_h(&t, c, 1.0).unwrap();
        assert!(h.right_limit);
        assert!((-0.045971..=-0.045970).contains(&h.value), "{}", h.value);
        assert_eq!((h.value * 1e6).trunc(), -45970.0);
        let h1 = explicit_h1(&t, c, 1.0).unwrap();
        assert_eq!((h1.value * 1e6).trunc(), 46191.0);
        assert!((h1.value - (c.euler_gamma + 2.0 - (4.0 * std::f64::consts::PI).ln())).abs() < 1e-15);
    }

    #[test]
    fn continuity_at_one() {
        let (t, c) = setup();
        let at = explicit_h(&t, c, 1.0).unwrap().value;
        let near = explicit_h(&t, c, 1.0 + 1e-8).unwrap();
        assert!(near.right_limit);
        assert!((near.value - at).abs() < 1e-4);
        // above the switch the plain form is used and still continuous
        let above = explicit_h(&t, c, 1.0 + 2e-6).unwrap();
        assert!(!above.right_limit);
        assert!((above.value - at).abs() < 1e-4);
        let h1 = explicit_h1(&t, c, 1.0 + 2e-6).unwrap().value;
        assert!((h1 - explicit_h1(&t, c, 1.0).unwrap().value).abs() < 1e-4);
        for l in [0.3, 1.7, -0.8] {
            let a = explicit_hl(&t, c, 1.0, l).unwrap().value;
            let b = explicit_hl(&t, c, 1.0 + 2e-6, l).unwrap().value;
            assert!((a - b).abs() < 1e-4, "ell={l}: {a} vs {b}");
        }
        let a = explicit_hhalf(&t, c, 1.0).unwrap().value;
        let b = explicit_hhalf(&t, c, 1.0 + 2e-6).unwrap().value;
        assert!((a - b).abs() < 1e-4, "{a} vs {b}");
    }

    #[test]
    fn log_brackets_agree_across_switch() {
        for x in [1.5f64, 2.0, 10.0] {
            let r = 1.0 / x;
            let plain = (1.0 - r * r).ln() + r * ((1.0 + r) / (1.0 - r)).ln();
            let regrouped = 2.0 * ((x + 1.0) / x).ln() + (x - 1.0) / x * ((x - 1.0) / (x + 1.0)).ln();
            assert!((plain - regrouped).abs() < 1e-14);
            assert!((h_log_bracket(x).0 - plain).abs() < 1e-14);
            let plain1 = 0.5 * (1.0 - r * r).ln() + 0.5 * x * ((x + 1.0) / (x - 1.0)).ln();
            let regrouped1 = 0.5 * (x + 1.0) * (x + 1.0).ln() - x.ln() - 0.5 * (x - 1.0) * (x - 1.0).ln();
            assert!((plain1 - regrouped1).abs() < 1e-13);
            assert!((h1_log_bracket(x).0 - plain1).abs() < 1e-13);
        }
    }

    #[test]
    fn partial_fractions() {
        let (t, c) = setup();
        for &x in &[1.5, 4.0, 7.3, 16.0, 100.0, 1999.0] {
            let s0 = rho_sum(&t, c, x).unwrap().value;
            let sm1 = rho_plus_one_sum(&t, c, x).unwrap().value;
            let s1 = rho_minus_one_sum(&t, c, x).unwrap().value;
            let h = explicit_h(&t, c, x).unwrap().value;
            let h1 = explicit_h1(&t, c, x).unwrap().value;
            let scale = 1.0 + x;
            assert!((h - (s0 / x.sqrt() - sm1 / (x * x.sqrt()))).abs() < 1e-12 * scale, "x={x}");
            assert!((h1 - (s0 / x.sqrt() - x.sqrt() * s1)).abs() < 1e-12 * scale, "x={x}");
        }
    }

    #[test]
    fn shifted_sum_specializations() {
        let (t, c) = setup();
        for &x in &[10.0, 4.0, 37.5] {
            let a = partial_sum_over_zeros(&t, x, 0.0).unwrap().value;
            let b = rho_sum(&t, c, x).unwrap().value;
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
            let a = partial_sum_over_zeros(&t, x, -1.0).unwrap().value;
            let b = rho_plus_one_sum(&t, c, x).unwrap().value;
            assert!((a - b).abs() < 1e-10 * x * x, "{a} vs {b}");
        }
        // the Σ' rule halves the X = 4 term
        let with = partial_sum_over_zeros(&t, 4.0, 2.0).unwrap();
        let lam = with.components.iter().find(|c| c.0 == "lambda_sum").unwrap().1;
        let ln2 = std::f64::consts::LN_2;
        assert!((lam + (ln2 / 4.0 + 3f64.ln() / 9.0 + 0.5 * ln2 / 16.0)).abs() < 1e-15);
        assert!(partial_sum_over_zeros(&t, 4.0, 1.0).is_err());
        assert!(partial_sum_over_zeros(&t, 1.0, 0.0).is_err());
    }

    #[test]
    fn hl_symmetry_and_exclusions() {
        let (t, c) = setup();
        for &x in &[1.0, 2.0, 13.0, 500.0] {
            for &l in &[0.3, -0.7, 1.9] {
                let a = explicit_hl(&t, c, x, l).unwrap().value;
                let b = explicit_hl(&t, c, x, 1.0 - l).unwrap().value;
                assert!((a - b).abs() < 1e-10, "x={x} l={l}: {a} vs {b}");
            }
        }
        for l in [0.0, 0.5, 1.0, 3.0, -2.0, 2.6, -1.6] {
            assert!(explicit_hl(&t, c, 2.0, l).is_err(), "ell={l}");
        }
    }

    #[test]
    fn hl_approaches_h1_and_hhalf() {
        let (t, c) = setup();
        let h = 2e-4;
        for &x in &[2.0, 10.0, 100.0] {
            let want = explicit_h1(&t, c, x).unwrap().value;
            let lo = explicit_hl(&t, c, x, 1.0 - h).unwrap().value;
            let hi = explicit_hl(&t, c, x, 1.0 + h).unwrap().value;
            assert!((0.5 * (lo + hi) - want).abs() < 1e-10, "x={x}: {}", 0.5 * (lo + hi) - want);
            let half = explicit_hhalf(&t, c, x).unwrap().value;
            let lo = explicit_hl(&t, c, x, 0.5 - 1e-4).unwrap().value;
            let hi = explicit_hl(&t, c, x, 0.5 + 1e-4).unwrap().value;
            assert!((lo - half).abs() < 1e-3 && (hi - half).abs() < 1e-3);
        }
    }

    #[test]
    fn short_table_routes_agree_loosely() {
        // 30 zeros leave a tail of about 3e-3; a sanity check of conventions
        let table = ZeroTable::new(FIRST_30.to_vec(), vec![], "t").unwrap();
        let (t, c) = setup();
        for &x in &[1.0, 3.0, 50.0] {
            for kind in [HKind::H, HKind::H1, HKind::Hl(0.3), HKind::Hhalf] {
                let e = kind.eval(&t, c, x).unwrap().value;
                let s = h_series(&table, kind.series_kind(), x, 30).unwrap();
                assert!((e - s.value).abs() <= s.tail_bound, "{kind:?} x={x}: {e} vs {}", s.value);
            }
        }
        assert_eq!(HKind::H1.series_kind(), ZetaKind::Hl(1.0));
    }

    #[test]
    fn prime_power_weights_vanish() {
        let (t, c) = setup();
        // weights are zero at n = X, so primed and plain sums coincide
        let e = explicit_h1(&t, c, 4.0).unwrap();
        let lam = e.components[0].1;
        let plain: f64 = (1..=4).map(|n| t.lambda()[n] / (n as f64).sqrt() * ((4.0 / n as f64).sqrt() - (n as f64 / 4.0).sqrt())).sum();
        assert!((lam - plain).abs() < 1e-14);
        let hh = explicit_hhalf(&t, c, 8.0).unwrap().components[1].1;
        let plain: f64 = (1..=8).map(|n| t.lambda()[n] / (n as f64).sqrt() * (8.0 / n as f64).ln()).sum();
        assert!((hh - plain).abs() < 1e-14);
    }

    #[test]
    fn domain_errors() {
        let (t, c) = setup();
        assert!(explicit_h(&t, c, 0.99).is_err());
        assert!(explicit_h(&t, c, 2001.0).is_err());
        assert!(explicit_h1(&t, c, f64::NAN).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn h_partial_fraction_identity(x in 1.001f64..2000.0) {
            let t = ArithTables::build(2000, false).unwrap();
            let c = Constants::get();
            let s0 = rho_sum(&t, c, x).unwrap().value;
            let sm1 = rho_plus_one_sum(&t, c, x).unwrap().value;
            let h = explicit_h(&t, c, x).unwrap().value;
            prop_assert!((h - (s0 / x.sqrt() - sm1 / (x * x.sqrt()))).abs() < 1e-11 * (1.0 + x));
        }
    }
}
