//! Summatory identities for r₂(n) = Σ_{m+k=n} Λ(m)Λ(k):
//!
//!   Σ_{n≤X} r₂(n)      = X²/2 − 2X^{3/2}H(X) + R(X),
//!   Σ_{n≤X} r₂(n)/n²   = log X + c₂ + 2X^{−1/2}H₁(X) + E(X),
//!
//! the constant c₂, the passage between R and E by partial summation, and
//! the integrated Chebyshev identity.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::ArithTables;
use crate::error::{out_of_range, Error, Result};
use crate::explicit::{explicit_h, explicit_h1};
use crate::quad::GaussLegendre;
use crate::specfun::{self, Constants};
use crate::sum::{ComplexNeumaier, Neumaier};
use crate::zeros::ZeroTable;

/// Constant in the envelope |R(X)| ≤ K·X(log X)³.
pub const R_ENVELOPE: f64 = 5.0;
/// Largest X for the partial-summation round trip.
pub const ROUNDTRIP_MAX: usize = 100_000;
const NODES: usize = 8;

fn r2_of(tables: &ArithTables) -> Result<&[f64]> {
    tables
        .r2()
        .ok_or_else(|| Error::Precondition("arithmetic tables were built without r₂".into()))
}

/// Running sums S(n) = Σ_{k≤n} r₂(k) and D(n) = Σ_{k≤n} r₂(k)/k².
struct Prefixes {
    s: Vec<f64>,
    d: Vec<f64>,
}

impl Prefixes {
    fn build(tables: &ArithTables, upto: usize) -> Result<Self> {
        let r2 = r2_of(tables)?;
        let mut s = Vec::with_capacity(upto + 1);
        let mut d = Vec::with_capacity(upto + 1);
        let (mut acc_s, mut acc_d) = (Neumaier::new(), Neumaier::new());
        for (n, &r) in r2.iter().enumerate().take(upto + 1) {
            acc_s.add(r);
            if n > 0 {
                acc_d.add(r / (n as f64 * n as f64));
            }
            s.push(acc_s.value());
            d.push(acc_d.value());
        }
        Ok(Self { s, d })
    }
}

/// Integrals of f over [n, n+1] for n = 1..x_max−1, with cumulative sums
/// c[n] = ∫₁ⁿ f. The first interval is split geometrically towards 1, where
/// the explicit formulas carry (X−1)log(X−1) terms.
fn cumulative_integral<F>(x_max: usize, f: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let gl = GaussLegendre::new(NODES);
    let pieces: Vec<f64> = (1..x_max)
        .into_par_iter()
        .map(|n| {
            let a = n as f64;
            let mut acc = Neumaier::new();
            if n == 1 {
                let mut hi = 2.0;
                for _ in 0..48 {
                    let lo = 1.0 + 0.5 * (hi - 1.0);
                    for (x, w) in gl.mapped(lo, hi) {
                        acc.add(w * f(x)?);
                    }
                    hi = lo;
                }
            } else {
                for (x, w) in gl.mapped(a, a + 1.0) {
                    acc.add(w * f(x)?);
                }
            }
            Ok(acc.value())
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(x_max + 1);
    out.push(0.0);
    out.push(0.0);
    let mut acc = Neumaier::new();
    for p in pieces {
        acc.add(p);
        out.push(acc.value());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GoldbachSummary {
    pub x: usize,
    pub s: f64,
    pub h_at_x: f64,
    pub r: f64,
    pub d: f64,
    pub h1_at_x: f64,
    pub e: f64,
    pub c2_used: f64,
}

fn summary_from(tables: &ArithTables, consts: &Constants, x: usize, s: f64, d: f64, c2: f64) -> Result<GoldbachSummary> {
    let xf = x as f64;
    let h = explicit_h(tables, consts, xf)?.value;
    let h1 = explicit_h1(tables, consts, xf)?.value;
    Ok(GoldbachSummary {
        x,
        s,
        h_at_x: h,
        r: s - 0.5 * xf * xf + 2.0 * xf * xf.sqrt() * h,
        d,
        h1_at_x: h1,
        e: d - xf.ln() - c2 - 2.0 * h1 / xf.sqrt(),
        c2_used: c2,
    })
}

/// S, R, D and E at integer X; H and H₁ come from the zero-free formulas.
pub fn summary_at(tables: &ArithTables, consts: &Constants, x: usize, c2: f64) -> Result<GoldbachSummary> {
    if x < 1 || x > tables.n_max() {
        return Err(out_of_range("X", x as f64, format!("[1, {}]", tables.n_max())));
    }
    let r2 = r2_of(tables)?;
    let s = crate::sum::sum(r2[..=x].iter().copied());
    let d = crate::sum::sum((1..=x).map(|n| r2[n] / (n as f64 * n as f64)));
    summary_from(tables, consts, x, s, d, c2)
}

/// Summaries for many X, sharing one pass over r₂.
pub fn summaries(tables: &ArithTables, consts: &Constants, xs: &[usize], c2: f64) -> Result<Vec<GoldbachSummary>> {
    let top = xs.iter().copied().max().unwrap_or(0);
    if xs.iter().any(|&x| x < 1) || top > tables.n_max() {
        return Err(out_of_range("X", top as f64, format!("[1, {}]", tables.n_max())));
    }
    let p = Prefixes::build(tables, top)?;
    xs.par_iter()
        .map(|&x| summary_from(tables, consts, x, p.s[x], p.d[x], c2))
        .collect()
}

/// Σ_ρ 4/(ρ(ρ+1)(ρ−1)) over the first `n` zeros and their conjugates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZeroConstant {
    pub value: f64,
    pub tail_bound: f64,
    pub n_zeros: usize,
}

pub fn zero_constant(table: &ZeroTable, n: usize) -> Result<ZeroConstant> {
    if n == 0 || n > table.len() {
        return Err(out_of_range("n", n as f64, format!("1..={}", table.len())));
    }
    let mut acc = ComplexNeumaier::new();
    for (&g, &m) in table.gammas()[..n].iter().zip(table.multiplicities()) {
        let rho = Complex64::new(0.5, g);
        acc.add(4.0 * m as f64 / (rho * (rho + 1.0) * (rho - 1.0)));
    }
    let t = table.gammas()[n - 1];
    // |term| ≤ 4/γ³ per zero and its conjugate, against the zero density.
    let tail_bound = 1.2 * (8.0 / (2.0 * std::f64::consts::PI)) * ((t / (2.0 * std::f64::consts::PI)).ln() + 1.0) / (t * t);
    Ok(ZeroConstant {
        value: 2.0 * acc.value().re,
        tail_bound,
        n_zeros: n,
    })
}

/// 2∫_X^∞ y^{−3}·K·y(log y)³ dy.
pub fn envelope_remainder(x: f64) -> f64 {
    let l = x.ln();
    2.0 * R_ENVELOPE * (l * l * l + 3.0 * l * l + 6.0 * l + 6.0) / x
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct C2Estimate {
    /// Mean of D − log X − 2X^{−1/2}H₁ over the top half of the grid.
    pub via_limit: f64,
    /// Same mean over the top quarter.
    pub via_limit_top_quarter: f64,
    /// ½ + Σ_ρ 4/(ρ(ρ+1)(ρ−1)) + 2∫₁^{X_max} y^{−3}R(y) dy.
    pub via_zeros: f64,
    pub spread: f64,
    pub zero_sum: ZeroConstant,
    pub r_integral: f64,
    /// Bound on the discarded 2∫_{X_max}^∞ y^{−3}R(y) dy from the R envelope.
    pub remainder_bound: f64,
    pub x_max: usize,
    pub grid_len: usize,
}

/// ∫₁^X y^{−3}R(y) dy for every integer X ≤ x_max.
fn r_integrals(tables: &ArithTables, consts: &Constants, p: &Prefixes, x_max: usize) -> Result<Vec<f64>> {
    let h_part = cumulative_integral(x_max, |y| Ok(2.0 * explicit_h(tables, consts, y)?.value / (y * y.sqrt())))?;
    let mut out = Vec::with_capacity(x_max + 1);
    out.push(0.0);
    out.push(0.0);
    let mut s_part = Neumaier::new();
    for n in 2..=x_max {
        let k = (n - 1) as f64;
        s_part.add(p.s[n - 1] * 0.5 * (1.0 / (k * k) - 1.0 / (n as f64 * n as f64)));
        out.push(s_part.value() - 0.5 * (n as f64).ln() + h_part[n]);
    }
    Ok(out)
}

/// c₂ from the limit definition and from the closed formula over zeros.
pub fn estimate_c2(
    tables: &ArithTables,
    consts: &Constants,
    table: &ZeroTable,
    grid: &[usize],
    n_zeros: usize,
) -> Result<C2Estimate> {
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("X grid must be nonempty and strictly ascending".into()));
    }
    let x_max = *grid.last().unwrap();
    if grid[0] < 2 || x_max > tables.n_max() {
        return Err(out_of_range("X", x_max as f64, format!("[2, {}]", tables.n_max())));
    }
    let p = Prefixes::build(tables, x_max)?;
    let limits: Vec<f64> = grid
        .par_iter()
        .map(|&x| {
            let xf = x as f64;
            Ok(p.d[x] - xf.ln() - 2.0 * explicit_h1(tables, consts, xf)?.value / xf.sqrt())
        })
        .collect::<Result<_>>()?;
    let mean_from = |start: usize| {
        let tail = &limits[start..];
        crate::sum::sum(tail.iter().copied()) / tail.len() as f64
    };
    let via_limit = mean_from(grid.len() / 2);
    let via_limit_top_quarter = mean_from(grid.len() - grid.len().div_ceil(4));

    let zero_sum = zero_constant(table, n_zeros)?;
    let r_integral = r_integrals(tables, consts, &p, x_max)?[x_max];
    let via_zeros = 0.5 + zero_sum.value + 2.0 * r_integral;
    Ok(C2Estimate {
        via_limit,
        via_limit_top_quarter,
        via_zeros,
        spread: (via_limit - via_zeros).abs(),
        zero_sum,
        r_integral,
        remainder_bound: envelope_remainder(x_max as f64),
        x_max,
        grid_len: grid.len(),
    })
}

/// `count` roughly log-spaced integers from `lo` to `hi`, deduplicated.
pub fn log_grid(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    let (a, b) = ((lo.max(1) as f64).ln(), (hi.max(1) as f64).ln());
    let mut out: Vec<usize> = (0..count)
        .map(|k| {
            let t = if count == 1 { 1.0 } else { k as f64 / (count - 1) as f64 };
            ((a + t * (b - a)).exp().round() as usize).clamp(lo, hi)
        })
        .collect();
    out.dedup();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChebyshevCheck {
    pub x: f64,
    /// ∫₀^X (ψ(y) − y) dy.
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Compares ∫₀^X (ψ(y) − y) dy with
/// −X^{3/2}H(X) − (ζ'/ζ)(0)X + (ζ'/ζ)(−1) − X Σ X^{−2n}/(2n(2n−1)).
pub fn chebyshev_integral_check(tables: &ArithTables, consts: &Constants, x: f64) -> Result<ChebyshevCheck> {
    if !(x >= 1.0) || x > tables.n_max() as f64 {
        return Err(out_of_range("X", x, format!("[1, {}]", tables.n_max())));
    }
    let whole = x.floor() as usize;
    // ψ is constant on each [n, n+1)
    let mut acc = Neumaier::new();
    for n in 1..whole {
        acc.add(tables.psi(n as f64)?);
    }
    acc.add(tables.psi(whole as f64)? * (x - whole as f64));
    acc.add(-0.5 * x * x);
    let lhs = acc.value();

    let series = if x == 1.0 {
        std::f64::consts::LN_2
    } else {
        specfun::artanh_series_sum(1.0 / x)?
    };
    let h = explicit_h(tables, consts, x)?.value;
    let rhs = crate::sum::sum([
        -x * x.sqrt() * h,
        -consts.zeta_logderiv_zero() * x,
        consts.zeta_logderiv_minus1(),
        -x * series,
    ]);
    Ok(ChebyshevCheck {
        x,
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundtripReport {
    pub x_max: usize,
    pub c2_used: f64,
    pub zero_sum: ZeroConstant,
    /// c₂ − ½ − Σ_ρ 4/(ρ(ρ+1)(ρ−1)): the constant the partial summations leave behind.
    pub expected_constant: f64,
    /// max |R − R̂| with R̂ rebuilt from E including the constant.
    pub r_max_error: f64,
    /// Mean and standard deviation of (X²E − 2∫yE) − R over the grid.
    pub r_difference_mean: f64,
    pub r_difference_std: f64,
    /// max |E − Ê| with Ê rebuilt from R including the constant.
    pub e_max_error: f64,
    /// Mean and standard deviation of (R/X² + 2∫y^{−3}R) − E over the grid.
    pub e_difference_mean: f64,
    pub e_difference_std: f64,
    /// Points X ≥ 10 used for the statistics.
    pub points: usize,
}

impl RoundtripReport {
    /// The R-side difference is constant up to 10% of its size.
    pub fn constant_difference_holds(&self) -> bool {
        self.r_difference_std < 0.1 * self.r_difference_mean.abs()
            && self.e_difference_std < 0.1 * self.e_difference_mean.abs()
    }
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = crate::sum::sum(v.iter().copied()) / n;
    let var = crate::sum::sum(v.iter().map(|x| (x - mean) * (x - mean))) / n;
    (mean, var.sqrt())
}

/// Rebuilds R from E and E from R by partial summation over every integer
/// up to X_max and compares with the direct values.
pub fn conversion_roundtrip(
    tables: &ArithTables,
    consts: &Constants,
    table: &ZeroTable,
    grid: &[usize],
    c2: f64,
    n_zeros: usize,
) -> Result<RoundtripReport> {
    let x_max = grid.last().copied().unwrap_or(0);
    let dense = grid.first().is_some_and(|&g| g <= 2) && grid.windows(2).all(|w| w[1] == w[0] + 1);
    if !dense || x_max < 10 {
        return Err(Error::Precondition(
            "round trip needs every integer from 2 (or below) up to X_max ≥ 10".into(),
        ));
    }
    if x_max > ROUNDTRIP_MAX.min(tables.n_max()) {
        return Err(out_of_range("X_max", x_max as f64, format!("[10, {}]", ROUNDTRIP_MAX.min(tables.n_max()))));
    }
    let p = Prefixes::build(tables, x_max)?;
    let zero_sum = zero_constant(table, n_zeros)?;
    let constant = c2 - 0.5 - zero_sum.value;

    // ∫₁^X y E(y) dy = Σ D(n)(n + ½) − ∫(y log y + c₂y) − 2∫√y H₁(y) dy
    let h1_part = cumulative_integral(x_max, |y| Ok(2.0 * y.sqrt() * explicit_h1(tables, consts, y)?.value))?;
    let r_int = r_integrals(tables, consts, &p, x_max)?;

    // Σ_{n<X} D(n)(n + ½) = ∫₁^X y D(y) dy
    let mut dy_cum = Vec::with_capacity(x_max + 1);
    dy_cum.push(0.0);
    dy_cum.push(0.0);
    let mut dy = Neumaier::new();
    for n in 1..x_max {
        dy.add(p.d[n] * (n as f64 + 0.5));
        dy_cum.push(dy.value());
    }

    let start = 10.min(x_max);
    let rows: Vec<(f64, f64, f64, f64)> = (start..=x_max)
        .into_par_iter()
        .map(|x| {
            let row = summary_from(tables, consts, x, p.s[x], p.d[x], c2)?;
            let xf = x as f64;
            let closed = 0.5 * xf * xf * xf.ln() - 0.25 * (xf * xf - 1.0) + 0.5 * c2 * (xf * xf - 1.0);
            let y_e = dy_cum[x] - closed - h1_part[x];
            let r_tilde = xf * xf * row.e - 2.0 * y_e;
            let e_tilde = row.r / (xf * xf) + 2.0 * r_int[x];
            Ok((r_tilde - row.r, e_tilde - row.e, row.r, row.e))
        })
        .collect::<Result<_>>()?;

    let r_diff: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let e_diff: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let r_max_error = r_diff.iter().map(|d| (d + constant).abs()).fold(0.0, f64::max);
    let e_max_error = e_diff.iter().map(|d| (d - constant).abs()).fold(0.0, f64::max);
    let (rm, rs) = mean_std(&r_diff);
    let (em, es) = mean_std(&e_diff);
    Ok(RoundtripReport {
        x_max,
        c2_used: c2,
        zero_sum,
        expected_constant: constant,
        r_max_error,
        r_difference_mean: rm,
        r_difference_std: rs,
        e_max_error,
        e_difference_mean: em,
        e_difference_std: es,
        points: rows.len(),
    })
}
