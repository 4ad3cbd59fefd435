//! Special functions on the real line: J₀, I₀, Hurwitz–Lerch Φ, ζ and its
//! first two derivatives, digamma/trigamma, and the constants the explicit
//! formulas need.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::OnceLock;

use crate::error::{out_of_range, Error, Result};
use crate::sum::Neumaier;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const LOG_2PI: f64 = 1.837_877_066_409_345_5;

/// Range of s accepted by [`zeta_logderiv`].
pub const ZETA_RANGE: (f64, f64) = (-1.5, 4.0);

// ---------------------------------------------------------------- Bessel

const J0_SERIES_MAX: f64 = 8.0;
const J0_MILLER_MAX: f64 = 50.0;

/// J₀(x) for |x| ≤ 10⁶.
pub fn bessel_j0(x: f64) -> Result<f64> {
    if !(x.abs() <= 1e6) {
        return Err(out_of_range("x", x, "[-1e6, 1e6]"));
    }
    Ok(j0(x))
}

/// J₀ without the domain check.
pub fn j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= J0_SERIES_MAX {
        j0_series(x)
    } else if x <= J0_MILLER_MAX {
        j0_miller(x)
    } else {
        j0_hankel(x)
    }
}

fn j0_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut acc = Neumaier::new();
    acc.add(1.0);
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * kf);
        acc.add(term);
        if term.abs() < 1e-18 {
            break;
        }
    }
    acc.value()
}

/// Backward recurrence normalized by J₀ + 2ΣJ_{2k} = 1.
fn j0_miller(x: f64) -> f64 {
    let start = 2 * ((x + 20.0 + 6.0 * x.sqrt()) as usize / 2 + 1);
    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-300; // J_k
    let mut norm = Neumaier::new();
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm.add(2.0 * cur);
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            let v = norm.value() * 1e-250;
            norm = Neumaier::new();
            norm.add(v);
        }
    }
    norm.add(cur);
    cur / norm.value()
}

fn j0_hankel(x: f64) -> f64 {
    let mut p = Neumaier::new();
    let mut q = Neumaier::new();
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0..200 {
        if k > 0 {
            let kf = k as f64;
            a *= (2.0 * kf - 1.0).powi(2) / (8.0 * kf * x);
        }
        if a.abs() > prev {
            break;
        }
        prev = a.abs();
        let signed = if (k / 2) % 2 == 0 { a } else { -a };
        if k % 2 == 0 {
            p.add(signed);
        } else {
            q.add(signed);
        }
        if a < 1e-17 {
            break;
        }
    }
    let (s, c) = x.sin_cos();
    let cos_shift = FRAC_1_SQRT_2 * (c + s);
    let sin_shift = FRAC_1_SQRT_2 * (s - c);
    // a_k carries the sign (−1)^k, so the Q series enters with a plus.
    (2.0 / (PI * x)).sqrt() * (p.value() * cos_shift + q.value() * sin_shift)
}

/// I₀(x) for |x| ≤ 700.
pub fn bessel_i0(x: f64) -> Result<f64> {
    if !(x.abs() <= 700.0) {
        return Err(out_of_range("x", x, "[-700, 700]"));
    }
    Ok(ln_i0(x).exp())
}

/// log I₀(x), finite for every real x.
pub fn ln_i0(x: f64) -> f64 {
    let x = x.abs();
    if x <= 30.0 {
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut acc = Neumaier::new();
        acc.add(1.0);
        for k in 1..200 {
            let kf = k as f64;
            term *= q / (kf * kf);
            acc.add(term);
            if term < 1e-17 * acc.value() {
                break;
            }
        }
        acc.value().ln()
    } else {
        let mut acc = Neumaier::new();
        let mut a = 1.0;
        acc.add(1.0);
        for k in 1..100 {
            let kf = k as f64;
            let next = a * (2.0 * kf - 1.0).powi(2) / (8.0 * kf * x);
            if next > a {
                break;
            }
            a = next;
            acc.add(a);
            if a < 1e-17 {
                break;
            }
        }
        x + acc.value().ln() - 0.5 * (2.0 * PI * x).ln()
    }
}

// ------------------------------------------------------- digamma family

/// ψ(x) for x > 0.
pub fn digamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut x = x;
    let mut acc = Neumaier::new();
    while x < 12.0 {
        acc.add(-1.0 / x);
        x += 1.0;
    }
    let r = 1.0 / (x * x);
    let tail = r
        * (1.0 / 12.0
            - r * (1.0 / 120.0
                - r * (1.0 / 252.0 - r * (1.0 / 240.0 - r * (1.0 / 132.0 - r * 691.0 / 32760.0)))));
    acc.add(x.ln() - 0.5 / x - tail);
    acc.value()
}

/// ψ'(x) = ζ(2, x) for x > 0.
pub fn trigamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut x = x;
    let mut acc = Neumaier::new();
    while x < 12.0 {
        acc.add(1.0 / (x * x));
        x += 1.0;
    }
    let r = 1.0 / (x * x);
    let tail = (1.0
        + r * (1.0 / 6.0 - r * (1.0 / 30.0 - r * (1.0 / 42.0 - r * (1.0 / 30.0 - r * 5.0 / 66.0)))))
        / x;
    acc.add(tail + 0.5 * r);
    acc.value()
}

// ----------------------------------------------------------- Lerch Φ

const LERCH_MAX_TERMS: usize = 200_000_000;

fn check_lerch_a(a: f64) -> Result<()> {
    if a <= 0.0 && a == a.round() {
        return Err(Error::Singular(format!("a = {a}")));
    }
    Ok(())
}

/// Φ(z, s, a) = Σ_{n≥0} zⁿ (n+a)^{−s} for |z| < 1.
pub fn lerch_phi(z: f64, s: f64, a: f64) -> Result<f64> {
    if !(z.abs() < 1.0) {
        return Err(out_of_range("z", z, "(-1, 1)"));
    }
    check_lerch_a(a)?;
    let int_s = s == s.round() && s.abs() < 1e9;
    if !int_s && a < 0.0 {
        return Err(out_of_range("a", a, "(0, ∞) for non-integer s"));
    }
    let power = |b: f64| if int_s { b.powi(-(s as i32)) } else { b.powf(-s) };
    let mut acc = Neumaier::new();
    let mut zn = 1.0;
    for n in 0..LERCH_MAX_TERMS {
        let b = n as f64 + a;
        let term = zn * power(b);
        acc.add(term);
        if b > 0.0 {
            // Bound on |t_{m+1}/t_m| for all m ≥ n.
            let r = if s >= 0.0 { z.abs() } else { z.abs() * (b / (b + 1.0)).powf(s) };
            if r < 1.0 {
                let tail = term.abs() * r / (1.0 - r);
                if tail <= 1e-17 * acc.value().abs() || zn == 0.0 {
                    return Ok(acc.value());
                }
            }
        }
        zn *= z;
    }
    Err(Error::NoConvergence(format!("Φ({z}, {s}, {a})")))
}

/// Σ_{n≥0} zⁿ/((n+a)(n+b)) for 0 ≤ z ≤ 1 and a, b > 0.
///
/// At z = 1 this is (ψ(b) − ψ(a))/(b − a), or ψ'(a) when a = b.
pub fn lerch_product_sum(z: f64, a: f64, b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&z) {
        return Err(out_of_range("z", z, "[0, 1]"));
    }
    if !(a > 0.0 && b > 0.0) {
        return Err(out_of_range("a", a.min(b), "(0, ∞)"));
    }
    if z == 1.0 {
        // the difference quotient loses everything once b − a is tiny
        return Ok(if (b - a).abs() < 1e-8 {
            trigamma(0.5 * (a + b))
        } else {
            (digamma(b) - digamma(a)) / (b - a)
        });
    }
    let lo = a.min(b);
    let mut acc = Neumaier::new();
    let mut zn = 1.0;
    for n in 0..LERCH_MAX_TERMS {
        let nf = n as f64;
        acc.add(zn / ((nf + a) * (nf + b)));
        zn *= z;
        let geometric = zn / ((nf + 1.0 + a) * (nf + 1.0 + b) * (1.0 - z));
        let harmonic = zn / (nf + lo);
        if geometric.min(harmonic) <= 1e-17 * acc.value() || zn == 0.0 {
            return Ok(acc.value());
        }
    }
    Err(Error::NoConvergence(format!("Σ zⁿ/((n+a)(n+b)) at z = {z}")))
}

/// Φ(z,1,a) − Φ(z,1,b) = (b−a)·Σ zⁿ/((n+a)(n+b)), also at z = 1.
pub fn lerch_phi_difference(z: f64, a: f64, b: f64) -> Result<f64> {
    Ok((b - a) * lerch_product_sum(z, a, b)?)
}

// ---------------------------------------------------------------- ζ

/// B_{2k}/(2k)! for k = 1, 2, ...
const BERNOULLI_OVER_FACTORIAL: [f64; 15] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
    854_513.0 / 138.0 / 1.124_000_727_777_607_7e21,
    -236_364_091.0 / 2730.0 / 6.204_484_017_332_394e23,
    8_553_103.0 / 6.0 / 4.032_914_611_266_056_4e26,
    -23_749_461_029.0 / 870.0 / 3.048_883_446_117_138_4e29,
    8_615_841_276_005.0 / 14_322.0 / 2.652_528_598_121_910_4e32,
];

/// Second-order Taylor jet in s: value, first and second derivative.
#[derive(Clone, Copy, Debug)]
struct Jet([f64; 3]);

impl Jet {
    fn constant(v: f64) -> Self {
        Jet([v, 0.0, 0.0])
    }

    fn var(v: f64) -> Self {
        Jet([v, 1.0, 0.0])
    }

    fn add(self, o: Jet) -> Jet {
        Jet([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    fn mul(self, o: Jet) -> Jet {
        let [a, b, c] = self.0;
        let [x, y, z] = o.0;
        Jet([a * x, a * y + b * x, a * z + 2.0 * b * y + c * x])
    }

    fn recip(self) -> Jet {
        let [a, b, c] = self.0;
        let inv = 1.0 / a;
        Jet([inv, -b * inv * inv, (2.0 * b * b * inv - c) * inv * inv])
    }

    fn scale(self, k: f64) -> Jet {
        Jet([self.0[0] * k, self.0[1] * k, self.0[2] * k])
    }

    /// n^{−s} with its s-derivatives.
    fn inv_power(n: f64, s: f64) -> Jet {
        let l = n.ln();
        let v = (-s * l).exp();
        Jet([v, -l * v, l * l * v])
    }
}

const EM_CUTOFF: usize = 10;

/// ζ(s), ζ'(s), ζ''(s) for real s ≠ 1 with s > −20, by Euler–Maclaurin.
pub fn zeta_derivs(s: f64) -> Result<[f64; 3]> {
    if !s.is_finite() || s <= -20.0 {
        return Err(out_of_range("s", s, "(-20, ∞)"));
    }
    if (s - 1.0).abs() < 1e-12 {
        return Err(Error::Singular("s = 1".into()));
    }
    let big_n = EM_CUTOFF as f64;
    let mut acc = [Neumaier::new(), Neumaier::new(), Neumaier::new()];
    let mut push = |j: Jet| {
        for (a, v) in acc.iter_mut().zip(j.0) {
            a.add(v);
        }
    };
    for n in 1..EM_CUTOFF {
        push(Jet::inv_power(n as f64, s));
    }
    let sv = Jet::var(s);
    let n_pow = Jet::inv_power(big_n, s);
    // N^{1−s}/(s−1)
    push(n_pow.scale(big_n).mul(sv.add(Jet::constant(-1.0)).recip()));
    push(n_pow.scale(0.5));
    // Σ B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = sv;
    let mut npow = n_pow.scale(1.0 / big_n);
    for (k, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if k > 0 {
            let kk = 2.0 * k as f64;
            rising = rising
                .mul(sv.add(Jet::constant(kk - 1.0)))
                .mul(sv.add(Jet::constant(kk)));
            npow = npow.scale(1.0 / (big_n * big_n));
        }
        let term = rising.mul(npow).scale(b);
        push(term);
        if term.0.iter().all(|v| v.abs() < 1e-18) {
            break;
        }
    }
    Ok([acc[0].value(), acc[1].value(), acc[2].value()])
}

/// ζ(s) for real s ≠ 1, s > −20.
pub fn zeta(s: f64) -> Result<f64> {
    Ok(zeta_derivs(s)?[0])
}

/// ζ'/ζ (order 0) or (ζ'/ζ)' (order 1) on (−1.5, 4) \ {1}.
pub fn zeta_logderiv(s: f64, order: u8) -> Result<f64> {
    if !(s > ZETA_RANGE.0 && s < ZETA_RANGE.1) {
        return Err(out_of_range("s", s, "(-1.5, 4)"));
    }
    let [z, d1, d2] = zeta_derivs(s)?;
    if z == 0.0 {
        return Err(Error::Singular(format!("ζ({s}) = 0")));
    }
    match order {
        0 => Ok(d1 / z),
        1 => Ok((d2 * z - d1 * d1) / (z * z)),
        _ => Err(out_of_range("order", order as f64, "{0, 1}")),
    }
}

// ---------------------------------------------------------- constants

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Constants {
    pub euler_gamma: f64,
    pub zeta_prime_minus1: f64,
    pub log_2pi: f64,
    pub zeta_logderiv_half: f64,
    pub zeta_logderiv_deriv_half: f64,
}

impl Constants {
    pub fn compute() -> Self {
        let zeta_prime_minus1 = zeta_derivs(-1.0).expect("s = -1 is in range")[1];
        Self {
            euler_gamma: EULER_GAMMA,
            zeta_prime_minus1,
            log_2pi: LOG_2PI,
            zeta_logderiv_half: zeta_logderiv(0.5, 0).expect("s = 1/2 is in range"),
            zeta_logderiv_deriv_half: zeta_logderiv(0.5, 1).expect("s = 1/2 is in range"),
        }
    }

    /// Shared, computed once.
    pub fn get() -> &'static Constants {
        static CELL: OnceLock<Constants> = OnceLock::new();
        CELL.get_or_init(Constants::compute)
    }

    /// ζ'/ζ(−1) = −12ζ'(−1), since ζ(−1) = −1/12.
    pub fn zeta_logderiv_minus1(&self) -> f64 {
        -12.0 * self.zeta_prime_minus1
    }

    /// ζ'/ζ(0) = log 2π.
    pub fn zeta_logderiv_zero(&self) -> f64 {
        self.log_2pi
    }
}

// ------------------------------------------------------- misc series

/// Σ_{n≥1} x^{2n}/(2n(2n−1)) = x·artanh(x) + ½log(1−x²) for |x| < 1.
pub fn artanh_series_sum(x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(out_of_range("x", x, "(-1, 1)"));
    }
    if x.abs() <= 0.5 {
        let x2 = x * x;
        let mut p = x2;
        let mut acc = Neumaier::new();
        for n in 1..200 {
            let nf = 2.0 * n as f64;
            let term = p / (nf * (nf - 1.0));
            acc.add(term);
            if term < 1e-18 {
                break;
            }
            p *= x2;
        }
        Ok(acc.value())
    } else {
        Ok(0.5 * (1.0 + x) * x.ln_1p() + 0.5 * (1.0 - x) * (-x).ln_1p())
    }
}
