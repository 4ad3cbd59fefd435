//! Locates the ordinates of the nontrivial zeros of ζ on the critical line.
//!
//! This is a data-preparation tool: it writes the zero table consumed by
//! `zosc`. Hardy's Z-function is evaluated through Euler–Maclaurin summation
//! of ζ(1/2 + it), Gram points bracket the zeros, Rosser blocks are refined
//! until every block holds the expected number of sign changes, and each
//! bracket is polished with Brent's method.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Riemann–Siegel theta function, asymptotic expansion (valid for t ≳ 5).
pub fn theta(t: f64) -> f64 {
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let corr = inv
        * (1.0 / 48.0
            + inv2
                * (7.0 / 5760.0
                    + inv2 * (31.0 / 80640.0 + inv2 * (127.0 / 430080.0 + inv2 * 511.0 / 1216512.0))));
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + corr
}

fn theta_prime(t: f64) -> f64 {
    0.5 * (t / (2.0 * PI)).ln() - 1.0 / (48.0 * t * t)
}

/// Ratio B_{2k+2}/(2k+2)! divided by B_{2k}/(2k)!, for k ≥ 1.
fn bernoulli_ratio(k: usize) -> f64 {
    -zeta_even(k + 1) / (zeta_even(k) * 4.0 * PI * PI)
}

fn zeta_even(k: usize) -> f64 {
    match k {
        1 => PI.powi(2) / 6.0,
        2 => PI.powi(4) / 90.0,
        3 => PI.powi(6) / 945.0,
        4 => PI.powi(8) / 9450.0,
        _ => {
            let s = 2 * k as i32;
            (1..=64).rev().map(|m| (m as f64).powi(-s)).sum()
        }
    }
}

/// Euler–Maclaurin evaluator of ζ(1/2 + it) with cached `ln n`, `n^{-1/2}`.
pub struct CriticalZeta {
    ln: Vec<f64>,
    inv_sqrt: Vec<f64>,
    ratios: Vec<f64>,
}

impl Default for CriticalZeta {
    fn default() -> Self {
        Self::new()
    }
}

impl CriticalZeta {
    pub fn new() -> Self {
        Self {
            ln: vec![0.0],
            inv_sqrt: vec![0.0],
            ratios: (1..=120).map(bernoulli_ratio).collect(),
        }
    }

    fn ensure(&mut self, n: usize) {
        while self.ln.len() <= n {
            let k = self.ln.len() as f64;
            self.ln.push(k.ln());
            self.inv_sqrt.push(1.0 / k.sqrt());
        }
    }

    /// ζ(1/2 + it).
    pub fn eval(&mut self, t: f64) -> Complex64 {
        let n_cut = (1.5 * t.abs() / (2.0 * PI)).ceil() as usize + 40;
        self.ensure(n_cut);
        let s = Complex64::new(0.5, t);

        let mut re = 0.0;
        let mut im = 0.0;
        for n in (1..n_cut).rev() {
            let (sin, cos) = (t * self.ln[n]).sin_cos();
            re += self.inv_sqrt[n] * cos;
            im -= self.inv_sqrt[n] * sin;
        }
        let mut sum = Complex64::new(re, im);

        let big_n = n_cut as f64;
        let n_pow = (-s * self.ln[n_cut]).exp(); // N^{-s}
        sum += n_pow * big_n / (s - 1.0);
        sum += n_pow * 0.5;

        // k = 1 term: B_2/2! · s · N^{-s-1}
        let mut term = n_pow * s / big_n / 12.0;
        sum += term;
        for k in 1..self.ratios.len() {
            let kf = k as f64;
            term = term * (s + 2.0 * kf - 1.0) * (s + 2.0 * kf) / (big_n * big_n) * self.ratios[k - 1];
            sum += term;
            if term.norm() < 1e-17 * sum.norm() {
                break;
            }
        }
        sum
    }

    /// Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it), real for real t.
    pub fn hardy_z(&mut self, t: f64) -> f64 {
        let z = self.eval(t);
        let (sin, cos) = theta(t).sin_cos();
        z.re * cos - z.im * sin
    }
}

/// The n-th Gram point, θ(g_n) = nπ, for n ≥ −1.
pub fn gram_point(n: i64, guess: f64) -> f64 {
    let target = n as f64 * PI;
    let mut g = guess.max(7.0);
    for _ in 0..100 {
        let step = (theta(g) - target) / theta_prime(g);
        g -= step;
        if step.abs() < 1e-13 * g {
            break;
        }
    }
    g
}

fn brent(z: &mut CriticalZeta, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> f64 {
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb == 0.0 {
            return b;
        }
        if (fa > 0.0) == (fb > 0.0) {
            a = c;
            fa = fc;
            d = b - c;
            e = d;
        }
        if fa.abs() < fb.abs() {
            c = b;
            b = a;
            a = c;
            fc = fb;
            fb = fa;
            fa = fc;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 1e-15;
        let m = 0.5 * (a - b);
        if m.abs() <= tol {
            return b;
        }
        if e.abs() >= tol && fc.abs() > fb.abs() {
            let s = fb / fc;
            let (mut p, mut q);
            if c == a {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qq = fc / fa;
                let r = fb / fa;
                p = s * (2.0 * m * qq * (qq - r) - (b - c) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        c = b;
        fc = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = z.hardy_z(b);
    }
    b
}

#[derive(Debug)]
pub struct BlockFailure {
    pub start: f64,
    pub end: f64,
    pub expected: usize,
    pub found: usize,
}

impl std::fmt::Display for BlockFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Rosser block ({}, {}] expected {} sign changes, found {}",
            self.start, self.end, self.expected, self.found
        )
    }
}

impl std::error::Error for BlockFailure {}

/// Returns the first `count` positive ordinates in ascending order.
pub fn first_zeros(count: usize) -> Result<Vec<f64>, BlockFailure> {
    first_zeros_with_progress(count, |_| {})
}

pub fn first_zeros_with_progress(
    count: usize,
    mut progress: impl FnMut(usize),
) -> Result<Vec<f64>, BlockFailure> {
    let mut z = CriticalZeta::new();
    let mut zeros = Vec::with_capacity(count + 8);

    // g_{-1} ≈ 9.667; Z is negative there.
    let mut idx: i64 = -1;
    let mut g = gram_point(-1, 9.7);
    let mut block: Vec<(f64, f64)> = vec![(g, z.hardy_z(g))];
    let mut block_start_idx = idx;

    while zeros.len() < count {
        idx += 1;
        let guess = g + PI / theta_prime(g);
        g = gram_point(idx, guess);
        let zg = z.hardy_z(g);
        block.push((g, zg));
        let good = if idx % 2 == 0 { zg > 0.0 } else { zg < 0.0 };
        if !good {
            continue;
        }
        let expected = (idx - block_start_idx) as usize;
        resolve_block(&mut z, &mut block, expected)?;
        for w in block.windows(2) {
            let ((a, fa), (b, fb)) = (w[0], w[1]);
            if (fa > 0.0) != (fb > 0.0) {
                zeros.push(brent(&mut z, a, b, fa, fb));
            }
        }
        progress(zeros.len());
        let last = *block.last().unwrap();
        block.clear();
        block.push(last);
        block_start_idx = idx;
    }
    zeros.truncate(count);
    Ok(zeros)
}

fn sign_changes(block: &[(f64, f64)]) -> usize {
    block
        .windows(2)
        .filter(|w| (w[0].1 > 0.0) != (w[1].1 > 0.0))
        .count()
}

fn resolve_block(
    z: &mut CriticalZeta,
    block: &mut Vec<(f64, f64)>,
    expected: usize,
) -> Result<(), BlockFailure> {
    for _ in 0..10 {
        let found = sign_changes(block);
        if found == expected {
            return Ok(());
        }
        if found > expected {
            break;
        }
        let mut refined = Vec::with_capacity(2 * block.len());
        for w in block.windows(2) {
            refined.push(w[0]);
            let mid = 0.5 * (w[0].0 + w[1].0);
            refined.push((mid, z.hardy_z(mid)));
        }
        refined.push(*block.last().unwrap());
        *block = refined;
    }
    Err(BlockFailure {
        start: block[0].0,
        end: block.last().unwrap().0,
        expected,
        found: sign_changes(block),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_half_matches_known_value() {
        let mut z = CriticalZeta::new();
        // ζ(1/2) = -1.4603545088095868...
        let v = z.eval(0.0);
        assert!((v.re + 1.460_354_508_809_586_8).abs() < 1e-13, "{v}");
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn hardy_z_is_real_part_of_rotated_zeta() {
        let mut z = CriticalZeta::new();
        for &t in &[20.0, 100.0, 1000.5, 5000.25] {
            let v = z.eval(t);
            let rot = v * Complex64::from_polar(1.0, theta(t));
            assert!(rot.im.abs() < 1e-9, "t={t} imaginary residue {}", rot.im);
        }
    }

    #[test]
    fn first_zeros_match_published_digits() {
        // Reference ordinates (mpmath.zetazero, 20 digits).
        let reference = [
            14.134725141734693790,
            21.022039638771554993,
            25.010857580145688763,
            30.424876125859513210,
            32.935061587739189691,
            37.586178158825671257,
            40.918719012147495187,
            43.327073280914999519,
            48.005150881167159728,
            49.773832477672302182,
        ];
        let zeros = first_zeros(10).unwrap();
        for (got, want) in zeros.iter().zip(reference) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn gram_points_solve_theta() {
        let g0 = gram_point(0, 17.0);
        assert!((g0 - 17.845_599_540_676_7).abs() < 1e-9, "{g0}");
        let gm = gram_point(-1, 9.7);
        assert!((theta(gm) + PI).abs() < 1e-12);
    }
}
