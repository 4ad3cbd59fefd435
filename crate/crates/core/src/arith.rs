//! Von Mangoldt tables, Chebyshev sums and the Goldbach convolution
//! r₂(n) = Σ_{m+k=n} Λ(m)Λ(k).

use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{out_of_range, Error, Result};
use crate::sum::Neumaier;

/// Largest `n_max` for which the r₂ convolution is built.
pub const R2_CAP: usize = 2_000_000;

#[derive(Clone, Debug)]
pub struct ArithTables {
    n_max: usize,
    lambda: Vec<f64>,
    psi: Vec<f64>,
    psi_n: Vec<f64>,
    psi_inv: Vec<f64>,
    r2: Option<Vec<f64>>,
}

/// Λ(n) for 0 ≤ n ≤ n_max by a linear sieve; Λ(0) = Λ(1) = 0.
pub fn von_mangoldt(n_max: usize) -> Vec<f64> {
    let mut lambda = vec![0.0; n_max + 1];
    let mut smallest = vec![0u32; n_max + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=n_max {
        if smallest[i] == 0 {
            smallest[i] = i as u32;
            primes.push(i as u32);
        }
        let si = smallest[i];
        for &p in &primes {
            let m = i * p as usize;
            if p > si || m > n_max {
                break;
            }
            smallest[m] = p;
        }
    }
    for n in 2..=n_max {
        let p = smallest[n] as usize;
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        if m == 1 {
            lambda[n] = (p as f64).ln();
        }
    }
    lambda
}

/// `Some((p, k))` when n = p^k with p prime, k ≥ 1; exact trial division.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 0;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((n, 1));
    }
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn prefix(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut acc = Neumaier::new();
    values
        .map(|v| {
            acc.add(v);
            acc.value()
        })
        .collect()
}

/// Self-convolution of Λ by a zero-padded FFT.
fn convolve_lambda(lambda: &[f64]) -> Vec<f64> {
    let n = lambda.len();
    let len = (2 * n).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(len);
    let inv = planner.plan_fft_inverse(len);
    let mut buf: Vec<Complex<f64>> = lambda
        .iter()
        .map(|&x| Complex::new(x, 0.0))
        .chain(std::iter::repeat(Complex::new(0.0, 0.0)))
        .take(len)
        .collect();
    fwd.process(&mut buf);
    for z in buf.iter_mut() {
        *z = *z * *z;
    }
    inv.process(&mut buf);
    let scale = 1.0 / len as f64;
    let mut r2: Vec<f64> = buf[..n].iter().map(|z| (z.re * scale).max(0.0)).collect();
    for v in r2.iter_mut().take(4) {
        *v = 0.0;
    }
    r2
}

impl ArithTables {
    pub fn build(n_max: usize, with_r2: bool) -> Result<Self> {
        if n_max < 2 {
            return Err(out_of_range("n_max", n_max as f64, "[2, ∞)"));
        }
        if with_r2 && n_max > R2_CAP {
            return Err(out_of_range("n_max", n_max as f64, format!("[2, {R2_CAP}] with r2")));
        }
        let lambda = von_mangoldt(n_max);
        let psi = prefix(lambda.iter().copied());
        let psi_n = prefix(lambda.iter().enumerate().map(|(n, l)| n as f64 * l));
        let psi_inv = prefix(
            lambda
                .iter()
                .enumerate()
                .map(|(n, l)| if n == 0 { 0.0 } else { l / n as f64 }),
        );
        let r2 = with_r2.then(|| convolve_lambda(&lambda));
        Ok(Self {
            n_max,
            lambda,
            psi,
            psi_n,
            psi_inv,
            r2,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Λ(n) for 0 ≤ n ≤ n_max.
    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    /// r₂(n) for 0 ≤ n ≤ n_max, when built.
    pub fn r2(&self) -> Option<&[f64]> {
        self.r2.as_deref()
    }

    fn floor_index(&self, x: f64) -> Result<usize> {
        if !(x >= 0.0) || x > self.n_max as f64 {
            return Err(out_of_range("X", x, format!("[0, {}]", self.n_max)));
        }
        Ok(x.floor() as usize)
    }

    /// ψ(X) = Σ_{n≤X} Λ(n).
    pub fn psi(&self, x: f64) -> Result<f64> {
        Ok(self.psi[self.floor_index(x)?])
    }

    /// Σ_{n≤X} n·Λ(n).
    pub fn psi_weighted_n(&self, x: f64) -> Result<f64> {
        Ok(self.psi_n[self.floor_index(x)?])
    }

    /// Σ_{n≤X} Λ(n)/n.
    pub fn psi_weighted_inv(&self, x: f64) -> Result<f64> {
        Ok(self.psi_inv[self.floor_index(x)?])
    }

    /// Σ_{n≤X} w(n)Λ(n), halving the last term when X is a prime power.
    pub fn primed_sum(&self, weight: impl Fn(usize) -> f64, x: f64) -> Result<f64> {
        let top = self.floor_index(x)?;
        let mut acc = Neumaier::new();
        for n in 2..=top {
            let l = self.lambda[n];
            if l != 0.0 {
                acc.add(weight(n) * l);
            }
        }
        if x == top as f64 {
            if let Some((p, _)) = prime_power(top as u64) {
                acc.add(-0.5 * weight(top) * (p as f64).ln());
            }
        }
        Ok(acc.value())
    }

    /// Σ_{n≤X} r₂(n) as Σ_{m≤X−2} Λ(m)ψ(X−m), independent of the r₂ array.
    pub fn goldbach_prefix(&self, x: usize) -> Result<f64> {
        if x > self.n_max {
            return Err(out_of_range("X", x as f64, format!("[0, {}]", self.n_max)));
        }
        let mut acc = Neumaier::new();
        for m in 2..=x.saturating_sub(2) {
            let l = self.lambda[m];
            if l != 0.0 {
                acc.add(l * self.psi[x - m]);
            }
        }
        Ok(acc.value())
    }

    /// Checks the sieve against trial division and the ψ bounds.
    pub fn self_check(&self) -> Result<()> {
        for n in 0..=self.n_max.min(10_000) {
            let want = prime_power(n as u64).map_or(0.0, |(p, _)| (p as f64).ln());
            if self.lambda[n] != want {
                return Err(Error::Precondition(format!("Λ({n}) = {} but trial division gives {want}", self.lambda[n])));
            }
        }
        if self.psi.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Precondition("ψ prefix decreases".into()));
        }
        if self.n_max >= 10_000 {
            let ratio = self.psi[self.n_max] / self.n_max as f64;
            if !(0.9..=1.1).contains(&ratio) {
                return Err(Error::Precondition(format!("ψ(n_max)/n_max = {ratio}")));
            }
        }
        if let Some(r2) = &self.r2 {
            if r2.iter().any(|&v| v < 0.0) || r2[..4].iter().any(|&v| v != 0.0) {
                return Err(Error::Precondition("r2 sign/low-index invariant broken".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const L2: f64 = std::f64::consts::LN_2;

    fn l3() -> f64 {
        3f64.ln()
    }

    fn direct_r2(lambda: &[f64], n: usize) -> f64 {
        (0..=n).map(|m| lambda[m] * lambda[n - m]).sum()
    }

    #[test]
    fn lambda_values() {
        let t = ArithTables::build(100, false).unwrap();
        assert_eq!(t.lambda()[8], L2);
        assert_eq!(t.lambda()[12], 0.0);
        assert_eq!(t.lambda()[1], 0.0);
        assert_eq!(t.lambda()[97], 97f64.ln());
        t.self_check().unwrap();
    }

    #[test]
    fn psi_values() {
        let t = ArithTables::build(100, false).unwrap();
        let want = 3.0 * L2 + 2.0 * l3() + 5f64.ln() + 7f64.ln();
        assert!((t.psi(10.0).unwrap() - want).abs() < 1e-14);
        assert!((want - 7.832014).abs() < 1e-6);
        assert_eq!(t.psi(1.5).unwrap(), 0.0);
        assert!((t.psi(4.0).unwrap() - 2.484907).abs() < 1e-6);
        assert!(t.psi(101.0).is_err());
    }

    #[test]
    fn primed_sum_halves_prime_powers() {
        let t = ArithTables::build(100, false).unwrap();
        let v4 = t.primed_sum(|_| 1.0, 4.0).unwrap();
        assert!((v4 - (L2 + l3() + L2 / 2.0)).abs() < 1e-14);
        assert!((v4 - 2.138333).abs() < 1e-6);
        let v6 = t.primed_sum(|_| 1.0, 6.0).unwrap();
        assert!((v6 - (2.0 * L2 + l3() + 5f64.ln())).abs() < 1e-14);
        assert_eq!(t.primed_sum(|_| 1.0, 1.0).unwrap(), 0.0);
        let v45 = t.primed_sum(|_| 1.0, 4.5).unwrap();
        assert!((v45 - t.psi(4.0).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn r2_small_values() {
        let t = ArithTables::build(1000, true).unwrap();
        let r2 = t.r2().unwrap();
        assert!((r2[5] - 2.0 * L2 * l3()).abs() < 1e-12);
        assert!((r2[5] - 1.523000).abs() < 1e-6);
        assert_eq!(&r2[..4], &[0.0; 4]);
        assert!((r2[4] - L2 * L2).abs() < 1e-12);
    }

    #[test]
    fn goldbach_prefix_examples() {
        let t = ArithTables::build(100, false).unwrap();
        assert!((t.goldbach_prefix(4).unwrap() - L2 * L2).abs() < 1e-14);
        assert!((t.goldbach_prefix(4).unwrap() - 0.480453).abs() < 1e-6);
        assert_eq!(t.goldbach_prefix(3).unwrap(), 0.0);
        let want6 = L2 * L2 + 2.0 * L2 * l3() + l3() * l3() + 2.0 * L2 * L2;
        assert!((t.goldbach_prefix(6).unwrap() - want6).abs() < 1e-13);
    }

    #[test]
    fn fft_matches_direct_convolution() {
        let t = ArithTables::build(5000, true).unwrap();
        let r2 = t.r2().unwrap();
        let mut run_fft = Neumaier::new();
        let mut run_direct = Neumaier::new();
        for n in 0..=5000 {
            let d = direct_r2(t.lambda(), n);
            assert!((r2[n] - d).abs() < 1e-8, "n={n}: {} vs {d}", r2[n]);
            run_fft.add(r2[n]);
            run_direct.add(d);
            if n % 997 == 0 && n >= 4 {
                let gp = t.goldbach_prefix(n).unwrap();
                assert!((gp - run_fft.value()).abs() <= 1e-6 * gp);
                assert!((gp - run_direct.value()).abs() <= 1e-6 * gp);
            }
        }
    }

    #[test]
    fn psi_minus_x_oscillates() {
        let t = ArithTables::build(10_000, false).unwrap();
        let signs: Vec<bool> = (2..=10_000).map(|n| t.psi(n as f64).unwrap() > n as f64).collect();
        assert!(signs.iter().any(|&s| s) && signs.iter().any(|&s| !s));
        t.self_check().unwrap();
    }

    #[test]
    fn out_of_range_builds() {
        assert!(ArithTables::build(1, false).is_err());
        assert!(ArithTables::build(R2_CAP + 1, true).is_err());
    }

    proptest! {
        #[test]
        fn prime_power_detection_agrees_with_sieve(n in 0u64..20_000) {
            let lambda = von_mangoldt(20_000);
            let expect = prime_power(n).map_or(0.0, |(p, _)| (p as f64).ln());
            prop_assert_eq!(lambda[n as usize], expect);
        }
    }
}
