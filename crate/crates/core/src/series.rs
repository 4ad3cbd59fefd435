//! Spectral pairs Π = (Ω, a) and truncated zero sums.
//!
//! A pair stores frequencies ω and coefficients a(ω) and evaluates
//! f_Π(t) = Σ a(ω)e^{−itω}. Pairs built from a zero table use the one-sided
//! frequency set ω = i(ρ − 1/2) = −γ over γ > 0, so that Re f_Π(log X) is the
//! zero sum H(X) or H_ℓ(X) itself (the factor 2 from pairing ρ with ρ̄ sits in
//! the coefficient).

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::sum::{ComplexNeumaier, Neumaier};
use crate::zeros::ZeroTable;

/// Which zero sum a pair represents.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ZetaKind {
    /// H(X) = Σ_ρ X^{ρ−1/2}/(ρ(ρ+1)).
    H,
    /// H_ℓ(X), with real coefficients a(ω) = 2/((1/2−ℓ)² + γ²).
    Hl(f64),
}

impl ZetaKind {
    /// a(ω) at ω = −γ for a zero of multiplicity `m`.
    pub fn coefficient(self, gamma: f64, m: u32) -> Complex64 {
        let m = m as f64;
        match self {
            ZetaKind::H => {
                let rho = Complex64::new(0.5, gamma);
                2.0 * m / (rho * (rho + 1.0))
            }
            ZetaKind::Hl(l) => {
                let d = 0.5 - l;
                Complex64::new(2.0 * m / (d * d + gamma * gamma), 0.0)
            }
        }
    }

    pub fn label(self) -> String {
        match self {
            ZetaKind::H => "H".into(),
            ZetaKind::Hl(l) => format!("H_ell({l})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub omega: Complex64,
    pub coeff: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Truncation {
    pub source: String,
    pub kind: ZetaKind,
    pub n_zeros: usize,
    pub gamma_max: f64,
}

/// Predicates of a pair, always recomputed from its entries.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairFlags {
    pub m1_sum_abs: f64,
    pub satisfies_m2: bool,
    /// sup |Im ω|.
    pub c: f64,
    pub satisfies_m3: bool,
    pub satisfies_s1: bool,
    pub satisfies_s2: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralPair {
    entries: Vec<Entry>,
    flags: PairFlags,
    truncation: Option<Truncation>,
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-12 * a.norm().max(b.norm()).max(1.0)
}

impl SpectralPair {
    /// Entries with equal ω are merged by adding their coefficients.
    pub fn new(entries: impl IntoIterator<Item = (Complex64, Complex64)>) -> Result<Self> {
        let mut merged: Vec<Entry> = Vec::new();
        for (omega, coeff) in entries {
            if !(omega.re.is_finite() && omega.im.is_finite() && coeff.re.is_finite() && coeff.im.is_finite()) {
                return Err(Error::Precondition("non-finite pair entry".into()));
            }
            if omega == Complex64::new(0.0, 0.0) {
                return Err(Error::Precondition("ω = 0 is excluded from Ω".into()));
            }
            match merged.iter_mut().find(|e| e.omega == omega) {
                Some(e) => e.coeff += coeff,
                None => merged.push(Entry { omega, coeff }),
            }
        }
        if merged.is_empty() {
            return Err(Error::Precondition("pair has no entries".into()));
        }
        if let Some(e) = merged.iter().find(|e| e.coeff == Complex64::new(0.0, 0.0)) {
            return Err(Error::Precondition(format!("a(ω) = 0 at ω = {}", e.omega)));
        }
        let flags = Self::compute_flags(&merged);
        Ok(Self {
            entries: merged,
            flags,
            truncation: None,
        })
    }

    /// Real frequencies with real coefficients.
    pub fn from_real(omegas: &[f64], coeffs: &[f64]) -> Result<Self> {
        if omegas.len() != coeffs.len() {
            return Err(Error::Precondition("frequency and coefficient counts differ".into()));
        }
        Self::new(
            omegas
                .iter()
                .zip(coeffs)
                .map(|(&w, &a)| (Complex64::new(w, 0.0), Complex64::new(a, 0.0))),
        )
    }

    fn compute_flags(entries: &[Entry]) -> PairFlags {
        let m1_sum_abs = crate::sum::sum(entries.iter().map(|e| e.coeff.norm()));
        let c = entries.iter().map(|e| e.omega.im.abs()).fold(0.0, f64::max);
        let find = |w: Complex64| entries.iter().find(|e| close(e.omega, w));
        let satisfies_m3 = entries.iter().all(|e| find(e.omega.conj()).is_some());
        let satisfies_s1 = entries
            .iter()
            .all(|e| find(e.omega.conj()).is_some_and(|f| close(f.coeff, e.coeff.conj())));
        let satisfies_s2 = entries
            .iter()
            .all(|e| e.omega.im == 0.0 && e.coeff.im == 0.0 && e.coeff.re > 0.0);
        PairFlags {
            m1_sum_abs,
            satisfies_m2: c.is_finite(),
            c,
            satisfies_m3,
            satisfies_s1,
            satisfies_s2,
        }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn flags(&self) -> &PairFlags {
        &self.flags
    }

    pub fn truncation(&self) -> Option<&Truncation> {
        self.truncation.as_ref()
    }

    /// c_ω = |a(ω)| per entry.
    pub fn magnitudes(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.coeff.norm()).collect()
    }

    /// β_ω = arg a(ω) per entry.
    pub fn phases(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.coeff.arg()).collect()
    }

    pub fn max_abs_frequency(&self) -> f64 {
        self.entries.iter().map(|e| e.omega.norm()).fold(0.0, f64::max)
    }

    /// Σ_ω a(ω) = f_Π(0).
    pub fn coefficient_sum(&self) -> Complex64 {
        crate::sum::sum_complex(self.entries.iter().map(|e| e.coeff))
    }

    /// f_Π(t) = Σ a(ω)e^{−itω}.
    pub fn f_of_t(&self, t: f64) -> Complex64 {
        let mut acc = ComplexNeumaier::new();
        for e in &self.entries {
            acc.add(e.coeff * (Complex64::new(0.0, -t) * e.omega).exp());
        }
        acc.value()
    }

    /// g_Π(t) = Σ a(ω)(e^{−itω} − 1); exactly 0 at t = 0.
    pub fn g_of_t(&self, t: f64) -> Complex64 {
        let mut acc = ComplexNeumaier::new();
        for e in &self.entries {
            acc.add(e.coeff * expm1(Complex64::new(0.0, -t) * e.omega));
        }
        acc.value()
    }

    /// Q_Π(z) = ½[Σ a(ω)(−zω)/(z−ω) + Σ ā(ω)(zω̄)/(z+ω̄)].
    pub fn q_function(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = ComplexNeumaier::new();
        for e in &self.entries {
            let d1 = z - e.omega;
            let d2 = z + e.omega.conj();
            let scale = z.norm().max(e.omega.norm()).max(1.0);
            if d1.norm() <= 1e-14 * scale || d2.norm() <= 1e-14 * scale {
                return Err(Error::Singular(format!("z = {z} hits a pole of Q")));
            }
            acc.add(e.coeff * (-z * e.omega) / d1);
            acc.add(e.coeff.conj() * (z * e.omega.conj()) / d2);
        }
        Ok(0.5 * acc.value())
    }

    /// (1/2πi)∮ Q dz over a circle, by the trapezoid rule.
    pub fn q_residue(&self, center: Complex64, radius: f64, nodes: usize) -> Result<Complex64> {
        let mut acc = ComplexNeumaier::new();
        for k in 0..nodes {
            let w = Complex64::from_polar(radius, 2.0 * PI * k as f64 / nodes as f64);
            acc.add(self.q_function(center + w)? * w);
        }
        Ok(acc.value() / nodes as f64)
    }

    /// Growth of Re g_Π on [0, T].
    pub fn boundedness_probe(&self, t_max: f64, samples: usize) -> Result<BoundednessReport> {
        if samples < 100 {
            return Err(out_of_range("samples", samples as f64, "[100, ∞)"));
        }
        if !(t_max > 0.0) {
            return Err(out_of_range("T", t_max, "(0, ∞)"));
        }
        let step = t_max / (samples - 1) as f64;
        let values: Vec<f64> = (0..samples)
            .into_par_iter()
            .map(|k| self.g_of_t(k as f64 * step).re.abs())
            .collect();
        let mut running = 0.0f64;
        let maxima: Vec<f64> = values
            .iter()
            .map(|&v| {
                running = running.max(v);
                running
            })
            .collect();
        let start = samples / 4;
        let pts: Vec<(f64, f64)> = (start..samples)
            .map(|k| (k as f64 * step, maxima[k].max(1e-300).ln()))
            .collect();
        Ok(BoundednessReport {
            sup_abs_re_g: running,
            growth_exponent_estimate: slope(&pts),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundednessReport {
    pub sup_abs_re_g: f64,
    pub growth_exponent_estimate: f64,
}

/// Least-squares slope.
fn slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = crate::sum::sum(pts.iter().map(|p| p.0)) / n;
    let my = crate::sum::sum(pts.iter().map(|p| p.1)) / n;
    let sxy = crate::sum::sum(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)));
    let sxx = crate::sum::sum(pts.iter().map(|p| (p.0 - mx).powi(2)));
    sxy / sxx
}

/// e^z − 1 without cancellation near z = 0.
pub fn expm1(z: Complex64) -> Complex64 {
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    let em1 = z.re.exp_m1();
    Complex64::new(em1 * c - 2.0 * half * half, (em1 + 1.0) * s)
}

/// Pair (Ω_ζ⁺, a_kind) from the first `n` ordinates of `table`.
pub fn make_zeta_pair(table: &ZeroTable, kind: ZetaKind, n: usize) -> Result<SpectralPair> {
    if n == 0 || n > table.len() {
        return Err(out_of_range("n", n as f64, format!("1..={}", table.len())));
    }
    let entries: Vec<Entry> = table.gammas()[..n]
        .iter()
        .zip(table.multiplicities())
        .map(|(&g, &m)| Entry {
            omega: Complex64::new(-g, 0.0),
            coeff: kind.coefficient(g, m),
        })
        .collect();
    let flags = SpectralPair::compute_flags(&entries);
    Ok(SpectralPair {
        entries,
        flags,
        truncation: Some(Truncation {
            source: table.source().to_string(),
            kind,
            n_zeros: n,
            gamma_max: table.gammas()[n - 1],
        }),
    })
}

/// A value with an explicit bound on what truncation dropped.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TruncatedValue {
    pub value: f64,
    pub tail_bound: f64,
    pub n_used: usize,
    pub gamma_max: f64,
}

/// Bound on Σ|a(γ)| over zeros with γ > T, for |a| ≤ 2/γ².
pub fn tail_bound(t: f64) -> f64 {
    const K: f64 = 2.0;
    const FIRST: f64 = 14.134_725_141_734_693;
    let b = |t: f64| 1.2 * (K / PI) * ((t / (2.0 * PI)).ln() + 1.0) / t;
    if t >= 20.0 {
        b(t)
    } else if t >= FIRST {
        b(20.0)
    } else {
        b(20.0) + 1.2 * K / (FIRST * FIRST)
    }
}

/// Σ_{j≤n} Re[a(γ_j) X^{iγ_j}] with its tail bound.
pub fn h_series(table: &ZeroTable, kind: ZetaKind, x: f64, n: usize) -> Result<TruncatedValue> {
    if !(x >= 1.0) {
        return Err(out_of_range("X", x, "[1, ∞)"));
    }
    if n > table.len() {
        return Err(out_of_range("n", n as f64, format!("0..={}", table.len())));
    }
    let lx = x.ln();
    let mut acc = Neumaier::new();
    for (&g, &m) in table.gammas()[..n].iter().zip(table.multiplicities()) {
        let a = kind.coefficient(g, m);
        let (s, c) = (g * lx).sin_cos();
        acc.add(a.re * c - a.im * s);
    }
    let gamma_max = if n == 0 { 0.0 } else { table.gammas()[n - 1] };
    Ok(TruncatedValue {
        value: acc.value(),
        tail_bound: tail_bound(gamma_max),
        n_used: n,
        gamma_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::FIRST_30;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn table() -> ZeroTable {
        ZeroTable::new(FIRST_30.to_vec(), vec![], "test").unwrap()
    }

    #[test]
    fn zeta_pair_coefficients_and_flags() {
        let t = table();
        let p = make_zeta_pair(&t, ZetaKind::Hl(1.0), 10).unwrap();
        let a1 = p.entries()[0].coeff.re;
        assert!((a1 - 2.0 / (0.25 + FIRST_30[0].powi(2))).abs() < 1e-18);
        assert!((a1 - 0.009_997_977_667_446_279).abs() < 1e-17);
        assert!(p.entries().iter().all(|e| e.coeff.re > 0.0));
        assert!(p.flags().satisfies_s2 && p.flags().satisfies_s1 && p.flags().satisfies_m3);
        let h = make_zeta_pair(&t, ZetaKind::H, 5).unwrap();
        assert!(!h.flags().satisfies_s1);
        assert!(!h.flags().satisfies_s2);
        assert!(make_zeta_pair(&t, ZetaKind::H, 31).is_err());
    }

    #[test]
    fn pair_rejects_zero_entries() {
        assert!(SpectralPair::from_real(&[0.0], &[1.0]).is_err());
        assert!(SpectralPair::from_real(&[1.0], &[0.0]).is_err());
        assert!(SpectralPair::from_real(&[1.0, 1.0], &[1.0, -1.0]).is_err());
        let p = SpectralPair::from_real(&[1.0, 1.0], &[1.0, 2.0]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.entries()[0].coeff, c(3.0, 0.0));
    }

    #[test]
    fn f_and_g_examples() {
        let p = SpectralPair::from_real(&[1.0], &[1.0]).unwrap();
        assert!((p.f_of_t(PI) - c(-1.0, 0.0)).norm() < 1e-15);
        let q = SpectralPair::new([(c(0.0, 1.0), c(1.0, 0.0))]).unwrap();
        assert!((q.g_of_t(1.0) - c(1.0f64.exp() - 1.0, 0.0)).norm() < 1e-15);
        assert_eq!(q.g_of_t(0.0), c(0.0, 0.0));
        let s = SpectralPair::from_real(&[1.0, -1.0, 2.5], &[0.3, 0.3, 0.1]).unwrap();
        assert_eq!(s.f_of_t(0.0), s.coefficient_sum());
        assert!((s.g_of_t(-1.7) - s.g_of_t(1.7).conj()).norm() < 1e-15);
    }

    #[test]
    fn re_f_matches_h_series() {
        let t = table();
        let p = make_zeta_pair(&t, ZetaKind::Hl(1.0), 30).unwrap();
        for &x in &[1.0, 2.5, 17.0, 99.0] {
            let a = p.f_of_t(f64::ln(x)).re;
            let b = h_series(&t, ZetaKind::Hl(1.0), x, 30).unwrap().value;
            assert!((a - b).abs() < 1e-12);
        }
        let p = make_zeta_pair(&t, ZetaKind::H, 30).unwrap();
        let a = p.f_of_t(f64::ln(7.0)).re;
        let b = h_series(&t, ZetaKind::H, 7.0, 30).unwrap().value;
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn empty_truncation() {
        let v = h_series(&table(), ZetaKind::H, 3.0, 0).unwrap();
        assert_eq!(v.value, 0.0);
        assert!(v.tail_bound > 0.0);
        assert!(h_series(&table(), ZetaKind::H, 0.5, 3).is_err());
    }

    #[test]
    fn tail_bound_shrinks() {
        assert!(tail_bound(0.0) > tail_bound(14.2));
        assert!(tail_bound(20.0) > tail_bound(100.0));
        assert!(tail_bound(74_920.827) < 1.5e-4);
    }

    #[test]
    fn h_series_truncations_agree_within_bounds() {
        let t = table();
        for kind in [ZetaKind::H, ZetaKind::Hl(1.0)] {
            for k in 0..100 {
                let x = 100f64.powf(k as f64 / 99.0);
                let a = h_series(&t, kind, x, 10).unwrap();
                let b = h_series(&t, kind, x, 30).unwrap();
                assert!((a.value - b.value).abs() <= a.tail_bound + b.tail_bound);
            }
        }
    }

    #[test]
    fn q_function_single_entry() {
        let p = SpectralPair::from_real(&[2.0], &[1.0]).unwrap();
        let z = c(0.0, 4.0);
        // ½[−2z/(z−2) + 2z/(z+2)] expanded by hand = ½·(−8z)/(z²−4)
        let want = 0.5 * (-8.0 * z) / (z * z - 4.0);
        assert!((p.q_function(z).unwrap() - want).norm() < 1e-15);
        assert!(p.q_function(c(2.0, 0.0)).is_err());
        let big = p.q_function(c(0.0, 1e6)).unwrap();
        assert!(big.is_finite());
    }

    #[test]
    fn q_poles_follow_frequencies() {
        let w = c(3.0, 0.5);
        let p = SpectralPair::new([(w, c(1.0, 0.0))]).unwrap();
        let r = p.q_residue(w, 0.1, 256).unwrap();
        // −½aω² at z = ω
        assert!((r - (-0.5 * w * w)).norm() < 1e-10, "{r}");
        let lower = SpectralPair::new([(c(3.0, -0.5), c(1.0, 0.0)), (c(3.0, 0.5).conj(), c(1.0, 0.0))]).unwrap();
        for center in [c(3.0, 0.5), c(-3.0, 0.5), c(0.0, 1.0)] {
            assert!(lower.q_residue(center, 0.2, 256).unwrap().norm() < 1e-10);
        }
    }

    #[test]
    fn boundedness_examples() {
        let t = table();
        let p = make_zeta_pair(&t, ZetaKind::Hl(1.0), 30).unwrap();
        let r = p.boundedness_probe(1e4, 20_000).unwrap();
        // Re g = Σ a(cos tω − 1) lies in [−2Σa, 0]
        assert!(r.sup_abs_re_g <= 2.0 * p.flags().m1_sum_abs + 1e-9);
        assert!(r.growth_exponent_estimate <= 0.01);
        let grow = SpectralPair::new([(c(1.0, 0.1), c(1.0, 0.0)), (c(1.0, -0.1), c(1.0, 0.0))]).unwrap();
        assert!(grow.flags().satisfies_m3);
        let r = grow.boundedness_probe(80.0, 8001).unwrap();
        assert!((r.growth_exponent_estimate - 0.1).abs() < 0.02, "{}", r.growth_exponent_estimate);
        assert!(p.boundedness_probe(10.0, 99).is_err());
    }

    proptest! {
        #[test]
        fn screw_kernel_from_g_is_hermitian(
            t in -20.0f64..20.0, u in -20.0f64..20.0,
            w in proptest::collection::vec((0.1f64..5.0, -0.3f64..0.3, 0.01f64..1.0, -1.0f64..1.0), 1..6)
        ) {
            // conjugate-closed frequencies carrying conjugate coefficients
            let mut entries = Vec::new();
            for (re_w, im_w, re, im) in w {
                if im_w == 0.0 {
                    entries.push((c(re_w, 0.0), c(re, 0.0)));
                } else {
                    entries.push((c(re_w, im_w), c(re, im)));
                    entries.push((c(re_w, -im_w), c(re, -im)));
                }
            }
            let p = SpectralPair::new(entries).unwrap();
            prop_assert!(p.flags().satisfies_s1 && p.flags().satisfies_m3);
            let g = |s: f64| p.g_of_t(s);
            let k = |a: f64, b: f64| g(a - b) - g(a) - g(-b) + g(0.0);
            let scale = 1.0 + k(t, u).norm();
            prop_assert!((k(u, t) - k(t, u).conj()).norm() < 1e-12 * scale);
        }
    }
}
