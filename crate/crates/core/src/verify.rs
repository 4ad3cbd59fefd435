//! Empirical checks of the value distribution of f_Π, of the point-mass
//! formula for exp(y·g_Π), and of the screw (nonnegative-definiteness)
//! property of g_Π.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::ArithTables;
use crate::error::{out_of_range, Error, Result};
use crate::explicit::explicit_h1;
use crate::mfunction::MFunctionDensity;
use crate::series::{expm1, SpectralPair};
use crate::specfun::{self, Constants};
use crate::sum::{ComplexNeumaier, Neumaier};

/// Largest number of time samples a flow may take.
pub const SAMPLE_CAP: u64 = 100_000_000;
/// Bins of the reported histogram.
pub const HISTOGRAM_BINS: usize = 201;
/// Each reported bin is split this many times for CDF comparisons.
const REFINE: usize = 20;
const CHUNK: u64 = 1 << 18;
/// Largest Gram matrix.
pub const MAX_POINTS: usize = 200;

/// Largest step that resolves the fastest oscillation.
pub fn max_step(pair: &SpectralPair) -> f64 {
    0.05 / pair.max_abs_frequency()
}

fn check_flow(pair: &SpectralPair, t_max: f64, dt: f64) -> Result<u64> {
    let limit = max_step(pair);
    if !(dt > 0.0) || dt > limit * (1.0 + 1e-12) {
        return Err(out_of_range("dt", dt, format!("(0, {limit}]")));
    }
    if !(t_max >= 1e4 * dt) || !t_max.is_finite() {
        return Err(out_of_range("T", t_max, format!("[{}, ∞)", 1e4 * dt)));
    }
    let n = (t_max / dt).floor() as u64;
    if n > SAMPLE_CAP {
        return Err(Error::ResourceCap {
            requested: n,
            cap: SAMPLE_CAP,
        });
    }
    Ok(n)
}

/// Runs `visit` on Re f_Π(k·dt), k = 0..n, in fixed chunks. Each chunk
/// restarts the rotation e^{−i dt ω} from an exact value, and chunk results
/// are merged in index order, so the outcome does not depend on the thread
/// count.
fn flow_fold<A, I, V, M>(pair: &SpectralPair, n: u64, dt: f64, init: I, visit: V, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, f64) + Sync,
    M: Fn(&mut A, A),
{
    let entries = pair.entries();
    let steps: Vec<Complex64> = entries
        .iter()
        .map(|e| (Complex64::new(0.0, -dt) * e.omega).exp())
        .collect();
    let chunks = n.div_ceil(CHUNK);
    let parts: Vec<A> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(n);
            let t0 = start as f64 * dt;
            let mut z: Vec<Complex64> = entries
                .iter()
                .map(|e| e.coeff * (Complex64::new(0.0, -t0) * e.omega).exp())
                .collect();
            let mut acc = init();
            for _ in start..end {
                let mut re = 0.0;
                for (zi, ri) in z.iter_mut().zip(&steps) {
                    re += zi.re;
                    *zi *= ri;
                }
                visit(&mut acc, re);
            }
            acc
        })
        .collect();
    let mut total = init();
    for p in parts {
        merge(&mut total, p);
    }
    total
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmpiricalDistribution {
    pub t_max: f64,
    pub dt: f64,
    pub samples: u64,
    /// Σ c_ω.
    pub support_radius: f64,
    /// `HISTOGRAM_BINS + 1` edges spanning ±1.05·Σc.
    pub edges: Vec<f64>,
    pub masses: Vec<f64>,
    pub min_sample: f64,
    pub max_sample: f64,
    #[serde(skip)]
    fine_counts: Vec<u64>,
}

struct FlowStats {
    counts: Vec<u64>,
    min: f64,
    max: f64,
}

/// Samples Re f_Π(t) on the grid t = k·dt in [0, T) and bins the values.
pub fn sample_flow(pair: &SpectralPair, t_max: f64, dt: f64) -> Result<EmpiricalDistribution> {
    let n = check_flow(pair, t_max, dt)?;
    let support = pair.flags().m1_sum_abs;
    let span = 1.05 * support;
    let fine = HISTOGRAM_BINS * REFINE;
    let scale = fine as f64 / (2.0 * span);
    let stats = flow_fold(
        pair,
        n,
        dt,
        || FlowStats {
            counts: vec![0; fine],
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
        },
        |s, v| {
            let k = ((v + span) * scale).floor().clamp(0.0, (fine - 1) as f64) as usize;
            s.counts[k] += 1;
            s.min = s.min.min(v);
            s.max = s.max.max(v);
        },
        |a, b| {
            for (x, y) in a.counts.iter_mut().zip(&b.counts) {
                *x += y;
            }
            a.min = a.min.min(b.min);
            a.max = a.max.max(b.max);
        },
    );
    let edges = (0..=HISTOGRAM_BINS)
        .map(|k| -span + 2.0 * span * k as f64 / HISTOGRAM_BINS as f64)
        .collect();
    let masses = stats
        .counts
        .chunks(REFINE)
        .map(|c| c.iter().sum::<u64>() as f64 / n as f64)
        .collect();
    Ok(EmpiricalDistribution {
        t_max,
        dt,
        samples: n,
        support_radius: support,
        edges,
        masses,
        min_sample: stats.min,
        max_sample: stats.max,
        fine_counts: stats.counts,
    })
}

impl EmpiricalDistribution {
    fn fine_edges(&self) -> impl Iterator<Item = f64> + '_ {
        let span = 1.05 * self.support_radius;
        let fine = self.fine_counts.len();
        (0..=fine).map(move |k| -span + 2.0 * span * k as f64 / fine as f64)
    }

    /// Largest distance between the empirical CDF and `cdf` over the fine bin edges.
    pub fn cdf_distance(&self, cdf: impl Fn(f64) -> f64) -> f64 {
        let mut seen = 0u64;
        let mut worst: f64 = 0.0;
        for (k, x) in self.fine_edges().enumerate() {
            let emp = seen as f64 / self.samples as f64;
            worst = worst.max((emp - cdf(x)).abs());
            if k < self.fine_counts.len() {
                seen += self.fine_counts[k];
            }
        }
        worst
    }

    /// Sup distance to the CDF of an inverted density.
    pub fn cdf_distance_to(&self, density: &MFunctionDensity) -> f64 {
        let cdf = density.cdf();
        let u = &density.u_grid;
        let total = *cdf.last().unwrap();
        self.cdf_distance(|x| {
            if x <= u[0] {
                0.0
            } else if x >= u[u.len() - 1] {
                total
            } else {
                let h = u[1] - u[0];
                let j = (((x - u[0]) / h).floor() as usize).min(u.len() - 2);
                let w = (x - u[j]) / h;
                cdf[j] + w * (cdf[j + 1] - cdf[j])
            }
        })
    }
}

/// Sup-CDF distance between the flow of `pair` over [0, T) and `density`.
pub fn distribution_check(pair: &SpectralPair, density: &MFunctionDensity, t_max: f64) -> Result<f64> {
    if pair.len() < crate::mfunction::MIN_ENTRIES {
        return Err(Error::Precondition("distribution check needs at least 5 entries".into()));
    }
    if density.entries != pair.len() {
        return Err(Error::Precondition("density was built from a different pair".into()));
    }
    let emp = sample_flow(pair, t_max, max_step(pair))?;
    Ok(emp.cdf_distance_to(density))
}

fn require_s2(pair: &SpectralPair) -> Result<f64> {
    if !pair.flags().satisfies_s2 {
        return Err(Error::Precondition(
            "pair needs a real spectrum with positive coefficients".into(),
        ));
    }
    Ok(pair.coefficient_sum().re)
}

/// exp(−y f_Π(0)) ∏ I₀(y c_ω), the mass of exp(y g_Π)'s law at the origin.
pub fn point_mass(pair: &SpectralPair, y: f64) -> Result<f64> {
    let f0 = require_s2(pair)?;
    if !(y >= 0.0) || !y.is_finite() {
        return Err(out_of_range("y", y, "[0, ∞)"));
    }
    if y == 0.0 {
        return Ok(1.0);
    }
    let log = crate::sum::sum(pair.magnitudes().iter().map(|&c| specfun::ln_i0(y * c))) - y * f0;
    let v = log.exp();
    if !v.is_finite() {
        return Err(out_of_range("y", y, "values with finite point mass"));
    }
    Ok(v)
}

/// exp(−y f_Π(0)) times the time average of exp(y Re f_Π(t)).
pub fn point_mass_empirical(pair: &SpectralPair, y: f64, t_max: f64, dt: f64) -> Result<f64> {
    let f0 = require_s2(pair)?;
    if !(y >= 0.0) || !y.is_finite() {
        return Err(out_of_range("y", y, "[0, ∞)"));
    }
    let n = check_flow(pair, t_max, dt)?;
    if y == 0.0 {
        return Ok(1.0);
    }
    let acc = flow_fold(
        pair,
        n,
        dt,
        Neumaier::new,
        |a, v| a.add((y * (v - f0)).exp()),
        |a, b| a.merge(&b),
    );
    Ok(acc.value() / n as f64)
}

/// A function g with g(−t) = conj g(t) whose kernel is tested for
/// nonnegative definiteness.
pub trait ScrewFunction: Sync {
    fn g(&self, t: f64) -> Result<Complex64>;
}

impl ScrewFunction for SpectralPair {
    fn g(&self, t: f64) -> Result<Complex64> {
        Ok(self.g_of_t(t))
    }
}

/// g(t) = H₁(e^t) − H₁(1) from the zero-free formula, using H₁(1/X) = H₁(X).
pub struct ExactH1Screw<'a> {
    tables: &'a ArithTables,
    consts: &'a Constants,
    h1_at_one: f64,
}

impl<'a> ExactH1Screw<'a> {
    pub fn new(tables: &'a ArithTables, consts: &'a Constants) -> Result<Self> {
        let h1_at_one = explicit_h1(tables, consts, 1.0)?.value;
        Ok(Self {
            tables,
            consts,
            h1_at_one,
        })
    }

    /// Points in [−L, L] keep every difference within the arithmetic tables.
    pub fn half_range(&self) -> f64 {
        0.49 * (self.tables.n_max() as f64).ln()
    }
}

impl ScrewFunction for ExactH1Screw<'_> {
    fn g(&self, t: f64) -> Result<Complex64> {
        let v = explicit_h1(self.tables, self.consts, t.abs().exp())?.value;
        Ok(Complex64::new(v - self.h1_at_one, 0.0))
    }
}

/// G(t, u) = g(t − u) − g(t) − g(−u) + g(0).
pub fn kernel_of(g: &dyn ScrewFunction, t: f64, u: f64) -> Result<Complex64> {
    Ok(g.g(t - u)? - g.g(t)? - g.g(-u)? + g.g(0.0)?)
}

/// The screw kernel of a pair, through g_Π.
pub fn screw_kernel(pair: &SpectralPair, t: f64, u: f64) -> Complex64 {
    pair.g_of_t(t - u) - pair.g_of_t(t) - pair.g_of_t(-u) + pair.g_of_t(0.0)
}

/// Σ a(ω)(e^{−itω} − 1)(e^{iuω} − 1).
pub fn screw_kernel_direct(pair: &SpectralPair, t: f64, u: f64) -> Complex64 {
    let mut acc = ComplexNeumaier::new();
    for e in pair.entries() {
        let a = expm1(Complex64::new(0.0, -t) * e.omega);
        let b = expm1(Complex64::new(0.0, u) * e.omega);
        acc.add(e.coeff * a * b);
    }
    acc.value()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramReport {
    pub points: Vec<f64>,
    pub min_eigenvalue: f64,
    /// Largest |eigenvalue|.
    pub matrix_norm: f64,
    pub tol: f64,
    pub psd: bool,
}

fn check_points(points: &[f64]) -> Result<()> {
    if points.is_empty() || points.len() > MAX_POINTS {
        return Err(out_of_range("point count", points.len() as f64, format!("[1, {MAX_POINTS}]")));
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(f64::total_cmp);
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Precondition(format!("duplicate point {}", w[0])));
    }
    if let Some(p) = points.iter().find(|p| !p.is_finite()) {
        return Err(Error::Precondition(format!("non-finite point {p}")));
    }
    Ok(())
}

/// The matrix G(t_i, t_j).
pub fn gram_matrix(g: &dyn ScrewFunction, points: &[f64]) -> Result<DMatrix<Complex64>> {
    check_points(points)?;
    let n = points.len();
    let rows: Vec<Vec<Complex64>> = points
        .par_iter()
        .map(|&t| points.iter().map(|&u| kernel_of(g, t, u)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

/// Minimum eigenvalue of the Gram matrix; psd when it is ≥ −tol·‖G‖.
pub fn gram_psd_check(g: &dyn ScrewFunction, points: &[f64], tol: f64) -> Result<GramReport> {
    let m = gram_matrix(g, points)?;
    let herm = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.try_symmetric_eigen(1e-15, 10_000).ok_or_else(|| {
        Error::Eigen(format!("no convergence for a {}×{} Gram matrix", points.len(), points.len()))
    })?;
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let norm = eig.eigenvalues.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if !min.is_finite() {
        return Err(Error::Eigen("non-finite eigenvalue".into()));
    }
    Ok(GramReport {
        points: points.to_vec(),
        min_eigenvalue: min,
        matrix_norm: norm,
        tol,
        psd: min >= -tol * norm,
    })
}

/// Σ_{ij} ξ_i G(t_i, t_j) conj ξ_j and Σ a(ω)|Σ_i (e^{−it_iω} − 1)ξ_i|².
pub fn quadratic_form(pair: &SpectralPair, points: &[f64], xi: &[Complex64]) -> Result<(Complex64, f64)> {
    check_points(points)?;
    if !pair.flags().satisfies_s2 {
        return Err(Error::Precondition("identity needs a real spectrum with positive coefficients".into()));
    }
    if xi.len() != points.len() {
        return Err(Error::Precondition("ξ and point counts differ".into()));
    }
    let mut lhs = ComplexNeumaier::new();
    for (i, &t) in points.iter().enumerate() {
        for (j, &u) in points.iter().enumerate() {
            lhs.add(xi[i] * screw_kernel(pair, t, u) * xi[j].conj());
        }
    }
    let mut rhs = ComplexNeumaier::new();
    for e in pair.entries() {
        let mut inner = ComplexNeumaier::new();
        for (&t, x) in points.iter().zip(xi) {
            inner.add(expm1(Complex64::new(0.0, -t) * e.omega) * x);
        }
        rhs.add(e.coeff * inner.value().norm_sqr());
    }
    Ok((lhs.value(), rhs.value().re))
}

/// `n` distinct uniform points in [−half_range, half_range].
pub fn random_points(rng: &mut ChaCha8Rng, n: usize, half_range: f64) -> Vec<f64> {
    let mut pts: Vec<f64> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = rng.random_range(-half_range..=half_range);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViolationSearch {
    pub seed: u64,
    pub budget: usize,
    pub set_size: usize,
    pub half_range: f64,
    /// 1-based index of the first set that failed the PSD test.
    pub found_at: Option<usize>,
    /// Smallest min_eigenvalue/‖G‖ seen.
    pub worst_ratio: f64,
}

/// Tries up to `budget` random point sets, stopping at the first PSD failure.
pub fn search_psd_violation(
    g: &dyn ScrewFunction,
    budget: usize,
    set_size: usize,
    half_range: f64,
    tol: f64,
    seed: u64,
) -> Result<ViolationSearch> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    for k in 1..=budget {
        let pts = random_points(&mut rng, set_size, half_range);
        let r = gram_psd_check(g, &pts, tol)?;
        worst = worst.min(r.min_eigenvalue / r.matrix_norm.max(f64::MIN_POSITIVE));
        if !r.psd {
            return Ok(ViolationSearch {
                seed,
                budget,
                set_size,
                half_range,
                found_at: Some(k),
                worst_ratio: worst,
            });
        }
    }
    Ok(ViolationSearch {
        seed,
        budget,
        set_size,
        half_range,
        found_at: None,
        worst_ratio: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mfunction::{invert_to_m_re, UGrid};
    use crate::series::{make_zeta_pair, ZetaKind};
    use crate::zeros::{ZeroTable, FIRST_30};
    use proptest::prelude::*;
    use rand::Rng;
    use std::f64::consts::PI;

    fn lic_pair() -> SpectralPair {
        let w: Vec<f64> = [1.0f64, 2.0, 3.0, 5.0, 7.0, 11.0].iter().map(|v| v.sqrt()).collect();
        SpectralPair::from_real(&w, &[1.0; 6]).unwrap()
    }

    fn single() -> SpectralPair {
        SpectralPair::from_real(&[1.0], &[1.0]).unwrap()
    }

    #[test]
    fn arcsine_law() {
        let d = sample_flow(&single(), 1e4, 0.05).unwrap();
        let dist = d.cdf_distance(|x| {
            if x <= -1.0 {
                0.0
            } else if x >= 1.0 {
                1.0
            } else {
                1.0 - x.acos() / PI
            }
        });
        assert!(dist < 0.01, "{dist}");
        assert!((d.masses.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(d.masses.len(), HISTOGRAM_BINS);
    }

    #[test]
    fn flow_preconditions() {
        let p = single();
        assert!(sample_flow(&p, 1e4, 0.1).is_err());
        assert!(sample_flow(&p, 10.0, 0.05).is_err());
        assert!(matches!(sample_flow(&p, 1e7, 0.05), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn zeta_samples_stay_in_support() {
        let t = ZeroTable::new(FIRST_30.to_vec(), vec![], "t").unwrap();
        let p = make_zeta_pair(&t, ZetaKind::Hl(1.0), 30).unwrap();
        let d = sample_flow(&p, 2e4, max_step(&p)).unwrap();
        assert!(d.max_sample <= d.support_radius && d.min_sample >= -d.support_radius);
    }

    #[test]
    fn lic_pair_matches_density() {
        let p = lic_pair();
        let dens = invert_to_m_re(&p, UGrid::default()).unwrap();
        let dist = distribution_check(&p, &dens, 2e5).unwrap();
        assert!(dist < 0.02, "{dist}");
    }

    #[test]
    fn point_mass_examples() {
        let s = single();
        assert_eq!(point_mass(&s, 0.0).unwrap(), 1.0);
        let want = (-1.0f64).exp() * 1.266_065_877_752_008;
        assert!((point_mass(&s, 1.0).unwrap() - want).abs() < 1e-12);
        let emp = point_mass_empirical(&s, 1.0, 2e4, 0.05).unwrap();
        assert!((emp / want - 1.0).abs() < 0.01, "{emp}");
        assert_eq!(point_mass_empirical(&s, 0.0, 2e4, 0.05).unwrap(), 1.0);
        assert!(point_mass(&s, 1e-9).unwrap() > 1.0 - 1e-8);
    }

    #[test]
    fn point_mass_needs_positive_spectrum() {
        let t = ZeroTable::new(FIRST_30.to_vec(), vec![], "t").unwrap();
        let h = make_zeta_pair(&t, ZetaKind::H, 30).unwrap();
        assert!(point_mass(&h, 1.0).is_err());
        let neg = SpectralPair::from_real(&[1.0, 2.0], &[1.0, -1.0]).unwrap();
        assert!(point_mass(&neg, 1.0).is_err());
    }

    #[test]
    fn kernel_examples() {
        let s = single();
        assert_eq!(screw_kernel(&s, 0.0, 0.7), Complex64::new(0.0, 0.0));
        assert!(screw_kernel(&s, 0.7, 0.0).norm() < 1e-15);
        let v = screw_kernel(&s, PI, PI);
        assert!((v - 4.0).norm() < 1e-12, "{v}");
    }

    #[test]
    fn hermitian_kernel_for_zeta_pair() {
        let t = ZeroTable::new(FIRST_30.to_vec(), vec![], "t").unwrap();
        let q = make_zeta_pair(&t, ZetaKind::Hl(1.0), 30).unwrap();
        let a = screw_kernel(&q, 1.3, -0.4);
        let b = screw_kernel(&q, -0.4, 1.3);
        assert!((a - b.conj()).norm() < 1e-14);
    }

    #[test]
    fn zeta_pair_gram_is_psd() {
        let t = ZeroTable::new(FIRST_30.to_vec(), vec![], "t").unwrap();
        let p = make_zeta_pair(&t, ZetaKind::Hl(1.0), 30).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts = random_points(&mut rng, 40, 50.0);
        let r = gram_psd_check(&p, &pts, 1e-8).unwrap();
        assert!(r.min_eigenvalue >= -1e-10 * r.matrix_norm, "{r:?}");
    }

    #[test]
    fn negative_control_is_caught() {
        let w: Vec<f64> = [1.0f64, 2.0, 3.0, 5.0, 7.0, 11.0].iter().map(|v| v.sqrt()).collect();
        let p = SpectralPair::from_real(&w, &[1.0, 1.0, 1.0, 1.0, 1.0, -1.0]).unwrap();
        let s = search_psd_violation(&p, 200, 20, 50.0, 1e-8, 1).unwrap();
        assert!(s.found_at.is_some());
        let ok = search_psd_violation(&lic_pair(), 5, 20, 50.0, 1e-8, 1).unwrap();
        assert!(ok.found_at.is_none());
    }

    #[test]
    fn exact_h1_gram_is_psd() {
        let tables = ArithTables::build(100_000, false).unwrap();
        let consts = Constants::get();
        let g = ExactH1Screw::new(&tables, consts).unwrap();
        assert_eq!(g.g(0.0).unwrap(), Complex64::new(0.0, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts = random_points(&mut rng, 40, g.half_range());
        let r = gram_psd_check(&g, &pts, 1e-8).unwrap();
        assert!(r.psd, "{r:?}");
    }

    #[test]
    fn gram_rejects_bad_points() {
        let s = single();
        assert!(gram_psd_check(&s, &[1.0, 2.0, 1.0], 1e-8).is_err());
        assert!(gram_psd_check(&s, &vec![0.5; 0], 1e-8).is_err());
        let many: Vec<f64> = (0..201).map(|k| k as f64).collect();
        assert!(gram_psd_check(&s, &many, 1e-8).is_err());
    }

    proptest! {
        #[test]
        fn kernel_routes_agree(t in -50.0f64..50.0, u in -50.0f64..50.0) {
            let p = lic_pair();
            let a = screw_kernel(&p, t, u);
            let b = screw_kernel_direct(&p, t, u);
            prop_assert!((a - b).norm() <= 1e-10);
        }

        #[test]
        fn diagonal_is_real_nonnegative(t in -50.0f64..50.0) {
            let p = lic_pair();
            let d = screw_kernel(&p, t, t);
            let want: f64 = p.entries().iter().map(|e| 2.0 * e.coeff.re * (1.0 - (t * e.omega.re).cos())).sum();
            prop_assert!(d.im.abs() < 1e-12);
            prop_assert!(d.re >= -1e-12);
            prop_assert!((d.re - want).abs() < 1e-10);
        }

        #[test]
        fn quadratic_form_identity(seed in 0u64..1000) {
            let p = lic_pair();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pts = random_points(&mut rng, 12, 50.0);
            let xi: Vec<Complex64> = (0..12)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let (lhs, rhs) = quadratic_form(&p, &pts, &xi).unwrap();
            prop_assert!((lhs.re - rhs).abs() <= 1e-9 * rhs.abs().max(1e-12));
            prop_assert!(lhs.im.abs() <= 1e-9 * rhs.abs().max(1e-12));
        }

        #[test]
        fn point_mass_in_unit_interval(y in 0.0f64..5.0) {
            let v = point_mass(&lic_pair(), y).unwrap();
            prop_assert!(v > 0.0 && v <= 1.0 + 1e-15);
        }
    }
}
