//! The acceptance suite: ten criteria at pinned tolerances, shared by the
//! `accept` command and the `acceptance` test target.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use zosc_core::explicit::{explicit_h, explicit_h1, HKind};
use zosc_core::goldbach::{chebyshev_integral_check, conversion_roundtrip, estimate_c2, log_grid};
use zosc_core::mfunction::{invert_to_m_re, UGrid};
use zosc_core::series::{h_series, tail_bound};
use zosc_core::verify::{
    distribution_check, gram_psd_check, max_step, point_mass, point_mass_empirical, quadratic_form,
    random_points, search_psd_violation, ExactH1Screw,
};
use zosc_core::{make_zeta_pair, specfun, ArithTables, Constants, SpectralPair, ZeroTable, ZetaKind};

use crate::config::CliResult;

/// Zero count and arithmetic horizon of an acceptance run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Profile {
    pub n_zeros: usize,
    pub n_max: usize,
    pub seed: u64,
}

impl Profile {
    pub fn full(seed: u64) -> Self {
        Self {
            n_zeros: 100_000,
            n_max: 1_000_000,
            seed,
        }
    }

    pub fn reduced(seed: u64) -> Self {
        Self {
            n_zeros: 100_000,
            n_max: 100_000,
            seed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Reported as failing but not counted against the run.
    SoftFail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    /// `<`, `<=`, `>` or `>=` against `limit`; absent for reported-only values.
    pub relation: Option<&'static str>,
    pub limit: Option<f64>,
}

impl Metric {
    fn holds(&self) -> bool {
        match (self.relation, self.limit) {
            (Some("<"), Some(l)) => self.value < l,
            (Some("<="), Some(l)) => self.value <= l,
            (Some(">"), Some(l)) => self.value > l,
            (Some(">="), Some(l)) => self.value >= l,
            _ => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    pub metrics: Vec<Metric>,
    pub notes: Vec<String>,
}

struct Builder {
    id: u8,
    name: &'static str,
    metrics: Vec<Metric>,
    soft: Vec<Metric>,
    notes: Vec<String>,
}

impl Builder {
    fn new(id: u8, name: &'static str) -> Self {
        Self {
            id,
            name,
            metrics: Vec::new(),
            soft: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, value: f64, relation: &'static str, limit: f64) {
        self.metrics.push(Metric {
            name: name.into(),
            value,
            relation: Some(relation),
            limit: Some(limit),
        });
    }

    fn soft_check(&mut self, name: impl Into<String>, value: f64, relation: &'static str, limit: f64) {
        self.soft.push(Metric {
            name: name.into(),
            value,
            relation: Some(relation),
            limit: Some(limit),
        });
    }

    fn report(&mut self, name: impl Into<String>, value: f64) {
        self.metrics.push(Metric {
            name: name.into(),
            value,
            relation: None,
            limit: None,
        });
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self) -> Criterion {
        let hard = self.metrics.iter().all(Metric::holds);
        let soft = self.soft.iter().all(Metric::holds);
        let status = match (hard, soft) {
            (true, true) => Status::Pass,
            (true, false) => Status::SoftFail,
            _ => Status::Fail,
        };
        let mut metrics = self.metrics;
        metrics.extend(self.soft);
        Criterion {
            id: self.id,
            name: self.name,
            status,
            metrics,
            notes: self.notes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AcceptanceReport {
    pub profile: Profile,
    pub zeros_source: String,
    pub zeros_loaded: usize,
    pub criteria: Vec<Criterion>,
}

impl AcceptanceReport {
    /// No criterion failed outright.
    pub fn pass(&self) -> bool {
        self.criteria.iter().all(|c| c.status != Status::Fail)
    }
}

/// `[PASS] 3 boundedness: max |H/2| = ... (< 0.023059)`.
pub fn summary_line(c: &Criterion) -> String {
    let tag = match c.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::SoftFail => "SOFT-FAIL",
    };
    let parts: Vec<String> = c
        .metrics
        .iter()
        .map(|m| match (m.relation, m.limit) {
            (Some(r), Some(l)) => format!(
                "{} = {} ({r} {})",
                m.name,
                crate::output::sig15(m.value),
                crate::output::sig15(l)
            ),
            _ => format!("{} = {}", m.name, crate::output::sig15(m.value)),
        })
        .collect();
    format!("[{tag}] {:>2} {}: {}", c.id, c.name, parts.join("; "))
}

fn lic_pair() -> SpectralPair {
    let w: Vec<f64> = [1.0f64, 2.0, 3.0, 5.0, 7.0, 11.0].iter().map(|v| v.sqrt()).collect();
    SpectralPair::from_real(&w, &[1.0; 6]).expect("fixed pair")
}

fn dependent_pair() -> SpectralPair {
    SpectralPair::from_real(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], &[1.0; 6]).expect("fixed pair")
}

fn negative_pair() -> SpectralPair {
    let w: Vec<f64> = [1.0f64, 2.0, 3.0, 5.0, 7.0, 11.0].iter().map(|v| v.sqrt()).collect();
    SpectralPair::from_real(&w, &[1.0, 1.0, 1.0, 1.0, 1.0, -1.0]).expect("fixed pair")
}

fn log_points(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| (lo.ln() + (hi.ln() - lo.ln()) * k as f64 / (count - 1) as f64).exp().clamp(lo, hi))
        .collect()
}

/// Shared inputs of one run.
pub struct Context<'a> {
    pub profile: Profile,
    pub zeros: &'a ZeroTable,
    pub tables: &'a ArithTables,
    pub consts: &'a Constants,
}

fn truncate6(x: f64) -> f64 {
    (x * 1e6).trunc() / 1e6
}

fn golden(ctx: &Context) -> CliResult<Criterion> {
    let mut b = Builder::new(1, "golden constants");
    let h = explicit_h(ctx.tables, ctx.consts, 1.0)?.value;
    let h1 = explicit_h1(ctx.tables, ctx.consts, 1.0)?.value;
    b.report("H(1)", h);
    b.check("|trunc6 H(1) + 0.045970|", (truncate6(h) + 0.045970).abs(), "<", 5e-13);
    b.check("|trunc6 H1(1) - 0.046191|", (truncate6(h1) - 0.046191).abs(), "<", 5e-13);
    b.check("|round6 H1(1) - 0.046191|", ((h1 * 1e6).round() / 1e6 - 0.046191).abs(), "<", 5e-13);
    b.report("H1(1)", h1);
    b.note("H(1) = -0.0459705226 truncates to -0.045970; it rounds to -0.045971");
    Ok(b.finish())
}

fn routes(ctx: &Context) -> CliResult<Criterion> {
    let mut b = Builder::new(2, "route equivalence");
    let n = ctx.zeros.len();
    let xs = log_points(1.01, 1000.0, 60);
    let tail = tail_bound(ctx.zeros.gammas()[n - 1]);
    for (label, kind) in [
        ("H", HKind::H),
        ("H1", HKind::H1),
        ("H_0.3", HKind::Hl(0.3)),
        ("H_1/2", HKind::Hhalf),
    ] {
        let mut excess = f64::NEG_INFINITY;
        let mut worst: f64 = 0.0;
        for &x in &xs {
            let exact = kind.eval(ctx.tables, ctx.consts, x)?.value;
            let s = h_series(ctx.zeros, kind.series_kind(), x, n)?;
            let d = (exact - s.value).abs();
            worst = worst.max(d);
            excess = excess.max(d - s.tail_bound - 1e-9);
        }
        b.report(format!("{label} max |diff|"), worst);
        b.check(format!("{label} max(|diff| - tail - 1e-9)"), excess, "<=", 0.0);
    }
    if n == 100_000 {
        b.check("tail bound", tail, "<=", 1.5e-4);
    } else {
        b.report("tail bound", tail);
        b.note(format!("the 1.5e-4 tail budget is pinned at n = 100000; this run used n = {n}"));
    }
    Ok(b.finish())
}

fn boundedness(ctx: &Context) -> CliResult<Criterion> {
    let mut b = Builder::new(3, "boundedness of H");
    let top = (ctx.tables.n_max() as f64).min(1e6);
    let mut grid_max: f64 = 0.0;
    for x in log_points(1.01, top, 500) {
        grid_max = grid_max.max((explicit_h(ctx.tables, ctx.consts, x)?.value / 2.0).abs());
    }
    b.check("max |H/2| on 500-point grid", grid_max, "<", 0.023059);
    // Extrema search on a dense log grid of the same range.
    let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
    let (mut at_hi, mut at_lo) = (0.0, 0.0);
    for x in log_points(1.01, top, 200_000) {
        let v = explicit_h(ctx.tables, ctx.consts, x)?.value / 2.0;
        if v > hi {
            hi = v;
            at_hi = x;
        }
        if v < lo {
            lo = v;
            at_lo = x;
        }
    }
    b.check("max |H/2| on search grid", hi.max(-lo), "<", 0.023059);
    b.soft_check("max H/2", hi, ">", 0.012);
    b.soft_check("min H/2", lo, "<", -0.012);
    b.report("argmax X", at_hi);
    b.report("argmin X", at_lo);
    b.note(format!("search range [1.01, {top}] on 200000 log-spaced points"));
    if hi > 0.021030 || lo < -0.022978 {
        b.note("an extremum beyond the published 0.021030 / -0.022978 records was observed");
    }
    Ok(b.finish())
}

fn mfunction(ctx: &Context) -> CliResult<Criterion> {
    let mut b = Builder::new(4, "M-function integrity");
    let p = make_zeta_pair(ctx.zeros, ZetaKind::Hl(1.0), 1000.min(ctx.zeros.len()))?;
    let d = invert_to_m_re(&p, UGrid::default())?;
    let half_sum_sq = 0.5 * zosc_core::sum::sum(p.magnitudes().iter().map(|c| c * c));
    b.check("|mass - 1|", (d.mass - 1.0).abs(), "<=", 1e-4);
    b.check("negativity", d.negativity(), "<=", 1e-6);
    b.check("symmetry defect", d.symmetry_defect(), "<", 1e-6);
    b.check("support leakage", d.support_leakage(), "<", 1e-6);
    b.check("|second moment - Σc²/2|", (d.second_moment - half_sum_sq).abs(), "<=", 1e-4);
    b.report("cutoff Z", d.cutoff_z);
    Ok(b.finish())
}

fn ergodic(_ctx: &Context) -> CliResult<Criterion> {
    let mut b = Builder::new(5, "ergodic distribution");
    let lic = lic_pair();
    let d = invert_to_m_re(&lic, UGrid::default())?;
    b.check("LIC sup-CDF distance", distribution_check(&lic, &d, 2e5)?, "<", 0.02);
    let dep = dependent_pair();
    let dd = invert_to_m_re(&dep, UGrid::default())?;
    b.check("dependent sup-CDF distance", distribution_check(&dep, &dd, 2e5)?, ">", 0.05);
    b.note("T = 2e5; dependent control has ω = 1..6, a = 1");
    Ok(b.finish())
}

fn point_masses(ctx: &Context) -> CliResult<Criterion> {
    let mut b = Builder::new(6, "point mass");
    let single = SpectralPair::from_real(&[1.0], &[1.0])?;
    let closed = (-1.0f64).exp() * specfun::bessel_i0(1.0)?;
    let emp = point_mass_empirical(&single, 1.0, 2e5, max_step(&single))?;
    b.check("single-entry relative error", (emp / closed - 1.0).abs(), "<", 0.01);
    let lic = lic_pair();
    let formula = point_mass(&lic, 1.0)?;
    let emp = point_mass_empirical(&lic, 1.0, 2e5, max_step(&lic))?;
    b.check("six-entry relative error", (emp / formula - 1.0).abs(), "<", 0.02);
    let n = 10_000.min(ctx.zeros.len() / 2);
    let a = point_mass(&make_zeta_pair(ctx.zeros, ZetaKind::Hl(1.0), n)?, 1.0)?;
    let c = point_mass(&make_zeta_pair(ctx.zeros, ZetaKind::Hl(1.0), 2 * n)?, 1.0)?;
    b.report("zeta H1 point mass", a);
    b.check("zeta H1 n vs 2n relative change", (a / c - 1.0).abs(), "<", 0.01);
    b.note(format!("zeta pairs use n = {n} and {}", 2 * n));
    Ok(b.finish())
}

fn screw(ctx: &Context) -> CliResult<Criterion> {
    let mut b = Builder::new(7, "screw positivity");
    let g = ExactH1Screw::new(ctx.tables, ctx.consts)?;
    let half = g.half_range();
    let mut worst = f64::INFINITY;
    let mut failures = 0usize;
    for k in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.profile.seed.wrapping_add(k));
        let pts = random_points(&mut rng, 40, half);
        let r = gram_psd_check(&g, &pts, 1e-8)?;
        worst = worst.min(r.min_eigenvalue / r.matrix_norm);
        failures += usize::from(!r.psd);
    }
    b.check("exact g_H1 worst min eigenvalue / norm", worst, ">=", -1e-8);
    b.check("exact g_H1 non-PSD sets", failures as f64, "<=", 0.0);
    let neg = search_psd_violation(&negative_pair(), 200, 20, 50.0, 1e-8, ctx.profile.seed)?;
    let found = neg.found_at.map_or(f64::INFINITY, |k| k as f64);
    b.check("negative control: sets until violation", found, "<=", 200.0);
    b.note(format!("exact-g points drawn from [-{half:.4}, {half:.4}]"));
    Ok(b.finish())
}

fn identities(ctx: &Context) -> CliResult<Criterion> {
    let mut b = Builder::new(8, "identity checks");
    for x in [1.0, 10.0, 100.0, 1e4] {
        let r = chebyshev_integral_check(ctx.tables, ctx.consts, x)?;
        b.check(format!("Chebyshev residual X = {x}"), r.residual, "<", 1e-6);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.profile.seed);
    let zeta = make_zeta_pair(ctx.zeros, ZetaKind::Hl(1.0), 100.min(ctx.zeros.len()))?;
    let mut worst: f64 = 0.0;
    for pair in [lic_pair(), zeta] {
        for _ in 0..10 {
            let pts = random_points(&mut rng, 12, 50.0);
            let xi: Vec<Complex64> = (0..12)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let (lhs, rhs) = quadratic_form(&pair, &pts, &xi)?;
            worst = worst.max((lhs - rhs).norm() / rhs.abs());
        }
    }
    b.check("quadratic form relative error", worst, "<=", 1e-9);
    Ok(b.finish())
}

fn equivalence(ctx: &Context) -> CliResult<Criterion> {
    let mut b = Builder::new(9, "R/E equivalence");
    let x_max = ctx.tables.n_max();
    let est = estimate_c2(ctx.tables, ctx.consts, ctx.zeros, &log_grid(1000, x_max, 200), ctx.zeros.len())?;
    let limit = if x_max >= 1_000_000 { 0.01 } else { 0.03 };
    b.report("c2 via limit", est.via_limit);
    b.report("c2 via zeros", est.via_zeros);
    b.check("c2 spread", est.spread, "<=", limit);
    b.report("discarded-integral envelope", est.remainder_bound);
    let rt_max = x_max.min(zosc_core::goldbach::ROUNDTRIP_MAX);
    let grid: Vec<usize> = (1..=rt_max).collect();
    let rt = conversion_roundtrip(ctx.tables, ctx.consts, ctx.zeros, &grid, est.via_zeros, ctx.zeros.len())?;
    b.check(
        "R-side difference std / |mean|",
        rt.r_difference_std / rt.r_difference_mean.abs(),
        "<",
        0.1,
    );
    b.check(
        "E-side difference std / |mean|",
        rt.e_difference_std / rt.e_difference_mean.abs(),
        "<",
        0.1,
    );
    b.check("max |R - R rebuilt|", rt.r_max_error, "<", 0.01 * rt_max as f64);
    b.report("c2 - 1/2 - Σ_ρ 4/(ρ(ρ+1)(ρ-1))", rt.expected_constant);
    b.note(format!("c2 over X <= {x_max}; round trip over every integer X <= {rt_max}"));
    Ok(b.finish())
}

/// Criteria 1 to 9.
pub fn run_core(ctx: &Context) -> CliResult<Vec<Criterion>> {
    Ok(vec![
        golden(ctx)?,
        routes(ctx)?,
        boundedness(ctx)?,
        mfunction(ctx)?,
        ergodic(ctx)?,
        point_masses(ctx)?,
        screw(ctx)?,
        identities(ctx)?,
        equivalence(ctx)?,
    ])
}

/// All ten criteria. Criteria 1 to 9 run once on a single worker thread and
/// once on `threads` workers; criterion 10 compares the two serialized reports.
pub fn run(profile: Profile, zeros: &ZeroTable, threads: usize) -> CliResult<AcceptanceReport> {
    let tables = ArithTables::build(profile.n_max, true)?;
    let ctx = Context {
        profile,
        zeros,
        tables: &tables,
        consts: Constants::get(),
    };
    let pool = |n: usize| rayon::ThreadPoolBuilder::new().num_threads(n).build();
    let one = pool(1)?.install(|| run_core(&ctx))?;
    let many = pool(threads.max(2))?.install(|| run_core(&ctx))?;
    let text = |c: &Vec<Criterion>| serde_json::to_string(c).expect("criteria serialize");
    let (a, b) = (text(&one), text(&many));
    let mut det = Builder::new(10, "determinism");
    let first_diff = a.bytes().zip(b.bytes()).position(|(x, y)| x != y);
    det.check(
        "differing bytes between 1 and k threads",
        if a == b { 0.0 } else { 1.0 },
        "<=",
        0.0,
    );
    det.report("k threads", threads.max(2) as f64);
    if let Some(pos) = first_diff {
        det.note(format!("first difference at byte {pos}"));
    }
    let mut criteria = many;
    criteria.push(det.finish());
    Ok(AcceptanceReport {
        profile,
        zeros_source: zeros.source().to_string(),
        zeros_loaded: zeros.len(),
        criteria,
    })
}
