//! The invariant suite behind `semitree verify`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::output::Table;
use super::{CliError, RunArgs};
use crate::kernels::{self, endpoints};
use crate::oracle::{eigen_residuals, f_series, monte_carlo_hitting};
use crate::spectra::{self, Exponent};
use crate::spherical::{self, ArcTable};
use crate::{tol, Parity, TreeParams};

/// Default parameter grid `{2, 3, 5}²`.
pub const DEFAULT_GRID: [u32; 3] = [2, 3, 5];
pub const RANDOM_GAMMAS: usize = 200;
/// Agreement of the three spherical evaluators, `n ≤ SPHERICAL_N`.
pub const SPHERICAL_N: usize = 40;
pub const SPHERICAL_TOL: f64 = 1e-9;
pub const SERIES_TOL: f64 = 1e-8;
pub const GEOMETRY_TOL: f64 = 1e-12;
pub const MC_SIGMAS: f64 = 3.0;
pub const EIGEN_DEPTH: usize = 8;
const EIGEN_GAMMAS: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub params: TreeParams,
    pub samples: usize,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    pub seed: u64,
    pub perturb: f64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new("verify", &["check", "q_plus", "q_minus", "samples", "max_residual", "tolerance", "pass"]);
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        t.meta("seed", self.seed)
            .meta("perturb", self.perturb)
            .meta("checks", self.checks.len())
            .meta("failed", failed);
        for c in &self.checks {
            t.push(vec![
                c.name.into(),
                c.params.q_plus().into(),
                c.params.q_minus().into(),
                c.samples.into(),
                c.residual.into(),
                c.tolerance.into(),
                c.passed().into(),
            ]);
        }
        t
    }
}

/// `n` seeded points with `0.05 ≤ |γ| ≤ 3`, off the real axis and at least
/// [`tol::NEAR_BRANCH_RADIUS`] from `0, ±a, ±b`.
pub fn sample_gammas(params: &TreeParams, n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = endpoints(params);
    let branch = [e.a, -e.a, e.b, -e.b];
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let r = rng.gen_range(0.05..=3.0);
        let th = rng.gen_range(0.0..std::f64::consts::TAU);
        let g = Complex64::from_polar(r, th);
        if g.im.abs() < tol::NEAR_BRANCH_RADIUS || branch.iter().any(|&x| (g - x).norm() < tol::NEAR_BRANCH_RADIUS) {
            continue;
        }
        out.push(g);
    }
    out
}

fn rel(x: Complex64, y: Complex64) -> f64 {
    tol::rel_diff(x, y)
}

/// Identity residuals at one `γ`: `[B·B̃, F±F̃±, quadratic, resolvent]`, with
/// `B` scaled by `1 + perturb` in the checks that involve it.
pub fn identity_residuals(params: &TreeParams, gamma: Complex64, perturb: f64) -> crate::Result<[f64; 4]> {
    let bd = kernels::branch_data(params, gamma)?;
    let b = bd.b * (1.0 + perturb);
    let recip_b = rel(b * bd.bt, Complex64::new(1.0, 0.0));
    let mut recip_f = 0.0f64;
    let mut resolvent = 0.0f64;
    let (fp, fm) = (bd.f_plus.unwrap_or_default(), bd.f_minus.unwrap_or_default());
    for s in [Parity::Plus, Parity::Minus] {
        let (f, ft) = (bd.f(s).unwrap_or_default(), bd.ft(s).unwrap_or_default());
        recip_f = recip_f.max(rel(f * ft, Complex64::new(kernels::f_product(params, s), 0.0)));
        let q = params.q(s) as f64;
        resolvent = resolvent.max(rel(gamma * f, (1.0 + q * fp * fm) / (q + 1.0)));
    }
    let c = (bd.gamma_hat - (params.q_plus() + params.q_minus()) as f64) / params.qq();
    let quad = (b * b - c * b + 1.0).norm() / (b.norm_sqr() + (c * b).norm() + 1.0);
    Ok([recip_b, recip_f, quad, resolvent])
}

/// Max pairwise relative deviation of the three spherical evaluators, `n ≤ n_max`.
pub fn spherical_deviation(params: &TreeParams, table: &ArcTable, gamma: Complex64, n_max: usize) -> crate::Result<f64> {
    let c = spherical::closed_form_profile(params, gamma, n_max)?;
    let r = spherical::recurrence_eval(params, gamma, n_max);
    let a = spherical::arc_sum_profile(params, table, gamma, n_max)?;
    let mut dev = 0.0f64;
    for n in 0..=n_max {
        let (x, y, z) = (c.values[n], r.values[n], a.values[n]);
        dev = dev.max(rel(x, y)).max(rel(y, z)).max(rel(x, z));
    }
    Ok(dev)
}

pub fn run_suite(run: &RunArgs) -> Result<Report, CliError> {
    let grid: Vec<TreeParams> = match (run.q_plus, run.q_minus) {
        (None, None) => DEFAULT_GRID
            .iter()
            .flat_map(|&a| DEFAULT_GRID.iter().map(move |&b| TreeParams::new(a, b)))
            .collect::<crate::Result<_>>()?,
        _ => vec![run.params()?],
    };
    let tol_or = |d: f64| run.tol.unwrap_or(d);
    let mut report = Report { checks: Vec::new(), seed: run.seed, perturb: run.perturb };
    for (i, params) in grid.iter().enumerate() {
        let seed = run.seed.wrapping_add(i as u64);
        let gammas = sample_gammas(params, RANDOM_GAMMAS, seed);
        let mut push = |name, samples, residual: f64, tolerance| {
            // NaN residuals must fail
            let residual = if residual.is_nan() { f64::INFINITY } else { residual };
            report.checks.push(Check { name, params: *params, samples, residual, tolerance })
        };

        let mut ids = [0.0f64; 4];
        for &g in &gammas {
            let r = identity_residuals(params, g, run.perturb)?;
            for (m, x) in ids.iter_mut().zip(r) {
                *m = m.max(x);
            }
        }
        let n = gammas.len();
        push("b_reciprocity", n, ids[0], tol_or(tol::IDENTITY));
        push("f_reciprocity", n, ids[1], tol_or(tol::IDENTITY));
        push("b_quadratic", n, ids[2], tol_or(tol::IDENTITY));
        push("resolvent", n, ids[3], tol_or(tol::IDENTITY));

        let table = ArcTable::new(params, SPHERICAL_N);
        let mut dev = 0.0f64;
        for &g in &gammas {
            dev = dev.max(spherical_deviation(params, &table, g, SPHERICAL_N)?);
        }
        push("spherical_agreement", n, dev, tol_or(SPHERICAL_TOL));

        let eg: Vec<Complex64> = gammas.iter().take(EIGEN_GAMMAS).copied().collect();
        let worst = eigen_residuals(params, &eg, run.depth.unwrap_or(EIGEN_DEPTH))?.into_iter().fold(0.0, f64::max);
        push("eigen_residual", eg.len(), worst, tol_or(tol::IDENTITY));

        let mut series = 0.0f64;
        let two = Complex64::new(2.0, 0.0);
        for s in [Parity::Plus, Parity::Minus] {
            let est = f_series(params, s.flip(), two, run.terms)?;
            let exact = kernels::hitting_f(params, two, s)?;
            series = series.max(((est.partial_sum - exact).norm() - est.tail_bound).max(0.0));
        }
        push("series_vs_closed_form", 2, series, tol_or(SERIES_TOL));

        let mut z = 0.0f64;
        let mut repeat = 0.0;
        for s in [Parity::Plus, Parity::Minus] {
            let mc = monte_carlo_hitting(params, s, run.walks, run.cap, seed);
            let exact = kernels::hitting_f(params, Complex64::new(1.0, 0.0), s)?.re;
            z = z.max((mc.estimate - exact).abs() / mc.std_error.max(f64::MIN_POSITIVE));
            if monte_carlo_hitting(params, s, run.walks, run.cap, seed) != mc {
                repeat = 1.0;
            }
        }
        push("monte_carlo_sigmas", 2, z, MC_SIGMAS);
        push("monte_carlo_determinism", 2, repeat, 0.0);

        let e = endpoints(params);
        let mut geo = (spectra::spectral_radius(params, Exponent::TWO) - e.b).abs();
        for p in [1.0, 1.2, 1.5, 2.0, 3.0, 6.0, f64::INFINITY] {
            let p = Exponent::new(p)?;
            let (f1, f2) = spectra::sigma_p(params, p).foci;
            geo = geo.max((f1 - e.a * e.a).norm()).max((f2 - e.b * e.b).norm());
        }
        push("spectral_geometry", 8, geo, tol_or(GEOMETRY_TOL));
    }
    Ok(report)
}
