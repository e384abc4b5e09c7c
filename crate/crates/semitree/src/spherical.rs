//! Spherical functions `φ(·, v₀ | γ)` by three independent evaluators, and the
//! eigenvalue map `z ↦ γ(z)`.
//!
//! * [`closed_form`]: `κ(γ,ε)(B/𝔮)^⌊n/2⌋ + κ̃(γ,ε)(B̃/𝔮)^⌊n/2⌋`, with the
//!   linear-in-`n` formulas at `B = ±1` and the explicit `γ = 0` function;
//! * [`recurrence_eval`]: the radial three-term recurrence;
//! * [`arc_sum_eval`]: generalized Poisson kernel integrated over the boundary
//!   arcs `Ω_k(v₀, v_n)`.
//!
//! All three take the class of `v₀` from [`TreeParams::root_parity`].

use num_complex::Complex64;

use crate::kernels::{self, BranchData};
use crate::tree::{arc_partition, horospherical_index};
use crate::{tol, Error, Result, TreeParams};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Values `f₀..f_N` of a radial function.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialProfile {
    pub params: TreeParams,
    pub gamma: Complex64,
    pub values: Vec<Complex64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    None,
    /// `B = +1`, i.e. `γ = ±b`.
    BPlusOne,
    /// `B = −1`, i.e. `γ = ±a`.
    BMinusOne,
}

/// The κ coefficients of the closed form. When `degenerate` is not
/// [`Degeneracy::None`] they are ill-conditioned and [`closed_form`] does not use them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalCoefficients {
    pub kappa_even: Complex64,
    pub kappa_odd: Complex64,
    pub kappat_even: Complex64,
    pub kappat_odd: Complex64,
    pub degenerate: Degeneracy,
}

fn degeneracy_of(b: Complex64) -> Degeneracy {
    if (b - 1.0).norm() < tol::DEGENERATE_SWITCH {
        Degeneracy::BPlusOne
    } else if (b + 1.0).norm() < tol::DEGENERATE_SWITCH {
        Degeneracy::BMinusOne
    } else {
        Degeneracy::None
    }
}

fn kappas(r: &TreeParams, bd: &BranchData) -> SphericalCoefficients {
    let (qp, qm) = (r.q_plus() as f64, r.q_minus() as f64);
    let qq = r.qq();
    let k = |b: Complex64| (b - 1.0 / qq) * (b + (qm / qp).sqrt()) * qp / ((qp + 1.0) * (b * b - 1.0));
    let (ke, kte) = (k(bd.b), k(bd.bt));
    let fm = bd.f_minus.unwrap_or(ZERO);
    let ftm = bd.ft_minus.unwrap_or(ZERO);
    SphericalCoefficients {
        kappa_even: ke,
        kappa_odd: ke * fm,
        kappat_even: kte,
        kappat_odd: kte * ftm,
        degenerate: degeneracy_of(bd.b),
    }
}

/// κ coefficients at `γ ≠ 0` off the cuts (endpoints `±a`, `±b` allowed).
pub fn coefficients(params: &TreeParams, gamma: Complex64) -> Result<SphericalCoefficients> {
    let r = params.rooted();
    let bd = kernels::branch_data(&r, gamma)?;
    if bd.at_zero {
        return Err(Error::Domain("the gamma = 0 spherical function has no kappa expansion".into()));
    }
    Ok(kappas(&r, &bd))
}

/// `φ` at `γ = 0`: `(−1)^{n/2} q₋^{−n/2}` for even `n`, 0 for odd `n` (root in `V₊`).
pub fn zero_spherical(params: &TreeParams, n: usize) -> f64 {
    if n % 2 == 1 {
        return 0.0;
    }
    let qm = params.rooted().q_minus() as f64;
    let m = (n / 2) as i32;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    sign * qm.powi(-m)
}

/// Which endpoint `γ` is, if any, up to a few ulps.
fn endpoint_kind(params: &TreeParams, gamma: Complex64) -> Option<(Degeneracy, f64)> {
    let e = kernels::endpoints(params);
    let snap = |x: f64| tol::ENDPOINT_SNAP * x;
    for (val, kind) in [(e.b, Degeneracy::BPlusOne), (e.a, Degeneracy::BMinusOne)] {
        if val == 0.0 {
            continue;
        }
        for s in [1.0, -1.0] {
            if (gamma - s * val).norm() <= snap(val) {
                return Some((kind, s * val));
            }
        }
    }
    None
}

/// The degenerate closed forms at `γ = ±b` (`B = 1`) and `γ = ±a` (`B = −1`).
fn degenerate_value(r: &TreeParams, kind: Degeneracy, gamma: f64, n: usize) -> f64 {
    let (qp, qm) = (r.q_plus() as f64, r.q_minus() as f64);
    let qq = r.qq();
    let s = if kind == Degeneracy::BPlusOne { 1.0 } else { -1.0 };
    let c = qp / (qp + 1.0) * (s - 1.0 / qq) * (s + (qm / qp).sqrt());
    let base = s * qq;
    if n % 2 == 0 {
        let m = n / 2;
        base.powi(-(m as i32)) * (1.0 + c * m as f64)
    } else {
        let m = (n - 1) / 2;
        // F⁻ at the endpoint, where R = 0
        let nhat = r.d() * gamma * gamma;
        let fm = (nhat + (qp - qm)) / (2.0 * qp * (qm + 1.0) * gamma);
        base.powi(-(m as i32)) * ((qp + s * qq) / (qp + 1.0) + c * m as f64) * fm
    }
}

/// Closed-form `φ_n(γ)`. Errors strictly inside the cuts.
pub fn closed_form(params: &TreeParams, gamma: Complex64, n: usize) -> Result<Complex64> {
    if n == 0 {
        return Ok(ONE);
    }
    let r = params.rooted();
    if gamma == ZERO {
        return Ok(Complex64::new(zero_spherical(&r, n), 0.0));
    }
    if let Some((kind, g)) = endpoint_kind(&r, gamma) {
        return Ok(Complex64::new(degenerate_value(&r, kind, g, n), 0.0));
    }
    let bd = kernels::branch_data(&r, gamma)?;
    let co = kappas(&r, &bd);
    if co.degenerate != Degeneracy::None {
        return Ok(recurrence_eval(params, gamma, n).values[n]);
    }
    Ok(kappa_sum(&r, &bd, &co, n))
}

fn kappa_sum(r: &TreeParams, bd: &BranchData, co: &SphericalCoefficients, n: usize) -> Complex64 {
    let m = (n / 2) as u32;
    let qq = r.qq();
    let (k, kt) = if n % 2 == 0 {
        (co.kappa_even, co.kappat_even)
    } else {
        (co.kappa_odd, co.kappat_odd)
    };
    k * (bd.b / qq).powu(m) + kt * (bd.bt / qq).powu(m)
}

/// Closed-form values `φ_0..φ_N` sharing one branch evaluation.
pub fn closed_form_profile(params: &TreeParams, gamma: Complex64, n_max: usize) -> Result<RadialProfile> {
    let r = params.rooted();
    let special = gamma == ZERO || endpoint_kind(&r, gamma).is_some();
    let values = if special {
        (0..=n_max).map(|n| closed_form(params, gamma, n)).collect::<Result<Vec<_>>>()?
    } else {
        let bd = kernels::branch_data(&r, gamma)?;
        let co = kappas(&r, &bd);
        if co.degenerate != Degeneracy::None {
            recurrence_eval(params, gamma, n_max).values
        } else {
            (0..=n_max)
                .map(|n| if n == 0 { ONE } else { kappa_sum(&r, &bd, &co, n) })
                .collect()
        }
    };
    Ok(RadialProfile { params: *params, gamma, values })
}

/// `f₀ = 1`, `f₁ = γ`, `f_{n+1} = ((q+1)γf_n − f_{n−1})/q` with `q` the degree at distance `n`.
pub fn recurrence_eval(params: &TreeParams, gamma: Complex64, n_max: usize) -> RadialProfile {
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(ONE);
    if n_max >= 1 {
        values.push(gamma);
    }
    for n in 1..n_max {
        let q = params.q(params.root_parity().at_distance(n)) as f64;
        let next = ((q + 1.0) * gamma * values[n] - values[n - 1]) / q;
        values.push(next);
    }
    RadialProfile { params: *params, gamma, values }
}

/// The displayed initial values `f₂ = ((q₋+1)γ²−1)/q₋` and
/// `f₃ = ((q₊+1)(q₋+1)(γ²−1)/(q₊q₋) + 1)γ` (root in `V₊`).
pub fn initial_values(params: &TreeParams, gamma: Complex64) -> (Complex64, Complex64) {
    let r = params.rooted();
    let (qp, qm) = (r.q_plus() as f64, r.q_minus() as f64);
    let g2 = gamma * gamma;
    let f2 = ((qm + 1.0) * g2 - 1.0) / qm;
    let f3 = ((qp + 1.0) * (qm + 1.0) * (g2 - 1.0) / (qp * qm) + 1.0) * gamma;
    (f2, f3)
}

/// Arc measures `ν_{v₀}(Ω_k(v₀, v_n))` as floats, for all `n ≤ n_max`.
#[derive(Clone, Debug)]
pub struct ArcTable {
    rows: Vec<Vec<f64>>,
}

impl ArcTable {
    pub fn new(params: &TreeParams, n_max: usize) -> Self {
        ArcTable { rows: (0..=n_max).map(|n| arc_partition(params, n).to_f64()).collect() }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }
}

/// `Σ_k K(v_n, v₀, Ω_k | γ)·ν_{v₀}(Ω_k)`, with `γ ≠ 0` off the cuts.
pub fn arc_sum_eval(params: &TreeParams, gamma: Complex64, n: usize) -> Result<Complex64> {
    let table = ArcTable::new(params, n);
    arc_sum_with(params, &table, gamma, n)
}

pub fn arc_sum_with(params: &TreeParams, table: &ArcTable, gamma: Complex64, n: usize) -> Result<Complex64> {
    if gamma == ZERO {
        return Err(Error::Pole);
    }
    let cls = params.root_parity().at_distance(n);
    table.rows[n].iter().enumerate().try_fold(ZERO, |acc, (k, &nu)| {
        let h = horospherical_index(k, n);
        Ok(acc + kernels::generalized_poisson(params, cls, h, gamma)? * nu)
    })
}

/// Arc-sum values `φ_0..φ_N`.
pub fn arc_sum_profile(params: &TreeParams, table: &ArcTable, gamma: Complex64, n_max: usize) -> Result<RadialProfile> {
    assert!(n_max <= table.n_max(), "arc table too short");
    let values = (0..=n_max).map(|n| arc_sum_with(params, table, gamma, n)).collect::<Result<Vec<_>>>()?;
    Ok(RadialProfile { params: *params, gamma, values })
}

/// `γ(z)² = (q₊^z + q₋^{1−z})(q₋^z + q₊^{1−z})/((q₊+1)(q₋+1))`.
pub fn gamma_squared_of_z(params: &TreeParams, z: Complex64) -> Complex64 {
    let (lp, lm) = ((params.q_plus() as f64).ln(), (params.q_minus() as f64).ln());
    let pow = |l: f64, w: Complex64| (w * l).exp();
    (pow(lp, z) + pow(lm, 1.0 - z)) * (pow(lm, z) + pow(lp, 1.0 - z)) / params.d()
}

/// One preimage `z = ½ log_𝔮((N̂ − (q₊+q₋) + R)/2)`, with `Im z ∈ (−π/ln𝔮, π/ln𝔮]`.
///
/// The full preimage of `γ²` is `{z + kπi/ln𝔮, 1 − z + kπi/ln𝔮 : k ∈ ℤ}`.
pub fn z_of_gamma(params: &TreeParams, gamma: Complex64) -> Result<Complex64> {
    let bd = kernels::branch_data(params, gamma)?;
    let lq = params.qq().ln();
    // (N̂ − (q₊+q₋) + R)/2 = 𝔮·B̃
    let w = bd.bt * params.qq();
    Ok(w.ln() / (2.0 * lq))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(qp: u32, qm: u32) -> TreeParams {
        TreeParams::new(qp, qm).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn at_one_everything_is_one() {
        let p = t(3, 5);
        let co = coefficients(&p, ONE).unwrap();
        assert!((co.kappa_even + co.kappat_even - 1.0).norm() < 1e-12);
        for n in 0..20 {
            assert!((closed_form(&p, ONE, n).unwrap() - 1.0).norm() < 1e-12);
            assert!((arc_sum_eval(&p, ONE, n).unwrap() - 1.0).norm() < 1e-12);
        }
        assert!(recurrence_eval(&p, ONE, 20).values.iter().all(|v| (v - 1.0).norm() < 1e-12));
    }

    #[test]
    fn zero_eigenvalue() {
        let p = t(3, 5);
        assert_eq!(closed_form(&p, ZERO, 2).unwrap(), c(-0.2, 0.0));
        let rec = recurrence_eval(&p, ZERO, 4).values;
        assert_eq!(rec, vec![ONE, ZERO, c(-0.2, 0.0), ZERO, c(0.04, 0.0)]);
    }

    #[test]
    fn displayed_initial_values() {
        let p = t(3, 5);
        let g = c(0.3, 0.2);
        let prof = recurrence_eval(&p, g, 3).values;
        let (f2, f3) = initial_values(&p, g);
        assert!((prof[2] - f2).norm() < 1e-15 && (prof[3] - f3).norm() < 1e-15);
    }

    #[test]
    fn closed_form_matches_recurrence() {
        let p = t(3, 5);
        let g = c(0.9, 0.0);
        let rec = recurrence_eval(&p, g, 40).values;
        for (n, r) in rec.iter().enumerate() {
            let cf = closed_form(&p, g, n).unwrap();
            assert!(tol::rel_close(cf, *r, 1e-10), "n={n}: {cf} vs {r}");
        }
    }

    #[test]
    fn degenerate_endpoints_match_recurrence() {
        for (qp, qm) in [(3, 5), (5, 3), (2, 7), (5, 2)] {
            let p = t(qp, qm);
            let e = kernels::endpoints(&p);
            for g in [e.a, -e.a, e.b, -e.b] {
                let rec = recurrence_eval(&p, c(g, 0.0), 30).values;
                for (n, r) in rec.iter().enumerate() {
                    let cf = closed_form(&p, c(g, 0.0), n).unwrap();
                    assert!((cf - r).norm() < 1e-10 * r.norm().max(1e-3), "({qp},{qm}) γ={g} n={n}: {cf} vs {r}");
                }
            }
        }
    }

    #[test]
    fn cut_interior_is_an_error() {
        assert!(matches!(closed_form(&t(3, 5), c(0.5, 0.0), 3), Err(Error::OnCut(_))));
    }

    #[test]
    fn eigenvalue_map_examples() {
        let p = t(5, 2);
        let e = kernels::endpoints(&p);
        let lq = p.qq().ln();
        assert!((gamma_squared_of_z(&p, c(0.5, 0.0)) - e.b * e.b).norm() < 1e-14);
        let za = c(0.5, std::f64::consts::PI / (2.0 * lq));
        assert!((gamma_squared_of_z(&p, za) - e.a * e.a).norm() < 1e-14);
        assert!((gamma_squared_of_z(&p, ZERO) - 1.0).norm() < 1e-14);
        let z1 = z_of_gamma(&p, ONE).unwrap();
        assert!((gamma_squared_of_z(&p, z1) - 1.0).norm() < 1e-12);
        let zb = z_of_gamma(&p, c(e.b + 1e-13, 0.0)).unwrap();
        assert!((zb - 0.5).norm() < 1e-5);
    }

    #[test]
    fn homogeneous_inverse() {
        for q in [2u32, 3, 4] {
            let p = t(q, q);
            let qf = q as f64;
            for g in [1.0, 1.5, 2.5] {
                let z = z_of_gamma(&p, c(g, 0.0)).unwrap();
                let expect = (((qf + 1.0) * g + ((qf + 1.0).powi(2) * g * g - 4.0 * qf).sqrt()) / 2.0).ln() / qf.ln();
                assert!((z - expect).norm() < 1e-12, "q={q} γ={g}");
            }
        }
    }
}
