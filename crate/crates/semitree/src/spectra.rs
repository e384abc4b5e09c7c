//! `ℓ^p` spectra of `μ₂`, `μ₁²` and `μ₁`.
//!
//! `σ(μ₁²)` on `ℓ^p` is the filled ellipse `Σ_p` with center `(q₊+q₋)/D`,
//! horizontal semi-axis `(𝔮^{2/p} + 𝔮^{2−2/p})/D`, vertical semi-axis
//! `|𝔮^{2/p} − 𝔮^{2−2/p}|/D` and foci `a²`, `b²`, where `D = (q₊+1)(q₋+1)`.
//! The spectrum of `μ₁` is `S_p = √Σ_p`.
//!
//! Note on the source displays: the proposition describing `Σ_p` divides the
//! center and semi-axes by an extra `q₋` and labels the axes the other way round.
//! Both disagree with the boundary curve `b(θ)` and with the stated foci
//! `(q₊+q₋±2𝔮)/D`; this module follows `b(θ)`, i.e. the affine image of the
//! `μ₂` ellipse.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::kernels;
use crate::spherical;
use crate::{tol, Error, Parity, Result, TreeParams};

/// An exponent `p ∈ [1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub const ONE: Exponent = Exponent(1.0);
    pub const TWO: Exponent = Exponent(2.0);
    pub const INF: Exponent = Exponent(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidParams(format!("exponent must lie in [1, inf], got {p}")));
        }
        Ok(Exponent(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `1/p`, zero at `p = ∞`.
    pub fn inv(self) -> f64 {
        if self.0.is_infinite() {
            0.0
        } else {
            1.0 / self.0
        }
    }

    /// `p' = p/(p−1)`.
    pub fn conjugate(self) -> Exponent {
        Exponent(if self.0.is_infinite() {
            1.0
        } else if self.0 == 1.0 {
            f64::INFINITY
        } else {
            self.0 / (self.0 - 1.0)
        })
    }

    /// `|1 − 2/p|`.
    pub fn distortion(self) -> f64 {
        (1.0 - 2.0 * self.inv()).abs()
    }

    pub fn is_two(self) -> bool {
        self.0 == 2.0
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseRegion {
    pub center: Complex64,
    pub semi_axis_real: f64,
    pub semi_axis_imag: f64,
    pub foci: (Complex64, Complex64),
}

impl EllipseRegion {
    fn affine(&self, scale: f64, shift: f64) -> EllipseRegion {
        EllipseRegion {
            center: self.center * scale + shift,
            semi_axis_real: self.semi_axis_real * scale,
            semi_axis_imag: self.semi_axis_imag * scale,
            foci: (self.foci.0 * scale + shift, self.foci.1 * scale + shift),
        }
    }

    /// The point at parameter `θ` on the boundary.
    pub fn boundary_point(&self, theta: f64) -> Complex64 {
        self.center + Complex64::new(self.semi_axis_real * theta.cos(), self.semi_axis_imag * theta.sin())
    }
}

/// `Γ±(z) = (𝔮^{2z} + 𝔮^{2(1−z)} + q∓ − 1)/((q±+1)q∓)`, the eigenvalue of `μ₂` on `V±`.
pub fn gamma_of_z(params: &TreeParams, z: Complex64, side: Parity) -> Complex64 {
    let lp = (params.q_product() as f64).ln();
    let qs = params.q(side) as f64;
    let qo = params.q(side.flip()) as f64;
    ((z * lp).exp() + ((1.0 - z) * lp).exp() + qo - 1.0) / ((qs + 1.0) * qo)
}

/// `x = 𝔮^{2/p}`, `y = 𝔮^{2−2/p}`, computed as powers of the integer `q₊q₋`.
fn xy(params: &TreeParams, p: Exponent) -> (f64, f64) {
    let prod = params.q_product() as f64;
    (prod.powf(p.inv()), prod.powf(1.0 - p.inv()))
}

/// Spectrum of `μ₂` on `ℓ^p(V±)`.
pub fn mu2_region(params: &TreeParams, p: Exponent, side: Parity) -> EllipseRegion {
    let qs = params.q(side) as f64;
    let qo = params.q(side.flip()) as f64;
    let den = (qs + 1.0) * qo;
    let (x, y) = xy(params, p);
    let center = (qo - 1.0) / den;
    let f = 2.0 * params.qq() / den;
    EllipseRegion {
        center: Complex64::new(center, 0.0),
        semi_axis_real: (x + y) / den,
        semi_axis_imag: (x - y).abs() / den,
        foci: (Complex64::new(center - f, 0.0), Complex64::new(center + f, 0.0)),
    }
}

/// `Σ_p = σ(μ₁²)` as the image of the `μ₂` region on `V±` under `γ² = (q∓Γ± + 1)/(q∓ + 1)`.
pub fn sigma_p_from(params: &TreeParams, p: Exponent, side: Parity) -> EllipseRegion {
    let qo = params.q(side.flip()) as f64;
    mu2_region(params, p, side).affine(qo / (qo + 1.0), 1.0 / (qo + 1.0))
}

pub fn sigma_p(params: &TreeParams, p: Exponent) -> EllipseRegion {
    sigma_p_from(params, p, Parity::Plus)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Inside,
    Boundary,
    Outside,
}

/// Status of `γ = 0` beyond the elliptical region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroStatus {
    /// `γ ≠ 0`, or `0` is already in the region.
    NotApplicable,
    /// `0` is added as the isolated eigenvalue of the zero spherical function.
    Isolated,
    /// Root degree larger and `p ≠ 2`: the source does not settle membership.
    UndeterminedByPaper,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumQuery {
    pub p: Exponent,
    pub gamma: Complex64,
    pub verdict: Verdict,
    pub includes_isolated_zero: bool,
    pub zero_status: ZeroStatus,
}

/// Verdict of the region alone, without the isolated point `0`.
fn region_verdict(params: &TreeParams, p: Exponent, gamma: Complex64) -> Verdict {
    let e = kernels::endpoints(params);
    if p.is_two() {
        // Σ₂ is a segment: decide on the real axis of the γ-plane
        let band = tol::BOUNDARY * e.b;
        if gamma.im.abs() > band {
            return Verdict::Outside;
        }
        let x = gamma.re.abs();
        if (x - e.b).abs() <= band || (e.a > 0.0 && (x - e.a).abs() <= band) {
            return Verdict::Boundary;
        }
        // homogeneous trees: a = 0 and the two cuts merge into [−b, b]
        let inside = x < e.b && (e.a < x || e.a == 0.0);
        return if inside { Verdict::Inside } else { Verdict::Outside };
    }
    let s = (params.q_plus() + params.q_minus()) as f64;
    let qq = params.qq();
    let delta = (kernels::gamma_hat(params, gamma) - s) / (2.0 * qq);
    let lhs = (delta + 1.0).norm() + (delta - 1.0).norm();
    let x = p.distortion();
    let threshold = qq.powf(x) + qq.powf(-x);
    if (lhs - threshold).abs() <= tol::BOUNDARY * threshold {
        Verdict::Boundary
    } else if lhs < threshold {
        Verdict::Inside
    } else {
        Verdict::Outside
    }
}

pub fn membership(params: &TreeParams, p: Exponent, gamma: Complex64) -> SpectrumQuery {
    let mut q = SpectrumQuery {
        p,
        gamma,
        verdict: region_verdict(params, p, gamma),
        includes_isolated_zero: false,
        zero_status: ZeroStatus::NotApplicable,
    };
    if gamma == Complex64::new(0.0, 0.0) && q.verdict == Verdict::Outside {
        let r = params.rooted();
        if p.is_two() || r.q_plus() < r.q_minus() {
            q.verdict = Verdict::Inside;
            q.includes_isolated_zero = true;
            q.zero_status = ZeroStatus::Isolated;
        } else {
            q.zero_status = ZeroStatus::UndeterminedByPaper;
        }
    }
    q
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint {
    pub theta: f64,
    pub gamma2: Complex64,
    pub sheet1: Complex64,
    pub sheet2: Complex64,
}

/// Boundary of `S_p`: `b(θ)` in the `γ²`-plane and both square roots, with
/// `sheet1` continued along `θ` from `ρ_p` at `θ = 0` and `sheet2 = −sheet1`.
pub fn boundary_curve(params: &TreeParams, p: Exponent, samples: usize) -> Result<Vec<BoundaryPoint>> {
    if samples < 8 {
        return Err(Error::InvalidParams(format!("need at least 8 samples, got {samples}")));
    }
    let qq = params.qq();
    let d = params.d();
    let center = (params.q_plus() + params.q_minus()) as f64 / d;
    let t = (1.0 - 2.0 * p.inv()) * qq.ln();
    let (re_axis, im_axis) = (2.0 * qq / d * t.cosh(), 2.0 * qq / d * t.sinh());
    let mut prev: Option<Complex64> = None;
    let mut out = Vec::with_capacity(samples);
    for j in 0..samples {
        let theta = 2.0 * PI * j as f64 / samples as f64;
        let mut g2 = Complex64::new(center + re_axis * theta.cos(), im_axis * theta.sin());
        if j == 0 {
            // exact ρ_p² at θ = 0
            g2 = Complex64::new(spectral_radius(params, p).powi(2), 0.0);
        }
        let root = g2.sqrt();
        let s1 = match prev {
            Some(pv) if (root - pv).norm() > (root + pv).norm() => -root,
            _ => root,
        };
        prev = Some(s1);
        out.push(BoundaryPoint { theta, gamma2: g2, sheet1: s1, sheet2: -s1 });
    }
    Ok(out)
}

/// `ρ_p = √((q₊ + q₋ + 𝔮^{2/p} + 𝔮^{2/p'})/D)`.
pub fn spectral_radius(params: &TreeParams, p: Exponent) -> f64 {
    let (x, y) = xy(params, p);
    ((params.q_plus() as f64 + params.q_minus() as f64 + x + y) / params.d()).sqrt()
}

/// `p_crit = ln(q₊q₋)/ln q₋` with `q₊` the root degree.
pub fn p_crit(params: &TreeParams) -> f64 {
    let r = params.rooted();
    if r.is_homogeneous() {
        return 2.0;
    }
    (r.q_product() as f64).ln() / (r.q_minus() as f64).ln()
}

/// `ln(q₊q₋)/ln max(q₊, q₋)`: `S_p` is disconnected exactly for `p` strictly
/// between this value and its conjugate.
pub fn split_exponent(params: &TreeParams) -> f64 {
    if params.is_homogeneous() {
        return 2.0;
    }
    let max = params.q_plus().max(params.q_minus()) as f64;
    (params.q_product() as f64).ln() / max.ln()
}

pub fn is_connected(params: &TreeParams, p: Exponent) -> bool {
    let s = Exponent(split_exponent(params));
    params.is_homogeneous() || !(s < p && p < s.conjugate())
}

/// The set of `p` with `φ(·, v₀ | γ) ∈ ℓ^p(V)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "threshold")]
pub enum LpRange {
    Empty,
    /// Bounded but in no `ℓ^p`, `p < ∞`.
    BoundedOnly,
    /// `(threshold, ∞]`.
    Above(f64),
}

impl LpRange {
    pub fn contains(&self, p: Exponent) -> bool {
        match *self {
            LpRange::Empty => false,
            LpRange::BoundedOnly => p.value().is_infinite(),
            LpRange::Above(t) => p.value() > t,
        }
    }

    pub fn threshold(&self) -> Option<f64> {
        match *self {
            LpRange::Above(t) => Some(t),
            LpRange::BoundedOnly => Some(f64::INFINITY),
            LpRange::Empty => None,
        }
    }
}

/// `φ ∈ ℓ^p` iff `|1 − 2/p| > |log_𝔮 |B(γ)||` (`p > 2`); `γ = 0` gives
/// `(p_crit, ∞]`; `B = ±1` gives `(2, ∞]` (linear-in-`n` factor times `𝔮^{−n/2}`).
pub fn lp_range_of_spherical(params: &TreeParams, gamma: Complex64) -> Result<LpRange> {
    if gamma == Complex64::new(0.0, 0.0) {
        return Ok(LpRange::Above(p_crit(params)));
    }
    let e = kernels::endpoints(params);
    for v in [e.a, e.b] {
        if v > 0.0 && (gamma.re.abs() - v).abs() <= tol::ENDPOINT_SNAP * v && gamma.im == 0.0 {
            return Ok(LpRange::Above(2.0));
        }
    }
    let b = if kernels::on_cut(params, gamma) {
        kernels::branch_data_limit(params, gamma).b
    } else {
        kernels::b_of_gamma(params, gamma)?.0
    };
    let l = b.norm().ln().abs() / params.qq().ln();
    Ok(if (l - 1.0).abs() <= 1e-12 {
        LpRange::BoundedOnly
    } else if l > 1.0 {
        LpRange::Empty
    } else {
        LpRange::Above(2.0 / (1.0 - l))
    })
}

/// Residual `|γ(z)² − (q∓Γ±(z) + 1)/(q∓ + 1)|`.
pub fn gamma_relation_residual(params: &TreeParams, z: Complex64, side: Parity) -> f64 {
    let qo = params.q(side.flip()) as f64;
    let lhs = spherical::gamma_squared_of_z(params, z);
    (lhs - (qo * gamma_of_z(params, z, side) + 1.0) / (qo + 1.0)).norm()
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
    fn gamma_of_z_examples() {
        let p = t(5, 2);
        assert!((gamma_of_z(&p, c(0.0, 0.0), Parity::Plus) - 1.0).norm() < 1e-15);
        let lp = 10f64.ln();
        let z = c(2f64.ln() / lp, PI / lp);
        assert!((gamma_of_z(&p, z, Parity::Plus) + 0.5).norm() < 1e-14);
        assert!(gamma_relation_residual(&p, c(0.3, 0.7), Parity::Plus) < 1e-12);
        assert!(gamma_relation_residual(&p, c(0.3, 0.7), Parity::Minus) < 1e-12);
    }

    #[test]
    fn mu2_examples() {
        let p = t(5, 2);
        assert_eq!(mu2_region(&p, Exponent::TWO, Parity::Plus).semi_axis_imag, 0.0);
        let e1 = mu2_region(&p, Exponent::ONE, Parity::Plus);
        assert!((e1.center.re + e1.semi_axis_real - (1.0 / 12.0 + 11.0 / 12.0)).abs() < 1e-15);
    }

    #[test]
    fn sigma_examples() {
        let p = t(5, 2);
        let e = kernels::endpoints(&p);
        for pe in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let s = sigma_p(&p, Exponent::new(pe).unwrap());
            assert!((s.foci.0.re - e.a * e.a).abs() < 1e-12 && (s.foci.1.re - e.b * e.b).abs() < 1e-12);
            let s2 = sigma_p_from(&p, Exponent::new(pe).unwrap(), Parity::Minus);
            assert!((s.center - s2.center).norm() < 1e-15);
            assert!((s.semi_axis_real - s2.semi_axis_real).abs() < 1e-15);
        }
    }

    #[test]
    fn membership_examples() {
        let p = t(5, 2);
        assert_eq!(membership(&p, Exponent::TWO, c(0.5, 0.0)).verdict, Verdict::Inside);
        assert_eq!(membership(&p, Exponent::TWO, c(0.1, 0.0)).verdict, Verdict::Outside);
        for pe in [1.0, 1.3, 2.0, 4.0, f64::INFINITY] {
            let pe = Exponent::new(pe).unwrap();
            let rho = spectral_radius(&p, pe);
            assert_eq!(membership(&p, pe, c(rho, 0.0)).verdict, Verdict::Boundary, "p={pe}");
        }
        let z = membership(&p, Exponent::TWO, c(0.0, 0.0));
        assert!(z.includes_isolated_zero && z.verdict == Verdict::Inside);
        let z = membership(&p, Exponent::new(1.45).unwrap(), c(0.0, 0.0));
        assert_eq!(z.zero_status, ZeroStatus::UndeterminedByPaper);
        let z = membership(&t(2, 5), Exponent::new(1.45).unwrap(), c(0.0, 0.0));
        assert_eq!(z.zero_status, ZeroStatus::Isolated);
    }

    #[test]
    fn radius_examples() {
        let p = t(5, 2);
        assert!((spectral_radius(&p, Exponent::ONE) - 1.0).abs() < 1e-14);
        assert!((spectral_radius(&p, Exponent::INF) - 1.0).abs() < 1e-14);
        assert!((spectral_radius(&p, Exponent::TWO) - kernels::endpoints(&p).b).abs() < 1e-14);
        let r4 = spectral_radius(&p, Exponent::new(4.0).unwrap());
        assert!(kernels::endpoints(&p).b < r4 && r4 < 1.0);
    }

    #[test]
    fn exponents() {
        assert_eq!(p_crit(&t(3, 3)), 2.0);
        assert!((p_crit(&t(5, 2)) - (1.0 + 5f64.ln() / 2f64.ln())).abs() < 1e-14);
        assert!((p_crit(&t(2, 5)) - (1.0 + 2f64.ln() / 5f64.ln())).abs() < 1e-14);
        assert!((split_exponent(&t(5, 2)) - 10f64.ln() / 5f64.ln()).abs() < 1e-14);
        assert_eq!(split_exponent(&t(4, 4)), 2.0);
    }

    #[test]
    fn lp_examples() {
        let r = lp_range_of_spherical(&t(2, 5), c(0.0, 0.0)).unwrap();
        assert!(r.contains(Exponent::TWO) && !r.contains(Exponent::new(1.4).unwrap()));
        let p = t(3, 5);
        let b = kernels::endpoints(&p).b;
        assert_eq!(lp_range_of_spherical(&p, c(b, 0.0)).unwrap(), LpRange::Above(2.0));
    }

    #[test]
    fn boundary_curve_basics() {
        let p = t(5, 2);
        let pe = Exponent::new(3.0).unwrap();
        let pts = boundary_curve(&p, pe, 64).unwrap();
        assert_eq!(pts[0].sheet1, c(spectral_radius(&p, pe), 0.0));
        for pt in &pts {
            assert_eq!(membership(&p, pe, pt.sheet1).verdict, Verdict::Boundary);
            assert_eq!(pt.sheet2, -pt.sheet1);
        }
        assert!(boundary_curve(&p, pe, 7).is_err());
    }
}
