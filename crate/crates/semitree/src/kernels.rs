//! γ-dependent analytic quantities: `W`, `R`, `F±`, `F̃±`, `B = 𝔮F⁺F⁻` and the
//! harmonic and generalized Poisson kernels.
//!
//! `R(γ)` is realized as `psqrt(N̂ − s₊)·psqrt(N̂ − s₋)` with `s± = q₊ + q₋ ± 2𝔮`
//! and `psqrt` the principal square root. Its only discontinuity is on the cuts
//! `[−b, −a] ∪ [a, b]`; it is positive on `(b, ∞)` and negative on `(−a, a)`.
//!
//! `F±` is the continuation of the probability that the walk started at a
//! vertex of `V±` ever visits a given neighbour.

use num_complex::Complex64;

use crate::{Error, Parity, Result, TreeParams};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumEndpoints {
    pub a: f64,
    pub b: f64,
}

pub fn endpoints(params: &TreeParams) -> SpectrumEndpoints {
    let (sp, sm) = ((params.q_plus() as f64).sqrt(), (params.q_minus() as f64).sqrt());
    let sd = params.d().sqrt();
    SpectrumEndpoints { a: (sp - sm).abs() / sd, b: (sp + sm) / sd }
}

/// Half-plane from which `γ → 0` is approached (homogeneous trees only).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Approach {
    Upper,
    Lower,
}

fn real_aware(gamma: Complex64) -> Complex64 {
    // a negative zero imaginary part would flip psqrt on the negative axis
    if gamma.im == 0.0 {
        Complex64::new(gamma.re, 0.0)
    } else {
        gamma
    }
}

/// `N̂ = (q₊+1)(q₋+1)γ²`.
pub fn gamma_hat(params: &TreeParams, gamma: Complex64) -> Complex64 {
    let g = real_aware(gamma);
    let g2 = if g.im == 0.0 { Complex64::new(g.re * g.re, 0.0) } else { g * g };
    g2 * params.d()
}

fn sum_diff(params: &TreeParams) -> (f64, f64) {
    let (qp, qm) = (params.q_plus() as f64, params.q_minus() as f64);
    (qp + qm, qp - qm)
}

/// `W = N̂² − 2(q₊+q₋)N̂ + (q₊−q₋)²`.
pub fn quartic_w(params: &TreeParams, gamma: Complex64) -> Complex64 {
    let n = gamma_hat(params, gamma);
    let (s, d) = sum_diff(params);
    n * n - 2.0 * s * n + d * d
}

/// Strictly inside `(−b, −a) ∪ (a, b)` on the real axis.
pub fn on_cut(params: &TreeParams, gamma: Complex64) -> bool {
    if gamma.im != 0.0 {
        return false;
    }
    let SpectrumEndpoints { a, b } = endpoints(params);
    let x = gamma.re.abs();
    a < x && x < b
}

fn r_principal(params: &TreeParams, n: Complex64) -> Complex64 {
    let (s, _) = sum_diff(params);
    let two_qq = 2.0 * params.qq();
    (n - (s + two_qq)).sqrt() * (n - (s - two_qq)).sqrt()
}

pub fn root_r(params: &TreeParams, gamma: Complex64) -> Result<Complex64> {
    if on_cut(params, gamma) {
        return Err(Error::OnCut(gamma));
    }
    Ok(r_principal(params, gamma_hat(params, gamma)))
}

/// Boundary value of `R` on the cuts from the upper half-plane.
fn r_cut_limit(params: &TreeParams, x: f64) -> Complex64 {
    let w = quartic_w(params, Complex64::new(x, 0.0)).re;
    Complex64::new(0.0, x.signum() * (-w).max(0.0).sqrt())
}

/// Everything that depends on `γ`, computed once.
///
/// `None` in an `F` slot marks a pole at `γ = 0`, or a limit that depends on the
/// approach direction (homogeneous trees).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchData {
    pub gamma: Complex64,
    pub gamma_hat: Complex64,
    pub w: Complex64,
    pub r: Complex64,
    pub f_plus: Option<Complex64>,
    pub f_minus: Option<Complex64>,
    pub ft_plus: Option<Complex64>,
    pub ft_minus: Option<Complex64>,
    pub b: Complex64,
    pub bt: Complex64,
    pub on_cut: bool,
    pub at_zero: bool,
}

impl BranchData {
    pub fn f(&self, sign: Parity) -> Option<Complex64> {
        match sign {
            Parity::Plus => self.f_plus,
            Parity::Minus => self.f_minus,
        }
    }

    pub fn ft(&self, sign: Parity) -> Option<Complex64> {
        match sign {
            Parity::Plus => self.ft_plus,
            Parity::Minus => self.ft_minus,
        }
    }
}

/// `(q∓+1)/(q∓(q±+1))`, the product `F±·F̃±`.
pub fn f_product(params: &TreeParams, sign: Parity) -> f64 {
    let qs = params.q(sign) as f64;
    let qo = params.q(sign.flip()) as f64;
    (qo + 1.0) / (qo * (qs + 1.0))
}

/// The two roots of a quadratic with known product, each computed without cancellation.
fn stable_pair(minus: Complex64, plus: Complex64, den: Complex64, product: f64) -> (Complex64, Complex64) {
    if minus.norm() >= plus.norm() {
        let x = minus / den;
        (x, product / x)
    } else {
        let y = plus / den;
        (product / y, y)
    }
}

fn assemble(params: &TreeParams, gamma: Complex64, r: Complex64, on_cut: bool) -> BranchData {
    let n = gamma_hat(params, gamma);
    let (s, d) = sum_diff(params);
    let w = n * n - 2.0 * s * n + d * d;
    let qq = params.qq();
    let (b, bt) = stable_pair(n - s - r, n - s + r, Complex64::new(2.0 * qq, 0.0), 1.0);

    let at_zero = gamma == ZERO;
    let (mut fp, mut fm, mut ftp, mut ftm) = (None, None, None, None);
    if at_zero {
        let (qp, qm) = (params.q_plus(), params.q_minus());
        if qp > qm {
            fp = Some(ZERO);
            ftm = Some(ZERO);
        } else if qp < qm {
            fm = Some(ZERO);
            ftp = Some(ZERO);
        }
    } else {
        for sign in [Parity::Plus, Parity::Minus] {
            let qs = params.q(sign) as f64;
            let qo = params.q(sign.flip()) as f64;
            let shift = if sign == Parity::Plus { -d } else { d };
            let den = gamma * (2.0 * qo * (qs + 1.0));
            let (f, ft) = stable_pair(n + shift - r, n + shift + r, den, f_product(params, sign));
            match sign {
                Parity::Plus => (fp, ftp) = (Some(f), Some(ft)),
                Parity::Minus => (fm, ftm) = (Some(f), Some(ft)),
            }
        }
    }
    BranchData {
        gamma,
        gamma_hat: n,
        w,
        r,
        f_plus: fp,
        f_minus: fm,
        ft_plus: ftp,
        ft_minus: ftm,
        b,
        bt,
        on_cut,
        at_zero,
    }
}

/// All branch quantities at `γ` off the cuts.
pub fn branch_data(params: &TreeParams, gamma: Complex64) -> Result<BranchData> {
    let gamma = real_aware(gamma);
    let r = root_r(params, gamma)?;
    Ok(assemble(params, gamma, r, false))
}

/// Like [`branch_data`], but on the cuts returns the limit from `γ + iε`, `ε → 0⁺`.
pub fn branch_data_limit(params: &TreeParams, gamma: Complex64) -> BranchData {
    let gamma = real_aware(gamma);
    if on_cut(params, gamma) {
        assemble(params, gamma, r_cut_limit(params, gamma.re), true)
    } else {
        assemble(params, gamma, r_principal(params, gamma_hat(params, gamma)), false)
    }
}

fn zero_limit(params: &TreeParams, value: Option<Complex64>) -> Result<Complex64> {
    match value {
        Some(v) => Ok(v),
        None if params.is_homogeneous() => Err(Error::NeedsDirection),
        None => Err(Error::Pole),
    }
}

/// `F±(γ) = (N̂ ∓ (q₊−q₋) − R)/(2q∓(q±+1)γ)`.
pub fn hitting_f(params: &TreeParams, gamma: Complex64, sign: Parity) -> Result<Complex64> {
    zero_limit(params, branch_data(params, gamma)?.f(sign))
}

/// `F̃±(γ)`, the same expression with `+R`.
pub fn hitting_ft(params: &TreeParams, gamma: Complex64, sign: Parity) -> Result<Complex64> {
    zero_limit(params, branch_data(params, gamma)?.ft(sign))
}

/// Limits of `(F±, F̃±)` as `γ → 0`. For `q₊ ≠ q₋` the direction is irrelevant;
/// on homogeneous trees the limits are `∓i/√q` and `±i/√q` for the upper half-plane.
pub fn hitting_at_zero(
    params: &TreeParams,
    sign: Parity,
    approach: Approach,
) -> (Option<Complex64>, Option<Complex64>) {
    if params.is_homogeneous() {
        let s = 1.0 / (params.q_plus() as f64).sqrt();
        let f = match approach {
            Approach::Upper => Complex64::new(0.0, -s),
            Approach::Lower => Complex64::new(0.0, s),
        };
        return (Some(f), Some(-f));
    }
    let bd = assemble(params, ZERO, r_principal(params, ZERO), false);
    (bd.f(sign), bd.ft(sign))
}

/// `(B, B̃)` with `B = 𝔮F⁺F⁻ = (N̂−(q₊+q₋)−R)/(2𝔮)` and `B̃ = 1/B`.
pub fn b_of_gamma(params: &TreeParams, gamma: Complex64) -> Result<(Complex64, Complex64)> {
    let bd = branch_data(params, gamma)?;
    Ok((bd.b, bd.bt))
}

/// Harmonic Poisson kernel `K(v, v₀, ω)` for `|v| = n` and closest-vertex index `k`.
pub fn poisson_kernel(params: &TreeParams, n: usize, k: usize) -> f64 {
    let r = params.rooted();
    let h = crate::tree::horospherical_index(k, n);
    let prod = r.q_product() as f64;
    if n % 2 == 0 {
        prod.powi((h / 2) as i32)
    } else {
        let (qp, qm) = (r.q_plus() as f64, r.q_minus() as f64);
        // √(q₋/q₊)·𝔮^h = q₋·(q₊q₋)^{(h−1)/2}
        (qp + 1.0) / (qm + 1.0) * qm * prod.powi(((h - 1) / 2) as i32)
    }
}

fn check_parity(params: &TreeParams, v_class: Parity, h: i64) -> Result<bool> {
    let even = v_class == params.root_parity();
    if even != (h % 2 == 0) {
        return Err(Error::ParityMismatch { h, parity: v_class });
    }
    Ok(even)
}

/// Generalized Poisson kernel `K(v, v₀, ω | γ)`, with `v_class` the class of `v`
/// (`|v|` is even iff it equals the root class) and `h` the horospherical index.
pub fn generalized_poisson(
    params: &TreeParams,
    v_class: Parity,
    h: i64,
    gamma: Complex64,
) -> Result<Complex64> {
    let even = check_parity(params, v_class, h)?;
    let r = params.rooted();
    let bd = branch_data(&r, gamma)?;
    let ff = bd.b / r.qq();
    if bd.at_zero {
        let max = r.q_plus().max(r.q_minus()) as f64;
        let ff0 = Complex64::new(-1.0 / max, 0.0);
        if even {
            return Ok(ff0.powi(-(h / 2) as i32));
        }
        let fm = zero_limit(&r, bd.f_minus)?;
        return Ok(ff0.powi(-((h + 1) / 2) as i32) * fm);
    }
    if even {
        Ok(ff.powi(-(h / 2) as i32))
    } else {
        let fm = bd.f_minus.expect("F⁻ is finite off zero");
        Ok(ff.powi(-((h + 1) / 2) as i32) * fm)
    }
}

/// Alternative kernel `K̃ = F̃(v, j)/F̃(v₀, j)`, identically 1 at `γ = 1`.
///
/// Since `F̃⁺F̃⁻ = 𝔮⁻²/(F⁺F⁻)`, this is `𝔮^h/K` for even `|v|` and
/// `𝔮^h/K · √q₋(q₊+1)/(√q₊(q₋+1))` for odd `|v|`.
pub fn alt_generalized_poisson(
    params: &TreeParams,
    v_class: Parity,
    h: i64,
    gamma: Complex64,
) -> Result<Complex64> {
    let k = generalized_poisson(params, v_class, h, gamma)?;
    if k == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole);
    }
    let r = params.rooted();
    let mut out = r.qq().powi(h as i32) / k;
    if h % 2 != 0 {
        let (qp, qm) = (r.q_plus() as f64, r.q_minus() as f64);
        out *= qm.sqrt() * (qp + 1.0) / (qp.sqrt() * (qm + 1.0));
    }
    Ok(out)
}
