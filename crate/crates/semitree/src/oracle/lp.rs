use num_complex::Complex64;

use crate::tree::ln_sphere_cardinality;
use crate::{tol, Error, Result, TreeParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LpVerdict {
    Summable,
    NotSummable,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct LpDiagnostic {
    /// `ln S_n`, `S_n = Σ_{m≤n} |S(v₀, m)|·|f_m|^p`.
    pub log_partial_sums: Vec<f64>,
    /// Per-step growth ratio of the terms, fitted on the last half of the range.
    pub ratio: f64,
    pub verdict: LpVerdict,
}

/// `ln |f_m|`, `m = 0..=n`, of the recurrence profile, rescaled as it runs so
/// that neither overflow nor underflow occurs. Exact zeros give `−∞`.
pub fn log_abs_profile(params: &TreeParams, gamma: Complex64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    if n == 0 {
        return out;
    }
    let (mut prev, mut cur) = (Complex64::new(1.0, 0.0), gamma);
    let mut shift = 0.0f64;
    out.push(cur.norm().ln());
    for m in 1..n {
        let q = params.q(params.root_parity().at_distance(m)) as f64;
        let next = ((q + 1.0) * gamma * cur - prev) / q;
        prev = cur;
        cur = next;
        let scale = cur.norm().max(prev.norm());
        if scale > 1e100 || (scale < 1e-100 && scale > 0.0) {
            prev /= scale;
            cur /= scale;
            shift += scale.ln();
        }
        out.push(cur.norm().ln() + shift);
    }
    out
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

pub fn lp_partial_sums(params: &TreeParams, gamma: Complex64, p: f64, n: usize) -> Result<LpDiagnostic> {
    lp_partial_sums_with_margin(params, gamma, p, n, tol::LP_MARGIN)
}

/// Verdict `Summable` iff the fitted ratio is below `1 − margin`, `NotSummable`
/// iff above `1 + margin`.
pub fn lp_partial_sums_with_margin(
    params: &TreeParams,
    gamma: Complex64,
    p: f64,
    n: usize,
    margin: f64,
) -> Result<LpDiagnostic> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidParams(format!("need a finite exponent p >= 1, got {p}")));
    }
    if n < 8 {
        return Err(Error::InvalidParams("need at least 8 spheres".into()));
    }
    let logs = log_abs_profile(params, gamma, n);
    let terms: Vec<f64> = logs
        .iter()
        .enumerate()
        .map(|(m, &l)| ln_sphere_cardinality(params, params.root_parity(), m) + p * l)
        .collect();
    let mut log_partial_sums = Vec::with_capacity(n + 1);
    let mut acc = f64::NEG_INFINITY;
    for &t in &terms {
        acc = log_add(acc, t);
        log_partial_sums.push(acc);
    }
    // least-squares slope over even m in the last half (odd terms may vanish)
    let pts: Vec<(f64, f64)> = (n / 2..=n)
        .filter(|m| m % 2 == 0 && terms[*m].is_finite())
        .map(|m| (m as f64, terms[m]))
        .collect();
    let ratio = if pts.len() < 2 {
        f64::NAN
    } else {
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        (sxy / sxx).exp()
    };
    let verdict = if ratio < 1.0 - margin {
        LpVerdict::Summable
    } else if ratio > 1.0 + margin {
        LpVerdict::NotSummable
    } else {
        LpVerdict::Inconclusive
    };
    Ok(LpDiagnostic { log_partial_sums, ratio, verdict })
}
