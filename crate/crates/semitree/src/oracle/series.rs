use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::kernels;
use crate::{Error, Parity, Result, TreeParams};

/// Upper bound on the number of exact series terms.
pub const MAX_SERIES_TERMS: usize = 20_000;

/// Distance-to-target process of the nearest-neighbour walk.
#[derive(Clone, Copy, Debug)]
pub struct BirthDeathChain {
    pub params: TreeParams,
    pub target_parity: Parity,
}

impl BirthDeathChain {
    pub fn new(params: TreeParams, target_parity: Parity) -> Self {
        BirthDeathChain { params, target_parity }
    }

    /// Degree `q(d)` of a vertex at distance `d` from the target.
    pub fn q_at(&self, d: usize) -> u32 {
        self.params.q(self.target_parity.at_distance(d))
    }

    pub fn p_down(&self, d: usize) -> BigRational {
        BigRational::new(1.into(), (self.q_at(d) as u64 + 1).into())
    }

    pub fn p_up(&self, d: usize) -> BigRational {
        BigRational::new((self.q_at(d) as u64).into(), (self.q_at(d) as u64 + 1).into())
    }

    /// Exact distance distributions, as numerators over `C^t` with
    /// `C = (q₊+1)(q₋+1)`. `absorbing` kills mass at distance 0 after recording it.
    /// Returns the mass found at distance 0 after each step `1..=n`.
    fn mass_at_zero(&self, start: usize, n: usize, absorbing: bool) -> Vec<BigRational> {
        let c = (self.params.q_plus() as u64 + 1) * (self.params.q_minus() as u64 + 1);
        // C / (q(d)+1) is the other class's q + 1
        let down = |d: usize| BigUint::from(c / (self.q_at(d) as u64 + 1));
        let mut state: Vec<BigUint> = vec![BigUint::zero(); start + 1];
        state[start] = BigUint::from(1u32);
        let mut denom = BigUint::from(1u32);
        let mut out = Vec::with_capacity(n + 1);
        out.push(if start == 0 { BigRational::from_integer(1.into()) } else { BigRational::zero() });
        for t in 1..=n {
            // mass beyond distance n − t can no longer reach 0 by step n
            let reach = n - t;
            let mut next = vec![BigUint::zero(); (state.len() + 1).min(reach + 2)];
            for (d, m) in state.iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                if d == 0 {
                    // reflecting root: always step out
                    if 1 < next.len() {
                        next[1] += m * c;
                    }
                    continue;
                }
                let w = m * down(d);
                if d + 1 < next.len() {
                    next[d + 1] += &w * self.q_at(d);
                }
                next[d - 1] += w;
            }
            next.truncate(reach + 1);
            denom *= c;
            let hit = next[0].clone();
            out.push(BigRational::new(hit.into(), denom.clone().into()));
            if absorbing {
                next[0] = BigUint::zero();
            }
            state = next;
        }
        out
    }
}

fn check_terms(n: usize) -> Result<()> {
    if n > MAX_SERIES_TERMS {
        return Err(Error::Capacity { needed: n as u128, limit: MAX_SERIES_TERMS as u128 });
    }
    Ok(())
}

/// `f^{(0)}..f^{(n)}`: probability that the walk started at a neighbour of a
/// target of class `target_parity` first hits the target at step `k`.
///
/// The start vertex has the opposite class, so these are the coefficients of
/// `F^{−target}` (e.g. `target_parity = Minus` gives `F⁺`).
pub fn first_passage_coefficients(params: &TreeParams, target_parity: Parity, n: usize) -> Result<Vec<BigRational>> {
    check_terms(n)?;
    Ok(BirthDeathChain::new(*params, target_parity).mass_at_zero(1, n, true))
}

/// `p^{(0)}..p^{(n)}` of the return probabilities to the root.
pub fn return_probabilities(params: &TreeParams, n: usize) -> Result<Vec<BigRational>> {
    check_terms(n)?;
    Ok(BirthDeathChain::new(*params, params.root_parity()).mass_at_zero(0, n, false))
}

/// A truncated power series in `1/γ`.
#[derive(Clone, Debug)]
pub struct SeriesEstimate {
    pub coefficients: Vec<BigRational>,
    pub gamma: Complex64,
    pub partial_sum: Complex64,
    /// Geometric bound on the omitted terms, from the last retained one.
    pub tail_bound: f64,
    /// False when the last retained terms are not decreasing.
    pub cauchy_ok: bool,
}

fn summed(coefficients: Vec<BigRational>, gamma: Complex64, shift: i32, b: f64) -> SeriesEstimate {
    let inv = 1.0 / gamma;
    let mut pow = inv.powi(shift);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut terms = Vec::with_capacity(coefficients.len());
    for c in &coefficients {
        let t = pow * c.to_f64().unwrap_or(0.0);
        sum += t;
        terms.push(t.norm());
        pow *= inv;
    }
    // nonzero terms come every other step
    let nonzero: Vec<f64> = terms.iter().copied().filter(|&t| t > 0.0).collect();
    let last = nonzero.last().copied().unwrap_or(0.0);
    let cauchy_ok = nonzero.len() < 2 || nonzero[nonzero.len() - 1] <= nonzero[nonzero.len() - 2];
    let rho = (b / gamma.norm()).powi(2);
    let tail_bound = last * rho / (1.0 - rho);
    SeriesEstimate { coefficients, gamma, partial_sum: sum, tail_bound, cauchy_ok }
}

fn check_convergence(params: &TreeParams, gamma: Complex64) -> Result<f64> {
    let b = kernels::endpoints(params).b;
    if gamma.norm() <= b {
        return Err(Error::Divergent(gamma.norm()));
    }
    Ok(b)
}

/// `Σ_{k≤n} f^{(k)} γ^{−k}`, converging to `F^{−target}(γ)` for `|γ| > b`.
pub fn f_series(params: &TreeParams, target_parity: Parity, gamma: Complex64, n: usize) -> Result<SeriesEstimate> {
    let b = check_convergence(params, gamma)?;
    let coefficients = first_passage_coefficients(params, target_parity, n)?;
    Ok(summed(coefficients, gamma, 0, b))
}

/// `G(v₀, v₀ | γ) ≈ Σ_{k≤n} p^{(k)}(v₀, v₀) γ^{−k−1}`.
pub fn green_series(params: &TreeParams, gamma: Complex64, n: usize) -> Result<SeriesEstimate> {
    let b = check_convergence(params, gamma)?;
    let coefficients = return_probabilities(params, n)?;
    Ok(summed(coefficients, gamma, 1, b))
}
