//! Exact combinatorics of `T(q₊, q₋)` and explicit truncated trees.
//!
//! Boundary points are never materialized: every boundary quantity depends on
//! `ω` only through the closest-vertex index `k` on the geodesic `[v₀, v_n]`
//! and the horospherical index `2k − n`.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::{Error, Parity, Result, TreeParams};

/// Default bound on the number of vertices of a [`TruncatedTree`].
pub const DEFAULT_VERTEX_LIMIT: u128 = 60_000_000;

/// Number of vertices at distance `n` from a vertex of class `parity`.
pub fn sphere_cardinality(params: &TreeParams, parity: Parity, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let qv = params.q(parity) as u64;
    let qo = params.q(parity.flip()) as u64;
    let prod = BigUint::from(params.q_product());
    if n % 2 == 1 {
        BigUint::from(qv + 1) * prod.pow((n - 1) / 2)
    } else {
        BigUint::from(qv + 1) * prod.pow((n - 2) / 2) * BigUint::from(qo)
    }
}

/// `ln` of [`sphere_cardinality`], for growth diagnostics at large `n`.
pub fn ln_sphere_cardinality(params: &TreeParams, parity: Parity, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let qv = params.q(parity) as f64;
    let qo = params.q(parity.flip()) as f64;
    let lp = (params.q_product() as f64).ln();
    if n % 2 == 1 {
        (qv + 1.0).ln() + lp * ((n - 1) / 2) as f64
    } else {
        (qv + 1.0).ln() + lp * ((n - 2) / 2) as f64 + qo.ln()
    }
}

/// `ν_{v₀}(Ω(v₀, v))` for `|v| = n`: the equidistributed measure of one arc.
pub fn arc_measure(params: &TreeParams, n: usize) -> BigRational {
    BigRational::new(
        BigUint::one().into(),
        sphere_cardinality(params, params.root_parity(), n).into(),
    )
}

/// The measures `ν_{v₀}(Ω_k(v₀, v_n))`, `k = 0..=n`, of the boundary points whose
/// closest vertex on `[v₀, v_n]` is `v_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcPartition {
    pub n: usize,
    pub measures: Vec<BigRational>,
}

impl ArcPartition {
    pub fn total(&self) -> BigRational {
        self.measures.iter().fold(BigRational::zero(), |acc, m| acc + m)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.measures.iter().map(|m| m.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn arc_partition(params: &TreeParams, n: usize) -> ArcPartition {
    let r = params.rooted();
    let (qp, qm) = (r.q_plus() as u64, r.q_minus() as u64);
    let big = |x: u64| BigUint::from(x);
    let prod = big(qp * qm);
    if n == 0 {
        return ArcPartition { n, measures: vec![BigRational::one()] };
    }
    let mut measures = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let m = if k == 0 {
            ratio(big(qp), big(qp + 1))
        } else if k < n && k % 2 == 0 {
            ratio(big(qp - 1), big(qp + 1) * prod.clone().pow(k / 2))
        } else if k < n {
            // 𝔮^{−k}·√(q₊/q₋) = q₊^{−(k−1)/2}·q₋^{−(k+1)/2}
            let den = big(qp + 1) * big(qp).pow((k - 1) / 2) * big(qm).pow(k.div_ceil(2));
            ratio(big(qm - 1), den)
        } else if k % 2 == 0 {
            ratio(big(qp), big(qp + 1) * prod.clone().pow(k / 2))
        } else {
            let den = big(qp + 1) * big(qp).pow((k - 1) / 2) * big(qm).pow(k.div_ceil(2));
            ratio(big(qm), den)
        };
        measures.push(m);
    }
    ArcPartition { n, measures }
}

/// `h = 2k − n`, the level of the horosphere through `v_n` relative to `v₀`.
pub fn horospherical_index(k: usize, n: usize) -> i64 {
    debug_assert!(k <= n, "closest-vertex index {k} beyond path length {n}");
    2 * k as i64 - n as i64
}

/// Explicit ball of radius `depth` around the root, in BFS order.
///
/// Children of each vertex are contiguous: vertex `v` owns
/// `child_start[v]..child_start[v + 1]`.
#[derive(Clone, Debug)]
pub struct TruncatedTree {
    params: TreeParams,
    depth: usize,
    parent: Vec<u32>,
    level: Vec<u8>,
    child_start: Vec<u32>,
    level_start: Vec<usize>,
}

/// Exact number of vertices of the ball of radius `depth`.
pub fn vertex_count(params: &TreeParams, depth: usize) -> BigUint {
    (0..=depth).map(|n| sphere_cardinality(params, params.root_parity(), n)).sum()
}

pub fn build_truncated_tree(params: &TreeParams, depth: usize) -> Result<TruncatedTree> {
    build_truncated_tree_with_limit(params, depth, DEFAULT_VERTEX_LIMIT)
}

pub fn build_truncated_tree_with_limit(
    params: &TreeParams,
    depth: usize,
    limit: u128,
) -> Result<TruncatedTree> {
    if depth == 0 {
        return Err(Error::Domain("truncated tree needs depth >= 1".into()));
    }
    if depth > u8::MAX as usize {
        return Err(Error::Capacity { needed: depth as u128, limit: u8::MAX as u128 });
    }
    let count = vertex_count(params, depth);
    let needed = count.to_u128().unwrap_or(u128::MAX);
    if needed > limit || needed > u32::MAX as u128 {
        return Err(Error::Capacity { needed, limit: limit.min(u32::MAX as u128) });
    }
    let total = needed as usize;

    let mut parent = Vec::with_capacity(total);
    let mut level = Vec::with_capacity(total);
    let mut child_start = Vec::with_capacity(total + 1);
    let mut level_start = Vec::with_capacity(depth + 2);

    parent.push(u32::MAX);
    level.push(0u8);
    level_start.push(0);
    let mut next = 1u32;
    for d in 0..=depth {
        let (lo, hi) = (level_start[d], parent.len());
        level_start.push(hi);
        let parity = params.root_parity().at_distance(d);
        let children = if d == depth {
            0
        } else if d == 0 {
            params.q(parity) + 1
        } else {
            params.q(parity)
        };
        for v in lo..hi {
            child_start.push(next);
            for _ in 0..children {
                parent.push(v as u32);
                level.push((d + 1) as u8);
            }
            next += children;
        }
    }
    child_start.push(next);
    debug_assert_eq!(parent.len(), total);
    Ok(TruncatedTree { params: *params, depth, parent, level, child_start, level_start })
}

impl TruncatedTree {
    pub fn params(&self) -> &TreeParams {
        &self.params
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (v != 0).then(|| self.parent[v] as usize)
    }

    pub fn level(&self, v: usize) -> usize {
        self.level[v] as usize
    }

    pub fn levels(&self) -> &[u8] {
        &self.level
    }

    pub fn parity(&self, v: usize) -> Parity {
        self.params.root_parity().at_distance(self.level(v))
    }

    pub fn children(&self, v: usize) -> std::ops::Range<usize> {
        self.child_start[v] as usize..self.child_start[v + 1] as usize
    }

    /// Vertex range of the sphere of radius `n`.
    pub fn sphere(&self, n: usize) -> std::ops::Range<usize> {
        self.level_start[n]..self.level_start[n + 1]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.parent(v).into_iter().chain(self.children(v))
    }

    /// Vertices whose full neighbourhood is present (`|v| < depth`).
    pub fn interior_mask(&self, radius: usize) -> Vec<bool> {
        self.level.iter().map(|&l| (l as usize) + radius <= self.depth).collect()
    }

    /// Lift a radial profile `f₀..f_N` to vertex values.
    pub fn lift(&self, profile: &[Complex64]) -> Vec<Complex64> {
        self.level.iter().map(|&l| profile[l as usize]).collect()
    }
}

/// Operator output with the mask of vertices where the value is exact.
#[derive(Clone, Debug)]
pub struct Masked {
    pub values: Vec<Complex64>,
    pub interior: Vec<bool>,
}

/// Average over nearest neighbours, on vertices of depth `< N`.
pub fn apply_mu1(tree: &TruncatedTree, f: &[Complex64]) -> Masked {
    assert_eq!(f.len(), tree.len(), "function must be defined on every vertex");
    let interior = tree.interior_mask(1);
    let values = (0..tree.len())
        .map(|v| {
            if !interior[v] {
                return Complex64::new(0.0, 0.0);
            }
            let (sum, deg) = tree
                .neighbors(v)
                .fold((Complex64::new(0.0, 0.0), 0u32), |(s, c), u| (s + f[u], c + 1));
            sum / deg as f64
        })
        .collect();
    Masked { values, interior }
}

/// Average over the sphere of radius 2, on vertices of depth `< N − 1`.
pub fn apply_mu2(tree: &TruncatedTree, f: &[Complex64]) -> Masked {
    assert_eq!(f.len(), tree.len(), "function must be defined on every vertex");
    let interior = tree.interior_mask(2);
    let values = (0..tree.len())
        .map(|v| {
            if !interior[v] {
                return Complex64::new(0.0, 0.0);
            }
            let mut sum = Complex64::new(0.0, 0.0);
            let mut count = 0u32;
            for u in tree.neighbors(v) {
                for w in tree.neighbors(u).filter(|&w| w != v) {
                    sum += f[w];
                    count += 1;
                }
            }
            sum / count as f64
        })
        .collect();
    Masked { values, interior }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(qp: u32, qm: u32) -> TreeParams {
        TreeParams::new(qp, qm).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sphere_examples() {
        let p = t(5, 2);
        assert_eq!(sphere_cardinality(&p, Parity::Plus, 0), BigUint::from(1u32));
        assert_eq!(sphere_cardinality(&p, Parity::Plus, 1), BigUint::from(6u32));
        assert_eq!(sphere_cardinality(&p, Parity::Plus, 2), BigUint::from(12u32));
        assert_eq!(sphere_cardinality(&p, Parity::Minus, 2), BigUint::from(15u32));
    }

    #[test]
    fn arc_examples() {
        let p = t(5, 2);
        assert_eq!(arc_measure(&p, 0), rat(1, 1));
        assert_eq!(arc_measure(&p, 1), rat(1, 6));
        assert_eq!(arc_measure(&p, 2), rat(1, 12));
        assert_eq!(arc_partition(&p, 1).measures, vec![rat(5, 6), rat(1, 6)]);
        assert_eq!(arc_partition(&p, 0).measures, vec![rat(1, 1)]);
        let two = arc_partition(&p, 2);
        assert_eq!(two.total(), rat(1, 1));
        assert_eq!(two.measures[2], rat(1, 12));
    }

    #[test]
    fn root_in_minus_uses_its_own_degree() {
        let p = TreeParams::with_root(5, 2, Parity::Minus).unwrap();
        assert_eq!(arc_measure(&p, 1), rat(1, 3));
        assert_eq!(arc_partition(&p, 1).measures, vec![rat(2, 3), rat(1, 3)]);
    }

    #[test]
    fn horospherical_examples() {
        assert_eq!(horospherical_index(0, 0), 0);
        assert_eq!(horospherical_index(1, 1), 1);
        assert_eq!(horospherical_index(0, 1), -1);
    }

    #[test]
    fn tree_sizes() {
        assert_eq!(build_truncated_tree(&t(2, 3), 1).unwrap().len(), 4);
        assert_eq!(build_truncated_tree(&t(5, 2), 2).unwrap().len(), 19);
        assert_eq!(build_truncated_tree(&t(2, 2), 3).unwrap().len(), 22);
    }

    #[test]
    fn capacity_is_reported() {
        let err = build_truncated_tree_with_limit(&t(5, 5), 6, 1000).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
    }

    #[test]
    fn delta_at_root() {
        let tree = build_truncated_tree(&t(3, 5), 3).unwrap();
        let mut f = vec![Complex64::new(0.0, 0.0); tree.len()];
        f[0] = Complex64::new(1.0, 0.0);
        let out = apply_mu1(&tree, &f);
        for v in 0..tree.len() {
            if !out.interior[v] {
                continue;
            }
            // a depth-1 vertex lies in V₋ and has q₋ + 1 = 6 neighbours
            let expect = if tree.level(v) == 1 { 1.0 / 6.0 } else { 0.0 };
            assert_eq!(out.values[v], Complex64::new(expect, 0.0), "vertex {v}");
        }
    }
}
