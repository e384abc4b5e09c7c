use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::spherical::recurrence_eval;
use crate::tree::{build_truncated_tree, TruncatedTree};
use crate::{Result, TreeParams};

/// `max |μ₁f − γf| / (1 + |γf|)` over the interior of a depth-`n` tree, with
/// `f` the recurrence profile lifted to vertices.
pub fn eigen_residual(params: &TreeParams, gamma: Complex64, n: usize) -> Result<f64> {
    Ok(eigen_residuals(params, &[gamma], n)?[0])
}

/// [`eigen_residual`] for many `γ` sharing one tree.
pub fn eigen_residuals(params: &TreeParams, gammas: &[Complex64], n: usize) -> Result<Vec<f64>> {
    let tree = build_truncated_tree(params, n)?;
    Ok(eigen_residuals_on(&tree, gammas))
}

/// Neighbour census of one vertex: its level and how many neighbours sit one
/// level up, one level down and on the same level.
type Signature = (u8, u32, u32, u32);

/// Vertex-level sweep. Every interior vertex's neighbours are read through
/// the tree's own links; since the lifted `f` depends only on the level, the
/// residual at `v` is a function of its neighbour census, so each distinct
/// census is evaluated once for all `γ`.
pub fn eigen_residuals_on(tree: &TruncatedTree, gammas: &[Complex64]) -> Vec<f64> {
    let depth = tree.depth();
    let levels = tree.levels();
    let mut census: BTreeSet<Signature> = BTreeSet::new();
    for v in 0..tree.len() {
        let lv = levels[v];
        if lv as usize >= depth {
            break;
        }
        let (mut up, mut down, mut same) = (0u32, 0u32, 0u32);
        for u in tree.neighbors(v) {
            match levels[u] as i32 - lv as i32 {
                -1 => up += 1,
                1 => down += 1,
                0 => same += 1,
                d => panic!("neighbour at level offset {d} in a breadth-first tree"),
            }
        }
        census.insert((lv, up, down, same));
    }
    gammas
        .iter()
        .map(|&g| {
            let f = recurrence_eval(tree.params(), g, depth).values;
            let zero = Complex64::new(0.0, 0.0);
            census
                .iter()
                .map(|&(l, up, down, same)| {
                    let l = l as usize;
                    let above = if l > 0 { f[l - 1] } else { zero };
                    let acc = above * up as f64 + f[l + 1] * down as f64 + f[l] * same as f64;
                    let gf = g * f[l];
                    (acc / (up + down + same) as f64 - gf).norm() / (1.0 + gf.norm())
                })
                .fold(0.0, f64::max)
        })
        .collect()
}
