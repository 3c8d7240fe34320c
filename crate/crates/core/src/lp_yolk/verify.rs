//! Exhaustive basis enumeration for the minimax line problem. Slow
//! (`O(m^(k+1))`) and independent of the incremental solver, which makes it
//! a cross-check rather than a production path.

use crate::geom::Hyperplane;
use crate::linalg::{solve, span_basis};

/// Optimal value and one optimal center of `min_c max_i |a_i·c - b_i|`,
/// found by trying every basis of `rank + 1` tight constraints.
pub fn exhaustive_minimax(lines: &[Hyperplane]) -> Option<(Vec<f64>, f64)> {
    let k = lines.first()?.dim();
    let normals: Vec<&[f64]> = lines.iter().map(|h| h.normal()).collect();
    let basis = span_basis(&normals, 1e-9);
    let p = basis.len();

    // Work in coordinates of the normals' span; the orthogonal part of the
    // center is irrelevant to every constraint.
    let reduced: Vec<(Vec<f64>, f64)> = lines
        .iter()
        .map(|h| {
            let a: Vec<f64> = basis
                .iter()
                .map(|q| q.iter().zip(h.normal()).map(|(x, y)| x * y).sum())
                .collect();
            (a, h.offset())
        })
        .collect();
    // Rows s(a·z - b) - r <= 0 over (z, r).
    let rows: Vec<(Vec<f64>, f64)> = reduced
        .iter()
        .flat_map(|(a, b)| {
            [1.0, -1.0].into_iter().map(move |s| {
                let mut g: Vec<f64> = a.iter().map(|v| s * v).collect();
                g.push(-1.0);
                (g, s * b)
            })
        })
        .collect();
    let scale = lines.iter().map(|h| h.offset().abs()).fold(1.0, f64::max);
    let tol = 1e-9 * scale;

    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut idx: Vec<usize> = (0..=p).collect();
    let n = rows.len();
    if n < p + 1 {
        return None;
    }
    loop {
        let a: Vec<Vec<f64>> = idx.iter().map(|&i| rows[i].0.clone()).collect();
        let b: Vec<f64> = idx.iter().map(|&i| rows[i].1).collect();
        if let Some(x) = solve(a, b) {
            let r = x[p];
            let feasible = rows.iter().all(|(g, h)| {
                let lhs: f64 = g.iter().zip(&x).map(|(u, v)| u * v).sum();
                lhs <= h + tol
            });
            if feasible && best.as_ref().is_none_or(|(_, br)| r < *br) {
                best = Some((x, r));
            }
        }
        // next combination
        let mut i = p + 1;
        loop {
            if i == 0 {
                let (z, r) = best?;
                let mut c = vec![0.0; k];
                for (zi, q) in z[..p].iter().zip(&basis) {
                    for (ck, qk) in c.iter_mut().zip(q) {
                        *ck += zi * qk;
                    }
                }
                return Some((c, r));
            }
            i -= 1;
            if idx[i] < n - (p + 1 - i) {
                idx[i] += 1;
                for t in i + 1..=p {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}
