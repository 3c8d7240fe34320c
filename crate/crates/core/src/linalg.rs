//! Tiny dense solvers for the 2-4 variable systems used by the LP code.

/// Solve the square system `a x = b` by Gaussian elimination with partial
/// pivoting. Returns `None` when a pivot falls below `1e-12` relative to the
/// largest entry of `a`.
pub(crate) fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flat_map(|r| r.iter().map(|v| v.abs()))
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Least-norm solution of the underdetermined system `rows · x = rhs`
/// (`x = Aᵀ (A Aᵀ)⁻¹ rhs`). `None` if the rows are linearly dependent.
pub(crate) fn min_norm_solution(rows: &[&[f64]], rhs: &[f64]) -> Option<Vec<f64>> {
    let m = rows.len();
    let dim = rows.first()?.len();
    let gram: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| rows[i].iter().zip(rows[j]).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    let y = solve(gram, rhs.to_vec())?;
    let mut x = vec![0.0; dim];
    for (row, yi) in rows.iter().zip(&y) {
        for (xk, rk) in x.iter_mut().zip(row.iter()) {
            *xk += yi * rk;
        }
    }
    Some(x)
}

/// Orthonormal basis of the span of `vectors` (modified Gram-Schmidt,
/// vectors shorter than `tol` after projection are dropped).
pub(crate) fn span_basis(vectors: &[&[f64]], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.to_vec();
        for _ in 0..2 {
            for q in &basis {
                let p: f64 = w.iter().zip(q).map(|(a, b)| a * b).sum();
                for (wk, qk) in w.iter_mut().zip(q) {
                    *wk -= p * qk;
                }
            }
        }
        let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > tol {
            basis.push(w.into_iter().map(|x| x / n).collect());
        }
    }
    basis
}
