//! Seidel's randomized incremental linear programming in a handful of
//! variables, with a lexicographic objective so that the optimum is unique.
//!
//! The caller supplies the constraint order; shuffling happens once, up
//! front, with a fixed seed so results are reproducible bit for bit.

/// `g · x <= h`
#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub g: Vec<f64>,
    pub h: f64,
}

/// Relative slack accepted before a constraint counts as violated.
const VIOLATION_TOL: f64 = 1e-12;
/// Coefficients below this (relative) are treated as zero.
const ZERO_TOL: f64 = 1e-12;

fn violated(row: &Row, x: &[f64]) -> bool {
    let mut lhs = 0.0;
    let mut mag = row.h.abs();
    for (g, v) in row.g.iter().zip(x) {
        lhs += g * v;
        mag += (g * v).abs();
    }
    lhs > row.h + VIOLATION_TOL * (1.0 + mag)
}

/// Sign of the first objective that is not negligible along variable `l`.
/// `true` means the objective increases with `x_l`, so the lower bound wins.
fn prefers_low(objs: &[Vec<f64>], l: usize) -> bool {
    for o in objs {
        let scale = o.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if scale > 0.0 && o[l].abs() > ZERO_TOL * scale {
            return o[l] > 0.0;
        }
    }
    true
}

fn box_optimum(bounds: &[(f64, f64)], objs: &[Vec<f64>]) -> Vec<f64> {
    (0..bounds.len())
        .map(|l| {
            if prefers_low(objs, l) {
                bounds[l].0
            } else {
                bounds[l].1
            }
        })
        .collect()
}

fn solve_1d(rows: &[Row], bounds: (f64, f64), objs: &[Vec<f64>]) -> Option<Vec<f64>> {
    let (mut lo, mut hi) = bounds;
    for r in rows {
        let g = r.g[0];
        let tol = VIOLATION_TOL * (1.0 + r.h.abs());
        if g.abs() <= ZERO_TOL {
            if r.h < -tol {
                return None;
            }
        } else if g > 0.0 {
            hi = hi.min(r.h / g);
        } else {
            lo = lo.max(r.h / g);
        }
    }
    if lo > hi {
        if lo - hi > VIOLATION_TOL * (1.0 + lo.abs() + hi.abs()) * 1e3 {
            return None;
        }
        let mid = 0.5 * (lo + hi);
        lo = mid;
        hi = mid;
    }
    Some(vec![if prefers_low(objs, 0) { lo } else { hi }])
}

/// Substitute `x_j = (h - Σ_{l≠j} g_l x_l) / g_j` from the row `on`.
struct Elimination<'a> {
    on: &'a Row,
    j: usize,
}

impl Elimination<'_> {
    fn reduce_vec(&self, v: &[f64]) -> (Vec<f64>, f64) {
        let gj = self.on.g[self.j];
        let f = v[self.j] / gj;
        let reduced = v
            .iter()
            .zip(&self.on.g)
            .enumerate()
            .filter(|(l, _)| *l != self.j)
            .map(|(_, (vl, gl))| vl - f * gl)
            .collect();
        (reduced, f * self.on.h)
    }

    /// Reduced row, rescaled so its largest coefficient has magnitude one.
    /// `None` when the row degenerates to `0 <= h'` (kept out of the subproblem).
    fn reduce_row(&self, r: &Row) -> Result<Option<Row>, ()> {
        let (g, shift) = self.reduce_vec(&r.g);
        let h = r.h - shift;
        let scale = g.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let ref_scale = r.g.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if scale <= ZERO_TOL * ref_scale.max(1.0) {
            return if h < -VIOLATION_TOL * (1.0 + r.h.abs() + shift.abs()) * 1e3 {
                Err(())
            } else {
                Ok(None)
            };
        }
        Ok(Some(Row {
            g: g.into_iter().map(|v| v / scale).collect(),
            h: h / scale,
        }))
    }

    fn lift(&self, y: &[f64]) -> Vec<f64> {
        let mut x = Vec::with_capacity(y.len() + 1);
        x.extend_from_slice(&y[..self.j]);
        x.push(0.0);
        x.extend_from_slice(&y[self.j..]);
        let s: f64 = (0..x.len())
            .filter(|&l| l != self.j)
            .map(|l| self.on.g[l] * x[l])
            .sum();
        x[self.j] = (self.on.h - s) / self.on.g[self.j];
        x
    }
}

/// Lexicographic minimum of `objs` over `{x : rows, bounds}`; `None` if
/// infeasible (or numerically judged so).
pub(crate) fn lexmin(rows: &[Row], bounds: &[(f64, f64)], objs: &[Vec<f64>]) -> Option<Vec<f64>> {
    let d = bounds.len();
    if d == 1 {
        return solve_1d(rows, bounds[0], objs);
    }
    let mut x = box_optimum(bounds, objs);
    for i in 0..rows.len() {
        if !violated(&rows[i], &x) {
            continue;
        }
        let on = &rows[i];
        let j = (0..d).max_by(|&a, &b| on.g[a].abs().total_cmp(&on.g[b].abs()))?;
        if on.g[j].abs() <= ZERO_TOL {
            return None;
        }
        let elim = Elimination { on, j };

        let mut sub_rows = Vec::with_capacity(i + 2);
        let (lo_j, hi_j) = bounds[j];
        let mut upper = vec![0.0; d];
        upper[j] = 1.0;
        let lower: Vec<f64> = upper.iter().map(|v| -v).collect();
        for r in [
            Row { g: upper, h: hi_j },
            Row { g: lower, h: -lo_j },
        ]
        .iter()
        .chain(&rows[..i])
        {
            match elim.reduce_row(r) {
                Ok(Some(row)) => sub_rows.push(row),
                Ok(None) => {}
                Err(()) => return None,
            }
        }
        let sub_bounds: Vec<(f64, f64)> = bounds
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != j)
            .map(|(_, b)| *b)
            .collect();
        let sub_objs: Vec<Vec<f64>> = objs.iter().map(|o| elim.reduce_vec(o).0).collect();
        let y = lexmin(&sub_rows, &sub_bounds, &sub_objs)?;
        x = elim.lift(&y);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(g: &[f64], h: f64) -> Row {
        Row { g: g.to_vec(), h }
    }

    #[test]
    fn triangle_vertex() {
        // min -x - y  s.t. x + y <= 1, x >= 0, y >= 0; lexicographic tie on x.
        let rows = [row(&[1.0, 1.0], 1.0), row(&[-1.0, 0.0], 0.0), row(&[0.0, -1.0], 0.0)];
        let objs = vec![vec![-1.0, -1.0], vec![1.0, 0.0]];
        let x = lexmin(&rows, &[(-10.0, 10.0), (-10.0, 10.0)], &objs).unwrap();
        assert!((x[0]).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible() {
        let rows = [row(&[1.0, 0.0], -1.0), row(&[-1.0, 0.0], -1.0)];
        let objs = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(lexmin(&rows, &[(-10.0, 10.0), (-10.0, 10.0)], &objs).is_none());
    }

    #[test]
    fn minimax_of_two_lines() {
        // |x - 1| <= r and |x + 1| <= r in (x, y, r): r = 1, x = 0, y at its lower bound.
        let rows = [
            row(&[1.0, 0.0, -1.0], 1.0),
            row(&[-1.0, 0.0, -1.0], -1.0),
            row(&[1.0, 0.0, -1.0], -1.0),
            row(&[-1.0, 0.0, -1.0], 1.0),
        ];
        let objs = vec![vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
        let x = lexmin(&rows, &[(-5.0, 5.0), (-5.0, 5.0), (0.0, 50.0)], &objs).unwrap();
        assert!((x[2] - 1.0).abs() < 1e-12);
        assert!(x[0].abs() < 1e-12);
        assert_eq!(x[1], -5.0);
    }
}
