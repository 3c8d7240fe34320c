//! The LP yolk: smallest ball meeting every limiting median line.
//!
//! The underlying problem, `min_c max_i |a_i·c - b_i|`, is a linear program
//! in `k + 1` variables. It is solved with a seeded randomized incremental
//! method; when the optimal center is not unique, the center of least
//! Euclidean norm on the optimal face is returned.

mod seidel;
mod verify;

pub use verify::exhaustive_minimax;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, YolkError};
use crate::geom::{Ball, Hyperplane, Point};
use crate::linalg::min_norm_solution;
use crate::median::{enumerate_limiting_median_lines, Electorate};
use seidel::{lexmin, Row};

/// Seed of the constraint shuffle.
const SHUFFLE_SEED: u64 = 0x9e37_79b9_7f4a_7c15;
/// A constraint counts as active when it is this close to tight.
pub const ACTIVE_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct LpYolkResult {
    pub ball: Ball,
    /// Limiting median lines at distance `radius` (within [`ACTIVE_TOL`]).
    pub active: Vec<Hyperplane>,
    /// No limiting median line exists; the ball is the centroid with radius 0.
    pub degenerate: bool,
}

fn max_distance(lines: &[Hyperplane], c: &[f64]) -> f64 {
    lines
        .iter()
        .map(|h| (crate::geom::dot(h.normal(), c) - h.offset()).abs())
        .fold(0.0, f64::max)
}

/// All normals parallel: the problem is one-dimensional along that normal.
fn parallel_solution(lines: &[Hyperplane]) -> Option<(Vec<f64>, f64)> {
    let a0 = lines[0].normal();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for h in lines {
        let d = crate::geom::dot(a0, h.normal());
        if (d.abs() - 1.0).abs() > 1e-12 {
            return None;
        }
        let b = h.offset() * d.signum();
        lo = lo.min(b);
        hi = hi.max(b);
    }
    let mid = 0.5 * (lo + hi);
    Some((a0.iter().map(|v| v * mid).collect(), 0.5 * (hi - lo)))
}

/// Incremental solve without the least-norm tie-break. Returns the
/// lexicographically smallest `(r, c_1, ..., c_k)` optimum.
pub(crate) fn minimax_center(lines: &[Hyperplane]) -> Result<(Vec<f64>, f64)> {
    let first = lines.first().ok_or(YolkError::EmptyConstraintSet)?;
    let k = first.dim();
    if let Some(h) = lines.iter().find(|h| h.dim() != k) {
        return Err(YolkError::DimensionMismatch {
            expected: k,
            found: h.dim(),
        });
    }
    if let Some(sol) = parallel_solution(lines) {
        return Ok(sol);
    }

    let mut rows: Vec<Row> = Vec::with_capacity(2 * lines.len());
    for h in lines {
        for s in [1.0, -1.0] {
            let mut g: Vec<f64> = h.normal().iter().map(|v| s * v).collect();
            g.push(-1.0);
            rows.push(Row {
                g,
                h: s * h.offset(),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SHUFFLE_SEED ^ rows.len() as u64);
    rows.shuffle(&mut rng);

    let mut objs = vec![vec![0.0; k + 1]; k + 1];
    objs[0][k] = 1.0;
    for (i, o) in objs.iter_mut().skip(1).enumerate() {
        o[i] = 1.0;
    }

    let b_max = lines.iter().map(|h| h.offset().abs()).fold(1.0, f64::max);
    let mut box_half = 1e3 * b_max;
    for _ in 0..4 {
        let mut bounds = vec![(-box_half, box_half); k];
        bounds.push((0.0, 4.0 * (box_half + b_max) * k as f64));
        let sol = lexmin(&rows, &bounds, &objs);
        match sol {
            Some(x) if x[..k].iter().all(|v| v.abs() < 0.5 * box_half) => {
                let c = x[..k].to_vec();
                let r = max_distance(lines, &c);
                return Ok((c, r));
            }
            Some(_) => box_half *= 1e3,
            None => break,
        }
    }
    // Numerical breakdown of the incremental method: fall back to the basis scan.
    exhaustive_minimax(lines).ok_or(YolkError::EmptyConstraintSet)
}

/// Among centers with `max_i |a_i·c - b_i| <= r_opt + tol`, the one of least
/// norm. Candidates are the origin and least-norm points of every
/// intersection of up to `k` level hyperplanes `a_i·c = b_i ± r_opt`.
fn least_norm_center(lines: &[Hyperplane], r_opt: f64, tol: f64) -> Option<Vec<f64>> {
    let k = lines[0].dim();
    let level: Vec<(&[f64], f64, usize)> = lines
        .iter()
        .enumerate()
        .flat_map(|(i, h)| {
            let shifts: &[f64] = if r_opt == 0.0 { &[0.0] } else { &[1.0, -1.0] };
            shifts
                .iter()
                .map(move |s| (h.normal(), h.offset() + s * r_opt, i))
        })
        .collect();

    let feasible = |c: &[f64]| max_distance(lines, c) <= r_opt + tol;
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut consider = |c: Vec<f64>| {
        if feasible(&c) {
            let n: f64 = c.iter().map(|v| v * v).sum();
            if best.as_ref().is_none_or(|(bn, _)| n < *bn - 1e-24) {
                best = Some((n, c));
            }
        }
    };
    consider(vec![0.0; k]);

    // Subsets of size 1..=k in lexicographic order.
    let mut stack: Vec<usize> = Vec::new();
    fn visit(
        level: &[(&[f64], f64, usize)],
        k: usize,
        start: usize,
        stack: &mut Vec<usize>,
        out: &mut dyn FnMut(Vec<f64>),
    ) {
        for i in start..level.len() {
            if stack.iter().any(|&s| level[s].2 == level[i].2) {
                continue;
            }
            stack.push(i);
            let rows: Vec<&[f64]> = stack.iter().map(|&s| level[s].0).collect();
            let rhs: Vec<f64> = stack.iter().map(|&s| level[s].1).collect();
            if let Some(c) = min_norm_solution(&rows, &rhs) {
                out(c);
                if stack.len() < k {
                    visit(level, k, i + 1, stack, out);
                }
            }
            stack.pop();
        }
    }
    visit(&level, k, 0, &mut stack, &mut consider);
    best.map(|(_, c)| c)
}

/// Smallest ball meeting every hyperplane in `lines` (`k` = 2 or 3). Ties in
/// the center go to the least-norm optimum.
pub fn solve_minimax_lines(lines: &[Hyperplane], k: usize) -> Result<Ball> {
    if !(2..=3).contains(&k) {
        return Err(YolkError::UnsupportedDimension(k));
    }
    if lines.is_empty() {
        return Err(YolkError::EmptyConstraintSet);
    }
    if let Some(h) = lines.iter().find(|h| h.dim() != k) {
        return Err(YolkError::DimensionMismatch {
            expected: k,
            found: h.dim(),
        });
    }
    let (c0, r0) = minimax_center(lines)?;
    let scale = lines
        .iter()
        .map(|h| h.offset().abs())
        .chain(c0.iter().map(|v| v.abs()))
        .fold(1.0, f64::max);
    let c = least_norm_center(lines, r0, 1e-11 * scale).unwrap_or(c0);
    let r = max_distance(lines, &c);
    Ball::new(Point::new(c)?, r)
}

/// McKelvey's LP yolk of a planar electorate.
pub fn lp_yolk(e: &Electorate) -> Result<LpYolkResult> {
    if e.dim() != 2 {
        return Err(YolkError::UnsupportedDimension(e.dim()));
    }
    let limiting = enumerate_limiting_median_lines(e)?;
    lp_yolk_from_lines(e, &limiting.lines)
}

/// LP yolk over an explicit family of limiting hyperplanes (any supported
/// dimension). An empty family yields the degenerate centroid ball.
pub fn lp_yolk_from_lines(e: &Electorate, lines: &[Hyperplane]) -> Result<LpYolkResult> {
    if lines.is_empty() {
        return Ok(LpYolkResult {
            ball: Ball::new(e.centroid(), 0.0)?,
            active: Vec::new(),
            degenerate: true,
        });
    }
    let ball = solve_minimax_lines(lines, e.dim())?;
    let active = lines
        .iter()
        .filter(|h| (h.distance(&ball.center) - ball.radius).abs() <= ACTIVE_TOL)
        .cloned()
        .collect();
    Ok(LpYolkResult {
        ball,
        active,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn line(a: &[f64], b: f64) -> Hyperplane {
        Hyperplane::new(a.to_vec(), b).unwrap()
    }

    /// Incircle via side lengths, independent of the LP code.
    fn incircle(p: [f64; 2], q: [f64; 2], s: [f64; 2]) -> ([f64; 2], f64) {
        let d = |u: [f64; 2], v: [f64; 2]| (u[0] - v[0]).hypot(u[1] - v[1]);
        let (la, lb, lc) = (d(q, s), d(p, s), d(p, q));
        let per = la + lb + lc;
        let c = [
            (la * p[0] + lb * q[0] + lc * s[0]) / per,
            (la * p[1] + lb * q[1] + lc * s[1]) / per,
        ];
        let area = ((q[0] - p[0]) * (s[1] - p[1]) - (s[0] - p[0]) * (q[1] - p[1])).abs() / 2.0;
        (c, 2.0 * area / per)
    }

    #[test]
    fn triangle_gives_incircle() {
        let (p, q, s) = ([0.0, 0.0], [4.0, 0.5], [1.0, 3.0]);
        let pts = [p, q, s].map(|v| Point::xy(v[0], v[1]));
        let lines = [
            crate::geom::line_through_points(&pts[0], &pts[1]).unwrap(),
            crate::geom::line_through_points(&pts[1], &pts[2]).unwrap(),
            crate::geom::line_through_points(&pts[2], &pts[0]).unwrap(),
        ];
        let ball = solve_minimax_lines(&lines, 2).unwrap();
        let (c, r) = incircle(p, q, s);
        assert!((ball.radius - r).abs() < 1e-12);
        assert!((ball.center.x() - c[0]).abs() < 1e-12);
        assert!((ball.center.y() - c[1]).abs() < 1e-12);
    }

    #[test]
    fn parallel_pair_is_least_norm() {
        let ball = solve_minimax_lines(&[line(&[1.0, 0.0], 1.0), line(&[1.0, 0.0], -1.0)], 2).unwrap();
        assert_eq!(ball.radius, 1.0);
        assert_eq!(ball.center.coords(), &[0.0, 0.0]);
    }

    #[test]
    fn single_line_foot() {
        let h = line(&[3.0, 4.0], 10.0);
        let ball = solve_minimax_lines(&[h], 2).unwrap();
        assert_eq!(ball.radius, 0.0);
        assert!((ball.center.x() - 1.2).abs() < 1e-12);
        assert!((ball.center.y() - 1.6).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert_eq!(solve_minimax_lines(&[], 2), Err(YolkError::EmptyConstraintSet));
        assert!(matches!(
            solve_minimax_lines(&[line(&[1.0, 0.0], 0.0)], 3),
            Err(YolkError::DimensionMismatch { .. })
        ));
        let e3 = Electorate::new(vec![Point::xyz(0.0, 0.0, 0.0)]).unwrap();
        assert_eq!(lp_yolk(&e3), Err(YolkError::UnsupportedDimension(3)));
    }

    #[test]
    fn nondegenerate_lp_yolk() {
        for eps in [0.5, 0.1, 0.01] {
            let e = Electorate::from_xy(&[
                (2.0, eps),
                (2.0, -eps),
                (-2.0, eps),
                (-2.0, -eps),
                (1.0, 0.0),
                (-1.0, 0.0),
            ]);
            let res = lp_yolk(&e).unwrap();
            let expected = eps / (1.0 + eps * eps).sqrt();
            assert!((res.ball.radius - expected).abs() < 1e-12, "eps {eps}");
            assert!(res.ball.center.x().abs() < 1e-12 && res.ball.center.y().abs() < 1e-12);
            assert!(res.active.len() >= 2);
        }
    }

    #[test]
    fn equilateral_and_repeated() {
        let s = 2.0;
        let h = s * 3f64.sqrt() / 2.0;
        let e = Electorate::from_xy(&[(0.0, 0.0), (s, 0.0), (s / 2.0, h)]);
        let res = lp_yolk(&e).unwrap();
        assert!((res.ball.radius - s / (2.0 * 3f64.sqrt())).abs() < 1e-12);

        let e = Electorate::from_xy(&[(1.0, 1.0), (1.0, 1.0), (1.0, 1.0)]);
        let res = lp_yolk(&e).unwrap();
        assert!(res.degenerate);
        assert_eq!(res.ball.radius, 0.0);
        assert_eq!(res.ball.center.coords(), &[1.0, 1.0]);
    }

    #[test]
    fn three_dimensional_plane() {
        let h = line(&[0.0, 0.0, 1.0], 0.0);
        let ball = solve_minimax_lines(&[h], 3).unwrap();
        assert_eq!(ball.radius, 0.0);
        assert_eq!(ball.center.coords(), &[0.0, 0.0, 0.0]);
    }

    fn random_lines(rng: &mut ChaCha8Rng, m: usize) -> Vec<Hyperplane> {
        (0..m)
            .map(|_| {
                Hyperplane::from_angle(
                    rng.random::<f64>() * std::f64::consts::TAU,
                    rng.random::<f64>() * 2.0 - 1.0,
                )
            })
            .collect()
    }

    #[test]
    fn agrees_with_basis_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..200 {
            let m = 1 + trial % 30;
            let lines = random_lines(&mut rng, m);
            let ball = solve_minimax_lines(&lines, 2).unwrap();
            let (_, r) = exhaustive_minimax(&lines).unwrap();
            assert!((ball.radius - r).abs() < 1e-9, "trial {trial}: {} vs {r}", ball.radius);
            for h in &lines {
                assert!(h.distance(&ball.center) <= ball.radius + 1e-12);
            }
        }
    }

    #[test]
    fn deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let lines = random_lines(&mut rng, 25);
        let a = solve_minimax_lines(&lines, 2).unwrap();
        let b = solve_minimax_lines(&lines, 2).unwrap();
        assert_eq!(a.radius.to_bits(), b.radius.to_bits());
        assert_eq!(a.center, b.center);
    }

    #[test]
    fn perturbing_an_active_offset_moves_radius_at_most_the_shift() {
        // Moving an active line by +1e-4 cannot make the unperturbed optimum
        // infeasible by more than 1e-4, so the radius changes by at most that.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let lines = random_lines(&mut rng, 12);
            let base = solve_minimax_lines(&lines, 2).unwrap();
            for (i, h) in lines.iter().enumerate() {
                if (h.distance(&base.center) - base.radius).abs() > ACTIVE_TOL {
                    continue;
                }
                let mut moved = lines.clone();
                moved[i] = Hyperplane::oriented(h.normal().to_vec(), h.offset() + 1e-4).unwrap();
                let r = solve_minimax_lines(&moved, 2).unwrap().radius;
                assert!((r - base.radius).abs() <= 1e-4 + 1e-12);
            }
        }
    }
}
