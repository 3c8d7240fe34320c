//! The yolk: smallest ball meeting every median line of a planar electorate.
//!
//! For a center `c` let `f(c)` be the largest distance from `c` to a median
//! line. `f` is convex and the yolk is its minimizer. It is evaluated exactly
//! by an angular sweep: between consecutive directions at which two ideal
//! points project equally, the points realizing the median slab are fixed, so
//! the required distance is a maximum of two sinusoids in the angle.
//!
//! Minimization uses cutting planes. Every median line gives a lower bound
//! through the minimax LP over the lines collected so far, and the sweep at
//! the LP center supplies the next lines and an upper bound.

use std::f64::consts::PI;

use crate::certify::hemisphere_cover;
use crate::error::{Result, YolkError};
use crate::geom::{angle_of, dot, tangent_hyperplane, Ball, Direction, Hyperplane, Point};
use crate::lp_yolk::minimax_center;
use crate::median::{enumerate_limiting_median_lines, median_slab, slab_bounds, Electorate, MedianSlab};

/// Critical angles closer than this are merged.
const MERGE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepEvaluation {
    /// `f(c)`: the largest distance from `c` to a median line.
    pub value: f64,
    pub argmax_direction: Direction,
    pub argmax_slab: MedianSlab,
}

/// A local maximum of the required distance over directions.
#[derive(Clone, Debug)]
pub(crate) struct LocalMax {
    pub theta: f64,
    pub value: f64,
    pub b_lo: f64,
    pub b_hi: f64,
}

/// Arcs of `[0, π)` on which the median order statistics come from fixed points.
pub(crate) struct SweepTable {
    pts: Vec<[f64; 2]>,
    /// Arc `j` is `[bounds[j], bounds[j + 1]]`; the last bound is π.
    bounds: Vec<f64>,
    lo: Vec<usize>,
    hi: Vec<usize>,
    scale: f64,
}

struct Piece {
    value: f64,
    slope: f64,
}

impl SweepTable {
    pub(crate) fn new(e: &Electorate) -> Result<Self> {
        if e.dim() != 2 {
            return Err(YolkError::UnsupportedDimension(e.dim()));
        }
        let pts = e.xy();
        let n = pts.len();
        let mut crit = vec![0.0];
        for i in 0..n {
            for j in i + 1..n {
                let (dx, dy) = (pts[j][0] - pts[i][0], pts[j][1] - pts[i][1]);
                if dx.hypot(dy) <= MERGE_TOL {
                    continue;
                }
                // a(θ)·(p_j - p_i) = 0
                let t = (angle_of([dx, dy]) + 0.5 * PI) % PI;
                crit.push(t);
            }
        }
        crit.sort_unstable_by(f64::total_cmp);
        let mut bounds: Vec<f64> = Vec::with_capacity(crit.len() + 1);
        for t in crit {
            let last = *bounds.last().unwrap_or(&f64::NEG_INFINITY);
            if t - last > MERGE_TOL && PI - t > MERGE_TOL {
                bounds.push(t);
            }
        }
        bounds.push(PI);

        let arcs = bounds.len() - 1;
        let (mut lo, mut hi) = (Vec::with_capacity(arcs), Vec::with_capacity(arcs));
        let mut order: Vec<usize> = (0..n).collect();
        let mut proj = vec![0.0; n];
        for j in 0..arcs {
            let (s, c) = (0.5 * (bounds[j] + bounds[j + 1])).sin_cos();
            for (p, q) in proj.iter_mut().zip(&pts) {
                *p = c * q[0] + s * q[1];
            }
            // The order changes little between arcs, so insertion sort is cheap.
            for k in 1..n {
                let mut m = k;
                while m > 0 && proj[order[m - 1]] > proj[order[m]] {
                    order.swap(m - 1, m);
                    m -= 1;
                }
            }
            if n % 2 == 1 {
                lo.push(order[n / 2]);
                hi.push(order[n / 2]);
            } else {
                lo.push(order[n / 2 - 1]);
                hi.push(order[n / 2]);
            }
        }
        Ok(Self {
            pts,
            bounds,
            lo,
            hi,
            scale: e.scale(),
        })
    }

    fn pieces(&self, j: usize, theta: f64, c: [f64; 2]) -> (Piece, Piece) {
        let (s, co) = theta.sin_cos();
        let (pl, ph) = (self.pts[self.lo[j]], self.pts[self.hi[j]]);
        let vl = [c[0] - pl[0], c[1] - pl[1]];
        let vh = [ph[0] - c[0], ph[1] - c[1]];
        (
            Piece {
                value: co * vl[0] + s * vl[1],
                slope: -s * vl[0] + co * vl[1],
            },
            Piece {
                value: co * vh[0] + s * vh[1],
                slope: -s * vh[0] + co * vh[1],
            },
        )
    }

    fn local_max(&self, j: usize, theta: f64, c: [f64; 2]) -> LocalMax {
        let (l, h) = self.pieces(j, theta, c);
        let (s, co) = theta.sin_cos();
        let (pl, ph) = (self.pts[self.lo[j]], self.pts[self.hi[j]]);
        let value = l.value.max(h.value);
        LocalMax {
            theta,
            value,
            b_lo: co * pl[0] + s * pl[1],
            b_hi: co * ph[0] + s * ph[1],
        }
    }

    /// All local maxima of the required distance over directions in `[0, π)`.
    pub(crate) fn local_maxima(&self, c: [f64; 2]) -> Vec<LocalMax> {
        let arcs = self.lo.len();
        let tie = 1e-12 * (1.0 + self.scale);
        let mut out = Vec::new();

        // One-sided derivatives of max(L, H) at an arc end.
        let slope = |l: &Piece, h: &Piece, right: bool| {
            if l.value > h.value + tie {
                l.slope
            } else if h.value > l.value + tie {
                h.slope
            } else if right {
                l.slope.max(h.slope)
            } else {
                l.slope.min(h.slope)
            }
        };

        for j in 0..arcs {
            let (t0, t1) = (self.bounds[j], self.bounds[j + 1]);

            // Arc start: left neighbour is the previous arc, or the last arc at π.
            let (prev, prev_theta) = if j == 0 { (arcs - 1, PI) } else { (j - 1, t0) };
            let (pl, ph) = self.pieces(prev, prev_theta, c);
            let (nl, nh) = self.pieces(j, t0, c);
            if slope(&pl, &ph, false) >= -tie && slope(&nl, &nh, true) <= tie {
                out.push(self.local_max(j, t0, c));
            }

            // Interior stationary points of each sinusoid.
            let (pl, ph) = (self.pts[self.lo[j]], self.pts[self.hi[j]]);
            for (v, is_lo) in [
                ([c[0] - pl[0], c[1] - pl[1]], true),
                ([ph[0] - c[0], ph[1] - c[1]], false),
            ] {
                if v[0].hypot(v[1]) <= tie {
                    continue;
                }
                let t = angle_of(v);
                if t > t0 && t < t1 {
                    let (l, h) = self.pieces(j, t, c);
                    let (own, other) = if is_lo { (l, h) } else { (h, l) };
                    if own.value >= other.value - tie {
                        out.push(self.local_max(j, t, c));
                    }
                }
            }
        }
        out
    }

    pub(crate) fn evaluate(&self, c: [f64; 2]) -> LocalMax {
        self.local_maxima(c)
            .into_iter()
            .reduce(|a, b| if b.value > a.value { b } else { a })
            .expect("the required distance attains its maximum")
    }
}

/// `f(c)`, the largest distance from `c` to a median line, and where it is attained.
pub fn max_median_distance(c: &Point, e: &Electorate) -> Result<SweepEvaluation> {
    if c.dim() != 2 {
        return Err(YolkError::UnsupportedDimension(c.dim()));
    }
    let table = SweepTable::new(e)?;
    let m = table.evaluate(c.xy_array());
    let dir = Direction::from_angle(m.theta);
    Ok(SweepEvaluation {
        value: m.value.max(0.0),
        argmax_direction: dir.clone(),
        argmax_slab: MedianSlab {
            direction: dir,
            b_lo: m.b_lo,
            b_hi: m.b_hi,
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct YolkOptions {
    /// Cutting-plane iterations before giving up.
    pub max_iter: usize,
    /// Target gap between upper and lower radius bounds, relative to `1 + scale`.
    pub tol: f64,
    /// Directions attaining `f` within this (relative to `1 + r`) count as tangent.
    pub tangent_tol: f64,
}

impl Default for YolkOptions {
    fn default() -> Self {
        Self {
            max_iter: 100_000,
            tol: 1e-10,
            tangent_tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct YolkResult {
    pub ball: Ball,
    /// Outward normals of tangent median lines at their tangency points.
    pub tangent_directions: Vec<Direction>,
    /// The tangent median lines themselves.
    pub tangents: Vec<Hyperplane>,
    pub iterations: usize,
    /// The tangent directions leave no open hemisphere uncovered.
    pub certified: bool,
    /// Certified lower bound on the yolk radius.
    pub lower_bound: f64,
}

pub fn yolk(e: &Electorate) -> Result<YolkResult> {
    yolk_with_options(e, &YolkOptions::default())
}

pub fn yolk_with_options(e: &Electorate, opts: &YolkOptions) -> Result<YolkResult> {
    let table = SweepTable::new(e)?;
    let scale = e.scale();
    let tol = opts.tol * (1.0 + scale);

    let mut cuts: Vec<Hyperplane> = enumerate_limiting_median_lines(e)?.lines;
    for theta in [0.0, 0.5 * PI] {
        let slab = median_slab(&Direction::from_angle(theta), e)?;
        cuts.push(slab.lo_hyperplane());
        cuts.push(slab.hi_hyperplane());
    }

    let mut best_c = e.centroid().xy_array();
    let mut best_f = table.evaluate(best_c).value;
    let mut lower = 0.0f64;
    let mut gaps: Vec<f64> = Vec::new();
    let mut iterations = 0;
    loop {
        if iterations >= opts.max_iter {
            return Err(YolkError::ConvergenceFailure {
                iterations,
                best: Ball::new(Point::xy(best_c[0], best_c[1]), best_f)?,
            });
        }
        iterations += 1;
        let (c, r) = minimax_center(&cuts)?;
        let c = [c[0], c[1]];
        lower = lower.max(r);
        let maxima = table.local_maxima(c);
        let f = maxima.iter().map(|m| m.value).fold(0.0, f64::max);
        if f < best_f {
            best_f = f;
            best_c = c;
        }
        let gap = best_f - lower;
        if gap <= tol {
            break;
        }
        gaps.push(gap);
        if gaps.len() > 50 && gaps[gaps.len() - 51] - gap < 1e-3 * tol {
            break;
        }
        for m in maxima.iter().filter(|m| m.value > r + 0.5 * tol) {
            let a = Direction::from_angle(m.theta).as_slice().to_vec();
            cuts.push(Hyperplane::oriented(a.clone(), m.b_lo)?);
            if m.b_hi != m.b_lo {
                cuts.push(Hyperplane::oriented(a, m.b_hi)?);
            }
        }
    }

    let ball = Ball::new(Point::xy(best_c[0], best_c[1]), best_f.max(0.0))?;
    let (tangent_directions, tangents) = tangent_set(&table, &ball, opts.tangent_tol)?;
    let exact: Vec<Hyperplane> = tangent_directions
        .iter()
        .map(|d| tangent_hyperplane(&ball, d))
        .collect::<Result<_>>()?;
    let certified = !exact.is_empty() && hemisphere_cover(&ball, &exact)?.covered;
    Ok(YolkResult {
        ball,
        tangent_directions,
        tangents,
        iterations,
        certified,
        lower_bound: lower.min(best_f),
    })
}

fn tangent_set(
    table: &SweepTable,
    ball: &Ball,
    tangent_tol: f64,
) -> Result<(Vec<Direction>, Vec<Hyperplane>)> {
    let r = ball.radius;
    let c = ball.center.xy_array();
    let tol = tangent_tol * (1.0 + r);
    let tiny = 1e-12 * (1.0 + table.scale);
    let mut dirs = Vec::new();
    let mut lines = Vec::new();
    for m in table.local_maxima(c) {
        if m.value < r - tol {
            continue;
        }
        let a = Direction::from_angle(m.theta);
        let mut push = |b: f64| -> Result<()> {
            let off = b - dot(a.as_slice(), &c);
            if r <= tiny {
                dirs.push(a.clone());
                dirs.push(a.negate());
            } else if off > 0.0 {
                dirs.push(a.clone());
            } else {
                dirs.push(a.negate());
            }
            lines.push(Hyperplane::oriented(a.as_slice().to_vec(), b)?);
            Ok(())
        };
        let (sl, sh) = (dot(a.as_slice(), &c) - m.b_lo, m.b_hi - dot(a.as_slice(), &c));
        if sl >= r - tol {
            push(m.b_lo)?;
        }
        if sh >= r - tol && (m.b_hi != m.b_lo || sl < r - tol) {
            push(m.b_hi)?;
        }
    }
    Ok((dirs, lines))
}

/// Resolution of the grid search in [`brute_force_yolk`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    /// Grid points per axis.
    pub resolution: usize,
    /// Times the grid is rebuilt around the best point.
    pub refinements: usize,
    /// Half-width of each refined grid, in cells of the previous grid.
    pub window: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            resolution: 21,
            refinements: 4,
            window: 2,
        }
    }
}

/// Required distance sampled on a fixed set of directions (structure of arrays).
struct SampledDirections {
    ax: Vec<f64>,
    ay: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl SampledDirections {
    fn new(e: &Electorate, n_dirs: usize) -> Self {
        let pts = e.xy();
        let mut s = Self {
            ax: Vec::with_capacity(n_dirs),
            ay: Vec::with_capacity(n_dirs),
            lo: Vec::with_capacity(n_dirs),
            hi: Vec::with_capacity(n_dirs),
        };
        let mut proj = vec![0.0; pts.len()];
        for k in 0..n_dirs {
            let (y, x) = (PI * k as f64 / n_dirs as f64).sin_cos();
            for (p, q) in proj.iter_mut().zip(&pts) {
                *p = x * q[0] + y * q[1];
            }
            let (lo, hi) = slab_bounds(&mut proj);
            s.ax.push(x);
            s.ay.push(y);
            s.lo.push(lo);
            s.hi.push(hi);
        }
        s
    }

    fn eval(&self, cx: f64, cy: f64) -> f64 {
        const LANES: usize = 8;
        let mut acc = [f64::NEG_INFINITY; LANES];
        let n = self.ax.len() / LANES * LANES;
        for ((ax, ay), (lo, hi)) in self.ax[..n]
            .chunks_exact(LANES)
            .zip(self.ay[..n].chunks_exact(LANES))
            .zip(self.lo[..n].chunks_exact(LANES).zip(self.hi[..n].chunks_exact(LANES)))
        {
            for l in 0..LANES {
                let s = ax[l] * cx + ay[l] * cy;
                let v = s - lo[l];
                let w = hi[l] - s;
                let g = if v > w { v } else { w };
                acc[l] = if g > acc[l] { g } else { acc[l] };
            }
        }
        let mut m = acc.into_iter().fold(f64::NEG_INFINITY, f64::max);
        for k in n..self.ax.len() {
            let s = self.ax[k] * cx + self.ay[k] * cy;
            m = m.max(s - self.lo[k]).max(self.hi[k] - s);
        }
        m.max(0.0)
    }
}

/// Grid search for the yolk over `n_dirs` evenly spaced directions. A
/// verification oracle: slow, and only as accurate as the sampling.
pub fn brute_force_yolk(e: &Electorate, n_dirs: usize, grid: GridSpec) -> Result<Ball> {
    if e.dim() != 2 {
        return Err(YolkError::UnsupportedDimension(e.dim()));
    }
    if n_dirs < 1000 {
        return Err(YolkError::InvalidParameter(format!(
            "n_dirs must be at least 1000, got {n_dirs}"
        )));
    }
    if grid.resolution < 2 || grid.window == 0 {
        return Err(YolkError::InvalidParameter(
            "grid needs resolution >= 2 and window >= 1".into(),
        ));
    }
    let dirs = SampledDirections::new(e, n_dirs);
    let pts = e.xy();
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for p in &pts {
        xmin = xmin.min(p[0]);
        xmax = xmax.max(p[0]);
        ymin = ymin.min(p[1]);
        ymax = ymax.max(p[1]);
    }
    let mut center = [0.5 * (xmin + xmax), 0.5 * (ymin + ymax)];
    let mut half = 0.55 * (xmax - xmin).max(ymax - ymin);
    let mut best = (dirs.eval(center[0], center[1]), center);
    if half == 0.0 {
        return Ball::new(Point::xy(center[0], center[1]), best.0);
    }
    let res = grid.resolution;
    for _ in 0..=grid.refinements {
        let h = 2.0 * half / (res - 1) as f64;
        for i in 0..res {
            let x = center[0] - half + h * i as f64;
            for j in 0..res {
                let y = center[1] - half + h * j as f64;
                let v = dirs.eval(x, y);
                if v < best.0 {
                    best = (v, [x, y]);
                }
            }
        }
        center = best.1;
        half = grid.window as f64 * h;
    }
    Ball::new(Point::xy(best.1[0], best.1[1]), best.0)
}
