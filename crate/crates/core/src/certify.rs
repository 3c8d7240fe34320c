//! Optimality certificates for planar balls and the closed-form radius of the
//! smallest ball meeting three rotated tangent lines.
//!
//! A ball is the smallest one meeting a compact family of lines exactly when
//! the outward normals of the tangent lines leave no open half-circle empty,
//! i.e. the largest circular gap between their angles is at most π.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Result, YolkError};
use crate::geom::{angle_of, dot, Ball, Direction, Hyperplane, Point, Sense};
use crate::lp_yolk::solve_minimax_lines;
use crate::median::{rotate_to_limiting, Electorate};
use crate::yolk::YolkResult;

/// Largest accepted gap between consecutive tangent directions beyond π.
pub const GAP_TOL: f64 = 1e-9;
/// Largest accepted `|dist(c, H) - r|` for a tangent line.
pub const TANGENT_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct CoverCertificate {
    pub tangent_directions: Vec<Direction>,
    pub max_gap: f64,
    pub covered: bool,
}

/// Outward normals of `h` at its tangency with `ball`. Both signs when the
/// ball is a point.
fn outward(ball: &Ball, h: &Hyperplane, index: usize) -> Result<Vec<Direction>> {
    let s = dot(h.normal(), ball.center.coords()) - h.offset();
    let offset = s.abs() - ball.radius;
    if offset.abs() >= TANGENT_TOL {
        return Err(YolkError::NotTangent { index, offset });
    }
    let a = Direction::new(h.normal().to_vec())?;
    Ok(if ball.radius < TANGENT_TOL {
        vec![a.clone(), a.negate()]
    } else if s < 0.0 {
        // a·c = b - r: the tangency point is c + r·a
        vec![a]
    } else {
        vec![a.negate()]
    })
}

fn max_gap(dirs: &[Direction]) -> f64 {
    if dirs.is_empty() {
        return TAU;
    }
    let mut t: Vec<f64> = dirs.iter().map(Direction::angle).collect();
    t.sort_unstable_by(f64::total_cmp);
    let wrap = TAU - (t[t.len() - 1] - t[0]);
    t.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::max)
}

pub fn hemisphere_cover(ball: &Ball, tangents: &[Hyperplane]) -> Result<CoverCertificate> {
    if ball.center.dim() != 2 {
        return Err(YolkError::UnsupportedDimension(ball.center.dim()));
    }
    let mut dirs = Vec::with_capacity(tangents.len());
    for (i, h) in tangents.iter().enumerate() {
        if h.dim() != 2 {
            return Err(YolkError::DimensionMismatch {
                expected: 2,
                found: h.dim(),
            });
        }
        dirs.extend(outward(ball, h, i)?);
    }
    let gap = max_gap(&dirs);
    Ok(CoverCertificate {
        tangent_directions: dirs,
        max_gap: gap,
        covered: gap <= PI + GAP_TOL,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SupportSet {
    pub hyperplanes: Vec<Hyperplane>,
    /// Positions of the members in the input list.
    pub indices: Vec<usize>,
}

/// Smallest covering subset, by size then lexicographic index order.
pub fn minimal_support(ball: &Ball, tangents: &[Hyperplane]) -> Result<SupportSet> {
    if !hemisphere_cover(ball, tangents)?.covered {
        return Err(YolkError::NoCover);
    }
    let dirs: Vec<Vec<Direction>> = tangents
        .iter()
        .enumerate()
        .map(|(i, h)| outward(ball, h, i))
        .collect::<Result<_>>()?;
    let covers = |idx: &[usize]| {
        let d: Vec<Direction> = idx.iter().flat_map(|&i| dirs[i].iter().cloned()).collect();
        max_gap(&d) <= PI + GAP_TOL
    };
    let n = tangents.len();
    let found = (0..n)
        .map(|i| vec![i])
        .find(|s| covers(s))
        .or_else(|| {
            (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| vec![i, j]))
                .find(|s| covers(s))
        })
        .or_else(|| {
            (0..n)
                .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| vec![i, j, k])))
                .find(|s| covers(s))
        })
        .ok_or(YolkError::NoCover)?;
    Ok(SupportSet {
        hyperplanes: found.iter().map(|&i| tangents[i].clone()).collect(),
        indices: found,
    })
}

/// `h` oriented so that `p` is on its positive side.
fn facing(h: &Hyperplane, p: &Point) -> Result<Hyperplane> {
    let s = h.signed_distance(p);
    if s.abs() <= 1e-12 * (1.0 + h.offset().abs()) {
        return Err(YolkError::RegionPointOnLine);
    }
    Ok(if s < 0.0 { h.flip() } else { h.clone() })
}

/// Bisector of the angular region of `h1`, `h2` that contains `region_point`.
/// For parallel lines, the line midway between them.
pub fn angle_bisector(h1: &Hyperplane, h2: &Hyperplane, region_point: &Point) -> Result<Hyperplane> {
    for h in [h1, h2] {
        if h.dim() != 2 {
            return Err(YolkError::UnsupportedDimension(h.dim()));
        }
    }
    if h1.same_as(h2, 1e-12) {
        return Err(YolkError::IdenticalLines);
    }
    let (g1, g2) = (facing(h1, region_point)?, facing(h2, region_point)?);
    let (a1, a2) = (g1.normal(), g2.normal());
    let diff = [a1[0] - a2[0], a1[1] - a2[1]];
    if diff[0].hypot(diff[1]) <= 1e-12 {
        // same orientation: the point is outside the strip
        return Hyperplane::new(a1.to_vec(), 0.5 * (g1.offset() + g2.offset()));
    }
    Hyperplane::new(diff.to_vec(), g1.offset() - g2.offset())
}

fn intersect(h1: &Hyperplane, h2: &Hyperplane) -> Option<[f64; 2]> {
    let (a, b) = (h1.normal(), h2.normal());
    let det = a[0] * b[1] - a[1] * b[0];
    if det.abs() <= 1e-9 {
        return None;
    }
    Some([
        (h1.offset() * b[1] - a[1] * h2.offset()) / det,
        (a[0] * h2.offset() - h1.offset() * b[0]) / det,
    ])
}

/// Incircle of the triangle cut out by three lines. Parallel or concurrent
/// lines have no triangle; the general minimax solver handles those.
pub fn inscribed_ball_three_lines(h1: &Hyperplane, h2: &Hyperplane, h3: &Hyperplane) -> Result<Ball> {
    let lines = [h1.clone(), h2.clone(), h3.clone()];
    let (Some(v12), Some(v23), Some(v31)) = (intersect(h1, h2), intersect(h2, h3), intersect(h3, h1))
    else {
        return solve_minimax_lines(&lines, 2);
    };
    let area2 = ((v23[0] - v12[0]) * (v31[1] - v12[1]) - (v31[0] - v12[0]) * (v23[1] - v12[1])).abs();
    let span = [v12, v23, v31]
        .iter()
        .flat_map(|v| v.iter().map(|x| x.abs()))
        .fold(1.0, f64::max);
    if area2 <= 1e-12 * span * span {
        return solve_minimax_lines(&lines, 2);
    }
    let g = Point::xy(
        (v12[0] + v23[0] + v31[0]) / 3.0,
        (v12[1] + v23[1] + v31[1]) / 3.0,
    );
    let b1 = angle_bisector(h1, h2, &g)?;
    let b2 = angle_bisector(h2, h3, &g)?;
    let c = intersect(&b1, &b2).ok_or(YolkError::IdenticalLines)?;
    let center = Point::xy(c[0], c[1]);
    let r = h1.distance(&center);
    Ball::new(center, r)
}

/// Angles of the three-line configuration used to bound the LP yolk of an
/// odd electorate whose yolk is the unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MainHalfParams {
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub nu: f64,
}

/// Slack on the closed ends of the parameter ranges.
const RANGE_TOL: f64 = 1e-12;

impl MainHalfParams {
    /// `ν` follows from `η`.
    pub fn new(alpha: f64, beta: f64, eta: f64, gamma: f64, delta: f64) -> Result<Self> {
        let p = Self {
            alpha,
            beta,
            eta,
            gamma,
            delta,
            nu: FRAC_PI_2 + eta,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let Self {
            alpha,
            beta,
            eta,
            gamma,
            delta,
            nu,
        } = *self;
        let t = RANGE_TOL;
        let fail = |what: &str| Err(YolkError::InvalidParams(what.to_string()));
        if ![alpha, beta, eta, gamma, delta, nu].iter().all(|v| v.is_finite()) {
            return fail("non-finite angle");
        }
        if !(eta >= -FRAC_PI_2 - t && eta < 0.0) {
            return fail("eta outside [-pi/2, 0)");
        }
        if !(alpha >= FRAC_PI_2 - t && alpha <= FRAC_PI_2 - eta + t) {
            return fail("alpha outside [pi/2, pi/2 - eta]");
        }
        if !(beta >= FRAC_PI_2 - t && beta <= PI + t) {
            return fail("beta outside [pi/2, pi]");
        }
        if !(gamma >= -t && gamma < PI - beta) {
            return fail("gamma outside [0, pi - beta)");
        }
        if !(delta >= -t && delta < PI - beta - gamma) {
            return fail("delta outside [0, pi - beta - gamma)");
        }
        if (nu - (FRAC_PI_2 + eta)).abs() > 1e-9 {
            return fail("nu differs from pi/2 + eta");
        }
        Ok(())
    }

    /// `H_3(ν)`, `H_2(γ)`, `H_1(δ)`: the three limiting lines in canonical position.
    pub fn lines(&self) -> [Hyperplane; 3] {
        let Self {
            alpha,
            beta,
            eta,
            gamma,
            delta,
            ..
        } = *self;
        [
            Hyperplane::oriented(vec![0.0, 1.0], eta.sin()).expect("unit normal"),
            Hyperplane::from_angle(alpha + eta - gamma, gamma.cos()),
            Hyperplane::from_angle(alpha + eta + beta + delta, delta.cos()),
        ]
    }
}

fn checked_ratio(num: f64, den: f64) -> Result<f64> {
    if den.abs() < 1e-12 {
        return Err(YolkError::DegenerateDenominator(den));
    }
    Ok(num / den)
}

/// Radius of the smallest ball meeting the three lines of [`MainHalfParams::lines`].
pub fn mainhalf_radius(p: &MainHalfParams) -> Result<f64> {
    p.validate()?;
    let (u, v) = (p.alpha + p.eta - p.gamma, p.alpha + p.eta + p.beta + p.delta);
    let w = p.beta + p.delta + p.gamma;
    let num = u.cos() * p.delta.cos() - w.sin() * p.eta.sin() - v.cos() * p.gamma.cos();
    let den = w.sin() + u.cos() - v.cos();
    checked_ratio(num, den)
}

/// Lower bound on [`mainhalf_radius`] that drops the `η` term of the numerator.
pub fn mainhalf_lower_bound(p: &MainHalfParams) -> Result<f64> {
    p.validate()?;
    mainhalf_lower_bound_at(p, p.beta)
}

/// The lower bound as a function of `β` with the other angles fixed, for
/// `β` in the closed range `[π/2, π - δ - γ]`.
pub fn mainhalf_lower_bound_at(p: &MainHalfParams, beta: f64) -> Result<f64> {
    if !(beta >= FRAC_PI_2 - RANGE_TOL && beta <= PI - p.delta - p.gamma + RANGE_TOL) {
        return Err(YolkError::InvalidParams(format!(
            "beta {beta} outside [pi/2, pi - delta - gamma]"
        )));
    }
    let (u, v) = (p.alpha + p.eta - p.gamma, p.alpha + p.eta + beta + p.delta);
    let w = beta + p.delta + p.gamma;
    let num = u.cos() * p.delta.cos() - v.cos() * p.gamma.cos();
    let den = w.sin() + u.cos() - v.cos();
    checked_ratio(num, den)
}

/// `x ↦ R(rotation)·(x - center) / scale`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Similarity {
    pub center: [f64; 2],
    pub scale: f64,
    pub rotation: f64,
}

impl Similarity {
    pub fn identity() -> Self {
        Self {
            center: [0.0, 0.0],
            scale: 1.0,
            rotation: 0.0,
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        let (s, c) = self.rotation.sin_cos();
        let (x, y) = (
            (p.x() - self.center[0]) / self.scale,
            (p.y() - self.center[1]) / self.scale,
        );
        Point::xy(c * x - s * y, s * x + c * y)
    }

    pub fn invert(&self, p: &Point) -> Point {
        let (s, c) = self.rotation.sin_cos();
        let (x, y) = (c * p.x() + s * p.y(), -s * p.x() + c * p.y());
        Point::xy(
            x * self.scale + self.center[0],
            y * self.scale + self.center[1],
        )
    }

    pub fn apply_electorate(&self, e: &Electorate) -> Result<Electorate> {
        e.map(|p| self.apply(p))
    }
}

/// Result of [`canonicalize`]. `gamma` and `delta` are present when the
/// rotations about `p2` and `p1` reach a second ideal point.
#[derive(Clone, Debug, PartialEq)]
pub struct Canonical {
    pub transform: Similarity,
    pub eta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub nu: f64,
    pub gamma: Option<f64>,
    pub delta: Option<f64>,
    /// Tangent points `[p1, p2, p3]` in canonical coordinates.
    pub tangent_points: [Point; 3],
    /// Labelings of the chosen tangent triple that satisfy every range condition.
    pub valid_labelings: usize,
}

impl Canonical {
    /// Full parameter set, when all angles are known and in range.
    pub fn params(&self) -> Option<MainHalfParams> {
        MainHalfParams::new(self.alpha, self.beta, self.eta, self.gamma?, self.delta?).ok()
    }
}

/// An ideal point within this distance of a tangency point is taken as that point.
const SNAP_TOL: f64 = 1e-6;

/// Line through the tangency point `q` of the unit circle with normal `q`,
/// pivoting on the nearest ideal point when one is (numerically) at `q`.
fn tangent_at(q: [f64; 2], e: &Electorate) -> Result<(Hyperplane, Point)> {
    let qp = Point::xy(q[0], q[1]);
    let pivot = e
        .points()
        .iter()
        .filter(|p| p.distance_to(&qp) <= SNAP_TOL)
        .min_by(|a, b| a.distance_to(&qp).total_cmp(&b.distance_to(&qp)))
        .cloned()
        .unwrap_or(qp);
    let h = Hyperplane::oriented(q.to_vec(), q[0] * pivot.x() + q[1] * pivot.y())?;
    Ok((h, pivot))
}

fn ccw(from: f64, to: f64) -> f64 {
    (to - from).rem_euclid(TAU)
}

/// Move a certified odd yolk to the unit disk and read off the angles of
/// three tangent points.
pub fn canonicalize(e: &Electorate, y: &YolkResult) -> Result<Canonical> {
    if e.dim() != 2 {
        return Err(YolkError::UnsupportedDimension(e.dim()));
    }
    if !e.is_odd() {
        return Err(YolkError::InvalidParameter(
            "canonical form needs an odd number of ideal points".into(),
        ));
    }
    if y.tangent_directions.len() < 3 || !y.certified || y.ball.radius <= 0.0 {
        return Err(YolkError::InsufficientTangents(y.tangent_directions.len()));
    }
    let c = y.ball.center.xy_array();
    let r = y.ball.radius;
    let unit = Similarity {
        center: c,
        scale: r,
        rotation: 0.0,
    };
    let e0 = unit.apply_electorate(e)?;
    let unit_ball = Ball::new(Point::xy(0.0, 0.0), 1.0)?;
    let tangents: Vec<Hyperplane> = y
        .tangent_directions
        .iter()
        .map(|d| crate::geom::tangent_hyperplane(&unit_ball, d))
        .collect::<Result<_>>()?;

    let n = tangents.len();
    let mut first_err = None;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let idx = [i, j, k];
                let sub: Vec<Hyperplane> = idx.iter().map(|&t| tangents[t].clone()).collect();
                if !hemisphere_cover(&unit_ball, &sub)?.covered {
                    continue;
                }
                let mut angles: Vec<f64> = idx.iter().map(|&t| y.tangent_directions[t].angle()).collect();
                angles.sort_unstable_by(f64::total_cmp);
                match label_triple(&e0, &angles) {
                    Ok(Some((mut canon, count))) => {
                        canon.transform = Similarity {
                            rotation: canon.transform.rotation,
                            ..unit
                        };
                        canon.valid_labelings = count;
                        return Ok(canon);
                    }
                    Ok(None) => {}
                    Err(err) => {
                        first_err.get_or_insert(err);
                    }
                }
            }
        }
    }
    Err(first_err.unwrap_or_else(|| {
        YolkError::InvalidParams("no tangent triple admits a valid labeling".into())
    }))
}

/// First valid cyclic labeling of three tangent angles (sorted ccw) and the
/// number of valid labelings. `e0` is in unit-yolk coordinates.
fn label_triple(e0: &Electorate, angles: &[f64]) -> Result<Option<(Canonical, usize)>> {
    let mut first: Option<Canonical> = None;
    let mut count = 0;
    for s in 0..3 {
        let (t3, t2, t1) = (angles[s], angles[(s + 1) % 3], angles[(s + 2) % 3]);
        let alpha = ccw(t3, t2);
        let beta = ccw(t2, t1);
        if alpha < FRAC_PI_2 - RANGE_TOL || beta < FRAC_PI_2 - RANGE_TOL || beta > PI + RANGE_TOL {
            continue;
        }
        let q3 = [t3.cos(), t3.sin()];
        let (h3, pivot3) = tangent_at(q3, e0)?;
        let rot = rotate_to_limiting(&h3, &pivot3, e0, Sense::Clockwise)?;
        let nu = rot.angle;
        let eta = nu - FRAC_PI_2;
        if !(eta >= -FRAC_PI_2 - RANGE_TOL && eta < 0.0) || alpha > FRAC_PI_2 - eta + RANGE_TOL {
            continue;
        }
        // Turn the coordinates so p3 sits at angle η.
        let rho = eta - t3;
        let frame = Similarity {
            center: [0.0, 0.0],
            scale: 1.0,
            rotation: rho,
        };
        let e1 = frame.apply_electorate(e0)?;
        let at = |t: f64| [(t + rho).cos(), (t + rho).sin()];

        let (h2, pivot2) = tangent_at(at(t2), &e1)?;
        let gamma = rotate_to_limiting(&h2, &pivot2, &e1, Sense::Clockwise)
            .ok()
            .map(|r| r.angle);
        let (h1, pivot1) = tangent_at(at(t1), &e1)?;
        let delta = rotate_to_limiting(&h1, &pivot1, &e1, Sense::CounterClockwise)
            .ok()
            .map(|r| r.angle);

        let gamma_ok = gamma.is_none_or(|g| g < PI - beta);
        let delta_ok = delta.is_none_or(|d| d < PI - beta - gamma.unwrap_or(0.0));
        if !(gamma_ok && delta_ok) {
            continue;
        }
        count += 1;
        if first.is_none() {
            let pt = |t: f64| {
                let v = at(t);
                Point::xy(v[0], v[1])
            };
            first = Some(Canonical {
                transform: frame,
                eta,
                alpha,
                beta,
                nu,
                gamma,
                delta,
                tangent_points: [pt(t1), pt(t2), pt(t3)],
                valid_labelings: 0,
            });
        }
    }
    Ok(first.map(|c| (c, count)))
}

/// Angle of the outward normal of a tangent line, for reporting.
pub fn direction_angle(d: &Direction) -> f64 {
    angle_of([d.as_slice()[0], d.as_slice()[1]])
}
