//! Points, hyperplanes, balls and directions in low-dimensional policy space.
//!
//! Hyperplanes are stored as a unit normal `a` and offset `b`, describing
//! `{x : a·x = b}`. The pairs `(a, b)` and `(-a, -b)` describe the same set;
//! [`Hyperplane::new`] picks the representative whose first non-negligible
//! normal coordinate is positive, while [`Hyperplane::oriented`] keeps the
//! caller's orientation (needed when a side of the hyperplane matters).

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Result, YolkError};

/// Distance below which a point counts as lying on a hyperplane.
pub const ON_PLANE_TOL: f64 = 1e-9;
/// Allowed deviation of a normal or direction from unit length.
pub const UNIT_TOL: f64 = 1e-12;
/// Normal coordinates smaller than this are ignored when picking the canonical sign.
const SIGN_TOL: f64 = 1e-12;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Angle of a planar vector reduced to `[0, 2π)`.
pub fn angle_of(v: [f64; 2]) -> f64 {
    let t = v[1].atan2(v[0]);
    if t < 0.0 {
        t + 2.0 * PI
    } else {
        t
    }
}

/// Reduce an angle to `[0, period)`.
pub(crate) fn wrap(theta: f64, period: f64) -> f64 {
    let t = theta.rem_euclid(period);
    if t >= period {
        0.0
    } else {
        t
    }
}

/// An ideal point (or any location) in `R^k`, `k >= 2`.
#[derive(Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(YolkError::DimensionTooSmall(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(YolkError::NonFinite);
        }
        Ok(Self { coords })
    }

    /// Planar point. Panics on non-finite input.
    pub fn xy(x: f64, y: f64) -> Self {
        assert!(x.is_finite() && y.is_finite(), "non-finite coordinate");
        Self { coords: vec![x, y] }
    }

    pub fn xyz(x: f64, y: f64, z: f64) -> Self {
        assert!(x.is_finite() && y.is_finite() && z.is_finite(), "non-finite coordinate");
        Self {
            coords: vec![x, y, z],
        }
    }

    pub fn origin(dim: usize) -> Self {
        Self {
            coords: vec![0.0; dim],
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn x(&self) -> f64 {
        self.coords[0]
    }

    pub fn y(&self) -> f64 {
        self.coords[1]
    }

    /// First two coordinates as an array; the planar fast path uses this.
    pub fn xy_array(&self) -> [f64; 2] {
        [self.coords[0], self.coords[1]]
    }

    pub fn distance_to(&self, other: &Point) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Lexicographic comparison of coordinates.
    pub fn lex_cmp(&self, other: &Point) -> std::cmp::Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.total_cmp(b) {
                std::cmp::Ordering::Equal => continue,
                o => return o,
            }
        }
        self.coords.len().cmp(&other.coords.len())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point{:?}", self.coords)
    }
}

/// Unit vector.
#[derive(Clone, PartialEq)]
pub struct Direction {
    v: Vec<f64>,
}

impl Direction {
    /// Accepts a vector that is already unit length within [`UNIT_TOL`].
    pub fn new(v: Vec<f64>) -> Result<Self> {
        if v.iter().any(|c| !c.is_finite()) {
            return Err(YolkError::NonFinite);
        }
        let n = norm(&v);
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(YolkError::NotUnit(n));
        }
        Ok(Self { v })
    }

    /// Normalizes any non-zero vector.
    pub fn normalize(v: Vec<f64>) -> Result<Self> {
        let n = norm(&v);
        if !(n > 0.0) || !n.is_finite() {
            return Err(YolkError::ZeroNormal);
        }
        Ok(Self {
            v: v.into_iter().map(|c| c / n).collect(),
        })
    }

    pub fn from_angle(theta: f64) -> Self {
        Self {
            v: vec![theta.cos(), theta.sin()],
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.v
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    /// Planar angle in `[0, 2π)`.
    pub fn angle(&self) -> f64 {
        angle_of([self.v[0], self.v[1]])
    }

    pub fn negate(&self) -> Self {
        Self {
            v: self.v.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Direction{:?}", self.v)
    }
}

/// The hyperplane `{x : normal·x = offset}` with a unit normal.
#[derive(Clone, PartialEq)]
pub struct Hyperplane {
    normal: Vec<f64>,
    offset: f64,
}

impl Hyperplane {
    /// Normalizes `(a, b)` and fixes the canonical sign.
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        Ok(Self::oriented(normal, offset)?.canonical())
    }

    /// Normalizes `(a, b)` but keeps its orientation.
    pub fn oriented(normal: Vec<f64>, offset: f64) -> Result<Self> {
        if normal.iter().any(|c| !c.is_finite()) || !offset.is_finite() {
            return Err(YolkError::NonFinite);
        }
        let n = norm(&normal);
        if n == 0.0 {
            return Err(YolkError::ZeroNormal);
        }
        Ok(Self {
            normal: normal.into_iter().map(|c| c / n).collect(),
            offset: offset / n,
        })
    }

    /// Planar line with unit normal `(cos θ, sin θ)` and the given offset.
    pub fn from_angle(theta: f64, offset: f64) -> Self {
        Self {
            normal: vec![theta.cos(), theta.sin()],
            offset,
        }
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `(-a, -b)`: the same set of points, opposite orientation.
    pub fn flip(&self) -> Self {
        Self {
            normal: self.normal.iter().map(|c| -c).collect(),
            offset: -self.offset,
        }
    }

    pub fn canonical(self) -> Self {
        let lead = self
            .normal
            .iter()
            .copied()
            .find(|c| c.abs() > SIGN_TOL)
            .unwrap_or(0.0);
        if lead < 0.0 {
            self.flip()
        } else {
            self
        }
    }

    /// `a·p - b`; positive on the right (`a·x >= b`) side.
    pub fn signed_distance(&self, p: &Point) -> f64 {
        dot(&self.normal, p.coords()) - self.offset
    }

    pub fn distance(&self, p: &Point) -> f64 {
        self.signed_distance(p).abs()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.distance(p) <= ON_PLANE_TOL
    }

    /// Same point set up to `tol` in normal and offset.
    pub fn same_as(&self, other: &Hyperplane, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let close = |sign: f64| {
            self.normal
                .iter()
                .zip(&other.normal)
                .all(|(a, b)| (a - sign * b).abs() <= tol)
                && (self.offset - sign * other.offset).abs() <= tol
        };
        close(1.0) || close(-1.0)
    }

    /// Angle of a planar normal in `[0, 2π)`.
    pub fn normal_angle(&self) -> f64 {
        angle_of([self.normal[0], self.normal[1]])
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hyperplane({:?}, {})", self.normal, self.offset)
    }
}

#[derive(Clone, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !radius.is_finite() {
            return Err(YolkError::NonFinite);
        }
        if radius < 0.0 {
            return Err(YolkError::NegativeRadius(radius));
        }
        Ok(Self { center, radius })
    }

    /// Whether the ball meets `h` within `tol`.
    pub fn meets(&self, h: &Hyperplane, tol: f64) -> bool {
        h.distance(&self.center) <= self.radius + tol
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ball({:?}, r={})", self.center, self.radius)
    }
}

/// Rotation sense in the plane. Counter-clockwise is positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Clockwise,
    CounterClockwise,
}

impl Sense {
    pub fn sign(self) -> f64 {
        match self {
            Sense::Clockwise => -1.0,
            Sense::CounterClockwise => 1.0,
        }
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        Err(YolkError::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}

pub fn normalize_hyperplane(a: &[f64], b: f64) -> Result<Hyperplane> {
    Hyperplane::new(a.to_vec(), b)
}

pub fn point_hyperplane_distance(p: &Point, h: &Hyperplane) -> Result<f64> {
    check_dim(h.dim(), p.dim())?;
    Ok(h.distance(p))
}

/// Line through two distinct planar points, canonical sign.
pub fn line_through_points(p: &Point, q: &Point) -> Result<Hyperplane> {
    if p.dim() != 2 {
        return Err(YolkError::UnsupportedDimension(p.dim()));
    }
    check_dim(2, q.dim())?;
    let (dx, dy) = (q.x() - p.x(), q.y() - p.y());
    if dx.abs() <= 1e-12 && dy.abs() <= 1e-12 {
        return Err(YolkError::CoincidentPoints);
    }
    let n = [-dy, dx];
    let len = n[0].hypot(n[1]);
    let a = vec![n[0] / len, n[1] / len];
    // Offset from the midpoint spreads rounding evenly over both points.
    let b = a[0] * 0.5 * (p.x() + q.x()) + a[1] * 0.5 * (p.y() + q.y());
    Ok(Hyperplane {
        normal: a,
        offset: b,
    }
    .canonical())
}

/// Rotate a planar line about a point on it. The normal turns by `theta` in
/// the given sense and the orientation of the input is kept.
pub fn rotate_line_about_point(
    h: &Hyperplane,
    pivot: &Point,
    theta: f64,
    sense: Sense,
) -> Result<Hyperplane> {
    if h.dim() != 2 {
        return Err(YolkError::UnsupportedDimension(h.dim()));
    }
    check_dim(2, pivot.dim())?;
    let off = h.distance(pivot);
    if off > ON_PLANE_TOL {
        return Err(YolkError::PivotNotOnHyperplane(off));
    }
    let t = sense.sign() * theta;
    let (s, c) = t.sin_cos();
    let a = [
        c * h.normal[0] - s * h.normal[1],
        s * h.normal[0] + c * h.normal[1],
    ];
    Ok(Hyperplane {
        normal: a.to_vec(),
        offset: a[0] * pivot.x() + a[1] * pivot.y(),
    })
}

/// The hyperplane with outward normal `alpha` touching `ball` at `c + r·alpha`.
pub fn tangent_hyperplane(ball: &Ball, alpha: &Direction) -> Result<Hyperplane> {
    check_dim(ball.center.dim(), alpha.dim())?;
    Ok(Hyperplane {
        normal: alpha.as_slice().to_vec(),
        offset: dot(alpha.as_slice(), ball.center.coords()) + ball.radius,
    })
}
