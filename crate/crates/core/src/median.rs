//! Median hyperplanes of an electorate.
//!
//! A hyperplane is median when each of its closed halfspaces holds at least
//! half of the ideal points. Points within [`ON_PLANE_TOL`] of the hyperplane
//! count on both sides.

use std::cmp::Ordering;
use std::f64::consts::PI;

use crate::error::{Result, YolkError};
use crate::geom::{
    angle_of, dot, line_through_points, rotate_line_about_point, wrap, Direction, Hyperplane,
    Point, Sense, ON_PLANE_TOL,
};

/// Ideal points of the voters. Duplicates count with multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct Electorate {
    points: Vec<Point>,
    dim: usize,
}

impl Electorate {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points.first().ok_or(YolkError::EmptyElectorate)?;
        let dim = first.dim();
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(YolkError::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        Ok(Self { points, dim })
    }

    /// Planar electorate from coordinate pairs. Panics on empty or non-finite input.
    pub fn from_xy(coords: &[(f64, f64)]) -> Self {
        Self::new(coords.iter().map(|&(x, y)| Point::xy(x, y)).collect())
            .expect("non-empty planar electorate")
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.points.len() % 2 == 1
    }

    pub(crate) fn xy(&self) -> Vec<[f64; 2]> {
        self.points.iter().map(Point::xy_array).collect()
    }

    /// Number of points that are pairwise more than `tol` apart (greedy).
    pub fn distinct_count(&self, tol: f64) -> usize {
        let mut reps: Vec<&Point> = Vec::new();
        for p in &self.points {
            if !reps.iter().any(|q| q.distance_to(p) <= tol) {
                reps.push(p);
            }
        }
        reps.len()
    }

    pub fn centroid(&self) -> Point {
        let n = self.points.len() as f64;
        let mut c = vec![0.0; self.dim];
        for p in &self.points {
            for (ci, pi) in c.iter_mut().zip(p.coords()) {
                *ci += pi / n;
            }
        }
        Point::new(c).expect("centroid of finite points")
    }

    /// Largest absolute coordinate, at least 1. Used to scale tolerances.
    pub fn scale(&self) -> f64 {
        self.points
            .iter()
            .flat_map(|p| p.coords().iter().map(|c| c.abs()))
            .fold(1.0, f64::max)
    }

    /// Apply `f` to every point.
    pub fn map(&self, f: impl Fn(&Point) -> Point) -> Result<Self> {
        Self::new(self.points.iter().map(f).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SideCounts {
    /// Points with `a·π <= b` (within tolerance).
    pub left: usize,
    /// Points with `a·π >= b` (within tolerance).
    pub right: usize,
    pub on: usize,
}

pub fn side_counts(h: &Hyperplane, e: &Electorate) -> Result<SideCounts> {
    if h.dim() != e.dim() {
        return Err(YolkError::DimensionMismatch {
            expected: e.dim(),
            found: h.dim(),
        });
    }
    let mut c = SideCounts {
        left: 0,
        right: 0,
        on: 0,
    };
    for p in e.points() {
        let s = h.signed_distance(p);
        if s <= ON_PLANE_TOL {
            c.left += 1;
        }
        if s >= -ON_PLANE_TOL {
            c.right += 1;
        }
        if s.abs() <= ON_PLANE_TOL {
            c.on += 1;
        }
    }
    Ok(c)
}

pub fn is_median(h: &Hyperplane, e: &Electorate) -> Result<bool> {
    let c = side_counts(h, e)?;
    // left >= n/2 without fractions
    Ok(2 * c.left >= e.len() && 2 * c.right >= e.len())
}

/// Offsets `b` in `[b_lo, b_hi]` make `H(direction, b)` a median hyperplane.
#[derive(Clone, Debug, PartialEq)]
pub struct MedianSlab {
    pub direction: Direction,
    pub b_lo: f64,
    pub b_hi: f64,
}

impl MedianSlab {
    pub fn is_degenerate(&self) -> bool {
        self.b_lo == self.b_hi
    }

    pub fn lo_hyperplane(&self) -> Hyperplane {
        Hyperplane::oriented(self.direction.as_slice().to_vec(), self.b_lo)
            .expect("unit direction")
    }

    pub fn hi_hyperplane(&self) -> Hyperplane {
        Hyperplane::oriented(self.direction.as_slice().to_vec(), self.b_hi)
            .expect("unit direction")
    }

    /// Largest distance from `c` to a median hyperplane with this normal.
    pub fn required_distance(&self, c: &Point) -> f64 {
        let s = dot(self.direction.as_slice(), c.coords());
        (s - self.b_lo).max(self.b_hi - s)
    }
}

/// Order statistics of `v` giving the median slab; `v` is sorted in place.
pub(crate) fn slab_bounds(v: &mut [f64]) -> (f64, f64) {
    v.sort_unstable_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        (v[n / 2], v[n / 2])
    } else {
        (v[n / 2 - 1], v[n / 2])
    }
}

pub fn median_slab(a: &Direction, e: &Electorate) -> Result<MedianSlab> {
    if e.is_empty() {
        return Err(YolkError::EmptyElectorate);
    }
    if a.dim() != e.dim() {
        return Err(YolkError::DimensionMismatch {
            expected: e.dim(),
            found: a.dim(),
        });
    }
    let mut proj: Vec<f64> = e
        .points()
        .iter()
        .map(|p| dot(a.as_slice(), p.coords()))
        .collect();
    let (b_lo, b_hi) = slab_bounds(&mut proj);
    Ok(MedianSlab {
        direction: a.clone(),
        b_lo,
        b_hi,
    })
}

/// Result of [`enumerate_limiting_median_lines`].
#[derive(Clone, Debug, PartialEq)]
pub struct LimitingLines {
    pub lines: Vec<Hyperplane>,
    /// Fewer than two distinct ideal points: no line is determined.
    pub degenerate: bool,
}

/// Points closer than this are the same location when forming lines.
const COINCIDENT_TOL: f64 = 1e-12;

/// All distinct median lines through at least two ideal points.
pub fn enumerate_limiting_median_lines(e: &Electorate) -> Result<LimitingLines> {
    if e.dim() != 2 {
        return Err(YolkError::UnsupportedDimension(e.dim()));
    }
    if e.distinct_count(COINCIDENT_TOL) < 2 {
        return Ok(LimitingLines {
            lines: Vec::new(),
            degenerate: true,
        });
    }
    let pts = e.points();
    let mut lines: Vec<Hyperplane> = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let h = match line_through_points(&pts[i], &pts[j]) {
                Ok(h) => h,
                Err(YolkError::CoincidentPoints) => continue,
                Err(err) => return Err(err),
            };
            if lines.iter().any(|l| l.same_as(&h, ON_PLANE_TOL)) {
                continue;
            }
            if is_median(&h, e)? {
                lines.push(h);
            }
        }
    }
    Ok(LimitingLines {
        lines,
        degenerate: false,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RotationResult {
    pub hyperplane: Hyperplane,
    /// Rotation angle in radians, in `[0, π)`.
    pub angle: f64,
    pub second_point: Point,
}

/// Rotate a median line about an ideal point on it until it meets a second
/// ideal point. Every intermediate line stays median.
pub fn rotate_to_limiting(
    h: &Hyperplane,
    pivot: &Point,
    e: &Electorate,
    sense: Sense,
) -> Result<RotationResult> {
    if e.dim() != 2 || h.dim() != 2 {
        return Err(YolkError::UnsupportedDimension(e.dim().max(h.dim())));
    }
    let others: Vec<&Point> = e
        .points()
        .iter()
        .filter(|q| q.distance_to(pivot) > COINCIDENT_TOL)
        .collect();
    if others.is_empty() {
        return Err(YolkError::NoSecondPoint);
    }
    if let Some(q) = others
        .iter()
        .filter(|q| h.contains(q))
        .min_by(|a, b| a.lex_cmp(b))
    {
        return Ok(RotationResult {
            hyperplane: h.clone(),
            angle: 0.0,
            second_point: (*q).clone(),
        });
    }
    let off = h.distance(pivot);
    if off > ON_PLANE_TOL {
        return Err(YolkError::PivotNotOnHyperplane(off));
    }

    let n = h.normal();
    let line_angle = angle_of([-n[1], n[0]]);
    let s = sense.sign();
    let mut best: Option<(f64, &Point)> = None;
    for q in others {
        let q_angle = angle_of([q.x() - pivot.x(), q.y() - pivot.y()]);
        let nu = wrap(s * (q_angle - line_angle), PI);
        best = match best {
            None => Some((nu, q)),
            Some((b, bq)) => {
                let replace = if (nu - b).abs() <= 1e-12 {
                    q.lex_cmp(bq) == Ordering::Less
                } else {
                    nu < b
                };
                if replace {
                    Some((nu, q))
                } else {
                    Some((b, bq))
                }
            }
        };
    }
    let (nu, q) = best.expect("at least one other point");
    Ok(RotationResult {
        hyperplane: rotate_line_about_point(h, pivot, nu, sense)?,
        angle: nu,
        second_point: q.clone(),
    })
}
