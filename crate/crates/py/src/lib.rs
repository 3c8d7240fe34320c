//! Python bindings. Points are sequences of `(x, y)` tuples (or `(x, y, z)`
//! for the lift); lines are `((a1, a2), b)` meaning `a·x = b`.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use yolkkit::yolk::YolkOptions;
use yolkkit::{Direction, Electorate, Hyperplane, Point, YolkError as CoreError};

create_exception!(yolkkit, YolkError, PyValueError);
create_exception!(yolkkit, ConvergenceError, YolkError);

fn err(e: CoreError) -> PyErr {
    match e {
        CoreError::ConvergenceFailure { .. } => ConvergenceError::new_err(e.to_string()),
        other => YolkError::new_err(other.to_string()),
    }
}

pub fn electorate(points: Vec<Vec<f64>>) -> Result<Electorate, CoreError> {
    let pts = points
        .into_iter()
        .map(Point::new)
        .collect::<Result<Vec<_>, _>>()?;
    Electorate::new(pts)
}

fn to_points(e: &Electorate) -> Vec<Vec<f64>> {
    e.points().iter().map(|p| p.coords().to_vec()).collect()
}

fn to_line(h: &Hyperplane) -> (Vec<f64>, f64) {
    (h.normal().to_vec(), h.offset())
}

fn from_line((a, b): (Vec<f64>, f64)) -> Result<Hyperplane, CoreError> {
    Hyperplane::new(a, b)
}

#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl From<&yolkkit::Ball> for Ball {
    fn from(b: &yolkkit::Ball) -> Self {
        Self {
            center: b.center.coords().to_vec(),
            radius: b.radius,
        }
    }
}

#[pymethods]
impl Ball {
    fn __repr__(&self) -> String {
        format!("Ball(center={:?}, radius={})", self.center, self.radius)
    }
}

#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone, Debug)]
pub struct YolkResult {
    pub ball: Ball,
    /// Outward unit normals of the tangent median lines.
    pub tangent_directions: Vec<Vec<f64>>,
    pub tangents: Vec<(Vec<f64>, f64)>,
    pub iterations: usize,
    pub certified: bool,
    pub lower_bound: f64,
}

#[pymethods]
impl YolkResult {
    fn __repr__(&self) -> String {
        format!(
            "YolkResult(ball={}, certified={}, iterations={})",
            self.ball.__repr__(),
            self.certified,
            self.iterations
        )
    }
}

#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone, Debug)]
pub struct LpYolkResult {
    pub ball: Ball,
    pub active: Vec<(Vec<f64>, f64)>,
    pub degenerate: bool,
}

#[pymethods]
impl LpYolkResult {
    fn __repr__(&self) -> String {
        format!("LpYolkResult(ball={}, degenerate={})", self.ball.__repr__(), self.degenerate)
    }
}

#[pyfunction]
#[pyo3(signature = (points, max_iter = 100_000, tol = 1e-10, tangent_tol = 1e-6))]
pub fn yolk(points: Vec<Vec<f64>>, max_iter: usize, tol: f64, tangent_tol: f64) -> PyResult<YolkResult> {
    let e = electorate(points).map_err(err)?;
    let opts = YolkOptions {
        max_iter,
        tol,
        tangent_tol,
    };
    let y = yolkkit::yolk::yolk_with_options(&e, &opts).map_err(err)?;
    Ok(YolkResult {
        ball: Ball::from(&y.ball),
        tangent_directions: y
            .tangent_directions
            .iter()
            .map(|d| d.as_slice().to_vec())
            .collect(),
        tangents: y.tangents.iter().map(to_line).collect(),
        iterations: y.iterations,
        certified: y.certified,
        lower_bound: y.lower_bound,
    })
}

/// LP yolk over the limiting median lines, or planes for 3D points.
#[pyfunction]
pub fn lp_yolk(points: Vec<Vec<f64>>) -> PyResult<LpYolkResult> {
    let e = electorate(points).map_err(err)?;
    let r = if e.dim() == 3 {
        yolkkit::constructions::lift_lp_yolk(&e)
    } else {
        yolkkit::lp_yolk(&e)
    }
    .map_err(err)?;
    Ok(LpYolkResult {
        ball: Ball::from(&r.ball),
        active: r.active.iter().map(to_line).collect(),
        degenerate: r.degenerate,
    })
}

/// Largest distance from `center` to a median line.
#[pyfunction]
pub fn max_median_distance(center: Vec<f64>, points: Vec<Vec<f64>>) -> PyResult<f64> {
    let e = electorate(points).map_err(err)?;
    let c = Point::new(center).map_err(err)?;
    Ok(yolkkit::max_median_distance(&c, &e).map_err(err)?.value)
}

#[pyfunction]
pub fn limiting_median_lines(points: Vec<Vec<f64>>) -> PyResult<Vec<(Vec<f64>, f64)>> {
    let e = electorate(points).map_err(err)?;
    let l = yolkkit::enumerate_limiting_median_lines(&e).map_err(err)?;
    Ok(l.lines.iter().map(to_line).collect())
}

#[pyfunction]
pub fn is_median(line: (Vec<f64>, f64), points: Vec<Vec<f64>>) -> PyResult<bool> {
    let e = electorate(points).map_err(err)?;
    yolkkit::is_median(&from_line(line).map_err(err)?, &e).map_err(err)
}

/// `(lo, hi)` offsets of median lines with the given unit normal.
#[pyfunction]
pub fn median_slab(normal: Vec<f64>, points: Vec<Vec<f64>>) -> PyResult<(f64, f64)> {
    let e = electorate(points).map_err(err)?;
    let a = Direction::normalize(normal).map_err(err)?;
    let s = yolkkit::median_slab(&a, &e).map_err(err)?;
    Ok((s.b_lo, s.b_hi))
}

/// `(covered, max_gap)` for lines tangent to the ball.
#[pyfunction]
pub fn hemisphere_cover(center: Vec<f64>, radius: f64, lines: Vec<(Vec<f64>, f64)>) -> PyResult<(bool, f64)> {
    let ball = yolkkit::Ball::new(Point::new(center).map_err(err)?, radius).map_err(err)?;
    let hs = lines
        .into_iter()
        .map(from_line)
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let c = yolkkit::hemisphere_cover(&ball, &hs).map_err(err)?;
    Ok((c.covered, c.max_gap))
}

/// Indices of a smallest covering subset of tangent lines.
#[pyfunction]
pub fn minimal_support(center: Vec<f64>, radius: f64, lines: Vec<(Vec<f64>, f64)>) -> PyResult<Vec<usize>> {
    let ball = yolkkit::Ball::new(Point::new(center).map_err(err)?, radius).map_err(err)?;
    let hs = lines
        .into_iter()
        .map(from_line)
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    Ok(yolkkit::minimal_support(&ball, &hs).map_err(err)?.indices)
}

#[pyfunction]
pub fn mainhalf_radius(alpha: f64, beta: f64, eta: f64, gamma: f64, delta: f64) -> PyResult<f64> {
    let p = yolkkit::MainHalfParams::new(alpha, beta, eta, gamma, delta).map_err(err)?;
    yolkkit::mainhalf_radius(&p).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (points, n_dirs = 200_000))]
pub fn brute_force_yolk(points: Vec<Vec<f64>>, n_dirs: usize) -> PyResult<Ball> {
    let e = electorate(points).map_err(err)?;
    let b = yolkkit::brute_force_yolk(&e, n_dirs, yolkkit::GridSpec::default()).map_err(err)?;
    Ok(Ball::from(&b))
}

type Family = (Vec<Vec<f64>>, BTreeMap<String, f64>);

#[pyfunction]
pub fn family_nondegen(eps: f64) -> PyResult<Family> {
    let (e, s) = yolkkit::family_nondegen(eps).map_err(err)?;
    Ok((to_points(&e), s.expected))
}

#[pyfunction]
pub fn family_oddr2ok(alpha: f64, w: f64, eps: f64) -> PyResult<Family> {
    let (e, s) = yolkkit::family_oddr2ok(alpha, w, eps).map_err(err)?;
    Ok((to_points(&e), s.expected))
}

#[pyfunction]
pub fn family_oddr2far(alpha: f64, kappa: f64, eps: f64) -> PyResult<Family> {
    let (e, s, _) = yolkkit::family_oddr2far_metrics(alpha, kappa, eps).map_err(err)?;
    Ok((to_points(&e), s.expected))
}

#[pyfunction]
#[pyo3(signature = (points, noise = 0.0, seed = 0))]
pub fn family_lift(points: Vec<Vec<f64>>, noise: f64, seed: u64) -> PyResult<Vec<Vec<f64>>> {
    let e = electorate(points).map_err(err)?;
    Ok(to_points(&yolkkit::family_lift(&e, noise, seed).map_err(err)?))
}

#[pymodule(name = "yolkkit")]
pub mod yolkkit_module {
    #[pymodule_export]
    use super::{
        brute_force_yolk, family_lift, family_nondegen, family_oddr2far, family_oddr2ok,
        hemisphere_cover, is_median, limiting_median_lines, lp_yolk, mainhalf_radius,
        max_median_distance, median_slab, minimal_support, yolk, Ball, ConvergenceError,
        LpYolkResult, YolkError, YolkResult,
    };
}
