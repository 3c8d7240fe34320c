//! Electorates with known yolk and LP yolk, used as worst cases and test fixtures.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, YolkError};
use crate::geom::{Hyperplane, Point, ON_PLANE_TOL};
use crate::lp_yolk::{lp_yolk_from_lines, LpYolkResult};
use crate::median::{is_median, Electorate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    NonDegen,
    OddR2Ok,
    Lift,
    OddR2Far,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::NonDegen => "nondegen",
            Family::OddR2Ok => "oddr2ok",
            Family::Lift => "lift",
            Family::OddR2Far => "oddr2far",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = YolkError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nondegen" => Ok(Family::NonDegen),
            "oddr2ok" => Ok(Family::OddR2Ok),
            "lift" => Ok(Family::Lift),
            "oddr2far" => Ok(Family::OddR2Far),
            other => Err(YolkError::InvalidParameter(format!("unknown family {other:?}"))),
        }
    }
}

/// A generated instance's parameters and its closed-form expectations.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub name: Family,
    pub parameters: BTreeMap<String, f64>,
    pub expected: BTreeMap<String, f64>,
}

impl FamilySpec {
    fn new(name: Family, parameters: &[(&str, f64)], expected: &[(&str, f64)]) -> Self {
        let map = |kv: &[(&str, f64)]| kv.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        Self {
            name,
            parameters: map(parameters),
            expected: map(expected),
        }
    }
}

fn invalid(msg: String) -> YolkError {
    YolkError::InvalidParameter(msg)
}

/// `{(±2, ±ε), (±1, 0)}`: LP yolk radius `ε/√(1+ε²)` but yolk radius 1.
pub fn family_nondegen(eps: f64) -> Result<(Electorate, FamilySpec)> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(invalid(format!("eps must be positive, got {eps}")));
    }
    let e = Electorate::from_xy(&[
        (2.0, eps),
        (2.0, -eps),
        (-2.0, eps),
        (-2.0, -eps),
        (1.0, 0.0),
        (-1.0, 0.0),
    ]);
    let spec = FamilySpec::new(
        Family::NonDegen,
        &[("eps", eps)],
        &[
            ("lp_yolk_radius", eps / (1.0 + eps * eps).sqrt()),
            ("lp_center_x", 0.0),
            ("lp_center_y", 0.0),
            ("yolk_radius", 1.0),
            ("limiting_lines", 11.0),
        ],
    );
    Ok((e, spec))
}

/// Upper bound on the LP yolk radius of [`family_oddr2ok`].
pub fn oddr2ok_radius_bound(alpha: f64, w: f64) -> f64 {
    let c = alpha.cos();
    (alpha / 2.0).tan() * (w * c - 1.0) / ((2.0 * w - 1.0) * c - 1.0)
}

/// The same bound with `w = -κ / cos α`.
pub fn oddr2ok_ratio(alpha: f64, kappa: f64) -> f64 {
    (kappa + 1.0) * (alpha / 2.0).tan() / (2.0 * kappa + 1.0 + alpha.cos())
}

/// Largest coordinate offset accepted for the near-apex points.
pub fn oddr2ok_max_eps(alpha: f64) -> f64 {
    1e-3 * (1.0 / alpha.cos().abs() - 1.0)
}

/// Five points whose yolk is the unit disk while the LP yolk radius can be
/// close to one half. The outer pairs lie on two lines tangent to the unit
/// circle that meet at `(1/cos α, 0)`.
pub fn family_oddr2ok(alpha: f64, w: f64, eps: f64) -> Result<(Electorate, FamilySpec)> {
    if !(alpha > FRAC_PI_2 && alpha < PI) {
        return Err(invalid(format!("alpha must lie in (pi/2, pi), got {alpha}")));
    }
    if !(w > 1.0 && w.is_finite()) {
        return Err(invalid(format!("w must exceed 1, got {w}")));
    }
    let max_eps = oddr2ok_max_eps(alpha);
    if !(eps > 0.0 && eps <= max_eps) {
        return Err(invalid(format!("eps must lie in (0, {max_eps:e}], got {eps}")));
    }
    let (s, c) = alpha.sin_cos();
    let y1 = (1.0 - c * w) / s;
    let (x2, y2) = (1.0 / c - eps, eps * c / s);
    let e = Electorate::from_xy(&[(1.0, 0.0), (w, y1), (w, -y1), (x2, y2), (x2, -y2)]);
    let spec = FamilySpec::new(
        Family::OddR2Ok,
        &[("alpha", alpha), ("w", w), ("eps", eps)],
        &[
            ("yolk_radius", 1.0),
            ("yolk_center_x", 0.0),
            ("yolk_center_y", 0.0),
            ("lp_yolk_radius_upper", oddr2ok_radius_bound(alpha, w)),
            ("limiting_lines", 6.0),
        ],
    );
    Ok((e, spec))
}

/// [`family_oddr2ok`] with `w = -κ / cos α`.
pub fn family_oddr2ok_kappa(alpha: f64, kappa: f64, eps: f64) -> Result<(Electorate, FamilySpec)> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(invalid(format!("kappa must be positive, got {kappa}")));
    }
    let (e, mut spec) = family_oddr2ok(alpha, -kappa / alpha.cos(), eps)?;
    spec.parameters.insert("kappa".into(), kappa);
    spec.expected
        .insert("lp_ratio_bound".into(), oddr2ok_ratio(alpha, kappa));
    Ok((e, spec))
}

/// Append a third coordinate: zero, or uniform noise in `[-noise, noise]`.
pub fn family_lift(base: &Electorate, noise: f64, seed: u64) -> Result<Electorate> {
    if base.dim() != 2 {
        return Err(YolkError::UnsupportedDimension(base.dim()));
    }
    if !(noise >= 0.0 && noise.is_finite()) {
        return Err(invalid(format!("noise must be non-negative, got {noise}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Electorate::new(
        base.points()
            .iter()
            .map(|p| {
                let z = if noise > 0.0 {
                    rng.random_range(-noise..=noise)
                } else {
                    0.0
                };
                Point::xyz(p.x(), p.y(), z)
            })
            .collect(),
    )
}

/// Median planes through three non-collinear ideal points of a spatial electorate.
pub fn limiting_median_planes(e: &Electorate) -> Result<Vec<Hyperplane>> {
    if e.dim() != 3 {
        return Err(YolkError::DimensionMismatch {
            expected: 3,
            found: e.dim(),
        });
    }
    let p: Vec<&[f64]> = e.points().iter().map(Point::coords).collect();
    let mut planes: Vec<Hyperplane> = Vec::new();
    let n = p.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let u: Vec<f64> = (0..3).map(|t| p[j][t] - p[i][t]).collect();
                let v: Vec<f64> = (0..3).map(|t| p[k][t] - p[i][t]).collect();
                let nrm = vec![
                    u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0],
                ];
                if nrm.iter().map(|x| x * x).sum::<f64>().sqrt() <= 1e-12 {
                    continue;
                }
                let b = (0..3).map(|t| nrm[t] * p[i][t]).sum();
                let h = Hyperplane::new(nrm, b)?;
                if planes.iter().any(|q| q.same_as(&h, ON_PLANE_TOL)) {
                    continue;
                }
                if is_median(&h, e)? {
                    planes.push(h);
                }
            }
        }
    }
    Ok(planes)
}

/// LP yolk of a spatial electorate over [`limiting_median_planes`].
pub fn lift_lp_yolk(e: &Electorate) -> Result<LpYolkResult> {
    let planes = limiting_median_planes(e)?;
    lp_yolk_from_lines(e, &planes)
}

/// Closed-form distances for [`family_oddr2far_metrics`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FarMetrics {
    /// Distance from the cone apex `(1/cos α, 0)` to the yolk center.
    pub d_prime: f64,
    /// Bound on the LP yolk radius relative to the yolk radius.
    pub lp_radius_bound: f64,
    /// `d' - d` with `d = r·d'`: the LP yolk touches the same cone at radius `r`.
    pub predicted_separation: f64,
}

/// The [`family_oddr2ok_kappa`] instance and the predicted distance between
/// its LP yolk and yolk centers.
pub fn family_oddr2far_metrics(
    alpha: f64,
    kappa: f64,
    eps: f64,
) -> Result<(Electorate, FamilySpec, FarMetrics)> {
    let (e, mut spec) = family_oddr2ok_kappa(alpha, kappa, eps)?;
    spec.name = Family::OddR2Far;
    let d_prime = 1.0 / alpha.cos().abs();
    let r = oddr2ok_ratio(alpha, kappa);
    let m = FarMetrics {
        d_prime,
        lp_radius_bound: r,
        predicted_separation: (1.0 - r) * d_prime,
    };
    spec.expected.insert("d_prime".into(), d_prime);
    spec.expected
        .insert("center_separation_lower".into(), m.predicted_separation);
    Ok((e, spec, m))
}
