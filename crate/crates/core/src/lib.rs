//! Yolks and LP yolks of planar (and some three-dimensional) electorates.

pub mod certify;
pub mod constructions;
pub mod error;
pub mod geom;
mod linalg;
pub mod lp_yolk;
pub mod median;
pub mod yolk;

pub use error::{Result, YolkError};
pub use geom::{
    line_through_points, normalize_hyperplane, point_hyperplane_distance, rotate_line_about_point,
    tangent_hyperplane, Ball, Direction, Hyperplane, Point, Sense,
};
pub use certify::{
    angle_bisector, canonicalize, hemisphere_cover, inscribed_ball_three_lines, mainhalf_lower_bound,
    mainhalf_radius, minimal_support, CoverCertificate, MainHalfParams, SupportSet,
};
pub use constructions::{
    family_lift, family_nondegen, family_oddr2far_metrics, family_oddr2ok, Family, FamilySpec,
};
pub use lp_yolk::{lp_yolk, solve_minimax_lines, LpYolkResult};
pub use median::{
    enumerate_limiting_median_lines, is_median, median_slab, rotate_to_limiting, side_counts,
    Electorate, LimitingLines, MedianSlab, RotationResult, SideCounts,
};
pub use yolk::{brute_force_yolk, max_median_distance, yolk, GridSpec, SweepEvaluation, YolkResult};
