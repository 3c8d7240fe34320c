use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use yolkkit::constructions::limiting_median_planes;
use yolkkit::*;

fn electorate(min: usize, max: usize) -> impl Strategy<Value = Electorate> {
    prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), min..=max)
        .prop_map(|pts| Electorate::from_xy(&pts))
}

fn odd_electorate() -> impl Strategy<Value = Electorate> {
    (1usize..=4).prop_flat_map(|h| {
        prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 2 * h + 1)
            .prop_map(|pts| Electorate::from_xy(&pts))
    })
}

fn line() -> impl Strategy<Value = Hyperplane> {
    (0.0..2.0 * PI, -2.0..2.0f64).prop_map(|(t, b)| Hyperplane::from_angle(t, b))
}

fn mainhalf_params() -> impl Strategy<Value = MainHalfParams> {
    (0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64).prop_filter_map(
        "parameters out of range",
        |(u, v, w, x, z)| {
            let eta = -FRAC_PI_2 * u;
            let alpha = FRAC_PI_2 - eta * v;
            let beta = FRAC_PI_2 + FRAC_PI_2 * w;
            let gamma = (PI - beta) * x;
            let delta = (PI - beta - gamma) * z;
            MainHalfParams::new(alpha, beta, eta, gamma, delta).ok()
        },
    )
}

fn f(c: &Point, e: &Electorate) -> f64 {
    max_median_distance(c, e).unwrap().value
}

fn foot(c: &Point, h: &Hyperplane) -> Point {
    let s = h.signed_distance(c);
    Point::xy(c.x() - s * h.normal()[0], c.y() - s * h.normal()[1])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn distance_ignores_orientation(h in line(), x in -3.0..3.0f64, y in -3.0..3.0f64) {
        let p = Point::xy(x, y);
        let d1 = point_hyperplane_distance(&p, &h).unwrap();
        let d2 = point_hyperplane_distance(&p, &h.flip()).unwrap();
        prop_assert!((d1 - d2).abs() < 1e-15);
    }

    #[test]
    fn rotation_round_trip(h in line(), t in -1.0..1.0f64, theta in 0.0..PI) {
        let n = h.normal();
        let pivot = Point::xy(h.offset() * n[0] - t * n[1], h.offset() * n[1] + t * n[0]);
        let there = rotate_line_about_point(&h, &pivot, theta, Sense::Clockwise).unwrap();
        let back = rotate_line_about_point(&there, &pivot, theta, Sense::CounterClockwise).unwrap();
        let diff = (back.normal_angle() - h.normal_angle()).rem_euclid(2.0 * PI);
        prop_assert!(diff.min(2.0 * PI - diff) < 1e-9);
        prop_assert!((back.offset() - h.offset()).abs() < 1e-9);
    }

    #[test]
    fn tangent_hyperplane_touches(cx in -5.0..5.0f64, cy in -5.0..5.0f64, r in 0.0..5.0f64, t in 0.0..2.0 * PI) {
        let ball = Ball::new(Point::xy(cx, cy), r).unwrap();
        let h = tangent_hyperplane(&ball, &Direction::from_angle(t)).unwrap();
        prop_assert!((h.distance(&ball.center) - r).abs() < 1e-12);
    }

    #[test]
    fn line_through_its_points(x1 in -5.0..5.0f64, y1 in -5.0..5.0f64, dx in 0.01..3.0f64, dy in -3.0..3.0f64) {
        let p = Point::xy(x1, y1);
        let q = Point::xy(x1 + dx, y1 + dy);
        let h = line_through_points(&p, &q).unwrap();
        prop_assert!(h.distance(&p) < 1e-12 && h.distance(&q) < 1e-12);
    }

    #[test]
    fn median_ignores_orientation(e in electorate(1, 9), h in line()) {
        prop_assert_eq!(is_median(&h, &e).unwrap(), is_median(&h.flip(), &e).unwrap());
    }

    #[test]
    fn slab_edges_are_tight(e in electorate(1, 9), t in 0.0..2.0 * PI) {
        let a = Direction::from_angle(t);
        let slab = median_slab(&a, &e).unwrap();
        prop_assert!(is_median(&slab.lo_hyperplane(), &e).unwrap());
        prop_assert!(is_median(&slab.hi_hyperplane(), &e).unwrap());
        let step = 10.0 * 1e-9;
        let proj: Vec<f64> = e.points().iter().map(|p| p.x() * a.as_slice()[0] + p.y() * a.as_slice()[1]).collect();
        for b in [slab.b_lo - step, slab.b_hi + step] {
            // Skip offsets that land on another projection.
            if proj.iter().all(|v| (v - b).abs() > 1e-9) {
                let h = Hyperplane::oriented(a.as_slice().to_vec(), b).unwrap();
                prop_assert!(!is_median(&h, &e).unwrap());
            }
        }
    }

    #[test]
    fn odd_slabs_differ_by_direction(e in odd_electorate(), t1 in 0.0..PI, dt in 0.01..(PI - 0.02)) {
        let a1 = Direction::from_angle(t1);
        let a2 = Direction::from_angle(t1 + dt);
        let h1 = median_slab(&a1, &e).unwrap().lo_hyperplane();
        let h2 = median_slab(&a2, &e).unwrap().lo_hyperplane();
        prop_assert!(!h1.same_as(&h2, 1e-9));
    }

    #[test]
    fn limiting_lines_are_median_through_two_points(e in electorate(2, 9)) {
        for h in enumerate_limiting_median_lines(&e).unwrap().lines {
            prop_assert!(is_median(&h, &e).unwrap());
            let on = e.points().iter().filter(|p| h.distance(p) < 1e-9).count();
            prop_assert!(on >= 2);
        }
    }

    #[test]
    fn rotation_stays_median(e in odd_electorate(), t in 0.0..PI, clockwise in any::<bool>()) {
        prop_assume!(e.distinct_count(1e-9) >= 2);
        let slab = median_slab(&Direction::from_angle(t), &e).unwrap();
        let h = slab.lo_hyperplane();
        let pivot = e.points().iter().min_by(|p, q| h.distance(p).total_cmp(&h.distance(q))).unwrap();
        let sense = if clockwise { Sense::Clockwise } else { Sense::CounterClockwise };
        let rot = rotate_to_limiting(&h, pivot, &e, sense).unwrap();
        for k in 0..=4 {
            let mid = rotate_line_about_point(&h, pivot, rot.angle * k as f64 / 4.0, sense).unwrap();
            prop_assert!(is_median(&mid, &e).unwrap());
        }
        prop_assert!(rot.hyperplane.distance(&rot.second_point) < 1e-9);
    }

    #[test]
    fn lp_yolk_is_deterministic(e in electorate(2, 9)) {
        prop_assert_eq!(lp_yolk(&e).unwrap(), lp_yolk(&e).unwrap());
    }

    #[test]
    fn lp_yolk_below_yolk(e in electorate(1, 9)) {
        let lp = lp_yolk(&e).unwrap();
        let y = yolk(&e).unwrap();
        prop_assert!(lp.ball.radius <= y.ball.radius + 1e-6);
    }

    #[test]
    fn yolk_at_most_twice_lp_yolk_for_odd_n(e in odd_electorate()) {
        let lp = lp_yolk(&e).unwrap();
        let y = yolk(&e).unwrap();
        prop_assert!(y.ball.radius <= 2.0 * lp.ball.radius + 1e-5);
    }

    #[test]
    fn max_median_distance_is_convex(
        e in electorate(1, 9),
        c1 in (-1.0..2.0f64, -1.0..2.0f64),
        c2 in (-1.0..2.0f64, -1.0..2.0f64),
    ) {
        let p1 = Point::xy(c1.0, c1.1);
        let p2 = Point::xy(c2.0, c2.1);
        let mid = Point::xy((c1.0 + c2.0) / 2.0, (c1.1 + c2.1) / 2.0);
        prop_assert!(f(&mid, &e) <= (f(&p1, &e) + f(&p2, &e)) / 2.0 + 1e-9);
    }

    #[test]
    fn yolk_is_similarity_equivariant(
        e in electorate(1, 9),
        rot in 0.0..2.0 * PI,
        s in 0.1..10.0f64,
        tx in -10.0..10.0f64,
        ty in -10.0..10.0f64,
    ) {
        let map = |p: &Point| {
            let (sn, cs) = rot.sin_cos();
            Point::xy(s * (cs * p.x() - sn * p.y()) + tx, s * (sn * p.x() + cs * p.y()) + ty)
        };
        let moved = e.map(map).unwrap();
        let y = yolk(&e).unwrap();
        let ym = yolk(&moved).unwrap();
        prop_assert!((ym.ball.radius - s * y.ball.radius).abs() < 1e-6);
        // Even electorates can have a continuum of yolk centers.
        if e.is_odd() {
            prop_assert!(ym.ball.center.distance_to(&map(&y.ball.center)) < 1e-6);
        }
    }

    #[test]
    fn certified_yolks_are_covered_by_small_supports(e in odd_electorate()) {
        let y = yolk(&e).unwrap();
        prop_assert!(y.certified);
        let lines: Vec<Hyperplane> = y
            .tangent_directions
            .iter()
            .map(|d| tangent_hyperplane(&y.ball, d).unwrap())
            .collect();
        prop_assert!(hemisphere_cover(&y.ball, &lines).unwrap().covered);
        prop_assert!(minimal_support(&y.ball, &lines).unwrap().hyperplanes.len() <= 3);
    }

    #[test]
    fn non_limiting_tangents_touch_at_ideal_points(e in odd_electorate()) {
        let y = yolk(&e).unwrap();
        prop_assume!(y.certified && y.ball.radius > 1e-9);
        for h in &y.tangents {
            let on = e.points().iter().filter(|p| h.distance(p) <= 1e-6).count();
            if on == 1 {
                let t = foot(&y.ball.center, h);
                prop_assert!(e.points().iter().any(|p| p.distance_to(&t) <= 1e-6));
            }
        }
    }

    #[test]
    fn minimax_optimum_is_covered(lines in prop::collection::vec(line(), 3..8)) {
        let ball = solve_minimax_lines(&lines, 2).unwrap();
        let active: Vec<Hyperplane> = lines
            .iter()
            .filter(|h| (h.distance(&ball.center) - ball.radius).abs() <= 1e-7 * (1.0 + ball.radius))
            .cloned()
            .collect();
        prop_assert!(hemisphere_cover(&ball, &active).unwrap().covered);
    }

    #[test]
    fn mainhalf_radius_matches_incircle(p in mainhalf_params()) {
        let r = mainhalf_radius(&p).unwrap();
        let [h3, h2, h1] = p.lines();
        let ball = inscribed_ball_three_lines(&h1, &h2, &h3).unwrap();
        prop_assert!(r >= 0.5 - 1e-9);
        prop_assert!((ball.radius - r).abs() < 1e-9);
    }

    #[test]
    fn canonical_angles_in_range(e in odd_electorate()) {
        let y = yolk(&e).unwrap();
        prop_assume!(y.tangent_directions.len() >= 3 && y.ball.radius > 1e-6);
        let c = canonicalize(&e, &y).unwrap();
        prop_assert!(c.valid_labelings >= 1);
        prop_assert!(c.eta <= 0.0 && c.eta >= -FRAC_PI_2 - 1e-12);
        prop_assert!(c.alpha >= FRAC_PI_2 - 1e-9 && c.alpha <= FRAC_PI_2 - c.eta + 1e-9);
        prop_assert!(c.beta >= FRAC_PI_2 - 1e-9 && c.beta <= PI + 1e-9);
        // Canonical coordinates put the yolk on the unit disk.
        for q in &c.tangent_points {
            prop_assert!((q.x().hypot(q.y()) - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn nondegen_has_no_collinear_triples(eps in 1e-3..1.0f64) {
        let (e, _) = family_nondegen(eps).unwrap();
        let p = e.points();
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                for k in j + 1..p.len() {
                    let o = (p[j].x() - p[i].x()) * (p[k].y() - p[i].y())
                        - (p[j].y() - p[i].y()) * (p[k].x() - p[i].x());
                    prop_assert!(o.abs() > 1e-12);
                }
            }
        }
    }

    #[test]
    fn oddr2ok_lines_touch_unit_circle(a in 0.52..0.7f64, w in 1.5..5.0f64, t in 0.01..1.0f64) {
        let alpha = a * PI;
        let eps = t * yolkkit::constructions::oddr2ok_max_eps(alpha);
        let (e, _) = family_oddr2ok(alpha, w, eps).unwrap();
        let p = e.points();
        let origin = Point::xy(0.0, 0.0);
        for (i, j) in [(1, 3), (2, 4)] {
            let h = line_through_points(&p[i], &p[j]).unwrap();
            prop_assert!((h.distance(&origin) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn lift_is_reproducible(e in electorate(3, 7), seed in any::<u64>()) {
        let a = family_lift(&e, 1e-3, seed).unwrap();
        let b = family_lift(&e, 1e-3, seed).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn zero_noise_lift_has_point_lp_yolk() {
    let (base, _) = family_oddr2ok(0.55 * PI, 3.0, 1e-3).unwrap();
    let lifted = family_lift(&base, 0.0, 1).unwrap();
    assert!(!limiting_median_planes(&lifted).unwrap().is_empty());
    let lp = yolkkit::constructions::lift_lp_yolk(&lifted).unwrap();
    assert!(lp.ball.radius < 1e-12);
}
