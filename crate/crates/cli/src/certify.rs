use serde::Serialize;
use yolkkit::certify::direction_angle;
use yolkkit::yolk::YolkOptions;
use yolkkit::{canonicalize, mainhalf_lower_bound, mainhalf_radius, Electorate};

use crate::error::CliError;
use crate::points::digest;
use crate::report::{analyze, csv_string, json, sig, BallOut};
use crate::Format;

#[derive(Serialize)]
struct Tangent {
    index: usize,
    angle: f64,
    normal: Vec<f64>,
    offset: f64,
    in_support: bool,
}

#[derive(Serialize)]
struct MainHalf {
    eta: f64,
    alpha: f64,
    beta: f64,
    nu: f64,
    gamma: Option<f64>,
    delta: Option<f64>,
    valid_labelings: usize,
    radius: Option<f64>,
    lower_bound: Option<f64>,
}

#[derive(Serialize)]
struct Report {
    instance_digest: String,
    yolk: BallOut,
    lower_bound: f64,
    iterations: usize,
    certified: bool,
    covered: bool,
    max_gap: Option<f64>,
    support: Vec<usize>,
    tangents: Vec<Tangent>,
    lp_yolk: BallOut,
    mainhalf: Option<MainHalf>,
    mainhalf_error: Option<String>,
}

#[derive(Serialize)]
struct TangentRow {
    index: usize,
    angle: f64,
    normal_x: f64,
    normal_y: f64,
    offset: f64,
    in_support: bool,
}

/// Returns the certificate document and whether the tangent set covers.
pub fn run(e: &Electorate, opts: &YolkOptions, format: Format) -> Result<(String, bool), CliError> {
    if e.dim() != 2 {
        return Err(CliError::Failed(format!(
            "certificates need planar points, found dimension {}",
            e.dim()
        )));
    }
    let a = analyze(e, opts)?;
    let y = a.yolk.as_ref().expect("planar analysis has a yolk");
    let support: Vec<usize> = a.support.as_ref().map_or(Vec::new(), |s| s.indices.clone());
    let covered = a.cover.as_ref().is_some_and(|c| c.covered);
    let tangents: Vec<Tangent> = y
        .tangent_directions
        .iter()
        .zip(&a.tangent_lines)
        .enumerate()
        .map(|(i, (d, h))| Tangent {
            index: i,
            angle: sig(direction_angle(d)),
            normal: h.normal().iter().map(|&v| sig(v)).collect(),
            offset: sig(h.offset()),
            in_support: support.contains(&i),
        })
        .collect();

    if format == Format::Csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        for t in &tangents {
            w.serialize(TangentRow {
                index: t.index,
                angle: t.angle,
                normal_x: t.normal[0],
                normal_y: t.normal[1],
                offset: t.offset,
                in_support: t.in_support,
            })?;
        }
        return Ok((csv_string(w)?, covered));
    }

    let (mainhalf, mainhalf_error) = if e.is_odd() {
        match canonicalize(e, y) {
            Ok(c) => {
                let p = c.params();
                let m = MainHalf {
                    eta: sig(c.eta),
                    alpha: sig(c.alpha),
                    beta: sig(c.beta),
                    nu: sig(c.nu),
                    gamma: c.gamma.map(sig),
                    delta: c.delta.map(sig),
                    valid_labelings: c.valid_labelings,
                    radius: p.and_then(|p| mainhalf_radius(&p).ok()).map(sig),
                    lower_bound: p.and_then(|p| mainhalf_lower_bound(&p).ok()).map(sig),
                };
                (Some(m), None)
            }
            Err(err) => (None, Some(err.to_string())),
        }
    } else {
        (None, Some("canonical angles need an odd number of points".into()))
    };

    let report = Report {
        instance_digest: digest(e),
        yolk: BallOut::from(&y.ball),
        lower_bound: sig(y.lower_bound),
        iterations: y.iterations,
        certified: y.certified,
        covered,
        max_gap: a.cover.as_ref().map(|c| sig(c.max_gap)),
        support,
        tangents,
        lp_yolk: BallOut::from(&a.lp.ball),
        mainhalf,
        mainhalf_error,
    };
    Ok((json(&report)?, covered))
}
