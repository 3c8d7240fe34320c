use std::f64::consts::PI;

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;
use yolkkit::constructions::{
    family_oddr2ok_kappa, oddr2ok_max_eps, oddr2ok_radius_bound, oddr2ok_ratio,
};
use yolkkit::yolk::YolkOptions;
use yolkkit::{family_nondegen, family_oddr2ok, lp_yolk, Electorate, Family};

use crate::error::CliError;
use crate::report::{csv_string, json, sig};
use crate::Format;

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// nondegen, oddr2ok or oddr2far.
    pub family: String,
    /// Grid of alpha values: `a,b,c`, `start:stop:count`, or a mix. A `pi`
    /// suffix multiplies by pi, e.g. `0.51pi:0.501pi:5`.
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub kappa: Option<String>,
    #[arg(long)]
    pub w: Option<String>,
    /// nondegen only.
    #[arg(long)]
    pub eps: Option<String>,
    /// Point offset for oddr2ok/oddr2far as a fraction of the largest admissible value.
    #[arg(long, default_value_t = 1e-3)]
    pub eps_frac: f64,
}

fn parse_value(tok: &str) -> Result<f64, CliError> {
    let tok = tok.trim();
    let (num, scale) = match tok.strip_suffix("pi") {
        Some("") => ("1", PI),
        Some(n) => (n, PI),
        None => (tok, 1.0),
    };
    num.trim()
        .parse::<f64>()
        .map(|v| v * scale)
        .map_err(|_| CliError::Usage(format!("cannot read grid value {tok:?}")))
}

pub fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let fields: Vec<&str> = part.split(':').collect();
        match fields.as_slice() {
            [v] => out.push(parse_value(v)?),
            [a, b, n] => {
                let (a, b) = (parse_value(a)?, parse_value(b)?);
                let n: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad count in range {part:?}")))?;
                match n {
                    0 => {}
                    1 => out.push(a),
                    _ => out.extend((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64)),
                }
            }
            _ => return Err(CliError::Usage(format!("bad grid entry {part:?}"))),
        }
    }
    Ok(out)
}

fn grid(s: &Option<String>) -> Result<Vec<f64>, CliError> {
    s.as_deref().map_or(Ok(Vec::new()), parse_grid)
}

#[derive(Clone, Copy, Debug)]
struct GridPoint {
    alpha: Option<f64>,
    kappa: Option<f64>,
    w: Option<f64>,
    eps: f64,
}

#[derive(Serialize)]
struct Row {
    index: usize,
    family: String,
    alpha: Option<f64>,
    kappa: Option<f64>,
    w: Option<f64>,
    eps: f64,
    lp_radius: Option<f64>,
    yolk_radius: Option<f64>,
    ratio: Option<f64>,
    expected_ratio: f64,
    abs_error: Option<f64>,
    center_distance: Option<f64>,
    expected_center_distance: f64,
    error: String,
}

fn instance(family: Family, p: &GridPoint) -> Result<(Electorate, f64, f64), CliError> {
    match family {
        Family::NonDegen => {
            let (e, _) = family_nondegen(p.eps)?;
            Ok((e, p.eps / (1.0 + p.eps * p.eps).sqrt(), 0.0))
        }
        _ => {
            let alpha = p.alpha.expect("alpha grid");
            let d_prime = 1.0 / alpha.cos().abs();
            let (e, ratio) = match (p.kappa, p.w) {
                (Some(k), _) => (family_oddr2ok_kappa(alpha, k, p.eps)?.0, oddr2ok_ratio(alpha, k)),
                (None, Some(w)) => (family_oddr2ok(alpha, w, p.eps)?.0, oddr2ok_radius_bound(alpha, w)),
                (None, None) => unreachable!("grid has kappa or w"),
            };
            Ok((e, ratio, (1.0 - ratio) * d_prime))
        }
    }
}

fn evaluate(index: usize, family: Family, p: &GridPoint, opts: &YolkOptions) -> Row {
    let mut row = Row {
        index,
        family: family.to_string(),
        alpha: p.alpha.map(sig),
        kappa: p.kappa,
        w: p.w,
        eps: sig(p.eps),
        lp_radius: None,
        yolk_radius: None,
        ratio: None,
        expected_ratio: f64::NAN,
        abs_error: None,
        center_distance: None,
        expected_center_distance: f64::NAN,
        error: String::new(),
    };
    let computed = instance(family, p).and_then(|(e, expected_ratio, expected_dist)| {
        row.expected_ratio = sig(expected_ratio);
        row.expected_center_distance = sig(expected_dist);
        let lp = lp_yolk(&e)?;
        let y = yolkkit::yolk::yolk_with_options(&e, opts)?;
        Ok((lp, y, expected_ratio))
    });
    match computed {
        Ok((lp, y, expected)) => {
            let ratio = lp.ball.radius / y.ball.radius;
            row.lp_radius = Some(sig(lp.ball.radius));
            row.yolk_radius = Some(sig(y.ball.radius));
            row.ratio = Some(sig(ratio));
            row.abs_error = Some(sig((ratio - expected).abs()));
            row.center_distance = Some(sig(lp.ball.center.distance_to(&y.ball.center)));
        }
        Err(e) => row.error = e.to_string(),
    }
    row
}

pub fn run(args: &SweepArgs, opts: &YolkOptions, format: Format) -> Result<String, CliError> {
    let family: Family = args.family.parse()?;
    let mut points = Vec::new();
    match family {
        Family::NonDegen => {
            for eps in grid(&args.eps)? {
                points.push(GridPoint { alpha: None, kappa: None, w: None, eps });
            }
        }
        Family::OddR2Ok | Family::OddR2Far => {
            let alphas = grid(&args.alpha)?;
            let kappas = grid(&args.kappa)?;
            let ws = grid(&args.w)?;
            if family == Family::OddR2Far && !ws.is_empty() {
                return Err(CliError::Usage("oddr2far sweeps take --kappa, not --w".into()));
            }
            for &alpha in &alphas {
                let eps = args.eps_frac * oddr2ok_max_eps(alpha);
                for &k in &kappas {
                    points.push(GridPoint { alpha: Some(alpha), kappa: Some(k), w: None, eps });
                }
                for &w in &ws {
                    points.push(GridPoint { alpha: Some(alpha), kappa: None, w: Some(w), eps });
                }
            }
        }
        Family::Lift => return Err(CliError::Usage("lift has no sweep; use generate".into())),
    }
    if points.is_empty() {
        return Err(CliError::Usage("empty parameter grid".into()));
    }
    let rows: Vec<Row> = points
        .par_iter()
        .enumerate()
        .map(|(i, p)| evaluate(i, family, p, opts))
        .collect();
    match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r)?;
            }
            csv_string(w)
        }
    }
}
