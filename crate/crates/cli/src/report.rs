use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use yolkkit::constructions::lift_lp_yolk;
use yolkkit::yolk::{yolk_with_options, YolkOptions};
use yolkkit::{
    hemisphere_cover, lp_yolk, minimal_support, tangent_hyperplane, Ball, CoverCertificate,
    Electorate, Hyperplane, LpYolkResult, SupportSet, YolkResult,
};

use crate::error::CliError;

/// Yolk radii below this make the ratio undefined.
pub const RATIO_FLOOR: f64 = 1e-12;

/// Round to 12 significant digits so documents are byte-stable.
pub fn sig(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float");
    r + 0.0
}

#[derive(Serialize)]
pub struct BallOut {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl From<&Ball> for BallOut {
    fn from(b: &Ball) -> Self {
        Self {
            center: b.center.coords().iter().map(|&v| sig(v)).collect(),
            radius: sig(b.radius),
        }
    }
}

#[derive(Serialize, Default, Clone, Copy)]
pub struct Timings {
    pub lp_yolk: f64,
    pub yolk: f64,
    pub certify: f64,
}

#[derive(Serialize)]
pub struct CertificateSummary {
    pub certified: bool,
    pub covered: bool,
    pub max_gap: f64,
    pub tangent_count: usize,
}

pub struct Analysis {
    pub lp: LpYolkResult,
    /// Present for planar electorates only.
    pub yolk: Option<YolkResult>,
    pub tangent_lines: Vec<Hyperplane>,
    pub cover: Option<CoverCertificate>,
    pub support: Option<SupportSet>,
    pub timings: Timings,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn analyze(e: &Electorate, opts: &YolkOptions) -> Result<Analysis, CliError> {
    match e.dim() {
        2 => {
            let t = Instant::now();
            let lp = lp_yolk(e)?;
            let lp_ms = ms(t);
            let t = Instant::now();
            let y = yolk_with_options(e, opts)?;
            let yolk_ms = ms(t);
            let t = Instant::now();
            let tangent_lines = y
                .tangent_directions
                .iter()
                .map(|d| tangent_hyperplane(&y.ball, d))
                .collect::<Result<Vec<_>, _>>()?;
            let cover = hemisphere_cover(&y.ball, &tangent_lines).ok();
            let support = match &cover {
                Some(c) if c.covered => minimal_support(&y.ball, &tangent_lines).ok(),
                _ => None,
            };
            Ok(Analysis {
                lp,
                yolk: Some(y),
                tangent_lines,
                cover,
                support,
                timings: Timings {
                    lp_yolk: lp_ms,
                    yolk: yolk_ms,
                    certify: ms(t),
                },
            })
        }
        3 => {
            let t = Instant::now();
            let lp = lift_lp_yolk(e)?;
            Ok(Analysis {
                lp,
                yolk: None,
                tangent_lines: Vec::new(),
                cover: None,
                support: None,
                timings: Timings {
                    lp_yolk: ms(t),
                    ..Timings::default()
                },
            })
        }
        d => Err(CliError::Failed(format!(
            "dimension {d} is not supported (2D for everything, 3D for the LP yolk only)"
        ))),
    }
}

impl Analysis {
    pub fn ratio(&self) -> Option<f64> {
        let y = self.yolk.as_ref()?;
        (y.ball.radius >= RATIO_FLOOR).then(|| self.lp.ball.radius / y.ball.radius)
    }

    pub fn center_distance(&self) -> Option<f64> {
        let y = self.yolk.as_ref()?;
        Some(y.ball.center.distance_to(&self.lp.ball.center))
    }
}

#[derive(Serialize)]
pub struct RunResult {
    pub instance_digest: String,
    pub n: usize,
    pub dim: usize,
    pub yolk: Option<BallOut>,
    pub lp_yolk: BallOut,
    pub lp_degenerate: bool,
    pub ratio: Option<f64>,
    pub center_distance: Option<f64>,
    pub iterations: Option<usize>,
    pub certificate: Option<CertificateSummary>,
    pub support_size: Option<usize>,
    #[serde(rename = "timings_ms", skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl RunResult {
    pub fn new(e: &Electorate, digest: String, a: &Analysis, timings: bool) -> Self {
        let y = a.yolk.as_ref();
        Self {
            instance_digest: digest,
            n: e.len(),
            dim: e.dim(),
            yolk: y.map(|y| BallOut::from(&y.ball)),
            lp_yolk: BallOut::from(&a.lp.ball),
            lp_degenerate: a.lp.degenerate,
            ratio: a.ratio().map(sig),
            center_distance: a.center_distance().map(sig),
            iterations: y.map(|y| y.iterations),
            certificate: y.map(|y| CertificateSummary {
                certified: y.certified,
                covered: a.cover.as_ref().is_some_and(|c| c.covered),
                max_gap: sig(a.cover.as_ref().map_or(std::f64::consts::TAU, |c| c.max_gap)),
                tangent_count: a.tangent_lines.len(),
            }),
            support_size: a.support.as_ref().map(|s| s.hyperplanes.len()),
            timings: timings.then(|| Timings {
                lp_yolk: sig(a.timings.lp_yolk),
                yolk: sig(a.timings.yolk),
                certify: sig(a.timings.certify),
            }),
        }
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct RunRow<'a> {
    instance_digest: &'a str,
    n: usize,
    dim: usize,
    yolk_center: Option<String>,
    yolk_radius: Option<f64>,
    lp_center: String,
    lp_radius: f64,
    ratio: Option<f64>,
    center_distance: Option<f64>,
    certified: Option<bool>,
    max_gap: Option<f64>,
    support_size: Option<usize>,
}

impl RunResult {
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(RunRow {
            instance_digest: &self.instance_digest,
            n: self.n,
            dim: self.dim,
            yolk_center: self.yolk.as_ref().map(|b| join(&b.center)),
            yolk_radius: self.yolk.as_ref().map(|b| b.radius),
            lp_center: join(&self.lp_yolk.center),
            lp_radius: self.lp_yolk.radius,
            ratio: self.ratio,
            center_distance: self.center_distance,
            certified: self.certificate.as_ref().map(|c| c.certified),
            max_gap: self.certificate.as_ref().map(|c| c.max_gap),
            support_size: self.support_size,
        })?;
        csv_string(w)
    }
}

pub fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Failed(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Failed(e.to_string()))
}

pub fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

pub fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
