use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;
use yolkkit::constructions::{family_oddr2ok_kappa, oddr2ok_max_eps};
use yolkkit::{
    family_lift, family_nondegen, family_oddr2far_metrics, family_oddr2ok, yolk, Electorate,
    Family,
};

use crate::error::CliError;
use crate::points::{format_points, read_points};
use crate::report::{json, sig};
use crate::Global;

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// nondegen, oddr2ok, lift or oddr2far.
    pub family: String,
    /// Point offset. Defaults to 0.5 for nondegen and a tenth of the largest
    /// admissible value for oddr2ok/oddr2far.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Cone half-angle in radians, in (pi/2, pi). Default 0.55*pi.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Abscissa of the outer pair (oddr2ok). Default 3.
    #[arg(long)]
    pub w: Option<f64>,
    /// Sets w = -kappa / cos(alpha) instead of --w. oddr2far defaults to 10.
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Half-width of the uniform third coordinate (lift).
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    /// Planar points file to lift.
    #[arg(long)]
    pub base: Option<PathBuf>,
}

#[derive(Serialize)]
struct Sidecar {
    family: String,
    parameters: BTreeMap<String, f64>,
    expected: BTreeMap<String, f64>,
}

pub struct Generated {
    pub electorate: Electorate,
    pub family: Family,
    pub parameters: BTreeMap<String, f64>,
    pub expected: BTreeMap<String, f64>,
}

fn default_eps(alpha: f64) -> f64 {
    0.1 * oddr2ok_max_eps(alpha)
}

pub fn build(args: &GenerateArgs, seed: u64) -> Result<Generated, CliError> {
    let family: Family = args.family.parse()?;
    let alpha = args.alpha.unwrap_or(0.55 * PI);
    let (electorate, parameters, expected) = match family {
        Family::NonDegen => {
            let (e, s) = family_nondegen(args.eps.unwrap_or(0.5))?;
            (e, s.parameters, s.expected)
        }
        Family::OddR2Ok => {
            let eps = args.eps.unwrap_or_else(|| default_eps(alpha));
            let (e, s) = match (args.kappa, args.w) {
                (Some(_), Some(_)) => {
                    return Err(CliError::Usage("give either --w or --kappa, not both".into()))
                }
                (Some(k), None) => family_oddr2ok_kappa(alpha, k, eps)?,
                (None, w) => family_oddr2ok(alpha, w.unwrap_or(3.0), eps)?,
            };
            (e, s.parameters, s.expected)
        }
        Family::OddR2Far => {
            let eps = args.eps.unwrap_or_else(|| default_eps(alpha));
            let (e, s, _) = family_oddr2far_metrics(alpha, args.kappa.unwrap_or(10.0), eps)?;
            (e, s.parameters, s.expected)
        }
        Family::Lift => {
            let path = args
                .base
                .as_deref()
                .ok_or_else(|| CliError::Usage("lift needs --base <points file>".into()))?;
            let base = read_points(path)?;
            let lifted = family_lift(&base, args.noise, seed)?;
            let mut parameters = BTreeMap::new();
            parameters.insert("noise".to_string(), args.noise);
            parameters.insert("seed".to_string(), seed as f64);
            let mut expected = BTreeMap::new();
            // The planar yolk radius bounds the spatial one from below.
            expected.insert("yolk_radius_lower".to_string(), yolk(&base)?.ball.radius);
            if args.noise == 0.0 {
                expected.insert("lp_yolk_radius".to_string(), 0.0);
            }
            (lifted, parameters, expected)
        }
    };
    Ok(Generated {
        electorate,
        family,
        parameters,
        expected,
    })
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".expected.json");
    PathBuf::from(s)
}

/// Writes the points file, plus `<out>.expected.json` when `--out` is given.
pub fn run(args: &GenerateArgs, g: &Global) -> Result<(), CliError> {
    let gen = build(args, g.seed)?;
    let params: Vec<String> = gen
        .parameters
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let header = vec![format!("family {} {}", gen.family, params.join(" "))];
    let text = format_points(&gen.electorate, &header);
    let sidecar = Sidecar {
        family: gen.family.to_string(),
        parameters: gen.parameters,
        expected: gen.expected.into_iter().map(|(k, v)| (k, sig(v))).collect(),
    };
    match &g.out {
        Some(out) => {
            std::fs::write(out, text)?;
            std::fs::write(sidecar_path(out), json(&sidecar)?)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}
