//! Points files: one point per line, comma-separated, `#` starts a comment line.

use std::io::Read;
use std::path::Path;

use sha2::{Digest, Sha256};
use yolkkit::{Electorate, Point};

use crate::error::CliError;

pub fn parse_points(text: &str) -> Result<Electorate, CliError> {
    let mut dim = None;
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = i + 1;
        let coords = line
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                match tok.parse::<f64>() {
                    Ok(v) if v.is_finite() => Ok(v),
                    _ => Err(CliError::Parse(format!(
                        "line {lineno}: cannot read {tok:?} as a finite number"
                    ))),
                }
            })
            .collect::<Result<Vec<f64>, _>>()?;
        match dim {
            None if coords.len() < 2 => {
                return Err(CliError::Parse(format!(
                    "line {lineno}: need at least 2 coordinates, found {}",
                    coords.len()
                )))
            }
            None => dim = Some(coords.len()),
            Some(d) if d != coords.len() => {
                return Err(CliError::Parse(format!(
                    "line {lineno}: expected {d} coordinates, found {}",
                    coords.len()
                )))
            }
            _ => {}
        }
        points.push(Point::new(coords).map_err(|e| CliError::Parse(format!("line {lineno}: {e}")))?);
    }
    if points.is_empty() {
        return Err(CliError::Parse("no points in input".into()));
    }
    Electorate::new(points).map_err(|e| CliError::Parse(e.to_string()))
}

/// Reads a points file; `-` is standard input.
pub fn read_points(path: &Path) -> Result<Electorate, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    parse_points(&text)
}

pub fn format_points(e: &Electorate, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    for p in e.points() {
        let row: Vec<String> = p.coords().iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// SHA-256 of the parsed coordinates, so comments and spacing do not matter.
pub fn digest(e: &Electorate) -> String {
    let mut h = Sha256::new();
    h.update((e.dim() as u64).to_le_bytes());
    for p in e.points() {
        for v in p.coords() {
            h.update(v.to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines() {
        let e = parse_points("# header\n1,2\n\n  3 , 4\n#x\n").unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.points()[1].coords(), &[3.0, 4.0]);
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse_points("1,2\n3,x\n").unwrap_err().to_string();
        assert!(err.starts_with("line 2"), "{err}");
        let err = parse_points("1,2\n3,4,5\n").unwrap_err().to_string();
        assert!(err.contains("expected 2"), "{err}");
        assert!(parse_points("# nothing\n").is_err());
        assert!(parse_points("1\n").is_err());
        assert!(parse_points("1,inf\n").is_err());
    }

    #[test]
    fn format_round_trips() {
        let e = Electorate::from_xy(&[(0.1, 1e-7), (-2.5, 1.0 / 3.0)]);
        let back = parse_points(&format_points(&e, &["t".into()])).unwrap();
        assert_eq!(back, e);
        assert_eq!(digest(&back), digest(&e));
    }
}
