//! CSV ingestion for measured datasets (`x,y`) and tabulated error scales
//! (`x,rel_sigma`). LF and CRLF line endings are both accepted.

use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Dataset, HFunction, TabulatedScale};

fn parse_error(line: u64, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_two_columns(text: &str, header: [&str; 2]) -> Result<Vec<(u64, f64, f64)>> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut reader =
        csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());

    let mut rows = Vec::new();
    let mut saw_header = false;
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let fields: Vec<&str> = record.iter().collect();
        if fields.len() == 2 && fields[0] == header[0] && fields[1] == header[1] {
            if saw_header {
                return Err(parse_error(line, "duplicate header"));
            }
            if !rows.is_empty() {
                return Err(parse_error(line, "header must be the first line"));
            }
            saw_header = true;
            continue;
        }
        if !saw_header {
            return Err(parse_error(line, format!("expected header `{},{}`", header[0], header[1])));
        }
        if fields.len() != 2 {
            return Err(parse_error(line, format!("expected 2 fields, found {}", fields.len())));
        }
        let parse = |s: &str, name: &str| -> Result<f64> {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_error(line, format!("{name} is not a finite number: '{s}'")))
        };
        let x = parse(fields[0], header[0])?;
        let v = parse(fields[1], header[1])?;
        if !(x > 0.0) {
            return Err(parse_error(line, format!("x must be positive, got {x}")));
        }
        rows.push((line, x, v));
    }
    if !saw_header {
        return Err(parse_error(1, "empty file"));
    }
    Ok(rows)
}

pub fn parse_dataset_str(text: &str) -> Result<Dataset> {
    let rows = parse_two_columns(text, ["x", "y"])?;
    let (x, y): (Vec<f64>, Vec<f64>) = rows.into_iter().map(|(_, x, y)| (x, y)).unzip();
    Dataset::new(x, y)
}

pub fn parse_dataset(path: &Path) -> Result<Dataset> {
    parse_dataset_str(&std::fs::read_to_string(path)?)
}

pub fn parse_h_table_str(text: &str) -> Result<TabulatedScale> {
    let rows = parse_two_columns(text, ["x", "rel_sigma"])?;
    if let Some((line, _, s)) = rows.iter().find(|(_, _, s)| !(*s > 0.0)) {
        return Err(parse_error(*line, format!("rel_sigma must be positive, got {s}")));
    }
    TabulatedScale::new(rows.into_iter().map(|(_, x, s)| (x, s)).collect())
}

/// `power:GAMMA` or `table:PATH`.
pub fn parse_h_spec(spec: &str) -> Result<HFunction> {
    match spec.split_once(':') {
        Some(("power", g)) => g
            .parse::<f64>()
            .ok()
            .filter(|g| g.is_finite())
            .map(|gamma| HFunction::PowerLaw { gamma })
            .ok_or_else(|| Error::invalid(format!("bad power-law exponent '{g}'"))),
        Some(("table", path)) => Ok(HFunction::Tabulated(parse_h_table_str(&std::fs::read_to_string(path)?)?)),
        _ => Err(Error::invalid(format!("h must be `power:GAMMA` or `table:PATH`, got '{spec}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(e: Error) -> u64 {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn two_rows() {
        let d = parse_dataset_str("x,y\n1,2\n2,3\n").unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.x(), &[1.0, 2.0]);
        assert_eq!(d.y(), &[2.0, 3.0]);
    }

    #[test]
    fn negative_x_reports_line() {
        assert_eq!(line_of(parse_dataset_str("x,y\n-1,2\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_dataset_str("x,y\n1,2\n0,2\n").unwrap_err()), 3);
    }

    #[test]
    fn crlf_matches_lf() {
        let lf = parse_dataset_str("x,y\n1,2\n2,3.5\n4,1e-3\n").unwrap();
        let crlf = parse_dataset_str("x,y\r\n1,2\r\n2,3.5\r\n4,1e-3\r\n").unwrap();
        assert_eq!(lf, crlf);
    }

    #[test]
    fn header_errors() {
        assert_eq!(line_of(parse_dataset_str("").unwrap_err()), 1);
        assert_eq!(line_of(parse_dataset_str("1,2\n2,3\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_dataset_str("x,y\n1,2\nx,y\n2,3\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_dataset_str("x,y\n1,abc\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_dataset_str("x,y\n1,2,3\n").unwrap_err()), 2);
    }

    #[test]
    fn h_table() {
        let t = parse_h_table_str("x,rel_sigma\n1,1\n10,2\n").unwrap();
        assert_eq!(t.eval(5.5), 1.5);
        assert!(parse_h_table_str("x,rel_sigma\n1,0\n10,2\n").is_err());
        assert!(parse_h_table_str("x,y\n1,1\n10,2\n").is_err());
    }

    #[test]
    fn h_spec() {
        assert_eq!(parse_h_spec("power:0.5").unwrap(), HFunction::PowerLaw { gamma: 0.5 });
        assert!(parse_h_spec("power:x").is_err());
        assert!(parse_h_spec("cubic:1").is_err());
    }
}
