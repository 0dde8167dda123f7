//! Dataset CSV reading and writing, number formatting.

use std::io::{Read, Write};
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use sphere_depth::Dataset;

/// Shortest notation that round-trips: 17 significant digits.
pub fn fmt_exact(v: f64) -> String {
    format!("{v:.16e}")
}

/// `v` with `digits` significant digits in positional notation, falling back
/// to scientific notation outside `[1e-5, 1e15)`.
pub fn fmt_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{:.*}", digits.saturating_sub(1), v);
    }
    let mag = v.abs().log10().floor() as i32;
    if !(-5..15).contains(&mag) {
        return format!("{:.*e}", digits.saturating_sub(1), v);
    }
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}

fn is_numeric(field: &str) -> bool {
    field.trim().parse::<f64>().is_ok()
}

/// Parses comma-separated rows. A first row containing a non-numeric field
/// is taken as a header. Errors name the 1-based line and column.
pub fn parse_dataset(reader: impl Read) -> anyhow::Result<Dataset> {
    let mut csv = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(reader);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    for (idx, record) in csv.records().enumerate() {
        let line = idx + 1;
        let record = record.with_context(|| format!("line {line}: malformed CSV"))?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        if idx == 0 && record.iter().any(|f| !is_numeric(f)) {
            continue;
        }
        let mut row = Vec::with_capacity(record.len());
        for (c, field) in record.iter().enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| anyhow!("line {line}, column {}: `{field}` is not a number", c + 1))?;
            if !v.is_finite() {
                bail!("line {line}, column {}: non-finite value `{field}`", c + 1);
            }
            row.push(v);
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => bail!("line {line}: {} columns, expected {w}", row.len()),
            Some(_) => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        bail!("no data rows");
    }
    Ok(Dataset::from_rows(rows)?)
}

pub fn read_dataset(path: &Path) -> anyhow::Result<Dataset> {
    let file = std::fs::File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    parse_dataset(file).with_context(|| format!("reading {}", path.display()))
}

/// Writes one row per observation, no header, 17 significant digits.
pub fn write_dataset(data: &Dataset, out: impl Write) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in data.rows() {
        w.write_record(row.iter().map(|&v| fmt_exact(v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Query point: explicit coordinates or the sample mean.
#[derive(Debug, Clone, PartialEq)]
pub enum PointSpec {
    Mean,
    Coords(Vec<f64>),
}

impl std::str::FromStr for PointSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim().eq_ignore_ascii_case("mean") {
            return Ok(PointSpec::Mean);
        }
        s.split(',')
            .map(|f| f.trim().parse::<f64>().map_err(|_| format!("`{f}` is not a number")))
            .collect::<Result<Vec<_>, _>>()
            .map(PointSpec::Coords)
    }
}

impl PointSpec {
    pub fn resolve(&self, data: &Dataset) -> anyhow::Result<Vec<f64>> {
        match self {
            PointSpec::Mean => Ok(data.mean()),
            PointSpec::Coords(c) if c.len() == data.dim() => Ok(c.clone()),
            PointSpec::Coords(c) => bail!("point has {} coordinates, data has {} columns", c.len(), data.dim()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_detection_and_errors() {
        let d = parse_dataset("x,y\n1,2\n3,4\n".as_bytes()).unwrap();
        assert_eq!((d.len(), d.dim()), (2, 2));
        let d = parse_dataset("1,2\n3,4\n".as_bytes()).unwrap();
        assert_eq!(d.len(), 2);
        let err = parse_dataset("1,2\n3,abc\n".as_bytes()).unwrap_err().to_string();
        assert_eq!(err, "line 2, column 2: `abc` is not a number");
        let err = parse_dataset("1,2\n3\n".as_bytes()).unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        assert!(parse_dataset("".as_bytes()).is_err());
    }

    #[test]
    fn number_formats() {
        assert_eq!(fmt_sig(0.5, 12), "0.500000000000");
        assert_eq!(fmt_sig(123.456, 5), "123.46");
        assert_eq!(fmt_sig(1e-7, 3), "1.00e-7");
        assert_eq!(fmt_exact(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn points() {
        assert_eq!("mean".parse::<PointSpec>().unwrap(), PointSpec::Mean);
        assert_eq!("1, -2.5".parse::<PointSpec>().unwrap(), PointSpec::Coords(vec![1.0, -2.5]));
        assert!("1,x".parse::<PointSpec>().is_err());
    }
}
