//! CSV interchange: two-column `x,y` datasets and multi-column tables.
//!
//! Dialect: comma separator, `.` decimal, newline-delimited rows. A single
//! header row is autodetected by a non-numeric first row. Floats are written
//! with the shortest round-tripping representation, so identical datasets
//! serialize byte-identically.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::data::Dataset;
use crate::error::{Error, Result};

pub fn write_xy_csv<W: Write>(d: &Dataset<f64>, mut w: W, header: bool) -> Result<()> {
    if header {
        writeln!(w, "x,y")?;
    }
    for &(x, y) in d.points() {
        writeln!(w, "{x},{y}")?;
    }
    Ok(())
}

pub fn write_xy_csv_file(d: &Dataset<f64>, path: &Path, header: bool) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_xy_csv(d, std::io::BufWriter::new(file), header)
}

/// Read a two-column `x,y` CSV; reports the 1-based line of the first
/// malformed row.
pub fn read_xy_csv<R: BufRead>(r: R) -> Result<Dataset<f64>> {
    let mut points = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        match parse_xy_row(trimmed) {
            Some(p) => points.push(p),
            None if idx == 0 => continue, // header row
            None => {
                return Err(Error::MalformedCsv {
                    line: idx + 1,
                    message: format!("expected two numeric fields, got '{trimmed}'"),
                })
            }
        }
    }
    Dataset::new(points)
}

pub fn read_xy_csv_file(path: &Path) -> Result<Dataset<f64>> {
    let file = std::fs::File::open(path)?;
    read_xy_csv(std::io::BufReader::new(file))
}

fn parse_xy_row(row: &str) -> Option<(f64, f64)> {
    let mut fields = row.split(',');
    let x = fields.next()?.trim().parse::<f64>().ok()?;
    let y = fields.next()?.trim().parse::<f64>().ok()?;
    if fields.next().is_some() || !x.is_finite() || !y.is_finite() {
        return None;
    }
    Some((x, y))
}

/// A multi-column numeric table with a mandatory header row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub names: Vec<String>,
    /// One vector per named column.
    pub columns: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        let idx = self.names.iter().position(|n| n == name)?;
        Some(&self.columns[idx])
    }
}

pub fn read_table_csv<R: BufRead>(r: R) -> Result<Table> {
    let mut lines = r.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::MalformedCsv {
        line: 1,
        message: "empty file".to_string(),
    })?;
    let names: Vec<String> = header?.split(',').map(|s| s.trim().to_string()).collect();
    for (i, name) in names.iter().enumerate() {
        if names[..i].contains(name) {
            return Err(Error::DuplicateColumn(name.clone()));
        }
    }
    let mut columns = vec![Vec::new(); names.len()];
    for (idx, line) in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != names.len() {
            return Err(Error::MalformedCsv {
                line: idx + 1,
                message: format!("expected {} fields, got {}", names.len(), fields.len()),
            });
        }
        for (col, field) in columns.iter_mut().zip(&fields) {
            let v = field
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::MalformedCsv {
                    line: idx + 1,
                    message: format!("non-numeric field '{field}'"),
                })?;
            col.push(v);
        }
    }
    Ok(Table { names, columns })
}

pub fn read_table_csv_file(path: &Path) -> Result<Table> {
    let file = std::fs::File::open(path)?;
    read_table_csv(std::io::BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xy_round_trip_with_header() {
        let d = Dataset::new(vec![(0.1, 0.2), (0.5, 0.25), (1.0 / 3.0, 2.0 / 3.0)]).unwrap();
        let mut buf = Vec::new();
        write_xy_csv(&d, &mut buf, true).unwrap();
        let back = read_xy_csv(buf.as_slice()).unwrap();
        assert_eq!(back.points(), d.points());
    }

    #[test]
    fn headerless_input_is_accepted() {
        let back = read_xy_csv("1,2\n3,4\n".as_bytes()).unwrap();
        assert_eq!(back.points(), &[(1.0, 2.0), (3.0, 4.0)]);
    }

    #[test]
    fn malformed_row_reports_line() {
        let err = read_xy_csv("x,y\n1,2\noops,4\n".as_bytes()).unwrap_err();
        match err {
            Error::MalformedCsv { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn table_reads_columns_by_name() {
        let t = read_table_csv("a,b,c\n1,2,3\n4,5,6\n".as_bytes()).unwrap();
        assert_eq!(t.column("b"), Some(&[2.0, 5.0][..]));
    }

    #[test]
    fn duplicate_column_names_rejected() {
        let err = read_table_csv("a,b,a\n1,2,3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::DuplicateColumn(name) if name == "a"));
    }
}
