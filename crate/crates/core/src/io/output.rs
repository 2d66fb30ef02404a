//! CSV emission and reading of solution grids.

use std::fs;
use std::path::{Path, PathBuf};

use crate::assembly::SolutionGrid;
use crate::catalog::Point;
use crate::error::{Error, Result};

fn csv_error(path: &Path, e: csv::Error) -> Error {
    Error::io(path, std::io::Error::other(e))
}

fn number(v: f64) -> String {
    format!("{v:.16e}")
}

/// Companion file holding the imaginary part: `name_imag.csv` next to `name.csv`.
pub fn imag_path(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}_imag.csv"))
}

fn write_table(path: &Path, times: &[f64], width: usize, values: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    let header: Vec<String> = std::iter::once("t".to_string())
        .chain((1..=width).map(|j| format!("x{j}")))
        .collect();
    w.write_record(&header).map_err(|e| csv_error(path, e))?;
    for (i, &t) in times.iter().enumerate() {
        let row = std::iter::once(number(t)).chain(
            values[i * width..(i + 1) * width]
                .iter()
                .map(|&v| number(v)),
        );
        w.write_record(row).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Header `t,x1,…,xP`, then one row per time node. Complex grids also write
/// the imaginary part to [`imag_path`].
pub fn emit_csv(grid: &SolutionGrid, path: &Path) -> Result<()> {
    write_table(path, &grid.times, grid.points.len(), &grid.values)?;
    if let Some(im) = &grid.imag {
        write_table(&imag_path(path), &grid.times, grid.points.len(), im)?;
    }
    Ok(())
}

/// Coordinates of the columns `x1, x2, …`.
pub fn emit_points(points: &[Point], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    let planar = matches!(points.first(), Some(Point::Plane(..)));
    let header: &[&str] = if planar {
        &["column", "x", "y"]
    } else {
        &["column", "x"]
    };
    w.write_record(header).map_err(|e| csv_error(path, e))?;
    for (j, p) in points.iter().enumerate() {
        let name = format!("x{}", j + 1);
        match *p {
            Point::Line(x) => w.write_record([name, number(x)]),
            Point::Plane(x, y) => w.write_record([name, number(x), number(y)]),
        }
        .map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn emit_text(text: &str, path: &Path) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Times, column count and row-major values of a solution CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct StoredGrid {
    pub times: Vec<f64>,
    pub width: usize,
    pub values: Vec<f64>,
}

pub fn read_csv(path: &Path) -> Result<StoredGrid> {
    let malformed = |message: String| Error::MalformedSolution {
        path: path.to_path_buf(),
        message,
    };
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let header = r.headers().map_err(|e| csv_error(path, e))?.clone();
    if header.get(0) != Some("t") || header.len() < 2 {
        return Err(malformed(
            "header must start with t followed by at least one column".into(),
        ));
    }
    let width = header.len() - 1;
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        if rec.len() != width + 1 {
            return Err(malformed(format!(
                "row {} has {} fields, expected {}",
                line + 2,
                rec.len(),
                width + 1
            )));
        }
        for (k, field) in rec.iter().enumerate() {
            let v: f64 = field.trim().parse().map_err(|_| {
                malformed(format!(
                    "row {} field {}: not a number: {field}",
                    line + 2,
                    k + 1
                ))
            })?;
            if k == 0 {
                times.push(v);
            } else {
                values.push(v);
            }
        }
    }
    if times.is_empty() {
        return Err(malformed("no data rows".into()));
    }
    Ok(StoredGrid {
        times,
        width,
        values,
    })
}
