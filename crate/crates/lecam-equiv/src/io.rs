//! Plain-text serialization helpers.
//!
//! Floats are written with 17 significant digits so that reading them back
//! recovers the exact binary value; all writers emit rows in a fixed order
//! so reruns with the same inputs produce byte-identical files.

use std::fmt::Write as _;
use std::path::Path;

/// Format a float with 17 significant digits (round-trip exact for f64).
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

/// One CSV row from string cells; no quoting, cells must not contain commas.
pub fn csv_row(cells: &[String]) -> String {
    cells.join(",")
}

/// Write a CSV file with the given header and rows.
pub fn write_csv(
    path: &Path,
    header: &[&str],
    rows: &[Vec<String>],
) -> std::io::Result<()> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&csv_row(row));
        out.push('\n');
    }
    std::fs::write(path, out)
}

/// Read a CSV file written by [`write_csv`]; returns (header, rows).
pub fn read_csv(path: &Path) -> std::io::Result<(Vec<String>, Vec<Vec<String>>)> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .map(|h| h.split(',').map(str::to_owned).collect())
        .unwrap_or_default();
    let rows = lines
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect();
    Ok((header, rows))
}

/// Render a complex matrix row-major with `re`/`im` column pairs.
pub fn complex_matrix_rows(m: &nalgebra::DMatrix<num_complex::Complex<f64>>) -> Vec<Vec<String>> {
    (0..m.nrows())
        .map(|i| {
            let mut row = Vec::with_capacity(2 * m.ncols());
            for j in 0..m.ncols() {
                row.push(fmt_f64(m[(i, j)].re));
                row.push(fmt_f64(m[(i, j)].im));
            }
            row
        })
        .collect()
}

/// Header for a complex matrix CSV: re_1,im_1,...,re_k,im_k.
pub fn complex_matrix_header(ncols: usize) -> Vec<String> {
    let mut h = Vec::with_capacity(2 * ncols);
    for j in 1..=ncols {
        h.push(format!("re_{j}"));
        h.push(format!("im_{j}"));
    }
    h
}

/// Simple fixed-width text table for terminal reports.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let ncols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (j, cell) in row.iter().enumerate().take(ncols) {
            widths[j] = widths[j].max(cell.len());
        }
    }
    let mut out = String::new();
    for (j, h) in header.iter().enumerate() {
        let _ = write!(out, "{:<w$}  ", h, w = widths[j]);
    }
    out.push('\n');
    for (j, _) in header.iter().enumerate() {
        let _ = write!(out, "{}  ", "-".repeat(widths[j]));
    }
    out.push('\n');
    for row in rows {
        for (j, cell) in row.iter().enumerate().take(ncols) {
            let _ = write!(out, "{:<w$}  ", cell, w = widths[j]);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for &x in &[
            std::f64::consts::PI,
            1.0 / 3.0,
            6.02e23,
            -7.25e-32,
            0.1 + 0.2,
            f64::MIN_POSITIVE,
        ] {
            let s = fmt_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let rows = vec![
            vec![fmt_f64(1.5), fmt_f64(-2.25)],
            vec![fmt_f64(0.1), fmt_f64(1e300)],
        ];
        write_csv(&path, &["a", "b"], &rows).unwrap();
        let (h, r) = read_csv(&path).unwrap();
        assert_eq!(h, vec!["a", "b"]);
        assert_eq!(r, rows);
    }
}
