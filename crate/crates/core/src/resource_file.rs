//! Plain-text resource files.
//!
//! ```text
//! PBTRES 1
//! N=2
//! FORM=REDUCED
//! <re> <im> <re> <im> ...     one matrix row per line
//! ```
//!
//! `FULL` files hold the `4^N`-dimensional state in `A₁..A_N, B₁..B_N` order; they are
//! symmetrised over ports and reduced on load. `REDUCED` files hold `R11, R12, R21, R22`
//! on `A` (internal order, `A₁` last), each as `2^N` rows.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::error::{PbtError, Result};
use crate::linalg::ComplexMatrix;
use crate::resource::{reduce, symmetrize, Block, FullResource, ReducedResource};

/// Tolerance for the Hermitian / positivity / trace checks on loaded data.
pub const FILE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResourceForm {
    Full,
    Reduced,
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> PbtError {
    PbtError::Parse { path: path.to_path_buf(), line, msg: msg.into() }
}

pub fn read_resource(path: &Path) -> Result<ReducedResource> {
    let text = fs::read_to_string(path)?;
    parse_resource(&text, path)
}

/// Parses file contents; `path` is only used in error messages.
pub fn parse_resource(text: &str, path: &Path) -> Result<ReducedResource> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let mut header = |want: &str| -> Result<(usize, String)> {
        let (i, l) = lines.next().ok_or_else(|| parse_err(path, 0, format!("missing {want} line")))?;
        Ok((i + 1, l.trim().to_string()))
    };
    let (ln, magic) = header("magic")?;
    if magic != "PBTRES 1" {
        return Err(parse_err(path, ln, format!("expected `PBTRES 1`, found `{magic}`")));
    }
    let (ln, nline) = header("N=")?;
    let n: usize = nline
        .strip_prefix("N=")
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| parse_err(path, ln, format!("expected `N=<positive int>`, found `{nline}`")))?;
    let (ln, fline) = header("FORM=")?;
    let form = match fline.strip_prefix("FORM=").map(str::trim) {
        Some("FULL") => ResourceForm::Full,
        Some("REDUCED") => ResourceForm::Reduced,
        _ => return Err(parse_err(path, ln, format!("expected `FORM=FULL|REDUCED`, found `{fline}`"))),
    };
    if n > 12 {
        return Err(parse_err(path, ln, format!("N={n} is too large for file input")));
    }
    let (rows, cols) = match form {
        ResourceForm::Full => (1usize << (2 * n), 1usize << (2 * n)),
        ResourceForm::Reduced => (4usize << n, 1usize << n),
    };
    let mut data = Vec::with_capacity(rows * cols);
    let mut seen = 0usize;
    for (i, line) in lines {
        let nums: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| parse_err(path, i + 1, format!("not a number: `{t}`"))))
            .collect::<Result<_>>()?;
        if nums.len() != 2 * cols {
            return Err(parse_err(path, i + 1, format!("expected {} numbers, found {}", 2 * cols, nums.len())));
        }
        data.extend(nums.chunks(2).map(|p| Complex64::new(p[0], p[1])));
        seen += 1;
        if seen > rows {
            return Err(parse_err(path, i + 1, format!("more than {rows} matrix rows")));
        }
    }
    if seen != rows {
        return Err(parse_err(path, 0, format!("expected {rows} matrix rows, found {seen}")));
    }
    let m = ComplexMatrix::from_row_slice(rows, cols, &data);
    match form {
        ResourceForm::Full => {
            let full = FullResource::with_tolerance(n, m, FILE_TOL)?;
            reduce(&symmetrize(&full)?)
        }
        ResourceForm::Reduced => {
            let dim = 1usize << n;
            let blocks = std::array::from_fn(|k| m.rows(k * dim, dim).into_owned());
            ReducedResource::new(n, blocks, FILE_TOL)
        }
    }
}

fn push_rows(out: &mut String, m: &ComplexMatrix) {
    for r in 0..m.nrows() {
        let row: Vec<String> = m.row(r).iter().map(|z| format!("{:e} {:e}", z.re, z.im)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

pub fn format_reduced(res: &ReducedResource) -> String {
    let mut out = String::new();
    let _ = write!(out, "PBTRES 1\nN={}\nFORM=REDUCED\n", res.n());
    for b in Block::ALL {
        push_rows(&mut out, res.block(b));
    }
    out
}

pub fn format_full(res: &FullResource) -> String {
    let mut out = String::new();
    let _ = write!(out, "PBTRES 1\nN={}\nFORM=FULL\n", res.n());
    push_rows(&mut out, res.rho());
    out
}

pub fn write_reduced(path: impl Into<PathBuf>, res: &ReducedResource) -> Result<()> {
    fs::write(path.into(), format_reduced(res))?;
    Ok(())
}

pub fn write_full(path: impl Into<PathBuf>, res: &FullResource) -> Result<()> {
    fs::write(path.into(), format_full(res))?;
    Ok(())
}
