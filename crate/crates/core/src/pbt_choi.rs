//! Choi matrix of the PBT channel assembled from spin-basis coefficients.
//!
//! Index convention: row/column `2·idler + output`, idler qubit outermost.

use std::fmt;

use num_complex::Complex64;

use crate::error::{domain, PbtError, Result};
use crate::halfint::HalfInt;
use crate::linalg::{self, re, ComplexMatrix, ZERO};
use crate::resource::{spin_coefficients, Block, ReducedResource, SpinCoefficients};
use crate::spin_basis::{Sign, SpinKind};

/// A validated 4×4 qubit-channel Choi matrix (trace one).
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix(ComplexMatrix);

pub const CHOI_TOL: f64 = 1e-9;

impl ChoiMatrix {
    /// Checks Hermiticity, positivity, unit trace and trace preservation.
    pub fn new(c: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(c, CHOI_TOL)
    }

    pub fn with_tolerance(c: ComplexMatrix, tol: f64) -> Result<Self> {
        if c.shape() != (4, 4) {
            return Err(PbtError::Dimension { expected: 4, got: c.nrows() });
        }
        let herm = linalg::hermitian_defect(&c);
        if herm > tol {
            return Err(PbtError::InvalidState(format!("Choi matrix not Hermitian (defect {herm:e})")));
        }
        let min = linalg::min_eigenvalue(&c);
        if min < -tol {
            return Err(PbtError::InvalidState(format!("Choi matrix not positive (min eigenvalue {min:e})")));
        }
        let reduced = output_traced(&c);
        let defect = linalg::max_abs_diff(&reduced, &linalg::identity(2).scale(0.5));
        if defect > tol {
            return Err(PbtError::InvalidState(format!("channel is not trace preserving (defect {defect:e})")));
        }
        Ok(ChoiMatrix(c))
    }

    /// Skips validation; for matrices built from formulas that guarantee the invariants.
    pub fn from_matrix_unchecked(c: ComplexMatrix) -> Self {
        ChoiMatrix(c)
    }

    /// Real 4×4 matrix given row by row.
    pub fn from_real_rows(rows: [[f64; 4]; 4]) -> Self {
        ChoiMatrix(ComplexMatrix::from_fn(4, 4, |r, c| re(rows[r][c])))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.0[(r, c)]
    }

    /// Choi matrix of the identity channel, the projector on `(|00> + |11>)/√2`.
    pub fn identity_channel() -> Self {
        Self::from_real_rows([[0.5, 0.0, 0.0, 0.5], [0.0; 4], [0.0; 4], [0.5, 0.0, 0.0, 0.5]])
    }

    pub fn max_abs_diff(&self, other: &ChoiMatrix) -> f64 {
        linalg::max_abs_diff(&self.0, &other.0)
    }
}

impl fmt::Display for ChoiMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..4 {
            let row: Vec<String> = (0..4).map(|c| crate::format::complex(self.0[(r, c)])).collect();
            writeln!(f, "{}", row.join("  "))?;
        }
        Ok(())
    }
}

/// Partial trace over the output (second) qubit of a 4×4 matrix.
pub fn output_traced(c: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(2, 2, |a, b| c[(2 * a, 2 * b)] + c[(2 * a + 1, 2 * b + 1)])
}

/// The coefficients `q±`, `r±` weighting the bulk terms of the Choi components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QrCoeffs {
    pub q_minus: f64,
    pub q_plus: f64,
    pub r_minus: f64,
    pub r_plus: f64,
}

pub fn qr_coeffs(s: HalfInt, m: HalfInt, n: usize) -> Result<QrCoeffs> {
    let tn = n as i32;
    if s.twice() < 0 || s.twice() > tn - 1 {
        return domain(format!("s = {s} outside [0, (N-1)/2] for N = {n}"));
    }
    if m.abs() > s || !m.same_parity(s) {
        return domain(format!("m = {m} is not a projection of s = {s}"));
    }
    let (sf, mf, nf) = (s.as_f64(), m.as_f64(), n as f64);
    let q = |num: f64| (2.0 * num / ((nf + 1.0 - 2.0 * sf) * (2.0 * sf + 1.0))).sqrt();
    let r = |num: f64| (2.0 * num / ((nf + 3.0 + 2.0 * sf) * (2.0 * sf + 1.0))).sqrt();
    Ok(QrCoeffs { q_minus: q(sf - mf), q_plus: q(sf + mf), r_minus: r(sf - mf + 1.0), r_plus: r(sf + mf + 1.0) })
}

const M: Sign = Sign::Minus;
const P: Sign = Sign::Plus;
const I: SpinKind = SpinKind::TypeI;
const II: SpinKind = SpinKind::TypeII;

fn bulk_strata(n: usize) -> impl Iterator<Item = HalfInt> {
    let tn = n as i32;
    HalfInt::from_twice((tn + 1) % 2).range_to(HalfInt::from_twice(tn - 1))
}

/// Boundary projections `m ∈ {−(N+1)/2, …, (N+1)/2}`.
fn boundary_range(n: usize) -> impl Iterator<Item = HalfInt> {
    HalfInt::from_twice(n as i32 + 1).projections()
}

/// `C^{11}` evaluated on block `b` of the coefficients.
pub fn c11(coeffs: &SpinCoefficients, b: Block) -> Result<Complex64> {
    let n = coeffs.n();
    let nf = n as f64;
    let half = HalfInt::HALF;
    let mut bulk = ZERO;
    for s in bulk_strata(n) {
        for m in s.projections() {
            let qr = qr_coeffs(s, m, n)?;
            let g = |k, sg| coeffs.g_sum(b, k, sg, s, m);
            bulk += g((I, I), [M, P, M, P]) * (qr.q_minus * qr.q_minus)
                - (g((I, II), [M, P, P, P]) + g((II, I), [P, P, M, P])) * (qr.q_minus * qr.r_plus)
                + g((II, II), [P, P, P, P]) * (qr.r_plus * qr.r_plus);
        }
    }
    let mut edge = ZERO;
    for m in boundary_range(n) {
        let w = 0.5 - m.as_f64() / (nf + 1.0);
        edge += coeffs.boundary(b, m + half, m + half) * w;
    }
    Ok(bulk * (nf / 2.0) + edge * 0.5)
}

/// `C^{13}` evaluated on block `b` of the coefficients.
pub fn c13(coeffs: &SpinCoefficients, b: Block) -> Result<Complex64> {
    let n = coeffs.n();
    let nf = n as f64;
    let half = HalfInt::HALF;
    let mut bulk = ZERO;
    for s in bulk_strata(n) {
        for m in s.projections() {
            let qr = qr_coeffs(s, m, n)?;
            let g = |k, sg| coeffs.g_sum(b, k, sg, s, m);
            bulk += g((I, I), [M, P, M, M]) * (qr.q_minus * qr.q_plus)
                + g((I, II), [M, P, P, M]) * (qr.q_minus * qr.r_minus)
                - g((II, I), [P, P, M, M]) * (qr.q_plus * qr.r_plus)
                - g((II, II), [P, P, P, M]) * (qr.r_minus * qr.r_plus);
        }
    }
    let mut edge = ZERO;
    for m in boundary_range(n) {
        let x = m.as_f64() / (nf + 1.0);
        let w = (0.25 - x * x).max(0.0).sqrt();
        edge += coeffs.boundary(b, m + half, m - half) * w;
    }
    Ok(bulk * (nf / 2.0) + edge * 0.5)
}

/// `C^{33}` evaluated on block `b` of the coefficients.
pub fn c33(coeffs: &SpinCoefficients, b: Block) -> Result<Complex64> {
    let n = coeffs.n();
    let nf = n as f64;
    let half = HalfInt::HALF;
    let mut bulk = ZERO;
    for s in bulk_strata(n) {
        for m in s.projections() {
            let qr = qr_coeffs(s, m, n)?;
            let g = |k, sg| coeffs.g_sum(b, k, sg, s, m);
            bulk += g((I, I), [M, M, M, M]) * (qr.q_plus * qr.q_plus)
                + (g((I, II), [M, M, P, M]) + g((II, I), [P, M, M, M])) * (qr.q_plus * qr.r_minus)
                + g((II, II), [P, M, P, M]) * (qr.r_minus * qr.r_minus);
        }
    }
    let mut edge = ZERO;
    for m in boundary_range(n) {
        let w = 0.5 + m.as_f64() / (nf + 1.0);
        edge += coeffs.boundary(b, m - half, m - half) * w;
    }
    Ok(bulk * (nf / 2.0) + edge * 0.5)
}

/// Fills the 4×4 Choi matrix from the three component formulas.
pub fn assemble_choi(coeffs: &SpinCoefficients) -> Result<ChoiMatrix> {
    let n = coeffs.n();
    if n < 2 {
        return Err(PbtError::Unsupported("PBT needs at least two ports".into()));
    }
    use Block::*;
    let mut c = ComplexMatrix::zeros(4, 4);
    let upper = [
        ((0, 0), c11(coeffs, B11)?),
        ((0, 1), c11(coeffs, B12)?),
        ((0, 2), c13(coeffs, B11)?),
        ((0, 3), c13(coeffs, B12)?),
        ((1, 1), c11(coeffs, B22)?),
        ((1, 2), c13(coeffs, B21)?),
        ((1, 3), c13(coeffs, B22)?),
        ((2, 2), c33(coeffs, B11)?),
        ((2, 3), c33(coeffs, B12)?),
        ((3, 3), c33(coeffs, B22)?),
    ];
    for ((r, col), v) in upper {
        c[(r, col)] = v;
        if r != col {
            c[(col, r)] = v.conj();
        } else {
            c[(r, r)] = re(v.re);
        }
    }
    Ok(ChoiMatrix(c))
}

/// Reduce → spin coefficients → Choi, for a reduced resource.
pub fn pbt_choi(reduced: &ReducedResource) -> Result<ChoiMatrix> {
    assemble_choi(&spin_coefficients(reduced)?)
}

/// Two-port closed forms, read directly from the blocks in the two-qubit spin basis.
pub fn two_port_choi(reduced: &ReducedResource) -> Result<ChoiMatrix> {
    if reduced.n() != 2 {
        return Err(PbtError::Unsupported(format!("two-port formulas need N = 2, got {}", reduced.n())));
    }
    let coeffs = spin_coefficients(reduced)?;
    let h = HalfInt::from_twice;
    let s3 = 3f64.sqrt();
    let s6 = 6f64.sqrt();
    let f = |b: Block, k1, j1, m1, k2, j2, m2| coeffs.f(b, (k1, h(j1), h(m1), 1), (k2, h(j2), h(m2), 1));
    let half_trace = |b: Block| linalg::trace(reduced.block(b)) * 0.5;
    let mixed = |b| f(b, I, 0, 0, II, 2, 0) + f(b, II, 2, 0, I, 0, 0);
    let c11 = |b| half_trace(b) - mixed(b) / (2.0 * s3);
    let c33 = |b| half_trace(b) + mixed(b) / (2.0 * s3);
    let c13 = |b| (f(b, I, 0, 0, II, 2, -2) - f(b, II, 2, 2, I, 0, 0)) / s6;
    use Block::*;
    let mut c = ComplexMatrix::zeros(4, 4);
    let upper = [
        ((0, 0), c11(B11)),
        ((0, 1), c11(B12)),
        ((0, 2), c13(B11)),
        ((0, 3), c13(B12)),
        ((1, 1), c11(B22)),
        ((1, 2), c13(B21)),
        ((1, 3), c13(B22)),
        ((2, 2), c33(B11)),
        ((2, 3), c33(B12)),
        ((3, 3), c33(B22)),
    ];
    for ((r, col), v) in upper {
        c[(r, col)] = v;
        c[(col, r)] = v.conj();
    }
    for k in 0..4 {
        c[(k, k)] = re(c[(k, k)].re);
    }
    Ok(ChoiMatrix(c))
}
