//! Distances between qubit channels given by their Choi matrices.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::kraus::{choi_to_kraus, KrausSet};
use crate::linalg;
use crate::optimize::NelderMead;
use crate::pbt_choi::{output_traced, ChoiMatrix};

/// `Tr|X − Y|`.
pub fn trace_norm(x: &ChoiMatrix, y: &ChoiMatrix) -> f64 {
    linalg::hermitian_trace_norm(&(x.matrix() - y.matrix()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiamondBounds {
    /// The trace norm of the Choi difference.
    pub lower: f64,
    /// `2 ‖Tr_out |X − Y|‖_∞`.
    pub upper: f64,
}

impl DiamondBounds {
    /// The bounds coincide, so the diamond norm is known exactly.
    pub fn is_tight(&self, tol: f64) -> bool {
        (self.upper - self.lower).abs() <= tol
    }
}

pub fn diamond_bounds(x: &ChoiMatrix, y: &ChoiMatrix) -> DiamondBounds {
    let diff = x.matrix() - y.matrix();
    let modulus = linalg::hermitian_function(&diff, f64::abs);
    let lower = linalg::hermitian_eigenvalues(&modulus).iter().sum();
    let top = linalg::hermitian_eigenvalues(&output_traced(&modulus)).last().copied().unwrap_or(0.0);
    DiamondBounds { lower, upper: 2.0 * top }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiamondOptions {
    pub restarts: usize,
    pub seed: u64,
    pub step_tol: f64,
}

impl Default for DiamondOptions {
    fn default() -> Self {
        DiamondOptions { restarts: 64, seed: 0x5eed_d1a3, step_tol: 1e-10 }
    }
}

/// Two-qubit pure state from three polar and three phase angles.
fn pure_state(t: &[f64]) -> Vector4<Complex64> {
    let (s1, c1) = t[0].sin_cos();
    let (s2, c2) = t[1].sin_cos();
    let (s3, c3) = t[2].sin_cos();
    Vector4::new(
        Complex64::new(c1, 0.0),
        Complex64::from_polar(s1 * c2, t[3]),
        Complex64::from_polar(s1 * s2 * c3, t[4]),
        Complex64::from_polar(s1 * s2 * s3, t[5]),
    )
}

/// Angles of `(|00> + |11>)/√2`.
const BELL_ANGLES: [f64; 6] =
    [std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2, 0.0, 0.0, 0.0];

/// `(id ⊗ E)(|ψ><ψ|)` for a qubit Kraus set, idler first.
fn apply_to_pure(ks: &KrausSet, psi: &Vector4<Complex64>) -> Matrix4<Complex64> {
    let mut out = Matrix4::zeros();
    for k in ks.ops() {
        let phi = Vector4::from_fn(|r, _| {
            let (i, b) = (r >> 1, r & 1);
            k[(b, 0)] * psi[2 * i] + k[(b, 1)] * psi[2 * i + 1]
        });
        out += phi * phi.adjoint();
    }
    out
}

fn trace_norm4(m: &Matrix4<Complex64>) -> f64 {
    let h = (m + m.adjoint()).scale(0.5);
    h.symmetric_eigenvalues().iter().map(|v| v.abs()).sum()
}

/// Diamond-norm distance by maximising over pure two-qubit inputs from many starts.
///
/// The first start is the maximally entangled input, so the result is never below the
/// trace norm of the Choi difference.
pub fn diamond_numeric(x: &ChoiMatrix, y: &ChoiMatrix, opts: &DiamondOptions) -> Result<f64> {
    let kx = choi_to_kraus(x)?;
    let ky = choi_to_kraus(y)?;
    let objective = |t: &[f64]| {
        let psi = pure_state(t);
        -trace_norm4(&(apply_to_pure(&kx, &psi) - apply_to_pure(&ky, &psi)))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut starts = vec![BELL_ANGLES.to_vec()];
    for _ in 1..opts.restarts.max(1) {
        starts.push(
            (0..6)
                .map(|k| rng.random::<f64>() * if k < 3 { std::f64::consts::PI } else { std::f64::consts::TAU })
                .collect(),
        );
    }
    let nm = NelderMead { initial_step: 0.4, step_tol: opts.step_tol, max_evals: 4_000 };
    let best = nm.multi_start(objective, starts).expect("at least one start");
    Ok(-best.value)
}

/// Bounds plus numerical value for one pair of channels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceReport {
    pub trace_norm: f64,
    pub bounds: DiamondBounds,
    pub numeric: f64,
}

pub fn distance_report(x: &ChoiMatrix, y: &ChoiMatrix, opts: &DiamondOptions) -> Result<DistanceReport> {
    let bounds = diamond_bounds(x, y);
    Ok(DistanceReport { trace_norm: bounds.lower, bounds, numeric: diamond_numeric(x, y, opts)? })
}
