//! Simulating an amplitude-damping channel with PBT over `R(p₁)^{⊗N}` resources.
//!
//! The target channel is `R′(p₀)` (plus-Bell convention); the simulated one is the closed
//! form for `R(p₁)^{⊗N}`. Their difference has eigenvalues `e₁ … e₄` in closed form.

use crate::error::{domain, Result};
use crate::linalg::ComplexMatrix;
use crate::pbt_choi::ChoiMatrix;

use super::models::{ad_choi, pbt_ad_closed_form, xi, AdConvention};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DifferenceSpectrum {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub e4: f64,
    pub c: f64,
}

impl DifferenceSpectrum {
    pub fn from_xi(xi: f64, p0: f64, p1: f64) -> Self {
        let e1 = xi / 4.0 * (1.0 - p1);
        let e2 = e1 - (p0 - p1) / 2.0;
        let c = 0.5 * ((1.0 - p0).sqrt() - (1.0 - xi) * (1.0 - p1).sqrt());
        let root = ((e1 - e2).powi(2) + 4.0 * c * c).sqrt();
        DifferenceSpectrum { e1, e2, e3: -0.5 * ((e1 + e2) + root), e4: -0.5 * ((e1 + e2) - root), c }
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        [self.e1, self.e2, self.e3, self.e4]
    }

    pub fn trace_norm(&self) -> f64 {
        self.eigenvalues().iter().map(|v| v.abs()).sum()
    }
}

fn check_prob(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        domain(format!("{name} = {p} outside [0, 1]"))
    }
}

pub fn difference_spectrum(n: usize, p0: f64, p1: f64) -> Result<DifferenceSpectrum> {
    check_prob("p0", p0)?;
    check_prob("p1", p1)?;
    Ok(DifferenceSpectrum::from_xi(xi(n)?, p0, p1))
}

/// `PBT[R(p₁)^{⊗N}] − R′(p₀)` as a matrix.
pub fn choi_resource_difference(n: usize, p0: f64, p1: f64) -> Result<ComplexMatrix> {
    let sim = pbt_ad_closed_form(n, p1)?;
    let target = ad_choi(p0, AdConvention::PlusBell)?;
    Ok(sim.matrix() - target.matrix())
}

/// Simulated and target channels of the Choi-resource study.
pub fn choi_resource_pair(n: usize, p0: f64, p1: f64) -> Result<(ChoiMatrix, ChoiMatrix)> {
    Ok((pbt_ad_closed_form(n, p1)?, ad_choi(p0, AdConvention::PlusBell)?))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KnownPoints {
    /// `p₁ = p₀`.
    pub p1_a: f64,
    pub d0: f64,
    /// `p₁ = (p₀ − ξ)/(1 − ξ)`, absent when negative.
    pub p1_b: Option<f64>,
    pub d1: Option<f64>,
}

pub fn d0_formula(xi: f64, p0: f64) -> f64 {
    xi * ((1.0 - p0) / 2.0 + (1.0 - p0).sqrt())
}

pub fn d1_formula(xi: f64, p0: f64) -> f64 {
    let q = 1.0 - p0;
    let r = xi / (1.0 - xi);
    0.5 * (q * r + (4.0 * q * (1.0 - (1.0 - xi).sqrt()).powi(2) + q * q * r * r).sqrt())
}

/// The two damping values of the resource at which the diamond norm equals the trace norm.
pub fn ad_known_points(n: usize, p0: f64) -> Result<KnownPoints> {
    check_prob("p0", p0)?;
    let x = xi(n)?;
    let (p1_b, d1) = if p0 >= x { (Some((p0 - x) / (1.0 - x)), Some(d1_formula(x, p0))) } else { (None, None) };
    Ok(KnownPoints { p1_a: p0, d0: d0_formula(x, p0), p1_b, d1 })
}

/// `d(|e₃| + |e₄|)/dp₁`.
pub fn outer_gradient(xi: f64, p0: f64, p1: f64) -> f64 {
    let k = 1.0 - xi;
    let num = p1 - p0 + 2.0 * k * (((1.0 - p0) / (1.0 - p1)).sqrt() - k);
    let den = 4.0 * (((p0 - p1) / 2.0).powi(2) + ((1.0 - p0).sqrt() - k * (1.0 - p1).sqrt()).powi(2)).sqrt();
    num / den
}

/// Gradient of the trace norm below (`left`) or above the kink at `e₂ = 0`.
pub fn trace_gradient(xi: f64, p0: f64, p1: f64, left: bool) -> f64 {
    let g = outer_gradient(xi, p0, p1);
    if left {
        g - 0.5
    } else {
        g + (1.0 - xi) / 2.0
    }
}

/// Kink of the trace norm, `p₁ = (2p₀ − ξ)/(2 − ξ)` where `e₂ = 0`.
pub fn kink_location(xi: f64, p0: f64) -> f64 {
    (2.0 * p0 - xi) / (2.0 - xi)
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Minimiser over `p₁` of the trace norm, or `None` when `p₀ < ξ/2`.
pub fn trace_min_location(n: usize, p0: f64) -> Result<Option<f64>> {
    check_prob("p0", p0)?;
    let x = xi(n)?;
    let kink = kink_location(x, p0);
    if kink < 0.0 {
        return Ok(None);
    }
    let tn = |p1: f64| DifferenceSpectrum::from_xi(x, p0, p1).trace_norm();
    let mut candidates = vec![kink];
    if kink > 0.0 && trace_gradient(x, p0, kink, true) > 0.0 {
        let g = |p| trace_gradient(x, p0, p, true);
        candidates.push(if g(0.0) >= 0.0 { 0.0 } else { bisect(0.0, kink, g, 1e-14) });
    }
    let top = 1.0 - 1e-12;
    if kink < top && trace_gradient(x, p0, kink, false) < 0.0 {
        let g = |p| trace_gradient(x, p0, p, false);
        candidates.push(if g(top) <= 0.0 { top } else { bisect(kink, top, g, 1e-14) });
    }
    Ok(candidates.into_iter().min_by(|a, b| tn(*a).total_cmp(&tn(*b))))
}

/// `p₀` above which the trace-norm minimiser drops below `(p₀ − ξ)/(1 − ξ)`.
pub fn p0_cross(xi_val: f64) -> Result<f64> {
    let max = (6.0 - 3f64.sqrt()) / 6.0;
    if !(0.0..=max + 1e-15).contains(&xi_val) {
        return domain(format!("ξ = {xi_val} outside [0, (6−√3)/6]"));
    }
    let x = xi_val;
    let num = 1.0 + 4.0 * x - 8.0 * x * x + 5.0 * x.powi(3) + (1.0 - x).powf(3.5) - x.powi(4);
    Ok(num / (3.0 - 3.0 * x + x * x))
}
