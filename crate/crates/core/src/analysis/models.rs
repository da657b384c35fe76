//! Depolarising and amplitude-damping channel models and the depolarising probability `ξ_N`.

use crate::error::{domain, Result};
use crate::halfint::HalfInt;
use crate::pbt_choi::ChoiMatrix;

fn binomial_f64(n: u32, k: i64) -> f64 {
    if k < 0 || k > i64::from(n) {
        return 0.0;
    }
    let k = k.min(i64::from(n) - k) as u32;
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Depolarising probability of `n`-port PBT with singlet resources.
pub fn xi(n: usize) -> Result<f64> {
    if n < 2 {
        return domain(format!("ξ_N needs N ≥ 2, got {n}"));
    }
    let nf = n as f64;
    let tn = n as i32;
    let big = (nf + 2.0) * (nf + 2.0);
    let mut sum = 0.0;
    for s in HalfInt::from_twice((tn + 1) % 2).range_to(HalfInt::from_twice(tn - 1)) {
        let sf = s.as_f64();
        let k = i64::from((tn - 1 - s.twice()) / 2);
        let d = big - (2.0 * sf + 1.0).powi(2);
        sum += sf * (sf + 1.0) * binomial_f64(n as u32, k) * ((nf + 2.0) - d.sqrt()) / d;
    }
    Ok(sum / (3.0 * 2f64.powi(tn - 4)) + (nf + 2.0) / (3.0 * 2f64.powi(tn - 1)))
}

/// Which Bell state the amplitude-damping Choi matrix is taken against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdConvention {
    /// `(|01> − |10>)/√2`: the per-port resource state `R(p)`.
    SingletBell,
    /// `(|00> + |11>)/√2`: the channel Choi matrix `R′(p)` used for comparisons.
    PlusBell,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChannelModel {
    Depolarising(f64),
    AmplitudeDamping(f64, AdConvention),
}

pub fn depolarising_choi(xi: f64) -> Result<ChoiMatrix> {
    if !(0.0..=4.0 / 3.0).contains(&xi) {
        return domain(format!("depolarising probability {xi} outside [0, 4/3]"));
    }
    Ok(ChoiMatrix::from_real_rows([
        [0.5 - xi / 4.0, 0.0, 0.0, 0.5 - xi / 2.0],
        [0.0, xi / 4.0, 0.0, 0.0],
        [0.0, 0.0, xi / 4.0, 0.0],
        [0.5 - xi / 2.0, 0.0, 0.0, 0.5 - xi / 4.0],
    ]))
}

pub fn ad_choi(p: f64, convention: AdConvention) -> Result<ChoiMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return domain(format!("damping probability {p} outside [0, 1]"));
    }
    let s = (1.0 - p).sqrt() / 2.0;
    Ok(match convention {
        AdConvention::SingletBell => ChoiMatrix::from_real_rows([
            [p / 2.0, 0.0, 0.0, 0.0],
            [0.0, (1.0 - p) / 2.0, -s, 0.0],
            [0.0, -s, 0.5, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]),
        AdConvention::PlusBell => ChoiMatrix::from_real_rows([
            [0.5, 0.0, 0.0, s],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, p / 2.0, 0.0],
            [s, 0.0, 0.0, (1.0 - p) / 2.0],
        ]),
    })
}

pub fn model_choi(model: ChannelModel) -> Result<ChoiMatrix> {
    match model {
        ChannelModel::Depolarising(x) => depolarising_choi(x),
        ChannelModel::AmplitudeDamping(p, c) => ad_choi(p, c),
    }
}

/// Closed-form channel of PBT over `R(p1)^{⊗n}`.
pub fn pbt_ad_closed_form(n: usize, p1: f64) -> Result<ChoiMatrix> {
    if !(0.0..=1.0).contains(&p1) {
        return domain(format!("damping probability {p1} outside [0, 1]"));
    }
    let x = xi(n)?;
    let q = 1.0 - p1;
    let off = (0.5 - x / 2.0) * q.sqrt();
    Ok(ChoiMatrix::from_real_rows([
        [0.5 - x * q / 4.0, 0.0, 0.0, off],
        [0.0, x * q / 4.0, 0.0, 0.0],
        [0.0, 0.0, p1 * (0.5 - x / 4.0) + x / 4.0, 0.0],
        [off, 0.0, 0.0, q * (0.5 - x / 4.0)],
    ]))
}
