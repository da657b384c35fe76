//! The alternate resource `R_new(a)`: closed-form output `x, y, z`, its known point and
//! the analytic derivatives in `a`.
//!
//! The sums use the opposite weighting of `|01>` and `|10>` to the port state
//! `ResourceFamily::Alternate`: `alternate_xyz(n, a)` is the output of the full pipeline for
//! `Alternate(1 − a)`. Sweeps and known points follow the parametrisation of the sums.

use crate::error::{domain, Result};
use crate::halfint::HalfInt;
use crate::pbt_choi::ChoiMatrix;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlternateXyz {
    pub n: usize,
    pub a: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl AlternateXyz {
    pub fn choi(&self) -> ChoiMatrix {
        let (x, y, z) = (self.x, self.y, self.z);
        ChoiMatrix::from_real_rows([
            [x, 0.0, 0.0, z],
            [0.0, 0.5 - x, 0.0, 0.0],
            [0.0, 0.0, y, 0.0],
            [z, 0.0, 0.0, 0.5 - y],
        ])
    }

    /// `p₀` at which this point is a known point: `1 − 2(x − y)`.
    pub fn p0(&self) -> f64 {
        1.0 - 2.0 * (self.x - self.y)
    }
}

fn binomial(n: usize, k: i32) -> f64 {
    if k < 0 || k as usize > n {
        return 0.0;
    }
    let k = (k as usize).min(n - k as usize);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `a^{e}` with `e` given as twice its value.
fn pow_half(a: f64, twice: i32) -> f64 {
    let base = a.powi(twice.div_euclid(2));
    if twice.rem_euclid(2) == 1 {
        base * a.sqrt()
    } else {
        base
    }
}

/// One summand of a sum over `a`-monomials: coefficient and the two doubled exponents.
#[derive(Clone, Copy, Debug)]
struct Term {
    coeff: f64,
    m: f64,
    pa: i32,
    pb: i32,
}

impl Term {
    fn value(&self, a: f64) -> f64 {
        self.coeff * pow_half(a, self.pa) * pow_half(1.0 - a, self.pb)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Entry {
    X,
    Y,
    Z,
}

/// Bulk and boundary summands of `x`, `y` or `z`; zero-coefficient terms are dropped.
fn terms(n: usize, entry: Entry) -> Vec<Term> {
    let tn = n as i32;
    let nf = n as f64;
    // doubled exponent offsets (for a, for 1−a) before adding 2m
    let (oa, ob) = match entry {
        Entry::X => (tn + 1, tn - 1),
        Entry::Y => (tn - 1, tn + 1),
        Entry::Z => (tn, tn),
    };
    let mut out = Vec::new();
    let s_min = HalfInt::from_twice((tn + 1) % 2);
    for s in s_min.range_to(HalfInt::from_twice(tn - 1)) {
        let sf = s.as_f64();
        let norm = binomial(n, (tn - 1 - s.twice()) / 2) / (2.0 * (2.0 * sf + 1.0));
        let lo = ((nf + 1.0) / 2.0 - sf).sqrt();
        let hi = ((nf + 3.0) / 2.0 + sf).sqrt();
        for m in s.projections() {
            let mf = m.as_f64();
            let coeff = norm
                * match entry {
                    Entry::X => ((sf - mf) / lo + (sf + mf + 1.0) / hi).powi(2),
                    Entry::Y => (sf + mf) * (sf - mf + 1.0) * (1.0 / lo - 1.0 / hi).powi(2),
                    Entry::Z => {
                        (sf * sf - mf * mf) / (lo * lo)
                            + 2.0 * (sf * sf + mf * mf + sf) / (lo * hi)
                            + ((sf + 1.0).powi(2) - mf * mf) / (hi * hi)
                    }
                };
            if coeff != 0.0 {
                out.push(Term { coeff, m: mf, pa: oa + m.twice(), pb: ob - m.twice() });
            }
        }
    }
    let big = HalfInt::from_twice(tn + 1);
    let den = 2.0 * nf * (nf + 1.0);
    for m in (-big).range_to(big) {
        let mf = m.as_f64();
        let h = (nf + 1.0) / 2.0;
        let coeff = match entry {
            Entry::X => (h + mf) * (h - mf) / den,
            Entry::Y => (h - 1.0 + mf) * (h + mf) / den,
            Entry::Z => -(h + mf) * (h - mf) / den,
        };
        if coeff != 0.0 {
            out.push(Term { coeff, m: mf, pa: oa + m.twice(), pb: ob - m.twice() });
        }
    }
    out
}

fn sum(terms: &[Term], a: f64) -> f64 {
    terms.iter().map(|t| t.value(a)).sum()
}

fn check_a(a: f64) -> Result<()> {
    if (0.0..=1.0).contains(&a) {
        Ok(())
    } else {
        domain(format!("a = {a} outside [0, 1]"))
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return domain(format!("need N ≥ 2 ports, got {n}"));
    }
    Ok(())
}

pub fn alternate_xyz(n: usize, a: f64) -> Result<AlternateXyz> {
    check_n(n)?;
    check_a(a)?;
    Ok(AlternateXyz {
        n,
        a,
        x: sum(&terms(n, Entry::X), a),
        y: sum(&terms(n, Entry::Y), a),
        z: sum(&terms(n, Entry::Z), a),
    })
}

pub fn alternate_choi(n: usize, a: f64) -> Result<ChoiMatrix> {
    Ok(alternate_xyz(n, a)?.choi())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlternateKnownPoint {
    pub a_known: f64,
    pub d2: f64,
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    while hi - lo > tol {
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

pub fn d2_formula(p0: f64, y: f64, z: f64) -> f64 {
    let t = p0 - 2.0 * y;
    t + (t * t + ((1.0 - p0).sqrt() - 2.0 * z).powi(2)).sqrt()
}

/// The `a ≥ ½` where `1 − 2(x − y) = p₀`, with the diamond norm there; `None` if unreachable.
pub fn alternate_known_point(n: usize, p0: f64) -> Result<Option<AlternateKnownPoint>> {
    check_n(n)?;
    if !(0.0..=1.0).contains(&p0) {
        return domain(format!("p0 = {p0} outside [0, 1]"));
    }
    let (tx, ty) = (terms(n, Entry::X), terms(n, Entry::Y));
    let g = |a: f64| 1.0 - 2.0 * (sum(&tx, a) - sum(&ty, a)) - p0;
    let (g_lo, g_hi) = (g(0.5), g(1.0));
    if g_lo.abs() < 1e-12 {
        return Ok(Some(known_at(n, p0, 0.5)?));
    }
    if g_hi.abs() < 1e-12 {
        return Ok(Some(known_at(n, p0, 1.0)?));
    }
    if (g_lo < 0.0) == (g_hi < 0.0) {
        return Ok(None);
    }
    Ok(Some(known_at(n, p0, bisect(0.5, 1.0, g, 1e-12))?))
}

fn known_at(n: usize, p0: f64, a: f64) -> Result<AlternateKnownPoint> {
    let v = alternate_xyz(n, a)?;
    Ok(AlternateKnownPoint { a_known: a, d2: d2_formula(p0, v.y, v.z) })
}

/// The `a` with `y(a) = target`, searched over `[0, 1]`.
pub fn alternate_a_for_y(n: usize, target: f64) -> Result<Option<f64>> {
    check_n(n)?;
    let ty = terms(n, Entry::Y);
    let g = |a: f64| sum(&ty, a) - target;
    let (g_lo, g_hi) = (g(0.0), g(1.0));
    if g_lo == 0.0 {
        return Ok(Some(0.0));
    }
    if (g_lo < 0.0) == (g_hi < 0.0) {
        return Ok(if g_hi == 0.0 { Some(1.0) } else { None });
    }
    Ok(Some(bisect(0.0, 1.0, g, 1e-13)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlternateDerivatives {
    pub dy_da: f64,
    pub dz_da: f64,
    pub dp0_da: f64,
    pub d2_sum_da2_at_half: f64,
}

fn dy_da(ty: &[Term], n: usize, a: f64) -> f64 {
    let w = 2.0 * a * (1.0 - a);
    let lead = n as f64 * (1.0 - 2.0 * a) / w;
    ty.iter().map(|t| t.value(a) * (lead + (2.0 * t.m - 1.0) / w)).sum()
}

fn dz_da(tz: &[Term], n: usize, a: f64) -> f64 {
    let w = a * (1.0 - a);
    let lead = n as f64 * (1.0 - 2.0 * a) / (2.0 * w);
    tz.iter().map(|t| t.value(a) * (lead + t.m / w)).sum()
}

pub fn alternate_derivatives(n: usize, a: f64) -> Result<AlternateDerivatives> {
    check_n(n)?;
    if !(a > 0.0 && a < 1.0) {
        return domain(format!("derivatives need a in (0, 1), got {a}"));
    }
    let (ty, tz) = (terms(n, Entry::Y), terms(n, Entry::Z));
    let sym = |b: f64| sum(&ty, b) + sum(&ty, 1.0 - b);
    let h = 1e-3;
    let c = 0.5;
    let d2 =
        (-sym(c + 2.0 * h) + 16.0 * sym(c + h) - 30.0 * sym(c) + 16.0 * sym(c - h) - sym(c - 2.0 * h)) / (12.0 * h * h);
    Ok(AlternateDerivatives {
        dy_da: dy_da(&ty, n, a),
        dz_da: dz_da(&tz, n, a),
        dp0_da: 2.0 * (dy_da(&ty, n, a) - dy_da(&ty, n, 1.0 - a)),
        d2_sum_da2_at_half: d2,
    })
}
