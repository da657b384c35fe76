//! Derivative-free local minimisation (Nelder-Mead simplex) with multi-start driver.

#[derive(Clone, Copy, Debug)]
pub struct NelderMead {
    /// Edge length of the initial simplex.
    pub initial_step: f64,
    /// Stop once every vertex lies within this distance of the best one.
    pub step_tol: f64,
    pub max_evals: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead { initial_step: 0.5, step_tol: 1e-10, max_evals: 20_000 }
    }
}

#[derive(Clone, Debug)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
}

impl NelderMead {
    pub fn minimize(&self, mut f: impl FnMut(&[f64]) -> f64, x0: &[f64]) -> Minimum {
        let dim = x0.len();
        let mut evals = 0usize;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
        let v0 = eval(x0, &mut evals);
        simplex.push((x0.to_vec(), v0));
        for k in 0..dim {
            let mut x = x0.to_vec();
            x[k] += self.initial_step;
            let v = eval(&x, &mut evals);
            simplex.push((x, v));
        }
        let lerp =
            |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(p, q)| p + t * (q - p)).collect() };

        while evals < self.max_evals {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = simplex[0].0.clone();
            let spread = simplex[1..]
                .iter()
                .map(|(x, _)| x.iter().zip(&best).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max))
                .fold(0.0, f64::max);
            if spread <= self.step_tol {
                break;
            }
            let centroid: Vec<f64> =
                (0..dim).map(|k| simplex[..dim].iter().map(|(x, _)| x[k]).sum::<f64>() / dim as f64).collect();
            let (worst, f_worst) = simplex[dim].clone();
            let reflected = lerp(&centroid, &worst, -1.0);
            let f_r = eval(&reflected, &mut evals);
            if f_r < simplex[0].1 {
                let expanded = lerp(&centroid, &worst, -2.0);
                let f_e = eval(&expanded, &mut evals);
                simplex[dim] = if f_e < f_r { (expanded, f_e) } else { (reflected, f_r) };
            } else if f_r < simplex[dim - 1].1 {
                simplex[dim] = (reflected, f_r);
            } else {
                let (target, f_t) = if f_r < f_worst { (reflected, f_r) } else { (worst, f_worst) };
                let contracted = lerp(&centroid, &target, 0.5);
                let f_c = eval(&contracted, &mut evals);
                if f_c < f_t {
                    simplex[dim] = (contracted, f_c);
                } else {
                    let anchor = simplex[0].0.clone();
                    for vertex in simplex.iter_mut().skip(1) {
                        let x = lerp(&anchor, &vertex.0, 0.5);
                        let v = eval(&x, &mut evals);
                        *vertex = (x, v);
                    }
                }
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, value) = simplex.swap_remove(0);
        Minimum { x, value, evals }
    }

    /// Runs from every start, polishing each result once with a ten-times smaller simplex,
    /// and keeps the best.
    pub fn multi_start<F, I>(&self, f: F, starts: I) -> Option<Minimum>
    where
        F: Fn(&[f64]) -> f64,
        I: IntoIterator<Item = Vec<f64>>,
    {
        let polish = NelderMead { initial_step: self.initial_step / 10.0, ..*self };
        let mut best: Option<Minimum> = None;
        for x0 in starts {
            let first = self.minimize(&f, &x0);
            let mut refined = polish.minimize(&f, &first.x);
            refined.evals += first.evals;
            let keep = if first.value < refined.value { Minimum { evals: refined.evals, ..first } } else { refined };
            if best.as_ref().is_none_or(|b| keep.value < b.value) {
                best = Some(keep);
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_rosenbrock_minimum() {
        let rosen = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let m = NelderMead::default().minimize(rosen, &[-1.2, 1.0]);
        assert!((m.x[0] - 1.0).abs() < 1e-6 && (m.x[1] - 1.0).abs() < 1e-6, "{m:?}");
    }

    #[test]
    fn multi_start_escapes_local_minimum() {
        // local minimum near x = 1.13, global near x = -1.30
        let f = |x: &[f64]| x[0].powi(4) - 3.0 * x[0] * x[0] + x[0];
        let nm = NelderMead::default();
        let local = nm.minimize(f, &[2.0]);
        assert!(local.x[0] > 0.0);
        let global = nm.multi_start(f, vec![vec![2.0], vec![-2.0]]).unwrap();
        assert!(global.x[0] < 0.0 && global.value < local.value);
    }
}
