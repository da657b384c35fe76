//! Dense brute-force construction of the square-root measurement and the PBT channel.
//!
//! Everything here is built directly from the singlet projectors, so it shares no code
//! path with the spin-basis formulas it is used to check. Qubits on `A ⊗ C` follow the
//! internal order `A₂..A_N, A₁, C`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{domain, PbtError, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::pbt_choi::ChoiMatrix;
use crate::resource::{permute_ports, reduce, Block, FullResource, ReducedResource};

pub const MAX_ORACLE_PORTS: usize = 8;
/// Eigenvalues of `rho` below this are treated as its kernel.
pub const SUPPORT_CUTOFF: f64 = 1e-10;

/// Internal slot of `A_port` (1-based port) on `n + 1` qubits.
pub fn port_slot(port: usize, n: usize) -> usize {
    if port == 1 {
        n - 1
    } else {
        port - 2
    }
}

/// Singlet projector between qubit `slot` and `C` (the last qubit), identity elsewhere.
pub fn sigma(slot: usize, n: usize) -> DMatrix<f64> {
    let q = n + 1;
    let dim = 1usize << q;
    let xs = q - 1 - slot;
    let mut m = DMatrix::zeros(dim, dim);
    for r in 0..dim {
        let (a, c) = ((r >> xs) & 1, r & 1);
        if a == c {
            continue;
        }
        m[(r, r)] += 0.5;
        m[(r ^ (1 << xs) ^ 1, r)] -= 0.5;
    }
    m
}

#[derive(Clone, Debug)]
pub struct DensePovm {
    n: usize,
    rho: DMatrix<f64>,
    rho_inv_sqrt: DMatrix<f64>,
    support: DMatrix<f64>,
    pi_1: DMatrix<f64>,
}

impl DensePovm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `rho = sum_i sigma_i`.
    pub fn rho(&self) -> &DMatrix<f64> {
        &self.rho
    }

    pub fn support_projector(&self) -> &DMatrix<f64> {
        &self.support
    }

    pub fn pi_1(&self) -> &DMatrix<f64> {
        &self.pi_1
    }

    /// POVM element of port `port` (1-based).
    pub fn pi(&self, port: usize) -> DMatrix<f64> {
        let s = sigma(port_slot(port, self.n), self.n);
        let dim = self.rho.nrows();
        let kernel = DMatrix::<f64>::identity(dim, dim) - &self.support;
        &self.rho_inv_sqrt * s * &self.rho_inv_sqrt + kernel / self.n as f64
    }
}

pub fn build_povm(n: usize) -> Result<DensePovm> {
    if !(2..=MAX_ORACLE_PORTS).contains(&n) {
        return domain(format!("oracle supports 2..={MAX_ORACLE_PORTS} ports, got {n}"));
    }
    let dim = 1usize << (n + 1);
    let mut rho = DMatrix::<f64>::zeros(dim, dim);
    for port in 1..=n {
        rho += sigma(port_slot(port, n), n);
    }
    let eig = rho.clone().symmetric_eigen();
    let mut inv_sqrt = DMatrix::zeros(dim, dim);
    let mut support = DMatrix::zeros(dim, dim);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda > SUPPORT_CUTOFF {
            let v = eig.eigenvectors.column(k);
            let outer = v * v.transpose();
            inv_sqrt += &outer / lambda.sqrt();
            support += outer;
        }
    }
    let sigma_1 = sigma(port_slot(1, n), n);
    let kernel = DMatrix::<f64>::identity(dim, dim) - &support;
    let pi_1 = &inv_sqrt * sigma_1 * &inv_sqrt + kernel / n as f64;
    Ok(DensePovm { n, rho, rho_inv_sqrt: inv_sqrt, support, pi_1 })
}

/// `Tr[Π (R ⊗ |m><n|_C)]` for a real `Π` on `A ⊗ C`.
fn traced(pi: &DMatrix<f64>, r: &ComplexMatrix, m: usize, n: usize) -> Complex64 {
    let dim = r.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..dim {
        for b in 0..dim {
            acc += r[(b, a)] * pi[(2 * a + n, 2 * b + m)];
        }
    }
    acc
}

/// `C[(m,i),(n,j)] = (N/2) Tr[Π₁ (R^{ij} ⊗ |m><n|_C)]` for a permutation-symmetric resource.
pub fn oracle_choi_with(povm: &DensePovm, reduced: &ReducedResource) -> Result<ChoiMatrix> {
    let n = povm.n;
    if reduced.n() != n {
        return Err(PbtError::Dimension { expected: n, got: reduced.n() });
    }
    let scale = n as f64 / 2.0;
    let c = ComplexMatrix::from_fn(4, 4, |row, col| {
        let (m, i) = (row >> 1, row & 1);
        let (nn, j) = (col >> 1, col & 1);
        traced(&povm.pi_1, reduced.block(Block::from_bits(i, j)), m, nn) * scale
    });
    Ok(ChoiMatrix::from_matrix_unchecked(c))
}

pub fn oracle_choi(reduced: &ReducedResource) -> Result<ChoiMatrix> {
    oracle_choi_with(&build_povm(reduced.n())?, reduced)
}

/// Channel of an arbitrary (not necessarily symmetric) resource: the average over ports
/// of the channel seen when each port is selected in turn.
pub fn oracle_choi_general(full: &FullResource) -> Result<ChoiMatrix> {
    let n = full.n();
    let povm = build_povm(n)?;
    let mut acc = ComplexMatrix::zeros(4, 4);
    for port in 0..n {
        // bring port `port` to the first position
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, port);
        let moved = permute_ports(full, &perm)?;
        acc += oracle_choi_with(&povm, &reduce(&moved)?)?.matrix();
    }
    Ok(ChoiMatrix::from_matrix_unchecked(acc.unscale(n as f64)))
}

/// `rho` as a complex matrix, for comparison with spin-basis constructions.
pub fn dense_rho(n: usize) -> Result<ComplexMatrix> {
    Ok(linalg::real_to_complex(build_povm(n)?.rho()))
}

/// Maximally mixed reduced resource of `n` ports.
pub fn maximally_mixed(n: usize) -> ReducedResource {
    let dim = 1usize << n;
    let half = linalg::identity(dim).unscale((2 * dim) as f64);
    let zero = ComplexMatrix::zeros(dim, dim);
    ReducedResource::new(n, [half.clone(), zero.clone(), zero, half], 1e-12).expect("valid state")
}
