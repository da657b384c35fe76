//! Dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, Matrix4};
use num_complex::Complex64;
use rand::Rng;

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

pub fn identity(dim: usize) -> ComplexMatrix {
    ComplexMatrix::identity(dim, dim)
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn hermitian_defect(m: &ComplexMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// Eigen-decomposition of a Hermitian matrix; eigenvalues ascending, eigenvectors as columns.
pub fn hermitian_eigen(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_fn(m.nrows(), m.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let sym = (m + m.adjoint()).scale(0.5);
    let mut v: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn min_eigenvalue(m: &ComplexMatrix) -> f64 {
    hermitian_eigenvalues(m).first().copied().unwrap_or(0.0)
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn hermitian_trace_norm(m: &ComplexMatrix) -> f64 {
    hermitian_eigenvalues(m).iter().map(|v| v.abs()).sum()
}

/// `f(M)` for Hermitian `M`, applied through the spectrum.
pub fn hermitian_function(m: &ComplexMatrix, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let (vals, vecs) = hermitian_eigen(m);
    let mut scaled = vecs.clone();
    for (c, &v) in vals.iter().enumerate() {
        let fv = f(v);
        scaled.column_mut(c).scale_mut(fv);
    }
    scaled * vecs.adjoint()
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

pub fn to_matrix4(m: &ComplexMatrix) -> Matrix4<Complex64> {
    assert_eq!(m.shape(), (4, 4));
    Matrix4::from_fn(|r, c| m[(r, c)])
}

pub fn from_matrix4(m: &Matrix4<Complex64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(4, 4, |r, c| m[(r, c)])
}

pub fn real_to_complex(m: &DMatrix<f64>) -> ComplexMatrix {
    m.map(re)
}

/// Random density matrix of dimension `dim` from the Ginibre ensemble.
pub fn random_density_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g =
        ComplexMatrix::from_fn(dim, dim, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    let rho = &g * g.adjoint();
    let t = trace(&rho).re;
    rho.unscale(t)
}

/// Qubit `slot` of a register of `n_qubits`; slot 0 is the most significant bit.
#[inline]
pub fn bit(index: usize, slot: usize, n_qubits: usize) -> usize {
    (index >> (n_qubits - 1 - slot)) & 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn eigen_reconstructs_hermitian_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rho = random_density_matrix(6, &mut rng);
        let (vals, vecs) = hermitian_eigen(&rho);
        let diag = ComplexMatrix::from_diagonal(&ComplexVector::from_iterator(6, vals.iter().map(|&v| re(v))));
        let back = &vecs * diag * vecs.adjoint();
        assert!(max_abs_diff(&back, &rho) < 1e-13);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        assert!((trace(&rho).re - 1.0).abs() < 1e-14);
        assert!(min_eigenvalue(&rho) > -1e-14);
    }

    #[test]
    fn bit_extraction_is_big_endian() {
        // 0b101 on 3 qubits
        assert_eq!(bit(5, 0, 3), 1);
        assert_eq!(bit(5, 1, 3), 0);
        assert_eq!(bit(5, 2, 3), 1);
    }
}
