//! Kraus representations: qubit channels from Choi matrices, and the PBT protocol map
//! from resource state to Choi matrix.

use num_complex::Complex64;

use crate::error::{PbtError, Result};
use crate::halfint::HalfInt;
use crate::linalg::{self, re, ComplexMatrix};
use crate::pbt_choi::{qr_coeffs, ChoiMatrix};
use crate::resource::ReducedResource;
use crate::spin_basis::{degeneracy, spin_basis, SpinBasis, SpinKind};

/// Eigenvalues of a Choi matrix below this are dropped when extracting Kraus operators.
pub const KRAUS_EIGEN_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct KrausSet {
    ops: Vec<ComplexMatrix>,
    in_dim: usize,
    out_dim: usize,
}

impl KrausSet {
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let first = ops.first().ok_or_else(|| PbtError::InvalidState("empty Kraus set".into()))?;
        let (out_dim, in_dim) = first.shape();
        for k in &ops {
            if k.shape() != (out_dim, in_dim) {
                return Err(PbtError::Dimension { expected: out_dim * in_dim, got: k.nrows() * k.ncols() });
            }
        }
        Ok(KrausSet { ops, in_dim, out_dim })
    }

    pub fn identity(dim: usize) -> Self {
        KrausSet { ops: vec![linalg::identity(dim)], in_dim: dim, out_dim: dim }
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    /// `sum_k K_k† K_k`; the identity for a trace-preserving set.
    pub fn completeness(&self) -> ComplexMatrix {
        self.ops.iter().fold(ComplexMatrix::zeros(self.in_dim, self.in_dim), |acc, k| acc + k.adjoint() * k)
    }
}

pub fn apply_kraus(k: &KrausSet, state: &ComplexMatrix) -> Result<ComplexMatrix> {
    if state.shape() != (k.in_dim, k.in_dim) {
        return Err(PbtError::Dimension { expected: k.in_dim, got: state.nrows() });
    }
    Ok(k.ops.iter().fold(ComplexMatrix::zeros(k.out_dim, k.out_dim), |acc, op| acc + op * state * op.adjoint()))
}

/// Kraus operators of the qubit channel with Choi matrix `choi`.
///
/// Each retained eigenvector `v` (scaled by `√λ`) is unfolded as `K[b][a] = √2 <ab|v>`,
/// `a` the idler and `b` the output; the `√2` accounts for the unit-trace Choi normalisation.
pub fn choi_to_kraus(choi: &ChoiMatrix) -> Result<KrausSet> {
    let c = choi.matrix();
    let (vals, vecs) = linalg::hermitian_eigen(c);
    if let Some(&min) = vals.first() {
        if min < -crate::pbt_choi::CHOI_TOL {
            return Err(PbtError::InvalidState(format!("Choi matrix not positive (min eigenvalue {min:e})")));
        }
    }
    let ops: Vec<ComplexMatrix> = vals
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &l)| l >= KRAUS_EIGEN_FLOOR)
        .map(|(k, &l)| {
            let scale = (2.0 * l).sqrt();
            ComplexMatrix::from_fn(2, 2, |b, a| vecs[(2 * a + b, k)] * scale)
        })
        .collect();
    KrausSet::new(ops)
}

/// Choi matrix of a qubit Kraus set, `(id ⊗ E)(|Φ+><Φ+|)` in idler-first order.
pub fn kraus_to_choi(k: &KrausSet) -> Result<ChoiMatrix> {
    if k.in_dim != 2 || k.out_dim != 2 {
        return Err(PbtError::Dimension { expected: 2, got: k.in_dim });
    }
    let mut c = ComplexMatrix::zeros(4, 4);
    for op in &k.ops {
        let w = ComplexMatrix::from_fn(4, 1, |r, _| op[(r & 1, r >> 1)] * std::f64::consts::FRAC_1_SQRT_2);
        c += &w * w.adjoint();
    }
    Ok(ChoiMatrix::from_matrix_unchecked(c))
}

/// Labels of the protocol Kraus operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProtocolLabel {
    /// Bulk operator `K¹(s, m, α)`.
    Bulk { s: HalfInt, m: HalfInt, alpha: usize },
    /// Kernel operator `K²(m)`.
    Kernel { m: HalfInt },
}

/// The PBT map `Λ: Tr_{B₂..B_N}[π] ↦ Choi`, as Kraus operators from `A ⊗ B₁` (dimension
/// `2^(n+1)`, `B₁` last) to `idler ⊗ B₁` (dimension 4).
#[derive(Clone, Debug)]
pub struct ProtocolKraus {
    n: usize,
    labels: Vec<ProtocolLabel>,
    set: KrausSet,
}

impl ProtocolKraus {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Kernel operators by ascending `m`, then bulk operators (`s`, `m`, `α` ascending).
    pub fn labels(&self) -> &[ProtocolLabel] {
        &self.labels
    }

    pub fn kraus_set(&self) -> &KrausSet {
        &self.set
    }

    pub fn kernel_count(&self) -> usize {
        self.labels.iter().filter(|l| matches!(l, ProtocolLabel::Kernel { .. })).count()
    }

    pub fn bulk_count(&self) -> usize {
        self.labels.len() - self.kernel_count()
    }

    /// Number of operators before tracing out `B₂..B_N`: each reduced operator stands for
    /// `2^(n−1)` copies differing only in the `B₂..B_N` basis vector.
    pub fn unreduced_count(&self) -> u128 {
        self.labels.len() as u128 * (1u128 << (self.n - 1))
    }

    /// `Λ` applied to a reduced resource.
    pub fn apply(&self, reduced: &ReducedResource) -> Result<ChoiMatrix> {
        if reduced.n() != self.n {
            return Err(PbtError::Dimension { expected: self.n, got: reduced.n() });
        }
        Ok(ChoiMatrix::from_matrix_unchecked(apply_kraus(&self.set, &reduced.joint_state())?))
    }

    /// `(2/N) sum_k |w_k><w_k|` on `A ⊗ C`, where `w_k` is the `B₁ = 0` slice of `K_k` with the
    /// idler read as `C`. Equals the port-1 POVM element.
    pub fn pi_1_reconstruction(&self) -> ComplexMatrix {
        let dim = 1usize << (self.n + 1);
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for k in self.set.ops() {
            // K[(c, 0), (a, 0)] is <c|_idler <w| at A index a
            let w = ComplexMatrix::from_fn(dim, 1, |r, _| k[(2 * (r & 1), 2 * (r >> 1))].conj());
            acc += &w * w.adjoint();
        }
        acc.scale(2.0 / self.n as f64)
    }
}

/// Row vector `<Φ|` on `A` as coefficients, or zeros when the label does not exist.
fn bra(basis: &SpinBasis, kind: SpinKind, j: HalfInt, m: HalfInt, alpha: usize) -> Vec<f64> {
    match basis.vector(kind, j, m, alpha) {
        Some(v) => v.iter().copied().collect(),
        None => vec![0.0; 1 << basis.n()],
    }
}

/// Lifts `|0><u0| + |1><u1|` on `A → idler` to `A ⊗ B₁ → idler ⊗ B₁`.
fn lift(u0: &[f64], u1: &[f64], scale: f64) -> ComplexMatrix {
    let dim = u0.len();
    let mut k = ComplexMatrix::zeros(4, 2 * dim);
    for a in 0..dim {
        for b in 0..2 {
            k[(b, 2 * a + b)] = re(u0[a] * scale);
            k[(2 + b, 2 * a + b)] = re(u1[a] * scale);
        }
    }
    k
}

pub fn protocol_kraus(n: usize) -> Result<ProtocolKraus> {
    if n < 2 {
        return Err(PbtError::Unsupported("PBT needs at least two ports".into()));
    }
    let basis = spin_basis(n)?;
    let half = HalfInt::HALF;
    let nf = n as f64;
    let top = HalfInt::from_twice(n as i32);
    let mut labels = Vec::new();
    let mut ops = Vec::new();

    for m in HalfInt::from_twice(n as i32 + 1).projections() {
        let x = m.as_f64() / (nf + 1.0);
        let u0: Vec<f64> =
            bra(&basis, SpinKind::TypeII, top, m + half, 1).iter().map(|v| v * (0.5 - x).max(0.0).sqrt()).collect();
        let u1: Vec<f64> =
            bra(&basis, SpinKind::TypeII, top, m - half, 1).iter().map(|v| v * (0.5 + x).max(0.0).sqrt()).collect();
        labels.push(ProtocolLabel::Kernel { m });
        ops.push(lift(&u0, &u1, std::f64::consts::FRAC_1_SQRT_2));
    }

    let tn = n as i32;
    for s in HalfInt::from_twice((tn + 1) % 2).range_to(HalfInt::from_twice(tn - 1)) {
        let count = degeneracy(n as u32 - 1, s) as usize;
        for m in s.projections() {
            let qr = qr_coeffs(s, m, n)?;
            for alpha in 1..=count {
                let combine = |c1: f64, v1: Vec<f64>, c2: f64, v2: Vec<f64>| -> Vec<f64> {
                    v1.iter().zip(&v2).map(|(a, b)| c1 * a + c2 * b).collect()
                };
                let u0 = combine(
                    qr.q_minus,
                    bra(&basis, SpinKind::TypeI, s - half, m + half, alpha),
                    -qr.r_plus,
                    bra(&basis, SpinKind::TypeII, s + half, m + half, alpha),
                );
                let u1 = combine(
                    qr.q_plus,
                    bra(&basis, SpinKind::TypeI, s - half, m - half, alpha),
                    qr.r_minus,
                    bra(&basis, SpinKind::TypeII, s + half, m - half, alpha),
                );
                labels.push(ProtocolLabel::Bulk { s, m, alpha });
                ops.push(lift(&u0, &u1, (nf / 2.0).sqrt()));
            }
        }
    }
    Ok(ProtocolKraus { n, labels, set: KrausSet::new(ops)? })
}

/// Trace of a complex matrix as a real number (imaginary part discarded).
pub fn real_trace(m: &ComplexMatrix) -> f64 {
    let t: Complex64 = linalg::trace(m);
    t.re
}
