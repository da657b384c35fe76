//! Resource states in full, reduced and spin-coefficient form.
//!
//! Full states are ordered `A₁..A_N, B₁..B_N` with `A₁` most significant. Reduced blocks
//! live on `A` in the spin-basis order `A₂..A_N, A₁` (so `A₁` is the last tensor slot).

use std::path::PathBuf;
use std::sync::Arc;

use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{domain, PbtError, Result};
use crate::halfint::HalfInt;
use crate::linalg::{self, re, ComplexMatrix, ZERO};
use crate::spin_basis::{degeneracy, spin_basis, Sign, SpinBasis, SpinKind};

/// Port count above which `symmetrize` refuses to enumerate permutations.
pub const MAX_SYMMETRIZE_PORTS: usize = 7;

const STATE_TOL: f64 = 1e-10;

fn check_density(rho: &ComplexMatrix, what: &str, tol: f64) -> Result<()> {
    let herm = linalg::hermitian_defect(rho);
    if herm > tol {
        return Err(PbtError::InvalidState(format!("{what} is not Hermitian (defect {herm:e})")));
    }
    let min = linalg::min_eigenvalue(rho);
    if min < -tol {
        return Err(PbtError::InvalidState(format!("{what} is not positive (min eigenvalue {min:e})")));
    }
    let t = linalg::trace(rho);
    if (t.re - 1.0).abs() > tol || t.im.abs() > tol {
        return Err(PbtError::InvalidState(format!("{what} has trace {t}")));
    }
    Ok(())
}

/// A resource density matrix on all `2N` qubits.
#[derive(Clone, Debug)]
pub struct FullResource {
    n: usize,
    rho: ComplexMatrix,
}

impl FullResource {
    pub fn new(n: usize, rho: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(n, rho, STATE_TOL)
    }

    pub(crate) fn with_tolerance(n: usize, rho: ComplexMatrix, tol: f64) -> Result<Self> {
        let dim = 1usize << (2 * n);
        if rho.shape() != (dim, dim) {
            return Err(PbtError::Dimension { expected: dim, got: rho.nrows() });
        }
        check_density(&rho, "resource state", tol)?;
        Ok(FullResource { n, rho })
    }

    /// `port^{⊗n}` for a two-qubit port state given in `(A, B)` order.
    pub fn product(port: &ComplexMatrix, n: usize) -> Result<Self> {
        Self::from_ports(&vec![port.clone(); n])
    }

    /// Tensor product of per-port states, port `i` being `(A_i, B_i)`.
    pub fn from_ports(ports: &[ComplexMatrix]) -> Result<Self> {
        let n = ports.len();
        if n == 0 {
            return domain("at least one port is required");
        }
        let dim = 1usize << (2 * n);
        let rho = ComplexMatrix::from_fn(dim, dim, |r, c| {
            (0..n).fold(Complex64::new(1.0, 0.0), |acc, i| {
                let pr = 2 * linalg::bit(r, i, 2 * n) + linalg::bit(r, n + i, 2 * n);
                let pc = 2 * linalg::bit(c, i, 2 * n) + linalg::bit(c, n + i, 2 * n);
                acc * ports[i][(pr, pc)]
            })
        });
        FullResource::new(n, rho)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }
}

/// Position of `A` index `a` (internal order `A₂..A_N, A₁`) in the `A₁`-first order.
#[inline]
pub(crate) fn internal_to_standard(a: usize, n: usize) -> usize {
    ((a & 1) << (n - 1)) | (a >> 1)
}

/// Blocks `R^{ij} = <i|_{B₁} Tr_{B₂..B_N}[π] |j>_{B₁}` on `A`.
#[derive(Clone, Debug)]
pub struct ReducedResource {
    n: usize,
    blocks: [ComplexMatrix; 4],
}

/// One of the four conditional blocks, `B11 = R^{11}` and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    B11,
    B12,
    B21,
    B22,
}

impl Block {
    pub const ALL: [Block; 4] = [Block::B11, Block::B12, Block::B21, Block::B22];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `(i, j)` with `R^{i+1, j+1}`.
    pub fn bits(self) -> (usize, usize) {
        let k = self.index();
        (k >> 1, k & 1)
    }

    pub fn from_bits(i: usize, j: usize) -> Block {
        Block::ALL[2 * i + j]
    }
}

impl ReducedResource {
    /// Validates the block invariants to `tol`.
    pub fn new(n: usize, blocks: [ComplexMatrix; 4], tol: f64) -> Result<Self> {
        let dim = 1usize << n;
        for b in &blocks {
            if b.shape() != (dim, dim) {
                return Err(PbtError::Dimension { expected: dim, got: b.nrows() });
            }
        }
        let [r11, r12, r21, r22] = &blocks;
        let stacked = ComplexMatrix::from_fn(2 * dim, 2 * dim, |r, c| {
            let b = [[r11, r12], [r21, r22]][r / dim][c / dim];
            b[(r % dim, c % dim)]
        });
        check_density(&stacked, "reduced resource", tol)?;
        Ok(ReducedResource { n, blocks })
    }

    pub(crate) fn from_blocks_unchecked(n: usize, blocks: [ComplexMatrix; 4]) -> Self {
        ReducedResource { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block(&self, b: Block) -> &ComplexMatrix {
        &self.blocks[b.index()]
    }

    pub fn blocks(&self) -> &[ComplexMatrix; 4] {
        &self.blocks
    }

    /// The state on `A ⊗ B₁` (with `B₁` last), i.e. `Tr_{B₂..B_N}[π]`.
    pub fn joint_state(&self) -> ComplexMatrix {
        let dim = 1usize << self.n;
        ComplexMatrix::from_fn(2 * dim, 2 * dim, |r, c| self.blocks[2 * (r & 1) + (c & 1)][(r >> 1, c >> 1)])
    }

    /// Convex combination `w·self + (1−w)·other`.
    pub fn mix(&self, other: &ReducedResource, w: f64) -> Result<ReducedResource> {
        if self.n != other.n {
            return Err(PbtError::Dimension { expected: self.n, got: other.n });
        }
        let blocks = std::array::from_fn(|k| self.blocks[k].scale(w) + other.blocks[k].scale(1.0 - w));
        Ok(ReducedResource { n: self.n, blocks })
    }
}

/// Traces out `B₂..B_N` and splits on `B₁`.
pub fn reduce(full: &FullResource) -> Result<ReducedResource> {
    let n = full.n;
    let dim = 1usize << n;
    let rest = 1usize << (n - 1);
    let rho = &full.rho;
    let blocks = std::array::from_fn(|k| {
        let (i, j) = Block::ALL[k].bits();
        ComplexMatrix::from_fn(dim, dim, |a, ap| {
            let sa = internal_to_standard(a, n) << n;
            let sap = internal_to_standard(ap, n) << n;
            (0..rest).map(|bbar| rho[(sa | (i << (n - 1)) | bbar, sap | (j << (n - 1)) | bbar)]).sum()
        })
    });
    Ok(ReducedResource::from_blocks_unchecked(n, blocks))
}

/// Applies a port permutation: port `i` of `full` becomes port `perm[i]`.
pub fn permute_ports(full: &FullResource, perm: &[usize]) -> Result<FullResource> {
    let n = full.n;
    if perm.len() != n || !(0..n).all(|k| perm.contains(&k)) {
        return domain(format!("{perm:?} is not a permutation of {n} ports"));
    }
    let dim = 1usize << (2 * n);
    let map = port_permutation_map(perm, n);
    let mut out = ComplexMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            out[(map[r], map[c])] = full.rho[(r, c)];
        }
    }
    Ok(FullResource { n, rho: out })
}

fn port_permutation_map(perm: &[usize], n: usize) -> Vec<usize> {
    (0..1usize << (2 * n))
        .map(|x| {
            let mut y = 0usize;
            for (src, &dst) in perm.iter().enumerate() {
                y |= linalg::bit(x, src, 2 * n) << (2 * n - 1 - dst);
                y |= linalg::bit(x, n + src, 2 * n) << (n - 1 - dst);
            }
            y
        })
        .collect()
}

/// Averages over all simultaneous permutations of the `(A_i, B_i)` port pairs.
pub fn symmetrize(full: &FullResource) -> Result<FullResource> {
    let n = full.n;
    if n > MAX_SYMMETRIZE_PORTS {
        return Err(PbtError::Unsupported(format!(
            "symmetrisation enumerates n! permutations; capped at {MAX_SYMMETRIZE_PORTS} ports, got {n}"
        )));
    }
    let dim = 1usize << (2 * n);
    let mut acc = ComplexMatrix::zeros(dim, dim);
    let mut count = 0usize;
    for perm in (0..n).permutations(n) {
        let map = port_permutation_map(&perm, n);
        for r in 0..dim {
            for c in 0..dim {
                acc[(map[r], map[c])] += full.rho[(r, c)];
            }
        }
        count += 1;
    }
    Ok(FullResource { n, rho: acc.unscale(count as f64) })
}

/// A random full resource (Ginibre-distributed), symmetrised and reduced.
pub fn random_symmetric_resource<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ReducedResource> {
    let full = FullResource::new(n, linalg::random_density_matrix(1 << (2 * n), rng))?;
    reduce(&symmetrize(&full)?)
}

/// Named resource families; the product families have identical ports.
#[derive(Clone, Debug, PartialEq)]
pub enum ResourceFamily {
    /// Singlet `(|01> − |10>)/√2` on every port.
    Bell,
    /// Amplitude-damping Choi state `R(p)` on every port.
    AdChoi(f64),
    /// `R_new(a)`, the rank-one state `√a|01> − √(1−a)|10>`.
    Alternate(f64),
    FromFile(PathBuf),
}

/// Two-qubit port state of a product family, basis `{00, 01, 10, 11}` with `A` first.
pub fn port_state(family: &ResourceFamily) -> Result<ComplexMatrix> {
    let m = match *family {
        ResourceFamily::Bell => return port_state(&ResourceFamily::AdChoi(0.0)),
        ResourceFamily::AdChoi(p) => {
            if !(0.0..=1.0).contains(&p) {
                return domain(format!("damping probability {p} outside [0, 1]"));
            }
            let s = (1.0 - p).sqrt() / 2.0;
            DMatrix::from_row_slice(
                4,
                4,
                &[p / 2.0, 0.0, 0.0, 0.0, 0.0, (1.0 - p) / 2.0, -s, 0.0, 0.0, -s, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0],
            )
        }
        ResourceFamily::Alternate(a) => {
            if !(0.0..=1.0).contains(&a) {
                return domain(format!("parameter a = {a} outside [0, 1]"));
            }
            let off = -(a * (1.0 - a)).sqrt();
            DMatrix::from_row_slice(
                4,
                4,
                &[0.0, 0.0, 0.0, 0.0, 0.0, a, off, 0.0, 0.0, off, 1.0 - a, 0.0, 0.0, 0.0, 0.0, 0.0],
            )
        }
        ResourceFamily::FromFile(_) => {
            return Err(PbtError::Unsupported("file resources have no single port state".into()))
        }
    };
    Ok(linalg::real_to_complex(&m))
}

/// Reduced blocks of `port^{⊗n}` without forming the `4^n`-dimensional state.
pub fn product_reduced(port: &ComplexMatrix, n: usize) -> Result<ReducedResource> {
    if n == 0 {
        return domain("at least one port is required");
    }
    if port.shape() != (4, 4) {
        return Err(PbtError::Dimension { expected: 4, got: port.nrows() });
    }
    check_density(port, "port state", STATE_TOL)?;
    let rho_a = ComplexMatrix::from_fn(2, 2, |a, ap| port[(2 * a, 2 * ap)] + port[(2 * a + 1, 2 * ap + 1)]);
    let mut rest = ComplexMatrix::from_element(1, 1, re(1.0));
    for _ in 1..n {
        rest = linalg::kron(&rest, &rho_a);
    }
    let blocks = std::array::from_fn(|k| {
        let (i, j) = Block::ALL[k].bits();
        let local = ComplexMatrix::from_fn(2, 2, |a, ap| port[(2 * a + i, 2 * ap + j)]);
        linalg::kron(&rest, &local)
    });
    Ok(ReducedResource::from_blocks_unchecked(n, blocks))
}

pub fn make_family(family: &ResourceFamily, n: usize) -> Result<ReducedResource> {
    match family {
        ResourceFamily::FromFile(path) => {
            let loaded = crate::resource_file::read_resource(path)?;
            if loaded.n() != n {
                return Err(PbtError::Dimension { expected: n, got: loaded.n() });
            }
            Ok(loaded)
        }
        _ => product_reduced(&port_state(family)?, n),
    }
}

/// Spin-basis coefficients `f^{ab}(label₁; label₂) = <Φ(label₁)| R^{ab} |Φ(label₂)>`,
/// stored densely and indexed through the basis label table.
#[derive(Clone, Debug)]
pub struct SpinCoefficients {
    n: usize,
    basis: Arc<SpinBasis>,
    tables: [ComplexMatrix; 4],
}

/// `(kind, j, m, alpha)` of one spin-basis vector.
pub type LabelKey = (SpinKind, HalfInt, HalfInt, usize);

impl SpinCoefficients {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &SpinBasis {
        &self.basis
    }

    pub fn table(&self, b: Block) -> &ComplexMatrix {
        &self.tables[b.index()]
    }

    /// Coefficient for two labels; zero whenever either label does not exist.
    pub fn f(&self, b: Block, left: LabelKey, right: LabelKey) -> Complex64 {
        let (k1, j1, m1, a1) = left;
        let (k2, j2, m2, a2) = right;
        match (self.basis.index_of(k1, j1, m1, a1), self.basis.index_of(k2, j2, m2, a2)) {
            (Some(r), Some(c)) => self.tables[b.index()][(r, c)],
            _ => ZERO,
        }
    }

    /// `g^{b}_{k₁,k₂}[σ₁σ₂σ₃σ₄](s, m)`: sum over the shared parent index `α ∈ 1..γ(n−1, s)`
    /// of `f(s σ₁½, m σ₂½, α; s σ₃½, m σ₄½, α)`.
    pub fn g_sum(&self, b: Block, kinds: (SpinKind, SpinKind), signs: [Sign; 4], s: HalfInt, m: HalfInt) -> Complex64 {
        let shift = |sg: Sign| match sg {
            Sign::Minus => -HalfInt::HALF,
            Sign::Plus => HalfInt::HALF,
        };
        let (j1, m1) = (s + shift(signs[0]), m + shift(signs[1]));
        let (j2, m2) = (s + shift(signs[2]), m + shift(signs[3]));
        let count = degeneracy(self.n as u32 - 1, s) as usize;
        (1..=count).map(|alpha| self.f(b, (kinds.0, j1, m1, alpha), (kinds.1, j2, m2, alpha))).sum()
    }

    /// `f^{b}_{II,II}(N/2, m₁, 1; N/2, m₂, 1)` on the fully symmetric multiplet.
    pub fn boundary(&self, b: Block, m1: HalfInt, m2: HalfInt) -> Complex64 {
        let top = HalfInt::from_twice(self.n as i32);
        let kind = if self.n == 1 { SpinKind::Unsplit } else { SpinKind::TypeII };
        self.f(b, (kind, top, m1, 1), (kind, top, m2, 1))
    }

    /// Inverse transform back to computational-basis blocks.
    pub fn to_reduced(&self) -> ReducedResource {
        let u = self.basis.u_complex();
        let blocks = std::array::from_fn(|k| &u * &self.tables[k] * u.adjoint());
        ReducedResource::from_blocks_unchecked(self.n, blocks)
    }
}

/// `u† R^{ab} u` for each block.
pub fn to_spin_coefficients(reduced: &ReducedResource, basis: Arc<SpinBasis>) -> Result<SpinCoefficients> {
    if basis.n() != reduced.n {
        return Err(PbtError::Dimension { expected: reduced.n, got: basis.n() });
    }
    let u = basis.u_complex();
    let ut = u.adjoint();
    let tables = std::array::from_fn(|k| &ut * &reduced.blocks[k] * &u);
    Ok(SpinCoefficients { n: reduced.n, basis, tables })
}

/// Convenience wrapper using the shared cached basis.
pub fn spin_coefficients(reduced: &ReducedResource) -> Result<SpinCoefficients> {
    to_spin_coefficients(reduced, spin_basis(reduced.n)?)
}
