//! Spin (angular-momentum) basis of `n` qubits built by Clebsch-Gordan recursion,
//! together with the eigenvectors of `rho = sum_i sigma_i` on `A ⊗ C`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};

use crate::error::{domain, Result};
use crate::halfint::HalfInt;
use crate::linalg::ComplexMatrix;

/// Largest qubit count for which a basis may be built (the matrix is `4^n` doubles).
pub const MAX_BASIS_QUBITS: usize = 12;

/// Which Clebsch-Gordan coefficient `Ξ^{ab}(j, m) = <j, m, ½, b½ | j + a½, m + b½>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    PlusPlus,
    PlusMinus,
    MinusPlus,
    MinusMinus,
}

/// Condon-Shortley coupling coefficient of a spin `j` with one extra qubit.
///
/// Vanishes when either the source `(j, m)` or the target `(j ± ½, m ± ½)` is not a valid state.
pub fn clebsch_gordan(branch: Branch, j: HalfInt, m: HalfInt) -> Result<f64> {
    if j.twice() < 0 {
        return domain(format!("negative spin j = {j}"));
    }
    if !j.same_parity(m) {
        return domain(format!("j = {j} and m = {m} differ by a half-integer"));
    }
    let (dj, dm) = match branch {
        Branch::PlusPlus => (1, 1),
        Branch::PlusMinus => (1, -1),
        Branch::MinusPlus => (-1, 1),
        Branch::MinusMinus => (-1, -1),
    };
    let big_j = j.twice() + dj;
    let big_m = m.twice() + dm;
    if m.twice().abs() > j.twice() || big_j < 0 || big_m.abs() > big_j {
        return Ok(0.0);
    }
    // all quantities doubled: (j + m + 1) / (2j + 1) == (2j + 2m + 2) / (2 (2j + 1))
    let (tj, tm) = (f64::from(j.twice()), f64::from(m.twice()));
    let denom = 2.0 * (tj + 1.0);
    let v = match branch {
        Branch::PlusPlus => ((tj + tm + 2.0) / denom).sqrt(),
        Branch::PlusMinus => ((tj - tm + 2.0) / denom).sqrt(),
        Branch::MinusMinus => ((tj + tm) / denom).sqrt(),
        Branch::MinusPlus => -((tj - tm) / denom).sqrt(),
    };
    Ok(v)
}

fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// Number of spin-`j` multiplets in `ports` qubits, `γ(M, j)`. Zero when out of range.
pub fn degeneracy(ports: u32, j: HalfInt) -> u128 {
    let tj = j.twice();
    let tm = i32::try_from(ports).unwrap_or(i32::MAX);
    if tj < 0 || tj > tm || (tm - tj) % 2 != 0 {
        return 0;
    }
    let k = ((tm - tj) / 2) as u32;
    let upper = ((tm + tj) / 2 + 1) as u128;
    (tj as u128 + 1) * binomial(ports, k) / upper
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

/// Eigenvalue `λ∓_j` of `rho = sum_i sigma_i` for `n` ports.
pub fn rho_eigenvalue(sign: Sign, j: HalfInt, n: usize) -> Result<f64> {
    let tn = n as i32;
    if j.twice() < 0 || j.twice() > tn || !j.same_parity(HalfInt::from_twice(tn)) {
        return domain(format!("j = {j} is not a spin of {n} qubits"));
    }
    let half_n = n as f64 / 2.0;
    match sign {
        Sign::Minus => Ok((half_n - j.as_f64()) / 2.0),
        Sign::Plus if j.twice() >= 1 => Ok((half_n + j.as_f64() + 1.0) / 2.0),
        Sign::Plus => domain("λ+ requires j ≥ 1/2"),
    }
}

/// How an `n`-qubit multiplet arose from the `(n-1)`-qubit one: `TypeI` lowers the
/// parent spin by ½, `TypeII` raises it. `Unsplit` is the single-qubit base case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinKind {
    TypeI,
    TypeII,
    Unsplit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinLabel {
    pub n: usize,
    pub j: HalfInt,
    pub m: HalfInt,
    /// 1-based index of the parent multiplet among `(n-1)`-qubit multiplets of equal spin.
    pub alpha: usize,
    pub kind: SpinKind,
}

impl SpinLabel {
    fn sort_key(&self) -> (HalfInt, SpinKind, usize, HalfInt) {
        (self.j, self.kind, self.alpha, self.m)
    }
}

/// One multiplet: `2j + 1` consecutive columns of `u`, ordered by ascending `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Multiplet {
    pub j: HalfInt,
    pub kind: SpinKind,
    pub alpha: usize,
    pub first_column: usize,
}

#[derive(Clone, Debug)]
pub struct SpinBasis {
    n: usize,
    labels: Vec<SpinLabel>,
    multiplets: Vec<Multiplet>,
    u: DMatrix<f64>,
    index: HashMap<(HalfInt, HalfInt, usize, SpinKind), usize>,
}

impl SpinBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[SpinLabel] {
        &self.labels
    }

    /// Multiplets in canonical order `(j, kind, alpha)`.
    pub fn multiplets(&self) -> &[Multiplet] {
        &self.multiplets
    }

    /// Change of basis; column `k` is the spin vector of `labels()[k]` in the computational basis.
    pub fn u(&self) -> &DMatrix<f64> {
        &self.u
    }

    pub fn u_complex(&self) -> ComplexMatrix {
        crate::linalg::real_to_complex(&self.u)
    }

    pub fn index_of(&self, kind: SpinKind, j: HalfInt, m: HalfInt, alpha: usize) -> Option<usize> {
        self.index.get(&(j, m, alpha, kind)).copied()
    }

    pub fn vector(&self, kind: SpinKind, j: HalfInt, m: HalfInt, alpha: usize) -> Option<DVector<f64>> {
        self.index_of(kind, j, m, alpha).map(|c| self.u.column(c).into_owned())
    }
}

struct Level {
    labels: Vec<SpinLabel>,
    columns: Vec<DVector<f64>>,
}

impl Level {
    fn base() -> Self {
        let half = HalfInt::HALF;
        let label = |m| SpinLabel { n: 1, j: half, m, alpha: 1, kind: SpinKind::Unsplit };
        Level {
            labels: vec![label(-half), label(half)],
            columns: vec![DVector::from_vec(vec![1.0, 0.0]), DVector::from_vec(vec![0.0, 1.0])],
        }
    }

    /// Multiplets of spin `j`, in canonical order, as the column index of their `m = -j` entry.
    fn multiplet_starts(&self, j: HalfInt) -> Vec<usize> {
        self.labels.iter().enumerate().filter(|(_, l)| l.j == j && l.m == -j).map(|(i, _)| i).collect()
    }

    fn child(&self, n: usize) -> Level {
        let dim = 1usize << n;
        let half = HalfInt::HALF;
        let mut labels = Vec::with_capacity(dim);
        let mut columns = Vec::with_capacity(dim);
        let max_twice = n as i32;
        let mut j = HalfInt::from_twice(max_twice % 2);
        while j.twice() <= max_twice {
            for (kind, parent_j, up, down) in [
                (SpinKind::TypeI, j + half, Branch::MinusMinus, Branch::MinusPlus),
                (SpinKind::TypeII, j - half, Branch::PlusMinus, Branch::PlusPlus),
            ] {
                if parent_j.twice() < 0 {
                    continue;
                }
                for (a, start) in self.multiplet_starts(parent_j).into_iter().enumerate() {
                    for m in j.projections() {
                        // parent |parent_j, m ± ½> sits at offset (m ± ½ + parent_j) from `start`
                        let mut v = DVector::zeros(dim);
                        for (bit, pm, branch) in [(0usize, m + half, up), (1usize, m - half, down)] {
                            let c = clebsch_gordan(branch, parent_j, pm).unwrap_or(0.0);
                            if c == 0.0 {
                                continue;
                            }
                            let offset = ((pm + parent_j).twice() / 2) as usize;
                            let parent = &self.columns[start + offset];
                            for (idx, &x) in parent.iter().enumerate() {
                                v[2 * idx + bit] += c * x;
                            }
                        }
                        labels.push(SpinLabel { n, j, m, alpha: a + 1, kind });
                        columns.push(v);
                    }
                }
            }
            j = j + HalfInt::ONE;
        }
        Level { labels, columns }
    }
}

/// Builds the `n`-qubit spin basis (qubit `A₁` in the last tensor slot).
pub fn build_spin_basis(n: usize) -> Result<SpinBasis> {
    if n == 0 {
        return domain("spin basis needs at least one qubit");
    }
    if n > MAX_BASIS_QUBITS {
        return domain(format!("spin basis capped at {MAX_BASIS_QUBITS} qubits, got {n}"));
    }
    let mut level = Level::base();
    for k in 2..=n {
        level = level.child(k);
    }
    let mut order: Vec<usize> = (0..level.labels.len()).collect();
    order.sort_by_key(|&i| level.labels[i].sort_key());
    let labels: Vec<SpinLabel> = order.iter().map(|&i| level.labels[i]).collect();
    let u = DMatrix::from_columns(&order.iter().map(|&i| level.columns[i].clone()).collect::<Vec<_>>());
    let index = labels.iter().enumerate().map(|(c, l)| ((l.j, l.m, l.alpha, l.kind), c)).collect();
    let multiplets = labels
        .iter()
        .enumerate()
        .filter(|(_, l)| l.m == -l.j)
        .map(|(c, l)| Multiplet { j: l.j, kind: l.kind, alpha: l.alpha, first_column: c })
        .collect();
    Ok(SpinBasis { n, labels, multiplets, u, index })
}

/// Shared, lazily built basis for `n` qubits.
pub fn spin_basis(n: usize) -> Result<Arc<SpinBasis>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SpinBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("basis cache poisoned").get(&n) {
        return Ok(Arc::clone(b));
    }
    let built = Arc::new(build_spin_basis(n)?);
    let mut guard = cache.lock().expect("basis cache poisoned");
    Ok(Arc::clone(guard.entry(n).or_insert(built)))
}

#[derive(Clone, Debug)]
pub struct RhoEigenvector {
    pub sign: Sign,
    /// Spin of the `A` multiplet the vector is built from.
    pub j: HalfInt,
    /// Total `z` projection on `A ⊗ C`.
    pub m: HalfInt,
    pub alpha: usize,
    pub kind: SpinKind,
    pub eigenvalue: f64,
    /// Length `2^(n+1)`, with `C` as the last qubit.
    pub vector: DVector<f64>,
}

/// All eigenvectors of `rho` on `A ⊗ C`, coupling each `A` multiplet with the extra qubit.
pub fn build_rho_eigenvectors(n: usize) -> Result<Vec<RhoEigenvector>> {
    let basis = spin_basis(n)?;
    let dim = 1usize << (n + 1);
    let half = HalfInt::HALF;
    let mut out = Vec::with_capacity(dim);
    for mult in basis.multiplets() {
        let j = mult.j;
        for (sign, s, up, down) in [
            (Sign::Minus, j + half, Branch::PlusMinus, Branch::PlusPlus),
            (Sign::Plus, j - half, Branch::MinusMinus, Branch::MinusPlus),
        ] {
            if s.twice() < 0 {
                continue;
            }
            let eigenvalue = rho_eigenvalue(sign, j, n)?;
            for m in s.projections() {
                let mut v = DVector::zeros(dim);
                for (bit, am, branch) in [(0usize, m + half, up), (1usize, m - half, down)] {
                    let c = clebsch_gordan(branch, j, am).unwrap_or(0.0);
                    if c == 0.0 {
                        continue;
                    }
                    let col = basis.u().column(mult.first_column + ((am + j).twice() / 2) as usize);
                    for (idx, &x) in col.iter().enumerate() {
                        v[2 * idx + bit] += c * x;
                    }
                }
                out.push(RhoEigenvector { sign, j, m, alpha: mult.alpha, kind: mult.kind, eigenvalue, vector: v });
            }
        }
    }
    Ok(out)
}
