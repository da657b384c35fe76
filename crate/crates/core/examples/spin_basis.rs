//! Labels of the spin basis and the spectrum of the port-averaged operator.

use pbt_core::spin_basis::{build_rho_eigenvectors, spin_basis, SpinKind};

fn main() -> pbt_core::Result<()> {
    let n = 4;
    let basis = spin_basis(n)?;
    println!("N = {n}: {} basis vectors in {} multiplets", basis.labels().len(), basis.multiplets().len());
    for m in basis.multiplets() {
        let kind = match m.kind {
            SpinKind::TypeI => "I",
            SpinKind::TypeII => "II",
            SpinKind::Unsplit => "-",
        };
        println!("  j = {:<4} type {kind:<2} alpha {}", m.j, m.alpha);
    }
    let mut eig: Vec<f64> = build_rho_eigenvectors(n)?.iter().map(|e| e.eigenvalue).collect();
    eig.sort_by(f64::total_cmp);
    eig.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    println!("distinct eigenvalues: {eig:.4?}");
    Ok(())
}
