//! Trace norm, diamond-norm bounds and the numerical diamond norm along a sweep.

use pbt_core::analysis::distance::DiamondOptions;
use pbt_core::analysis::models::xi;
use pbt_core::experiments::{ad_sweep, Grid, SweepFamily};

fn main() -> pbt_core::Result<()> {
    let (n, p0) = (4, 0.36);
    let x = xi(n)?;
    println!("N = {n}, p0 = {p0}, known points at p1 = {p0} and {:.4}", (p0 - x) / (1.0 - x));
    let rows = ad_sweep(n, p0, SweepFamily::Choi, &Grid::new(0.0, 0.5, 0.05)?, &DiamondOptions::default())?;
    println!("{:>5} {:>9} {:>9} {:>9}", "p1", "trace", "numeric", "upper");
    for r in rows {
        println!("{:>5.2} {:>9.5} {:>9.5} {:>9.5}", r.param, r.trace_norm, r.diamond_numeric, r.diamond_upper);
    }
    Ok(())
}
