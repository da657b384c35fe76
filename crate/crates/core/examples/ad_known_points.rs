//! Known points of the amplitude-damping study and the minimum of the trace norm.

use pbt_core::analysis::ad_study::{ad_known_points, difference_spectrum, trace_min_location};
use pbt_core::analysis::models::xi;

fn main() -> pbt_core::Result<()> {
    let n = 4;
    println!("N = {n}, xi = {:.6}", xi(n)?);
    println!("{:>5} {:>9} {:>9} {:>9} {:>9} {:>9}", "p0", "D0", "p1_b", "D1", "argmin", "min");
    for p0 in [0.2, 0.36, 0.5, 0.7, 0.85, 0.95] {
        let k = ad_known_points(n, p0)?;
        let opt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.5}"));
        let argmin = trace_min_location(n, p0)?;
        let min = argmin.map(|p1| difference_spectrum(n, p0, p1).map(|s| s.trace_norm())).transpose()?;
        println!("{p0:>5} {:>9.5} {:>9} {:>9} {:>9} {:>9}", k.d0, opt(k.p1_b), opt(k.d1), opt(argmin), opt(min));
    }
    Ok(())
}
