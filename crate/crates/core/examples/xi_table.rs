//! Depolarising probability of N-port PBT with singlet resources.

use pbt_core::analysis::models::xi;
use pbt_core::format::sig;

fn main() -> pbt_core::Result<()> {
    println!("{:>3}  {:>16}  {:>10}", "N", "xi_N", "N*xi_N");
    for n in 2..=20 {
        let x = xi(n)?;
        println!("{n:>3}  {:>16}  {:>10.4}", sig(x), n as f64 * x);
    }
    Ok(())
}
