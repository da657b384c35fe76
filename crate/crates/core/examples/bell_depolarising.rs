//! Singlet resources turn PBT into a depolarising channel.

use pbt_core::analysis::models::{depolarising_choi, xi};
use pbt_core::pbt_choi::pbt_choi;
use pbt_core::resource::{make_family, ResourceFamily};

fn main() -> pbt_core::Result<()> {
    for n in [2, 3, 5, 8] {
        let choi = pbt_choi(&make_family(&ResourceFamily::Bell, n)?)?;
        let dev = choi.max_abs_diff(&depolarising_choi(xi(n)?)?);
        println!("N = {n}, deviation from C_dep(xi_N) = {dev:.1e}");
        print!("{choi}");
    }
    Ok(())
}
