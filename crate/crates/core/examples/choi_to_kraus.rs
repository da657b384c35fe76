//! Kraus operators of the channel simulated with amplitude-damping resources.

use pbt_core::format;
use pbt_core::kraus::{choi_to_kraus, kraus_to_choi};
use pbt_core::pbt_choi::pbt_choi;
use pbt_core::resource::{make_family, ResourceFamily};

fn main() -> pbt_core::Result<()> {
    let choi = pbt_choi(&make_family(&ResourceFamily::AdChoi(0.3), 4)?)?;
    let kraus = choi_to_kraus(&choi)?;
    for (i, k) in kraus.ops().iter().enumerate() {
        println!("K{i}");
        print!("{}", format::matrix(k));
    }
    println!("round trip deviation {:.1e}", kraus_to_choi(&kraus)?.max_abs_diff(&choi));
    Ok(())
}
