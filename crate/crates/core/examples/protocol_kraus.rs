//! Kraus operators of the PBT map itself, acting on the reduced resource.

use pbt_core::kraus::protocol_kraus;
use pbt_core::pbt_choi::pbt_choi;
use pbt_core::resource::{make_family, ResourceFamily};

fn main() -> pbt_core::Result<()> {
    for n in 2..=6 {
        let pk = protocol_kraus(n)?;
        let res = make_family(&ResourceFamily::Alternate(0.7), n)?;
        let dev = pk.apply(&res)?.max_abs_diff(&pbt_choi(&res)?);
        println!(
            "N = {n}: {} kernel + {} bulk operators (unreduced {}), deviation {dev:.1e}",
            pk.kernel_count(),
            pk.bulk_count(),
            pk.unreduced_count()
        );
    }
    Ok(())
}
