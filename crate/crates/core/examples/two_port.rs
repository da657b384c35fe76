//! Two ports: the general pipeline against the two-port closed form.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pbt_core::pbt_choi::{pbt_choi, two_port_choi};
use pbt_core::resource::random_symmetric_resource;

fn main() -> pbt_core::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..3 {
        let res = random_symmetric_resource(2, &mut rng)?;
        let general = pbt_choi(&res)?;
        let closed = two_port_choi(&res)?;
        println!("random resource {k}: deviation {:.1e}", general.max_abs_diff(&closed));
        print!("{general}");
    }
    Ok(())
}
