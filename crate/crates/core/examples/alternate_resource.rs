//! The alternate resource: output entries, known points and derivatives.

use pbt_core::analysis::ad_study::ad_known_points;
use pbt_core::analysis::alternate::{alternate_derivatives, alternate_known_point, alternate_xyz};

fn main() -> pbt_core::Result<()> {
    let n = 4;
    for a in [0.5, 0.6, 0.8, 1.0] {
        let v = alternate_xyz(n, a)?;
        println!("a = {a}: x = {:.6} y = {:.6} z = {:.6} p0 = {:.6}", v.x, v.y, v.z, v.p0());
    }
    for p0 in [0.36, 0.5, 0.7] {
        let choi = ad_known_points(n, p0)?;
        if let Some(k) = alternate_known_point(n, p0)? {
            println!("p0 = {p0}: a_known = {:.6}, D2 = {:.5} (choi resource D0 = {:.5})", k.a_known, k.d2, choi.d0);
        }
    }
    let d = alternate_derivatives(n, 0.6)?;
    println!("at a = 0.6: dy/da = {:.6}, dz/da = {:.6}, dp0/da = {:.6}", d.dy_da, d.dz_da, d.dp0_da);
    Ok(())
}
