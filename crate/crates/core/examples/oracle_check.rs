//! The spin-basis pipeline against the dense square-root measurement.

use pbt_core::experiments::verify_suite;

fn main() -> pbt_core::Result<()> {
    let lines = verify_suite(4, 3, 1)?;
    for l in &lines {
        println!("{l}");
    }
    let worst = lines.iter().map(|l| l.worst()).fold(0.0, f64::max);
    println!("max deviation {worst:.1e}");
    Ok(())
}
