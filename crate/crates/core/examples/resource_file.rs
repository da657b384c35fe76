//! Writing a resource to disk and simulating it from the file.

use pbt_core::pbt_choi::pbt_choi;
use pbt_core::resource::port_state;
use pbt_core::resource::{make_family, FullResource, ResourceFamily};
use pbt_core::resource_file::{read_resource, write_full, write_reduced};

fn main() -> pbt_core::Result<()> {
    let dir = std::env::temp_dir();
    let n = 3;

    let reduced = make_family(&ResourceFamily::AdChoi(0.25), n)?;
    let reduced_path = dir.join("pbt_reduced_example.txt");
    write_reduced(&reduced_path, &reduced)?;

    let full = FullResource::product(&port_state(&ResourceFamily::AdChoi(0.25))?, n)?;
    let full_path = dir.join("pbt_full_example.txt");
    write_full(&full_path, &full)?;

    let a = pbt_choi(&read_resource(&reduced_path)?)?;
    let b = pbt_choi(&read_resource(&full_path)?)?;
    println!("reduced file: {}", reduced_path.display());
    println!("full file:    {}", full_path.display());
    println!("deviation between the two routes: {:.1e}", a.max_abs_diff(&b));
    print!("{a}");
    Ok(())
}
