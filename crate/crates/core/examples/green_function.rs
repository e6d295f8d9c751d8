//! Estimating the Green function with pole at infinity from normalised
//! Newton polynomials of a Leja sequence, for the disk and the interval.
//!
//! Run with `cargo run --release --example green_function`.

use pleja::diagnostics::green_trace;
use pleja::leja::discrete_leja;
use pleja::meshes::{circle_mesh, interval_mesh};
use pleja::{Complex64, Point};

fn main() -> pleja::Result<()> {
    let z = Point::real(&[2.0]);

    let circle = circle_mesh(Complex64::new(0.0, 0.0), 1.0, 2048)?;
    let disk_seq = discrete_leja(&circle, 128)?;
    let disk = green_trace(&disk_seq, &circle, &z, 128)?;
    println!("disk:     g(2) ~ {:.5}, exact ln 2 = {:.5}", disk.last().unwrap().running_max, 2f64.ln());

    let line = interval_mesh(-1.0, 1.0, 127, 2.0)?;
    let int_seq = discrete_leja(&line, 128)?;
    let sup = interval_mesh(-1.0, 1.0, 64, 1.0)?;
    let int = green_trace(&int_seq, &sup, &z, 128)?;
    for g in int.iter().filter(|g| g.n.is_power_of_two()) {
        println!("interval: n = {:>3}: {:.5}", g.n, g.running_max);
    }
    println!("interval: exact ln(2 + sqrt 3) = {:.5}", (2.0 + 3f64.sqrt()).ln());
    Ok(())
}
