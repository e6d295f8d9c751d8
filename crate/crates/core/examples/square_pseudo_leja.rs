//! Pseudo-Leja points on the square [-1, 1]^2: each degree block is picked
//! greedily from a degree-adapted product mesh, and the resulting sequence
//! is checked against its growth factors on a finer validation mesh.
//!
//! Run with `cargo run --release --example square_pseudo_leja`.

use pleja::diagnostics::diameter_trace;
use pleja::leja::{edrei_check, pseudo_leja, verify_pseudo_leja};
use pleja::CompactSet;

fn main() -> pleja::Result<()> {
    let square: CompactSet = "square:-1,1".parse()?;
    let d_max = 8;
    let seq = pseudo_leja(|d| square.mesh(d, 2.0), d_max)?;
    println!("{} points up to degree {d_max}", seq.len());
    for (k, pt) in seq.points.iter().take(10).enumerate() {
        println!("  {k:>2}: ({:+.4}, {:+.4})", pt.coords()[0].re, pt.coords()[1].re);
    }

    let validation = square.validation_mesh(d_max, 2.0, 4.0)?;
    let empirical = verify_pseudo_leja(&seq, &validation)?;
    let worst = empirical
        .iter()
        .zip(&seq.growth)
        .map(|(e, m)| e / m)
        .fold(0.0, f64::max);
    println!("validation mesh of {} points: max E_j / M_j = {worst:.4}", validation.len());

    let edrei = edrei_check(&seq.growth, 2);
    println!("product of growth factors ^ (1/l_d) at the last degree: {:.4}", edrei.aggregate.last().unwrap().1);
    println!("diameter estimate at degree {d_max}: {:.4}", diameter_trace(&seq).last().unwrap().estimate);
    Ok(())
}
