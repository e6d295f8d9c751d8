//! Transfinite diameter estimates from Leja sequences. The interval
//! [-1, 1] has capacity 1/2, and the square has the same estimate whether
//! its sequence comes from a product mesh or from intertwining.
//!
//! Run with `cargo run --release --example transfinite_diameter`.

use pleja::diagnostics::diameter_trace;
use pleja::intertwine::intertwine;
use pleja::leja::{discrete_leja, pseudo_leja};
use pleja::meshes::{interval_mesh, product_mesh};
use pleja::CompactSet;

fn main() -> pleja::Result<()> {
    let line = interval_mesh(-1.0, 1.0, 63, 2.0)?;
    let seq = discrete_leja(&line, 64)?;
    println!("interval [-1, 1]:");
    for e in diameter_trace(&seq).per_degree.iter().filter(|e| e.d % 8 == 0 || e.d == 63) {
        println!("  d = {:>2}: {:.5}", e.d, e.estimate);
    }

    let interval: CompactSet = "interval:-1,1".parse()?;
    let a = pseudo_leja(|d| interval.mesh(d, 2.0), 8)?;
    let woven = intertwine(&a, &a, 45)?;
    let grid = interval_mesh(-1.0, 1.0, 8, 2.0)?;
    let direct = discrete_leja(&product_mesh(&grid, &grid)?, 45)?;
    println!("square [-1, 1]^2, degree 8:");
    println!("  intertwined         {:.5}", diameter_trace(&woven.combined).last().unwrap().estimate);
    println!("  product-mesh Leja   {:.5}", diameter_trace(&direct).last().unwrap().estimate);
    Ok(())
}
