//! Discrete Leja points on the unit circle. Starting from 1 the greedy
//! choice walks through the roots of unity in bit-reversed order, and the
//! transfinite diameter estimate approaches the capacity 1.
//!
//! Run with `cargo run --release --example circle_leja`.

use pleja::diagnostics::diameter_trace;
use pleja::leja::discrete_leja;
use pleja::meshes::circle_mesh;
use pleja::Complex64;

fn main() -> pleja::Result<()> {
    let mesh = circle_mesh(Complex64::new(0.0, 0.0), 1.0, 1024)?;
    let seq = discrete_leja(&mesh, 64)?;
    println!("first 16 points as multiples of 2 pi / 64:");
    let steps: Vec<String> = seq.mesh_indices.as_ref().unwrap()[..16]
        .iter()
        .map(|i| (i / 16).to_string())
        .collect();
    println!("  {}", steps.join(" "));

    let trace = diameter_trace(&seq);
    for e in trace.per_degree.iter().filter(|e| e.d.is_power_of_two()) {
        println!("d = {:>2}: |VDM|^(1/l_d) = {:.6}", e.d, e.estimate);
    }
    Ok(())
}
