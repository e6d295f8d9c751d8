//! Admissible meshes: Chebyshev-Lobatto points on an interval, roots of
//! unity on a circle, and their products, with the growth bounds they
//! certify and a JSON round trip.
//!
//! Run with `cargo run --example meshes`.

use pleja::meshes::{circle_mesh, interval_mesh, mesh_from_json, mesh_to_json, product_mesh};
use pleja::{CompactSet, Complex64};

fn describe(m: &pleja::Mesh) {
    println!(
        "{:>6} points  degree {:>3}  growth bound {:<6}  {}",
        m.len(),
        m.valid_degree(),
        m.growth_bound().map_or("none".into(), |b| format!("{b:.4}")),
        m.label()
    );
}

fn main() -> pleja::Result<()> {
    let line = interval_mesh(-1.0, 1.0, 8, 2.0)?;
    let circle = circle_mesh(Complex64::new(0.0, 0.0), 1.0, 64)?;
    describe(&line);
    describe(&circle);
    describe(&product_mesh(&line, &line)?);
    describe(&product_mesh(&circle, &line)?);

    // the same families through set specs
    for spec in ["interval:0,2", "circle:1,0,0.5", "square:-1,1", "product:circle:0,0,1×interval:-1,1"] {
        let set: CompactSet = spec.parse()?;
        describe(&set.mesh(6, 2.0)?);
    }

    let text = mesh_to_json(&line)?;
    let back = mesh_from_json(&text)?;
    println!("\nJSON round trip keeps {} points and degree {}", back.len(), back.valid_degree());
    Ok(())
}
