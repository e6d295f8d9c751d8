//! Counting measures of Leja points approach the equilibrium measure: the
//! uniform measure on the circle and the arcsine law on the interval.
//!
//! Run with `cargo run --release --example equilibrium_histogram`.

use std::f64::consts::PI;

use pleja::diagnostics::{counting_measure, AxisBins, HistogramSpec, Projection};
use pleja::leja::discrete_leja;
use pleja::meshes::{circle_mesh, interval_mesh};
use pleja::Complex64;

fn main() -> pleja::Result<()> {
    let circle = discrete_leja(&circle_mesh(Complex64::new(0.0, 0.0), 1.0, 2048)?, 100)?;
    let spec = HistogramSpec {
        axes: vec![AxisBins::angle(0, Complex64::new(0.0, 0.0), 8)],
    };
    let h = counting_measure(&circle, 99, &spec)?;
    println!("circle, 100 points, angular bins (uniform = 0.125):");
    for (i, m) in h.masses.iter().enumerate() {
        println!("  bin {i}: {m:.3}");
    }

    let line = discrete_leja(&interval_mesh(-1.0, 1.0, 127, 2.0)?, 128)?;
    let spec = HistogramSpec {
        axes: vec![AxisBins::new(Projection::Real(0), -1.0, 1.0, 10)],
    };
    let h = counting_measure(&line, 127, &spec)?;
    println!("interval, 128 points, against the arcsine law:");
    for (i, m) in h.masses.iter().enumerate() {
        let (a, b) = spec.axes[0].edges(i);
        let law = (b.asin() - a.asin()) / PI;
        println!("  [{a:+.1}, {b:+.1}]: {m:.3}  arcsine {law:.3}");
    }
    Ok(())
}
