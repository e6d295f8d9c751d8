//! Intertwining a circle sequence with an interval sequence into a
//! sequence for the cylinder, then checking that the combined Vandermonde
//! steps factor into the steps of the two inputs.
//!
//! Run with `cargo run --release --example intertwining`.

use pleja::intertwine::{check_equivalence, check_factorization, intertwine, required_lengths, EquivalenceOptions};
use pleja::leja::pseudo_leja;
use pleja::{CompactSet, Point};

fn main() -> pleja::Result<()> {
    let circle: CompactSet = "circle:0,0,1".parse()?;
    let interval: CompactSet = "interval:-1,1".parse()?;
    let a = pseudo_leja(|d| circle.mesh(d, 2.0), 8)?;
    let b = pseudo_leja(|d| interval.mesh(d, 2.0), 8)?;

    let n = 45;
    let (need_a, need_b) = required_lengths(n, 1, 1);
    println!("{n} points need {need_a} and {need_b} points of the factors");
    let woven = intertwine(&a, &b, n)?;
    for j in 0..8 {
        let s = woven.split(j);
        println!("  j={j}: uses a[{}] and b[{}]", s.phi1, s.phi2);
    }

    let z = Point::real(&[0.4, -0.2]);
    for j in [1, 10, 44] {
        let chk = check_factorization(&woven, j, &z)?;
        println!("step {j}: relative factorization residual {:.2e}", chk.relative_residual());
    }

    let report = check_equivalence(&circle, &interval, 5, EquivalenceOptions::default())?;
    println!(
        "equivalence up to degree 5: forward {}, converse {}, max residual {:.2e}",
        report.forward_ok, report.converse_left_ok, report.max_factorization_residual
    );
    Ok(())
}
