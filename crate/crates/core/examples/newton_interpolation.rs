//! Incremental Vandermonde determinants, Newton residuals and Lagrange
//! interpolation through a handful of points in the plane.
//!
//! Run with `cargo run --example newton_interpolation`.

use pleja::vandermonde::{dense, LagrangeInterpolant, NewtonState};
use pleja::{Basis, Complex64, Point};

fn main() -> pleja::Result<()> {
    let nodes: Vec<Point> = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (0.5, -0.5), (-0.5, 0.5)]
        .iter()
        .map(|&(x, y)| Point::real(&[x, y]))
        .collect();

    // add the points one at a time and watch |VDM| grow by |P_k(xi_k)|; a
    // point on which the next Newton polynomial vanishes is rejected and the
    // state is left unchanged
    let mut state = NewtonState::new(Basis::monomial(2, nodes.len()));
    let mut accepted: Vec<Point> = Vec::new();
    for (k, z) in nodes.iter().enumerate() {
        let xy: Vec<f64> = z.coords().iter().map(|c| c.re).collect();
        match state.extend(z) {
            Ok(pivot) => {
                accepted.push(z.clone());
                println!(
                    "point {k} {xy:?}: |P(xi)| = {:.4}, log|VDM| = {:.6} (dense {:.6})",
                    pivot.norm(),
                    state.log_vdm(),
                    dense::vdm_log_abs(&accepted)?
                );
            }
            Err(e) => println!("point {k} {xy:?}: rejected ({e:?})"),
        }
    }

    // the Newton polynomials at an outside point
    let z = Point::real(&[0.3, 0.7]);
    let newton: Vec<String> = state.newton_values(&z).iter().map(|v| format!("{:+.4}", v.re)).collect();
    println!("\nP_s(0.3, 0.7) = [{}]", newton.join(", "));

    // interpolate f(x, y) = 1 + 2x - y + x y - x^2 + 3 y^2, which lies in P_2
    let f = |p: &Point| {
        let (x, y) = (p.coords()[0], p.coords()[1]);
        Complex64::new(1.0, 0.0) + 2.0 * x - y + x * y - x * x + 3.0 * y * y
    };
    let values: Vec<Complex64> = nodes.iter().map(f).collect();
    let interp = LagrangeInterpolant::new(&nodes, &values)?;
    for q in [Point::real(&[0.3, 0.7]), Point::real(&[-2.0, 1.5])] {
        println!("L f at {:?} = {:.12}, f = {:.12}", q.coords(), interp.eval(&q).re, f(&q).re);
    }
    Ok(())
}
