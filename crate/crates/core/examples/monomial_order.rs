//! Graded-lexicographic enumeration of monomials, the dimension counts
//! `h_d` and `l_d`, and the index split used when intertwining.
//!
//! Run with `cargo run --example monomial_order`.

use pleja::monomials::{dim_space, kappa, kappa_rank, split_index, vdm_degree};

fn main() {
    let p = 2;
    println!("first monomials in {p} variables:");
    for n in 0..10 {
        let alpha = kappa(n, p);
        println!("  kappa({n}) = {:?}  degree {}  rank {}", alpha.exponents(), alpha.degree(), kappa_rank(&alpha));
    }

    println!("\n d   h_d(p=2)  l_d(p=2)   h_d(p=3)  l_d(p=3)");
    for d in 0..=6 {
        println!(
            "{d:>2} {:>9} {:>9} {:>10} {:>9}",
            dim_space(d, 2),
            vdm_degree(d, 2),
            dim_space(d, 3),
            vdm_degree(d, 3)
        );
    }

    println!("\nsplitting monomials of C^3 = C^1 x C^2:");
    for j in 0..10 {
        let s = split_index(j, 1, 2);
        println!(
            "  j={j}: {:?} -> phi1={} {:?}, phi2={} {:?}",
            kappa(j, 3).exponents(),
            s.phi1,
            kappa(s.phi1, 1).exponents(),
            s.phi2,
            kappa(s.phi2, 2).exponents()
        );
    }
}
