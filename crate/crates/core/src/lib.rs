//! Leja and pseudo-Leja sequences for multivariate polynomial interpolation.
//!
//! The crate extracts discrete Leja points from admissible meshes by
//! row-pivoted elimination of rectangular Vandermonde matrices, assembles
//! pseudo-Leja sequences from degree-indexed mesh families, intertwines
//! sequences on two sets into a sequence on their product, and reads
//! potential-theoretic quantities off the result: transfinite diameter,
//! Green function values and equilibrium-measure histograms.
//!
//! Monomials are ordered by graded lexicographic order (see [`monomials`]).
//! All determinant magnitudes are kept as natural logarithms.
//!
//! Runnable examples live in `examples/`:
//!
//! * `monomial_order`: graded-lex enumeration, ranks and index splitting
//! * `newton_interpolation`: Vandermonde determinants, Newton residuals and
//!   Lagrange interpolation
//! * `meshes`: built-in meshes, products and file round trips
//! * `circle_leja`: discrete Leja points on the unit circle
//! * `square_pseudo_leja`: pseudo-Leja sequence on a square with verification
//! * `intertwining`: product sequences and the determinant factorisation
//! * `transfinite_diameter`: diameter and Chebyshev-product estimates
//! * `green_function`: Green function estimates outside a compact set
//! * `equilibrium_histogram`: counting measures against the equilibrium law

pub mod basis;
pub mod cli;
pub mod diagnostics;
mod elimination;
pub mod error;
pub mod intertwine;
pub mod leja;
pub mod meshes;
pub mod monomials;
pub mod point;
mod scalar;
pub mod sets;
pub mod vandermonde;

pub use basis::{Basis, BasisKind};
pub use diagnostics::{
    chebyshev_product_trace, counting_measure, diameter_trace, green_estimate, green_trace, AxisBins, DiameterTrace,
    Histogram, HistogramSpec, Projection,
};
pub use error::{Error, Result};
pub use intertwine::{check_equivalence, check_factorization, intertwine, EquivalenceOptions, IntertwinedSequence};
pub use leja::{
    discrete_leja, discrete_leja_with, edrei_check, pseudo_leja, pseudo_leja_with, verify_pseudo_leja, GrowthKind,
    LejaOptions, LejaSequence, SeedRule,
};
pub use meshes::{circle_mesh, interval_mesh, product_mesh, Mesh};
pub use monomials::{dim_space, kappa, kappa_rank, split_index, vdm_degree, MultiIndex};
pub use num_complex::Complex64;
pub use point::Point;
pub use sets::CompactSet;
pub use vandermonde::{lagrange_interpolate, vdm_log_abs, LagrangeInterpolant, NewtonState, VdmValue};
