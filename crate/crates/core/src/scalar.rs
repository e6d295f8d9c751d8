use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

/// Field element used by the elimination kernels. Real meshes with a real
/// basis run on `f64`, everything else on `Complex64`.
pub(crate) trait Scalar:
    Copy
    + Send
    + Sync
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + 'static
{
    const ZERO: Self;
    const ONE: Self;
    fn modulus(self) -> f64;
    fn from_c64(z: Complex64) -> Self;
    fn from_f64(x: f64) -> Self;
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;

    #[inline]
    fn modulus(self) -> f64 {
        self.abs()
    }

    #[inline]
    fn from_c64(z: Complex64) -> Self {
        debug_assert!(z.im == 0.0, "real kernel fed a complex value");
        z.re
    }


    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
}

impl Scalar for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    const ONE: Self = Complex64::new(1.0, 0.0);

    #[inline]
    fn modulus(self) -> f64 {
        self.norm()
    }

    #[inline]
    fn from_c64(z: Complex64) -> Self {
        z
    }


    #[inline]
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
}
