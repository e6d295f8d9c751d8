use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of `C^p`.
#[derive(Clone, PartialEq)]
pub struct Point {
    coords: Vec<Complex64>,
}

impl Point {
    pub fn new(coords: Vec<Complex64>) -> Self {
        assert!(!coords.is_empty(), "a point needs p >= 1 coordinates");
        Point { coords }
    }

    /// Builds a point and rejects NaN or infinite coordinates.
    pub fn try_new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter("a point needs p >= 1 coordinates".into()));
        }
        if coords.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite { index: 0 });
        }
        Ok(Point { coords })
    }

    pub fn real(xs: &[f64]) -> Self {
        Self::new(xs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn scalar(z: Complex64) -> Self {
        Self::new(vec![z])
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn is_real(&self) -> bool {
        self.coords.iter().all(|c| c.im == 0.0)
    }

    /// Euclidean norm in `R^{2p}`.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn concat(&self, other: &Point) -> Point {
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        Point { coords }
    }

    pub fn split_at(&self, p1: usize) -> (Point, Point) {
        let (a, b) = self.coords.split_at(p1);
        (Point::new(a.to_vec()), Point::new(b.to_vec()))
    }

    pub fn distance(&self, other: &Point) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Point::scalar(z)
    }
}

impl From<f64> for Point {
    fn from(x: f64) -> Self {
        Point::real(&[x])
    }
}

/// Checks that all points share the dimension of the first one.
pub(crate) fn common_dimension(points: &[Point]) -> Result<usize> {
    let p = points
        .first()
        .map(Point::dimension)
        .ok_or_else(|| Error::InvalidParameter("empty point list".into()))?;
    for pt in points {
        if pt.dimension() != p {
            return Err(Error::DimensionMismatch {
                expected: p,
                found: pt.dimension(),
            });
        }
    }
    Ok(p)
}
