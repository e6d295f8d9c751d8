//! Graded polynomial bases used as Vandermonde columns.
//!
//! Column `j` of a basis is `c_j · e_j + (terms of lower graded-lex rank)`.
//! Such a triangular change of basis multiplies every Vandermonde determinant
//! by the constant `∏ c_j`, so greedy argmax selections are unaffected and
//! monomial-normalised values are recovered by dividing by the leading
//! coefficients. Per-axis Chebyshev or shifted-and-scaled power polynomials
//! keep the elimination well conditioned at high degree, where raw monomials
//! on an interval lose all significant digits.

use std::borrow::Cow;

use num_complex::Complex64;

use crate::monomials::{kappa_prefix, MultiIndex};
use crate::point::Point;
use crate::scalar::Scalar;

/// One-variable polynomial family attached to a coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AxisMap {
    /// `((z - center) / scale)^a`
    Power { center: Complex64, scale: f64 },
    /// `T_a((z - center) / half_width)` with `T_a` the Chebyshev polynomial.
    Chebyshev { center: f64, half_width: f64 },
}

impl AxisMap {
    pub const IDENTITY: AxisMap = AxisMap::Power {
        center: Complex64::new(0.0, 0.0),
        scale: 1.0,
    };

    /// Picks a family for the given coordinate values: Chebyshev on the real
    /// hull when the values are real, otherwise powers centred on the
    /// bounding-box midpoint.
    pub fn fit<I: IntoIterator<Item = Complex64>>(values: I) -> AxisMap {
        let mut re = (f64::INFINITY, f64::NEG_INFINITY);
        let mut im = (f64::INFINITY, f64::NEG_INFINITY);
        let mut any = false;
        let mut all_vals = Vec::new();
        for z in values {
            any = true;
            re = (re.0.min(z.re), re.1.max(z.re));
            im = (im.0.min(z.im), im.1.max(z.im));
            all_vals.push(z);
        }
        if !any {
            return AxisMap::IDENTITY;
        }
        let half_width = 0.5 * (re.1 - re.0);
        if im.0 == 0.0 && im.1 == 0.0 && half_width > 0.0 {
            return AxisMap::Chebyshev {
                center: 0.5 * (re.1 + re.0),
                half_width,
            };
        }
        let center = Complex64::new(0.5 * (re.0 + re.1), 0.5 * (im.0 + im.1));
        let scale = all_vals
            .iter()
            .map(|z| (z - center).norm())
            .fold(0.0, f64::max);
        AxisMap::Power {
            center,
            scale: if scale > 0.0 { scale } else { 1.0 },
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            AxisMap::Power { center, .. } => center.im == 0.0,
            AxisMap::Chebyshev { .. } => true,
        }
    }

    /// `log |leading coefficient|` of the degree-`a` member.
    pub fn log_lead(&self, a: u32) -> f64 {
        if a == 0 {
            return 0.0;
        }
        match *self {
            AxisMap::Power { scale, .. } => -(a as f64) * scale.ln(),
            AxisMap::Chebyshev { half_width, .. } => {
                (a as f64 - 1.0) * std::f64::consts::LN_2 - (a as f64) * half_width.ln()
            }
        }
    }

    /// Values of the members of degree `0..=max_degree` at `z`.
    pub(crate) fn values<S: Scalar>(&self, z: Complex64, max_degree: usize, out: &mut Vec<S>) {
        out.clear();
        out.push(S::ONE);
        if max_degree == 0 {
            return;
        }
        match *self {
            AxisMap::Power { center, scale } => {
                let w = S::from_c64((z - center) / scale);
                let mut acc = S::ONE;
                for _ in 0..max_degree {
                    acc = acc * w;
                    out.push(acc);
                }
            }
            AxisMap::Chebyshev { center, half_width } => {
                let w = S::from_c64((z - center) / half_width);
                let two_w = w + w;
                let mut prev = S::ONE;
                let mut cur = w;
                out.push(cur);
                for _ in 1..max_degree {
                    let next = two_w * cur - prev;
                    prev = cur;
                    cur = next;
                    out.push(cur);
                }
            }
        }
    }
}

/// How the basis of a computation is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BasisKind {
    /// Raw monomials `z^{κ(j)}`.
    Monomial,
    /// Monomials, each column divided by its sup over the fitting points.
    ColumnScaled,
    /// Per-axis Chebyshev or shifted power families fitted to the points.
    #[default]
    Adapted,
}

/// The first `n_cols` members of a graded basis in `p` variables.
#[derive(Clone, Debug)]
pub struct Basis {
    axes: Vec<AxisMap>,
    table: Cow<'static, [MultiIndex]>,
    max_degree: usize,
    column_scale: Vec<f64>,
    log_lead: Vec<f64>,
}

impl Basis {
    pub fn new(axes: Vec<AxisMap>, n_cols: usize) -> Self {
        Self::with_column_scale(axes, n_cols, None)
    }

    pub fn monomial(p: usize, n_cols: usize) -> Self {
        Self::new(vec![AxisMap::IDENTITY; p], n_cols)
    }

    fn with_column_scale(axes: Vec<AxisMap>, n_cols: usize, scale: Option<Vec<f64>>) -> Self {
        assert!(!axes.is_empty(), "basis needs p >= 1 axes");
        let p = axes.len();
        let table = kappa_prefix(p, n_cols);
        let max_degree = table.last().map_or(0, |a| a.degree() as usize);
        let column_scale = scale.unwrap_or_else(|| vec![1.0; n_cols]);
        let log_lead = table
            .iter()
            .zip(&column_scale)
            .map(|(alpha, s)| {
                alpha
                    .exponents()
                    .iter()
                    .zip(&axes)
                    .map(|(&a, ax)| ax.log_lead(a))
                    .sum::<f64>()
                    + s.ln()
            })
            .collect();
        Basis {
            axes,
            table,
            max_degree,
            column_scale,
            log_lead,
        }
    }

    /// Builds a basis of the requested kind fitted to `points`.
    pub fn build(kind: BasisKind, p: usize, n_cols: usize, points: &[Point]) -> Self {
        match kind {
            BasisKind::Monomial => Self::monomial(p, n_cols),
            BasisKind::Adapted => {
                let axes = (0..p)
                    .map(|i| AxisMap::fit(points.iter().map(|pt| pt.coords()[i])))
                    .collect();
                Self::new(axes, n_cols)
            }
            BasisKind::ColumnScaled => {
                let plain = Self::monomial(p, n_cols);
                let mut sup = vec![0.0f64; n_cols];
                let mut row = vec![Complex64::new(0.0, 0.0); n_cols];
                let mut scratch = Vec::new();
                for pt in points {
                    plain.eval_into(pt, &mut row, &mut scratch);
                    for (s, v) in sup.iter_mut().zip(&row) {
                        *s = s.max(v.norm());
                    }
                }
                let scale = sup
                    .into_iter()
                    .map(|s| if s > 0.0 && s.is_finite() { 1.0 / s } else { 1.0 })
                    .collect();
                Self::with_column_scale(vec![AxisMap::IDENTITY; p], n_cols, Some(scale))
            }
        }
    }

    /// Same axis families with a different number of columns.
    pub fn resized(&self, n_cols: usize) -> Self {
        if self.column_scale.iter().all(|&s| s == 1.0) {
            Self::new(self.axes.clone(), n_cols)
        } else {
            assert!(n_cols <= self.n_cols(), "column-scaled basis cannot grow");
            Self::with_column_scale(self.axes.clone(), n_cols, Some(self.column_scale[..n_cols].to_vec()))
        }
    }

    pub fn dimension(&self) -> usize {
        self.axes.len()
    }

    pub fn n_cols(&self) -> usize {
        self.table.len()
    }

    pub fn axes(&self) -> &[AxisMap] {
        &self.axes
    }

    pub fn multi_indices(&self) -> &[MultiIndex] {
        &self.table
    }

    /// `log |c_j|` for column `j`.
    pub fn log_lead(&self, j: usize) -> f64 {
        self.log_lead[j]
    }

    /// `Σ_{j < n} log |c_j|`.
    pub fn log_lead_sum(&self, n: usize) -> f64 {
        self.log_lead[..n].iter().sum()
    }

    /// True when real points evaluate to real values.
    pub fn is_real(&self) -> bool {
        self.axes.iter().all(AxisMap::is_real)
    }

    /// Evaluates all columns at `z`. `scratch` holds per-axis values.
    pub(crate) fn eval_into<S: Scalar>(&self, z: &Point, out: &mut [S], scratch: &mut Vec<Vec<S>>) {
        debug_assert_eq!(z.dimension(), self.axes.len());
        scratch.resize_with(self.axes.len(), Vec::new);
        for ((ax, buf), c) in self.axes.iter().zip(scratch.iter_mut()).zip(z.coords()) {
            ax.values(*c, self.max_degree, buf);
        }
        for ((o, alpha), s) in out.iter_mut().zip(self.table.iter()).zip(&self.column_scale) {
            let mut v = S::from_f64(*s);
            for (buf, &a) in scratch.iter().zip(alpha.exponents()) {
                if a > 0 {
                    v = v * buf[a as usize];
                }
            }
            *o = v;
        }
    }

    /// Column values at `z` as complex numbers.
    pub fn eval(&self, z: &Point) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.n_cols()];
        self.eval_into(z, &mut out, &mut Vec::new());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_leading_coefficients() {
        let ax = AxisMap::Chebyshev {
            center: 0.0,
            half_width: 1.0,
        };
        // T_3 = 4x^3 - 3x
        assert!((ax.log_lead(3) - 4f64.ln()).abs() < 1e-15);
        let mut v: Vec<f64> = Vec::new();
        ax.values(Complex64::new(0.5, 0.0), 3, &mut v);
        assert!((v[3] - (4.0 * 0.125 - 1.5)).abs() < 1e-15);
    }

    #[test]
    fn fit_chooses_family() {
        let real = [-1.0, 0.0, 3.0].map(|x| Complex64::new(x, 0.0));
        assert_eq!(
            AxisMap::fit(real),
            AxisMap::Chebyshev {
                center: 1.0,
                half_width: 2.0
            }
        );
        let circle = (0..8).map(|k| Complex64::from_polar(2.0, k as f64 * std::f64::consts::FRAC_PI_4));
        match AxisMap::fit(circle) {
            AxisMap::Power { center, scale } => {
                assert!(center.norm() < 1e-12);
                assert!((scale - 2.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn monomial_basis_matches_powers() {
        let b = Basis::monomial(2, 6);
        let z = Point::new(vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 3.0)]);
        let v = b.eval(&z);
        assert_eq!(v[4], Complex64::new(0.0, 6.0));
        assert_eq!(v[5], Complex64::new(4.0, 0.0));
    }
}
