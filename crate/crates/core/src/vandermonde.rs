//! Vandermonde determinants, Newton residual polynomials and Lagrange
//! interpolation.
//!
//! Determinants are tracked as `log |VDM|`. The fast path never forms a
//! determinant: `|VDM(ξ_0, …, ξ_{q})|` is the product of the elimination
//! pivots `|P_k(ξ_k)|`, where
//!
//! ```text
//! P_k(z) = VDM(ξ_0, …, ξ_{k-1}, z) / VDM(ξ_0, …, ξ_{k-1}) = e_k(z) - (L_{ξ_0..ξ_{k-1}} e_k)(z).
//! ```
//!
//! The [`dense`] module evaluates the same quantities through explicit
//! determinants and is only meant for cross-checks on small inputs.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::basis::{Basis, BasisKind};
use crate::elimination::{eliminate_row, Elimination, Factors, Tolerances};
use crate::error::{Error, Result};
use crate::monomials::kappa;
use crate::point::{common_dimension, Point};
use crate::scalar::Scalar;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `z^{κ(n)}`.
pub fn eval_monomial(n: usize, z: &Point) -> Complex64 {
    let alpha = kappa(n, z.dimension());
    z.coords()
        .iter()
        .zip(alpha.exponents())
        .fold(Complex64::new(1.0, 0.0), |acc, (c, &a)| acc * c.powu(a))
}

/// The `M × n_cols` matrix `[e_j(ξ_i)]` with columns in graded-lex order.
pub fn vdm_matrix(points: &[Point], n_cols: usize) -> Result<DMatrix<Complex64>> {
    let p = common_dimension(points)?;
    if n_cols == 0 {
        return Err(Error::InvalidParameter("n_cols must be >= 1".into()));
    }
    let basis = Basis::monomial(p, n_cols);
    let mut m = DMatrix::from_element(points.len(), n_cols, ZERO);
    for (i, pt) in points.iter().enumerate() {
        for (j, v) in basis.eval(pt).into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    Ok(m)
}

/// `log |VDM|` of a point configuration; `-∞` encodes a vanishing
/// determinant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VdmValue {
    pub log_abs: f64,
}

impl VdmValue {
    pub const ZERO: VdmValue = VdmValue {
        log_abs: f64::NEG_INFINITY,
    };

    pub fn from_log(log_abs: f64) -> Self {
        VdmValue { log_abs }
    }

    pub fn is_zero(&self) -> bool {
        self.log_abs == f64::NEG_INFINITY
    }

    /// `|VDM|`; overflows to infinity for large configurations.
    pub fn abs(&self) -> f64 {
        self.log_abs.exp()
    }
}

fn all_real(points: &[&Point]) -> bool {
    points.iter().all(|p| p.is_real())
}

fn build_rows<S: Scalar>(basis: &Basis, points: &[&Point]) -> Vec<S> {
    let n = basis.n_cols();
    let mut data = vec![S::ZERO; points.len() * n];
    let fill = |(row, pt): (&mut [S], &&Point)| {
        let mut scratch = Vec::new();
        basis.eval_into(pt, row, &mut scratch);
    };
    if points.len() >= 2048 {
        data.par_chunks_mut(n).zip(points.par_iter()).for_each(fill);
    } else {
        data.chunks_mut(n).zip(points.iter()).for_each(fill);
    }
    data
}

fn to_complex(f: Factors<f64>) -> Factors<Complex64> {
    Factors {
        n_cols: f.n_cols,
        order: f.order,
        rows: f.rows.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
    }
}

fn to_real(f: &Factors<Complex64>) -> Option<Factors<f64>> {
    if f.rows.iter().any(|z| z.im != 0.0) {
        return None;
    }
    Some(Factors {
        n_cols: f.n_cols,
        order: f.order.clone(),
        rows: f.rows.iter().map(|z| z.re).collect(),
    })
}

/// Factors the Vandermonde matrix of `rows` (first `n_forced` rows are
/// forced pivots), running real arithmetic whenever the data allow it.
pub(crate) fn factor_rows(
    basis: &Basis,
    rows: &[&Point],
    ids: Vec<usize>,
    n_forced: usize,
    n_steps: usize,
    tol: &Tolerances,
) -> Result<Factors<Complex64>> {
    let n = basis.n_cols();
    if basis.is_real() && all_real(rows) {
        let data = build_rows::<f64>(basis, rows);
        Elimination::new(data, ids, n).run(n_forced, n_steps, tol).map(to_complex)
    } else {
        let data = build_rows::<Complex64>(basis, rows);
        Elimination::new(data, ids, n).run(n_forced, n_steps, tol)
    }
}

/// `log |VDM(points)|` through pivoted elimination. Singular configurations
/// give [`VdmValue::ZERO`].
pub fn vdm_log_abs(points: &[Point]) -> Result<VdmValue> {
    vdm_log_abs_with(points, BasisKind::Adapted)
}

pub fn vdm_log_abs_with(points: &[Point], kind: BasisKind) -> Result<VdmValue> {
    let p = common_dimension(points)?;
    let n = points.len();
    let basis = Basis::build(kind, p, n, points);
    let refs: Vec<&Point> = points.iter().collect();
    match factor_rows(&basis, &refs, (0..n).collect(), 0, n, &Tolerances::default()) {
        Ok(f) => {
            let log_piv: f64 = (0..n).map(|k| f.pivot(k).norm().ln()).sum();
            Ok(VdmValue::from_log(log_piv - basis.log_lead_sum(n)))
        }
        Err(Error::Degenerate { .. }) => Ok(VdmValue::ZERO),
        Err(e) => Err(e),
    }
}

/// Residual of a rejected extension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegenerateExtension {
    pub step: usize,
    pub residual: Complex64,
}

/// Remaining candidates of a [`NewtonState`], kept eliminated against all
/// accepted points.
#[derive(Clone, Debug)]
struct CandidatePool {
    points: Vec<Point>,
    ids: Vec<usize>,
    rows: Vec<Complex64>,
}

/// Incremental Newton factorisation of an ordered point list.
///
/// Accepted point `k` stores its multipliers against pivots `0..k` and its
/// residuals `c_j · (e_j - L_{X_k} e_j)(ξ_k)` for `j >= k`, where `c_j` is
/// the leading coefficient of basis column `j`. The capacity (number of basis
/// columns) bounds the number of points.
#[derive(Clone, Debug)]
pub struct NewtonState {
    basis: Basis,
    points: Vec<Point>,
    factors: Factors<Complex64>,
    col_scale: Vec<f64>,
    log_vdm: f64,
    tol: Tolerances,
    pool: Option<CandidatePool>,
}

impl NewtonState {
    /// Empty state whose capacity is `basis.n_cols()`.
    pub fn new(basis: Basis) -> Self {
        let n = basis.n_cols();
        NewtonState {
            basis,
            points: Vec::new(),
            factors: Factors {
                n_cols: n,
                order: Vec::new(),
                rows: Vec::new(),
            },
            col_scale: vec![0.0; n],
            log_vdm: 0.0,
            tol: Tolerances::default(),
            pool: None,
        }
    }

    /// Empty state that keeps residual columns for a candidate set, so that
    /// [`NewtonState::greedy_step`] can pick the next Leja point.
    pub fn with_candidates(basis: Basis, candidates: &[Point]) -> Self {
        let mut st = Self::new(basis);
        let n = st.capacity();
        let mut rows = vec![ZERO; candidates.len() * n];
        let mut scratch = Vec::new();
        for (row, pt) in rows.chunks_mut(n).zip(candidates) {
            st.basis.eval_into(pt, row, &mut scratch);
            for (s, v) in st.col_scale.iter_mut().zip(row.iter()) {
                *s = s.max(v.norm());
            }
        }
        st.pool = Some(CandidatePool {
            points: candidates.to_vec(),
            ids: (0..candidates.len()).collect(),
            rows,
        });
        st
    }

    /// Factors an ordered list in one pass. Fails if some prefix has a
    /// vanishing Vandermonde determinant.
    pub fn from_points(basis: Basis, points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Ok(Self::new(basis));
        }
        let p = common_dimension(points)?;
        if p != basis.dimension() {
            return Err(Error::DimensionMismatch {
                expected: basis.dimension(),
                found: p,
            });
        }
        if points.len() > basis.n_cols() {
            return Err(Error::CapacityExhausted(basis.n_cols()));
        }
        let refs: Vec<&Point> = points.iter().collect();
        let k = points.len();
        let f = factor_rows(&basis, &refs, (0..k).collect(), k, k, &Tolerances::default())?;
        Ok(Self::from_factors(basis, points.to_vec(), f))
    }

    /// Wraps a completed factorisation whose pivot rows belong to `points`
    /// (already in pivot order).
    pub(crate) fn from_factors(basis: Basis, points: Vec<Point>, factors: Factors<Complex64>) -> Self {
        let mut st = Self::new(basis);
        let k = points.len();
        let mut scratch = Vec::new();
        let mut row = vec![ZERO; st.capacity()];
        for pt in &points {
            st.basis.eval_into(pt, &mut row, &mut scratch);
            for (s, v) in st.col_scale.iter_mut().zip(&row) {
                *s = s.max(v.norm());
            }
        }
        st.log_vdm = (0..k)
            .map(|i| factors.pivot(i).norm().ln() - st.basis.log_lead(i))
            .sum();
        st.factors = Factors {
            n_cols: factors.n_cols,
            order: (0..k).collect(),
            rows: factors.rows,
        };
        st.points = points;
        st
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn capacity(&self) -> usize {
        self.basis.n_cols()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Running `log |VDM|` of the accepted points.
    pub fn log_vdm(&self) -> f64 {
        self.log_vdm
    }

    /// `log |P_k(ξ_k)|` for every accepted step `k >= 1`.
    pub fn log_steps(&self) -> Vec<f64> {
        (1..self.len())
            .map(|k| self.factors.pivot(k).norm().ln() - self.basis.log_lead(k))
            .collect()
    }

    /// `P_k(ξ_k)` in monomial normalisation.
    pub fn pivot(&self, k: usize) -> Complex64 {
        self.factors.pivot(k) / self.basis.log_lead(k).exp()
    }

    /// Number of candidates still available to [`NewtonState::greedy_step`].
    pub fn candidates_left(&self) -> usize {
        self.pool.as_ref().map_or(0, |p| p.ids.len())
    }

    fn degenerate(&self, k: usize, r: Complex64, own: f64) -> bool {
        !(r.norm() > self.tol.singular * self.col_scale[k].max(own))
    }

    /// Appends `candidate`, returning `P_k(candidate)` (monomial
    /// normalisation) with `k` the number of points before the call. A
    /// residual below the singularity tolerance leaves the state unchanged
    /// and is reported as an error so the caller can decide what to do.
    pub fn extend(&mut self, candidate: &Point) -> std::result::Result<Complex64, ExtendError> {
        let k = self.len();
        let n = self.capacity();
        if candidate.dimension() != self.basis.dimension() {
            return Err(ExtendError::Invalid(Error::DimensionMismatch {
                expected: self.basis.dimension(),
                found: candidate.dimension(),
            }));
        }
        if k >= n {
            return Err(ExtendError::Invalid(Error::CapacityExhausted(n)));
        }
        let mut row = vec![ZERO; n];
        self.basis.eval_into(candidate, &mut row, &mut Vec::new());
        let own: Vec<f64> = row.iter().map(|v| v.norm()).collect();
        let mut trace = vec![ZERO; n];
        eliminate_row(&self.factors, k, n, &mut row, &mut trace);
        let r = row[k];
        let lead = self.basis.log_lead(k).exp();
        if self.degenerate(k, r, own[k]) {
            return Err(ExtendError::Degenerate(DegenerateExtension {
                step: k,
                residual: r / lead,
            }));
        }
        for (s, o) in self.col_scale.iter_mut().zip(&own) {
            *s = s.max(*o);
        }
        if let Some(pool) = &mut self.pool {
            let urow = &row;
            for crow in pool.rows.chunks_mut(n) {
                let m = crow[k] / r;
                crow[k] = m;
                if m != ZERO {
                    for (x, u) in crow[k + 1..].iter_mut().zip(&urow[k + 1..]) {
                        *x -= m * *u;
                    }
                }
            }
        }
        self.factors.rows.extend_from_slice(&row);
        self.factors.order.push(k);
        self.points.push(candidate.clone());
        self.log_vdm += r.norm().ln() - self.basis.log_lead(k);
        Ok(r / lead)
    }

    /// Accepts the candidate maximising `|P_k|` (lowest candidate index among
    /// ties) and returns its index in the original candidate list.
    pub fn greedy_step(&mut self) -> Result<(usize, Complex64)> {
        let k = self.len();
        let n = self.capacity();
        let pool = self
            .pool
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("state has no candidate set".into()))?;
        if pool.ids.is_empty() || k >= n {
            return Err(Error::CapacityExhausted(n));
        }
        let best = pool
            .rows
            .chunks(n)
            .map(|r| r[k].norm())
            .fold(0.0f64, f64::max);
        if !(best > self.tol.singular * self.col_scale[k]) {
            return Err(Error::Degenerate {
                step: k,
                residual: best,
                scale: self.col_scale[k],
            });
        }
        let cut = best * (1.0 - self.tol.tie);
        let pos = pool
            .rows
            .chunks(n)
            .enumerate()
            .filter(|(_, r)| r[k].norm() >= cut)
            .min_by_key(|&(i, _)| pool.ids[i])
            .map(|(i, _)| i)
            .expect("a maximiser exists");
        let pool = self.pool.as_mut().expect("checked above");
        let id = pool.ids.remove(pos);
        let pt = pool.points.remove(pos);
        pool.rows.drain(pos * n..(pos + 1) * n);
        match self.extend(&pt) {
            Ok(v) => Ok((id, v)),
            Err(ExtendError::Degenerate(d)) => Err(Error::Degenerate {
                step: d.step,
                residual: d.residual.norm(),
                scale: self.col_scale[k],
            }),
            Err(ExtendError::Invalid(e)) => Err(e),
        }
    }

    /// Residual trace in basis normalisation: entry `s` is `c_s · P_s(z)`
    /// for `s <= len()` (bounded by the capacity).
    fn trace_at<S: Scalar>(&self, f: &Factors<S>, z: &Point, upto: usize, scratch: &mut Vec<Vec<S>>) -> Vec<S> {
        let n = self.capacity();
        let mut row = vec![S::ZERO; n];
        self.basis.eval_into(z, &mut row, scratch);
        let mut trace = vec![S::ZERO; upto];
        eliminate_row(f, self.len().min(upto), upto, &mut row, &mut trace);
        trace
    }

    fn trace_len(&self) -> usize {
        (self.len() + 1).min(self.capacity())
    }

    /// `P_0(z), …, P_k(z)` in monomial normalisation, `k = len()` when the
    /// capacity allows it.
    pub fn newton_values(&self, z: &Point) -> Vec<Complex64> {
        let upto = self.trace_len();
        self.trace_at(&self.factors, z, upto, &mut Vec::new())
            .into_iter()
            .enumerate()
            .map(|(s, v)| v / self.basis.log_lead(s).exp())
            .collect()
    }

    /// `log |P_s(z)|` for `s = 0..=len()` (bounded by the capacity).
    pub fn log_abs_newton(&self, z: &Point) -> Vec<f64> {
        let upto = self.trace_len();
        self.trace_at(&self.factors, z, upto, &mut Vec::new())
            .into_iter()
            .enumerate()
            .map(|(s, v)| v.norm().ln() - self.basis.log_lead(s))
            .collect()
    }

    /// `log max_{z ∈ mesh} |P_s(z)|` for `s = 0..=len()` (bounded by the
    /// capacity).
    pub fn sup_log_abs(&self, mesh: &[Point]) -> Vec<f64> {
        let upto = self.trace_len();
        let maxima = match to_real(&self.factors) {
            Some(fr) if self.basis.is_real() && mesh.iter().all(Point::is_real) => self.sup_moduli(&fr, mesh, upto),
            _ => self.sup_moduli(&self.factors, mesh, upto),
        };
        maxima
            .into_iter()
            .enumerate()
            .map(|(s, m)| m.ln() - self.basis.log_lead(s))
            .collect()
    }

    fn sup_moduli<S: Scalar>(&self, f: &Factors<S>, mesh: &[Point], upto: usize) -> Vec<f64> {
        let chunk = |pts: &[Point]| {
            let mut acc = vec![0.0f64; upto];
            let mut scratch = Vec::new();
            for z in pts {
                let t = self.trace_at(f, z, upto, &mut scratch);
                for (a, v) in acc.iter_mut().zip(&t) {
                    *a = a.max(v.modulus());
                }
            }
            acc
        };
        mesh.par_chunks(256).map(chunk).reduce(
            || vec![0.0f64; upto],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.max(y)).collect(),
        )
    }

    /// Newton coefficients `g = L^{-1} f` of the interpolant of `values`
    /// (aligned with the accepted points).
    fn newton_coefficients(&self, values: &[Complex64]) -> Vec<Complex64> {
        let k = self.len();
        let mut g = Vec::with_capacity(k);
        for t in 0..k {
            let row = self.factors.row(t);
            let acc = (0..t).fold(values[t], |acc, s| acc - row[s] * g[s]);
            g.push(acc);
        }
        g
    }

    fn multipliers_at(&self, z: &Point) -> Vec<Complex64> {
        let n = self.capacity();
        let k = self.len();
        let mut row = vec![ZERO; n];
        self.basis.eval_into(z, &mut row, &mut Vec::new());
        let mut trace = vec![ZERO; n];
        eliminate_row(&self.factors, k, k.min(n), &mut row, &mut trace);
        row.truncate(k);
        row
    }
}

/// Failure of [`NewtonState::extend`].
#[derive(Debug)]
pub enum ExtendError {
    Degenerate(DegenerateExtension),
    Invalid(Error),
}

impl std::fmt::Display for ExtendError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtendError::Degenerate(d) => write!(f, "degenerate extension at step {} (residual {})", d.step, d.residual),
            ExtendError::Invalid(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for ExtendError {}

/// Functional form of [`NewtonState::extend`]: returns `P_k(candidate)` and
/// the extended state.
pub fn newton_extend(
    state: &NewtonState,
    candidate: &Point,
) -> std::result::Result<(Complex64, NewtonState), ExtendError> {
    let mut next = state.clone();
    let r = next.extend(candidate)?;
    Ok((r, next))
}

/// Lagrange interpolation through the triangular Newton factors.
#[derive(Clone, Debug)]
pub struct LagrangeInterpolant {
    state: NewtonState,
    coefficients: Vec<Complex64>,
}

impl LagrangeInterpolant {
    /// Nodes are reordered by pivoting, so only the full set needs a
    /// non-vanishing Vandermonde determinant.
    pub fn new(nodes: &[Point], values: &[Complex64]) -> Result<Self> {
        let p = common_dimension(nodes)?;
        if values.len() != nodes.len() {
            return Err(Error::InvalidParameter(format!(
                "{} values for {} nodes",
                values.len(),
                nodes.len()
            )));
        }
        let n = nodes.len();
        let basis = Basis::build(BasisKind::Adapted, p, n, nodes);
        let refs: Vec<&Point> = nodes.iter().collect();
        let f = factor_rows(&basis, &refs, (0..n).collect(), 0, n, &Tolerances::default()).map_err(|e| match e {
            Error::Degenerate { .. } => Error::Singular,
            other => other,
        })?;
        let ordered: Vec<Point> = f.order.iter().map(|&i| nodes[i].clone()).collect();
        let permuted: Vec<Complex64> = f.order.iter().map(|&i| values[i]).collect();
        let state = NewtonState::from_factors(basis, ordered, f);
        let coefficients = state.newton_coefficients(&permuted);
        Ok(LagrangeInterpolant { state, coefficients })
    }

    pub fn eval(&self, z: &Point) -> Complex64 {
        self.state
            .multipliers_at(z)
            .iter()
            .zip(&self.coefficients)
            .map(|(m, g)| m * g)
            .sum()
    }

    /// Nodes in the pivot order used internally.
    pub fn nodes(&self) -> &[Point] {
        self.state.points()
    }
}

/// `Σ f(ζ_j) l_j(z)`.
pub fn lagrange_interpolate(nodes: &[Point], values: &[Complex64], z: &Point) -> Result<Complex64> {
    Ok(LagrangeInterpolant::new(nodes, values)?.eval(z))
}

/// Explicit-determinant reference implementations.
pub mod dense {
    use super::*;

    /// `log |det m|` from an LU factorisation with partial pivoting.
    pub fn log_abs_det(m: &DMatrix<Complex64>) -> f64 {
        assert!(m.is_square(), "determinant of a non-square matrix");
        if m.nrows() == 0 {
            return 0.0;
        }
        let lu = m.clone().lu();
        lu.u().diagonal().iter().map(|d| d.norm().ln()).sum()
    }

    /// `log |VDM(points)|` in the monomial basis.
    pub fn vdm_log_abs(points: &[Point]) -> Result<f64> {
        Ok(log_abs_det(&vdm_matrix(points, points.len())?))
    }

    /// Lagrange interpolation through fundamental polynomials formed as
    /// determinant ratios.
    pub fn lagrange_interpolate(nodes: &[Point], values: &[Complex64], z: &Point) -> Result<Complex64> {
        let n = nodes.len();
        let v = vdm_matrix(nodes, n)?;
        let det = v.determinant();
        if det == ZERO {
            return Err(Error::Singular);
        }
        let zrow = vdm_matrix(std::slice::from_ref(z), n)?;
        let mut acc = ZERO;
        for (j, f) in values.iter().enumerate() {
            let mut vj = v.clone();
            vj.set_row(j, &zrow.row(0));
            acc += f * vj.determinant() / det;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn monomial_examples() {
        let z = Point::new(vec![c(2.0, 0.0), c(0.0, 3.0)]);
        assert_eq!(eval_monomial(0, &z), c(1.0, 0.0));
        assert_eq!(eval_monomial(4, &z), c(0.0, 6.0));
        let w = Point::scalar(c(1.0, 1.0));
        assert_eq!(eval_monomial(3, &w), c(-2.0, 2.0));
    }

    #[test]
    fn matrix_examples() {
        let m = vdm_matrix(&[Point::real(&[0.0, 0.0])], 1).unwrap();
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        let m = vdm_matrix(&[Point::real(&[0.0]), Point::real(&[1.0])], 2).unwrap();
        assert_eq!(m, DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(1., 0.), c(1., 0.)]));
        let pts = [Point::real(&[0.0, 0.0]), Point::real(&[1.0, 0.0]), Point::real(&[0.0, 1.0])];
        let m = vdm_matrix(&pts, 3).unwrap();
        let expect = [[1., 0., 0.], [1., 0., 1.], [1., 1., 0.]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m[(i, j)], c(expect[i][j], 0.0));
            }
        }
        assert!(vdm_matrix(&[Point::real(&[0.0]), Point::real(&[1.0, 2.0])], 2).is_err());
    }

    #[test]
    fn log_abs_examples() {
        assert_eq!(vdm_log_abs(&[Point::real(&[3.0, 4.0])]).unwrap().log_abs, 0.0);
        let two = [Point::real(&[0.0]), Point::real(&[1.0])];
        assert!(vdm_log_abs(&two).unwrap().log_abs.abs() < 1e-15);
        let roots: Vec<Point> = (0..3)
            .map(|k| Point::scalar(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0)))
            .collect();
        let v = vdm_log_abs(&roots).unwrap();
        assert!((v.log_abs - 1.5 * 3f64.ln()).abs() < 1e-12);
        let dup = [Point::real(&[1.0]), Point::real(&[1.0])];
        assert!(vdm_log_abs(&dup).unwrap().is_zero());
    }

    #[test]
    fn extend_examples() {
        let mut st = NewtonState::new(Basis::monomial(1, 3));
        assert_eq!(st.extend(&Point::real(&[5.0])).unwrap(), c(1.0, 0.0));
        assert_eq!(st.log_vdm(), 0.0);

        let mut st = NewtonState::new(Basis::monomial(1, 3));
        st.extend(&Point::real(&[0.0])).unwrap();
        assert_eq!(st.extend(&Point::real(&[1.0])).unwrap(), c(1.0, 0.0));

        let mut st = NewtonState::new(Basis::monomial(1, 3));
        st.extend(&Point::real(&[1.0])).unwrap();
        st.extend(&Point::real(&[-1.0])).unwrap();
        let (r, next) = newton_extend(&st, &Point::real(&[0.0])).unwrap();
        assert!((r - c(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(next.len(), 3);
        assert_eq!(st.len(), 2);
        // log|VDM(1, -1, 0)| = log(2 * 1 * 1)
        assert!((next.log_vdm() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn degenerate_extension_leaves_state() {
        let mut st = NewtonState::new(Basis::monomial(1, 3));
        st.extend(&Point::real(&[0.25])).unwrap();
        let err = st.extend(&Point::real(&[0.25])).unwrap_err();
        assert!(matches!(err, ExtendError::Degenerate(DegenerateExtension { step: 1, .. })));
        assert_eq!(st.len(), 1);
        let mut full = NewtonState::new(Basis::monomial(1, 1));
        full.extend(&Point::real(&[0.0])).unwrap();
        assert!(matches!(full.extend(&Point::real(&[1.0])), Err(ExtendError::Invalid(Error::CapacityExhausted(1)))));
    }

    #[test]
    fn interpolation_examples() {
        let nodes = [Point::real(&[0.0, 0.0]), Point::real(&[1.0, 0.0]), Point::real(&[0.0, 1.0])];
        let f = |z: &Point| c(3.0, 0.0) + 2.0 * z.coords()[0] - z.coords()[1];
        let values: Vec<_> = nodes.iter().map(f).collect();
        let z = Point::new(vec![c(0.3, -1.0), c(2.0, 0.5)]);
        let got = lagrange_interpolate(&nodes, &values, &z).unwrap();
        assert!((got - f(&z)).norm() < 1e-13);
        let slow = dense::lagrange_interpolate(&nodes, &values, &z).unwrap();
        assert!((slow - f(&z)).norm() < 1e-13);

        let line = [Point::real(&[0.0]), Point::real(&[1.0])];
        let got = lagrange_interpolate(&line, &[c(0.0, 0.0), c(1.0, 0.0)], &Point::real(&[0.5])).unwrap();
        assert!((got - c(0.5, 0.0)).norm() < 1e-15);

        let consts = vec![c(2.5, -1.0); 3];
        let tri = [Point::real(&[0.0]), Point::real(&[1.0]), Point::real(&[3.0])];
        let got = lagrange_interpolate(&tri, &consts, &Point::real(&[-7.0])).unwrap();
        assert!((got - consts[0]).norm() < 1e-12);

        let collinear = [Point::real(&[0.0, 0.0]), Point::real(&[1.0, 1.0]), Point::real(&[2.0, 2.0])];
        assert!(matches!(
            LagrangeInterpolant::new(&collinear, &consts),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn greedy_pool_picks_leja_points() {
        let mesh: Vec<Point> = [-1.0, 0.0, 1.0].iter().map(|&x| Point::real(&[x])).collect();
        let mut st = NewtonState::with_candidates(Basis::monomial(1, 3), &mesh);
        let picks: Vec<usize> = (0..3).map(|_| st.greedy_step().unwrap().0).collect();
        assert_eq!(picks, vec![0, 2, 1]);
        assert_eq!(st.candidates_left(), 0);
    }
}
