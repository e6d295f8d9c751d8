//! Intertwining of two sequences into a sequence on the product set.
//!
//! With `φ(j) = (φ1(j), φ2(j))` the split of the graded-lex index, the
//! intertwined sequence is `ω_j = (a_{φ1(j)}, b_{φ2(j)})` and its Newton
//! residuals factor as
//!
//! ```text
//! P_j(z¹, z²) = P^A_{φ1(j)}(z¹) · P^B_{φ2(j)}(z²),
//! ```
//!
//! so that `|VDM(ω_0, …, ω_{j-1}, z)| = |P_j(z)| · |VDM(ω_0, …, ω_{j-1})|`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::leja::{pseudo_leja_with, verify_pseudo_leja, GrowthKind, LejaOptions, LejaSequence};
use crate::meshes::product_mesh;
use crate::monomials::{dim_space, split_index, IndexSplit};
use crate::point::Point;
use crate::sets::CompactSet;
use crate::vandermonde::{dense, vdm_log_abs};

#[derive(Clone, Debug, PartialEq)]
pub struct IntertwinedSequence {
    pub left: LejaSequence,
    pub right: LejaSequence,
    pub combined: LejaSequence,
}

impl IntertwinedSequence {
    pub fn p1(&self) -> usize {
        self.left.dimension()
    }

    pub fn p2(&self) -> usize {
        self.right.dimension()
    }

    pub fn split(&self, j: usize) -> IndexSplit {
        split_index(j, self.p1(), self.p2())
    }
}

/// Exact prefix lengths of the factor sequences needed for `n_points`
/// intertwined points.
pub fn required_lengths(n_points: usize, p1: usize, p2: usize) -> (usize, usize) {
    (0..n_points).fold((0, 0), |(l, r), j| {
        let s = split_index(j, p1, p2);
        (l.max(s.phi1 + 1), r.max(s.phi2 + 1))
    })
}

fn combined_kind(a: GrowthKind, b: GrowthKind) -> GrowthKind {
    use GrowthKind::*;
    match (a, b) {
        (Nominal, _) | (_, Nominal) => Nominal,
        (Empirical, _) | (_, Empirical) => Empirical,
        _ => Bounded,
    }
}

/// `ω_j = (a_{φ1(j)}, b_{φ2(j)})` for `j < n_points`, with growth
/// `M'_{φ1(j)} · M''_{φ2(j)}` and step sizes added through the factorisation.
pub fn intertwine(a: &LejaSequence, b: &LejaSequence, n_points: usize) -> Result<IntertwinedSequence> {
    if a.is_empty() || b.is_empty() || n_points == 0 {
        return Err(Error::InvalidParameter("intertwining needs nonempty factors and n_points >= 1".into()));
    }
    let (p1, p2) = (a.dimension(), b.dimension());
    let (need_l, need_r) = required_lengths(n_points, p1, p2);
    if need_l > a.len() || need_r > b.len() {
        return Err(Error::InsufficientFactor {
            required_left: need_l,
            required_right: need_r,
            have_left: a.len(),
            have_right: b.len(),
        });
    }
    let mut points = Vec::with_capacity(n_points);
    let mut growth = Vec::with_capacity(n_points - 1);
    let mut steps = Vec::with_capacity(n_points - 1);
    for j in 0..n_points {
        let s = split_index(j, p1, p2);
        points.push(a.points[s.phi1].concat(&b.points[s.phi2]));
        if j > 0 {
            growth.push(a.growth_at(s.phi1) * b.growth_at(s.phi2));
            steps.push(a.log_step(s.phi1) + b.log_step(s.phi2));
        }
    }
    let combined = LejaSequence {
        points,
        growth,
        log_vdm_steps: steps,
        growth_kind: combined_kind(a.growth_kind, b.growth_kind),
        source: format!("intertwining of [{}] and [{}]", a.source, b.source),
        mesh_indices: None,
    };
    Ok(IntertwinedSequence {
        left: a.prefix(need_l),
        right: b.prefix(need_r),
        combined,
    })
}

/// How determinants are evaluated in [`check_factorization_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeterminantMethod {
    /// Monomial Vandermonde matrices and LU with partial pivoting.
    Dense,
    /// Adapted bases and greedy row pivoting.
    Pivoted,
}

/// Both sides of the factorisation identity in log form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FactorizationCheck {
    pub j: usize,
    /// `log |VDM(ω_0, …, ω_{j-1}, z)|`
    pub lhs_log: f64,
    /// `log |P_j(z)| + log |VDM(ω_0, …, ω_{j-1})|` with `P_j` in product form
    pub rhs_log: f64,
}

impl FactorizationCheck {
    /// `|lhs / rhs − 1|`, zero when both sides vanish.
    pub fn relative_residual(&self) -> f64 {
        if self.lhs_log == f64::NEG_INFINITY && self.rhs_log == f64::NEG_INFINITY {
            0.0
        } else {
            (self.lhs_log - self.rhs_log).exp_m1().abs()
        }
    }
}

fn log_vdm(points: &[Point], method: DeterminantMethod) -> Result<f64> {
    match method {
        DeterminantMethod::Dense => dense::vdm_log_abs(points),
        DeterminantMethod::Pivoted => Ok(vdm_log_abs(points)?.log_abs),
    }
}

/// `log |VDM(x_0, …, x_{k-1}, z) / VDM(x_0, …, x_{k-1})|`, zero for `k = 0`.
fn log_ratio(prefix: &[Point], z: Point, method: DeterminantMethod) -> Result<f64> {
    if prefix.is_empty() {
        return Ok(0.0);
    }
    let base = log_vdm(prefix, method)?;
    if base == f64::NEG_INFINITY {
        return Err(Error::Singular);
    }
    let mut ext = prefix.to_vec();
    ext.push(z);
    Ok(log_vdm(&ext, method)? - base)
}

/// Evaluates both sides of the factorisation identity at step `j >= 1` with
/// dense determinants.
pub fn check_factorization(seq: &IntertwinedSequence, j: usize, z: &Point) -> Result<FactorizationCheck> {
    check_factorization_with(seq, j, z, DeterminantMethod::Dense)
}

pub fn check_factorization_with(
    seq: &IntertwinedSequence,
    j: usize,
    z: &Point,
    method: DeterminantMethod,
) -> Result<FactorizationCheck> {
    if j == 0 || j > seq.combined.len() {
        return Err(Error::InvalidParameter(format!(
            "step j = {j} must lie in 1..={}",
            seq.combined.len()
        )));
    }
    let (p1, p2) = (seq.p1(), seq.p2());
    if z.dimension() != p1 + p2 {
        return Err(Error::DimensionMismatch {
            expected: p1 + p2,
            found: z.dimension(),
        });
    }
    let s = split_index(j, p1, p2);
    if s.phi1 > seq.left.len() || s.phi2 > seq.right.len() {
        return Err(Error::InsufficientFactor {
            required_left: s.phi1,
            required_right: s.phi2,
            have_left: seq.left.len(),
            have_right: seq.right.len(),
        });
    }
    let prefix = &seq.combined.points[..j];
    let mut ext = prefix.to_vec();
    ext.push(z.clone());
    let lhs_log = log_vdm(&ext, method)?;
    let base = log_vdm(prefix, method)?;
    if base == f64::NEG_INFINITY {
        return Err(Error::Singular);
    }
    let (z1, z2) = z.split_at(p1);
    let rhs_log = log_ratio(&seq.left.points[..s.phi1], z1, method)?
        + log_ratio(&seq.right.points[..s.phi2], z2, method)?
        + base;
    Ok(FactorizationCheck { j, lhs_log, rhs_log })
}

/// Parameters of [`check_equivalence`].
#[derive(Clone, Copy, Debug)]
pub struct EquivalenceOptions {
    pub oversample: f64,
    /// Validation meshes are this many times finer than generating meshes.
    pub validation_factor: f64,
    /// Also run the converse check on the right factor.
    pub symmetric: bool,
    /// Relative slack when comparing empirical factors with bounds.
    pub tolerance: f64,
    /// Steps up to this index use dense determinants, later ones pivoted
    /// elimination in adapted bases.
    pub dense_limit: usize,
    pub leja: LejaOptions,
}

impl Default for EquivalenceOptions {
    fn default() -> Self {
        EquivalenceOptions {
            oversample: 2.0,
            validation_factor: 4.0,
            symmetric: false,
            tolerance: 1e-9,
            dense_limit: 24,
            leja: LejaOptions::default(),
        }
    }
}

/// Empirical factor of one step next to the factor it must not exceed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StepCheck {
    pub j: usize,
    pub empirical: f64,
    pub bound: f64,
}

impl StepCheck {
    fn passes(&self, tol: f64) -> bool {
        self.empirical <= self.bound * (1.0 + tol) + tol
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub left_set: String,
    pub right_set: String,
    pub d_max: usize,
    pub n_points: usize,
    /// Combined sequence on the product validation mesh against
    /// `M'_{φ1(j)} · M''_{φ2(j)}`.
    pub forward: Vec<StepCheck>,
    pub forward_ok: bool,
    /// The steps with `φ2(j) = 0`, verified on the left validation mesh
    /// against the combined empirical factor of step `j`.
    pub converse_left: Vec<StepCheck>,
    pub converse_left_ok: bool,
    pub converse_right: Option<Vec<StepCheck>>,
    pub converse_right_ok: Option<bool>,
    pub factorization: Vec<FactorizationCheck>,
    pub max_factorization_residual: f64,
    pub passed: bool,
}

/// Steps with `φ_other(j) = 0`, verified on one factor's validation mesh.
fn converse(
    factor: &LejaSequence,
    validation: &crate::meshes::Mesh,
    forward: &[f64],
    picks: &[(usize, usize)],
) -> Result<Vec<StepCheck>> {
    let count = picks.iter().map(|&(_, i)| i + 1).max().unwrap_or(1);
    let own = verify_pseudo_leja(&factor.prefix(count), validation)?;
    Ok(picks
        .iter()
        .filter(|&&(_, i)| i > 0)
        .map(|&(j, i)| StepCheck {
            j,
            empirical: own[i - 1],
            bound: forward[j - 1].max(1.0),
        })
        .collect())
}

/// Generates pseudo-Leja sequences on both sets, intertwines them and
/// checks both directions of the equivalence on validation meshes.
pub fn check_equivalence(k1: &CompactSet, k2: &CompactSet, d_max: usize, opts: EquivalenceOptions) -> Result<EquivalenceReport> {
    let a = pseudo_leja_with(|d| k1.mesh(d, opts.oversample), d_max, opts.leja)?;
    let b = pseudo_leja_with(|d| k2.mesh(d, opts.oversample), d_max, opts.leja)?;
    let (p1, p2) = (k1.dimension(), k2.dimension());
    let n = dim_space(d_max, p1 + p2);
    let seq = intertwine(&a, &b, n)?;

    let v1 = k1.validation_mesh(d_max, opts.oversample, opts.validation_factor)?;
    let v2 = k2.validation_mesh(d_max, opts.oversample, opts.validation_factor)?;
    let vp = product_mesh(&v1, &v2)?;
    let forward_raw = verify_pseudo_leja(&seq.combined, &vp)?;
    let forward: Vec<StepCheck> = forward_raw
        .iter()
        .enumerate()
        .map(|(i, &e)| StepCheck {
            j: i + 1,
            empirical: e,
            bound: seq.combined.growth_at(i + 1),
        })
        .collect();
    let forward_ok = forward.iter().all(|c| c.passes(opts.tolerance));

    let splits: Vec<IndexSplit> = (0..n).map(|j| split_index(j, p1, p2)).collect();
    let left_picks: Vec<(usize, usize)> = (0..n).filter(|&j| splits[j].phi2 == 0).map(|j| (j, splits[j].phi1)).collect();
    let converse_left = converse(&seq.left, &v1, &forward_raw, &left_picks)?;
    let converse_left_ok = converse_left.iter().all(|c| c.passes(opts.tolerance));
    let (converse_right, converse_right_ok) = if opts.symmetric {
        let picks: Vec<(usize, usize)> = (0..n).filter(|&j| splits[j].phi1 == 0).map(|j| (j, splits[j].phi2)).collect();
        let r = converse(&seq.right, &v2, &forward_raw, &picks)?;
        let ok = r.iter().all(|c| c.passes(opts.tolerance));
        (Some(r), Some(ok))
    } else {
        (None, None)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut factorization = Vec::new();
    for j in 1..n {
        let base = &vp.points()[rng.gen_range(0..vp.len())];
        let z = Point::new(
            base.coords()
                .iter()
                .map(|c| c + 0.05 * Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        );
        let method = if j <= opts.dense_limit {
            DeterminantMethod::Dense
        } else {
            DeterminantMethod::Pivoted
        };
        factorization.push(check_factorization_with(&seq, j, &z, method)?);
    }
    let max_factorization_residual = factorization
        .iter()
        .map(FactorizationCheck::relative_residual)
        .fold(0.0, f64::max);
    let passed = forward_ok
        && converse_left_ok
        && converse_right_ok.unwrap_or(true)
        && max_factorization_residual < 1e-8;
    Ok(EquivalenceReport {
        left_set: k1.to_string(),
        right_set: k2.to_string(),
        d_max,
        n_points: n,
        forward,
        forward_ok,
        converse_left,
        converse_left_ok,
        converse_right,
        converse_right_ok,
        factorization,
        max_factorization_residual,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq1(xs: &[f64]) -> LejaSequence {
        LejaSequence {
            points: xs.iter().map(|&x| Point::real(&[x])).collect(),
            growth: vec![1.0; xs.len() - 1],
            log_vdm_steps: vec![0.0; xs.len() - 1],
            growth_kind: GrowthKind::Bounded,
            source: "test".into(),
            mesh_indices: None,
        }
    }

    #[test]
    fn six_point_listing() {
        let a = seq1(&[10.0, 11.0, 12.0]);
        let b = seq1(&[20.0, 21.0, 22.0]);
        let s = intertwine(&a, &b, 6).unwrap();
        let pairs: Vec<(f64, f64)> = s
            .combined
            .points
            .iter()
            .map(|p| (p.coords()[0].re, p.coords()[1].re))
            .collect();
        assert_eq!(
            pairs,
            vec![(10., 20.), (10., 21.), (11., 20.), (10., 22.), (11., 21.), (12., 20.)]
        );
        let one = intertwine(&a, &b, 1).unwrap();
        assert_eq!(one.combined.points, vec![Point::real(&[10.0, 20.0])]);
        assert_eq!(required_lengths(6, 1, 1), (3, 3));
        assert!(matches!(
            intertwine(&seq1(&[0.0, 1.0]), &b, 6),
            Err(Error::InsufficientFactor { required_left: 3, .. })
        ));
    }

    #[test]
    fn low_steps_by_hand() {
        let a = seq1(&[0.3, -0.7, 0.9]);
        let b = seq1(&[-0.2, 0.8, 0.1]);
        let s = intertwine(&a, &b, 6).unwrap();
        let z = Point::new(vec![Complex64::new(0.4, 0.5), Complex64::new(-1.1, 0.2)]);
        let c1 = check_factorization(&s, 1, &z).unwrap();
        let want = (z.coords()[1] - 0.8 * 0.0 - (-0.2)).norm().ln();
        assert!((c1.lhs_log - want).abs() < 1e-12 && (c1.rhs_log - want).abs() < 1e-12);
        let c2 = check_factorization(&s, 2, &z).unwrap();
        let base = dense::vdm_log_abs(&s.combined.points[..2]).unwrap();
        let want = (z.coords()[0] - 0.3).norm().ln() + base;
        assert!((c2.lhs_log - want).abs() < 1e-12 && (c2.rhs_log - want).abs() < 1e-12);
    }

    #[test]
    fn trivial_equivalence() {
        let i: CompactSet = "interval:-1,1".parse().unwrap();
        let r = check_equivalence(&i, &i, 0, EquivalenceOptions::default()).unwrap();
        assert_eq!(r.n_points, 1);
        assert!(r.passed && r.forward.is_empty());
    }
}
