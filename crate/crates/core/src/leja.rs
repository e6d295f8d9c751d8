//! Discrete Leja extraction, pseudo-Leja sequences built from degree-indexed
//! mesh families, and verification of the pseudo-Leja inequality
//!
//! ```text
//! M_j · |VDM(ξ_0, …, ξ_j)| >= max_{z ∈ K} |VDM(ξ_0, …, ξ_{j-1}, z)|.
//! ```

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::basis::{AxisMap, Basis, BasisKind};
use crate::elimination::Tolerances;
use crate::error::{Error, Result};
use crate::meshes::{from_wire, to_wire, Mesh, WirePoint};
use crate::monomials::{dim_space, kappa, try_dim_space, vdm_degree};
use crate::point::{common_dimension, Point};
use crate::vandermonde::{factor_rows, NewtonState};

/// Where the growth factors `M_j` of a sequence come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthKind {
    /// No bound was known; every `M_j` is recorded as 1.
    Nominal,
    /// Analytic norming constants of the generating meshes.
    Bounded,
    /// Factors measured on a validation mesh.
    Empirical,
}

impl std::fmt::Display for GrowthKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GrowthKind::Nominal => "nominal",
            GrowthKind::Bounded => "bounded",
            GrowthKind::Empirical => "empirical",
        })
    }
}

/// An ordered point sequence with its growth factors and Newton step sizes.
///
/// `growth[j - 1]` is `M_j` and `log_vdm_steps[j - 1]` is `log |P_j(ξ_j)|`
/// for `j >= 1`, so `log |VDM(ξ_0, …, ξ_{k-1})|` is the sum of the first
/// `k - 1` steps.
#[derive(Clone, Debug, PartialEq)]
pub struct LejaSequence {
    pub points: Vec<Point>,
    pub growth: Vec<f64>,
    pub log_vdm_steps: Vec<f64>,
    pub growth_kind: GrowthKind,
    pub source: String,
    /// Mesh index of every point, for sequences extracted from one mesh.
    pub mesh_indices: Option<Vec<usize>>,
}

impl LejaSequence {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.points.first().map_or(0, Point::dimension)
    }

    /// `M_j` with the convention `M_0 = 1`.
    pub fn growth_at(&self, j: usize) -> f64 {
        if j == 0 {
            1.0
        } else {
            self.growth[j - 1]
        }
    }

    /// `log |P_j(ξ_j)|` with `log |P_0| = 0`.
    pub fn log_step(&self, j: usize) -> f64 {
        if j == 0 {
            0.0
        } else {
            self.log_vdm_steps[j - 1]
        }
    }

    /// `log |VDM(ξ_0, …, ξ_{k-1})|`, i.e. `log L_k`.
    pub fn prefix_log_vdm(&self, k: usize) -> f64 {
        self.log_vdm_steps[..k.saturating_sub(1)].iter().sum()
    }

    /// Number of complete degree blocks: the largest `d` with `h_d <= len`.
    pub fn complete_degree(&self) -> Option<usize> {
        let p = self.dimension();
        if self.is_empty() {
            return None;
        }
        let mut d = 0;
        while try_dim_space(d as u64 + 1, p).is_ok_and(|h| h <= self.len() as u64) {
            d += 1;
        }
        Some(d)
    }

    /// First `n` points with their bookkeeping.
    pub fn prefix(&self, n: usize) -> LejaSequence {
        let n = n.min(self.len());
        LejaSequence {
            points: self.points[..n].to_vec(),
            growth: self.growth[..n.saturating_sub(1)].to_vec(),
            log_vdm_steps: self.log_vdm_steps[..n.saturating_sub(1)].to_vec(),
            growth_kind: self.growth_kind,
            source: self.source.clone(),
            mesh_indices: self.mesh_indices.as_ref().map(|v| v[..n].to_vec()),
        }
    }

    /// Checks the structural invariants: common dimension, finite steps and
    /// growth factors `>= 1`.
    pub fn validate(&self) -> Result<()> {
        common_dimension(&self.points)?;
        let steps = self.len() - 1;
        if self.growth.len() != steps || self.log_vdm_steps.len() != steps {
            return Err(Error::InvalidParameter(format!(
                "{} points need {steps} growth factors and steps, found {} and {}",
                self.len(),
                self.growth.len(),
                self.log_vdm_steps.len()
            )));
        }
        if let Some(j) = self.log_vdm_steps.iter().position(|s| !s.is_finite()) {
            return Err(Error::Degenerate {
                step: j + 1,
                residual: 0.0,
                scale: 0.0,
            });
        }
        if let Some(m) = self.growth.iter().find(|m| !(**m >= 1.0)) {
            return Err(Error::InvalidParameter(format!("growth factor {m} below 1")));
        }
        Ok(())
    }

    /// Newton factorisation of the sequence, with capacity `len + extra`
    /// columns and a basis fitted to the sequence and the given points.
    pub fn newton_state(&self, extra: usize, fit: &[Point]) -> Result<NewtonState> {
        let p = common_dimension(&self.points)?;
        let basis = fitted_basis(p, self.len() + extra, &self.points, fit);
        NewtonState::from_points(basis, &self.points)
    }
}

/// Adapted basis whose axis families are fitted to the union of two point
/// lists.
pub(crate) fn fitted_basis(p: usize, n_cols: usize, a: &[Point], b: &[Point]) -> Basis {
    let axes = (0..p)
        .map(|i| AxisMap::fit(a.iter().chain(b).map(|pt| pt.coords()[i])))
        .collect();
    Basis::new(axes, n_cols)
}

/// How the first point is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SeedRule {
    /// Lowest mesh index (all first-column entries tie).
    #[default]
    LowestIndex,
    /// Largest Euclidean norm, lowest index among ties.
    MaxNorm,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LejaOptions {
    pub seed: SeedRule,
    pub basis: BasisKind,
}

fn growth_of(mesh: &Mesh) -> (f64, GrowthKind) {
    match mesh.growth_bound() {
        Some(m) => (m, GrowthKind::Bounded),
        None => (1.0, GrowthKind::Nominal),
    }
}

fn seed_index(points: &[Point], rule: SeedRule) -> usize {
    match rule {
        SeedRule::LowestIndex => 0,
        SeedRule::MaxNorm => {
            let best = points.iter().map(Point::norm).fold(0.0, f64::max);
            points
                .iter()
                .position(|p| p.norm() >= best * (1.0 - Tolerances::default().tie))
                .unwrap_or(0)
        }
    }
}

/// Greedy `|VDM|` maximisation over a mesh by row-pivoted elimination.
pub fn discrete_leja(mesh: &Mesh, n_points: usize) -> Result<LejaSequence> {
    discrete_leja_with(mesh, n_points, LejaOptions::default())
}

pub fn discrete_leja_with(mesh: &Mesh, n_points: usize, opts: LejaOptions) -> Result<LejaSequence> {
    let p = mesh.dimension();
    let limit = try_dim_space(mesh.valid_degree() as u64, p)?;
    if n_points == 0 || n_points as u64 > limit || n_points > mesh.len() {
        return Err(Error::InvalidParameter(format!(
            "n_points = {n_points} must lie in 1..={} (degree {} in dimension {p}, {} mesh points)",
            limit.min(mesh.len() as u64),
            mesh.valid_degree(),
            mesh.len()
        )));
    }
    let basis = Basis::build(opts.basis, p, n_points, mesh.points());
    let seed = seed_index(mesh.points(), opts.seed);
    let mut rows: Vec<&Point> = mesh.points().iter().collect();
    let mut ids: Vec<usize> = (0..mesh.len()).collect();
    rows.swap(0, seed);
    ids.swap(0, seed);
    let forced = usize::from(opts.seed != SeedRule::LowestIndex);
    let f = factor_rows(&basis, &rows, ids, forced, n_points, &Tolerances::default())?;
    let log_vdm_steps = (1..n_points)
        .map(|k| f.pivot(k).norm().ln() - basis.log_lead(k))
        .collect();
    let (m, kind) = growth_of(mesh);
    Ok(LejaSequence {
        points: f.order.iter().map(|&i| mesh.points()[i].clone()).collect(),
        growth: vec![m; n_points - 1],
        log_vdm_steps,
        growth_kind: kind,
        source: format!("discrete Leja on {}", mesh.label()),
        mesh_indices: Some(f.order),
    })
}

/// Pseudo-Leja sequence from a mesh family `d ↦ A_d`: the points of degree
/// block `d` maximise `|VDM|` over `A_d` given all earlier points, and carry
/// the growth factor `M_{A_d}`.
///
/// Every block refactors the Vandermonde matrix of `A_d` with the accepted
/// points as forced leading pivots.
pub fn pseudo_leja<F>(family: F, d_max: usize) -> Result<LejaSequence>
where
    F: FnMut(usize) -> Result<Mesh>,
{
    pseudo_leja_with(family, d_max, LejaOptions::default())
}

pub fn pseudo_leja_with<F>(mut family: F, d_max: usize, opts: LejaOptions) -> Result<LejaSequence>
where
    F: FnMut(usize) -> Result<Mesh>,
{
    let a0 = family(0)?;
    let p = a0.dimension();
    let mut points = vec![a0.points()[seed_index(a0.points(), opts.seed)].clone()];
    let mut growth = Vec::new();
    let mut steps = Vec::new();
    let mut kind = GrowthKind::Bounded;
    let mut labels = vec![a0.label().to_string()];
    for d in 1..=d_max {
        let mesh = family(d)?;
        if mesh.dimension() != p {
            return Err(Error::DimensionMismatch {
                expected: p,
                found: mesh.dimension(),
            });
        }
        if mesh.valid_degree() < d {
            return Err(Error::InvalidParameter(format!(
                "mesh for degree {d} is only valid up to degree {}",
                mesh.valid_degree()
            )));
        }
        let h_prev = points.len();
        let h = dim_space(d, p);
        let basis = match opts.basis {
            BasisKind::Adapted => fitted_basis(p, h, mesh.points(), &points),
            other => Basis::build(other, p, h, mesh.points()),
        };
        let rows: Vec<&Point> = points.iter().chain(mesh.points()).collect();
        let ids: Vec<usize> = (0..rows.len()).collect();
        let f = factor_rows(&basis, &rows, ids, h_prev, h, &Tolerances::default())?;
        let (m, k) = growth_of(&mesh);
        if k == GrowthKind::Nominal {
            kind = GrowthKind::Nominal;
        }
        let new: Vec<Point> = f.order[h_prev..].iter().map(|&i| rows[i].clone()).collect();
        points.extend(new);
        for s in h_prev..h {
            steps.push(f.pivot(s).norm().ln() - basis.log_lead(s));
            growth.push(m);
        }
        if labels.len() < 2 || labels.last().map(String::as_str) != Some(mesh.label()) {
            labels.push(mesh.label().to_string());
        }
    }
    Ok(LejaSequence {
        points,
        growth,
        log_vdm_steps: steps,
        growth_kind: kind,
        source: format!("pseudo-Leja, d_max = {d_max}, meshes {}", labels.join("; ")),
        mesh_indices: None,
    })
}

/// Empirical factors `Ê_j = max_{z ∈ validation} |P_j(z)| / |P_j(ξ_j)|` for
/// `j = 1, …, len − 1`.
pub fn verify_pseudo_leja(seq: &LejaSequence, validation: &Mesh) -> Result<Vec<f64>> {
    if validation.dimension() != seq.dimension() {
        return Err(Error::DimensionMismatch {
            expected: seq.dimension(),
            found: validation.dimension(),
        });
    }
    let st = seq.newton_state(0, validation.points())?;
    let sup = st.sup_log_abs(validation.points());
    let steps = st.log_steps();
    Ok((1..seq.len()).map(|j| (sup[j] - steps[j - 1]).exp()).collect())
}

/// Copy of `seq` whose growth factors are `max(1, Ê_j)`.
pub fn with_empirical_growth(seq: &LejaSequence, factors: &[f64]) -> LejaSequence {
    let mut out = seq.clone();
    out.growth = factors.iter().map(|e| e.max(1.0)).collect();
    out.growth_kind = GrowthKind::Empirical;
    out
}

/// Edrei growth diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdreiReport {
    /// `(d, (max_{h_{d-1} <= j < h_d} M_j)^{1/d})` for every complete block.
    pub per_degree: Vec<(usize, f64)>,
    /// `(d, (∏_{1 <= j < h_d} M_j)^{1/l_d})`.
    pub aggregate: Vec<(usize, f64)>,
    /// Both lists approach 1 monotonically over the latter half of the
    /// available degrees.
    pub consistent: bool,
}

fn settles(values: &[(usize, f64)]) -> bool {
    let tail = &values[values.len() / 2..];
    tail.windows(2)
        .all(|w| (w[1].1 - 1.0).abs() <= (w[0].1 - 1.0).abs() * (1.0 + 1e-12) + 1e-15)
}

/// `growth[j - 1] = M_j`.
pub fn edrei_check(growth: &[f64], p: usize) -> EdreiReport {
    let mut per_degree = Vec::new();
    let mut aggregate = Vec::new();
    let mut log_prod = 0.0;
    let mut d = 1;
    loop {
        let Ok(h) = try_dim_space(d as u64, p) else { break };
        let (lo, hi) = (dim_space(d - 1, p), h as usize);
        if hi - 1 > growth.len() {
            break;
        }
        let block = &growth[lo - 1..hi - 1];
        log_prod += block.iter().map(|m| m.ln()).sum::<f64>();
        let mx = block.iter().cloned().fold(1.0, f64::max);
        per_degree.push((d, mx.powf(1.0 / d as f64)));
        aggregate.push((d, (log_prod / vdm_degree(d, p) as f64).exp()));
        d += 1;
    }
    let consistent = settles(&per_degree) && settles(&aggregate);
    EdreiReport {
        per_degree,
        aggregate,
        consistent,
    }
}

/// Total degree `|κ(j)|` of the `j`-th monomial in `p` variables.
pub fn step_degree(j: usize, p: usize) -> usize {
    kappa(j, p).degree() as usize
}

#[derive(Serialize, Deserialize)]
struct SequenceFile {
    p: usize,
    degree: Option<usize>,
    growth_bound: Option<f64>,
    growth_kind: GrowthKind,
    source: String,
    points: Vec<WirePoint>,
    growth: Vec<f64>,
    log_vdm_steps: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mesh_indices: Option<Vec<usize>>,
}

pub fn sequence_to_json(seq: &LejaSequence) -> Result<String> {
    let bound = match seq.growth_kind {
        GrowthKind::Bounded => seq.growth.iter().cloned().reduce(f64::max),
        _ => None,
    };
    Ok(serde_json::to_string(&SequenceFile {
        p: seq.dimension(),
        degree: seq.complete_degree(),
        growth_bound: bound,
        growth_kind: seq.growth_kind,
        source: seq.source.clone(),
        points: to_wire(&seq.points),
        growth: seq.growth.clone(),
        log_vdm_steps: seq.log_vdm_steps.clone(),
        mesh_indices: seq.mesh_indices.clone(),
    })?)
}

pub fn sequence_from_json(text: &str) -> Result<LejaSequence> {
    let f: SequenceFile = serde_json::from_str(text)?;
    let seq = LejaSequence {
        points: from_wire(f.points, f.p)?,
        growth: f.growth,
        log_vdm_steps: f.log_vdm_steps,
        growth_kind: f.growth_kind,
        source: f.source,
        mesh_indices: f.mesh_indices,
    };
    seq.validate()?;
    Ok(seq)
}

pub fn save_sequence(seq: &LejaSequence, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    out.write_all(sequence_to_json(seq)?.as_bytes())?;
    out.flush()?;
    Ok(())
}

pub fn load_sequence(path: &Path) -> Result<LejaSequence> {
    let mut text = String::new();
    BufReader::new(File::open(path)?).read_to_string(&mut text)?;
    sequence_from_json(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}
