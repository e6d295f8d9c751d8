//! Estimators read off a finished sequence: the transfinite diameter, the
//! Chebyshev-norm product, the Green function and counting measures.
//!
//! Write `L_k = |VDM(ξ_0, …, ξ_{k-1})|`. The diameter estimates are
//! `L_{h_d}^{1/l_d}` per complete degree block and `L_k^{1/l_{d(k)}}` at every
//! prefix length, where `d(k) = |κ(k − 1)|` is the degree of the last point
//! of the prefix.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::leja::LejaSequence;
use crate::meshes::Mesh;
use crate::monomials::{dim_space, kappa, try_dim_space, vdm_degree};
use crate::point::Point;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DegreeEstimate {
    pub d: usize,
    pub h_d: usize,
    pub l_d: u64,
    /// `log L_{h_d}`
    pub log_vdm: f64,
    /// `L_{h_d}^{1/l_d}`
    pub estimate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiameterTrace {
    pub per_degree: Vec<DegreeEstimate>,
    /// `(k, L_k^{1/l_{d(k)}})` for every `k` with `d(k) >= 1`.
    pub refined: Vec<(usize, f64)>,
}

impl DiameterTrace {
    pub fn last(&self) -> Option<&DegreeEstimate> {
        self.per_degree.last()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["d", "h_d", "l_d", "log_vdm", "estimate"])?;
        for e in &self.per_degree {
            w.write_record([
                e.d.to_string(),
                e.h_d.to_string(),
                e.l_d.to_string(),
                e.log_vdm.to_string(),
                e.estimate.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Transfinite diameter estimates along a sequence.
pub fn diameter_trace(seq: &LejaSequence) -> DiameterTrace {
    let p = seq.dimension();
    let n = seq.len();
    let mut log_l = vec![0.0; n + 1];
    for k in 2..=n {
        log_l[k] = log_l[k - 1] + seq.log_vdm_steps[k - 2];
    }
    let mut per_degree = Vec::new();
    let mut d = 1;
    while let Ok(h) = try_dim_space(d as u64, p) {
        let h = h as usize;
        if h > n {
            break;
        }
        let l = vdm_degree(d, p);
        per_degree.push(DegreeEstimate {
            d,
            h_d: h,
            l_d: l,
            log_vdm: log_l[h],
            estimate: (log_l[h] / l as f64).exp(),
        });
        d += 1;
    }
    let refined = (2..=n)
        .map(|k| {
            let dk = kappa(k - 1, p).degree() as usize;
            (k, (log_l[k] / vdm_degree(dk, p) as f64).exp())
        })
        .collect();
    DiameterTrace { per_degree, refined }
}

fn check_dimension(seq: &LejaSequence, mesh: &Mesh) -> Result<()> {
    if seq.dimension() != mesh.dimension() {
        return Err(Error::DimensionMismatch {
            expected: seq.dimension(),
            found: mesh.dimension(),
        });
    }
    Ok(())
}

/// `(d, (∏_{k < h_d} ‖P_k‖)^{1/l_d})` with sup norms taken over `sup_mesh`;
/// the `d = 0` entry is the empty product 1.
pub fn chebyshev_product_trace(seq: &LejaSequence, sup_mesh: &Mesh) -> Result<Vec<(usize, f64)>> {
    check_dimension(seq, sup_mesh)?;
    let p = seq.dimension();
    let st = seq.newton_state(0, sup_mesh.points())?;
    let sup = st.sup_log_abs(sup_mesh.points());
    let mut out = vec![(0, 1.0)];
    let mut acc = 0.0;
    let mut k = 0;
    let mut d = 1;
    while let Ok(h) = try_dim_space(d as u64, p) {
        let h = h as usize;
        if h > seq.len() {
            break;
        }
        while k < h {
            acc += sup[k];
            k += 1;
        }
        out.push((d, (acc / vdm_degree(d, p) as f64).exp()));
        d += 1;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GreenValue {
    pub n: usize,
    /// `log(|P_N(z)| / ‖P_N‖) / |κ(N)|`
    pub value: f64,
    /// Running maximum over `1..=n`, the limsup surrogate.
    pub running_max: f64,
}

/// Green function terms for `N = 1..=n_max`, where `n_max <= len`. `P_N`
/// is built from the first `N` points.
pub fn green_trace(seq: &LejaSequence, sup_mesh: &Mesh, z: &Point, n_max: usize) -> Result<Vec<GreenValue>> {
    check_dimension(seq, sup_mesh)?;
    if z.dimension() != seq.dimension() {
        return Err(Error::DimensionMismatch {
            expected: seq.dimension(),
            found: z.dimension(),
        });
    }
    if n_max == 0 || n_max > seq.len() {
        return Err(Error::InvalidParameter(format!(
            "N must lie in 1..={} for a sequence of {} points",
            seq.len(),
            seq.len()
        )));
    }
    let p = seq.dimension();
    let prefix = seq.prefix(n_max);
    let st = prefix.newton_state(1, sup_mesh.points())?;
    let sup = st.sup_log_abs(sup_mesh.points());
    let at_z = st.log_abs_newton(z);
    let mut best = f64::NEG_INFINITY;
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if sup[n] == f64::NEG_INFINITY {
            return Err(Error::InvalidParameter(format!(
                "P_{n} vanishes on the sup mesh, which is not determining"
            )));
        }
        let value = (at_z[n] - sup[n]) / kappa(n, p).degree() as f64;
        best = best.max(value);
        out.push(GreenValue {
            n,
            value,
            running_max: best,
        });
    }
    Ok(out)
}

/// One term `log(|P_N(z)| / ‖P_N‖) / |κ(N)|`.
pub fn green_estimate(seq: &LejaSequence, sup_mesh: &Mesh, z: &Point, n: usize) -> Result<f64> {
    Ok(green_trace(seq, sup_mesh, z, n)?[n - 1].value)
}

/// Scalar quantity a histogram axis bins.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Projection {
    Real(usize),
    Imag(usize),
    /// Argument of `z_i − center` in `[0, 2π)`.
    Angle { coord: usize, center: Complex64 },
}

impl Projection {
    fn coord(&self) -> usize {
        match *self {
            Projection::Real(i) | Projection::Imag(i) | Projection::Angle { coord: i, .. } => i,
        }
    }

    fn apply(&self, pt: &Point) -> f64 {
        match *self {
            Projection::Real(i) => pt.coords()[i].re,
            Projection::Imag(i) => pt.coords()[i].im,
            Projection::Angle { coord, center } => {
                let a = (pt.coords()[coord] - center).arg();
                if a < 0.0 {
                    a + 2.0 * PI
                } else {
                    a
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AxisBins {
    pub projection: Projection,
    pub lo: f64,
    pub hi: f64,
    pub bins: usize,
}

impl AxisBins {
    pub fn new(projection: Projection, lo: f64, hi: f64, bins: usize) -> Self {
        AxisBins { projection, lo, hi, bins }
    }

    /// Full turn split into `bins` sectors around `center`.
    pub fn angle(coord: usize, center: Complex64, bins: usize) -> Self {
        Self::new(Projection::Angle { coord, center }, 0.0, 2.0 * PI, bins)
    }

    /// Half-open bins; the top edge is included in the last bin.
    fn index(&self, x: f64) -> Option<usize> {
        if !(x >= self.lo && x <= self.hi) {
            return None;
        }
        let t = (x - self.lo) / (self.hi - self.lo) * self.bins as f64;
        Some((t.floor() as usize).min(self.bins - 1))
    }

    pub fn edges(&self, i: usize) -> (f64, f64) {
        let w = (self.hi - self.lo) / self.bins as f64;
        (self.lo + w * i as f64, self.lo + w * (i + 1) as f64)
    }
}

/// Product grid of bins, one [`AxisBins`] per axis, flattened row-major.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HistogramSpec {
    pub axes: Vec<AxisBins>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Histogram {
    pub spec: HistogramSpec,
    pub masses: Vec<f64>,
    /// Mass of the points outside every bin.
    pub outside: f64,
}

impl Histogram {
    pub fn total(&self) -> f64 {
        self.masses.iter().sum::<f64>() + self.outside
    }

    /// Bin edges of every axis followed by the mass.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = Vec::new();
        for i in 1..=self.spec.axes.len() {
            header.push(format!("lo{i}"));
            header.push(format!("hi{i}"));
        }
        header.push("mass".into());
        w.write_record(&header)?;
        let dims: Vec<usize> = self.spec.axes.iter().map(|a| a.bins).collect();
        for (flat, m) in self.masses.iter().enumerate() {
            let mut rem = flat;
            let mut idx = vec![0; dims.len()];
            for (k, &n) in dims.iter().enumerate().rev() {
                idx[k] = rem % n;
                rem /= n;
            }
            let mut rec = Vec::new();
            for (ax, &i) in self.spec.axes.iter().zip(&idx) {
                let (lo, hi) = ax.edges(i);
                rec.push(lo.to_string());
                rec.push(hi.to_string());
            }
            rec.push(m.to_string());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Normalised counting measure of the first `h_d` points, binned.
pub fn counting_measure(seq: &LejaSequence, d: usize, spec: &HistogramSpec) -> Result<Histogram> {
    let p = seq.dimension();
    let h = dim_space(d, p);
    if h > seq.len() {
        return Err(Error::InvalidParameter(format!(
            "degree {d} needs {h} points, the sequence has {}",
            seq.len()
        )));
    }
    if spec.axes.is_empty() {
        return Err(Error::InvalidParameter("histogram needs at least one axis".into()));
    }
    for ax in &spec.axes {
        if ax.projection.coord() >= p || ax.bins == 0 || !(ax.lo < ax.hi) {
            return Err(Error::InvalidParameter(format!("invalid histogram axis {ax:?}")));
        }
    }
    let size: usize = spec.axes.iter().map(|a| a.bins).product();
    let mut masses = vec![0.0; size];
    let mut outside = 0.0;
    let w = 1.0 / h as f64;
    for pt in &seq.points[..h] {
        let idx: Option<usize> = spec
            .axes
            .iter()
            .try_fold(0usize, |acc, ax| ax.index(ax.projection.apply(pt)).map(|i| acc * ax.bins + i));
        match idx {
            Some(i) => masses[i] += w,
            None => outside += w,
        }
    }
    Ok(Histogram {
        spec: spec.clone(),
        masses,
        outside,
    })
}

/// `(d, value)` pairs as CSV.
pub fn write_degree_csv<W: Write>(rows: &[(usize, f64)], value: &str, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["d", value])?;
    for (d, v) in rows {
        w.write_record([d.to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_green_csv<W: Write>(rows: &[GreenValue], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "value", "running_max"])?;
    for g in rows {
        w.write_record([g.n.to_string(), g.value.to_string(), g.running_max.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
