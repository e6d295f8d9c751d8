//! Finite candidate sets (admissible meshes) on standard compact sets.
//!
//! A [`Mesh`] is determining for polynomials of degree at most
//! `valid_degree` and may carry a norming constant `growth_bound`:
//! `‖P‖_K <= growth_bound · max_{mesh} |P|` for every such polynomial.
//! Built-in generators record bounds from classical sampling inequalities;
//! user-supplied meshes carry none unless the file declares one.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomials::try_dim_space;
use crate::point::{common_dimension, Point};

/// Default cap on the cardinality of [`product_mesh`].
pub const PRODUCT_CAP: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Mesh {
    points: Vec<Point>,
    p: usize,
    valid_degree: usize,
    growth_bound: Option<f64>,
    label: String,
}

impl Mesh {
    /// Validates dimensions, finiteness, the cardinality requirement
    /// `|points| >= h_d` and `growth_bound >= 1`.
    pub fn new(points: Vec<Point>, valid_degree: usize, growth_bound: Option<f64>, label: impl Into<String>) -> Result<Self> {
        let p = common_dimension(&points)?;
        if let Some(i) = points.iter().position(|pt| !pt.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        let needed = try_dim_space(valid_degree as u64, p)?;
        if (points.len() as u64) < needed {
            return Err(Error::TooFewPoints {
                found: points.len(),
                needed,
                degree: valid_degree,
                dimension: p,
            });
        }
        if let Some(m) = growth_bound {
            if !(m >= 1.0 && m.is_finite()) {
                return Err(Error::InvalidParameter(format!("growth bound {m} must be a finite number >= 1")));
            }
        }
        Ok(Mesh {
            points,
            p,
            valid_degree,
            growth_bound,
            label: label.into(),
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.p
    }

    pub fn valid_degree(&self) -> usize {
        self.valid_degree
    }

    pub fn growth_bound(&self) -> Option<f64> {
        self.growth_bound
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }
}

/// `sin(π·num/den)` and `cos(π·num/den)` for the rational angle, exact at
/// multiples of `π/2` and symmetric under the quadrant reflections.
fn rational_angle(num: i64, den: i64) -> Complex64 {
    // work in units of π/2: angle = (2·num/den)·(π/2)
    let t = 2 * num;
    let q = t.div_euclid(den);
    let r = t.rem_euclid(den);
    let (c, s) = if r == 0 {
        (1.0, 0.0)
    } else if 2 * r == den {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        (h, h)
    } else if 2 * r < den {
        let th = FRAC_PI_2 * r as f64 / den as f64;
        (th.cos(), th.sin())
    } else {
        // reflect about π/4 so both halves of the quadrant share one formula
        let th = FRAC_PI_2 * (den - r) as f64 / den as f64;
        (th.sin(), th.cos())
    };
    match q.rem_euclid(4) {
        0 => Complex64::new(c, s),
        1 => Complex64::new(-s, c),
        2 => Complex64::new(-c, -s),
        _ => Complex64::new(s, -c),
    }
}

/// `e^{2πik/n}`, exact at the quarter turns.
pub fn unit_root(k: usize, n: usize) -> Complex64 {
    rational_angle(2 * k as i64, n as i64)
}

/// The `m + 1` Chebyshev–Lobatto points `cos(kπ/m)` mapped to `[a, b]`,
/// starting at `b`. The nodes are computed as `sin(π(m − 2k)/(2m))`, which
/// is exactly symmetric and exact at `0` and `±1`.
pub fn lobatto_points(a: f64, b: f64, m: usize) -> Vec<f64> {
    assert!(m >= 1);
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    (0..=m)
        .map(|k| {
            let num = m as i64 - 2 * k as i64;
            let x = if 2 * num.abs() == 2 * m as i64 {
                num.signum() as f64
            } else if num == 0 {
                0.0
            } else {
                (PI * num as f64 / (2 * m) as f64).sin()
            };
            c + h * x
        })
        .collect()
}

/// Chebyshev–Lobatto mesh with `ceil(oversample·d²) + 1` points on `[a, b]`.
///
/// The recorded bound `1/cos(πd/(2m))` is the classical sampling inequality
/// for degree-`d` polynomials on `m + 1` Chebyshev–Lobatto nodes.
pub fn interval_mesh(a: f64, b: f64, d: usize, oversample: f64) -> Result<Mesh> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidParameter(format!("degenerate interval [{a}, {b}]")));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("interval mesh degree must be >= 1".into()));
    }
    if !(oversample >= 1.0 && oversample.is_finite()) {
        return Err(Error::InvalidParameter(format!("oversample {oversample} must be >= 1")));
    }
    let m = (oversample * (d * d) as f64).ceil() as usize;
    let m = m.max(d + 1);
    let points = lobatto_points(a, b, m).into_iter().map(|x| Point::real(&[x])).collect();
    let bound = 1.0 / (PI * d as f64 / (2 * m) as f64).cos();
    Mesh::new(
        points,
        d,
        Some(bound),
        format!("interval [{a}, {b}], {} Chebyshev-Lobatto points, classical grid bound", m + 1),
    )
}

/// `count` equispaced points on a circle.
///
/// `valid_degree = floor(count / 4)`. The recorded bound
/// `sqrt(sec(π·d/count))` comes from the sampling inequality for the
/// trigonometric polynomial `|P|²` of degree `d` on `count` equispaced nodes.
pub fn circle_mesh(center: Complex64, radius: f64, count: usize) -> Result<Mesh> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius {radius} must be positive")));
    }
    if count < 2 {
        return Err(Error::InvalidParameter("circle mesh needs at least 2 points".into()));
    }
    let points = (0..count)
        .map(|k| Point::scalar(center + radius * unit_root(k, count)))
        .collect();
    let d = count / 4;
    let bound = if d == 0 {
        1.0
    } else {
        (1.0 / (PI * d as f64 / count as f64).cos()).sqrt()
    };
    Mesh::new(
        points,
        d,
        Some(bound),
        format!("circle center {center} radius {radius}, {count} equispaced points"),
    )
}

/// Cartesian product with the default cardinality cap.
pub fn product_mesh(m1: &Mesh, m2: &Mesh) -> Result<Mesh> {
    product_mesh_capped(m1, m2, PRODUCT_CAP)
}

/// Cartesian product, first factor varying slowest. Growth bounds multiply
/// because the sup norm on a product grid can be taken one coordinate block
/// at a time.
pub fn product_mesh_capped(m1: &Mesh, m2: &Mesh, cap: usize) -> Result<Mesh> {
    let total = (m1.len() as u128) * (m2.len() as u128);
    if total > cap as u128 {
        return Err(Error::MeshTooLarge(total, cap));
    }
    let mut points = Vec::with_capacity(total as usize);
    for a in &m1.points {
        for b in &m2.points {
            points.push(a.concat(b));
        }
    }
    let bound = m1.growth_bound.zip(m2.growth_bound).map(|(x, y)| x * y);
    Mesh::new(
        points,
        m1.valid_degree.min(m2.valid_degree),
        bound,
        format!("({}) x ({})", m1.label, m2.label),
    )
}

/// JSON wire form shared by meshes and sequences.
pub(crate) type WirePoint = Vec<[f64; 2]>;

pub(crate) fn to_wire(points: &[Point]) -> Vec<WirePoint> {
    points
        .iter()
        .map(|pt| pt.coords().iter().map(|c| [c.re, c.im]).collect())
        .collect()
}

pub(crate) fn from_wire(points: Vec<WirePoint>, p: usize) -> Result<Vec<Point>> {
    points
        .into_iter()
        .enumerate()
        .map(|(i, coords)| {
            if coords.len() != p {
                return Err(Error::DimensionMismatch {
                    expected: p,
                    found: coords.len(),
                });
            }
            Point::try_new(coords.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
                .map_err(|_| Error::NonFinite { index: i })
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct MeshFile {
    p: usize,
    degree: usize,
    growth_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    points: Vec<WirePoint>,
}

/// File format, chosen from the extension by [`Format::from_path`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

pub fn mesh_to_json(mesh: &Mesh) -> Result<String> {
    Ok(serde_json::to_string(&MeshFile {
        p: mesh.p,
        degree: mesh.valid_degree,
        growth_bound: mesh.growth_bound,
        label: Some(mesh.label.clone()),
        points: to_wire(&mesh.points),
    })?)
}

pub fn mesh_from_json(text: &str) -> Result<Mesh> {
    let f: MeshFile = serde_json::from_str(text)?;
    let points = from_wire(f.points, f.p)?;
    Mesh::new(points, f.degree, f.growth_bound, f.label.unwrap_or_else(|| "loaded mesh".into()))
}

/// One point per row, real and imaginary parts interleaved.
pub fn write_points_csv<W: Write>(points: &[Point], out: W) -> Result<()> {
    let p = common_dimension(points)?;
    let mut w = csv::Writer::from_writer(out);
    let header: Vec<String> = (1..=p).flat_map(|i| [format!("re{i}"), format!("im{i}")]).collect();
    w.write_record(&header)?;
    for pt in points {
        w.write_record(pt.coords().iter().flat_map(|c| [c.re.to_string(), c.im.to_string()]))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_points_csv<R: Read>(input: R) -> Result<Vec<Point>> {
    let mut r = csv::Reader::from_reader(input);
    let width = r.headers()?.len();
    if width == 0 || width % 2 != 0 {
        return Err(Error::InvalidParameter(format!("CSV needs an even number of columns, found {width}")));
    }
    let mut points = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let vals: Vec<f64> = rec
            .iter()
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidParameter(format!("row {}: {e}", i + 1)))?;
        let coords = vals.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
        points.push(Point::try_new(coords).map_err(|_| Error::NonFinite { index: i })?);
    }
    Ok(points)
}

/// Largest `d` with `dim_space(d, p) <= count`.
fn inferred_degree(count: usize, p: usize) -> usize {
    let mut d = 0;
    while try_dim_space(d as u64 + 1, p).is_ok_and(|h| h <= count as u64) {
        d += 1;
    }
    d
}

/// Reads a mesh file; the format follows the extension. CSV files carry no
/// metadata, so the degree is the largest one the cardinality allows and no
/// growth bound is recorded.
pub fn load_mesh(path: &Path) -> Result<Mesh> {
    let parse = |e: Error| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    match Format::from_path(path) {
        Format::Json => {
            let mut text = String::new();
            BufReader::new(File::open(path)?).read_to_string(&mut text)?;
            mesh_from_json(&text).map_err(parse)
        }
        Format::Csv => {
            let points = read_points_csv(BufReader::new(File::open(path)?)).map_err(parse)?;
            let p = common_dimension(&points).map_err(parse)?;
            let d = inferred_degree(points.len(), p);
            Mesh::new(points, d, None, format!("loaded from {}", path.display())).map_err(parse)
        }
    }
}

pub fn save_mesh(mesh: &Mesh, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    match Format::from_path(path) {
        Format::Json => out.write_all(mesh_to_json(mesh)?.as_bytes())?,
        Format::Csv => write_points_csv(&mesh.points, &mut out)?,
    }
    out.flush()?;
    Ok(())
}
