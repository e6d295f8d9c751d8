//! Built-in compact sets addressed by short string specs:
//!
//! * `interval:a,b`
//! * `circle:cx,cy,r` (a disk is represented by its boundary circle, which
//!   carries the same sup norms by the maximum principle)
//! * `square:a,b`, the product `[a, b] × [a, b]`
//! * `product:S1×S2` (also `S1*S2`), with nested specs
//!
//! Each set produces the degree-indexed mesh family used by pseudo-Leja
//! generation and finer validation meshes for verification.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::meshes::{circle_mesh, interval_mesh, product_mesh, Mesh};

#[derive(Clone, Debug, PartialEq)]
pub enum CompactSet {
    Interval { a: f64, b: f64 },
    Circle { center: Complex64, radius: f64 },
    Product(Box<CompactSet>, Box<CompactSet>),
}

impl CompactSet {
    pub fn square(a: f64, b: f64) -> Self {
        let i = CompactSet::Interval { a, b };
        CompactSet::Product(Box::new(i.clone()), Box::new(i))
    }

    pub fn dimension(&self) -> usize {
        match self {
            CompactSet::Interval { .. } | CompactSet::Circle { .. } => 1,
            CompactSet::Product(x, y) => x.dimension() + y.dimension(),
        }
    }

    /// Mesh valid for degree `d`. Intervals use `ceil(oversample·d²) + 1`
    /// Chebyshev–Lobatto points and circles `4·ceil(oversample·d)` equispaced
    /// points; degree 0 reuses the degree-1 mesh.
    pub fn mesh(&self, d: usize, oversample: f64) -> Result<Mesh> {
        let d = d.max(1);
        match self {
            CompactSet::Interval { a, b } => interval_mesh(*a, *b, d, oversample),
            CompactSet::Circle { center, radius } => {
                if !(oversample >= 1.0 && oversample.is_finite()) {
                    return Err(Error::InvalidParameter(format!("oversample {oversample} must be >= 1")));
                }
                let count = 4 * (oversample * d as f64).ceil() as usize;
                circle_mesh(*center, *radius, count)
            }
            CompactSet::Product(x, y) => product_mesh(&x.mesh(d, oversample)?, &y.mesh(d, oversample)?),
        }
    }

    /// Mesh `factor` times finer than [`CompactSet::mesh`] in every
    /// coordinate.
    pub fn validation_mesh(&self, d: usize, oversample: f64, factor: f64) -> Result<Mesh> {
        self.mesh(d, oversample * factor)
    }
}

impl fmt::Display for CompactSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompactSet::Interval { a, b } => write!(f, "interval:{a},{b}"),
            CompactSet::Circle { center, radius } => write!(f, "circle:{},{},{radius}", center.re, center.im),
            CompactSet::Product(x, y) => match (x.as_ref(), y.as_ref()) {
                (CompactSet::Interval { a, b }, CompactSet::Interval { a: c, b: d }) if a == c && b == d => {
                    write!(f, "square:{a},{b}")
                }
                _ => write!(f, "product:{x}×{y}"),
            },
        }
    }
}

fn numbers(s: &str, n: usize, spec: &str) -> Result<Vec<f64>> {
    let vals: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::InvalidParameter(format!("set spec '{spec}': {e}")))?;
    if vals.len() != n || vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "set spec '{spec}' needs {n} finite numbers"
        )));
    }
    Ok(vals)
}

/// Splits `S1×S2` at the separator that leaves the first part a complete
/// spec; nested products bind to the right.
fn split_product(body: &str) -> Option<(&str, &str)> {
    body.char_indices()
        .filter(|&(_, c)| c == '×' || c == '*')
        .find_map(|(i, c)| {
            let (l, r) = (&body[..i], &body[i + c.len_utf8()..]);
            l.parse::<CompactSet>().ok().map(|_| (l, r))
        })
}

impl FromStr for CompactSet {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (kind, body) = spec
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameter(format!("set spec '{spec}' lacks a 'kind:' prefix")))?;
        match kind {
            "interval" | "square" => {
                let v = numbers(body, 2, spec)?;
                if v[0] >= v[1] {
                    return Err(Error::InvalidParameter(format!("set spec '{spec}': need a < b")));
                }
                Ok(if kind == "interval" {
                    CompactSet::Interval { a: v[0], b: v[1] }
                } else {
                    CompactSet::square(v[0], v[1])
                })
            }
            "circle" => {
                let v = numbers(body, 3, spec)?;
                if v[2] <= 0.0 {
                    return Err(Error::InvalidParameter(format!("set spec '{spec}': radius must be positive")));
                }
                Ok(CompactSet::Circle {
                    center: Complex64::new(v[0], v[1]),
                    radius: v[2],
                })
            }
            "product" => {
                let (l, r) = split_product(body)
                    .ok_or_else(|| Error::InvalidParameter(format!("set spec '{spec}': expected S1×S2")))?;
                Ok(CompactSet::Product(Box::new(l.parse()?), Box::new(r.parse()?)))
            }
            other => Err(Error::InvalidParameter(format!("unknown set kind '{other}'"))),
        }
    }
}
