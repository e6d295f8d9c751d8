//! Row-pivoted Gaussian elimination on rectangular Vandermonde matrices.
//!
//! Rows are points, columns are basis functions. After `k` elimination steps
//! the entry of a remaining row in column `k` is `c_k · P_k(a)`, the residual
//! of the `k`-th basis function after interpolation at the `k` pivot points.
//! Choosing the row of largest modulus is therefore the greedy Vandermonde
//! maximisation step. The first `n_forced` rows are taken as pivots in their
//! given order, which re-eliminates previously accepted points when the
//! candidate set changes.
//!
//! The update is blocked by column panels: pivot search only needs the
//! current column, so the trailing columns are brought up to date once per
//! panel instead of once per step.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const PANEL: usize = 32;
const PAR_MIN_ROWS: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Tolerances {
    /// Candidates within this relative distance of the largest pivot are tied.
    pub tie: f64,
    /// A pivot is zero when `|pivot| <= singular * max |column entry|`.
    pub singular: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tie: 1e-10,
            singular: 1e-12,
        }
    }
}

/// Dense row-major matrix of basis values plus tie-breaking ids.
pub(crate) struct Elimination<S> {
    data: Vec<S>,
    ids: Vec<usize>,
    n_cols: usize,
    col_scale: Vec<f64>,
}

/// Pivot rows of a completed elimination. Row `k` holds the multipliers of
/// the pivot point against pivots `0..k` in columns `< k` and its residual
/// values in columns `>= k`.
#[derive(Clone, Debug)]
pub(crate) struct Factors<S> {
    pub n_cols: usize,
    pub order: Vec<usize>,
    pub rows: Vec<S>,
}

impl<S: Scalar> Factors<S> {
    pub fn row(&self, k: usize) -> &[S] {
        &self.rows[k * self.n_cols..(k + 1) * self.n_cols]
    }

    pub fn pivot(&self, k: usize) -> S {
        self.rows[k * self.n_cols + k]
    }
}

impl<S: Scalar> Elimination<S> {
    /// `data` holds `ids.len()` rows of `n_cols` values.
    pub fn new(data: Vec<S>, ids: Vec<usize>, n_cols: usize) -> Self {
        assert_eq!(data.len(), ids.len() * n_cols);
        let mut col_scale = vec![0.0f64; n_cols];
        for row in data.chunks_exact(n_cols.max(1)) {
            for (s, v) in col_scale.iter_mut().zip(row) {
                *s = s.max(v.modulus());
            }
        }
        Elimination {
            data,
            ids,
            n_cols,
            col_scale,
        }
    }

    fn n_rows(&self) -> usize {
        self.ids.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.n_cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * n);
        head[lo * n..(lo + 1) * n].swap_with_slice(&mut tail[..n]);
        self.ids.swap(a, b);
    }

    /// Lowest-id row among those within the tie tolerance of the largest
    /// modulus in column `k`, searching rows `k..`.
    fn select(&self, k: usize, tol: &Tolerances) -> Result<usize> {
        let n = self.n_cols;
        let rows = k..self.n_rows();
        let best = rows
            .clone()
            .map(|i| self.data[i * n + k].modulus())
            .fold(0.0f64, f64::max);
        let scale = self.col_scale[k];
        if !(best > tol.singular * scale) {
            return Err(Error::Degenerate {
                step: k,
                residual: best,
                scale,
            });
        }
        let cut = best * (1.0 - tol.tie);
        let mut pick: Option<usize> = None;
        for i in rows {
            if self.data[i * n + k].modulus() >= cut && pick.is_none_or(|p| self.ids[i] < self.ids[p]) {
                pick = Some(i);
            }
        }
        Ok(pick.expect("a maximiser exists"))
    }

    /// Runs `n_steps` elimination steps; the first `n_forced` pivots are the
    /// leading rows in order, the rest are chosen greedily.
    pub fn run(mut self, n_forced: usize, n_steps: usize, tol: &Tolerances) -> Result<Factors<S>> {
        let n = self.n_cols;
        let n_rows = self.n_rows();
        assert!(n_forced <= n_steps && n_steps <= n, "invalid step counts");
        if n_steps > n_rows {
            return Err(Error::InvalidParameter(format!(
                "{n_steps} pivots requested from {n_rows} rows"
            )));
        }
        let mut prow = vec![S::ZERO; n];
        let mut k0 = 0;
        while k0 < n_steps {
            let k1 = (k0 + PANEL).min(n_steps);
            for k in k0..k1 {
                let p = if k < n_forced {
                    let r = self.data[k * n + k].modulus();
                    if !(r > tol.singular * self.col_scale[k]) {
                        return Err(Error::Degenerate {
                            step: k,
                            residual: r,
                            scale: self.col_scale[k],
                        });
                    }
                    k
                } else {
                    self.select(k, tol)?
                };
                self.swap_rows(k, p);
                prow[k..k1].copy_from_slice(&self.data[k * n + k..k * n + k1]);
                let piv = prow[k];
                let upd = |row: &mut [S]| {
                    let m = row[k] / piv;
                    row[k] = m;
                    if m != S::ZERO {
                        for (x, u) in row[k + 1..k1].iter_mut().zip(&prow[k + 1..k1]) {
                            *x -= m * *u;
                        }
                    }
                };
                let below = &mut self.data[(k + 1) * n..];
                if n_rows - k - 1 >= PAR_MIN_ROWS {
                    below.par_chunks_mut(n).with_min_len(PAR_MIN_ROWS).for_each(upd);
                } else {
                    below.chunks_mut(n).for_each(upd);
                }
            }
            if k1 < n {
                // bring the pivot rows of the panel up to date in the trailing columns
                for s in k0..k1 {
                    let (head, tail) = self.data.split_at_mut((s + 1) * n);
                    let srow = &head[s * n + k1..(s + 1) * n];
                    for t in s + 1..k1 {
                        let trow = &mut tail[(t - s - 1) * n..(t - s) * n];
                        let m = trow[s];
                        if m != S::ZERO {
                            for (x, u) in trow[k1..].iter_mut().zip(srow) {
                                *x -= m * *u;
                            }
                        }
                    }
                }
                // and the remaining rows, unless no further step needs them
                if k1 < n_steps {
                    let w = n - k1;
                    let mut ublk = Vec::with_capacity((k1 - k0) * w);
                    for s in k0..k1 {
                        ublk.extend_from_slice(&self.data[s * n + k1..(s + 1) * n]);
                    }
                    let upd = |row: &mut [S]| {
                        for s in k0..k1 {
                            let m = row[s];
                            if m != S::ZERO {
                                let u = &ublk[(s - k0) * w..(s - k0 + 1) * w];
                                for (x, v) in row[k1..].iter_mut().zip(u) {
                                    *x -= m * *v;
                                }
                            }
                        }
                    };
                    let rest = &mut self.data[k1 * n..];
                    if n_rows - k1 >= PAR_MIN_ROWS {
                        rest.par_chunks_mut(n).with_min_len(PAR_MIN_ROWS / 4).for_each(upd);
                    } else {
                        rest.chunks_mut(n).for_each(upd);
                    }
                }
            }
            k0 = k1;
        }
        self.data.truncate(n_steps * n);
        self.ids.truncate(n_steps);
        Ok(Factors {
            n_cols: n,
            order: self.ids,
            rows: self.data,
        })
    }
}

/// Eliminates a row of basis values against the first `steps` pivot rows.
///
/// On return `row[s]` (`s < steps`) holds the multiplier of pivot `s` and
/// `trace[s]` the residual in column `s` just before step `s`, i.e.
/// `c_s · P_s(z)`; `trace[steps]` is the residual in column `steps` when it
/// exists. Only columns `< upto` are touched.
pub(crate) fn eliminate_row<S: Scalar>(
    factors: &Factors<S>,
    steps: usize,
    upto: usize,
    row: &mut [S],
    trace: &mut [S],
) {
    let n = factors.n_cols;
    for s in 0..steps {
        let r = row[s];
        trace[s] = r;
        let urow = &factors.rows[s * n..(s + 1) * n];
        let m = r / urow[s];
        row[s] = m;
        if m != S::ZERO {
            for (x, u) in row[s + 1..upto].iter_mut().zip(&urow[s + 1..upto]) {
                *x -= m * *u;
            }
        }
    }
    if steps < upto {
        trace[steps] = row[steps];
    }
}
