//! Graded-lexicographic enumeration of multi-indices.
//!
//! Multi-indices `α ∈ N^p` are ordered by total degree first, and within a
//! degree block by the sign of the left-most non-zero entry of `α - β`
//! (ascending lexicographic order on compositions). For `p = 2` the order
//! starts `(0,0), (0,1), (1,0), (0,2), (1,1), (2,0), (0,3), ...`.
//!
//! [`kappa`] unranks an integer into this order, [`kappa_rank`] inverts it and
//! [`split_index`] splits a rank in `p1 + p2` variables into the ranks of the
//! two coordinate blocks.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Number of leading entries kept in the per-dimension lookup tables.
pub const MEMO_LEN: usize = 10_000;
const MEMO_MAX_P: usize = 8;

/// Exponent vector of a monomial with its cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    exponents: Vec<u32>,
    degree: u32,
}

impl MultiIndex {
    /// Builds a multi-index. Panics on an empty exponent vector.
    pub fn new(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "multi-index needs p >= 1 coordinates");
        let degree = exponents.iter().sum();
        MultiIndex { exponents, degree }
    }

    pub fn zero(p: usize) -> Self {
        Self::new(vec![0; p])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.exponents.len()
    }

    /// Concatenates two multi-indices (`(α, β)` in `N^{p1+p2}`).
    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut exponents = self.exponents.clone();
        exponents.extend_from_slice(&other.exponents);
        MultiIndex::new(exponents)
    }

    /// Splits after the first `p1` coordinates.
    pub fn split_at(&self, p1: usize) -> (MultiIndex, MultiIndex) {
        let (a, b) = self.exponents.split_at(p1);
        (MultiIndex::new(a.to_vec()), MultiIndex::new(b.to_vec()))
    }

    /// The successor of `self` in graded-lex order.
    pub fn successor(&self) -> MultiIndex {
        let mut e = self.exponents.clone();
        let p = e.len();
        if p == 1 {
            e[0] += 1;
            return MultiIndex::new(e);
        }
        let mut tail: u32 = e[p - 1];
        for i in (0..p - 1).rev() {
            if tail > 0 {
                e[i] += 1;
                for x in e.iter_mut().take(p - 1).skip(i + 1) {
                    *x = 0;
                }
                e[p - 1] = tail - 1;
                return MultiIndex::new(e);
            }
            tail += e[i];
        }
        // last element of the degree block: move to (0, ..., 0, d + 1)
        let d = self.degree;
        let mut next = vec![0; p];
        next[p - 1] = d + 1;
        MultiIndex::new(next)
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents)
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    /// Graded lexicographic comparison. Indices of different dimension are
    /// compared by dimension first so that the order stays total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.dimension()
            .cmp(&other.dimension())
            .then(self.degree.cmp(&other.degree))
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

/// Checked binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 - k as u128 + i) / i;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// `h_d = C(p + d, d)`, the dimension of polynomials of total degree `≤ d`.
pub fn try_dim_space(d: u64, p: usize) -> Result<u64> {
    let overflow = || Error::Overflow {
        what: "dim_space",
        degree: d,
        dimension: p,
    };
    let top = (p as u64).checked_add(d).ok_or_else(overflow)?;
    binomial(top, d).ok_or_else(overflow)
}

/// `h_d` as a `usize`. Overflow is a hard error and panics.
pub fn dim_space(d: usize, p: usize) -> usize {
    let h = try_dim_space(d as u64, p).unwrap_or_else(|e| panic!("{e}"));
    usize::try_from(h).expect("dim_space exceeds usize")
}

/// `l_d = p · C(p + d, p + 1)`, the total degree of the Vandermonde
/// determinant of `h_d` points.
pub fn try_vdm_degree(d: u64, p: usize) -> Result<u64> {
    let overflow = || Error::Overflow {
        what: "vdm_degree",
        degree: d,
        dimension: p,
    };
    let top = (p as u64).checked_add(d).ok_or_else(overflow)?;
    binomial(top, p as u64 + 1)
        .and_then(|b| b.checked_mul(p as u64))
        .ok_or_else(overflow)
}

/// `l_d` as a `u64`; panics on overflow.
pub fn vdm_degree(d: usize, p: usize) -> u64 {
    try_vdm_degree(d as u64, p).unwrap_or_else(|e| panic!("{e}"))
}

/// Number of compositions of `s` into `parts` non-negative parts.
fn compositions(s: u64, parts: usize) -> u64 {
    if parts == 0 {
        return u64::from(s == 0);
    }
    binomial(s + parts as u64 - 1, parts as u64 - 1).expect("composition count overflow")
}

/// Direct combinatorial unranking, no table lookup.
fn unrank(n: u64, p: usize) -> MultiIndex {
    assert!(p >= 1, "kappa requires p >= 1");
    if p == 1 {
        return MultiIndex::new(vec![u32::try_from(n).expect("exponent overflow")]);
    }
    // locate the degree block: h_{d-1} <= n < h_d
    let mut d: u64 = 0;
    let mut below: u64 = 0;
    loop {
        let block = compositions(d, p);
        if n < below + block {
            break;
        }
        below += block;
        d += 1;
    }
    let mut r = n - below;
    let mut remaining = d;
    let mut exps = Vec::with_capacity(p);
    for i in 0..p - 1 {
        let parts = p - 1 - i;
        let mut a = 0;
        loop {
            let cnt = compositions(remaining - a, parts);
            if r < cnt {
                break;
            }
            r -= cnt;
            a += 1;
        }
        exps.push(a as u32);
        remaining -= a;
    }
    exps.push(remaining as u32);
    MultiIndex::new(exps)
}

fn memo_table(p: usize) -> Option<&'static [MultiIndex]> {
    static TABLES: [OnceLock<Vec<MultiIndex>>; MEMO_MAX_P] = [const { OnceLock::new() }; MEMO_MAX_P];
    if p == 0 || p > MEMO_MAX_P {
        return None;
    }
    let table = TABLES[p - 1].get_or_init(|| {
        let mut out = Vec::with_capacity(MEMO_LEN);
        let mut cur = MultiIndex::zero(p);
        for _ in 0..MEMO_LEN {
            let next = cur.successor();
            out.push(cur);
            cur = next;
        }
        out
    });
    Some(table.as_slice())
}

/// The `n`-th multi-index of `N^p` in graded-lex order.
pub fn kappa(n: usize, p: usize) -> MultiIndex {
    assert!(p >= 1, "kappa requires p >= 1");
    if n < MEMO_LEN {
        if let Some(t) = memo_table(p) {
            return t[n].clone();
        }
    }
    unrank(n as u64, p)
}

/// The first `n` multi-indices in `p` variables.
pub fn kappa_prefix(p: usize, n: usize) -> Cow<'static, [MultiIndex]> {
    if n <= MEMO_LEN {
        if let Some(t) = memo_table(p) {
            return Cow::Borrowed(&t[..n]);
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut cur = MultiIndex::zero(p);
    for _ in 0..n {
        let next = cur.successor();
        out.push(cur);
        cur = next;
    }
    Cow::Owned(out)
}

/// Inverse of [`kappa`].
pub fn kappa_rank(alpha: &MultiIndex) -> usize {
    let p = alpha.dimension();
    let d = alpha.degree() as u64;
    if p == 1 {
        return d as usize;
    }
    let mut rank: u64 = if d == 0 {
        0
    } else {
        try_dim_space(d - 1, p).expect("rank overflow")
    };
    let mut remaining = d;
    for (i, &a) in alpha.exponents()[..p - 1].iter().enumerate() {
        let parts = p - 1 - i;
        for b in 0..a as u64 {
            rank += compositions(remaining - b, parts);
        }
        remaining -= a as u64;
    }
    usize::try_from(rank).expect("rank exceeds usize")
}

/// Ranks of the two coordinate blocks of `κ^{(p1+p2)}(j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndexSplit {
    pub phi1: usize,
    pub phi2: usize,
}

/// `φ(j) = (φ1, φ2)` with `κ^{(p1+p2)}(j) = (κ^{(p1)}(φ1), κ^{(p2)}(φ2))`.
pub fn split_index(j: usize, p1: usize, p2: usize) -> IndexSplit {
    assert!(p1 >= 1 && p2 >= 1, "split_index requires p1, p2 >= 1");
    let (a, b) = kappa(j, p1 + p2).split_at(p1);
    IndexSplit {
        phi1: kappa_rank(&a),
        phi2: kappa_rank(&b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn kappa_two_variables_matches_listing() {
        let expect = [[0, 0], [0, 1], [1, 0], [0, 2], [1, 1], [2, 0], [0, 3]];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(kappa(n, 2), mi(e), "n = {n}");
        }
    }

    #[test]
    fn kappa_one_variable_is_identity() {
        for n in [0, 1, 7, 12_345, 1_000_000] {
            assert_eq!(kappa(n, 1), mi(&[n as u32]));
        }
    }

    #[test]
    fn kappa_three_variables_degree_two_block() {
        // h_1 = 4 in three variables, so the degree-2 block starts at 4
        assert_eq!(kappa(4, 3), mi(&[0, 0, 2]));
        assert_eq!(kappa(6, 3), mi(&[0, 2, 0]));
        assert_eq!(kappa_rank(&mi(&[2, 0, 0])), 9);
        assert_eq!(kappa_rank(&mi(&[1, 1])), 4);
        assert_eq!(kappa_rank(&mi(&[0, 0, 0, 0])), 0);
    }

    #[test]
    fn dims_and_vdm_degrees() {
        assert_eq!(dim_space(2, 2), 6);
        assert_eq!(dim_space(0, 5), 1);
        assert_eq!(dim_space(3, 2), 10);
        assert_eq!(vdm_degree(2, 2), 8);
        assert_eq!(vdm_degree(1, 2), 2);
        for d in 0..20 {
            assert_eq!(vdm_degree(d, 1), (d * (d + 1) / 2) as u64);
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(
            try_dim_space(1_000, 40),
            Err(Error::Overflow { .. })
        ));
        assert!(try_vdm_degree(u64::MAX, 2).is_err());
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_index(0, 1, 1), IndexSplit { phi1: 0, phi2: 0 });
        assert_eq!(split_index(2, 1, 1), IndexSplit { phi1: 1, phi2: 0 });
        assert_eq!(split_index(4, 1, 1), IndexSplit { phi1: 1, phi2: 1 });
    }

    #[test]
    fn table_and_direct_unranking_agree() {
        for p in 1..=4 {
            let t = kappa_prefix(p, MEMO_LEN);
            for n in (0..MEMO_LEN).step_by(37) {
                assert_eq!(t[n], unrank(n as u64, p));
            }
        }
        // past the memo boundary
        let a = kappa(MEMO_LEN + 5, 3);
        assert_eq!(kappa_rank(&a), MEMO_LEN + 5);
        let big = kappa(1_000_000, 4);
        assert_eq!(kappa_rank(&big), 1_000_000);
    }

    #[test]
    fn concurrent_reads_agree() {
        let handles: Vec<_> = (0..4)
            .map(|_| std::thread::spawn(|| (0..2000).map(|n| kappa(n, 5)).collect::<Vec<_>>()))
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }
}
