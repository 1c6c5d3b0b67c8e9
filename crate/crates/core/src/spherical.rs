//! Hilbert series of the lift of the trivial orbit for `SL(m)` acting on
//! pairs of `n x m` matrices, from the `GL(n)` weight decomposition, with a
//! brute-force check through exact linear algebra on monomials.
//!
//! The grading is the one of `W` (degree `|a| + |b|` for the pair of
//! partitions `(a, b)`), not the Plücker grading on `X`, which is `m` times
//! coarser.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{int, rank, rref, Rational, RationalMatrix};

/// A weakly decreasing sequence of nonnegative integers. Trailing zeros are
/// dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Request(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The parts padded with zeros to length `m`, or `None` if longer.
    pub fn padded(&self, m: usize) -> Option<Vec<usize>> {
        (self.len() <= m).then(|| {
            let mut v = self.parts.clone();
            v.resize(m, 0);
            v
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JoinedWeight {
    pub n: usize,
    pub entries: Vec<i64>,
}

/// `(a, 0, ..., 0, -b_last, ..., -b_1)` of length `n`.
pub fn joined_weight(a: &Partition, b: &Partition, n: usize) -> Result<JoinedWeight> {
    if a.len() + b.len() > n {
        return Err(Error::DimensionBound(format!(
            "joining partitions of lengths {} and {} needs n >= {}, got {n}",
            a.len(),
            b.len(),
            a.len() + b.len()
        )));
    }
    let mut entries = vec![0i64; n];
    for (i, &p) in a.parts().iter().enumerate() {
        entries[i] = p as i64;
    }
    for (j, &p) in b.parts().iter().enumerate() {
        entries[n - 1 - j] = -(p as i64);
    }
    Ok(JoinedWeight { n, entries })
}

/// The common value `k` of `a_i + b_(m-i+1)`, if there is one.
pub fn sl_invariant_pair(a: &Partition, b: &Partition, m: usize) -> Option<usize> {
    let (a, b) = (a.padded(m)?, b.padded(m)?);
    let sums: Vec<usize> = (0..m).map(|i| a[i] + b[m - 1 - i]).collect();
    match sums.first() {
        None => Some(0),
        Some(&k) => sums.iter().all(|&s| s == k).then_some(k),
    }
}

/// Weyl dimension formula for `GL(n)`.
pub fn weyl_dim(w: &JoinedWeight) -> BigInt {
    let l = &w.entries;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            num *= BigInt::from(l[i] - l[j] + (j - i) as i64);
            den *= BigInt::from((j - i) as i64);
        }
    }
    num / den
}

/// Partitions with at most `m` parts, each at most `k`.
fn box_partitions(m: usize, k: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    // weakly decreasing sequences are multisets of {0..=k}
    (0..=k).rev().combinations_with_replacement(m).collect()
}

/// One summand of the degree-`d` piece: the pair of partitions and its weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTerm {
    pub alpha: Partition,
    pub beta: Partition,
    pub weight: JoinedWeight,
    pub dim: BigInt,
}

/// The summands contributing in degree `d`; empty unless `m` divides `d`.
pub fn hilbert_terms(n: usize, m: usize, d: usize) -> Result<Vec<HilbertTerm>> {
    if m == 0 || !d.is_multiple_of(m) {
        let trivial = d == 0;
        return Ok(if trivial {
            vec![HilbertTerm {
                alpha: Partition::empty(),
                beta: Partition::empty(),
                weight: joined_weight(&Partition::empty(), &Partition::empty(), n)?,
                dim: BigInt::one(),
            }]
        } else {
            Vec::new()
        });
    }
    let k = d / m;
    let mut out = Vec::new();
    for a in box_partitions(m, k) {
        let b: Vec<usize> = (0..m).map(|j| k - a[m - 1 - j]).collect();
        let alpha = Partition::new(a)?;
        let beta = Partition::new(b)?;
        if alpha.len() + beta.len() > n {
            continue;
        }
        debug_assert_eq!(sl_invariant_pair(&alpha, &beta, m), Some(k));
        let weight = joined_weight(&alpha, &beta, n)?;
        let dim = weyl_dim(&weight);
        out.push(HilbertTerm {
            alpha,
            beta,
            weight,
            dim,
        });
    }
    Ok(out)
}

/// Coefficients for `d = 0..=d_max`. For `n < 2m`, pairs whose joined weight
/// does not fit in length `n` are left out.
pub fn hilbert_trivial_lift(n: usize, m: usize, d_max: usize) -> Result<Vec<BigInt>> {
    (0..=d_max)
        .map(|d| Ok(hilbert_terms(n, m, d)?.into_iter().map(|t| t.dim).sum()))
        .collect()
}

pub const ORACLE_MAX_VARIABLES: usize = 10;
pub const ORACLE_MAX_DEGREE: usize = 5;

type Monomial = Vec<u8>;

fn monomials(vars: usize, d: usize) -> Vec<Monomial> {
    (0..vars)
        .combinations_with_replacement(d)
        .map(|c| {
            let mut e = vec![0u8; vars];
            for v in c {
                e[v] += 1;
            }
            e
        })
        .collect()
}

/// Dimension of the `SL(m)`-invariants in degree `d` of `Q[A, B] / (ᵗA B)`,
/// for `A, B` of size `n x m`, by direct linear algebra on monomials.
pub fn oracle_invariant_dim(n: usize, m: usize, d: usize) -> Result<usize> {
    let vars = 2 * n * m;
    if vars > ORACLE_MAX_VARIABLES || d > ORACLE_MAX_DEGREE {
        return Err(Error::Guard(format!(
            "oracle needs 2nm <= {ORACLE_MAX_VARIABLES} and d <= {ORACLE_MAX_DEGREE}, got 2nm = {vars}, d = {d}"
        )));
    }
    let a = |i: usize, k: usize| i * m + k;
    let b = |i: usize, k: usize| n * m + i * m + k;
    let basis = monomials(vars, d);
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let dim = basis.len();

    // degree-d part of the ideal generated by the entries of ᵗA B
    let mut ideal_rows = Vec::new();
    if d >= 2 {
        for low in monomials(vars, d - 2) {
            for k in 0..m {
                for l in 0..m {
                    let mut row = vec![int(0); dim];
                    for i in 0..n {
                        let mut e = low.clone();
                        e[a(i, k)] += 1;
                        e[b(i, l)] += 1;
                        row[index[&e]] += int(1);
                    }
                    ideal_rows.push(row);
                }
            }
        }
    }
    let ideal = if ideal_rows.is_empty() {
        RationalMatrix::zeros(0, dim)
    } else {
        RationalMatrix::from_rows(ideal_rows)?
    };
    let (reduced, pivots) = rref(&ideal);
    let r = pivots.len();
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();

    // the projection to the quotient: coordinates on the non-pivot monomials
    // after subtracting the reduced ideal rows
    let project = |v: &[Rational]| -> Vec<Rational> {
        let mut v = v.to_vec();
        for (row, &p) in pivots.iter().enumerate() {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for j in 0..dim {
                    let e = &reduced[(row, j)];
                    if !e.is_zero() {
                        v[j] -= &c * e;
                    }
                }
            }
        }
        free.iter().map(|&j| v[j].clone()).collect()
    };

    // derivations of sl(m) acting on the column index of both blocks:
    // E_kl sends x_(i,l) to x_(i,k); diagonal differences complete the basis
    let mut generators: Vec<Vec<(usize, usize, i64)>> = Vec::new();
    for k in 0..m {
        for l in 0..m {
            if k != l {
                generators.push(vec![(k, l, 1)]);
            }
        }
    }
    for k in 1..m {
        generators.push(vec![(k - 1, k - 1, 1), (k, k, -1)]);
    }
    let mut constraint_rows: Vec<Vec<Rational>> = Vec::new();
    for gen in &generators {
        // image of each monomial, as columns of a dim x dim matrix
        let mut images = vec![vec![int(0); dim]; dim];
        for (col, e) in basis.iter().enumerate() {
            for &(k, l, c) in gen {
                for i in 0..n {
                    for var in [a(i, l), b(i, l)] {
                        if e[var] == 0 {
                            continue;
                        }
                        let target = var - l + k;
                        let mut f = e.clone();
                        f[var] -= 1;
                        f[target] += 1;
                        images[index[&f]][col] += int(c * e[var] as i64);
                    }
                }
            }
        }
        let projected: Vec<Vec<_>> = (0..dim)
            .map(|col| project(&(0..dim).map(|row| images[row][col].clone()).collect::<Vec<_>>()))
            .collect();
        constraint_rows
            .extend((0..free.len()).map(|q| (0..dim).map(|col| projected[col][q].clone()).collect()));
    }
    let constraint_rank = if constraint_rows.is_empty() {
        0
    } else {
        rank(&RationalMatrix::from_rows(constraint_rows)?)
    };
    // kernel of the constraints contains the ideal, which is divided out
    Ok(dim - constraint_rank - r)
}
