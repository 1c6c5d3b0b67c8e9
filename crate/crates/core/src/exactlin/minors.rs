use itertools::Itertools;
use num_integer::binomial;

use super::{det, Rational, RationalMatrix};
use crate::error::{shape, Result};

/// Size-`k` subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(k).collect()
}

/// Position of a sorted subset in the lexicographic enumeration of `subsets(n, k)`.
pub fn subset_rank(n: usize, subset: &[usize]) -> usize {
    let k = subset.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &s) in subset.iter().enumerate() {
        for v in prev..s {
            rank += binomial(n - v - 1, k - i - 1);
        }
        prev = s + 1;
    }
    rank
}

/// All `rows x rows` minors over column subsets, lexicographic.
pub fn maximal_minors(m: &RationalMatrix) -> Result<Vec<Rational>> {
    if m.rows() > m.cols() {
        return Err(shape(
            "maximal_minors",
            format!("{} rows exceed {} columns", m.rows(), m.cols()),
        ));
    }
    subsets(m.cols(), m.rows())
        .iter()
        .map(|cols| det(&m.select_columns(cols)))
        .collect()
}

/// Minor on the given row and column subsets.
pub fn minor(m: &RationalMatrix, rows: &[usize], cols: &[usize]) -> Result<Rational> {
    det(&m.select_rows(rows).select_columns(cols))
}
