use num_traits::{One, Zero};

use super::{Rational, RationalMatrix};
use crate::error::{Error, Result};

/// Sizes up to this use first-row expansion; larger inputs use skew elimination.
pub const EXPANSION_LIMIT: usize = 12;

fn check(m: &RationalMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            op: "pfaffian",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() % 2 == 1 {
        return Err(Error::OddSize(m.rows()));
    }
    if !m.is_skew() {
        return Err(Error::NotSkew);
    }
    Ok(())
}

pub fn pfaffian(m: &RationalMatrix) -> Result<Rational> {
    check(m)?;
    if m.rows() <= EXPANSION_LIMIT {
        let idx: Vec<usize> = (0..m.rows()).collect();
        Ok(expand(m, &idx))
    } else {
        Ok(eliminate(m.clone()))
    }
}

/// `Pf(A) = sum_j (-1)^(j+1) a_{0 j} Pf(A without rows/cols 0, j)` over the index set.
fn expand(m: &RationalMatrix, idx: &[usize]) -> Rational {
    if idx.is_empty() {
        return Rational::one();
    }
    let first = idx[0];
    let mut total = Rational::zero();
    let mut rest = Vec::with_capacity(idx.len() - 2);
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let a = &m[(first, j)];
        if a.is_zero() {
            continue;
        }
        rest.clear();
        rest.extend(idx[1..].iter().copied().filter(|&k| k != j));
        let sub = expand(m, &rest);
        if pos % 2 == 1 {
            total += a * sub;
        } else {
            total -= a * sub;
        }
    }
    total
}

/// Congruence reduction to 2x2 blocks. Used for large inputs and as an
/// independent route in tests.
pub(crate) fn eliminate(mut a: RationalMatrix) -> Rational {
    let n = a.rows();
    let mut result = Rational::one();
    let mut k = 0;
    while k < n {
        let Some(p) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) else {
            return Rational::zero();
        };
        if p != k + 1 {
            swap_both(&mut a, p, k + 1);
            result = -result;
        }
        let pivot = a[(k, k + 1)].clone();
        result *= &pivot;
        // clear row/col k and k+1 beyond the block with congruence moves
        for j in k + 2..n {
            let f = &a[(k, j)] / &pivot;
            if !f.is_zero() {
                add_multiple(&mut a, k + 1, j, &f);
            }
        }
        for j in k + 2..n {
            let f = -(&a[(k + 1, j)] / &pivot);
            if !f.is_zero() {
                add_multiple(&mut a, k, j, &f);
            }
        }
        k += 2;
    }
    result
}

/// Row and column swap `i <-> j`.
fn swap_both(a: &mut RationalMatrix, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
    }
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

/// row_j -= f * row_src and col_j -= f * col_src (a congruence with unit determinant).
fn add_multiple(a: &mut RationalMatrix, src: usize, j: usize, f: &Rational) {
    let n = a.rows();
    for c in 0..n {
        let v = f * &a[(src, c)];
        a[(j, c)] -= v;
    }
    for r in 0..n {
        let v = f * &a[(r, src)];
        a[(r, j)] -= v;
    }
}
