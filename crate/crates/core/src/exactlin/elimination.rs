//! Elimination kernels: fraction-free (Bareiss) for rank and determinant,
//! reduced row echelon form over the rationals for kernels, solves and inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Rational, RationalMatrix};
use crate::error::{shape, Error, Result};

/// Scales each row by the lcm of its denominators. Returns the integer rows
/// together with the product of the scale factors.
fn integer_rows(m: &RationalMatrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale_product = BigInt::one();
    let rows = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale_product *= &l;
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect::<Vec<_>>()
        })
        .collect();
    (rows, scale_product)
}

struct Bareiss {
    rank: usize,
    /// Last pivot, equal to the determinant of the leading pivot minor.
    last_pivot: BigInt,
    swaps: usize,
}

fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> Bareiss {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            swaps += 1;
        }
        let pivot = a[rank][c].clone();
        for r in rank + 1..rows {
            let factor = a[r][c].clone();
            #[allow(clippy::needless_range_loop)]
            for j in c + 1..cols {
                let v = &pivot * &a[r][j] - &factor * &a[rank][j];
                a[r][j] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Bareiss {
        rank,
        last_pivot: prev,
        swaps,
    }
}

/// Exact rank via fraction-free elimination.
pub fn rank(m: &RationalMatrix) -> usize {
    let (mut a, _) = integer_rows(m);
    bareiss(&mut a, m.cols()).rank
}

pub fn det(m: &RationalMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            op: "det",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Rational::one());
    }
    let (mut a, scale) = integer_rows(m);
    let b = bareiss(&mut a, n);
    if b.rank < n {
        return Ok(Rational::zero());
    }
    let mut d = Rational::new(b.last_pivot, scale);
    if b.swaps % 2 == 1 {
        d = -d;
    }
    Ok(d)
}

/// Reduced row echelon form. Returns the reduced matrix and its pivot columns.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let v = &a[(r, j)] * &f;
                a[(i, j)] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Columns spanning the right kernel `{v : M v = 0}`, one per free variable.
pub fn kernel_basis(m: &RationalMatrix) -> RationalMatrix {
    let cols = m.cols();
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = RationalMatrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = Rational::one();
        for (row, &p) in pivots.iter().enumerate() {
            basis[(p, k)] = -r[(row, f)].clone();
        }
    }
    basis
}

/// Solves `A x = b` for a matrix right-hand side. `None` when inconsistent.
/// Free variables are set to zero.
pub fn solve(a: &RationalMatrix, b: &RationalMatrix) -> Result<Option<RationalMatrix>> {
    if a.rows() != b.rows() {
        return Err(shape(
            "solve",
            format!("{} equations, right-hand side has {} rows", a.rows(), b.rows()),
        ));
    }
    let n = a.cols();
    let aug = RationalMatrix::hstack(&[a, b])?;
    let (r, pivots) = rref(&aug);
    if pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = RationalMatrix::zeros(n, b.cols());
    for (row, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x[(p, j)] = r[(row, n + j)].clone();
        }
    }
    Ok(Some(x))
}

pub fn inverse(m: &RationalMatrix) -> Result<RationalMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            op: "inverse",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let (r, pivots) = rref(&RationalMatrix::hstack(&[m, &RationalMatrix::identity(n)])?);
    if n > 0 && pivots[n - 1] >= n {
        return Err(Error::Singular);
    }
    Ok(r.slice(0, n, n, 2 * n))
}

/// Column space basis: the pivot columns of `m`.
pub fn column_basis(m: &RationalMatrix) -> RationalMatrix {
    let (_, pivots) = rref(m);
    m.select_columns(&pivots)
}
