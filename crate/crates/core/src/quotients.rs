//! The three quotient kernels: Plücker coordinates of a frame (SL side),
//! composition (GL side) and Gram matrices (O/Sp side), with the membership
//! checks for their target varieties.
//!
//! Planes are always column spans: an `N x m` frame `f` has Plücker vector
//! `maximal_minors(ᵗf)`, indexed by size-`m` row subsets in lexicographic order.

use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{shape, Error, Result};
use crate::exactlin::{
    det, kernel_basis, maximal_minors, minor, rank, subset_rank, subsets, Rational, RationalMatrix,
};
use crate::forms::BilinearSpace;

/// Default cap on `C(N, m)` for relation checks and frame reconstruction.
pub const DEFAULT_MAX_MINORS: usize = 70;

/// A point of the affine Grassmann cone of `m`-planes in `Q^N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PluckerVector {
    #[serde(rename = "N")]
    pub ambient_dim: usize,
    #[serde(rename = "m")]
    pub plane_dim: usize,
    #[serde(with = "crate::exactlin::rational_strings")]
    pub coords: Vec<Rational>,
}

impl PluckerVector {
    pub fn new(ambient_dim: usize, plane_dim: usize, coords: Vec<Rational>) -> Result<Self> {
        if plane_dim > ambient_dim || coords.len() != binomial(ambient_dim, plane_dim) {
            return Err(shape(
                "plucker",
                format!(
                    "{} coordinates for m = {plane_dim}, N = {ambient_dim}",
                    coords.len()
                ),
            ));
        }
        Ok(Self {
            ambient_dim,
            plane_dim,
            coords,
        })
    }

    pub fn zero(ambient_dim: usize, plane_dim: usize) -> Self {
        Self {
            ambient_dim,
            plane_dim,
            coords: vec![Rational::zero(); binomial(ambient_dim, plane_dim)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Coordinate at a sorted subset.
    pub fn at(&self, subset: &[usize]) -> &Rational {
        &self.coords[subset_rank(self.ambient_dim, subset)]
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            ambient_dim: self.ambient_dim,
            plane_dim: self.plane_dim,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Signed coordinate at an arbitrary index sequence (zero on repeats).
    fn signed(&self, idx: &[usize]) -> Rational {
        let mut sorted = idx.to_vec();
        let mut sign = true;
        // insertion sort counting transpositions
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                sign = !sign;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Rational::zero();
        }
        let v = self.at(&sorted).clone();
        if sign {
            v
        } else {
            -v
        }
    }
}

/// Rank-bounded matrix: a point of the determinantal variety `Det_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminantalPoint {
    pub matrix: RationalMatrix,
    pub rank_bound: usize,
}

impl DeterminantalPoint {
    pub fn new(matrix: RationalMatrix, rank_bound: usize) -> Result<Self> {
        if !in_det_variety(&matrix, rank_bound) {
            return Err(Error::Membership(format!(
                "rank {} exceeds bound {rank_bound}",
                rank(&matrix)
            )));
        }
        Ok(Self { matrix, rank_bound })
    }
}

pub fn plucker(f: &RationalMatrix) -> Result<PluckerVector> {
    let (n, m) = f.shape();
    if m > n {
        return Err(shape(
            "plucker",
            format!("{m} columns exceed ambient dimension {n}"),
        ));
    }
    Ok(PluckerVector {
        ambient_dim: n,
        plane_dim: m,
        coords: maximal_minors(&f.transpose())?,
    })
}

fn check_guard(n: usize, m: usize, limit: usize) -> Result<()> {
    let count = binomial(n, m);
    if count > limit {
        return Err(Error::Guard(format!(
            "C({n}, {m}) = {count} Plücker coordinates exceeds the cap {limit}"
        )));
    }
    Ok(())
}

/// Checks every quadratic Grassmann-Plücker relation
/// `sum_k (-1)^k p[I + j_k] p[J - j_k] = 0` for `|I| = m-1`, `|J| = m+1`.
pub fn plucker_relations_ok(p: &PluckerVector) -> Result<bool> {
    plucker_relations_ok_with_limit(p, DEFAULT_MAX_MINORS)
}

pub fn plucker_relations_ok_with_limit(p: &PluckerVector, limit: usize) -> Result<bool> {
    let (n, m) = (p.ambient_dim, p.plane_dim);
    check_guard(n, m, limit)?;
    if m == 0 || m >= n.saturating_sub(1) || p.is_zero() {
        // every vector is decomposable for m in {0, 1, N-1, N}
        return Ok(true);
    }
    let mut idx = Vec::with_capacity(m);
    let mut rest = Vec::with_capacity(m);
    for i_set in subsets(n, m - 1) {
        for j_set in subsets(n, m + 1) {
            let mut total = Rational::zero();
            for k in 0..=m {
                idx.clear();
                idx.extend_from_slice(&i_set);
                idx.push(j_set[k]);
                let a = p.signed(&idx);
                if a.is_zero() {
                    continue;
                }
                rest.clear();
                rest.extend(j_set.iter().enumerate().filter(|&(t, _)| t != k).map(|(_, &v)| v));
                let b = p.at(&rest);
                if k % 2 == 0 {
                    total += a * b;
                } else {
                    total -= a * b;
                }
            }
            if !total.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn in_grassmann_cone(p: &PluckerVector) -> Result<bool> {
    plucker_relations_ok(p)
}

/// A frame `F` with `plucker(F) = p`, recovered as the kernel of `v -> v ∧ p`.
/// `None` for the zero vector or a vector off the cone.
pub fn frame_from_plucker(p: &PluckerVector, limit: usize) -> Result<Option<RationalMatrix>> {
    let (n, m) = (p.ambient_dim, p.plane_dim);
    check_guard(n, m, limit)?;
    if m == 0 {
        return Ok(p.coords[0].is_one().then(|| RationalMatrix::zeros(n, 0)));
    }
    if p.is_zero() {
        return Ok(None);
    }
    let wedge_rows = subsets(n, m + 1);
    let mut wedge = RationalMatrix::zeros(wedge_rows.len(), n);
    for (r, k_set) in wedge_rows.iter().enumerate() {
        for (t, &k) in k_set.iter().enumerate() {
            let rest: Vec<usize> = k_set.iter().copied().filter(|&v| v != k).collect();
            let c = p.at(&rest);
            wedge[(r, k)] = if t % 2 == 0 { c.clone() } else { -c.clone() };
        }
    }
    let mut f = kernel_basis(&wedge);
    if f.cols() != m {
        return Ok(None);
    }
    let q = plucker(&f)?;
    let Some(pos) = p.coords.iter().position(|c| !c.is_zero()) else {
        return Ok(None);
    };
    if q.coords[pos].is_zero() {
        return Ok(None);
    }
    let c = &p.coords[pos] / &q.coords[pos];
    for i in 0..n {
        f[(i, 0)] = &f[(i, 0)] * &c;
    }
    if plucker(&f)? != *p {
        return Ok(None);
    }
    Ok(Some(f))
}

/// `∧^m h`: the matrix of `m x m` minors of `h` on row/column subsets.
pub fn exterior_power(h: &RationalMatrix, m: usize) -> Result<RationalMatrix> {
    let rows = subsets(h.rows(), m);
    let cols = subsets(h.cols(), m);
    let mut out = RationalMatrix::zeros(rows.len(), cols.len());
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            out[(i, j)] = minor(h, r, c)?;
        }
    }
    Ok(out)
}

/// `sum_{I,J} p1_I det(S[I,J]) p2_J`, the pairing induced on `∧^m`.
/// Equals `det(ᵗf1 S f2)` for `p_i = plucker(f_i)`.
pub fn plucker_pairing(space: &BilinearSpace, p1: &PluckerVector, p2: &PluckerVector) -> Result<Rational> {
    if p1.ambient_dim != space.dim() || p2.ambient_dim != space.dim() || p1.plane_dim != p2.plane_dim {
        return Err(shape("plucker_pairing", "ambient or plane dimensions differ"));
    }
    let m = p1.plane_dim;
    let s = space.gram();
    let sets = subsets(space.dim(), m);
    let mut total = Rational::zero();
    for (i, a) in sets.iter().enumerate() {
        if p1.coords[i].is_zero() {
            continue;
        }
        for (j, b) in sets.iter().enumerate() {
            if p2.coords[j].is_zero() {
                continue;
            }
            let d = minor(s, a, b)?;
            if !d.is_zero() {
                total += &p1.coords[i] * d * &p2.coords[j];
            }
        }
    }
    Ok(total)
}

/// `g · f`.
pub fn compose(f: &RationalMatrix, g: &RationalMatrix) -> Result<RationalMatrix> {
    if g.cols() != f.rows() {
        return Err(shape(
            "compose",
            format!("f is {}x{}, g is {}x{}", f.rows(), f.cols(), g.rows(), g.cols()),
        ));
    }
    g.try_mul(f)
}

/// `det(ᵗf1 S f2)`.
pub fn induced_pairing(space: &BilinearSpace, f1: &RationalMatrix, f2: &RationalMatrix) -> Result<Rational> {
    if f1.shape() != f2.shape() || f1.rows() != space.dim() {
        return Err(shape(
            "induced_pairing",
            format!(
                "frames {:?}, {:?} in dimension {}",
                f1.shape(),
                f2.shape(),
                space.dim()
            ),
        ));
    }
    det(&f1.transpose().try_mul(space.gram())?.try_mul(f2)?)
}

pub fn in_det_variety(m: &RationalMatrix, r: usize) -> bool {
    rank(m) <= r
}

pub fn in_sym_rank(m: &RationalMatrix, r: usize) -> bool {
    m.is_symmetric() && rank(m) <= r
}

pub fn in_alt_rank(m: &RationalMatrix, r: usize) -> bool {
    m.is_skew() && rank(m) <= r
}
