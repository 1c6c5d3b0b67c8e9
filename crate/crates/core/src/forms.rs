//! Split symmetric and symplectic spaces.
//!
//! Every space uses the same basis order `e_1..e_h, f_1..f_h` (plus one
//! anisotropic unit `u` last when a symmetric space has odd dimension), with
//! `<e_i, f_j> = delta_ij`. Symmetric: `<f_j, e_i> = delta_ij`, `<u, u> = 1`.
//! Symplectic: `<f_j, e_i> = -delta_ij`. With this model a prescribed Gram
//! matrix is always realized over the rationals, without square roots.

use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{shape, Error, Result};
use crate::exactlin::{
    inverse, nonzero_int, rank, rational, rng_from_seed, Rational, RationalMatrix, SampleRng,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symmetric,
    Symplectic,
}

/// A nondegenerate split form on `Q^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearSpace {
    kind: FormKind,
    dim: usize,
    gram: RationalMatrix,
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    kind: FormKind,
    dim: usize,
}

impl Serialize for BilinearSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpaceRepr {
            kind: self.kind,
            dim: self.dim,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BilinearSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SpaceRepr::deserialize(d)?;
        Self::new(r.kind, r.dim).map_err(serde::de::Error::custom)
    }
}

impl BilinearSpace {
    pub fn new(kind: FormKind, dim: usize) -> Result<Self> {
        match kind {
            FormKind::Symmetric => Ok(Self::symmetric(dim)),
            FormKind::Symplectic => Self::symplectic(dim),
        }
    }

    pub fn symmetric(dim: usize) -> Self {
        let h = dim / 2;
        let mut gram = RationalMatrix::zeros(dim, dim);
        for i in 0..h {
            gram[(i, h + i)] = Rational::one();
            gram[(h + i, i)] = Rational::one();
        }
        if dim % 2 == 1 {
            gram[(dim - 1, dim - 1)] = Rational::one();
        }
        Self {
            kind: FormKind::Symmetric,
            dim,
            gram,
        }
    }

    pub fn symplectic(dim: usize) -> Result<Self> {
        if dim % 2 == 1 {
            return Err(Error::DimensionBound(format!(
                "symplectic space needs even dimension, got {dim}"
            )));
        }
        let h = dim / 2;
        let mut gram = RationalMatrix::zeros(dim, dim);
        for i in 0..h {
            gram[(i, h + i)] = Rational::one();
            gram[(h + i, i)] = -Rational::one();
        }
        Ok(Self {
            kind: FormKind::Symplectic,
            dim,
            gram,
        })
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    /// Number of hyperbolic pairs `(e_i, f_i)`.
    pub fn pairs(&self) -> usize {
        self.dim / 2
    }

    pub fn gram_inverse(&self) -> RationalMatrix {
        // split models square to +-1
        match self.kind {
            FormKind::Symmetric => self.gram.clone(),
            FormKind::Symplectic => -&self.gram,
        }
    }

    pub fn is_isometry(&self, g: &RationalMatrix) -> bool {
        g.shape() == (self.dim, self.dim) && &(&g.transpose() * &self.gram) * g == self.gram
    }
}

/// A prescribed Gram matrix: symmetric for symmetric spaces, skew for symplectic ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramTarget {
    pub matrix: RationalMatrix,
    pub kind: FormKind,
}

impl GramTarget {
    pub fn new(matrix: RationalMatrix, kind: FormKind) -> Result<Self> {
        let ok = match kind {
            FormKind::Symmetric => matrix.is_symmetric(),
            FormKind::Symplectic => matrix.is_skew(),
        };
        if !ok {
            return Err(Error::Membership(format!(
                "Gram target is not {}",
                match kind {
                    FormKind::Symmetric => "symmetric",
                    FormKind::Symplectic => "skew-symmetric",
                }
            )));
        }
        Ok(Self { matrix, kind })
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }
}

/// `ᵗf S f`.
pub fn gram(space: &BilinearSpace, f: &RationalMatrix) -> Result<RationalMatrix> {
    if f.rows() != space.dim {
        return Err(shape(
            "gram",
            format!("frame has {} rows, space has dimension {}", f.rows(), space.dim),
        ));
    }
    f.transpose().try_mul(&space.gram)?.try_mul(f)
}

/// A full-column-rank frame `F` with `ᵗF S F = y`.
///
/// Columns are `v_j = e_j + sum_k c_jk f_k` with `c = y/2` (symmetric) or
/// `c = ᵗy/2` (symplectic); needs `2m <= dim`.
pub fn realize_gram(space: &BilinearSpace, target: &GramTarget) -> Result<RationalMatrix> {
    if target.kind != space.kind {
        return Err(Error::KindMismatch(format!(
            "{:?} target in a {:?} space",
            target.kind, space.kind
        )));
    }
    let m = target.size();
    if 2 * m > space.dim {
        return Err(Error::DimensionBound(format!(
            "realizing an {m}x{m} Gram matrix needs 2m <= {}, got 2m = {}",
            space.dim,
            2 * m
        )));
    }
    let h = space.pairs();
    let half = rational(1, 2);
    let y = &target.matrix;
    let mut out = RationalMatrix::zeros(space.dim, m);
    for j in 0..m {
        out[(j, j)] = Rational::one();
        for k in 0..m {
            let c = match space.kind {
                FormKind::Symmetric => &y[(j, k)] * &half,
                FormKind::Symplectic => &y[(k, j)] * &half,
            };
            out[(h + k, j)] = c;
        }
    }
    debug_assert_eq!(rank(&out), m);
    Ok(out)
}

fn elementary_shear(n: usize, i: usize, j: usize, c: Rational) -> RationalMatrix {
    let mut g = RationalMatrix::identity(n);
    g[(i, j)] = c;
    g
}

fn small_int(rng: &mut SampleRng) -> Rational {
    Rational::from_integer(rng.gen_range(-2i64..=2).into())
}

pub fn random_unimodular_with(rng: &mut SampleRng, n: usize) -> RationalMatrix {
    let mut g = RationalMatrix::identity(n);
    if n < 2 {
        return g;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = Rational::from_integer(nonzero_int(rng, 2).into());
        g = &g * &elementary_shear(n, i, j, c);
    }
    g
}

pub fn random_unimodular(n: usize, seed: u64) -> RationalMatrix {
    random_unimodular_with(&mut rng_from_seed(seed), n)
}

pub fn random_invertible_with(rng: &mut SampleRng, n: usize) -> RationalMatrix {
    let mut g = random_unimodular_with(rng, n);
    if n == 0 {
        return g;
    }
    let row = rng.gen_range(0..n);
    let c = rational(nonzero_int(rng, 3), rng.gen_range(1..=3));
    for j in 0..n {
        g[(row, j)] = &g[(row, j)] * &c;
    }
    g
}

pub fn random_invertible(n: usize, seed: u64) -> RationalMatrix {
    random_invertible_with(&mut rng_from_seed(seed), n)
}

/// `h x h` matrix, skew (symmetric space) or symmetric (symplectic space).
fn shear_block(rng: &mut SampleRng, h: usize, kind: FormKind) -> RationalMatrix {
    let mut b = RationalMatrix::zeros(h, h);
    for i in 0..h {
        for j in i..h {
            if i == j && kind == FormKind::Symmetric {
                continue;
            }
            let v = small_int(rng);
            b[(i, j)] = v.clone();
            b[(j, i)] = match kind {
                FormKind::Symmetric => -v,
                FormKind::Symplectic => v,
            };
        }
    }
    b
}

/// Eichler transformation `x -> x + <x,e> v - <x,v> e - 1/2 <v,v><x,e> e`
/// for isotropic `e` and `v` orthogonal to `e`.
fn eichler(space: &BilinearSpace, e: &RationalMatrix, v: &RationalMatrix) -> RationalMatrix {
    let s = &space.gram;
    let es = &e.transpose() * s;
    let vs = &v.transpose() * s;
    let vv = (&vs * v)[(0, 0)].clone();
    let mut g = RationalMatrix::identity(space.dim);
    g = &g + &(v * &es);
    g = &g - &(e * &vs);
    g = &g - &(e * &es).scale(&(vv * rational(1, 2)));
    g
}

pub fn random_isometry_with(rng: &mut SampleRng, space: &BilinearSpace) -> RationalMatrix {
    let dim = space.dim;
    let h = space.pairs();
    let odd = dim % 2 == 1;
    let embed = |core: RationalMatrix| -> RationalMatrix {
        if odd {
            RationalMatrix::block_diag(&[&core, &RationalMatrix::identity(1)])
        } else {
            core
        }
    };
    let mut g = RationalMatrix::identity(dim);
    if odd && rng.gen_bool(0.5) {
        g[(dim - 1, dim - 1)] = -Rational::one();
    }
    if h == 0 {
        return g;
    }
    for _ in 0..2 {
        let a = random_invertible_with(rng, h);
        let a_inv_t = inverse(&a).expect("invertible by construction").transpose();
        let levi = RationalMatrix::block_diag(&[&a, &a_inv_t]);
        g = &g * &embed(levi);

        let b = shear_block(rng, h, space.kind);
        let mut upper = RationalMatrix::identity(2 * h);
        upper.set_block(0, h, &b);
        g = &g * &embed(upper);

        let c = shear_block(rng, h, space.kind);
        let mut lower = RationalMatrix::identity(2 * h);
        lower.set_block(h, 0, &c);
        g = &g * &embed(lower);

        if odd {
            let i = rng.gen_range(0..2 * h);
            let mut e = RationalMatrix::zeros(dim, 1);
            e[(i, 0)] = Rational::one();
            let mut v = RationalMatrix::zeros(dim, 1);
            v[(dim - 1, 0)] = small_int(rng);
            if !v.is_zero() {
                g = &g * &eichler(space, &e, &v);
            }
        }
    }
    g
}

pub fn random_isometry(space: &BilinearSpace, seed: u64) -> RationalMatrix {
    random_isometry_with(&mut rng_from_seed(seed), space)
}

/// Square Gram-type check helper: kind-appropriate symmetry of `y`.
pub fn matches_kind(y: &RationalMatrix, kind: FormKind) -> bool {
    match kind {
        FormKind::Symmetric => y.is_symmetric(),
        FormKind::Symplectic => y.is_skew(),
    }
}

/// Zero Gram target of size `m`.
pub fn zero_target(m: usize, kind: FormKind) -> GramTarget {
    GramTarget {
        matrix: RationalMatrix::zeros(m, m),
        kind,
    }
}

impl BilinearSpace {
    /// `true` when the columns of `f` span a totally isotropic subspace.
    pub fn is_isotropic_frame(&self, f: &RationalMatrix) -> bool {
        gram(self, f).map(|g| g.is_zero()).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{det, int};

    #[test]
    fn gram_examples() {
        let s2 = BilinearSpace::symmetric(2);
        let e1 = RationalMatrix::column(vec![int(1), int(0)]);
        assert!(gram(&s2, &e1).unwrap().is_zero());
        let f = RationalMatrix::column(vec![int(1), rational(1, 2)]);
        assert_eq!(gram(&s2, &f).unwrap(), RationalMatrix::from_i64(&[&[1]]));
        let j2 = BilinearSpace::symplectic(2).unwrap();
        assert_eq!(gram(&j2, &RationalMatrix::identity(2)).unwrap(), *j2.gram());
        assert!(gram(&s2, &RationalMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn realize_examples() {
        let s4 = BilinearSpace::symmetric(4);
        let zero = realize_gram(&s4, &zero_target(2, FormKind::Symmetric)).unwrap();
        assert_eq!(
            zero,
            RationalMatrix::from_i64(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]])
        );

        let s2 = BilinearSpace::symmetric(2);
        let one = GramTarget::new(RationalMatrix::from_i64(&[&[1]]), FormKind::Symmetric).unwrap();
        assert_eq!(
            realize_gram(&s2, &one).unwrap(),
            RationalMatrix::column(vec![int(1), rational(1, 2)])
        );

        let j4 = BilinearSpace::symplectic(4).unwrap();
        let y = RationalMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        let f = realize_gram(&j4, &GramTarget::new(y.clone(), FormKind::Symplectic).unwrap()).unwrap();
        let expected = RationalMatrix::from_rows(vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(0), rational(1, 2)],
            vec![rational(-1, 2), int(0)],
        ])
        .unwrap();
        assert_eq!(f, expected);
        assert_eq!(gram(&j4, &f).unwrap(), y);
    }

    #[test]
    fn realize_errors() {
        let s3 = BilinearSpace::symmetric(3);
        let big = zero_target(2, FormKind::Symmetric);
        assert!(matches!(realize_gram(&s3, &big), Err(Error::DimensionBound(_))));
        let skew = zero_target(1, FormKind::Symplectic);
        assert!(matches!(realize_gram(&s3, &skew), Err(Error::KindMismatch(_))));
        assert!(GramTarget::new(RationalMatrix::from_i64(&[&[0, 1], &[0, 0]]), FormKind::Symmetric).is_err());
        assert!(BilinearSpace::symplectic(3).is_err());
    }

    #[test]
    fn isometries_preserve_form() {
        for dim in 1..=6 {
            let s = BilinearSpace::symmetric(dim);
            for seed in 0..5 {
                let g = random_isometry(&s, seed);
                assert!(s.is_isometry(&g), "symmetric dim {dim} seed {seed}");
            }
        }
        for dim in [2, 4, 6] {
            let j = BilinearSpace::symplectic(dim).unwrap();
            for seed in 0..5 {
                assert!(j.is_isometry(&random_isometry(&j, seed)));
            }
        }
        let s = BilinearSpace::symmetric(5);
        assert_ne!(random_isometry(&s, 1), random_isometry(&s, 2));
        assert!(s.is_isometry(&RationalMatrix::identity(5)));
    }

    #[test]
    fn unimodular_and_invertible() {
        for seed in 0..10 {
            assert_eq!(det(&random_unimodular(3, seed)).unwrap(), int(1));
            assert!(!num_traits::Zero::is_zero(
                &det(&random_invertible(3, seed)).unwrap()
            ));
        }
        assert_eq!(random_unimodular(1, 9), RationalMatrix::identity(1));
    }
}
