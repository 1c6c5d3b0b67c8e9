//! Invariant records for points of `Y` and `X`.
//!
//! Scalars and polynomials are invariant functions, hence constant on orbit
//! closures; counts are ranks, which can only drop on the boundary of an orbit.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{
    char_poly, det, format_rational, int, pfaffian, rank, rational, Polynomial, Rational, RationalMatrix,
};
use crate::forms::BilinearSpace;
use crate::quotients::{frame_from_plucker, plucker_pairing, PluckerVector, DEFAULT_MAX_MINORS};

use super::{Layout, Scenario, USide, XPoint, YPoint};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantValue {
    Count(usize),
    Counts(Vec<usize>),
    Scalar(Rational),
    Scalars(Vec<Rational>),
    Poly(Polynomial),
}

impl InvariantValue {
    /// True for invariant functions (constant on orbit closures).
    pub fn is_closed_type(&self) -> bool {
        matches!(
            self,
            InvariantValue::Scalar(_) | InvariantValue::Scalars(_) | InvariantValue::Poly(_)
        )
    }

    /// Zero scalars, or a polynomial that is a pure power of `t`.
    pub fn vanishes(&self) -> bool {
        match self {
            InvariantValue::Scalar(x) => x.is_zero(),
            InvariantValue::Scalars(v) => v.iter().all(Zero::is_zero),
            InvariantValue::Poly(p) => p.coeffs().iter().rev().skip(1).all(Zero::is_zero),
            InvariantValue::Count(_) | InvariantValue::Counts(_) => true,
        }
    }

    fn counts(&self) -> Option<Vec<usize>> {
        match self {
            InvariantValue::Count(c) => Some(vec![*c]),
            InvariantValue::Counts(v) => Some(v.clone()),
            _ => None,
        }
    }
}

impl Serialize for InvariantValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            InvariantValue::Count(c) => c.serialize(s),
            InvariantValue::Counts(v) => v.serialize(s),
            InvariantValue::Scalar(x) => format_rational(x).serialize(s),
            InvariantValue::Scalars(v) => v.iter().map(format_rational).collect::<Vec<_>>().serialize(s),
            InvariantValue::Poly(p) => p.serialize(s),
        }
    }
}

/// Named exact invariants, ordered by name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct InvariantRecord(BTreeMap<String, InvariantValue>);

impl InvariantRecord {
    pub fn insert(&mut self, key: &str, value: InvariantValue) {
        self.0.insert(key.to_string(), value);
    }

    pub fn get(&self, key: &str) -> Option<&InvariantValue> {
        self.0.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &InvariantValue)> {
        self.0.iter()
    }

    fn count(&mut self, key: &str, c: usize) {
        self.insert(key, InvariantValue::Count(c));
    }

    fn counts(&mut self, key: &str, c: Vec<usize>) {
        self.insert(key, InvariantValue::Counts(c));
    }

    fn scalar(&mut self, key: &str, x: Rational) {
        self.insert(key, InvariantValue::Scalar(x));
    }

    fn poly(&mut self, key: &str, p: Polynomial) {
        self.insert(key, InvariantValue::Poly(p));
    }

    /// Every closed-type entry vanishes.
    pub fn closed_part_vanishes(&self) -> bool {
        self.0
            .values()
            .filter(|v| v.is_closed_type())
            .all(InvariantValue::vanishes)
    }

    /// Keys of closed-type entries whose values differ between the records.
    pub fn closed_mismatches(&self, other: &Self) -> Vec<String> {
        self.0
            .iter()
            .filter(|(_, v)| v.is_closed_type())
            .filter(|(k, v)| other.0.get(*k) != Some(*v))
            .map(|(k, _)| k.clone())
            .collect()
    }

    /// Every rank entry of `self` is at most the matching entry of `other`.
    pub fn ranks_dominated_by(&self, other: &Self) -> bool {
        self.0.iter().all(
            |(k, v)| match (v.counts(), other.0.get(k).and_then(|o| o.counts())) {
                (Some(a), Some(b)) => a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| x <= y),
                (Some(_), None) => false,
                (None, _) => true,
            },
        )
    }
}

pub(crate) fn rank_powers(m: &RationalMatrix, upto: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(upto);
    let mut p = m.clone();
    for j in 1..=upto {
        if j > 1 {
            p = &p * m;
        }
        out.push(rank(&p));
    }
    out
}

/// `rank((a b)^(j-1) a)` for `j = 1..=upto`.
fn rank_words(a: &RationalMatrix, b: &RationalMatrix, upto: usize) -> Vec<usize> {
    let ab = a * b;
    let mut out = Vec::with_capacity(upto);
    let mut w = a.clone();
    for j in 1..=upto {
        if j > 1 {
            w = &ab * &w;
        }
        out.push(rank(&w));
    }
    out
}

fn with_head(head: usize, tail: Vec<usize>) -> Vec<usize> {
    let mut v = Vec::with_capacity(tail.len() + 1);
    v.push(head);
    v.extend(tail);
    v
}

fn cp(m: &RationalMatrix) -> Result<Polynomial> {
    char_poly(m)
}

/// Coefficients in `s` of `det(s y + ᵗy)`, lowest first, padded to length `m + 1`.
pub(crate) fn det_pencil(y: &RationalMatrix) -> Result<Vec<Rational>> {
    let m = y.rows();
    let yt = y.transpose();
    let points = (0..=m as i64)
        .map(|s| {
            let s = int(s);
            Ok((s.clone(), det(&y.scale(&s).try_add(&yt)?)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut c = Polynomial::interpolate(&points).coeffs().to_vec();
    c.resize(m + 1, Rational::zero());
    Ok(c)
}

fn sl_matrix_record(y: &RationalMatrix) -> Result<InvariantRecord> {
    let yt = y.transpose();
    let mut r = InvariantRecord::default();
    r.count("rank", rank(y));
    r.count("rank_sym", rank(&(y + &yt)));
    r.count("rank_alt", rank(&(y - &yt)));
    r.scalar("det", det(y)?);
    r.insert("det_pencil", InvariantValue::Scalars(det_pencil(y)?));
    Ok(r)
}

fn sl_congruence_record(y: &RationalMatrix, skew: bool) -> Result<InvariantRecord> {
    let mut r = InvariantRecord::default();
    r.count("rank", rank(y));
    if skew {
        if y.rows().is_multiple_of(2) {
            r.scalar("pf", pfaffian(y)?);
        }
    } else {
        r.scalar("det", det(y)?);
    }
    Ok(r)
}

fn slsl_record(y: &RationalMatrix) -> Result<InvariantRecord> {
    let mut r = InvariantRecord::default();
    r.count("rank", rank(y));
    if y.is_square() {
        r.scalar("det", det(y)?);
    }
    Ok(r)
}

fn half() -> Rational {
    rational(1, 2)
}

pub fn y_invariants(s: &Scenario, y: &YPoint) -> Result<InvariantRecord> {
    s.check_y(y)?;
    let y0 = &y.0[0];
    let mut r = InvariantRecord::default();
    match s.layout() {
        Layout::Tensor { v, u } => match u {
            USide::Form(su) => {
                let m = su.gram() * y0;
                r.count("rank", rank(y0));
                r.poly("char_poly", cp(&m)?);
                r.counts("rank_powers", rank_powers(&m, y0.rows()));
            }
            USide::Special(_) => {
                return sl_congruence_record(y0, v.kind() == crate::forms::FormKind::Symplectic)
            }
        },
        Layout::Contraction { u, .. } => match u {
            USide::Form(su) => {
                let yt = y0.transpose();
                let m1 = su.gram() * &(y0 + &yt);
                let m2 = su.gram() * &(y0 - &yt);
                let k = y0.rows();
                r.poly("char_poly_sym", cp(&m1)?);
                r.poly("char_poly_alt", cp(&m2)?);
                r.poly("char_poly_mixed", cp(&(&m1 * &m2))?);
                r.counts("rank_powers_sym", rank_powers(&m1, k));
                r.counts("rank_powers_alt", rank_powers(&m2, k));
            }
            USide::Special(_) => return sl_matrix_record(y0),
        },
        Layout::TwoFormSl { .. } => return sl_matrix_record(y0),
        Layout::SplitContraction { plus, minus, .. } => match (plus, minus) {
            (USide::Form(sp), USide::Form(sm)) => {
                let (nm, spy) = split_operator(sp, sm, y0);
                r.count("rank", rank(y0));
                r.poly("char_poly", cp(&nm)?);
                r.counts("rank_words", split_words(&nm, &spy, sp.dim() + 1));
            }
            _ => return slsl_record(y0),
        },
        Layout::DoubleFormGl { m, .. } => {
            let (y11, y21, y22) = double_blocks(y0, *m);
            r.poly("char_poly", cp(&y21)?);
            r.poly("char_poly_pair", cp(&(&y11 * &y22))?);
            r.counts("rank_powers", rank_powers(&y21, *m));
        }
        Layout::PairFormsGl { m, .. } => {
            let y1 = y0;
            let y2 = &y.0[1];
            r.count("rank_plus", rank(y1));
            r.count("rank_minus", rank(y2));
            r.poly("char_poly", cp(&(y1 * y2))?);
            r.counts("rank_words_plus", rank_words(y1, y2, m + 1));
            r.counts("rank_words_minus", rank_words(y2, y1, m + 1));
        }
        Layout::GlGl { m, .. } => {
            r.poly("char_poly", cp(y0)?);
            r.counts("rank_powers", rank_powers(y0, *m));
        }
        Layout::FourBlock { p, .. } => {
            let y1 = y0;
            let y2 = &y.0[1];
            r.count("rank_1", rank(y1));
            r.count("rank_2", rank(y2));
            r.poly("char_poly", cp(&(y1 * &y2.transpose()))?);
            r.counts("rank_words_1", rank_words(y1, &y2.transpose(), p + 1));
            r.counts("rank_words_2", rank_words(y2, &y1.transpose(), p + 1));
        }
    }
    Ok(r)
}

/// `N = S+ y S- ᵗy` and `S+ y`.
fn split_operator(
    sp: &BilinearSpace,
    sm: &BilinearSpace,
    y: &RationalMatrix,
) -> (RationalMatrix, RationalMatrix) {
    let spy = sp.gram() * y;
    let nm = &(&spy * sm.gram()) * &y.transpose();
    (nm, spy)
}

/// `rank(N^(j-1) S+ y)` for `j = 1..=upto`.
fn split_words(nm: &RationalMatrix, spy: &RationalMatrix, upto: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(upto);
    let mut w = spy.clone();
    for j in 1..=upto {
        if j > 1 {
            w = nm * &w;
        }
        out.push(rank(&w));
    }
    out
}

fn double_blocks(y: &RationalMatrix, m: usize) -> (RationalMatrix, RationalMatrix, RationalMatrix) {
    let k = 2 * m;
    (y.slice(0, m, 0, m), y.slice(m, k, 0, m), y.slice(m, k, m, k))
}

/// The record `x_invariants(theta(y))` must equal, computed from `y` alone.
pub fn predicted_x_invariants(s: &Scenario, y: &YPoint) -> Result<InvariantRecord> {
    s.check_y(y)?;
    let y0 = &y.0[0];
    let mut r = InvariantRecord::default();
    match s.layout() {
        Layout::Tensor { v, u } => match u {
            USide::Form(su) => {
                let k = su.dim();
                let m = su.gram() * y0;
                r.count("rank", k);
                r.poly("char_poly", cp(&m)?.shift(v.dim() - k));
                r.counts("rank_powers", with_head(k, rank_powers(&m, k)));
            }
            USide::Special(_) => {
                r = y_invariants(s, y)?;
                r.scalar("pairing", det(y0)?);
            }
        },
        Layout::Contraction { n, u } => match u {
            USide::Form(su) => {
                let k = su.dim();
                let yt = y0.transpose();
                let m1 = su.gram() * &(y0 + &yt);
                let m2 = su.gram() * &(y0 - &yt);
                let shift = 2 * n - k;
                r.poly("char_poly_sym", cp(&m1)?.shift(shift));
                r.poly("char_poly_alt", cp(&m2)?.shift(shift));
                r.poly("char_poly_mixed", cp(&(&m1 * &m2))?.shift(shift));
                r.counts("rank_powers_sym", with_head(k, rank_powers(&m1, k)));
                r.counts("rank_powers_alt", with_head(k, rank_powers(&m2, k)));
            }
            USide::Special(_) => {
                let yt = y0.transpose();
                r = sl_matrix_record(y0)?;
                r.scalar("pairing_sym", det(&(y0 + &yt))?);
                r.scalar("pairing_alt", det(&(y0 - &yt))?);
            }
        },
        Layout::TwoFormSl { .. } => r = sl_matrix_record(y0)?,
        Layout::SplitContraction { n, plus, minus } => match (plus, minus) {
            (USide::Form(sp), USide::Form(sm)) => {
                let (nm, spy) = split_operator(sp, sm, y0);
                r.count("rank_plus", sp.dim());
                r.count("rank_minus", sm.dim());
                r.poly("char_poly", cp(&nm)?.shift(n - sp.dim()));
                r.counts("rank_words", split_words(&nm, &spy, sp.dim() + 1));
            }
            _ => r = slsl_record(y0)?,
        },
        Layout::DoubleFormGl { v, m } => {
            let (y11, y21, y22) = double_blocks(y0, *m);
            let shift = v.dim() - m;
            r.count("rank", *m);
            r.poly("char_poly", cp(&y21)?.shift(shift));
            r.poly("char_poly_pair", cp(&(&y11 * &y22))?.shift(shift));
            r.counts("rank_powers", with_head(*m, rank_powers(&y21, *m)));
        }
        Layout::PairFormsGl { minus, m, .. } => {
            let y1 = y0;
            let y2 = &y.0[1];
            r.count("rank", *m);
            r.poly("char_poly", cp(&(y1 * y2))?.shift(minus.dim() - m));
            r.counts("rank_words_plus", rank_words(y1, y2, m + 1));
            r.counts("rank_words_minus", rank_words(y2, y1, m + 1));
        }
        Layout::GlGl { n, m } => {
            r.count("rank", *m);
            r.poly("char_poly", cp(y0)?.shift(n - m));
            r.counts("rank_powers", with_head(*m, rank_powers(y0, *m)));
        }
        Layout::FourBlock { p, q, s: sdim, .. } => {
            let y1 = y0;
            let y2 = &y.0[1];
            r.count("rank_1", *p);
            r.count("rank_2", *q);
            r.poly("char_poly", cp(&(y1 * &y2.transpose()))?.shift(sdim - p));
            r.counts("rank_words_1", rank_words(y1, &y2.transpose(), p + 1));
            r.counts("rank_words_2", rank_words(y2, &y1.transpose(), p + 1));
        }
    }
    Ok(r)
}

fn frame_of(p: &PluckerVector, limit: usize) -> Result<RationalMatrix> {
    frame_from_plucker(p, limit)?
        .ok_or_else(|| Error::Membership("Plücker vector is zero or not decomposable".into()))
}

fn matrix_part(x: &XPoint, i: usize) -> Result<&RationalMatrix> {
    x.0.get(i)
        .and_then(|p| p.matrix())
        .ok_or_else(|| Error::Membership(format!("X component {i} must be a matrix")))
}

fn plucker_part(x: &XPoint, i: usize) -> Result<&PluckerVector> {
    x.0.get(i)
        .and_then(|p| p.plucker())
        .ok_or_else(|| Error::Membership(format!("X component {i} must be a Plücker vector")))
}

pub fn x_invariants(s: &Scenario, x: &XPoint) -> Result<InvariantRecord> {
    x_invariants_with_limit(s, x, DEFAULT_MAX_MINORS)
}

/// Invariants of `x`. Plücker components are turned back into a frame, which
/// is determined up to `SL(m)`; the frame's `Y`-side data is then an `SL`
/// representative of the original `y`.
pub fn x_invariants_with_limit(s: &Scenario, x: &XPoint, limit: usize) -> Result<InvariantRecord> {
    s.check_x(x, limit)?;
    let mut r = InvariantRecord::default();
    match s.layout() {
        Layout::Tensor { v, u } => match u {
            USide::Form(su) => {
                let k = su.dim();
                let xs = matrix_part(x, 0)? * v.gram();
                r.count("rank", rank(matrix_part(x, 0)?));
                r.poly("char_poly", cp(&xs)?);
                r.counts("rank_powers", rank_powers(&xs, k + 1));
            }
            USide::Special(_) => {
                let p = plucker_part(x, 0)?;
                let f = frame_of(p, limit)?;
                let y = crate::forms::gram(v, &f)?;
                r = sl_congruence_record(&y, v.kind() == crate::forms::FormKind::Symplectic)?;
                r.scalar("pairing", plucker_pairing(v, p, p)?);
            }
        },
        Layout::Contraction { n, u } => {
            let s2 = BilinearSpace::symmetric(2 * n);
            let j2 = BilinearSpace::symplectic(2 * n)?;
            match u {
                USide::Form(su) => {
                    let k = su.dim();
                    let x0 = matrix_part(x, 0)?;
                    let xs = x0 * s2.gram();
                    let xj = x0 * j2.gram();
                    r.poly("char_poly_sym", cp(&xs)?);
                    r.poly("char_poly_alt", cp(&xj)?);
                    r.poly("char_poly_mixed", cp(&(&xs * &xj))?);
                    r.counts("rank_powers_sym", rank_powers(&xs, k + 1));
                    r.counts("rank_powers_alt", rank_powers(&xj, k + 1));
                }
                USide::Special(_) => {
                    let p = plucker_part(x, 0)?;
                    let f = frame_of(p, limit)?;
                    let a = f.slice(0, *n, 0, f.cols());
                    let b = f.slice(*n, 2 * n, 0, f.cols());
                    r = sl_matrix_record(&(&a.transpose() * &b))?;
                    r.scalar("pairing_sym", plucker_pairing(&s2, p, p)?);
                    r.scalar("pairing_alt", plucker_pairing(&j2, p, p)?);
                }
            }
        }
        Layout::TwoFormSl { plus, minus, .. } => {
            let f = frame_of(plucker_part(x, 0)?, limit)?;
            let a = f.slice(0, plus.dim(), 0, f.cols());
            let b = f.slice(plus.dim(), f.rows(), 0, f.cols());
            let y = crate::forms::gram(plus, &a)?.try_add(&crate::forms::gram(minus, &b)?)?;
            r = sl_matrix_record(&y.scale(&half()))?;
        }
        Layout::SplitContraction { plus, minus, .. } => match (plus, minus) {
            (USide::Form(sp), USide::Form(_)) => {
                let x1 = matrix_part(x, 0)?;
                let x2 = matrix_part(x, 1)?;
                let prod = x1 * x2;
                r.count("rank_plus", rank(x1));
                r.count("rank_minus", rank(x2));
                r.poly("char_poly", cp(&prod)?);
                r.counts("rank_words", rank_powers(&prod, sp.dim() + 1));
            }
            _ => {
                let a = frame_of(plucker_part(x, 0)?, limit)?;
                let b = frame_of(plucker_part(x, 1)?, limit)?;
                r = slsl_record(&(&a.transpose() * &b))?;
            }
        },
        Layout::DoubleFormGl { v, m } => {
            let x0 = matrix_part(x, 0)?;
            let xs = x0 * v.gram();
            let pair = &(&x0.transpose() * v.gram()) * &xs;
            r.count("rank", rank(x0));
            r.poly("char_poly", cp(&xs)?);
            r.poly("char_poly_pair", cp(&pair)?);
            r.counts("rank_powers", rank_powers(&xs, m + 1));
        }
        Layout::PairFormsGl { plus, minus, m } => {
            let x0 = matrix_part(x, 0)?;
            let xt = x0.transpose();
            let w_plus = &(&(&xt * plus.gram()) * x0) * minus.gram();
            let w_minus = &(&(x0 * minus.gram()) * &xt) * plus.gram();
            r.count("rank", rank(x0));
            r.poly("char_poly", cp(&w_plus)?);
            r.counts("rank_words_plus", rank_powers(&w_plus, m + 1));
            r.counts("rank_words_minus", rank_powers(&w_minus, m + 1));
        }
        Layout::GlGl { m, .. } => {
            let x0 = matrix_part(x, 0)?;
            r.count("rank", rank(x0));
            r.poly("char_poly", cp(x0)?);
            r.counts("rank_powers", rank_powers(x0, m + 1));
        }
        Layout::FourBlock { p, .. } => {
            let x1 = matrix_part(x, 0)?;
            let x2 = matrix_part(x, 1)?;
            let w1 = &x1.transpose() * x2;
            let w2 = x1 * &x2.transpose();
            r.count("rank_1", rank(x1));
            r.count("rank_2", rank(x2));
            r.poly("char_poly", cp(&w1)?);
            r.counts("rank_words_1", rank_powers(&w1, p + 1));
            r.counts("rank_words_2", rank_powers(&w2, p + 1));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::{Dims, ScenarioId};

    #[test]
    fn dsz_a_record() {
        let s = Scenario::new(ScenarioId::DszA, &Dims::from_pairs([("n", 4), ("m", 2)])).unwrap();
        let y = YPoint::single(RationalMatrix::from_i64(&[&[0, 1], &[0, 0]]));
        let r = y_invariants(&s, &y).unwrap();
        assert_eq!(r.get("rank_sym"), Some(&InvariantValue::Count(2)));
        assert_eq!(r.get("rank_alt"), Some(&InvariantValue::Count(2)));
        assert_eq!(r.get("det"), Some(&InvariantValue::Scalar(int(0))));
    }

    #[test]
    fn t3_1_record() {
        let s = Scenario::new(ScenarioId::T3_1, &Dims::from_pairs([("n", 5), ("m", 2)])).unwrap();
        let y = YPoint::single(RationalMatrix::from_i64(&[&[1, 0], &[0, 0]]));
        let r = y_invariants(&s, &y).unwrap();
        assert_eq!(r.get("rank"), Some(&InvariantValue::Count(1)));
        // S = [[0,1],[1,0]], S y = [[0,0],[1,0]] is nilpotent
        assert_eq!(
            r.get("char_poly"),
            Some(&InvariantValue::Poly(Polynomial::monomial(2)))
        );
    }

    #[test]
    fn zero_records_vanish() {
        for s in crate::scenarios::catalog() {
            let r = y_invariants(&s, &s.y_zero()).unwrap();
            assert!(r.closed_part_vanishes(), "{}", s.id());
            assert!(r.iter().all(|(_, v)| match v {
                InvariantValue::Count(c) => *c == 0,
                InvariantValue::Counts(c) => c.iter().all(|&x| x == 0),
                _ => true,
            }));
        }
    }

    #[test]
    fn det_pencil_examples() {
        // det(s y + ᵗy) for y = [[0,1],[0,0]]: [[0,s],[1,0]] -> -s
        let y = RationalMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(det_pencil(&y).unwrap(), vec![int(0), int(-1), int(0)]);
        let i = RationalMatrix::identity(2);
        assert_eq!(det_pencil(&i).unwrap(), vec![int(1), int(2), int(1)]);
    }
}
