//! Exact rational scalars and matrices: the linear-algebra kernel every other
//! module consumes. Nothing here rounds.

mod elimination;
mod matrix;
mod minors;
mod pfaffian;
mod poly;
mod random;

use num_rational::BigRational;

pub use elimination::{column_basis, det, inverse, kernel_basis, rank, rref, solve};
pub use matrix::RationalMatrix;
pub use minors::{maximal_minors, minor, subset_rank, subsets};
pub use pfaffian::{pfaffian, EXPANSION_LIMIT};
pub use poly::{char_poly, Polynomial};
pub use random::{nonzero_int, random_matrix, random_matrix_with, rng_from_seed, SampleRng};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"p/q"` or `"p"`; surrounding whitespace is ignored.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if d == 0.into() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Serde adapter for sequences of rationals as `"p/q"` strings.
pub mod rational_strings {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// `char_poly(A B) * t^cols(A) = char_poly(B A) * t^rows(A)` for `A: r x c`, `B: c x r`.
pub fn ab_ba_identity_holds(a: &RationalMatrix, b: &RationalMatrix) -> Result<bool> {
    let ab = char_poly(&a.try_mul(b)?)?;
    let ba = char_poly(&b.try_mul(a)?)?;
    Ok(ab.shift(a.cols()) == ba.shift(a.rows()))
}
