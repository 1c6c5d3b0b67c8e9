use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, Rational, RationalMatrix};
use crate::error::{Error, Result};

/// Univariate polynomial with exact coefficients, stored by ascending power.
/// Trailing zero coefficients are stripped, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        Self { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Rational::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self { coeffs: c }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Power of `t` dividing the polynomial (its order of vanishing at 0).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// The polynomial with every factor of `t` removed.
    pub fn nonzero_part(&self) -> Self {
        match self.valuation() {
            Some(v) => Self::new(self.coeffs[v..].to_vec()),
            None => self.clone(),
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    /// Lagrange interpolation through `(x_i, y_i)` with distinct nodes.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Self {
        let mut acc = vec![Rational::zero(); points.len()];
        for (i, (xi, yi)) in points.iter().enumerate() {
            // basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
            let mut basis = vec![Rational::one()];
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![Rational::zero(); basis.len() + 1];
                for (k, b) in basis.iter().enumerate() {
                    next[k + 1] += b;
                    next[k] -= b * xj;
                }
                basis = next;
                denom *= xi - xj;
            }
            let scale = yi / denom;
            for (k, b) in basis.iter().enumerate() {
                acc[k] += b * &scale;
            }
        }
        Self::new(acc)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::new(Vec::new());
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Polynomial::new(c)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| super::parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Self::new(coeffs))
    }
}

/// `det(tI - M)` by the Faddeev-LeVerrier recurrence.
pub fn char_poly(m: &RationalMatrix) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            op: "char_poly",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    // coefficients c_n = 1, c_{n-1}, ..., c_0 of t^n + c_{n-1} t^{n-1} + ... + c_0
    let mut desc = vec![Rational::one()];
    let mut aux = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = M * M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(M M_k) / k
        aux = m.try_mul(&aux)?;
        let prev = desc[k - 1].clone();
        for i in 0..n {
            aux[(i, i)] += &prev;
        }
        let t = m.try_mul(&aux)?.trace();
        desc.push(-t / Rational::from_integer((k as i64).into()));
    }
    desc.reverse();
    Ok(Polynomial::new(desc))
}
