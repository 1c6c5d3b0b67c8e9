use serde::{Deserialize, Serialize};

use crate::error::{shape, Error, Result};
use crate::exactlin::{rank, RationalMatrix};
use crate::quotients::{plucker_relations_ok_with_limit, PluckerVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixShape {
    General,
    Symmetric,
    Skew,
}

/// One component of a quotient space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Slot {
    Matrix {
        rows: usize,
        cols: usize,
        shape: MatrixShape,
        rank_bound: Option<usize>,
    },
    Plucker {
        #[serde(rename = "N")]
        ambient_dim: usize,
        #[serde(rename = "m")]
        plane_dim: usize,
    },
}

impl Slot {
    /// Dimension of the slot as an affine variety; only used for matrix slots of `Y`.
    pub fn dim(&self) -> usize {
        match *self {
            Slot::Matrix {
                rows, cols, shape, ..
            } => match shape {
                MatrixShape::General => rows * cols,
                MatrixShape::Symmetric => rows * (rows + 1) / 2,
                MatrixShape::Skew => rows * rows.saturating_sub(1) / 2,
            },
            Slot::Plucker { .. } => 0,
        }
    }

    pub(crate) fn zero_matrix(&self) -> RationalMatrix {
        match *self {
            Slot::Matrix { rows, cols, .. } => RationalMatrix::zeros(rows, cols),
            Slot::Plucker { .. } => RationalMatrix::zeros(0, 0),
        }
    }
}

/// A point of `Y`: one matrix per slot. Serialized as a bare matrix when
/// there is a single slot, as a list of matrices otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YPoint(pub Vec<RationalMatrix>);

impl YPoint {
    pub fn single(m: RationalMatrix) -> Self {
        Self(vec![m])
    }

    pub fn pair(a: RationalMatrix, b: RationalMatrix) -> Self {
        Self(vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(RationalMatrix::is_zero)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum YRepr {
    One(RationalMatrix),
    Many(Vec<RationalMatrix>),
}

impl Serialize for YPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.len() == 1 {
            self.0[0].serialize(s)
        } else {
            self.0.serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for YPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // a list of matrices is tried first; a bare matrix fails that shape
        let raw = serde_json::Value::deserialize(d)?;
        let is_list_of_matrices = raw
            .as_array()
            .and_then(|rows| rows.first())
            .and_then(|r| r.as_array())
            .and_then(|r| r.first())
            .is_some_and(|e| e.is_array());
        let parsed = if is_list_of_matrices {
            serde_json::from_value::<Vec<RationalMatrix>>(raw).map(YRepr::Many)
        } else {
            serde_json::from_value::<YRepr>(raw)
        };
        match parsed.map_err(serde::de::Error::custom)? {
            YRepr::One(m) => Ok(Self(vec![m])),
            YRepr::Many(v) => Ok(Self(v)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum XPart {
    Plucker(PluckerVector),
    Matrix(RationalMatrix),
}

impl XPart {
    pub fn matrix(&self) -> Option<&RationalMatrix> {
        match self {
            XPart::Matrix(m) => Some(m),
            XPart::Plucker(_) => None,
        }
    }

    pub fn plucker(&self) -> Option<&PluckerVector> {
        match self {
            XPart::Plucker(p) => Some(p),
            XPart::Matrix(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            XPart::Matrix(m) => m.is_zero(),
            XPart::Plucker(p) => p.is_zero(),
        }
    }
}

/// A point of `X`, one part per slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct XPoint(pub Vec<XPart>);

impl XPoint {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(XPart::is_zero)
    }
}

fn check_matrix(slot: &Slot, m: &RationalMatrix, what: &str) -> Result<()> {
    let Slot::Matrix {
        rows,
        cols,
        shape: kind,
        rank_bound,
    } = *slot
    else {
        return Err(Error::Membership(format!("{what}: expected a Plücker vector")));
    };
    if m.shape() != (rows, cols) {
        return Err(shape(
            "membership",
            format!(
                "{what} component is {}x{}, expected {rows}x{cols}",
                m.rows(),
                m.cols()
            ),
        ));
    }
    match kind {
        MatrixShape::Symmetric if !m.is_symmetric() => {
            return Err(Error::Membership(format!("{what} component must be symmetric")))
        }
        MatrixShape::Skew if !m.is_skew() => {
            return Err(Error::Membership(format!(
                "{what} component must be skew-symmetric"
            )))
        }
        _ => {}
    }
    if let Some(r) = rank_bound {
        let got = rank(m);
        if got > r {
            return Err(Error::Membership(format!(
                "{what} component has rank {got} > {r}"
            )));
        }
    }
    Ok(())
}

pub(crate) fn check_matrices(slots: &[Slot], parts: &[RationalMatrix], what: &str) -> Result<()> {
    if slots.len() != parts.len() {
        return Err(shape(
            "membership",
            format!("{what} needs {} components, got {}", slots.len(), parts.len()),
        ));
    }
    slots
        .iter()
        .zip(parts)
        .try_for_each(|(s, m)| check_matrix(s, m, what))
}

pub(crate) fn check_x(slots: &[Slot], x: &XPoint, limit: usize) -> Result<()> {
    if slots.len() != x.0.len() {
        return Err(shape(
            "membership",
            format!("X needs {} components, got {}", slots.len(), x.0.len()),
        ));
    }
    for (slot, part) in slots.iter().zip(&x.0) {
        match (slot, part) {
            (Slot::Matrix { .. }, XPart::Matrix(m)) => check_matrix(slot, m, "X")?,
            (
                Slot::Plucker {
                    ambient_dim,
                    plane_dim,
                },
                XPart::Plucker(p),
            ) => {
                if p.ambient_dim != *ambient_dim || p.plane_dim != *plane_dim {
                    return Err(shape(
                        "membership",
                        format!(
                            "Plücker vector for ({}, {}), expected ({ambient_dim}, {plane_dim})",
                            p.ambient_dim, p.plane_dim
                        ),
                    ));
                }
                if !plucker_relations_ok_with_limit(p, limit)? {
                    return Err(Error::Membership("Plücker relations fail".into()));
                }
            }
            _ => return Err(Error::Membership("X component of the wrong type".into())),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    #[test]
    fn y_point_json_forms() {
        let single: YPoint = serde_json::from_str(r#"[["0"]]"#).unwrap();
        assert_eq!(single.0, vec![RationalMatrix::zeros(1, 1)]);
        let pair: YPoint = serde_json::from_str(r#"[[["1"]], [["2/3"]]]"#).unwrap();
        assert_eq!(pair.0.len(), 2);
        assert_eq!(serde_json::to_string(&single).unwrap(), r#"[["0"]]"#);
        assert_eq!(serde_json::to_string(&pair).unwrap(), r#"[[["1"]],[["2/3"]]]"#);
    }

    #[test]
    fn x_point_json_forms() {
        let p = PluckerVector::new(2, 1, vec![int(1), int(0)]).unwrap();
        let x = XPoint(vec![
            XPart::Plucker(p),
            XPart::Matrix(RationalMatrix::identity(1)),
        ]);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"[{"N":2,"m":1,"coords":["1","0"]},[["1"]]]"#);
        let back: XPoint = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
    }
}
