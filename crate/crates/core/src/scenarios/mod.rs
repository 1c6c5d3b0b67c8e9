//! Catalog of double fibrations `X <- W -> Y`.
//!
//! Each entry fixes the groups `G` (acting on the rows of the blocks of `W`)
//! and `G'` (acting on their columns), the quotient maps `psi: W -> Y` and
//! `phi: W -> X`, the size condition, and the invariant records used to
//! identify orbits.

mod invariants;
mod maps;
mod points;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{BilinearSpace, FormKind};

pub use invariants::{
    predicted_x_invariants, x_invariants, x_invariants_with_limit, y_invariants, InvariantRecord,
    InvariantValue,
};
pub use maps::{
    act_g, act_gp, act_gp_on_y, is_generic, phi, psi, random_g, random_gp, random_w, random_y, GroupElement,
};
pub use points::{MatrixShape, Slot, XPart, XPoint, YPoint};

/// Frozen scenario identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScenarioId {
    T3_1,
    T3_2,
    T3_3,
    T3_4,
    T3_5,
    T3_6,
    T4O,
    T4Sp,
    T4Sl,
    T5OO,
    T5SpSp,
    T5OSp,
    T5SlSl,
    T6O,
    T6Sp,
    T7OO,
    T7SpSp,
    T7OSp,
    GlGl,
    FourBlock,
    DszA,
    DszB,
}

use ScenarioId::*;

impl ScenarioId {
    pub const ALL: [ScenarioId; 22] = [
        T3_1, T3_2, T3_3, T3_4, T3_5, T3_6, T4O, T4Sp, T4Sl, T5OO, T5SpSp, T5OSp, T5SlSl, T6O, T6Sp, T7OO,
        T7SpSp, T7OSp, GlGl, FourBlock, DszA, DszB,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            T3_1 => "T3.1",
            T3_2 => "T3.2",
            T3_3 => "T3.3",
            T3_4 => "T3.4",
            T3_5 => "T3.5",
            T3_6 => "T3.6",
            T4O => "T4.O",
            T4Sp => "T4.Sp",
            T4Sl => "T4.SL",
            T5OO => "T5.OO",
            T5SpSp => "T5.SpSp",
            T5OSp => "T5.OSp",
            T5SlSl => "T5.SLSL",
            T6O => "T6.O",
            T6Sp => "T6.Sp",
            T7OO => "T7.OO",
            T7SpSp => "T7.SpSp",
            T7OSp => "T7.OSp",
            GlGl => "GLGL",
            FourBlock => "FOURBLOCK",
            DszA => "DSZ-A",
            DszB => "DSZ-B",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownScenario(s.to_string()))
    }

    pub fn dim_names(self) -> &'static [&'static str] {
        match self {
            T5OO | T5SpSp | T5OSp | T5SlSl => &["n", "p", "q"],
            T7OO | T7SpSp | T7OSp => &["r", "s", "m"],
            FourBlock => &["p", "q", "r", "s"],
            DszB => &["p", "q", "m"],
            _ => &["n", "m"],
        }
    }

    /// The size condition, as an inequality in the dimension names.
    pub fn condition(self) -> &'static str {
        match self {
            T3_1 | T3_3 => "2m < n",
            T3_2 | T6O => "4m < n",
            T3_4 | T3_6 => "m <= n",
            T3_5 | T4O | T4Sl | GlGl | DszA | T6Sp => "2m <= n",
            T4Sp => "4m <= n",
            T5OO | T5SlSl => "p + q <= n",
            T5SpSp => "2p + 2q <= n",
            T5OSp => "p + 2q <= n",
            T7OO => "2m < r, s",
            T7SpSp => "m <= r, s",
            T7OSp => "2m <= r - 1, s",
            FourBlock => "p + q <= r, s",
            DszB => "2m < p, 2q + 1",
        }
    }

    fn condition_holds(self, d: &Dims) -> Result<bool> {
        let g = |k: &str| d.get(k);
        Ok(match self {
            T3_1 | T3_3 => 2 * g("m")? < g("n")?,
            T3_2 | T6O => 4 * g("m")? < g("n")?,
            T3_4 | T3_6 => g("m")? <= g("n")?,
            T3_5 | T4O | T4Sl | GlGl | DszA | T6Sp => 2 * g("m")? <= g("n")?,
            T4Sp => 4 * g("m")? <= g("n")?,
            T5OO | T5SlSl => g("p")? + g("q")? <= g("n")?,
            T5SpSp => 2 * g("p")? + 2 * g("q")? <= g("n")?,
            T5OSp => g("p")? + 2 * g("q")? <= g("n")?,
            T7OO => 2 * g("m")? < g("r")? && 2 * g("m")? < g("s")?,
            T7SpSp => g("m")? <= g("r")? && g("m")? <= g("s")?,
            T7OSp => 2 * g("m")? < g("r")? && 2 * g("m")? <= g("s")?,
            FourBlock => {
                let pq = g("p")? + g("q")?;
                pq <= g("r")? && pq <= g("s")?
            }
            DszB => 2 * g("m")? < g("p")? && 2 * g("m")? < 2 * g("q")? + 1,
        })
    }

    /// Smallest legal dimensions with every size parameter positive.
    pub fn minimal_dims(self) -> Dims {
        let vals: &[usize] = match self {
            T3_1 | T3_3 => &[3, 1],
            T3_2 | T6O => &[5, 1],
            T3_4 | T3_6 => &[1, 1],
            T3_5 | T4O | T4Sl | GlGl | DszA | T6Sp => &[2, 1],
            T4Sp => &[4, 1],
            T5OO | T5SlSl => &[2, 1, 1],
            T5SpSp => &[4, 1, 1],
            T5OSp => &[3, 1, 1],
            T7OO => &[3, 3, 1],
            T7SpSp => &[1, 1, 1],
            T7OSp => &[3, 2, 1],
            FourBlock => &[1, 1, 2, 2],
            DszB => &[3, 1, 1],
        };
        Dims::from_pairs(self.dim_names().iter().copied().zip(vals.iter().copied()))
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for ScenarioId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for ScenarioId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Named size parameters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dims(BTreeMap<String, usize>);

impl Dims {
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, usize)>) -> Self {
        Self(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn get(&self, key: &str) -> Result<usize> {
        self.0
            .get(key)
            .copied()
            .ok_or_else(|| Error::MissingDim(key.to_string()))
    }

    pub fn set(&mut self, key: &str, value: usize) {
        self.0.insert(key.to_string(), value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &usize)> {
        self.0.iter()
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "GL")]
    Gl,
    #[serde(rename = "SL")]
    Sl,
    #[serde(rename = "O")]
    O,
    #[serde(rename = "Sp")]
    Sp,
}

/// A classical group by family and matrix size (`2n` for `Sp(2n)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub size: usize,
}

impl GroupSpec {
    pub fn dim(&self) -> usize {
        let n = self.size;
        match self.family {
            Family::Gl => n * n,
            Family::Sl => (n * n).saturating_sub(1),
            Family::O => n * n.saturating_sub(1) / 2,
            Family::Sp => (n / 2) * (n + 1),
        }
    }

    fn from_form(space: &BilinearSpace) -> Self {
        Self {
            family: match space.kind() {
                FormKind::Symmetric => Family::O,
                FormKind::Symplectic => Family::Sp,
            },
            size: space.dim(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::Gl => "GL",
            Family::Sl => "SL",
            Family::O => "O",
            Family::Sp => "Sp",
        };
        write!(f, "{name}({})", self.size)
    }
}

/// Group acting on the `U` side: a form-preserving group or `SL(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum USide {
    Form(BilinearSpace),
    Special(usize),
}

impl USide {
    pub fn size(&self) -> usize {
        match self {
            USide::Form(s) => s.dim(),
            USide::Special(k) => *k,
        }
    }

    fn group(&self) -> GroupSpec {
        match self {
            USide::Form(s) => GroupSpec::from_form(s),
            USide::Special(k) => GroupSpec {
                family: Family::Sl,
                size: *k,
            },
        }
    }
}

/// Block wiring of `W`, one variant per catalog family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Layout {
    /// `W = V ⊗ U`, one `N x k` frame; `psi` is the Gram matrix over `V`.
    Tensor { v: BilinearSpace, u: USide },
    /// `W = (V ⊕ V*) ⊗ U` under `GL(n)`; `psi = ᵗA B`.
    Contraction { n: usize, u: USide },
    /// `W = (Q^p ⊕ Q^2q) ⊗ U` under `O(p) x Sp(2q)`; `psi = (ᵗA S A + ᵗB J B) / 2`.
    TwoFormSl {
        plus: BilinearSpace,
        minus: BilinearSpace,
        m: usize,
    },
    /// `W = V ⊗ U+ ⊕ V* ⊗ U-` under `GL(n)`; `psi = ᵗA B`.
    SplitContraction { n: usize, plus: USide, minus: USide },
    /// `W = V ⊗ (U ⊕ U*)` under a form group; `psi` is the Gram matrix of `[A | B]`.
    DoubleFormGl { v: BilinearSpace, m: usize },
    /// `W = V+ ⊗ U ⊕ V- ⊗ U*` under two form groups; `psi` is the pair of Grams.
    PairFormsGl {
        plus: BilinearSpace,
        minus: BilinearSpace,
        m: usize,
    },
    /// `W = V ⊗ U* ⊕ V* ⊗ U` under `GL(n) x GL(m)`; `psi = ᵗA B`, `phi = A ᵗB`.
    GlGl { n: usize, m: usize },
    /// Four blocks under `GL(r) x GL(s)` and `GL(p) x GL(q)`.
    FourBlock { p: usize, q: usize, r: usize, s: usize },
}

/// Which factor acts on a block side and whether through the contragredient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SideAction {
    pub factor: usize,
    pub dual: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSpec {
    pub rows: usize,
    pub cols: usize,
    pub g: SideAction,
    pub gp: SideAction,
}

const fn nat(factor: usize) -> SideAction {
    SideAction { factor, dual: false }
}

const fn dual(factor: usize) -> SideAction {
    SideAction { factor, dual: true }
}

fn block(rows: usize, cols: usize, g: SideAction, gp: SideAction) -> BlockSpec {
    BlockSpec { rows, cols, g, gp }
}

/// A validated catalog entry at concrete dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    id: ScenarioId,
    dims: Dims,
    layout: Layout,
}

impl Scenario {
    /// Builds the scenario, rejecting dimensions that violate its condition.
    pub fn new(id: ScenarioId, dims: &Dims) -> Result<Self> {
        if !id.condition_holds(dims)? {
            return Err(Error::Condition {
                scenario: id.as_str().to_string(),
                requirement: id.condition().to_string(),
                got: dims.to_string(),
            });
        }
        Self::unchecked(id, dims)
    }

    /// Builds the block wiring without checking the size condition.
    /// Meant for negative controls.
    pub fn unchecked(id: ScenarioId, dims: &Dims) -> Result<Self> {
        let g = |k: &str| dims.get(k);
        let sym = BilinearSpace::symmetric;
        let symp = BilinearSpace::symplectic;
        let layout = match id {
            T3_1 => Layout::Tensor {
                v: sym(g("n")?),
                u: USide::Form(sym(g("m")?)),
            },
            T3_2 => Layout::Tensor {
                v: sym(g("n")?),
                u: USide::Form(symp(2 * g("m")?)?),
            },
            T3_3 => Layout::Tensor {
                v: sym(g("n")?),
                u: USide::Special(g("m")?),
            },
            T3_4 => Layout::Tensor {
                v: symp(2 * g("n")?)?,
                u: USide::Form(sym(g("m")?)),
            },
            T3_5 => Layout::Tensor {
                v: symp(2 * g("n")?)?,
                u: USide::Form(symp(2 * g("m")?)?),
            },
            T3_6 => Layout::Tensor {
                v: symp(2 * g("n")?)?,
                u: USide::Special(g("m")?),
            },
            T4O => Layout::Contraction {
                n: g("n")?,
                u: USide::Form(sym(g("m")?)),
            },
            T4Sp => Layout::Contraction {
                n: g("n")?,
                u: USide::Form(symp(2 * g("m")?)?),
            },
            T4Sl | DszA => Layout::Contraction {
                n: g("n")?,
                u: USide::Special(g("m")?),
            },
            T5OO => Layout::SplitContraction {
                n: g("n")?,
                plus: USide::Form(sym(g("p")?)),
                minus: USide::Form(sym(g("q")?)),
            },
            T5SpSp => Layout::SplitContraction {
                n: g("n")?,
                plus: USide::Form(symp(2 * g("p")?)?),
                minus: USide::Form(symp(2 * g("q")?)?),
            },
            T5OSp => Layout::SplitContraction {
                n: g("n")?,
                plus: USide::Form(sym(g("p")?)),
                minus: USide::Form(symp(2 * g("q")?)?),
            },
            T5SlSl => Layout::SplitContraction {
                n: g("n")?,
                plus: USide::Special(g("p")?),
                minus: USide::Special(g("q")?),
            },
            T6O => Layout::DoubleFormGl {
                v: sym(g("n")?),
                m: g("m")?,
            },
            T6Sp => Layout::DoubleFormGl {
                v: symp(2 * g("n")?)?,
                m: g("m")?,
            },
            T7OO => Layout::PairFormsGl {
                plus: sym(g("r")?),
                minus: sym(g("s")?),
                m: g("m")?,
            },
            T7SpSp => Layout::PairFormsGl {
                plus: symp(2 * g("r")?)?,
                minus: symp(2 * g("s")?)?,
                m: g("m")?,
            },
            T7OSp => Layout::PairFormsGl {
                plus: sym(g("r")?),
                minus: symp(2 * g("s")?)?,
                m: g("m")?,
            },
            GlGl => Layout::GlGl {
                n: g("n")?,
                m: g("m")?,
            },
            FourBlock => Layout::FourBlock {
                p: g("p")?,
                q: g("q")?,
                r: g("r")?,
                s: g("s")?,
            },
            DszB => Layout::TwoFormSl {
                plus: sym(g("p")?),
                minus: symp(2 * g("q")?)?,
                m: g("m")?,
            },
        };
        let mut used = Dims::default();
        for name in id.dim_names() {
            used.set(name, dims.get(name)?);
        }
        Ok(Self {
            id,
            dims: used,
            layout,
        })
    }

    pub fn minimal(id: ScenarioId) -> Self {
        Self::new(id, &id.minimal_dims()).expect("minimal dimensions are legal")
    }

    pub fn id(&self) -> ScenarioId {
        self.id
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn condition(&self) -> &'static str {
        self.id.condition()
    }

    pub fn blocks(&self) -> Vec<BlockSpec> {
        match &self.layout {
            Layout::Tensor { v, u } => vec![block(v.dim(), u.size(), nat(0), nat(0))],
            Layout::Contraction { n, u } => {
                let k = u.size();
                vec![block(*n, k, nat(0), nat(0)), block(*n, k, dual(0), nat(0))]
            }
            Layout::TwoFormSl { plus, minus, m } => vec![
                block(plus.dim(), *m, nat(0), nat(0)),
                block(minus.dim(), *m, nat(1), nat(0)),
            ],
            Layout::SplitContraction { n, plus, minus } => vec![
                block(*n, plus.size(), nat(0), nat(0)),
                block(*n, minus.size(), dual(0), nat(1)),
            ],
            Layout::DoubleFormGl { v, m } => vec![
                block(v.dim(), *m, nat(0), nat(0)),
                block(v.dim(), *m, nat(0), dual(0)),
            ],
            Layout::PairFormsGl { plus, minus, m } => vec![
                block(plus.dim(), *m, nat(0), nat(0)),
                block(minus.dim(), *m, nat(1), dual(0)),
            ],
            Layout::GlGl { n, m } => vec![block(*n, *m, nat(0), dual(0)), block(*n, *m, dual(0), nat(0))],
            Layout::FourBlock { p, q, r, s } => vec![
                block(*r, *p, nat(0), nat(0)),
                block(*s, *p, dual(1), dual(0)),
                block(*r, *q, dual(0), dual(1)),
                block(*s, *q, nat(1), nat(1)),
            ],
        }
    }

    pub fn g_factors(&self) -> Vec<GroupSpec> {
        let gl = |size| GroupSpec {
            family: Family::Gl,
            size,
        };
        match &self.layout {
            Layout::Tensor { v, .. } | Layout::DoubleFormGl { v, .. } => vec![GroupSpec::from_form(v)],
            Layout::Contraction { n, .. } | Layout::SplitContraction { n, .. } | Layout::GlGl { n, .. } => {
                vec![gl(*n)]
            }
            Layout::TwoFormSl { plus, minus, .. } | Layout::PairFormsGl { plus, minus, .. } => {
                vec![GroupSpec::from_form(plus), GroupSpec::from_form(minus)]
            }
            Layout::FourBlock { r, s, .. } => vec![gl(*r), gl(*s)],
        }
    }

    pub fn gp_factors(&self) -> Vec<GroupSpec> {
        let gl = |size| GroupSpec {
            family: Family::Gl,
            size,
        };
        match &self.layout {
            Layout::Tensor { u, .. } | Layout::Contraction { u, .. } => vec![u.group()],
            Layout::TwoFormSl { m, .. } => vec![GroupSpec {
                family: Family::Sl,
                size: *m,
            }],
            Layout::SplitContraction { plus, minus, .. } => vec![plus.group(), minus.group()],
            Layout::DoubleFormGl { m, .. } | Layout::PairFormsGl { m, .. } | Layout::GlGl { m, .. } => {
                vec![gl(*m)]
            }
            Layout::FourBlock { p, q, .. } => vec![gl(*p), gl(*q)],
        }
    }

    pub fn dim_g(&self) -> usize {
        self.g_factors().iter().map(GroupSpec::dim).sum()
    }

    pub fn dim_gp(&self) -> usize {
        self.gp_factors().iter().map(GroupSpec::dim).sum()
    }

    pub fn dim_w(&self) -> usize {
        self.blocks().iter().map(|b| b.rows * b.cols).sum()
    }

    /// Dimension of the quotient `Y` (all target spaces are affine spaces).
    pub fn dim_y(&self) -> usize {
        self.y_slots().iter().map(Slot::dim).sum()
    }

    /// Expected dimension of the null cone `psi^-1(0)` under flatness.
    pub fn dim_null_cone(&self) -> usize {
        self.dim_w() - self.dim_y()
    }

    /// Description of `Y` as a list of matrix slots.
    pub fn y_slots(&self) -> Vec<Slot> {
        let form_shape = |k: FormKind| match k {
            FormKind::Symmetric => MatrixShape::Symmetric,
            FormKind::Symplectic => MatrixShape::Skew,
        };
        let sq = |n: usize, shape| Slot::Matrix {
            rows: n,
            cols: n,
            shape,
            rank_bound: None,
        };
        let gen = |r: usize, c: usize| Slot::Matrix {
            rows: r,
            cols: c,
            shape: MatrixShape::General,
            rank_bound: None,
        };
        match &self.layout {
            Layout::Tensor { v, u } => vec![sq(u.size(), form_shape(v.kind()))],
            Layout::Contraction { u, .. } => vec![gen(u.size(), u.size())],
            Layout::TwoFormSl { m, .. } | Layout::GlGl { m, .. } => vec![gen(*m, *m)],
            Layout::SplitContraction { plus, minus, .. } => vec![gen(plus.size(), minus.size())],
            Layout::DoubleFormGl { v, m } => vec![sq(2 * m, form_shape(v.kind()))],
            Layout::PairFormsGl { plus, minus, m } => {
                vec![sq(*m, form_shape(plus.kind())), sq(*m, form_shape(minus.kind()))]
            }
            Layout::FourBlock { p, q, .. } => vec![gen(*p, *q), gen(*p, *q)],
        }
    }

    /// Description of `X`.
    pub fn x_slots(&self) -> Vec<Slot> {
        let gram_slot = |n: usize, u: &USide| match u {
            USide::Form(s) => Slot::Matrix {
                rows: n,
                cols: n,
                shape: match s.kind() {
                    FormKind::Symmetric => MatrixShape::Symmetric,
                    FormKind::Symplectic => MatrixShape::Skew,
                },
                rank_bound: Some(s.dim()),
            },
            USide::Special(k) => Slot::Plucker {
                ambient_dim: n,
                plane_dim: *k,
            },
        };
        let det = |r: usize, c: usize, bound: usize| Slot::Matrix {
            rows: r,
            cols: c,
            shape: MatrixShape::General,
            rank_bound: Some(bound),
        };
        match &self.layout {
            Layout::Tensor { v, u } => vec![gram_slot(v.dim(), u)],
            Layout::Contraction { n, u } => vec![gram_slot(2 * n, u)],
            Layout::TwoFormSl { plus, minus, m } => vec![Slot::Plucker {
                ambient_dim: plus.dim() + minus.dim(),
                plane_dim: *m,
            }],
            Layout::SplitContraction { n, plus, minus } => vec![gram_slot(*n, plus), gram_slot(*n, minus)],
            Layout::DoubleFormGl { v, m } => vec![det(v.dim(), v.dim(), *m)],
            Layout::PairFormsGl { plus, minus, m } => vec![det(plus.dim(), minus.dim(), *m)],
            Layout::GlGl { n, m } => vec![det(*n, *n, *m)],
            Layout::FourBlock { p, q, r, s } => vec![det(*r, *s, *p), det(*r, *s, *q)],
        }
    }

    /// Zero point of `Y`.
    pub fn y_zero(&self) -> YPoint {
        YPoint(self.y_slots().iter().map(Slot::zero_matrix).collect())
    }

    /// Zero point of `W`.
    pub fn w_zero(&self) -> Vec<crate::exactlin::RationalMatrix> {
        self.blocks()
            .iter()
            .map(|b| crate::exactlin::RationalMatrix::zeros(b.rows, b.cols))
            .collect()
    }

    /// Checks that `y` lies in `Y`.
    pub fn check_y(&self, y: &YPoint) -> Result<()> {
        points::check_matrices(&self.y_slots(), &y.0, "Y")
    }

    /// Checks that `w` has the block shapes of `W`.
    pub fn check_w(&self, w: &[crate::exactlin::RationalMatrix]) -> Result<()> {
        let blocks = self.blocks();
        if blocks.len() != w.len() {
            return Err(crate::error::shape(
                "W",
                format!("{} blocks given, {} expected", w.len(), blocks.len()),
            ));
        }
        for (i, (b, m)) in blocks.iter().zip(w).enumerate() {
            if m.shape() != (b.rows, b.cols) {
                return Err(crate::error::shape(
                    "W",
                    format!("block {i} is {:?}, expected {:?}", m.shape(), (b.rows, b.cols)),
                ));
            }
        }
        Ok(())
    }

    /// Checks that `x` lies in `X` (Plücker relations are guarded by `limit`).
    pub fn check_x(&self, x: &XPoint, limit: usize) -> Result<()> {
        points::check_x(&self.x_slots(), x, limit)
    }
}

/// Catalog entries at minimal legal dimensions, in id order.
pub fn catalog() -> Vec<Scenario> {
    ScenarioId::ALL.iter().map(|&id| Scenario::minimal(id)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_complete_and_legal() {
        let cat = catalog();
        assert_eq!(cat.len(), 22);
        for s in &cat {
            assert_eq!(ScenarioId::parse(s.id().as_str()).unwrap(), s.id());
        }
        assert_eq!(ScenarioId::T7OSp.condition(), "2m <= r - 1, s");
        assert_eq!(ScenarioId::T4Sp.condition(), "4m <= n");
        assert_eq!(ScenarioId::GlGl.condition(), "2m <= n");
    }

    #[test]
    fn t3_3_targets() {
        let s = Scenario::minimal(ScenarioId::T3_3);
        assert!(matches!(
            s.x_slots()[0],
            Slot::Plucker {
                ambient_dim: 3,
                plane_dim: 1
            }
        ));
        assert!(matches!(
            s.y_slots()[0],
            Slot::Matrix {
                shape: MatrixShape::Symmetric,
                ..
            }
        ));
        let t4 = Scenario::minimal(ScenarioId::T4Sl);
        assert!(matches!(
            t4.x_slots()[0],
            Slot::Plucker {
                ambient_dim: 4,
                plane_dim: 1
            }
        ));
    }

    #[test]
    fn conditions_are_enforced() {
        let d = Dims::from_pairs([("n", 2), ("m", 1)]);
        let err = Scenario::new(ScenarioId::T3_1, &d).unwrap_err();
        assert!(err.to_string().contains("requires 2m < n"), "{err}");
        assert!(Scenario::unchecked(ScenarioId::T3_1, &d).is_ok());
        let zero = Dims::from_pairs([("n", 1), ("m", 0)]);
        assert!(Scenario::new(ScenarioId::T3_1, &zero).is_ok());
        assert!(matches!(
            Scenario::new(ScenarioId::T3_1, &Dims::from_pairs([("n", 3)])),
            Err(Error::MissingDim(_))
        ));
        assert!(matches!(ScenarioId::parse("T9"), Err(Error::UnknownScenario(_))));
        let osp = Dims::from_pairs([("r", 2), ("s", 2), ("m", 1)]);
        assert!(Scenario::new(ScenarioId::T7OSp, &osp).is_err());
    }

    #[test]
    fn dimension_bookkeeping() {
        let s = Scenario::minimal(ScenarioId::DszA);
        assert_eq!((s.dim_w(), s.dim_y(), s.dim_null_cone()), (4, 1, 3));
        assert_eq!(s.dim_g(), 4);
        assert_eq!(s.dim_gp(), 0);
        let sp = GroupSpec {
            family: Family::Sp,
            size: 4,
        };
        assert_eq!(sp.dim(), 10);
    }
}
