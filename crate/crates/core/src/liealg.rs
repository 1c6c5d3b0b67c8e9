//! Infinitesimal actions: Lie algebra bases, orbit dimensions as ranks of
//! action maps, and sampled audits of the null-cone and generic-fiber
//! dimension counts.

use serde::Serialize;

use crate::error::Result;
use crate::exactlin::{random_matrix_with, rank, rng_from_seed, RationalMatrix, SampleRng};
use crate::forms::BilinearSpace;
use crate::scenarios::{
    act_g, act_gp, is_generic, random_g, random_gp, Dims, Family, GroupSpec, Layout, Scenario, ScenarioId,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraBasis {
    pub family: GroupSpec,
    pub basis: Vec<RationalMatrix>,
}

fn unit(n: usize, i: usize, j: usize) -> RationalMatrix {
    let mut e = RationalMatrix::zeros(n, n);
    e[(i, j)] = crate::exactlin::int(1);
    e
}

/// Basis of the Lie algebra of `spec`, in its defining representation.
/// Orthogonal and symplectic algebras are taken for the split forms:
/// `S K` with `K` skew, and `J K` with `K` symmetric.
pub fn lie_basis(spec: GroupSpec) -> LieAlgebraBasis {
    let n = spec.size;
    let basis = match spec.family {
        Family::Gl => (0..n).flat_map(|i| (0..n).map(move |j| unit(n, i, j))).collect(),
        Family::Sl => {
            let mut b: Vec<_> = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| unit(n, i, j)))
                .collect();
            b.extend((1..n).map(|i| &unit(n, i - 1, i - 1) - &unit(n, i, i)));
            b
        }
        Family::O => {
            let s = BilinearSpace::symmetric(n);
            (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| s.gram() * &(&unit(n, i, j) - &unit(n, j, i)))
                .collect()
        }
        Family::Sp => {
            let j = BilinearSpace::symplectic(n).expect("Sp sizes are even");
            (0..n)
                .flat_map(|a| (a..n).map(move |b| (a, b)))
                .map(|(a, b)| {
                    let k = if a == b {
                        unit(n, a, a)
                    } else {
                        &unit(n, a, b) + &unit(n, b, a)
                    };
                    j.gram() * &k
                })
                .collect()
        }
    };
    LieAlgebraBasis { family: spec, basis }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    #[serde(rename = "G")]
    G,
    #[serde(rename = "G'")]
    GPrime,
}

/// The tangent vector `xi . w` for one Lie algebra element acting through one factor.
fn tangent(
    s: &Scenario,
    side: Side,
    factor: usize,
    xi: &RationalMatrix,
    w: &[RationalMatrix],
) -> Vec<RationalMatrix> {
    s.blocks()
        .iter()
        .zip(w)
        .map(|(b, a)| {
            let act = match side {
                Side::G => b.g,
                Side::GPrime => b.gp,
            };
            if act.factor != factor {
                return RationalMatrix::zeros(a.rows(), a.cols());
            }
            match (side, act.dual) {
                (Side::G, false) => xi * a,
                (Side::G, true) => -(&xi.transpose() * a),
                (Side::GPrime, false) => a * xi,
                (Side::GPrime, true) => -(a * &xi.transpose()),
            }
        })
        .collect()
}

fn factors(s: &Scenario, side: Side) -> Vec<GroupSpec> {
    match side {
        Side::G => s.g_factors(),
        Side::GPrime => s.gp_factors(),
    }
}

/// Tangent vectors `xi . w` over a basis of the Lie algebra of the chosen side.
pub fn tangent_vectors(s: &Scenario, side: Side, w: &[RationalMatrix]) -> Result<Vec<Vec<RationalMatrix>>> {
    s.check_w(w)?;
    Ok(factors(s, side)
        .into_iter()
        .enumerate()
        .flat_map(|(k, spec)| lie_basis(spec).basis.into_iter().map(move |xi| (k, xi)))
        .map(|(k, xi)| tangent(s, side, k, &xi, w))
        .collect())
}

/// The `dim W x dim G` matrix whose columns are the flattened tangent vectors.
pub struct ActionMap {
    pub side: Side,
    pub matrix: RationalMatrix,
}

pub fn action_map(s: &Scenario, side: Side, w: &[RationalMatrix]) -> Result<ActionMap> {
    let cols: Vec<Vec<_>> = tangent_vectors(s, side, w)?
        .iter()
        .map(|t| t.iter().flat_map(|b| b.entries().iter().cloned()).collect())
        .collect();
    let matrix = RationalMatrix::from_fn(s.dim_w(), cols.len(), |i, j| cols[j][i].clone());
    Ok(ActionMap { side, matrix })
}

/// `dim G.w = dim G - dim Stab(w)`.
pub fn orbit_dim(s: &Scenario, side: Side, w: &[RationalMatrix]) -> Result<usize> {
    Ok(rank(&action_map(s, side, w)?.matrix))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NullConeReport {
    pub scenario: ScenarioId,
    pub dims: Dims,
    pub samples: usize,
    pub seed: u64,
    pub dim_w: usize,
    pub dim_y: usize,
    pub dim_g: usize,
    pub expected_dim_null_cone: usize,
    pub max_orbit_dim: Option<usize>,
    pub stabilizer_dim: Option<usize>,
    pub status: Status,
    pub evidence: &'static str,
    pub reducedness: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `k` columns spanning an isotropic subspace, of full rank when `k` fits.
fn isotropic_frame(space: &BilinearSpace, k: usize, rng: &mut SampleRng) -> RationalMatrix {
    let h = space.pairs();
    let mut f = RationalMatrix::zeros(space.dim(), k);
    for j in 0..k {
        if j < h {
            f[(j, j)] = crate::exactlin::int(1);
        } else {
            let c = random_matrix_with(rng, h, 1, 3);
            for i in 0..h {
                f[(i, j)] = c[(i, 0)].clone();
            }
        }
    }
    f
}

/// `[0_a; I_b; 0]` when it fits, otherwise as much of it as fits.
fn offset_frame(rows: usize, a: usize, b: usize) -> RationalMatrix {
    RationalMatrix::from_fn(rows, b, |i, j| {
        if i >= a && i - a == j {
            crate::exactlin::int(1)
        } else {
            crate::exactlin::int(0)
        }
    })
}

/// A point of the null cone in its expected dense orbit, before randomization.
fn null_cone_seed(s: &Scenario, rng: &mut SampleRng) -> Vec<RationalMatrix> {
    let blocks = s.blocks();
    let pair = |i: usize, j: usize| {
        let (a, b) = (blocks[i], blocks[j]);
        (
            offset_frame(a.rows, 0, a.cols),
            offset_frame(b.rows, a.cols, b.cols),
        )
    };
    match s.layout() {
        Layout::Tensor { v, u } => vec![isotropic_frame(v, u.size(), rng)],
        Layout::DoubleFormGl { v, m } => {
            let f = isotropic_frame(v, 2 * m, rng);
            vec![f.slice(0, v.dim(), 0, *m), f.slice(0, v.dim(), *m, 2 * m)]
        }
        Layout::PairFormsGl { plus, minus, m } | Layout::TwoFormSl { plus, minus, m } => {
            vec![isotropic_frame(plus, *m, rng), isotropic_frame(minus, *m, rng)]
        }
        Layout::Contraction { .. } | Layout::SplitContraction { .. } | Layout::GlGl { .. } => {
            let (a, b) = pair(0, 1);
            vec![a, b]
        }
        Layout::FourBlock { .. } => {
            let (p1, p3) = pair(0, 2);
            let (p2, p4) = pair(1, 3);
            vec![p1, p2, p3, p4]
        }
    }
}

/// Samples points of `psi^-1(0)` moved by random elements of both groups and
/// records the largest `G`-orbit dimension seen.
pub fn audit_null_cone(s: &Scenario, samples: usize, seed: u64) -> NullConeReport {
    let mut rng = rng_from_seed(seed);
    let expected = s.dim_null_cone();
    let mut max_dim: Option<usize> = None;
    let mut note = None;
    for _ in 0..samples.max(1) {
        let w = null_cone_seed(s, &mut rng);
        let moved = act_g(s, &w, &random_g(s, &mut rng)).and_then(|w| act_gp(s, &w, &random_gp(s, &mut rng)));
        let result = moved.and_then(|w| {
            let y = crate::scenarios::psi(s, &w)?;
            if !y.is_zero() {
                return Err(crate::error::Error::Internal("sample left the null cone".into()));
            }
            orbit_dim(s, Side::G, &w)
        });
        match result {
            Ok(d) => max_dim = Some(max_dim.map_or(d, |m| m.max(d))),
            Err(e) => {
                note = Some(e.to_string());
                break;
            }
        }
    }
    let status = Status::of(note.is_none() && max_dim == Some(expected));
    NullConeReport {
        scenario: s.id(),
        dims: s.dims().clone(),
        samples,
        seed,
        dim_w: s.dim_w(),
        dim_y: s.dim_y(),
        dim_g: s.dim_g(),
        expected_dim_null_cone: expected,
        max_orbit_dim: max_dim,
        stabilizer_dim: max_dim.map(|d| s.dim_g() - d),
        status,
        evidence: "WITNESSED",
        reducedness: "trusted",
        note,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericFiberReport {
    pub scenario: ScenarioId,
    pub dims: Dims,
    pub samples: usize,
    pub seed: u64,
    pub generic_samples: usize,
    pub excluded_samples: usize,
    pub expected_g_orbit_dim: usize,
    pub g_orbit_dims: Vec<usize>,
    pub fiber_dimension: Status,
    pub expected_gp_stabilizer_dim: usize,
    pub gp_stabilizer_dims: Vec<usize>,
    pub gp_stabilizer: Status,
    pub status: Status,
    pub evidence: &'static str,
}

/// Generic `G'` stabilizer dimension. The frames in every catalog layout are
/// of full column rank on the generic set, which leaves no room for a
/// positive-dimensional stabilizer.
pub fn generic_gp_stabilizer_dim(_: &Scenario) -> usize {
    0
}

/// Random points of `W` on the generic set: checks `dim G.w = dim W - dim Y`
/// and the generic `G'` stabilizer dimension.
pub fn audit_generic_fiber(s: &Scenario, samples: usize, seed: u64) -> GenericFiberReport {
    let mut rng = rng_from_seed(seed);
    let expected_g = s.dim_null_cone();
    let expected_stab = generic_gp_stabilizer_dim(s);
    let mut g_dims = Vec::new();
    let mut stab_dims = Vec::new();
    let mut excluded = 0;
    for _ in 0..samples {
        let w: Vec<RationalMatrix> = s
            .blocks()
            .iter()
            .map(|b| random_matrix_with(&mut rng, b.rows, b.cols, 4))
            .collect();
        if !is_generic(s, &w) {
            excluded += 1;
            continue;
        }
        if let (Ok(g), Ok(gp)) = (orbit_dim(s, Side::G, &w), orbit_dim(s, Side::GPrime, &w)) {
            g_dims.push(g);
            stab_dims.push(s.dim_gp() - gp);
        }
    }
    g_dims.sort_unstable();
    g_dims.dedup();
    stab_dims.sort_unstable();
    stab_dims.dedup();
    // a sampled point may land on a lower-dimensional orbit by accident, so
    // the check asks for the expected value to be attained and never exceeded
    let fiber_ok = g_dims.last() == Some(&expected_g);
    let stab_ok = stab_dims.first() == Some(&expected_stab);
    GenericFiberReport {
        scenario: s.id(),
        dims: s.dims().clone(),
        samples,
        seed,
        generic_samples: samples - excluded,
        excluded_samples: excluded,
        expected_g_orbit_dim: expected_g,
        g_orbit_dims: g_dims,
        fiber_dimension: Status::of(fiber_ok),
        expected_gp_stabilizer_dim: expected_stab,
        gp_stabilizer_dims: stab_dims,
        gp_stabilizer: Status::of(stab_ok),
        status: Status::of(fiber_ok && stab_ok),
        evidence: "WITNESSED",
    }
}
