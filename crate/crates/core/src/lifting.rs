//! The lifting map `theta` on orbit representatives.
//!
//! `theta(y)` picks a generic point `w` of the fiber `psi^-1(y)` and returns
//! `phi(w)`; orbit identity on both sides is read off invariant records.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{char_poly, det, pfaffian, rank, Rational, RationalMatrix};
use crate::forms::{gram, realize_gram, BilinearSpace, FormKind, GramTarget};
use crate::quotients::{induced_pairing, plucker_pairing, DEFAULT_MAX_MINORS};
use crate::scenarios::{
    is_generic, phi, predicted_x_invariants, psi, x_invariants_with_limit, y_invariants, InvariantRecord,
    Layout, Scenario, ScenarioId, USide, XPoint, YPoint,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transported {
    pub y: InvariantRecord,
    pub x: InvariantRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftResult {
    pub y: YPoint,
    pub w: Vec<RationalMatrix>,
    pub x: XPoint,
    pub transported: Transported,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Nilpotency {
    Nilpotent,
    NotNilpotent,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Closure {
    Below,
    NotBelow,
    Unknown,
}

fn realize(space: &BilinearSpace, y: &RationalMatrix) -> Result<RationalMatrix> {
    realize_gram(space, &GramTarget::new(y.clone(), space.kind())?)
}

/// `[top; I_k; 0]` with `rows` rows in total.
fn completed(top: &RationalMatrix, k: usize, rows: usize) -> Result<RationalMatrix> {
    let mut out = RationalMatrix::zeros(rows, k);
    if top.rows() + k > rows {
        return Err(Error::DimensionBound(format!(
            "completing a {}x{k} block needs {} rows, have {rows}",
            top.rows(),
            top.rows() + k
        )));
    }
    out.set_block(0, 0, top);
    out.set_block(top.rows(), 0, &RationalMatrix::identity(k));
    Ok(out)
}

fn identity_frame(rows: usize, k: usize) -> Result<RationalMatrix> {
    completed(&RationalMatrix::zeros(0, k), k, rows)
}

/// A point of `psi^-1(y)` in the generic set.
pub fn fiber_point(s: &Scenario, y: &YPoint) -> Result<Vec<RationalMatrix>> {
    s.check_y(y)?;
    let y0 = &y.0[0];
    let w = match s.layout() {
        Layout::Tensor { v, .. } => vec![realize(v, y0)?],
        Layout::Contraction { n, .. } => {
            let k = y0.rows();
            let mut b = RationalMatrix::zeros(*n, k);
            b.set_block(0, 0, y0);
            vec![identity_frame(*n, k)?, b]
        }
        Layout::TwoFormSl { plus, minus, .. } => {
            let yt = y0.transpose();
            vec![realize(plus, &(y0 + &yt))?, realize(minus, &(y0 - &yt))?]
        }
        Layout::SplitContraction { n, .. } | Layout::GlGl { n, .. } => {
            vec![identity_frame(*n, y0.rows())?, completed(y0, y0.cols(), *n)?]
        }
        Layout::DoubleFormGl { v, m } => {
            let f = realize(v, y0)?;
            vec![f.slice(0, v.dim(), 0, *m), f.slice(0, v.dim(), *m, 2 * m)]
        }
        Layout::PairFormsGl { plus, minus, .. } => vec![realize(plus, y0)?, realize(minus, &y.0[1])?],
        Layout::FourBlock { p, q, r, s: sd } => vec![
            identity_frame(*r, *p)?,
            identity_frame(*sd, *p)?,
            completed(y0, *q, *r)?,
            completed(&y.0[1], *q, *sd)?,
        ],
    };
    if psi(s, &w)? != *y || !is_generic(s, &w) {
        return Err(Error::Internal(format!(
            "fiber point for {} left the generic fiber",
            s.id()
        )));
    }
    Ok(w)
}

pub fn theta(s: &Scenario, y: &YPoint) -> Result<LiftResult> {
    theta_with_limit(s, y, DEFAULT_MAX_MINORS)
}

/// `theta` with an explicit cap on Plücker minor enumeration.
pub fn theta_with_limit(s: &Scenario, y: &YPoint, limit: usize) -> Result<LiftResult> {
    let w = fiber_point(s, y)?;
    let x = phi(s, &w)?;
    let transported = Transported {
        y: y_invariants(s, y)?,
        x: x_invariants_with_limit(s, &x, limit)?,
    };
    Ok(LiftResult {
        y: y.clone(),
        w,
        x,
        transported,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportReport {
    pub scenario: ScenarioId,
    pub passed: bool,
    pub checks: Vec<CheckItem>,
}

impl TransportReport {
    fn push(&mut self, name: &str, passed: bool) {
        self.passed &= passed;
        self.checks.push(CheckItem {
            name: name.to_string(),
            passed,
        });
    }
}

pub fn transport_check(s: &Scenario, y: &YPoint) -> bool {
    transport_report(s, y).map(|r| r.passed).unwrap_or(false)
}

pub fn transport_report(s: &Scenario, y: &YPoint) -> Result<TransportReport> {
    transport_report_with_limit(s, y, DEFAULT_MAX_MINORS)
}

/// Runs every transport identity for the scenario; errors only on an invalid `y`.
pub fn transport_report_with_limit(s: &Scenario, y: &YPoint, limit: usize) -> Result<TransportReport> {
    s.check_y(y)?;
    let mut rep = TransportReport {
        scenario: s.id(),
        passed: true,
        checks: Vec::new(),
    };
    let lift = match theta_with_limit(s, y, limit) {
        Ok(l) => l,
        Err(e) => {
            rep.push(&format!("lift: {e}"), false);
            return Ok(rep);
        }
    };
    rep.push("psi(w) = y", psi(s, &lift.w).ok().as_ref() == Some(y));
    rep.push("w is generic", is_generic(s, &lift.w));
    rep.push("x in X", s.check_x(&lift.x, limit).is_ok());
    let predicted = predicted_x_invariants(s, y)?;
    rep.push("x invariants match prediction", predicted == lift.transported.x);
    for (name, ok) in specific_identities(s, y, &lift)? {
        rep.push(name, ok);
    }
    Ok(rep)
}

fn specific_identities(s: &Scenario, y: &YPoint, lift: &LiftResult) -> Result<Vec<(&'static str, bool)>> {
    let y0 = &y.0[0];
    let yt = y0.transpose();
    let w = &lift.w;
    let mut out = Vec::new();
    match s.layout() {
        Layout::Tensor {
            v,
            u: USide::Form(su),
        } => {
            let x0 = lift.x.0[0].matrix().expect("Gram-type X part");
            let lhs = char_poly(&(x0 * v.gram()))?;
            let rhs = char_poly(&(su.gram() * y0))?.shift(v.dim() - su.dim());
            out.push(("char_poly(x S_V) = t^(N-k) char_poly(S_U y)", lhs == rhs));
        }
        Layout::Tensor {
            v,
            u: USide::Special(m),
        } => {
            let d = det(y0)?;
            out.push((
                "induced_pairing(w, w) = det y",
                induced_pairing(v, &w[0], &w[0])? == d,
            ));
            let p = lift.x.0[0].plucker().expect("Plücker X part");
            out.push(("plucker_pairing(x, x) = det y", plucker_pairing(v, p, p)? == d));
            if v.kind() == FormKind::Symplectic && m % 2 == 0 {
                let pf = pfaffian(y0)?;
                out.push(("det y = pf(y)^2", &pf * &pf == d));
            }
        }
        Layout::Contraction {
            n,
            u: USide::Special(_),
        } => {
            let f = RationalMatrix::vstack(&[&w[0], &w[1]])?;
            let sym = gram(&BilinearSpace::symmetric(2 * n), &f)?;
            let alt = gram(&BilinearSpace::symplectic(2 * n)?, &f)?;
            out.push(("symmetric Gram of lift = y + ᵗy", sym == y0 + &yt));
            out.push(("skew Gram of lift = y - ᵗy", alt == y0 - &yt));
        }
        Layout::TwoFormSl { plus, minus, .. } => {
            out.push(("Gram of first block = y + ᵗy", gram(plus, &w[0])? == y0 + &yt));
            out.push(("Gram of second block = y - ᵗy", gram(minus, &w[1])? == y0 - &yt));
        }
        Layout::GlGl { n, m } => {
            let x0 = lift.x.0[0].matrix().expect("matrix X part");
            out.push((
                "char_poly(x) = t^(n-m) char_poly(y)",
                char_poly(x0)? == char_poly(y0)?.shift(n - m),
            ));
        }
        _ => {}
    }
    Ok(out)
}

/// Scenarios whose `Y` invariant records separate all orbits.
pub fn has_complete_y_invariants(s: &Scenario) -> bool {
    matches!(s.id(), ScenarioId::T3_3 | ScenarioId::T3_6 | ScenarioId::T5SlSl)
}

/// Whether the (non-unital) algebra generated by `gens` is nilpotent. Over a
/// field of characteristic zero this holds iff every element has trace zero.
fn algebra_is_nilpotent(gens: &[RationalMatrix]) -> bool {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut queue: Vec<RationalMatrix> = gens.to_vec();
    while let Some(c) = queue.pop() {
        if c.is_zero() {
            continue;
        }
        let mut trial = rows.clone();
        trial.push(c.entries().to_vec());
        let r = RationalMatrix::from_rows(trial.clone())
            .map(|m| rank(&m))
            .unwrap_or(0);
        if r == rows.len() {
            continue;
        }
        if !c.trace().is_zero() {
            return false;
        }
        rows = trial;
        for g in gens {
            queue.push(g * &c);
        }
    }
    true
}

fn is_nilpotent_matrix(m: &RationalMatrix) -> bool {
    m.rows() == 0 || m.pow(m.rows() as u32).map(|p| p.is_zero()).unwrap_or(false)
}

fn tri(b: bool) -> Nilpotency {
    if b {
        Nilpotency::Nilpotent
    } else {
        Nilpotency::NotNilpotent
    }
}

/// Whether the `G'`-orbit closure of `y` contains `0`.
pub fn is_nilpotent_y(s: &Scenario, y: &YPoint) -> Result<Nilpotency> {
    s.check_y(y)?;
    if y.is_zero() {
        return Ok(Nilpotency::Nilpotent);
    }
    let y0 = &y.0[0];
    let yt = y0.transpose();
    Ok(match s.layout() {
        Layout::Tensor { v, u } => match u {
            USide::Form(su) => tri(is_nilpotent_matrix(&(su.gram() * y0))),
            USide::Special(m) => match v.kind() {
                FormKind::Symmetric => tri(det(y0)?.is_zero()),
                FormKind::Symplectic if m % 2 == 1 => Nilpotency::Nilpotent,
                FormKind::Symplectic => tri(pfaffian(y0)?.is_zero()),
            },
        },
        Layout::Contraction {
            u: USide::Form(su), ..
        } => tri(algebra_is_nilpotent(&[
            su.gram() * &(y0 + &yt),
            su.gram() * &(y0 - &yt),
        ])),
        Layout::Contraction {
            u: USide::Special(_), ..
        }
        | Layout::TwoFormSl { .. } => {
            let record = y_invariants(s, y)?;
            match record.get("det_pencil") {
                Some(v) if !v.vanishes() => Nilpotency::NotNilpotent,
                _ => Nilpotency::Unknown,
            }
        }
        Layout::SplitContraction { plus, minus, .. } => match (plus, minus) {
            (USide::Form(sp), USide::Form(sm)) => {
                tri(is_nilpotent_matrix(&(&(&(sp.gram() * y0) * sm.gram()) * &yt)))
            }
            _ if y0.rows() != y0.cols() => Nilpotency::Nilpotent,
            _ => tri(det(y0)?.is_zero()),
        },
        Layout::DoubleFormGl { m, .. } => {
            let k = 2 * m;
            let mut py = RationalMatrix::zeros(k, k);
            py.set_block(0, 0, &y0.slice(*m, k, 0, k));
            py.set_block(*m, 0, &y0.slice(0, *m, 0, k));
            let mut gens = Vec::new();
            for (r0, r1) in [(0, *m), (*m, k)] {
                for (c0, c1) in [(0, *m), (*m, k)] {
                    let mut b = RationalMatrix::zeros(k, k);
                    b.set_block(r0, c0, &py.slice(r0, r1, c0, c1));
                    gens.push(b);
                }
            }
            tri(algebra_is_nilpotent(&gens))
        }
        Layout::PairFormsGl { .. } => tri(is_nilpotent_matrix(&(y0 * &y.0[1]))),
        Layout::GlGl { .. } => tri(is_nilpotent_matrix(y0)),
        Layout::FourBlock { .. } => tri(is_nilpotent_matrix(&(y0 * &y.0[1].transpose()))),
    })
}

fn full_rank_square(y: &RationalMatrix) -> bool {
    y.is_square() && rank(y) == y.rows()
}

/// Whether `y1` lies in the `G'`-orbit closure of `y2`.
pub fn closure_leq(s: &Scenario, y1: &YPoint, y2: &YPoint) -> Result<Closure> {
    s.check_y(y1)?;
    s.check_y(y2)?;
    if y1 == y2 {
        return Ok(Closure::Below);
    }
    let r1 = y_invariants(s, y1)?;
    let r2 = y_invariants(s, y2)?;
    if !r1.closed_mismatches(&r2).is_empty() || !r1.ranks_dominated_by(&r2) {
        return Ok(Closure::NotBelow);
    }
    let sl_rank_det = match s.layout() {
        Layout::Tensor {
            u: USide::Special(_), ..
        } => true,
        Layout::SplitContraction { plus, .. } => matches!(plus, USide::Special(_)),
        _ => false,
    };
    if sl_rank_det {
        // ranks below full rank form a chain of orbits; full-rank orbits are
        // closed and fixed by det (or pf)
        let (a, b) = (&y1.0[0], &y2.0[0]);
        return Ok(if full_rank_square(b) {
            if full_rank_square(a) {
                Closure::Below
            } else {
                Closure::NotBelow
            }
        } else {
            Closure::Below
        });
    }
    let n1 = is_nilpotent_y(s, y1)?;
    let n2 = is_nilpotent_y(s, y2)?;
    if y1.is_zero() && n2 == Nilpotency::Nilpotent {
        return Ok(Closure::Below);
    }
    let dominance_complete = matches!(
        s.layout(),
        Layout::Tensor {
            u: USide::Form(_),
            ..
        } | Layout::GlGl { .. }
    );
    if dominance_complete && n1 == Nilpotency::Nilpotent && n2 == Nilpotency::Nilpotent {
        // nilpotent classes are ordered by dominance of their partitions,
        // i.e. by the ranks of powers already compared above
        return Ok(Closure::Below);
    }
    Ok(Closure::Unknown)
}
