use crate::error::{Error, Result};
use crate::exactlin::{inverse, random_matrix_with, rank, rational, RationalMatrix, SampleRng};
use crate::forms::{
    gram, random_invertible_with, random_isometry_with, random_unimodular_with, BilinearSpace,
};
use crate::quotients::plucker;

use super::{Family, GroupSpec, Layout, MatrixShape, Scenario, Slot, USide, XPart, XPoint, YPoint};

/// One matrix per group factor.
pub type GroupElement = Vec<RationalMatrix>;

fn random_factor(spec: &GroupSpec, rng: &mut SampleRng) -> RationalMatrix {
    match spec.family {
        Family::Gl => random_invertible_with(rng, spec.size),
        Family::Sl => random_unimodular_with(rng, spec.size),
        Family::O => random_isometry_with(rng, &BilinearSpace::symmetric(spec.size)),
        Family::Sp => random_isometry_with(
            rng,
            &BilinearSpace::symplectic(spec.size).expect("Sp factors have even size"),
        ),
    }
}

pub fn random_g(s: &Scenario, rng: &mut SampleRng) -> GroupElement {
    s.g_factors().iter().map(|f| random_factor(f, rng)).collect()
}

pub fn random_gp(s: &Scenario, rng: &mut SampleRng) -> GroupElement {
    s.gp_factors().iter().map(|f| random_factor(f, rng)).collect()
}

/// Random blocks of `W` with integer entries in `[-bound, bound]`.
pub fn random_w(s: &Scenario, rng: &mut SampleRng, bound: i64) -> Vec<RationalMatrix> {
    s.blocks()
        .iter()
        .map(|b| random_matrix_with(rng, b.rows, b.cols, bound))
        .collect()
}

/// Random point of `Y` with integer entries in `[-bound, bound]`.
pub fn random_y(s: &Scenario, rng: &mut SampleRng, bound: i64) -> YPoint {
    YPoint(
        s.y_slots()
            .iter()
            .map(|slot| match *slot {
                Slot::Matrix {
                    rows, cols, shape, ..
                } => {
                    let m = random_matrix_with(rng, rows, cols, bound);
                    match shape {
                        MatrixShape::General => m,
                        MatrixShape::Symmetric => {
                            RationalMatrix::from_fn(rows, cols, |i, j| m[(i.min(j), i.max(j))].clone())
                        }
                        MatrixShape::Skew => RationalMatrix::from_fn(rows, cols, |i, j| match i.cmp(&j) {
                            std::cmp::Ordering::Less => m[(i, j)].clone(),
                            std::cmp::Ordering::Greater => -m[(j, i)].clone(),
                            std::cmp::Ordering::Equal => num_traits::Zero::zero(),
                        }),
                    }
                }
                Slot::Plucker { .. } => RationalMatrix::zeros(0, 0),
            })
            .collect(),
    )
}

fn inverse_transposes(g: &[RationalMatrix]) -> Result<Vec<RationalMatrix>> {
    g.iter().map(|m| Ok(inverse(m)?.transpose())).collect()
}

fn check_element(g: &[RationalMatrix], factors: &[GroupSpec], side: &str) -> Result<()> {
    if g.len() != factors.len() || g.iter().zip(factors).any(|(m, f)| m.shape() != (f.size, f.size)) {
        return Err(crate::error::shape(
            "group action",
            format!("{side} element does not match its factors"),
        ));
    }
    Ok(())
}

/// Left action of `G` on the rows of each block.
pub fn act_g(s: &Scenario, w: &[RationalMatrix], g: &[RationalMatrix]) -> Result<Vec<RationalMatrix>> {
    s.check_w(w)?;
    check_element(g, &s.g_factors(), "G")?;
    let inv_t = inverse_transposes(g)?;
    s.blocks()
        .iter()
        .zip(w)
        .map(|(b, a)| {
            let h = if b.g.dual {
                &inv_t[b.g.factor]
            } else {
                &g[b.g.factor]
            };
            h.try_mul(a)
        })
        .collect()
}

/// Action of `G'` on the columns of each block: `A g` or `A ᵗg^-1`.
pub fn act_gp(s: &Scenario, w: &[RationalMatrix], g: &[RationalMatrix]) -> Result<Vec<RationalMatrix>> {
    s.check_w(w)?;
    check_element(g, &s.gp_factors(), "G'")?;
    let inv_t = inverse_transposes(g)?;
    s.blocks()
        .iter()
        .zip(w)
        .map(|(b, a)| {
            let h = if b.gp.dual {
                &inv_t[b.gp.factor]
            } else {
                &g[b.gp.factor]
            };
            a.try_mul(h)
        })
        .collect()
}

/// The induced action of `G'` on `Y`, so that `psi(g'.w) = g'.psi(w)`.
pub fn act_gp_on_y(s: &Scenario, y: &YPoint, g: &[RationalMatrix]) -> Result<YPoint> {
    s.check_y(y)?;
    check_element(g, &s.gp_factors(), "G'")?;
    let t = |m: &RationalMatrix| m.transpose();
    let inv = |m: &RationalMatrix| inverse(m);
    let y0 = &y.0[0];
    Ok(match s.layout() {
        Layout::Tensor { .. } | Layout::Contraction { .. } | Layout::TwoFormSl { .. } => {
            YPoint::single(&(&t(&g[0]) * y0) * &g[0])
        }
        Layout::SplitContraction { .. } => YPoint::single(&(&t(&g[0]) * y0) * &g[1]),
        Layout::DoubleFormGl { .. } => {
            let d = RationalMatrix::block_diag(&[&g[0], &t(&inv(&g[0])?)]);
            YPoint::single(&(&t(&d) * y0) * &d)
        }
        Layout::PairFormsGl { .. } => {
            let gi = inv(&g[0])?;
            YPoint::pair(&(&t(&g[0]) * y0) * &g[0], &(&gi * &y.0[1]) * &t(&gi))
        }
        Layout::GlGl { .. } => YPoint::single(&(&inv(&g[0])? * y0) * &g[0]),
        Layout::FourBlock { .. } => {
            let g1 = &g[0];
            let g2 = &g[1];
            YPoint::pair(&(&t(g1) * y0) * &t(&inv(g2)?), &(&inv(g1)? * &y.0[1]) * g2)
        }
    })
}

fn stacked(w: &[RationalMatrix]) -> Result<RationalMatrix> {
    let refs: Vec<&RationalMatrix> = w.iter().collect();
    RationalMatrix::vstack(&refs)
}

fn t_mul(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix> {
    a.transpose().try_mul(b)
}

fn mul_t(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix> {
    a.try_mul(&b.transpose())
}

/// `phi` on a single frame for the given `U` side: `F S_U ᵗF` or `plucker(F)`.
fn u_side_quotient(u: &USide, f: &RationalMatrix) -> Result<XPart> {
    Ok(match u {
        USide::Form(su) => XPart::Matrix(f.try_mul(su.gram())?.try_mul(&f.transpose())?),
        USide::Special(_) => XPart::Plucker(plucker(f)?),
    })
}

pub fn psi(s: &Scenario, w: &[RationalMatrix]) -> Result<YPoint> {
    s.check_w(w)?;
    Ok(match s.layout() {
        Layout::Tensor { v, .. } => YPoint::single(gram(v, &w[0])?),
        Layout::Contraction { .. } | Layout::SplitContraction { .. } | Layout::GlGl { .. } => {
            YPoint::single(t_mul(&w[0], &w[1])?)
        }
        Layout::TwoFormSl { plus, minus, .. } => {
            let sum = gram(plus, &w[0])?.try_add(&gram(minus, &w[1])?)?;
            YPoint::single(sum.scale(&rational(1, 2)))
        }
        Layout::DoubleFormGl { v, .. } => YPoint::single(gram(v, &RationalMatrix::hstack(&[&w[0], &w[1]])?)?),
        Layout::PairFormsGl { plus, minus, .. } => YPoint::pair(gram(plus, &w[0])?, gram(minus, &w[1])?),
        Layout::FourBlock { .. } => YPoint::pair(t_mul(&w[0], &w[2])?, t_mul(&w[1], &w[3])?),
    })
}

pub fn phi(s: &Scenario, w: &[RationalMatrix]) -> Result<XPoint> {
    s.check_w(w)?;
    Ok(XPoint(match s.layout() {
        Layout::Tensor { u, .. } => vec![u_side_quotient(u, &w[0])?],
        Layout::Contraction { u, .. } => vec![u_side_quotient(u, &stacked(w)?)?],
        Layout::TwoFormSl { .. } => vec![XPart::Plucker(plucker(&stacked(w)?)?)],
        Layout::SplitContraction { plus, minus, .. } => {
            vec![u_side_quotient(plus, &w[0])?, u_side_quotient(minus, &w[1])?]
        }
        Layout::DoubleFormGl { .. } | Layout::PairFormsGl { .. } | Layout::GlGl { .. } => {
            vec![XPart::Matrix(mul_t(&w[0], &w[1])?)]
        }
        Layout::FourBlock { .. } => vec![
            XPart::Matrix(mul_t(&w[0], &w[1])?),
            XPart::Matrix(mul_t(&w[2], &w[3])?),
        ],
    }))
}

/// Full-rank predicate defining the generic set: the stacked frame for
/// single-frame layouts, each block separately otherwise.
pub fn is_generic(s: &Scenario, w: &[RationalMatrix]) -> bool {
    if s.check_w(w).is_err() {
        return false;
    }
    match s.layout() {
        Layout::Tensor { .. } => rank(&w[0]) == w[0].cols(),
        Layout::Contraction { .. } | Layout::TwoFormSl { .. } => {
            stacked(w).map(|f| rank(&f) == f.cols()).unwrap_or(false)
        }
        Layout::DoubleFormGl { .. } => RationalMatrix::hstack(&[&w[0], &w[1]])
            .map(|f| rank(&f) == f.cols())
            .unwrap_or(false),
        _ => w.iter().all(|b| rank(b) == b.cols()),
    }
}

impl Scenario {
    /// `psi` followed by the `Y` membership check.
    pub fn psi_checked(&self, w: &[RationalMatrix]) -> Result<YPoint> {
        let y = psi(self, w)?;
        self.check_y(&y)
            .map_err(|e| Error::Internal(format!("psi left Y: {e}")))?;
        Ok(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, rng_from_seed};
    use crate::scenarios::{catalog, ScenarioId};

    #[test]
    fn dsz_a_examples() {
        let s = Scenario::minimal(ScenarioId::DszA);
        let a = RationalMatrix::from_i64(&[&[1], &[0]]);
        let b = RationalMatrix::from_i64(&[&[7], &[0]]);
        let w = vec![a.clone(), b];
        assert_eq!(
            psi(&s, &w).unwrap(),
            YPoint::single(RationalMatrix::from_i64(&[&[7]]))
        );
        assert!(is_generic(&s, &w));
        assert!(is_generic(&s, &[a, RationalMatrix::zeros(2, 1)]));
        assert!(!is_generic(&s, &s.w_zero()));
        assert_eq!(psi(&s, &s.w_zero()).unwrap(), s.y_zero());
        assert!(phi(&s, &s.w_zero()).unwrap().is_zero());
    }

    #[test]
    fn glgl_phi_is_a_product() {
        let s = Scenario::minimal(ScenarioId::GlGl);
        let a = RationalMatrix::column(vec![int(1), int(2)]);
        let b = RationalMatrix::column(vec![int(3), int(-1)]);
        let x = phi(&s, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(x.0[0].matrix().unwrap(), &(&a * &b.transpose()));
    }

    #[test]
    fn quotient_maps_are_invariant_and_equivariant() {
        let mut rng = rng_from_seed(5);
        for s in catalog() {
            for _ in 0..5 {
                let w = random_w(&s, &mut rng, 3);
                let y = psi(&s, &w).unwrap();
                let x = phi(&s, &w).unwrap();
                s.check_y(&y).unwrap();
                s.check_x(&x, 70).unwrap();
                let g = random_g(&s, &mut rng);
                assert_eq!(psi(&s, &act_g(&s, &w, &g).unwrap()).unwrap(), y, "{}", s.id());
                let gp = random_gp(&s, &mut rng);
                let moved = act_gp(&s, &w, &gp).unwrap();
                assert_eq!(phi(&s, &moved).unwrap(), x, "{}", s.id());
                assert_eq!(
                    psi(&s, &moved).unwrap(),
                    act_gp_on_y(&s, &y, &gp).unwrap(),
                    "{}",
                    s.id()
                );
            }
        }
    }
}
