use num_traits::Zero;
use orbitlift::exactlin::{
    ab_ba_identity_holds, det, inverse, pfaffian, random_matrix_with, rank, rng_from_seed, RationalMatrix,
};
use orbitlift::liealg::{orbit_dim, tangent_vectors, Side};
use orbitlift::lifting::{closure_leq, is_nilpotent_y, theta, transport_check, Closure, Nilpotency};
use orbitlift::quotients::{exterior_power, frame_from_plucker, plucker, plucker_relations_ok};
use orbitlift::scenarios::{
    act_g, act_gp_on_y, catalog, psi, random_g, random_gp, random_w, random_y, x_invariants, Scenario,
};
use orbitlift::spherical::{hilbert_terms, weyl_dim, JoinedWeight};
use proptest::prelude::*;

fn scenario_at(i: usize) -> Scenario {
    let all = catalog();
    let n = all.len();
    all.into_iter().nth(i % n).unwrap()
}

fn skew(m: &RationalMatrix) -> RationalMatrix {
    m - &m.transpose()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn det_is_multiplicative(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = rng_from_seed(seed);
        let a = random_matrix_with(&mut rng, n, n, 4);
        let b = random_matrix_with(&mut rng, n, n, 4);
        prop_assert_eq!(det(&(&a * &b)).unwrap(), det(&a).unwrap() * det(&b).unwrap());
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
        if !det(&a).unwrap().is_zero() {
            prop_assert_eq!(&inverse(&a).unwrap() * &a, RationalMatrix::identity(n));
        }
    }

    #[test]
    fn ab_and_ba_share_spectrum(seed in any::<u64>(), r in 1usize..5, c in 1usize..5) {
        let mut rng = rng_from_seed(seed);
        let a = random_matrix_with(&mut rng, r, c, 3);
        let b = random_matrix_with(&mut rng, c, r, 3);
        prop_assert!(ab_ba_identity_holds(&a, &b).unwrap());
    }

    #[test]
    fn pfaffian_squares_to_det(seed in any::<u64>(), h in 0usize..4) {
        let mut rng = rng_from_seed(seed);
        let s = skew(&random_matrix_with(&mut rng, 2 * h, 2 * h, 3));
        let pf = pfaffian(&s).unwrap();
        prop_assert_eq!(&pf * &pf, det(&s).unwrap());
    }

    #[test]
    fn plucker_round_trip(seed in any::<u64>(), m in 1usize..4, extra in 0usize..3) {
        let n = m + extra + 1;
        let mut rng = rng_from_seed(seed);
        let f = random_matrix_with(&mut rng, n, m, 3);
        let p = plucker(&f).unwrap();
        prop_assert!(plucker_relations_ok(&p).unwrap());
        match frame_from_plucker(&p, 1000).unwrap() {
            Some(g) => prop_assert_eq!(plucker(&g).unwrap(), p.clone()),
            None => prop_assert!(p.is_zero()),
        }
        let h = random_matrix_with(&mut rng, n, n, 2);
        let moved = plucker(&(&h * &f)).unwrap();
        let wedge = exterior_power(&h, m).unwrap();
        let transported = &wedge * &RationalMatrix::column(p.coords.clone());
        prop_assert_eq!(RationalMatrix::column(moved.coords), transported);
    }

    #[test]
    fn theta_transports_invariants(seed in any::<u64>(), i in 0usize..64) {
        let s = scenario_at(i);
        let mut rng = rng_from_seed(seed);
        let y = random_y(&s, &mut rng, 3);
        prop_assert!(transport_check(&s, &y), "{}", s.id());
    }

    #[test]
    fn theta_is_well_defined_on_orbits(seed in any::<u64>(), i in 0usize..64) {
        let s = scenario_at(i);
        let mut rng = rng_from_seed(seed);
        let y = random_y(&s, &mut rng, 3);
        let moved = act_gp_on_y(&s, &y, &random_gp(&s, &mut rng)).unwrap();
        let a = theta(&s, &y).unwrap();
        let b = theta(&s, &moved).unwrap();
        prop_assert_eq!(a.transported.x, b.transported.x, "{}", s.id());
    }

    #[test]
    fn nilpotent_classes_lift_to_nilpotent_classes(seed in any::<u64>(), i in 0usize..64) {
        let s = scenario_at(i);
        let mut rng = rng_from_seed(seed);
        // degree-one sampling hits nilpotent points often
        let y = random_y(&s, &mut rng, 1);
        if is_nilpotent_y(&s, &y).unwrap() == Nilpotency::Nilpotent {
            let lift = theta(&s, &y).unwrap();
            prop_assert!(lift.transported.x.closed_part_vanishes(), "{}", s.id());
        }
    }

    #[test]
    fn closure_order_is_preserved(seed in any::<u64>(), i in 0usize..64) {
        let s = scenario_at(i);
        let mut rng = rng_from_seed(seed);
        let y1 = random_y(&s, &mut rng, 1);
        let y2 = random_y(&s, &mut rng, 1);
        for (a, b) in [(&y1, &y2), (&s.y_zero(), &y2)] {
            if closure_leq(&s, a, b).unwrap() == Closure::Below {
                let xa = theta(&s, a).unwrap().transported.x;
                let xb = theta(&s, b).unwrap().transported.x;
                prop_assert!(xa.ranks_dominated_by(&xb), "{}", s.id());
            }
        }
    }

    #[test]
    fn orbit_dim_is_constant_on_orbits(seed in any::<u64>(), i in 0usize..64) {
        let s = scenario_at(i);
        let mut rng = rng_from_seed(seed);
        let w = random_w(&s, &mut rng, 2);
        let moved = act_g(&s, &w, &random_g(&s, &mut rng)).unwrap();
        prop_assert_eq!(orbit_dim(&s, Side::G, &w).unwrap(), orbit_dim(&s, Side::G, &moved).unwrap());
    }

    #[test]
    fn psi_is_infinitesimally_invariant(seed in any::<u64>(), i in 0usize..64) {
        let s = scenario_at(i);
        let mut rng = rng_from_seed(seed);
        let w = random_w(&s, &mut rng, 3);
        for v in tangent_vectors(&s, Side::G, &w).unwrap() {
            // psi is quadratic, so psi(w + v) - psi(w - v) is twice its derivative along v
            let plus: Vec<_> = w.iter().zip(&v).map(|(a, b)| a + b).collect();
            let minus: Vec<_> = w.iter().zip(&v).map(|(a, b)| a - b).collect();
            prop_assert_eq!(psi(&s, &plus).unwrap(), psi(&s, &minus).unwrap(), "{}", s.id());
        }
    }

    #[test]
    fn weyl_dim_is_dual_invariant(entries in proptest::collection::vec(-4i64..5, 1..6)) {
        let mut e = entries;
        e.sort_unstable_by(|a, b| b.cmp(a));
        let dual: Vec<i64> = e.iter().rev().map(|x| -x).collect();
        let w = JoinedWeight { n: e.len(), entries: e };
        let wd = JoinedWeight { n: dual.len(), entries: dual };
        prop_assert_eq!(weyl_dim(&w), weyl_dim(&wd));
    }

    #[test]
    fn hilbert_pieces_are_multiplicity_free(n in 2usize..7, m in 1usize..4, d in 0usize..9) {
        let terms = hilbert_terms(n, m, d).unwrap();
        if d % m != 0 {
            prop_assert!(terms.is_empty());
        }
        let mut weights: Vec<_> = terms.iter().map(|t| t.weight.entries.clone()).collect();
        let before = weights.len();
        weights.sort();
        weights.dedup();
        prop_assert_eq!(before, weights.len());
    }
}

#[test]
fn x_records_of_lifts_are_orbit_invariant_under_g() {
    // moving the witness by G moves x inside its G-orbit
    let mut rng = rng_from_seed(11);
    for s in catalog() {
        let y = random_y(&s, &mut rng, 3);
        let lift = theta(&s, &y).unwrap();
        let moved = act_g(&s, &lift.w, &random_g(&s, &mut rng)).unwrap();
        let x = orbitlift::scenarios::phi(&s, &moved).unwrap();
        assert_eq!(x_invariants(&s, &x).unwrap(), lift.transported.x, "{}", s.id());
    }
}
