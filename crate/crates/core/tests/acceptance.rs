//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use orbitlift::exactlin::{random_matrix_with, rng_from_seed, RationalMatrix};
use orbitlift::liealg::{audit_generic_fiber, audit_null_cone};
use orbitlift::lifting::{
    closure_leq, fiber_point, is_nilpotent_y, theta, transport_report, Closure, Nilpotency,
};
use orbitlift::quotients::{plucker, plucker_relations_ok, PluckerVector};
use orbitlift::scenarios::{
    act_g, act_gp, act_gp_on_y, catalog, is_generic, phi, psi, random_g, random_gp, random_w, random_y,
    y_invariants, Dims, Scenario, ScenarioId, YPoint,
};
use orbitlift::spherical::{hilbert_trivial_lift, oracle_invariant_dim};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn scenario(id: ScenarioId, dims: &[(&str, usize)]) -> Scenario {
    Scenario::new(id, &Dims::from_pairs(dims.iter().copied())).expect("legal dimensions")
}

fn m(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_i64(rows)
}

fn quotient_invariance() -> Outcome {
    let mut rng = rng_from_seed(101);
    let mut failures = Vec::new();
    let all = catalog();
    for s in &all {
        let points: Vec<_> = (0..20).map(|_| random_w(s, &mut rng, 3)).collect();
        let images: Vec<_> = points
            .iter()
            .map(|w| (psi(s, w).unwrap(), phi(s, w).unwrap()))
            .collect();
        for _ in 0..50 {
            let g = random_g(s, &mut rng);
            let gp = random_gp(s, &mut rng);
            for (w, (y, x)) in points.iter().zip(&images) {
                let ok_g = psi(s, &act_g(s, w, &g).unwrap()).unwrap() == *y;
                let ok_gp = phi(s, &act_gp(s, w, &gp).unwrap()).unwrap() == *x;
                if !(ok_g && ok_gp) {
                    failures.push(s.id());
                }
            }
        }
    }
    failures.dedup();
    outcome(
        failures.is_empty(),
        format!(
            "{} scenarios x 50 elements x 20 points, failures {failures:?}",
            all.len()
        ),
    )
}

fn plucker_soundness() -> Outcome {
    let mut rng = rng_from_seed(202);
    let mut bad = 0;
    for (k, n) in [(2, 4), (2, 5), (3, 6)] {
        for _ in 0..200 {
            let f = random_matrix_with(&mut rng, n, k, 4);
            if !plucker_relations_ok(&plucker(&f).unwrap()).unwrap() {
                bad += 1;
            }
            // last column made dependent on the others
            let c = random_matrix_with(&mut rng, k - 1, 1, 3);
            let head = f.slice(0, n, 0, k - 1);
            let dependent = RationalMatrix::hstack(&[&head, &(&head * &c)]).unwrap();
            if !plucker(&dependent).unwrap().is_zero() {
                bad += 1;
            }
        }
    }
    let p = PluckerVector::new(
        4,
        2,
        vec![1, 0, 0, 0, 0, 1]
            .into_iter()
            .map(orbitlift::exactlin::int)
            .collect(),
    )
    .unwrap();
    let control = !plucker_relations_ok(&p).unwrap();
    outcome(
        bad == 0 && control,
        format!("600 full-rank and 600 rank-deficient frames, {bad} failures, off-cone control rejected: {control}"),
    )
}

fn fiber_witness() -> Outcome {
    let mut rng = rng_from_seed(303);
    let mut failures = Vec::new();
    for s in catalog() {
        for i in 0..200 {
            let y = random_y(&s, &mut rng, if i % 2 == 0 { 3 } else { 1 });
            let ok = fiber_point(&s, &y)
                .map(|w| psi(&s, &w).unwrap() == y && is_generic(&s, &w))
                .unwrap_or(false);
            if !ok {
                failures.push(s.id());
            }
        }
    }
    failures.dedup();
    outcome(
        failures.is_empty(),
        format!("200 y per scenario, failures {failures:?}"),
    )
}

fn has_check(report: &orbitlift::lifting::TransportReport, needle: &str) -> bool {
    report.checks.iter().any(|c| c.passed && c.name.contains(needle))
}

fn invariant_transport() -> Outcome {
    let mut rng = rng_from_seed(404);
    let mut failures = Vec::new();
    for s in catalog() {
        for i in 0..200 {
            let y = random_y(&s, &mut rng, if i % 2 == 0 { 3 } else { 1 });
            let report = transport_report(&s, &y).unwrap();
            let specific = match s.id() {
                ScenarioId::DszA => has_check(&report, "symmetric Gram") && has_check(&report, "skew Gram"),
                ScenarioId::T3_3 => has_check(&report, "induced_pairing"),
                ScenarioId::T3_1 => has_check(&report, "char_poly(x S_V)"),
                ScenarioId::GlGl => has_check(&report, "char_poly(x)"),
                ScenarioId::DszB => has_check(&report, "first block") && has_check(&report, "second block"),
                _ => true,
            };
            if !(report.passed && specific) {
                failures.push(s.id());
            }
        }
    }
    failures.dedup();
    outcome(
        failures.is_empty(),
        format!("200 y per scenario, failures {failures:?}"),
    )
}

fn injectivity_witnesses() -> Outcome {
    let mut rng = rng_from_seed(505);
    let complete = [
        scenario(ScenarioId::T3_3, &[("n", 5), ("m", 2)]),
        scenario(ScenarioId::T3_6, &[("n", 2), ("m", 2)]),
        scenario(ScenarioId::T5SlSl, &[("n", 4), ("p", 2), ("q", 2)]),
    ];
    let mut failures = Vec::new();
    for s in &complete {
        for _ in 0..50 {
            let y = random_y(s, &mut rng, 3);
            let moved = act_gp_on_y(s, &y, &random_gp(s, &mut rng)).unwrap();
            if theta(s, &y).unwrap().transported.x != theta(s, &moved).unwrap().transported.x {
                failures.push(format!("{} well-definedness", s.id()));
            }
        }
        let mut pairs = 0;
        while pairs < 20 {
            let y1 = random_y(s, &mut rng, 2);
            let y2 = random_y(s, &mut rng, 2);
            if y_invariants(s, &y1).unwrap() == y_invariants(s, &y2).unwrap() {
                continue;
            }
            pairs += 1;
            if theta(s, &y1).unwrap().transported.x == theta(s, &y2).unwrap().transported.x {
                failures.push(format!("{} injectivity", s.id()));
            }
        }
    }
    failures.dedup();
    outcome(
        failures.is_empty(),
        format!("T3.3, T3.6, T5.SLSL: 50 orbit pairs and 20 separated pairs each, failures {failures:?}"),
    )
}

fn assumption_audit() -> Outcome {
    let mut failures = Vec::new();
    for s in catalog() {
        let null = audit_null_cone(&s, 100, 606);
        let generic = audit_generic_fiber(&s, 100, 606);
        if !(null.status.passed() && generic.status.passed()) {
            failures.push(s.id());
        }
    }
    let dsz = audit_null_cone(&scenario(ScenarioId::DszA, &[("n", 2), ("m", 1)]), 100, 606);
    let dsz_ok =
        dsz.expected_dim_null_cone == 3 && dsz.max_orbit_dim == Some(3) && dsz.stabilizer_dim == Some(1);
    outcome(
        failures.is_empty() && dsz_ok,
        format!(
            "null cone and generic fiber at minimal dims, 100 samples, failures {failures:?}; DSZ-A n=2 m=1: dim N {}, orbit {:?}, stabilizer {:?}",
            dsz.expected_dim_null_cone, dsz.max_orbit_dim, dsz.stabilizer_dim
        ),
    )
}

fn hilbert_vs_oracle() -> Outcome {
    let mut notes = Vec::new();
    let series = hilbert_trivial_lift(2, 1, 5).unwrap();
    let squares: Vec<BigInt> = [1, 4, 9, 16, 25, 36].into_iter().map(BigInt::from).collect();
    let mut ok = series == squares;
    for (n, mm, d_max) in [(2, 1, 5), (3, 1, 3)] {
        let series = hilbert_trivial_lift(n, mm, d_max).unwrap();
        for (d, c) in series.iter().enumerate() {
            let o = oracle_invariant_dim(n, mm, d).unwrap();
            if BigInt::from(o) != *c {
                ok = false;
                notes.push(format!("({n},{mm},{d}): {c} vs oracle {o}"));
            }
        }
    }
    let c = hilbert_trivial_lift(2, 2, 2).unwrap()[2].clone();
    let o = oracle_invariant_dim(2, 2, 2).unwrap();
    if BigInt::from(o) != c {
        ok = false;
    }
    notes.push(format!("(2,2,2): {c} vs oracle {o}"));
    outcome(
        ok,
        format!(
            "n=2 m=1 series {series:?}; n=3 m=1 d<=3 matched; {}",
            notes.join("; ")
        ),
    )
}

enum Case {
    Nil(Scenario, YPoint, Nilpotency),
    Leq(Scenario, YPoint, YPoint, Closure),
}

fn predicate_table() -> Outcome {
    let t31 = || scenario(ScenarioId::T3_1, &[("n", 7), ("m", 3)]);
    let t33 = || scenario(ScenarioId::T3_3, &[("n", 5), ("m", 2)]);
    let glgl = || scenario(ScenarioId::GlGl, &[("n", 4), ("m", 2)]);
    let dsz = || scenario(ScenarioId::DszA, &[("n", 4), ("m", 2)]);
    let one = |rows: &[&[i64]]| YPoint::single(m(rows));
    let rank_one_sym = one(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
    let rank_two_sym = one(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]);
    let generic = m(&[&[1, 2], &[3, 4]]);
    let shear = m(&[&[1, 1], &[0, 1]]);
    let congruent = YPoint::single(&(&shear.transpose() * &generic) * &shear);
    let cases = vec![
        Case::Nil(t31(), t31().y_zero(), Nilpotency::Nilpotent),
        Case::Nil(t33(), one(&[&[3, 0], &[0, 1]]), Nilpotency::NotNilpotent),
        Case::Nil(t33(), one(&[&[1, 0], &[0, 0]]), Nilpotency::Nilpotent),
        Case::Nil(
            scenario(ScenarioId::T3_6, &[("n", 2), ("m", 2)]),
            one(&[&[0, 1], &[-1, 0]]),
            Nilpotency::NotNilpotent,
        ),
        Case::Nil(
            scenario(ScenarioId::T5SlSl, &[("n", 3), ("p", 1), ("q", 2)]),
            one(&[&[2, 1]]),
            Nilpotency::Nilpotent,
        ),
        Case::Nil(glgl(), one(&[&[0, 1], &[0, 0]]), Nilpotency::Nilpotent),
        Case::Nil(glgl(), one(&[&[1, 0], &[0, 0]]), Nilpotency::NotNilpotent),
        Case::Nil(dsz(), one(&[&[1, 0], &[0, 0]]), Nilpotency::Unknown),
        Case::Leq(t31(), rank_one_sym.clone(), rank_two_sym.clone(), Closure::Below),
        Case::Leq(t31(), rank_two_sym, rank_one_sym, Closure::NotBelow),
        Case::Leq(
            t33(),
            one(&[&[1, 0], &[0, 1]]),
            one(&[&[2, 0], &[0, 1]]),
            Closure::NotBelow,
        ),
        Case::Leq(
            t33(),
            one(&[&[1, 0], &[0, 0]]),
            one(&[&[1, 0], &[0, 1]]),
            Closure::NotBelow,
        ),
        Case::Leq(t33(), t33().y_zero(), one(&[&[0, 0], &[0, 5]]), Closure::Below),
        Case::Leq(dsz(), YPoint::single(generic), congruent, Closure::Unknown),
        Case::Leq(glgl(), glgl().y_zero(), one(&[&[0, 1], &[0, 0]]), Closure::Below),
    ];
    let total = cases.len();
    let mut mismatches = Vec::new();
    for (i, case) in cases.into_iter().enumerate() {
        let ok = match case {
            Case::Nil(s, y, want) => is_nilpotent_y(&s, &y).unwrap() == want,
            Case::Leq(s, a, b, want) => closure_leq(&s, &a, &b).unwrap() == want,
        };
        if !ok {
            mismatches.push(i + 1);
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{total} hand cases, mismatches {mismatches:?}"),
    )
}

fn cli_determinism() -> Outcome {
    let dir = std::env::temp_dir();
    let requests = [
        (
            "lift",
            r#"{"scenario": "DSZ-A", "dims": {"n": 4, "m": 2}, "payload": [["0", "1"], ["0", "0"]]}"#,
        ),
        (
            "invariants",
            r#"{"scenario": "T3.1", "dims": {"n": 7, "m": 3}, "payload": [["1","0","0"],["0","0","0"],["0","0","0"]]}"#,
        ),
        (
            "audit",
            r#"{"scenario": "T3.1", "dims": {"n": 3, "m": 1}, "samples": 50, "seed": 1}"#,
        ),
        (
            "hilbert",
            r#"{"dims": {"n": 2, "m": 1, "d_max": 4}, "oracle": true}"#,
        ),
    ];
    let mut failures = Vec::new();
    for (verb, body) in requests {
        let path = dir.join(format!("orbitlift-acceptance-{}-{verb}.json", std::process::id()));
        std::fs::write(&path, body).unwrap();
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_orbitlift"))
                .args([verb, "--in", &path.to_string_lossy()])
                .env_remove("ORBITLIFT_MAX_MINORS")
                .output()
                .expect("binary runs")
        };
        let (a, b) = (run(), run());
        if !(a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty()) {
            failures.push(verb);
        }
    }
    outcome(
        failures.is_empty(),
        format!("lift, invariants, audit, hilbert run twice, failures {failures:?}"),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 9] = [
        (
            "quotient invariance",
            quotient_invariance,
            Some(Duration::from_secs(60)),
        ),
        ("Plücker soundness", plucker_soundness, None),
        ("fiber witnesses", fiber_witness, None),
        ("invariant transport", invariant_transport, None),
        ("well-definedness and injectivity", injectivity_witnesses, None),
        (
            "assumption audit",
            assumption_audit,
            Some(Duration::from_secs(120)),
        ),
        (
            "Hilbert series vs oracle",
            hilbert_vs_oracle,
            Some(Duration::from_secs(300)),
        ),
        ("nilpotency and closure predicates", predicate_table, None),
        ("CLI determinism", cli_determinism, None),
    ];
    let mut all = true;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = run();
        let elapsed = start.elapsed();
        if let Some(b) = budget {
            if elapsed > *b {
                o.passed = false;
                o.detail.push_str(&format!("; over the {}s budget", b.as_secs()));
            }
        }
        all &= o.passed;
        println!(
            "criterion {}: {} {name} ({:.1}s) {}",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
