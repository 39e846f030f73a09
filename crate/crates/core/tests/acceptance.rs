//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use indiff_core::checks::{
    check_continuity, check_convex_indifference, check_independence, check_ip, check_line_order,
    check_translation_invariance, AxiomVerdict, ContinuityKind, IndependenceVariant, SearchBudget,
    Witness,
};
use indiff_core::grid::lattice;
use indiff_core::lottery::lottery;
use indiff_core::preferences::compare;
use indiff_core::representation::CertificateBranch;
use indiff_core::{
    affine_coefficients, affine_rank, classify, construct_ip_via_solvability, elicit, embed,
    expected_utility, generate_indifferent_points, indifference_certificate, ElicitationInput,
    Error, GridSpec, Lottery, PreferenceOracle, Rational, StrictPair, UtilityFunction,
};

const SEED: u64 = 0x1d1f_f3e7;
const ROUND_TRIP_LIMIT: Duration = Duration::from_secs(1);
const GRID_EQUIVALENCE_LIMIT: Duration = Duration::from_secs(1);
const CONSTRUCTION_LIMIT: Duration = Duration::from_secs(5);

type Criterion = (&'static str, fn() -> Outcome);

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

fn eu(values: &[i64]) -> PreferenceOracle {
    PreferenceOracle::expected_utility(UtilityFunction::from_integers(values).unwrap())
}

fn random_utility(rng: &mut StdRng, n: usize, distinct: bool) -> Vec<i64> {
    loop {
        let values: Vec<i64> = (0..=n).map(|_| rng.gen_range(-9..=9)).collect();
        if !distinct || values.iter().any(|v| *v != values[0]) {
            return values;
        }
    }
}

fn extreme_vertices(values: &[i64]) -> (Lottery, Lottery) {
    let outcomes = values.len();
    let max = (0..outcomes)
        .max_by_key(|&i| (values[i], std::cmp::Reverse(i)))
        .unwrap();
    let min = (0..outcomes).min_by_key(|&i| (values[i], i)).unwrap();
    (
        Lottery::vertex(outcomes, max),
        Lottery::vertex(outcomes, min),
    )
}

fn round_trip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let start = Instant::now();
    let mut failures = Vec::new();
    for trial in 0..100 {
        let n = 1 + trial % 6;
        let values = random_utility(&mut rng, n, true);
        let u = UtilityFunction::from_integers(&values).unwrap();
        let (points, _) = generate_indifferent_points(&u);
        let (better, worse) = extreme_vertices(&values);
        let input = ElicitationInput {
            indifferent: points,
            strict: Some(StrictPair { better, worse }),
        };
        let ok = match elicit(&input) {
            Ok(rep) => {
                rep.utility.gauge_normalized() == u.gauge_normalized()
                    && rep.utility.is_positive_affine_transform_of(&u)
            }
            Err(_) => false,
        };
        if !ok {
            failures.push(format!("{values:?}"));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < ROUND_TRIP_LIMIT,
        format!(
            "100 utilities, {} failures {:?}, {elapsed:.2?}",
            failures.len(),
            failures
        ),
    )
}

fn grid_equivalence() -> Outcome {
    let start = Instant::now();
    let input = ElicitationInput {
        indifferent: vec![Lottery::uniform(3), lottery(&[(5, 12), (1, 6), (5, 12)])],
        strict: Some(StrictPair {
            better: Lottery::vertex(3, 2),
            worse: Lottery::vertex(3, 0),
        }),
    };
    let rep = elicit(&input).unwrap();
    let oracle = eu(&[0, 1, 2]);
    let points = lattice(3, 12);
    let mut pairs = 0usize;
    let mut disagreements = 0usize;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            pairs += 1;
            for (reference, query) in [(p, q), (q, p)] {
                let geometric = classify(&rep, reference, query).unwrap();
                let direct = compare(&oracle, query, reference).unwrap();
                if geometric != direct {
                    disagreements += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        points.len() == 91
            && pairs == 4095
            && disagreements == 0
            && elapsed < GRID_EQUIVALENCE_LIMIT,
        format!(
            "{} lotteries, {pairs} pairs, {disagreements} disagreements, {elapsed:.2?}",
            points.len()
        ),
    )
}

fn lemma_suite() -> Outcome {
    let oracle = eu(&[0, 1, 2]);
    let mut violations = Vec::new();
    for d in 1..=8 {
        let grid = GridSpec::new(d, 3).unwrap();
        let verdicts = [
            ("convex", check_convex_indifference(&oracle, &grid).unwrap()),
            (
                "translation",
                check_translation_invariance(&oracle, &grid).unwrap(),
            ),
            ("line-order", check_line_order(&oracle, &grid).unwrap()),
        ];
        for (name, verdict) in verdicts {
            if let Some(w) = verdict.witness() {
                violations.push(format!("{name} at d={d}, replays={}", w.replay(&oracle)));
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "3 lemmas x 8 grids, {} violations {:?}",
            violations.len(),
            violations
        ),
    )
}

fn certificate_coverage() -> Outcome {
    let oracle = eu(&[0, 1, 2]);
    let points = vec![Lottery::uniform(3), lottery(&[(5, 12), (1, 6), (5, 12)])];
    let embedded: Vec<_> = points.iter().map(embed).collect();
    let (mut convex, mut reduction, mut failures) = (0, 0, 0);
    for target in GridSpec::new(12, 3).unwrap().lotteries() {
        if affine_coefficients(&embed(&target), &embedded)
            .unwrap()
            .is_none()
        {
            continue;
        }
        match indifference_certificate(&target, &points) {
            Ok(cert) if cert.verify(&oracle).is_ok() => match cert.branch {
                CertificateBranch::Convex { .. } => convex += 1,
                CertificateBranch::Reduction { .. } => reduction += 1,
            },
            _ => failures += 1,
        }
    }
    let stated = indifference_certificate(&lottery(&[(1, 2), (0, 1), (1, 2)]), &points).unwrap();
    let stated_ok = stated.coefficients == vec![Rational::integer(-1), Rational::integer(2)]
        && matches!(&stated.branch, CertificateBranch::Reduction { alpha_star, .. } if *alpha_star == Rational::new(2, 3));
    outcome(
        failures == 0 && convex > 0 && reduction > 0 && stated_ok,
        format!("{convex} convex, {reduction} reduction, {failures} failures, (1/2,0,1/2) as stated: {stated_ok}"),
    )
}

fn violated_with_replay(verdict: &AxiomVerdict, oracle: &PreferenceOracle) -> bool {
    verdict
        .witness()
        .is_some_and(|w| verdict.is_violated() && w.replay(oracle))
}

fn hybrid_reproduction() -> Outcome {
    let hybrid = PreferenceOracle::hybrid(3).unwrap();
    let mut notes = Vec::new();

    let ip = check_ip(&hybrid, &GridSpec::new(2, 3).unwrap()).unwrap();
    let ip_ok = matches!(
        &ip,
        AxiomVerdict::NoViolationFound { evidence: Some(w @ Witness::IndifferentPoints { .. }), .. } if w.replay(&hybrid)
    );
    notes.push(format!("ip={ip_ok}"));

    let grid = GridSpec::new(8, 3).unwrap();
    let mut continuity_ok = true;
    for kind in [
        ContinuityKind::Mixture,
        ContinuityKind::Archimedean,
        ContinuityKind::Solvability,
        ContinuityKind::GridOpenness,
    ] {
        let verdict = check_continuity(&hybrid, kind, &grid, &SearchBudget::default()).unwrap();
        let ok = violated_with_replay(&verdict, &hybrid);
        continuity_ok &= ok;
        notes.push(format!("{kind:?}={ok}"));
    }

    let grid = GridSpec::new(6, 3).unwrap();
    let betweenness = check_independence(&hybrid, &grid, IndependenceVariant::Betweenness).unwrap();
    let independence =
        check_independence(&hybrid, &grid, IndependenceVariant::Independence).unwrap();
    let independence_ok =
        !betweenness.is_violated() && violated_with_replay(&independence, &hybrid);
    notes.push(format!(
        "betweenness-clean-independence-violated={independence_ok}"
    ));

    outcome(ip_ok && continuity_ok && independence_ok, notes.join(", "))
}

fn construction() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED ^ 0x5eed);
    let start = Instant::now();
    let mut failures = Vec::new();
    for trial in 0..50 {
        let n = 1 + trial % 5;
        let values = random_utility(&mut rng, n, true);
        let oracle = eu(&values);
        let (p, r) = extreme_vertices(&values);
        let q = Lottery::uniform(n + 1);
        let ok = construct_ip_via_solvability(&oracle, &p, &q, &r).is_ok_and(|points| {
            let embedded: Vec<_> = points.iter().map(embed).collect();
            let u = UtilityFunction::from_integers(&values).unwrap();
            let level = expected_utility(&u, &points[0]).unwrap();
            points.len() == n
                && affine_rank(&embedded).unwrap() == n - 1
                && points
                    .iter()
                    .all(|s| expected_utility(&u, s).unwrap() == level)
                && [&p, &r]
                    .iter()
                    .all(|x| affine_coefficients(&embed(x), &embedded).unwrap().is_none())
        });
        if !ok {
            failures.push(format!("{values:?}"));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < CONSTRUCTION_LIMIT,
        format!(
            "50 oracles, {} failures {:?}, {elapsed:.2?}",
            failures.len(),
            failures
        ),
    )
}

fn degenerate_cases() -> Outcome {
    let constant = UtilityFunction::from_integers(&[0, 0, 0]).unwrap();
    let (points, _) = generate_indifferent_points(&constant);
    let oracle = PreferenceOracle::expected_utility(constant);
    let constant_ok = points.len() == 2
        && points.iter().all(|p| {
            compare(&oracle, p, &points[0]).unwrap() == indiff_core::Comparison::Indifferent
        });

    let repeated = ElicitationInput {
        indifferent: vec![Lottery::uniform(3), Lottery::uniform(3)],
        strict: None,
    };
    let rank_ok = matches!(elicit(&repeated), Err(Error::RankDeficient { .. }));

    let unoriented = elicit(&ElicitationInput {
        indifferent: vec![Lottery::uniform(3), lottery(&[(5, 12), (1, 6), (5, 12)])],
        strict: None,
    })
    .unwrap();
    let unoriented_ok = !unoriented.oriented
        && matches!(
            classify(&unoriented, &Lottery::uniform(3), &Lottery::vertex(3, 2)),
            Err(Error::UnorientedRepresentation)
        );
    outcome(
        constant_ok && rank_ok && unoriented_ok,
        format!("constant={constant_ok}, rank-deficient={rank_ok}, unoriented={unoriented_ok}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 round-trip exactness", round_trip),
        ("2 grid equivalence", grid_equivalence),
        ("3 lemma suite", lemma_suite),
        ("4 certificate coverage", certificate_coverage),
        ("5 hybrid example reproduction", hybrid_reproduction),
        ("6 construction via solvability", construction),
        ("7 degenerate handling", degenerate_cases),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let result = run();
        let status = if result.passed { "PASS" } else { "FAIL" };
        println!("{status} {name}: {}", result.detail);
        if !result.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
