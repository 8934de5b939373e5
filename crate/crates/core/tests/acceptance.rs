//! One PASS/FAIL line per acceptance criterion.

use std::process::ExitCode;
use std::time::Instant;

use nonres::homology::*;
use nonres::oracle::*;
use nonres::scanning::{eval_real_loop, loop_class_mod2};
use nonres::spaces::{Family, SpaceId};

const SEED: u64 = 20240601;
const GRID_BUDGET_SECS: f64 = 60.0;

struct Outcome {
    passed: bool,
    detail: String,
}

fn grid_cells() -> Vec<GridCell> {
    GridSpec::parse("mn in {3,4,6,9}; d<=30").unwrap().cells()
}

fn grid_check(reports: &[TheoremReport], ids: &[CheckId], secs: f64) -> Outcome {
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| ids.iter().any(|&id| !r.check(id).passed))
        .take(3)
        .map(|r| format!("(d={},m={},n={},{:?})", r.d, r.m, r.n, r.field))
        .collect();
    Outcome {
        passed: bad.is_empty() && secs < GRID_BUDGET_SECS,
        detail: format!("{} reports, grid time {secs:.2}s, failing cells {bad:?}", reports.len()),
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for j in 1..=6 {
        if betti_cj_f2(j, j + 2) != fox_neuwirth_betti(j, j + 2).unwrap() {
            bad.push(j);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome { passed: bad.is_empty() && secs < 1.0, detail: format!("j=1..6 in {secs:.3}s, mismatched j {bad:?}") }
}

fn snaith() -> Outcome {
    let mut bad = Vec::new();
    for mn in [3, 4] {
        let engine = engine_for_verify(1, 1, mn, 40);
        let lhs = snaith_sum(&engine, mn, FieldChoice::F2, 40);
        let rhs = omega2_sphere(mn - 1, FieldChoice::F2, 40).unwrap().reduced();
        bad.extend((0..=40).filter(|&q| lhs.get(q) != rhs.get(q)).map(|q| (mn, q)));
    }
    Outcome { passed: bad.is_empty(), detail: format!("mn in {{3,4}}, q<=40, F2, mismatches {bad:?}") }
}

fn membership() -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for (m, n, d) in [(1, 2, 5), (2, 1, 3), (1, 3, 7), (2, 2, 5)] {
        let planted = planted_root_fuzz(d, m, n, 10_000, SEED).unwrap();
        let unplanted = unplanted_fuzz(d, m, n, 10_000, SEED).unwrap();
        // every unplanted non-member must have been confirmed by the recheck
        let genuine = unplanted.member_count + unplanted.verified_exceptions == unplanted.trials;
        passed &= planted.passed() && unplanted.passed() && genuine;
        parts.push(format!(
            "(m={m},n={n},d={d}) planted false={} unplanted rate={:.4} exceptions={}",
            planted.failures.len(),
            unplanted.member_rate(),
            unplanted.verified_exceptions
        ));
    }
    Outcome { passed, detail: parts.join("; ") }
}

fn pi0() -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for d in 1..=8 {
        let r = pi0_experiment_12(d, 10_000, SEED).unwrap();
        let exact_labels = r.labels() == (0..=d / 2).collect::<Vec<_>>();
        passed &= exact_labels && r.consistent();
        parts.push(format!("d={d}: labels {:?} paths {} violations {}", r.labels(), r.paths.member_paths, r.paths.violations));
    }
    Outcome { passed, detail: parts.join("; ") }
}

fn loop_class() -> Outcome {
    let mut trials = 0;
    let mut bad = Vec::new();
    let mut max_points = 0;
    for (m, n) in [(3, 1), (1, 3), (2, 2), (4, 1), (1, 4)] {
        let space_of = |d| SpaceId::new(Family::QR, d, m, n).unwrap();
        for d in 1..=8 {
            let space = space_of(d);
            let mut rng = seeded_rng(SEED, (100 * m + 10 * n + d) as u64);
            for _ in 0..100 {
                trials += 1;
                let sys = random_member(&mut rng, &space, COEFF_BOUND).unwrap().system;
                match eval_real_loop(&sys, 64).and_then(|s| {
                    max_points = max_points.max(s.points.len());
                    loop_class_mod2(&s)
                }) {
                    Ok(c) if c as usize == d % 2 => {}
                    other => bad.push(format!("(m={m},n={n},d={d}): {other:?}")),
                }
            }
        }
    }
    bad.truncate(3);
    Outcome {
        passed: bad.is_empty(),
        detail: format!("{trials} loops, largest sample {max_points} points, failures {bad:?}"),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let reports = verify_grid(&grid_cells(), &FieldChoice::BOTH, None).unwrap();
    let grid_secs = start.elapsed().as_secs_f64();

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("stable-range Betti agreement, real", Box::new(|| grid_check(&reports, &[CheckId::RealLoopModel], grid_secs))),
        ("stable-range Betti agreement, complex", Box::new(|| grid_check(&reports, &[CheckId::ComplexLoopModel], grid_secs))),
        ("E1 antidiagonal totals", Box::new(|| grid_check(&reports, &[CheckId::E1Totals], grid_secs))),
        ("degree-shift identity", Box::new(|| grid_check(&reports, &[CheckId::DegreeShift], grid_secs))),
        ("homology stability", Box::new(|| grid_check(&reports, &[CheckId::Stabilization], grid_secs))),
        ("braid homology vs Fox-Neuwirth oracle", Box::new(oracle_equivalence)),
        ("Snaith consistency", Box::new(snaith)),
        ("membership soundness", Box::new(membership)),
        ("pi0 of Poly^{d,1}_2(R)", Box::new(pi0)),
        ("loop class equals d mod 2", Box::new(loop_class)),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = run();
        all &= out.passed;
        let verdict = if out.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name} [{:.2}s] {}", i + 1, t.elapsed().as_secs_f64(), out.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
