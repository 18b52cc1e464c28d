//! End-to-end acceptance suite. Each criterion prints one pass/fail line;
//! failures also panic so the harness reports them.

use std::time::Instant;

use weightconj::assoc::{omega_sup_oracle, AssociatedWeight};
use weightconj::conjugate::{upper_welldef_check, ConjOptions, WellDefStatus};
use weightconj::extreal::ExtReal::{self, Finite, PosInf};
use weightconj::indices::{gamma_lower, gamma_upper, IndexOptions};
use weightconj::sequences::{Tail, WeightSequence, DEFAULT_DEPTH};
use weightconj::verify::{
    self, finite_iota_fixture, linspace, verify_index_theorems, verify_inverse_roundtrips,
    verify_product_identity, verify_quotient_identity, CheckReport, CheckStatus, TOL_GRID,
    TOL_INDEX,
};
use weightconj::weightfn::WeightFunction;

fn g(s: f64) -> WeightSequence {
    WeightSequence::gevrey(s, DEFAULT_DEPTH).unwrap()
}

fn report(criterion: &str, ok: bool, detail: &str) {
    println!(
        "acceptance {}: {} {}",
        criterion,
        if ok { "pass" } else { "FAIL" },
        detail
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn passed(r: &CheckReport) -> bool {
    r.status == CheckStatus::Pass
}

#[test]
fn criterion_1_product_identity() {
    let start = Instant::now();
    let grid = linspace(0.0, 100.0, 200);
    let pairs = [(1.0, 1.0), (1.2, 0.7), (2.0, 0.5)];
    let mut ok = true;
    let mut worst = 0.0f64;
    for (a, b) in pairs {
        let r = verify_product_identity(&g(a), &g(b), &grid, TOL_GRID);
        ok &= passed(&r);
        worst = worst.max(r.max_abs_err);
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs_f64() < 5.0;
    report(
        "1 product identity",
        ok,
        &format!("max err {worst:.2e}, {} ms", elapsed.as_millis()),
    );
}

#[test]
fn criterion_2_quotient_identity() {
    let grid = linspace(0.0, 50.0, 101);
    let r1 = verify_quotient_identity(&g(2.0), &g(1.0), &grid, TOL_GRID);
    let r2 = verify_quotient_identity(&g(3.0), &g(1.5), &grid, TOL_GRID);
    // Non-log-convex quotient: the inequality direction must still hold.
    let bumpy = {
        let log_mu: Vec<f64> = (1..=DEFAULT_DEPTH)
            .map(|p| (p as f64).ln() + if p % 2 == 0 { 0.2 } else { 0.0 })
            .collect();
        WeightSequence::from_quotients(0.0, log_mu, Tail::Explicit).unwrap()
    };
    assert!(
        !bumpy.pointwise_quotient(&g(1.0)).unwrap().is_log_convex(),
        "fixture quotient must not be log-convex"
    );
    let r3 = verify_quotient_identity(&bumpy, &g(1.0), &linspace(0.0, 1.05, 43), TOL_GRID);
    let ok = passed(&r1) && passed(&r2) && passed(&r3);
    report(
        "2 quotient identity",
        ok,
        &format!(
            "max errs {:.2e} / {:.2e} / {:.2e}",
            r1.max_abs_err, r2.max_abs_err, r3.max_abs_err
        ),
    );
}

#[test]
fn criterion_3_inverse_roundtrips() {
    let grid = linspace(0.0, 50.0, 51);
    let r1 = verify_inverse_roundtrips(&g(1.0), &g(0.5), &grid, TOL_GRID);
    let r2 = verify_inverse_roundtrips(&g(2.0), &g(1.0), &grid, TOL_GRID);
    report(
        "3 inverse round trips",
        passed(&r1) && passed(&r2),
        &format!("max errs {:.2e} / {:.2e}", r1.max_abs_err, r2.max_abs_err),
    );
}

#[test]
fn criterion_4_log_fixed_point() {
    let reports = verify::run_suite(Some("fixedpoint"));
    let ok = reports.len() == 2 && reports.iter().all(passed);
    let worst = reports.iter().map(|r| r.max_abs_err).fold(0.0, f64::max);
    report(
        "4 logarithmic fixed point",
        ok,
        &format!("max err {worst:.2e}"),
    );
}

#[test]
fn criterion_5_index_recovery() {
    let start = Instant::now();
    let opts = IndexOptions {
        force_numeric: true,
        ..IndexOptions::default()
    };
    let mut ok = true;
    for s in [0.5, 1.0, 2.0] {
        let fns: Vec<WeightFunction> = vec![
            WeightFunction::monomial(s).unwrap(),
            WeightFunction::associated(AssociatedWeight::new(g(s)).unwrap()),
        ];
        for f in &fns {
            for est in [
                gamma_lower(f, &opts).unwrap(),
                gamma_upper(f, &opts).unwrap(),
            ] {
                ok &= est.width() <= TOL_INDEX * (1.0 + 1e-9) && est.contains(Finite(s));
            }
        }
    }
    // Additivity under the product conjugate for monomial pairs.
    for (a, b) in [(1.0, 1.0), (1.5, 0.5)] {
        let r = verify_index_theorems(
            &WeightFunction::monomial(a).unwrap(),
            &WeightFunction::monomial(b).unwrap(),
            TOL_INDEX,
        );
        ok &= passed(&r);
        let lo = WeightFunction::lower_conj(
            WeightFunction::monomial(a).unwrap(),
            WeightFunction::monomial(b).unwrap(),
            ConjOptions::nested(),
        )
        .unwrap();
        let est = gamma_lower(&lo, &IndexOptions::default()).unwrap();
        ok &= est.contains(Finite(a + b)) && est.width() <= TOL_INDEX * (1.0 + 1e-9);
    }
    // Subtraction under the quotient conjugate for monomial pairs.
    for (b, a) in [(3.0, 1.0), (2.0, 0.5)] {
        let up = WeightFunction::upper_conj(
            WeightFunction::monomial(b).unwrap(),
            WeightFunction::monomial(a).unwrap(),
            ConjOptions::nested(),
        )
        .unwrap();
        let est = gamma_lower(&up, &IndexOptions::default()).unwrap();
        ok &= est.contains(Finite(b - a)) && est.width() <= TOL_INDEX * (1.0 + 1e-9);
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs() < 60;
    report(
        "5 index recovery",
        ok,
        &format!("{} ms", elapsed.as_millis()),
    );
}

#[test]
fn criterion_6_well_definedness() {
    let opts = ConjOptions::default();
    let power = upper_welldef_check(
        &WeightFunction::monomial(0.5).unwrap(),
        &WeightFunction::monomial(1.0).unwrap(),
        &opts,
    )
    .unwrap();
    let eq = {
        let f = WeightFunction::associated(AssociatedWeight::new(g(1.0)).unwrap());
        upper_welldef_check(&f, &f, &opts).unwrap()
    };
    let sub = upper_welldef_check(
        &WeightFunction::associated(AssociatedWeight::new(g(2.0)).unwrap()),
        &WeightFunction::associated(AssociatedWeight::new(g(1.0)).unwrap()),
        &opts,
    )
    .unwrap();
    let ok = power.status == WellDefStatus::IllDefined
        && matches!(eq.status, WellDefStatus::WellDefinedUpTo(Finite(t)) if (t - 1.0).abs() < 1e-9)
        && eq.exact
        && sub.status == WellDefStatus::WellDefined;
    report(
        "6 well-definedness classification",
        ok,
        &format!("{:?} / {:?} / {:?}", power.status, eq.status, sub.status),
    );
}

#[test]
fn criterion_7_nonstandard_matrix() {
    let r = verify::verify_nonstandard_suite();
    // Spot-check the advertised finite window directly: finite exactly on
    // [0, M_ι·N_ι), +∞ beyond, with exact tolerance.
    let prod = weightconj::conjugate::lower_conj_assoc(
        &finite_iota_fixture(2.0),
        &finite_iota_fixture(3.0),
    )
    .unwrap()
    .weight;
    let window = matches!(prod.eval(Finite(5.999)).unwrap(), Finite(_))
        && prod.eval(Finite(6.001)).unwrap() == PosInf
        && prod.eval(ExtReal::ZERO).unwrap() == ExtReal::ZERO;
    report(
        "7 non-standard matrix",
        passed(&r) && window,
        &format!("{} assertions, max err {:.2e}", r.grid_size, r.max_abs_err),
    );
}

#[test]
fn criterion_8_associated_weight_oracle() {
    let mut ok = true;
    let mut worst = 0.0f64;
    // Associated-weight evaluation against the direct supremum oracle.
    for s in [0.5, 1.0, 2.0] {
        let seq = g(s);
        let w = AssociatedWeight::new(seq.clone()).unwrap();
        for t in linspace(0.0, 100.0, 1000) {
            // The supremum's optimal index reaches t^{1/s} ≈ 10^4 for
            // s = 0.5 at t = 100, so probe well past it.
            let direct = omega_sup_oracle(&seq, t, 60_000);
            let err = match (w.eval(Finite(t)).unwrap(), direct) {
                (Finite(a), Finite(b)) => (a - b).abs(),
                (a, b) if a == b => 0.0,
                _ => f64::INFINITY,
            };
            worst = worst.max(err);
            ok &= err <= 1e-10;
        }
    }
    // Reconstruction of log M_p from the weight.
    let w1 = AssociatedWeight::new(g(1.0)).unwrap();
    for p in 1..=256u64 {
        let rec = w1.reconstruct_log_m(p, 4000).unwrap();
        let truth: f64 = (1..=p).map(|k| (k as f64).ln()).sum();
        let err = (rec - truth).abs();
        worst = worst.max(err);
        ok &= err <= 1e-8;
    }
    // A spiked (non-log-convex) table and its convex minorant give the
    // same weight.
    let spiked = {
        let mut log_mu: Vec<f64> = (1..=DEFAULT_DEPTH).map(|p| (p as f64).ln()).collect();
        for i in (4..log_mu.len()).step_by(17) {
            log_mu[i] += 0.5;
        }
        WeightSequence::from_quotients(0.0, log_mu, Tail::Explicit).unwrap()
    };
    let w_spiked = AssociatedWeight::new(spiked.clone()).unwrap();
    let w_minorant = AssociatedWeight::new(spiked.log_convex_minorant().unwrap()).unwrap();
    for t in linspace(0.0, 80.0, 400) {
        let err = (w_spiked.eval(Finite(t)).unwrap().to_f64()
            - w_minorant.eval(Finite(t)).unwrap().to_f64())
        .abs();
        worst = worst.max(err);
        ok &= err <= 1e-10;
    }
    report(
        "8 associated-weight oracle",
        ok,
        &format!("max err {worst:.2e}"),
    );
}

#[test]
fn criterion_9_deterministic_reports() {
    let strip_runtime = |csv: &str| -> String {
        csv.lines()
            .map(|l| l.rsplit_once(',').map(|(head, _)| head).unwrap_or(l))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = verify::run_suite(None);
    let second = verify::run_suite(None);
    let a = strip_runtime(&verify::to_csv(&first));
    let b = strip_runtime(&verify::to_csv(&second));
    let no_failures = !verify::any_failure(&first);
    for r in &first {
        if let CheckStatus::Fail(msg) = &r.status {
            println!("  suite failure in {}: {msg}", r.check_id);
        }
    }
    report(
        "9 deterministic verification suite",
        a == b && no_failures,
        &format!(
            "{} checks, reports byte-identical modulo runtime",
            first.len()
        ),
    );
}
