//! Acceptance suite: every release criterion, one test each, with the
//! tolerances pinned in code. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the one-line verdicts).

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use sendov_core::certify::{run_claim, CertStatus, ClaimReport};
use sendov_core::halfplane::{
    bisector_point, g_argmax_closed_form, g_max_numeric, quartic_identity_check, GParams,
};
use sendov_core::metrics::{build_instance, i_measure, identity_suite};
use sendov_core::poly::{pairing_distance, C64};
use sendov_core::search::extremal_search;
use sendov_core::suite::{run_check_suite, SuiteConfig, SuiteOutput};

const SUITE_COUNT: usize = 10_000;
const SUITE_SEED: u64 = 42;

fn big_suite() -> &'static (SuiteOutput, Duration) {
    static SUITE: OnceLock<(SuiteOutput, Duration)> = OnceLock::new();
    SUITE.get_or_init(|| {
        let started = Instant::now();
        let config = SuiteConfig {
            seed: SUITE_SEED,
            n: 9,
            count: SUITE_COUNT,
            tol: 1e-8,
        };
        let out = run_check_suite(&config, None).expect("suite runs");
        (out, started.elapsed())
    })
}

fn verdict(criterion: &str, pass: bool) {
    println!(
        "ACCEPTANCE {criterion}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "acceptance criterion {criterion} failed");
}

fn agg<'a>(out: &'a SuiteOutput, id: &str) -> &'a sendov_core::suite::CheckAggregate {
    out.report
        .aggregates
        .iter()
        .find(|a| a.check_id == id)
        .unwrap_or_else(|| panic!("missing aggregate {id}"))
}

fn claim_certified(report: &ClaimReport) -> bool {
    report.certified
        && report
            .parts
            .iter()
            .all(|p| p.status == CertStatus::Certified)
}

#[test]
fn criterion_1_a9_bracket_certified() {
    let started = Instant::now();
    let report = run_claim("C1", 48).expect("C1 runs");
    let elapsed = started.elapsed();
    let part = &report.parts[0];
    let ok = claim_certified(&report)
        && part.domain.get("x").unwrap().lo() == 0.4314
        && part.domain.get("x").unwrap().hi() == 0.4315
        && part
            .detail
            .contains("positivity on [0.01, 0.4314]: certified")
        && elapsed < Duration::from_secs(5);
    verdict("1 (A9 bracket + left positivity, < 5 s)", ok);
}

#[test]
fn criterion_2_scalar_claims_certified() {
    let mut ok = true;
    for id in ["C2", "C3", "C4", "C5", "C7", "C8"] {
        let started = Instant::now();
        let report = run_claim(id, 48).expect("claim runs");
        let elapsed = started.elapsed();
        let this = claim_certified(&report) && elapsed < Duration::from_secs(60);
        if !this {
            eprintln!(
                "claim {id} failed: certified={} elapsed={elapsed:?}",
                report.certified
            );
        }
        ok &= this;
    }
    verdict(
        "2 (C2-C5, C7, C8 certified at depth <= 48, < 60 s each)",
        ok,
    );
}

#[test]
fn criterion_3_contradiction_gap_certified() {
    let started = Instant::now();
    let report = run_claim("C6", 48).expect("C6 runs");
    let elapsed = started.elapsed();
    let seg = |label: &str| report.parts.iter().find(|p| p.claim == label);
    let segments_ok = ["C6a", "C6b", "C6c"].iter().all(|label| {
        seg(label)
            .map(|p| p.status == CertStatus::Certified)
            .unwrap_or(false)
    });
    let brackets_ok = ["C6-a1", "C6-a2"].iter().all(|label| {
        seg(label)
            .map(|p| p.status == CertStatus::Certified)
            .unwrap_or(false)
    });
    // the three case intervals overlap on the bracket slivers
    let domains_ok = {
        let a = seg("C6a").unwrap();
        let b = seg("C6b").unwrap();
        let c = seg("C6c").unwrap();
        a.domain.get("a").unwrap().lo() == 0.5195
            && a.domain.get("a").unwrap().hi() == 0.637
            && b.domain.get("a").unwrap().lo() == 0.636
            && b.domain.get("a").unwrap().hi() == 0.724
            && c.domain.get("a").unwrap().lo() == 0.723
            && c.domain.get("a").unwrap().hi() == 0.8449
    };
    let diagnostic_ok = report
        .parts
        .iter()
        .any(|p| p.detail.contains("sign change near a = 0.845"));
    let ok = claim_certified(&report)
        && segments_ok
        && brackets_ok
        && domains_ok
        && diagnostic_ok
        && elapsed < Duration::from_secs(120);
    verdict(
        "3 (C6 on the three case intervals + diagnostic scan, < 120 s)",
        ok,
    );
}

#[test]
fn criterion_4_property_suite_clean() {
    let (out, elapsed) = big_suite();
    let identity_ids = [
        "lemma_3_2_product_complex",
        "lemma_3_2_product_abs",
        "lemma_3_2_reciprocal_sum",
        "lemma_3_2_re_reciprocal",
        "lemma_3_2_mean",
    ];
    let mut ok = true;
    for id in identity_ids {
        let a = agg(out, id);
        ok &= a.failures == 0 && a.worst_residual <= 1e-8;
    }
    for id in ["eq_1_2_bounds", "gauss_lucas_hull", "eq_3_1_gamma_product"] {
        let a = agg(out, id);
        ok &= a.failures == 0 && a.vacuous == 0 && a.runs == SUITE_COUNT as u64;
    }
    // zero non-vacuous failures anywhere, no conjecture-critical findings
    ok &= out.report.aggregates.iter().all(|a| a.failures == 0);
    ok &= out.report.findings.is_empty();
    ok &= *elapsed < Duration::from_secs(300);
    verdict(
        "4 (10^4-instance property suite, residuals <= 1e-8, < 5 min)",
        ok,
    );
}

#[test]
fn criterion_5_measure_suite_clean() {
    let (out, elapsed) = big_suite();
    let mut ok = true;
    for id in ["bruijn_springer", "theorem_3_products"] {
        let a = agg(out, id);
        ok &= a.failures == 0 && a.runs >= 1000;
    }
    for id in ["lemma_4_1_measure", "lemma_4_2_measure"] {
        let a = agg(out, id);
        ok &= a.failures == 0 && a.passes >= 1000;
    }
    let dec = agg(out, "eq_4_3_decomposition");
    ok &= dec.failures == 0 && dec.worst_residual <= 1e-9;
    ok &= *elapsed < Duration::from_secs(300);
    verdict(
        "5 (measure/composition suite at stated tolerances, < 5 min)",
        ok,
    );
}

#[test]
fn criterion_6_geometry_suite() {
    let mut rng = ChaCha12Rng::seed_from_u64(1234);
    let mut ok = true;

    for _ in 0..1000 {
        let a: f64 = rng.gen_range(0.05..0.999);
        let r: f64 = rng.gen_range(1e-4..1.0) * a * 0.999;
        let Ok(params) = GParams::new(a, r) else {
            continue;
        };
        let (x0, _, gmax) = g_argmax_closed_form(&params);
        let (xs, gs) = g_max_numeric(&params);
        if (gs - gmax).abs() > 1e-8 * gmax.max(1.0) || (xs - x0).abs() > 1e-6 {
            eprintln!("G max mismatch at (a, r) = ({a}, {r}): {gs} vs {gmax}, {xs} vs {x0}");
            ok = false;
        }
    }

    for _ in 0..1000 {
        let a: f64 = rng.gen_range(0.0..1.0);
        let r: f64 = rng.gen_range(0.0..1.0);
        let phi: f64 = rng.gen_range(0.0..2.0);
        let res = quartic_identity_check(a, r, phi);
        if !(res.pass && res.residual <= 1e-9) {
            eprintln!(
                "quartic identity residual {} at ({a}, {r}, {phi})",
                res.residual
            );
            ok = false;
        }
    }

    for _ in 0..1000 {
        let x: f64 = rng.gen_range(-2.0..2.0);
        let y: f64 = rng.gen_range(-2.0..2.0);
        let z0 = C64::new(x, y);
        if z0.norm() < 1e-3 || z0.norm() > 2.0 {
            continue;
        }
        let (p, m) = bisector_point(z0).expect("in domain");
        for w in [p, m] {
            if (w.norm() - 1.0).abs() > 1e-12 || (w.norm() - (w - z0).norm()).abs() > 1e-12 {
                eprintln!("bisector metric violation at z0 = {z0}");
                ok = false;
            }
        }
    }

    verdict(
        "6 (geometry suite: G max, quartic identity, bisector metrics)",
        ok,
    );
}

#[test]
fn criterion_7_golden_instance() {
    let inst = build_instance(0.5, &[C64::new(-0.5, 0.0); 8]).expect("golden instance");
    let mut ok = true;

    let mut expected = vec![C64::new(7.0 / 18.0, 0.0)];
    expected.extend(std::iter::repeat_n(C64::new(-0.5, 0.0), 7));
    ok &= pairing_distance(inst.criticals(), &expected) <= 1e-10;

    ok &= (inst.rho()[0] - 1.0 / 9.0).abs() <= 1e-10;
    ok &= (inst.prod_r() - 1.0).abs() <= 1e-10;
    ok &= (9.0 * inst.prod_rho() - 1.0).abs() <= 1e-10;
    ok &= (inst.sigma() - 8.0).abs() <= 1e-10;

    let (i_a, i_p) = i_measure(&inst);
    ok &= (i_a - 1.0 / 9.0).abs() <= 1e-10;
    ok &= (i_p - 1.0 / 9.0).abs() <= 1e-10;

    for res in identity_suite(&inst) {
        if res.hypothesis_held && res.residual > 1e-10 {
            eprintln!("identity {} residual {}", res.check_id, res.residual);
            ok = false;
        }
    }
    verdict(
        "7 (golden instance: criticals, rho1 = 1/9, products, sigma, identities)",
        ok,
    );
}

#[test]
fn criterion_8_extremal_search_window() {
    let result = extremal_search(9, 200, 7).expect("search runs");
    let ok = result.best_i >= 0.99
        && result.best_i <= 1.0 + 1e-6
        && !result.conjecture_flag
        && result.restarts == 200;
    println!(
        "  search best_i = {:.12}, longest empty arc = {:.6}",
        result.best_i, result.longest_empty_arc
    );
    verdict(
        "8 (extremal search n = 9, 200 restarts, best I in [0.99, 1 + 1e-6])",
        ok,
    );
}

#[test]
fn criterion_9_determinism() {
    // identical results for the same seed across two runs and two pool sizes
    let config = SuiteConfig {
        seed: 9,
        n: 9,
        count: 40,
        tol: 1e-8,
    };
    let pool1 = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let pool3 = rayon::ThreadPoolBuilder::new()
        .num_threads(3)
        .build()
        .unwrap();
    let a = pool1.install(|| run_check_suite(&config, None)).unwrap();
    let b = pool3.install(|| run_check_suite(&config, None)).unwrap();
    let mut ok =
        serde_json::to_string(&a.report).unwrap() == serde_json::to_string(&b.report).unwrap();
    ok &= a.rows == b.rows;

    let s1 = extremal_search(9, 5, 11).unwrap();
    let s2 = extremal_search(9, 5, 11).unwrap();
    ok &= serde_json::to_string(&s1).unwrap() == serde_json::to_string(&s2).unwrap();

    let c1 = run_claim("C2", 48).unwrap();
    let c2 = run_claim("C2", 48).unwrap();
    ok &= serde_json::to_string(&c1.parts).unwrap() == serde_json::to_string(&c2.parts).unwrap();

    verdict(
        "9 (byte-identical JSON bodies across runs and worker counts)",
        ok,
    );
}
