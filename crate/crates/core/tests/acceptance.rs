//! Acceptance gate: every verification battery at its pinned tolerance.
//!
//! The whole suite runs once (seed 7, full sample counts); each test below
//! prints its criterion's pass/fail line and asserts it. Run with
//! `cargo test --test acceptance -- --nocapture` to see every line.

use exthyp::suite::{run_all, CriterionSummary, SuiteReport};
use std::sync::OnceLock;

fn report() -> &'static SuiteReport {
    static REPORT: OnceLock<SuiteReport> = OnceLock::new();
    REPORT.get_or_init(|| run_all(7))
}

fn assert_criterion(name: &str) {
    let summaries = report().summaries();
    let summary: &CriterionSummary = summaries
        .iter()
        .find(|s| s.criterion == name)
        .unwrap_or_else(|| panic!("criterion {name} missing from the suite"));
    println!(
        "{}: {} ({} checks, {} failures, worst residual {:.3e})",
        summary.criterion,
        if summary.pass { "PASS" } else { "FAIL" },
        summary.checks,
        summary.failures,
        summary.worst_residual,
    );
    if !summary.pass {
        let failing: Vec<String> = report()
            .results
            .iter()
            .filter(|r| r.criterion == name && !r.pass)
            .map(|r| {
                format!(
                    "  {} residual {:.6e} vs tolerance {:.1e}",
                    r.case, r.residual, r.tolerance
                )
            })
            .collect();
        panic!("criterion '{name}' failed:\n{}", failing.join("\n"));
    }
}

#[test]
fn criterion_1_length_oracle() {
    // Contour quadrature of dr/(1-r^2) against the closed form on both
    // sides of the pole, 20 endpoints, |error| < 1e-8.
    assert_criterion("length-oracle");
}

#[test]
fn criterion_2_total_volume() {
    // Numerically integrated total volumes: -4*pi and +4*pi within 1e-4.
    assert_criterion("total-volume");
}

#[test]
fn criterion_3_distance_identity() {
    // <x,y> = |x||y| cosh d on 10k stratified pairs over every case-table
    // branch (relative 1e-9), plus the canonical configurations exactly.
    assert_criterion("distance-identity");
}

#[test]
fn criterion_4_triangle_laws() {
    // Cosine, dual cosine and sine laws < 1e-8 across five causal strata,
    // right-triangle corollaries < 1e-10.
    assert_criterion("triangle-laws");
}

#[test]
fn criterion_5_sign_machinery() {
    // Multi-sign calculus closure rules, the msgn lemmas over all admissible
    // sign patterns, and the per-side sign rule on sampled triangles; exact.
    assert_criterion("sign-machinery");
}

#[test]
fn criterion_6_polygon_identities() {
    // Every displayed identity of the five polygon families < 1e-8 over
    // 1000 samples each; strict inequalities hold on all samples.
    assert_criterion("polygon-identities");
}

#[test]
fn criterion_7_triangle_areas() {
    // Defect vs side-product areas < 1e-8 on classical hyperbolic triangles
    // and their spherical analogs; side-product limit within 1e-6 of pi at
    // sides = 30. The limit clause is known to sit at 1.835e-6 exactly (the
    // formula converges like 6*exp(-s/2)), so this criterion reports FAIL.
    assert_criterion("triangle-areas");
}

#[test]
fn criterion_8_correspondence_principle() {
    // Hyperbolic laws against spherical forms at -i times the lengths,
    // residual < 1e-10, including the i <-> -i symmetry of the even laws.
    assert_criterion("correspondence-principle");
}

#[test]
fn criterion_9_isometry_invariance() {
    // cosh-distances, law residuals and defect areas unchanged under 100
    // random proper isometries of rapidity up to 5, within 1e-7.
    assert_criterion("isometry-invariance");
}
