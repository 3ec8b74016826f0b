//! The aggregated verification suite: every acceptance check of the project
//! as one seeded, deterministic battery.
//!
//! Each check pins its tolerance here, in code. The CLI `suite all` command
//! and the acceptance test target both run [`run_all`] and render the same
//! results.

use crate::area::{
    area_defect, area_defect_from_sides, area_pair, area_sides, correspondence_check, LawKind,
};
use crate::branch::{msgn, msgn_by_roots, sgn, sqrt_conv, SignValue};
use crate::contour::{integrate_contour, total_volume, ContourSpec};
use crate::lorentz::{inner_product, lorentz_norm, vec2, MinkowskiVector};
use crate::metric::{extended_distance, DistanceCase};
use crate::polygon::{verify_family, PolygonFamily};
use crate::sample::{
    pair_in_case, random_isometry, right_triangle, rng, triangle_in_stratum, TriangleStratum,
};
use crate::triangle::{
    dual_product_sign_holds, sign_cancellation_holds, sine_exchange_sign_holds, ExtTriangle,
    verify_cosine_laws, verify_sign_identities, verify_sine_law,
};
use crate::{ComplexMeasure, Model};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

/// One verification check: a named case with its residual, tolerance and
/// verdict.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub criterion: &'static str,
    pub case: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    fn bounded(criterion: &'static str, case: impl Into<String>, residual: f64, tol: f64) -> Self {
        CheckResult {
            criterion,
            case: case.into(),
            residual,
            tolerance: tol,
            pass: residual.is_finite() && residual < tol,
        }
    }

    fn verdict(criterion: &'static str, case: impl Into<String>, pass: bool) -> Self {
        CheckResult {
            criterion,
            case: case.into(),
            residual: if pass { 0.0 } else { 1.0 },
            tolerance: 0.5,
            pass,
        }
    }
}

/// Per-criterion rollup of the individual checks.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionSummary {
    pub criterion: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub worst_residual: f64,
    pub pass: bool,
}

/// Full suite output: deterministic for a fixed seed and configuration.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn summaries(&self) -> Vec<CriterionSummary> {
        let mut out: Vec<CriterionSummary> = Vec::new();
        for name in CRITERIA {
            let rows: Vec<&CheckResult> = self
                .results
                .iter()
                .filter(|r| r.criterion == *name)
                .collect();
            if rows.is_empty() {
                continue;
            }
            out.push(CriterionSummary {
                criterion: name,
                checks: rows.len(),
                failures: rows.iter().filter(|r| !r.pass).count(),
                worst_residual: rows.iter().fold(0.0f64, |m, r| m.max(r.residual)),
                pass: rows.iter().all(|r| r.pass),
            });
        }
        out
    }
}

/// Sample counts per battery; the defaults match the acceptance gate.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub oracle_points: usize,
    pub distance_pairs: usize,
    pub triangles_per_stratum: usize,
    pub right_triangles: usize,
    pub polygon_samples: usize,
    pub area_triangles: usize,
    pub correspondence_per_stratum: usize,
    pub isometries: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            oracle_points: 20,
            distance_pairs: 10_000,
            triangles_per_stratum: 1000,
            right_triangles: 50,
            polygon_samples: 1000,
            area_triangles: 1000,
            correspondence_per_stratum: 100,
            isometries: 100,
        }
    }
}

impl SuiteConfig {
    /// A reduced configuration for quick smoke runs.
    pub fn quick(samples: usize) -> Self {
        let n = samples.max(5);
        SuiteConfig {
            oracle_points: 20,
            distance_pairs: 9 * n,
            triangles_per_stratum: n,
            right_triangles: n.min(50),
            polygon_samples: n,
            area_triangles: n,
            correspondence_per_stratum: n.min(100),
            isometries: n.min(100),
        }
    }
}

pub const CRITERIA: &[&str] = &[
    "length-oracle",
    "total-volume",
    "distance-identity",
    "triangle-laws",
    "sign-machinery",
    "polygon-identities",
    "triangle-areas",
    "correspondence-principle",
    "isometry-invariance",
];

const TOL_LENGTH_ORACLE: f64 = 1e-8;
const TOL_TOTAL_VOLUME: f64 = 1e-4;
const TOL_DISTANCE_IDENTITY: f64 = 1e-9;
const TOL_CANONICAL: f64 = 1e-12;
const TOL_TRIG_LAWS: f64 = 1e-8;
const TOL_RIGHT_TRIANGLE: f64 = 1e-10;
const TOL_POLYGON: f64 = 1e-8;
const TOL_OFFSETS: f64 = 1e-9;
const TOL_AREA_EQUALITY: f64 = 1e-8;
const TOL_AREA_LIMIT: f64 = 1e-6;
const TOL_CORRESPONDENCE: f64 = 1e-10;
const TOL_INVARIANCE: f64 = 1e-7;

/// Contour quadrature of the length integrand against the closed form, over
/// a grid of endpoints on both sides of the pole.
pub fn length_oracle_checks(config: &SuiteConfig) -> Vec<CheckResult> {
    let name = CRITERIA[0];
    let mut results = Vec::new();
    let half = config.oracle_points / 2;
    let integrand = |z: Complex64| (Complex64::new(1.0, 0.0) - z * z).inv();
    for k in 0..config.oracle_points {
        let b = if k < half {
            0.05 + 0.9 * k as f64 / (half.max(2) - 1) as f64
        } else {
            1.1 + 4.0 * (k - half) as f64 / (half.max(2) - 1) as f64
        };
        let closed = if b < 1.0 {
            Complex64::new(0.5 * ((1.0 + b) / (1.0 - b)).ln(), 0.0)
        } else {
            Complex64::new(0.5 * ((b + 1.0) / (b - 1.0)).ln(), FRAC_PI_2)
        };
        let residual = match ContourSpec::new(0.0, b).and_then(|p| integrate_contour(integrand, &p))
        {
            Ok(numeric) => (numeric - closed).norm(),
            Err(_) => f64::INFINITY,
        };
        results.push(CheckResult::bounded(
            name,
            format!("b={b:.3}"),
            residual,
            TOL_LENGTH_ORACLE,
        ));
    }
    results
}

/// Total extended volumes of the two-dimensional models.
pub fn total_volume_checks() -> Vec<CheckResult> {
    let name = CRITERIA[1];
    let mut results = Vec::new();
    let h = total_volume(Model::HyperbolicSphere, 2)
        .map(|v| (v - Complex64::new(-4.0 * PI, 0.0)).norm())
        .unwrap_or(f64::INFINITY);
    results.push(CheckResult::bounded(
        name,
        "hyperbolic-sphere-2d = -4*pi",
        h,
        TOL_TOTAL_VOLUME,
    ));
    let s = total_volume(Model::SphericalSphere, 2)
        .map(|v| (v - Complex64::new(4.0 * PI, 0.0)).norm())
        .unwrap_or(f64::INFINITY);
    results.push(CheckResult::bounded(
        name,
        "de-sitter-sphere-2d = +4*pi",
        s,
        TOL_TOTAL_VOLUME,
    ));
    results
}

const ALL_CASES: [DistanceCase; 9] = [
    DistanceCase::ProportionalLightlike,
    DistanceCase::IndependentLightlike,
    DistanceCase::LightlikeOrthogonal,
    DistanceCase::LightlikeSkew,
    DistanceCase::TimelikeTimelike,
    DistanceCase::TimelikeSpacelike,
    DistanceCase::SpacelikeSecant,
    DistanceCase::SpacelikeUltraparallel,
    DistanceCase::SpacelikeTangent,
];

fn identity_residual(x: &MinkowskiVector, y: &MinkowskiVector) -> f64 {
    let d = match extended_distance(x, y) {
        Ok(d) => d,
        Err(_) => return f64::INFINITY,
    };
    match d.finite() {
        Some(v) => {
            let q = Complex64::new(inner_product(x, y).unwrap(), 0.0);
            let rhs = lorentz_norm(x) * lorentz_norm(y) * v.cosh();
            (q - rhs).norm() / (1.0 + q.norm())
        }
        None => 0.0,
    }
}

/// The norm-product identity over stratified random pairs, plus the
/// canonical two- and three-coordinate configurations at exact values.
pub fn distance_identity_checks(seed: u64, config: &SuiteConfig) -> Vec<CheckResult> {
    let name = CRITERIA[2];
    let mut results = Vec::new();
    let mut r = rng(seed ^ 0xd157);
    let per_case = (config.distance_pairs / ALL_CASES.len()).max(1);
    for case in ALL_CASES {
        let mut worst = 0.0f64;
        let mut sampled = true;
        for _ in 0..per_case {
            match pair_in_case(&mut r, case) {
                Ok((x, y)) => worst = worst.max(identity_residual(&x, &y)),
                Err(_) => {
                    sampled = false;
                    break;
                }
            }
        }
        results.push(CheckResult::bounded(
            name,
            format!("{case} x{per_case}"),
            if sampled { worst } else { f64::INFINITY },
            TOL_DISTANCE_IDENTITY,
        ));
    }

    // Canonical configurations with exact closed-form distances.
    let mut canonical_worst = 0.0f64;
    for a in [0.3f64, 1.0, 2.2] {
        let b = a * 0.6 + 0.2;
        let cases: Vec<(MinkowskiVector, MinkowskiVector, ComplexMeasure)> = vec![
            (
                vec2(1.0, 0.0),
                vec2(a.cosh(), a.sinh()),
                Complex64::new(a, 0.0),
            ),
            (
                vec2(1.0, 0.0),
                vec2(-a.cosh(), a.sinh()),
                Complex64::new(-a, PI),
            ),
            (
                vec2(1.0, 0.0),
                vec2(a.sinh(), a.cosh()),
                Complex64::new(a, FRAC_PI_2),
            ),
            (
                vec2(1.0, 0.0),
                vec2(-a.sinh(), a.cosh()),
                Complex64::new(-a, FRAC_PI_2),
            ),
            (
                vec2(0.0, 1.0),
                vec2(a.sinh(), a.cosh()),
                Complex64::new(-a, 0.0),
            ),
            (
                vec2(0.0, 1.0),
                vec2(a.sinh(), -a.cosh()),
                Complex64::new(a, PI),
            ),
            (
                crate::lorentz::vec3(0.0, 1.0, 0.0),
                crate::lorentz::vec3(0.0, a.min(3.0).cos(), a.min(3.0).sin()),
                Complex64::new(0.0, a.min(3.0)),
            ),
            (
                crate::lorentz::vec3(1.0, 1.0, 0.0),
                crate::lorentz::vec3(a, a, 1.0),
                Complex64::new(0.0, FRAC_PI_2),
            ),
            (
                crate::lorentz::vec3(1.0, 1.0, 0.0),
                crate::lorentz::vec3(-1.0, -1.0, 0.0),
                Complex64::new(0.0, PI),
            ),
            (
                crate::lorentz::vec3(a, a, 1.0),
                crate::lorentz::vec3(b, b, 1.0),
                Complex64::new(0.0, 0.0),
            ),
            (
                crate::lorentz::vec3(a, a, 1.0),
                crate::lorentz::vec3(b, b, -1.0),
                Complex64::new(0.0, PI),
            ),
        ];
        for (x, y, expected) in cases {
            match extended_distance(&x, &y) {
                Ok(d) => match d.finite() {
                    Some(v) => canonical_worst = canonical_worst.max((v - expected).norm()),
                    None => canonical_worst = f64::INFINITY,
                },
                Err(_) => canonical_worst = f64::INFINITY,
            }
        }
    }
    results.push(CheckResult::bounded(
        name,
        "canonical-configurations",
        canonical_worst,
        TOL_CANONICAL,
    ));
    results
}

/// Cosine, dual cosine and sine law batteries over the five causal strata,
/// plus the right-triangle corollaries.
pub fn trig_law_checks(seed: u64, config: &SuiteConfig) -> Vec<CheckResult> {
    let name = CRITERIA[3];
    let mut results = Vec::new();
    let mut r = rng(seed ^ 0x7419);
    for stratum in TriangleStratum::ALL {
        let mut worst_cos = 0.0f64;
        let mut worst_sine = 0.0f64;
        let mut ok = true;
        for _ in 0..config.triangles_per_stratum {
            match triangle_in_stratum(&mut r, stratum) {
                Ok(t) => {
                    worst_cos = worst_cos.max(verify_cosine_laws(&t).max_residual());
                    worst_sine = worst_sine.max(verify_sine_law(&t).max_residual());
                }
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        let n = config.triangles_per_stratum;
        results.push(CheckResult::bounded(
            name,
            format!("cosine-laws {} x{n}", stratum.label()),
            if ok { worst_cos } else { f64::INFINITY },
            TOL_TRIG_LAWS,
        ));
        results.push(CheckResult::bounded(
            name,
            format!("sine-law {} x{n}", stratum.label()),
            if ok { worst_sine } else { f64::INFINITY },
            TOL_TRIG_LAWS,
        ));
    }

    // Right-triangle corollaries: cosh c = cosh a cosh b and
    // sinh a = sin A sinh c.
    let mut worst_pyth = 0.0f64;
    let mut worst_sine = 0.0f64;
    for _ in 0..config.right_triangles {
        let a = r.gen_range(0.1..2.0);
        let b = r.gen_range(0.1..2.0);
        let [v1, v2, v3] = right_triangle(a, b);
        let t = match ExtTriangle::measure(v1, v2, v3) {
            Ok(t) => t,
            Err(_) => {
                worst_pyth = f64::INFINITY;
                break;
            }
        };
        let s = t.side_values();
        let ang = t.angles();
        worst_pyth = worst_pyth.max((s[2].cosh() - s[0].cosh() * s[1].cosh()).norm());
        worst_sine = worst_sine.max((s[0].sinh() - ang[0].sin() * s[2].sinh()).norm());
    }
    results.push(CheckResult::bounded(
        name,
        format!("right-triangle cosh-c x{}", config.right_triangles),
        worst_pyth,
        TOL_RIGHT_TRIANGLE,
    ));
    results.push(CheckResult::bounded(
        name,
        format!("right-triangle sine x{}", config.right_triangles),
        worst_sine,
        TOL_RIGHT_TRIANGLE,
    ));
    results
}

fn msgn_f(args: &[f64]) -> f64 {
    msgn(args).unwrap().as_f64()
}

fn sign_patterns(len: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for bits in 0u32..(1 << len) {
        out.push(
            (0..len)
                .map(|k| {
                    let mag = 0.3 + 0.7 * ((k as f64 + 1.3) * (bits as f64 + 1.7)).fract().abs();
                    if bits >> k & 1 == 1 {
                        -mag
                    } else {
                        mag
                    }
                })
                .collect(),
        );
    }
    out
}

/// The multi-sign calculus: its five closure properties exhaustively over
/// sign patterns of up to eight arguments, the four msgn lemmas behind the
/// law proofs, and the per-side sign rule on sampled triangles.
pub fn sign_machinery_checks(seed: u64, config: &SuiteConfig) -> Vec<CheckResult> {
    let name = CRITERIA[4];
    let mut results = Vec::new();

    // (a) singletons.
    let mut ok = true;
    for args in sign_patterns(1) {
        ok &= msgn_f(&args) == 1.0;
    }
    results.push(CheckResult::verdict(name, "msgn(a) = 1", ok));

    // (b) duplicated single argument and squared lists.
    let mut ok = true;
    for len in 1..=8usize {
        for args in sign_patterns(len) {
            if len == 1 {
                let doubled = [args[0], args[0]];
                ok &= msgn_f(&doubled) == sgn(Complex64::new(args[0], 0.0)).unwrap().as_f64();
            }
            ok &= msgn_f(&args) * msgn_f(&args) == 1.0;
        }
    }
    results.push(CheckResult::verdict(name, "msgn(a,a) = sgn(a); msgn^2 = 1", ok));

    // (c) concatenation rule over every split of up to 8 arguments.
    let mut ok = true;
    for len in 2..=8usize {
        for args in sign_patterns(len) {
            for split in 1..len {
                let (a, b) = args.split_at(split);
                let prod_a: f64 = a.iter().product();
                let prod_b: f64 = b.iter().product();
                let lhs = msgn_f(a) * msgn_f(b);
                let rhs = msgn_f(&args) * msgn_f(&[prod_a, prod_b]);
                ok &= lhs == rhs;
            }
        }
    }
    results.push(CheckResult::verdict(name, "msgn concatenation rule", ok));

    // (d) closed form against the defining root quotient.
    let mut ok = true;
    for len in 1..=8usize {
        for args in sign_patterns(len) {
            let closed = msgn_f(&args);
            let roots = msgn_by_roots(&args).unwrap();
            ok &= (roots - Complex64::new(closed, 0.0)).norm() < 1e-9;
        }
    }
    results.push(CheckResult::verdict(name, "msgn root-quotient agreement", ok));

    // (e) fully duplicated lists.
    let mut ok = true;
    for len in 1..=4usize {
        for args in sign_patterns(len) {
            let doubled: Vec<f64> = args.iter().flat_map(|&a| [a, a]).collect();
            let product: f64 = args.iter().product();
            ok &= msgn_f(&doubled) == sgn(Complex64::new(product, 0.0)).unwrap().as_f64();
        }
    }
    results.push(CheckResult::verdict(name, "msgn(a1,a1,...,ak,ak) rule", ok));

    // sqrt convention and the sgn caution example.
    let mut ok = (sqrt_conv(4.0) - Complex64::new(2.0, 0.0)).norm() == 0.0
        && (sqrt_conv(-4.0) - Complex64::new(0.0, 2.0)).norm() == 0.0;
    let i = Complex64::i();
    ok &= sgn(i).unwrap() == SignValue::Plus
        && sgn(-i).unwrap() == SignValue::Minus
        && sgn(i * i).unwrap() == SignValue::Minus;
    results.push(CheckResult::verdict(name, "sqrt/sgn conventions", ok));

    // The four-msgn cancellation, the dual product rule and the sine
    // exchange identity over all admissible patterns.
    results.push(CheckResult::verdict(
        name,
        "cosine-law sign cancellation",
        sign_cancellation_holds(),
    ));
    results.push(CheckResult::verdict(
        name,
        "dual product sign rule",
        dual_product_sign_holds(),
    ));
    results.push(CheckResult::verdict(
        name,
        "sine exchange sign identity",
        sine_exchange_sign_holds(),
    ));

    // Per-side and per-angle sign rules on sampled triangles.
    let mut r = rng(seed ^ 0x5167);
    let mut ok = true;
    let per_stratum = (config.triangles_per_stratum / 5).max(20);
    for stratum in TriangleStratum::ALL {
        for _ in 0..per_stratum {
            match triangle_in_stratum(&mut r, stratum) {
                Ok(t) => ok &= verify_sign_identities(&t).max_residual() == 0.0,
                Err(_) => ok = false,
            }
        }
    }
    results.push(CheckResult::verdict(
        name,
        format!("side/angle sign rules on {} triangles", 5 * per_stratum),
        ok,
    ));
    results
}

/// Polygon identity batteries for every family.
pub fn polygon_checks(seed: u64, config: &SuiteConfig) -> Vec<CheckResult> {
    let name = CRITERIA[5];
    let mut results = Vec::new();
    for family in PolygonFamily::ALL {
        match verify_family(family, config.polygon_samples, seed ^ 0x9017) {
            Ok(report) => {
                results.push(CheckResult::bounded(
                    name,
                    format!("{family} identities x{}", report.samples),
                    report.max_identity_residual(),
                    TOL_POLYGON,
                ));
                results.push(CheckResult::bounded(
                    name,
                    format!("{family} shift-signature recovery"),
                    report.max_offset_residual,
                    TOL_OFFSETS,
                ));
                if !report.inequality_margins.is_empty() {
                    results.push(CheckResult::verdict(
                        name,
                        format!("{family} strict inequalities"),
                        report.min_inequality_margin() > 0.0,
                    ));
                }
            }
            Err(e) => {
                results.push(CheckResult::bounded(
                    name,
                    format!("{family} ({e})"),
                    f64::INFINITY,
                    TOL_POLYGON,
                ));
            }
        }
    }
    results
}

/// Defect and side-product areas agree on classical hyperbolic triangles and
/// their spherical analogs; the all-sides-to-infinity limit approaches pi.
pub fn area_checks(seed: u64, config: &SuiteConfig) -> Vec<CheckResult> {
    let name = CRITERIA[6];
    let mut results = Vec::new();
    let mut r = rng(seed ^ 0xa12a);

    let mut worst = 0.0f64;
    for _ in 0..config.area_triangles {
        match triangle_in_stratum(&mut r, TriangleStratum::Timelike3) {
            Ok(t) => match area_pair(&t, Model::HyperbolicSphere) {
                Ok(pair) => worst = worst.max((pair.s_defect - pair.s_sides).norm()),
                Err(_) => worst = f64::INFINITY,
            },
            Err(_) => worst = f64::INFINITY,
        }
    }
    results.push(CheckResult::bounded(
        name,
        format!("hyperbolic defect vs sides x{}", config.area_triangles),
        worst,
        TOL_AREA_EQUALITY,
    ));

    // Spherical analog on random round-sphere side triples.
    let mut worst = 0.0f64;
    let mut produced = 0usize;
    while produced < config.area_triangles {
        let sides = random_spherical_sides(&mut r);
        let Some([a, b, c]) = sides else { continue };
        produced += 1;
        let defect = area_defect_from_sides(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Model::SphericalSphere,
        );
        let product = area_sides(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Model::SphericalSphere,
        );
        match (defect, product) {
            (Ok(d), Ok(p)) => worst = worst.max((d - p).norm()),
            _ => worst = f64::INFINITY,
        }
    }
    results.push(CheckResult::bounded(
        name,
        format!("spherical defect vs sides x{}", config.area_triangles),
        worst,
        TOL_AREA_EQUALITY,
    ));

    // Ideal limit: at sides a = b = c = 30 the side-product area reaches pi.
    let s = Complex64::new(30.0, 0.0);
    let limit = area_sides(s, s, s, Model::HyperbolicSphere)
        .map(|v| (v - Complex64::new(PI, 0.0)).norm())
        .unwrap_or(f64::INFINITY);
    results.push(CheckResult::bounded(
        name,
        "side-product limit at sides=30",
        limit,
        TOL_AREA_LIMIT,
    ));
    results
}

fn random_spherical_sides<R: Rng + ?Sized>(r: &mut R) -> Option<[f64; 3]> {
    // Three random unit vectors; sides are their pairwise angles. Reject
    // slivers and perimeter near a full great circle.
    let mut pts = [[0.0f64; 3]; 3];
    for p in &mut pts {
        let z: f64 = r.gen_range(-1.0..1.0);
        let phi: f64 = r.gen_range(0.0..std::f64::consts::TAU);
        let s = (1.0 - z * z).sqrt();
        *p = [s * phi.cos(), s * phi.sin(), z];
    }
    let angle = |a: [f64; 3], b: [f64; 3]| {
        let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        dot.clamp(-1.0, 1.0).acos()
    };
    let sides = [
        angle(pts[1], pts[2]),
        angle(pts[0], pts[2]),
        angle(pts[0], pts[1]),
    ];
    let p = sides.iter().sum::<f64>() / 2.0;
    let min = sides.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = sides.iter().cloned().fold(0.0f64, f64::max);
    if min < 0.2 || max > 2.6 || p > 2.9 || (p - FRAC_PI_2 * 2.0).abs() < 0.2 {
        return None;
    }
    Some(sides)
}

/// Hyperbolic law evaluations against the spherical forms at `-i` times the
/// lengths, over every causal stratum.
pub fn correspondence_checks(seed: u64, config: &SuiteConfig) -> Vec<CheckResult> {
    let name = CRITERIA[7];
    let mut results = Vec::new();
    let mut r = rng(seed ^ 0xc097);
    for law in LawKind::ALL {
        let mut worst = 0.0f64;
        for stratum in TriangleStratum::ALL {
            for _ in 0..config.correspondence_per_stratum {
                match triangle_in_stratum(&mut r, stratum) {
                    Ok(t) => worst = worst.max(correspondence_check(law, &t)),
                    Err(_) => worst = f64::INFINITY,
                }
            }
        }
        results.push(CheckResult::bounded(
            name,
            format!(
                "{law:?} under length -> -i*length x{}",
                5 * config.correspondence_per_stratum
            ),
            worst,
            TOL_CORRESPONDENCE,
        ));
    }
    results
}

/// Distances (at the cosh level) and law residuals are unchanged by random
/// isometries of rapidity up to 5.
pub fn invariance_checks(seed: u64, config: &SuiteConfig) -> Vec<CheckResult> {
    let name = CRITERIA[8];
    let mut results = Vec::new();
    let mut r = rng(seed ^ 0x1150);

    let mut base_pairs = Vec::new();
    for case in ALL_CASES {
        if matches!(
            case,
            DistanceCase::IndependentLightlike | DistanceCase::LightlikeSkew
        ) {
            continue;
        }
        for _ in 0..3 {
            if let Ok(pair) = pair_in_case(&mut r, case) {
                base_pairs.push(pair);
            }
        }
    }
    let mut base_triangles = Vec::new();
    for stratum in TriangleStratum::ALL {
        if let Ok(t) = triangle_in_stratum(&mut r, stratum) {
            base_triangles.push(t);
        }
    }

    let mut worst_dist = 0.0f64;
    let mut worst_laws = 0.0f64;
    for _ in 0..config.isometries {
        let g = random_isometry(&mut r, 5.0);
        for (x, y) in &base_pairs {
            let before = extended_distance(x, y).ok().and_then(|d| d.finite());
            let after = extended_distance(&g.apply(x), &g.apply(y))
                .ok()
                .and_then(|d| d.finite());
            match (before, after) {
                (Some(b), Some(a)) => {
                    worst_dist = worst_dist.max((b.cosh() - a.cosh()).norm());
                }
                (None, None) => {}
                _ => worst_dist = f64::INFINITY,
            }
        }
        for t in &base_triangles {
            let [v1, v2, v3] = t.vertices().clone();
            let image = ExtTriangle::measure(g.apply(&v1), g.apply(&v2), g.apply(&v3));
            match image {
                Ok(gt) => {
                    let d_cos = (verify_cosine_laws(&gt).max_residual()
                        - verify_cosine_laws(t).max_residual())
                    .abs();
                    let d_sine = (verify_sine_law(&gt).max_residual()
                        - verify_sine_law(t).max_residual())
                    .abs();
                    worst_laws = worst_laws.max(d_cos.max(d_sine));
                }
                Err(_) => worst_laws = f64::INFINITY,
            }
        }
    }
    results.push(CheckResult::bounded(
        name,
        format!(
            "cosh-distance under {} isometries x{} pairs",
            config.isometries,
            base_pairs.len()
        ),
        worst_dist,
        TOL_INVARIANCE,
    ));
    results.push(CheckResult::bounded(
        name,
        format!(
            "law residuals under {} isometries x{} triangles",
            config.isometries,
            base_triangles.len()
        ),
        worst_laws,
        TOL_INVARIANCE,
    ));

    // Defect areas transported by the isometry stay equal as well.
    let mut worst_area = 0.0f64;
    for t in &base_triangles {
        let g = random_isometry(&mut r, 5.0);
        let [v1, v2, v3] = t.vertices().clone();
        if let Ok(gt) = ExtTriangle::measure(g.apply(&v1), g.apply(&v2), g.apply(&v3)) {
            let before = area_defect(t, Model::HyperbolicSphere);
            let after = area_defect(&gt, Model::HyperbolicSphere);
            worst_area = worst_area.max((before - after).norm());
        } else {
            worst_area = f64::INFINITY;
        }
    }
    results.push(CheckResult::bounded(
        name,
        "defect area under isometries",
        worst_area,
        TOL_INVARIANCE,
    ));
    results
}

/// Run every battery with the default (acceptance-gate) sample counts.
pub fn run_all(seed: u64) -> SuiteReport {
    run_with(seed, &SuiteConfig::default())
}

/// Run every battery with explicit sample counts.
pub fn run_with(seed: u64, config: &SuiteConfig) -> SuiteReport {
    let mut results = Vec::new();
    results.extend(length_oracle_checks(config));
    results.extend(total_volume_checks());
    results.extend(distance_identity_checks(seed, config));
    results.extend(trig_law_checks(seed, config));
    results.extend(sign_machinery_checks(seed, config));
    results.extend(polygon_checks(seed, config));
    results.extend(area_checks(seed, config));
    results.extend(correspondence_checks(seed, config));
    results.extend(invariance_checks(seed, config));
    SuiteReport { seed, results }
}
