//! Property-based invariants spanning the core modules.

use exthyp::branch::{arccosh_strip, msgn, msgn_by_roots, sqrt_conv};
use exthyp::contour::{integrate_contour, ContourSpec};
use exthyp::lorentz::{
    inner_product, lorentz_norm, model_norm, tangent_toward, vec3, LorentzIsometry,
    MinkowskiVector,
};
use exthyp::metric::{angle_between, extended_distance, lens_lune_angles};
use exthyp::{Model};
use num_complex::Complex64;
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -3.0..3.0f64
}

fn vector3() -> impl Strategy<Value = MinkowskiVector> {
    (coord(), coord(), coord())
        .prop_filter("nonzero", |(a, b, c)| a.abs() + b.abs() + c.abs() > 0.3)
        .prop_map(|(a, b, c)| vec3(a, b, c))
}

/// Vectors staying clear of the light cone so causal classes are stable.
fn clearly_causal() -> impl Strategy<Value = MinkowskiVector> {
    vector3().prop_filter("away from the cone", |v| {
        inner_product(v, v).unwrap().abs() > 0.05 * v.euclidean_norm_sq()
    })
}

proptest! {
    #[test]
    fn inner_product_is_symmetric_and_bilinear(
        x in vector3(), y in vector3(), z in vector3(),
        alpha in -5.0..5.0f64, beta in -5.0..5.0f64,
    ) {
        let xy = inner_product(&x, &y).unwrap();
        let yx = inner_product(&y, &x).unwrap();
        prop_assert!((xy - yx).abs() < 1e-12 * (1.0 + xy.abs()));

        let combo = &x.scaled(alpha) + &y.scaled(beta);
        let lhs = inner_product(&combo, &z).unwrap();
        let rhs = alpha * inner_product(&x, &z).unwrap() + beta * inner_product(&y, &z).unwrap();
        let scale = 1.0 + lhs.abs().max(rhs.abs());
        prop_assert!((lhs - rhs).abs() < 1e-11 * scale);
    }

    #[test]
    fn norm_squares_to_inner_product(x in vector3()) {
        let n = lorentz_norm(&x);
        let q = inner_product(&x, &x).unwrap();
        prop_assert!((n * n - Complex64::new(q, 0.0)).norm() < 1e-12 * (1.0 + q.abs()));
    }

    #[test]
    fn sqrt_convention_squares_back(a in -100.0..100.0f64) {
        let r = sqrt_conv(a);
        prop_assert!((r * r - Complex64::new(a, 0.0)).norm() < 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn msgn_routes_agree(args in prop::collection::vec(-10.0..10.0f64, 1..8)) {
        prop_assume!(args.iter().all(|a| a.abs() > 1e-3));
        let closed = msgn(&args).unwrap().as_f64();
        let roots = msgn_by_roots(&args).unwrap();
        prop_assert!((roots - Complex64::new(closed, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn arccosh_round_trips(re in -10.0..10.0f64, im in -10.0..10.0f64) {
        let q = Complex64::new(re, im);
        let z = arccosh_strip(q);
        prop_assert!((z.cosh() - q).norm() < 1e-10 * (1.0 + q.norm()));
    }

    #[test]
    fn isometries_preserve_the_form(
        x in vector3(), y in vector3(),
        rot1 in 0.0..6.28f64, rot2 in 0.0..6.28f64, rapidity in -5.0..5.0f64,
    ) {
        let g = LorentzIsometry::rotation(2, 1, 2, rot1)
            .compose(&LorentzIsometry::boost(2, 1, rapidity))
            .compose(&LorentzIsometry::rotation(2, 1, 2, rot2));
        let before = inner_product(&x, &y).unwrap();
        let after = inner_product(&g.apply(&x), &g.apply(&y)).unwrap();
        let scale = 1.0 + before.abs() + x.euclidean_norm_sq() + y.euclidean_norm_sq();
        prop_assert!((before - after).abs() < 1e-9 * scale * rapidity.cosh());
    }

    #[test]
    fn model_norms_differ_by_i(p in clearly_causal(), q in vector3()) {
        prop_assume!(!p.class().unwrap().is_lightlike());
        let Ok(tangent) = tangent_toward(&p, &q) else { return Ok(()); };
        let h = model_norm(&tangent, &p, Model::HyperbolicSphere).unwrap();
        let s = model_norm(&tangent, &p, Model::SphericalSphere).unwrap();
        prop_assert!((Complex64::i() * s - h).norm() < 1e-12 * (1.0 + h.norm()));
    }

    #[test]
    fn tangents_are_orthogonal_to_the_base(p in clearly_causal(), q in vector3()) {
        let Ok(tangent) = tangent_toward(&p, &q) else { return Ok(()); };
        let ip = inner_product(&tangent, &p).unwrap();
        let scale = tangent.euclidean_norm() * p.euclidean_norm();
        prop_assert!(ip.abs() < 1e-10 * scale.max(1e-9));
    }

    #[test]
    fn distance_is_scale_invariant(
        x in clearly_causal(), y in clearly_causal(),
        lambda in 0.1..10.0f64, mu in 0.1..10.0f64,
    ) {
        let d1 = extended_distance(&x, &y).unwrap();
        let d2 = extended_distance(&x.scaled(lambda), &y.scaled(mu)).unwrap();
        prop_assert_eq!(d1.case, d2.case);
        match (d1.finite(), d2.finite()) {
            (Some(a), Some(b)) => prop_assert!((a - b).norm() < 1e-10),
            (None, None) => {}
            _ => prop_assert!(false, "finiteness changed under scaling"),
        }
    }

    #[test]
    fn distance_is_symmetric_and_antipodal(x in clearly_causal(), y in clearly_causal()) {
        let d_xy = extended_distance(&x, &y).unwrap();
        let d_yx = extended_distance(&y, &x).unwrap();
        if let (Some(a), Some(b)) = (d_xy.finite(), d_yx.finite()) {
            prop_assert!((a.cosh() - b.cosh()).norm() < 1e-10 * (1.0 + a.cosh().norm()));
        }
        let d_neg = extended_distance(&x.scaled(-1.0), &y).unwrap();
        if let (Some(a), Some(b)) = (d_xy.finite(), d_neg.finite()) {
            prop_assert!((a.cosh() + b.cosh()).norm() < 1e-10 * (1.0 + a.cosh().norm()));
        }
    }

    #[test]
    fn norm_product_identity_holds(x in clearly_causal(), y in clearly_causal()) {
        let d = extended_distance(&x, &y).unwrap();
        if let Some(v) = d.finite() {
            let lhs = Complex64::new(inner_product(&x, &y).unwrap(), 0.0);
            let rhs = lorentz_norm(&x) * lorentz_norm(&y) * v.cosh();
            prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));
        }
    }

    #[test]
    fn angle_identities_hold(x in clearly_causal(), y in clearly_causal()) {
        // The four inner-product readings of one configuration.
        let Ok(angle) = angle_between(&x, &y) else { return Ok(()); };
        let q = Complex64::new(inner_product(&x, &y).unwrap(), 0.0);
        let norms = lorentz_norm(&x) * lorentz_norm(&y);
        let scale = 1.0 + q.norm();
        prop_assert!((q - norms * angle.cos()).norm() < 1e-9 * scale);

        // Spherical distance is the angle: cos d_S = cosh d_H.
        let ds = exthyp::metric::spherical_distance(&x, &y).unwrap().finite().unwrap();
        prop_assert!((q - norms * ds.cos()).norm() < 1e-9 * scale);

        // Lens angle from any point of the common orthogonal line.
        let Ok(p) = exthyp::lorentz::lorentz_cross(&x, &y) else { return Ok(()); };
        if p.class().map(|c| c.is_lightlike()).unwrap_or(true) {
            return Ok(());
        }
        if inner_product(&p, &p).unwrap().abs() < 0.05 * p.euclidean_norm_sq() {
            return Ok(());
        }
        let (lune, lens) = lens_lune_angles(&x, &y, &p).unwrap();
        prop_assert!((q + norms * lens.cos()).norm() < 1e-9 * scale);
        // The tangent-space reading via model norms at p.
        let hx = model_norm(&x, &p, Model::HyperbolicSphere).unwrap();
        let hy = model_norm(&y, &p, Model::HyperbolicSphere).unwrap();
        let flip = match p.class().unwrap() {
            exthyp::CausalClass::Spacelike => -1.0,
            _ => 1.0,
        };
        prop_assert!((flip * q - hx * hy * lune.cos()).norm() < 1e-9 * scale);
    }

    #[test]
    fn contour_is_stable_under_detour_radius(b in 1.2..5.0f64, shrink in 1.5..4.0f64) {
        let f = |z: Complex64| (Complex64::new(1.0, 0.0) - z * z).inv();
        let base = ContourSpec::new(0.0, b).unwrap();
        let delta = base.delta;
        let a = integrate_contour(f, &base).unwrap();
        let fine = ContourSpec::new(0.0, b).unwrap().with_delta(delta / shrink).unwrap();
        let b2 = integrate_contour(f, &fine).unwrap();
        prop_assert!((a - b2).norm() < 1e-8);
    }
}

#[test]
fn dimension_reduction_spot_check() {
    // A plane triangle embedded in one more spatial dimension measures the
    // same sides and vertex angles after an ambient rotation.
    let lift = |v: &MinkowskiVector| {
        let c = v.coords();
        MinkowskiVector::new(vec![c[0], c[1], c[2], 0.0]).unwrap()
    };
    let v1 = vec3(1.3f64.cosh(), 1.3f64.sinh(), 0.0);
    let v2 = vec3(0.9f64.cosh(), 0.0, 0.9f64.sinh());
    let v3 = vec3(0.4f64.sinh(), 0.0, 0.4f64.cosh());
    let g = LorentzIsometry::rotation(3, 2, 3, 0.83)
        .compose(&LorentzIsometry::boost(3, 3, 0.65));
    let images: Vec<MinkowskiVector> =
        [&v1, &v2, &v3].iter().map(|v| g.apply(&lift(v))).collect();

    for (a, b) in [(0usize, 1usize), (1, 2), (0, 2)] {
        let original = [&v1, &v2, &v3];
        let d2 = extended_distance(original[a], original[b]).unwrap().finite().unwrap();
        let d3 = extended_distance(&images[a], &images[b]).unwrap().finite().unwrap();
        assert!(
            (d2 - d3).norm() < 1e-9,
            "embedded side changed: {d2} vs {d3}"
        );
    }
    let a2 = exthyp::metric::vertex_angle(&v1, &v2, &v3).unwrap();
    let a3 = exthyp::metric::vertex_angle(&images[0], &images[1], &images[2]).unwrap();
    assert!((a2 - a3).norm() < 1e-9, "embedded angle changed: {a2} vs {a3}");
}
