//! The extended distance, angles, duals and lune/lens angles.
//!
//! The distance between two rays of `R^{n,1}` is the complex number `d` with
//! `<x, y> = ||x|| ||y|| cosh d`, pinned to a specific branch per causal
//! configuration. The full signed case table lives in
//! [`extended_distance`]; every other measurement in the crate reduces to it.

use crate::branch::{arccosh_real, sgn, SignValue};
use crate::lorentz::{
    default_class_tolerance, inner_product, lorentz_norm, tangent_toward, CausalClass,
    MinkowskiVector,
};
use crate::{ComplexMeasure, Error, Result};
use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// A finite complex distance or the infinite marker.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DistanceValue {
    Finite(ComplexMeasure),
    Infinite,
}

impl Serialize for DistanceValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DistanceValue::Finite(v) => v.serialize(serializer),
            DistanceValue::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// Which branch of the distance case table fired; kept for diagnostics and
/// stratified reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceCase {
    /// Both lightlike on the same ray (distance 0) or opposite rays (pi i).
    ProportionalLightlike,
    /// Two independent lightlike directions: infinite.
    IndependentLightlike,
    /// One lightlike, orthogonal to the other vector: pi i / 2.
    LightlikeOrthogonal,
    /// One lightlike, not orthogonal: infinite.
    LightlikeSkew,
    /// Two timelike vectors: real distance, or pi i minus it across sheets.
    TimelikeTimelike,
    /// Timelike against spacelike: pi i / 2 plus a real offset.
    TimelikeSpacelike,
    /// Two spacelike vectors whose span is positive definite: the dual lines
    /// cross inside the disk, distance purely imaginary.
    SpacelikeSecant,
    /// Two spacelike vectors with indefinite span: dual lines ultraparallel,
    /// distance real-negative or pi i plus real.
    SpacelikeUltraparallel,
    /// Spacelike pair on a line tangent to the light cone: 0 or pi i.
    SpacelikeTangent,
}

impl std::fmt::Display for DistanceCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DistanceCase::ProportionalLightlike => "proportional_lightlike",
            DistanceCase::IndependentLightlike => "independent_lightlike",
            DistanceCase::LightlikeOrthogonal => "lightlike_orthogonal",
            DistanceCase::LightlikeSkew => "lightlike_skew",
            DistanceCase::TimelikeTimelike => "timelike_timelike",
            DistanceCase::TimelikeSpacelike => "timelike_spacelike",
            DistanceCase::SpacelikeSecant => "spacelike_secant",
            DistanceCase::SpacelikeUltraparallel => "spacelike_ultraparallel",
            DistanceCase::SpacelikeTangent => "spacelike_tangent",
        };
        f.write_str(s)
    }
}

/// An extended distance together with the case-table branch that produced it.
///
/// Finite values always satisfy `Im d in [0, pi]`; the real part may be
/// negative (ultraparallel spacelike pairs with positive inner product).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExtDistance {
    pub value: DistanceValue,
    pub case: DistanceCase,
}

impl ExtDistance {
    pub fn finite(&self) -> Option<ComplexMeasure> {
        match self.value {
            DistanceValue::Finite(v) => Some(v),
            DistanceValue::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.value, DistanceValue::Infinite)
    }
}

/// Relative tolerance for the tangent-line detection `D = 0` and the
/// lightlike-orthogonality test.
const REL_TOL: f64 = 1e-9;

fn finite(case: DistanceCase, v: ComplexMeasure) -> ExtDistance {
    ExtDistance {
        value: DistanceValue::Finite(v),
        case,
    }
}

fn infinite(case: DistanceCase) -> ExtDistance {
    ExtDistance {
        value: DistanceValue::Infinite,
        case,
    }
}

/// Test proportionality `y = lambda x` and return `lambda`'s sign if so.
fn proportional_sign(x: &MinkowskiVector, y: &MinkowskiVector) -> Option<SignValue> {
    let xs = x.coords();
    let ys = y.coords();
    let scale = x.euclidean_norm() * y.euclidean_norm();
    let mut worst: f64 = 0.0;
    for i in 0..xs.len() {
        for j in (i + 1)..xs.len() {
            worst = worst.max((xs[i] * ys[j] - xs[j] * ys[i]).abs());
        }
    }
    if worst > REL_TOL * scale {
        return None;
    }
    let k = (0..xs.len())
        .max_by(|&a, &b| xs[a].abs().total_cmp(&xs[b].abs()))
        .unwrap();
    Some(SignValue::from_positive(ys[k] / xs[k] > 0.0))
}

/// The extended distance `d_H(x, y)` between the rays of two nonzero vectors.
///
/// With `Q = <x,y>`, `Nx = <x,x>`, `Ny = <y,y>` and `D = Q^2 - Nx*Ny`, the
/// branch is decided by the causal classes:
///
/// * both lightlike: 0 on the same ray, `pi i` on opposite rays, infinite
///   when independent;
/// * exactly one lightlike: `pi i / 2` when `Q = 0`, infinite otherwise;
/// * both timelike, `r = arccosh(|Q| / (|x| |y|))`: `r` for `Q < 0`,
///   `pi i - r` for `Q > 0` (opposite sheets);
/// * timelike against spacelike: `pi i / 2 + arcsinh(-Q / (|x| |y|))`,
///   independent of the sheet because flipping the timelike vector negates
///   both `Q` and the offset;
/// * both spacelike, `D < 0`: `i arccos(Q / (|x| |y|))`;
/// * both spacelike, `D > 0`, `r` as above: `-r` for `Q > 0`, `pi i + r` for
///   `Q < 0`;
/// * both spacelike, `D = 0` (the joining line is tangent to the cone): `0`
///   for `Q > 0`, `pi i` for `Q < 0`.
///
/// Every finite value satisfies `<x,y> = ||x|| ||y|| cosh d` on the ambient
/// norm convention, and `Im d in [0, pi]`.
pub fn extended_distance(x: &MinkowskiVector, y: &MinkowskiVector) -> Result<ExtDistance> {
    let q = inner_product(x, y)?;
    if x.is_zero() || y.is_zero() {
        return Err(Error::ZeroVector);
    }
    let cx = x.class()?;
    let cy = y.class()?;
    let nx = x.ip(x);
    let ny = y.ip(y);
    let scale = x.euclidean_norm() * y.euclidean_norm();

    match (cx, cy) {
        (CausalClass::Lightlike, CausalClass::Lightlike) => {
            Ok(match proportional_sign(x, y) {
                Some(SignValue::Plus) => {
                    finite(DistanceCase::ProportionalLightlike, Complex64::new(0.0, 0.0))
                }
                Some(SignValue::Minus) => {
                    finite(DistanceCase::ProportionalLightlike, Complex64::new(0.0, PI))
                }
                None => infinite(DistanceCase::IndependentLightlike),
            })
        }
        (CausalClass::Lightlike, _) | (_, CausalClass::Lightlike) => {
            Ok(if q.abs() <= REL_TOL * scale {
                finite(DistanceCase::LightlikeOrthogonal, Complex64::new(0.0, FRAC_PI_2))
            } else {
                infinite(DistanceCase::LightlikeSkew)
            })
        }
        (CausalClass::Timelike { .. }, CausalClass::Timelike { .. }) => {
            let m = nx.abs().sqrt();
            let n = ny.abs().sqrt();
            let r = arccosh_real(q.abs() / (m * n));
            Ok(finite(
                DistanceCase::TimelikeTimelike,
                if q < 0.0 {
                    Complex64::new(r, 0.0)
                } else {
                    Complex64::new(-r, PI)
                },
            ))
        }
        (CausalClass::Timelike { .. }, CausalClass::Spacelike)
        | (CausalClass::Spacelike, CausalClass::Timelike { .. }) => {
            let m = nx.abs().sqrt();
            let n = ny.abs().sqrt();
            let t = (-q / (m * n)).asinh();
            Ok(finite(
                DistanceCase::TimelikeSpacelike,
                Complex64::new(t, FRAC_PI_2),
            ))
        }
        (CausalClass::Spacelike, CausalClass::Spacelike) => {
            let m = nx.sqrt();
            let n = ny.sqrt();
            let d = q * q - nx * ny;
            let d_scale = (q * q).max((nx * ny).abs());
            if d.abs() <= REL_TOL * d_scale {
                Ok(finite(
                    DistanceCase::SpacelikeTangent,
                    if q > 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(0.0, PI)
                    },
                ))
            } else if d < 0.0 {
                let angle = (q / (m * n)).clamp(-1.0, 1.0).acos();
                Ok(finite(
                    DistanceCase::SpacelikeSecant,
                    Complex64::new(0.0, angle),
                ))
            } else {
                let r = arccosh_real(q.abs() / (m * n));
                Ok(finite(
                    DistanceCase::SpacelikeUltraparallel,
                    if q > 0.0 {
                        Complex64::new(-r, 0.0)
                    } else {
                        Complex64::new(r, PI)
                    },
                ))
            }
        }
    }
}

/// Spherical distance `d_S = -i d_H`; the infinite marker propagates.
pub fn spherical_distance(x: &MinkowskiVector, y: &MinkowskiVector) -> Result<ExtDistance> {
    let d = extended_distance(x, y)?;
    Ok(ExtDistance {
        value: match d.value {
            DistanceValue::Finite(v) => DistanceValue::Finite(-Complex64::i() * v),
            DistanceValue::Infinite => DistanceValue::Infinite,
        },
        case: d.case,
    })
}

/// Angle between two rays, `-i` times their extended distance. Satisfies
/// `<v, w> = ||v|| ||w|| cos angle`.
pub fn angle_between(v: &MinkowskiVector, w: &MinkowskiVector) -> Result<ComplexMeasure> {
    match extended_distance(v, w)?.value {
        DistanceValue::Finite(d) => Ok(-Complex64::i() * d),
        DistanceValue::Infinite => Err(Error::InfiniteDistance),
    }
}

/// Angle at `p` between the geodesics toward `q1` and `q2`. For timelike `p`
/// this is the classical hyperbolic interior angle in `[0, pi]`.
pub fn vertex_angle(
    p: &MinkowskiVector,
    q1: &MinkowskiVector,
    q2: &MinkowskiVector,
) -> Result<ComplexMeasure> {
    let u1 = tangent_toward(p, q1)?;
    let u2 = tangent_toward(p, q2)?;
    angle_between(&u1, &u2)
}

/// Maximum `|W^T S V - I|` residual accepted by [`dual_basis`].
pub const DUAL_BASIS_TOL: f64 = 1e-9;

fn to_vector3(v: &MinkowskiVector) -> Result<Vector3<f64>> {
    if v.dim() != 2 {
        return Err(Error::DimensionMismatch(v.dim(), 2));
    }
    let c = v.coords();
    Ok(Vector3::new(c[0], c[1], c[2]))
}

fn from_column(m: &Matrix3<f64>, k: usize) -> MinkowskiVector {
    MinkowskiVector::new(vec![m[(0, k)], m[(1, k)], m[(2, k)]]).expect("finite column")
}

fn signature3() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(-1.0, 1.0, 1.0))
}

/// Dual basis of three independent vectors of `R^{2,1}`: the unique triple
/// with `<v_i, w_i> = 1` and `<v_i, w_j> = 0`, computed as
/// `W = S (V^T)^{-1}`.
pub fn dual_basis(
    v1: &MinkowskiVector,
    v2: &MinkowskiVector,
    v3: &MinkowskiVector,
) -> Result<[MinkowskiVector; 3]> {
    let v = Matrix3::from_columns(&[to_vector3(v1)?, to_vector3(v2)?, to_vector3(v3)?]);
    let s = signature3();
    let vt_inv = v.transpose().try_inverse().ok_or(Error::Singular)?;
    let w = s * vt_inv;
    let residual = w.transpose() * s * v - Matrix3::identity();
    let max = residual.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    if max >= DUAL_BASIS_TOL {
        return Err(Error::Singular);
    }
    Ok([from_column(&w, 0), from_column(&w, 1), from_column(&w, 2)])
}

/// Geometric dual direction of a non-lightlike vector:
/// `sgn(-||w||^2) * w`, so timelike vectors are kept and spacelike ones are
/// negated. Lightlike input has two equally valid directions and is refused.
pub fn geometric_dual(w: &MinkowskiVector) -> Result<MinkowskiVector> {
    let n = w.ip(w);
    if n.abs() <= default_class_tolerance(w) {
        return Err(Error::Lightlike("geometric dual of an ideal hemisphere"));
    }
    let s = sgn(Complex64::new(-n, 0.0))?;
    Ok(w.scaled(s.as_f64()))
}

/// A vector together with its algebraic and geometric dual directions.
#[derive(Clone, Debug, Serialize)]
pub struct DualPair {
    pub primal: MinkowskiVector,
    pub algebraic_dual: MinkowskiVector,
    pub geometric_dual: MinkowskiVector,
}

impl DualPair {
    pub fn new(primal: MinkowskiVector, algebraic_dual: MinkowskiVector) -> Result<Self> {
        let geometric = geometric_dual(&algebraic_dual)?;
        Ok(DualPair {
            primal,
            algebraic_dual,
            geometric_dual: geometric,
        })
    }
}

/// Lune and lens angles of the configuration `(x, y)` seen from a point `p`
/// of `x^perp ∩ y^perp`.
///
/// The lune angle is the vertex angle `angle(x_p, y_p)`; the lens (dihedral)
/// angle is the branch-normalized solution of
/// `cos(lens) = -<x,y> / (||x|| ||y||)`. In the Riemannian situation the two
/// satisfy `lens = pi - lune`; in general the pair lands in the relation set
/// `{ +-(pi - lune), pi + lune }` modulo `2 pi`.
pub fn lens_lune_angles(
    x: &MinkowskiVector,
    y: &MinkowskiVector,
    p: &MinkowskiVector,
) -> Result<(ComplexMeasure, ComplexMeasure)> {
    let xp = inner_product(p, x)?;
    let yp = inner_product(p, y)?;
    let sx = p.euclidean_norm() * x.euclidean_norm();
    let sy = p.euclidean_norm() * y.euclidean_norm();
    if xp.abs() > 1e-8 * sx || yp.abs() > 1e-8 * sy {
        return Err(Error::NotIncident(
            "p must be orthogonal to both x and y".into(),
        ));
    }
    if p.class()? == CausalClass::Lightlike {
        return Err(Error::Lightlike("lens vertex"));
    }
    let lune = angle_between(x, y)?;
    let q = Complex64::new(inner_product(x, y)?, 0.0);
    let norms = lorentz_norm(x) * lorentz_norm(y);
    let lens = -Complex64::i() * crate::branch::arccosh_strip(-q / norms);
    Ok((lune, lens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{vec2, vec3};
    use approx::assert_abs_diff_eq;

    fn assert_finite(d: &ExtDistance, re: f64, im: f64, eps: f64) {
        let v = d.finite().expect("finite distance");
        assert_abs_diff_eq!(v.re, re, epsilon = eps);
        assert_abs_diff_eq!(v.im, im, epsilon = eps);
    }

    #[test]
    fn classical_hyperbolic_distance() {
        let d = extended_distance(&vec2(1.0, 0.0), &vec2(1.0f64.cosh(), 1.0f64.sinh())).unwrap();
        assert_eq!(d.case, DistanceCase::TimelikeTimelike);
        assert_finite(&d, 1.0, 0.0, 1e-12);
    }

    #[test]
    fn dual_point_distance_is_quarter_turn() {
        let d = extended_distance(&vec3(1.0, 0.0, 0.0), &vec3(0.0, 1.0, 0.0)).unwrap();
        assert_eq!(d.case, DistanceCase::TimelikeSpacelike);
        assert_finite(&d, 0.0, FRAC_PI_2, 1e-12);
    }

    #[test]
    fn ultraparallel_negative_branch() {
        let d = extended_distance(&vec2(0.0, 1.0), &vec2(1.0f64.sinh(), 1.0f64.cosh())).unwrap();
        assert_eq!(d.case, DistanceCase::SpacelikeUltraparallel);
        assert_finite(&d, -1.0, 0.0, 1e-12);
    }

    #[test]
    fn canonical_case_values() {
        let a = 0.8f64;
        let b = 1.7f64;

        // Timelike pairs on both sheets.
        let d = extended_distance(&vec2(1.0, 0.0), &vec2(a.cosh(), a.sinh())).unwrap();
        assert_finite(&d, a, 0.0, 1e-12);
        let d = extended_distance(&vec2(1.0, 0.0), &vec2(-a.cosh(), a.sinh())).unwrap();
        assert_finite(&d, -a, PI, 1e-12);

        // Timelike against spacelike, both offsets.
        let d = extended_distance(&vec2(1.0, 0.0), &vec2(a.sinh(), a.cosh())).unwrap();
        assert_finite(&d, a, FRAC_PI_2, 1e-12);
        let d = extended_distance(&vec2(1.0, 0.0), &vec2(-a.sinh(), a.cosh())).unwrap();
        assert_finite(&d, -a, FRAC_PI_2, 1e-12);

        // Spacelike-spacelike across the disk.
        let d = extended_distance(&vec2(0.0, 1.0), &vec2(a.sinh(), a.cosh())).unwrap();
        assert_finite(&d, -a, 0.0, 1e-12);
        let d = extended_distance(&vec2(0.0, 1.0), &vec2(a.sinh(), -a.cosh())).unwrap();
        assert_finite(&d, a, PI, 1e-12);

        // Equator pair.
        let d = extended_distance(&vec3(0.0, 1.0, 0.0), &vec3(0.0, a.cos(), a.sin())).unwrap();
        assert_eq!(d.case, DistanceCase::SpacelikeSecant);
        assert_finite(&d, 0.0, a, 1e-12);

        // Lightlike against an orthogonal spacelike vector.
        let d = extended_distance(&vec3(1.0, 1.0, 0.0), &vec3(a, a, 1.0)).unwrap();
        assert_eq!(d.case, DistanceCase::LightlikeOrthogonal);
        assert_finite(&d, 0.0, FRAC_PI_2, 1e-12);

        // Antipodal lightlike rays.
        let d = extended_distance(&vec3(1.0, 1.0, 0.0), &vec3(-1.0, -1.0, 0.0)).unwrap();
        assert_eq!(d.case, DistanceCase::ProportionalLightlike);
        assert_finite(&d, 0.0, PI, 1e-12);

        // Tangent-line pairs.
        let d = extended_distance(&vec3(a, a, 1.0), &vec3(b, b, 1.0)).unwrap();
        assert_eq!(d.case, DistanceCase::SpacelikeTangent);
        assert_finite(&d, 0.0, 0.0, 1e-12);
        let d = extended_distance(&vec3(a, a, 1.0), &vec3(b, b, -1.0)).unwrap();
        assert_eq!(d.case, DistanceCase::SpacelikeTangent);
        assert_finite(&d, 0.0, PI, 1e-12);
    }

    #[test]
    fn infinite_cases() {
        let d = extended_distance(&vec3(1.0, 1.0, 0.0), &vec3(1.0, 0.0, 1.0)).unwrap();
        assert_eq!(d.case, DistanceCase::IndependentLightlike);
        assert!(d.is_infinite());

        let d = extended_distance(&vec3(1.0, 1.0, 0.0), &vec3(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(d.case, DistanceCase::LightlikeSkew);
        assert!(d.is_infinite());
    }

    #[test]
    fn norm_product_identity_on_examples() {
        let pairs = [
            (vec2(1.0, 0.0), vec2(1.4f64.cosh(), 1.4f64.sinh())),
            (vec2(1.0, 0.0), vec2(-0.6f64.cosh(), 0.6f64.sinh())),
            (vec2(1.0, 0.0), vec2(0.9f64.sinh(), 0.9f64.cosh())),
            (vec2(0.0, 1.0), vec2(1.2f64.sinh(), 1.2f64.cosh())),
            (vec2(0.0, 1.0), vec2(1.2f64.sinh(), -1.2f64.cosh())),
            (vec3(0.0, 1.0, 0.0), vec3(0.0, 0.7f64.cos(), 0.7f64.sin())),
        ];
        for (x, y) in pairs {
            let d = extended_distance(&x, &y).unwrap().finite().unwrap();
            let lhs = Complex64::new(inner_product(&x, &y).unwrap(), 0.0);
            let rhs = lorentz_norm(&x) * lorentz_norm(&y) * d.cosh();
            assert!((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
        }
    }

    #[test]
    fn spherical_distance_rotates_by_minus_i() {
        let d = spherical_distance(&vec2(1.0, 0.0), &vec2(1.0f64.cosh(), 1.0f64.sinh()))
            .unwrap()
            .finite()
            .unwrap();
        assert_abs_diff_eq!(d.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.im, -1.0, epsilon = 1e-12);

        // Equator points at Euclidean angle 1 sit at spherical distance 1.
        let d = spherical_distance(&vec3(0.0, 1.0, 0.0), &vec3(0.0, 1.0f64.cos(), 1.0f64.sin()))
            .unwrap()
            .finite()
            .unwrap();
        assert_abs_diff_eq!(d.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.im, 0.0, epsilon = 1e-12);

        // A spacelike vector and a dual-line partner: quarter turn.
        let d = spherical_distance(&vec3(1.0, 0.0, 0.0), &vec3(0.0, 1.0, 0.0))
            .unwrap()
            .finite()
            .unwrap();
        assert_abs_diff_eq!(d.re, FRAC_PI_2, epsilon = 1e-12);
        assert_abs_diff_eq!(d.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn angles_between_vectors() {
        let a = angle_between(&vec3(0.0, 1.0, 0.0), &vec3(0.0, 0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(a.re, FRAC_PI_2, epsilon = 1e-12);
        assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-12);

        let a = angle_between(&vec3(0.0, 1.0, 0.0), &vec3(0.0, 1.0f64.cos(), 1.0f64.sin()))
            .unwrap();
        assert_abs_diff_eq!(a.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-12);

        // Ultraparallel spacelike pair: pure imaginary angle.
        let a = angle_between(&vec2(0.0, 1.0), &vec2(1.0f64.sinh(), 1.0f64.cosh())).unwrap();
        assert_abs_diff_eq!(a.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(a.im, 1.0, epsilon = 1e-12);

        // cos(angle) reproduces the normalized inner product.
        let v = vec3(0.4, 1.1, -0.3);
        let w = vec3(-0.2, 0.5, 1.3);
        let angle = angle_between(&v, &w).unwrap();
        let lhs = Complex64::new(inner_product(&v, &w).unwrap(), 0.0);
        let rhs = lorentz_norm(&v) * lorentz_norm(&w) * angle.cos();
        assert!((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn vertex_angles() {
        let p = vec3(1.0, 0.0, 0.0);
        let q1 = vec3(1.0f64.cosh(), 1.0f64.sinh(), 0.0);
        let q2 = vec3(1.0f64.cosh(), 0.0, 1.0f64.sinh());
        let a = vertex_angle(&p, &q1, &q2).unwrap();
        assert_abs_diff_eq!(a.re, FRAC_PI_2, epsilon = 1e-12);
        assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-12);

        // Right-angled triangle with legs 0.5: the right angle measures as such.
        let c = vec3(1.0, 0.0, 0.0);
        let a_vertex = vec3(0.5f64.cosh(), 0.5f64.sinh(), 0.0);
        let b_vertex = vec3(0.5f64.cosh(), 0.0, 0.5f64.sinh());
        let angle = vertex_angle(&c, &a_vertex, &b_vertex).unwrap();
        assert_abs_diff_eq!(angle.re, FRAC_PI_2, epsilon = 1e-12);

        // Spacelike vertex with tangents toward two hyperbolic points gives a
        // purely imaginary angle.
        let p = vec3(0.0, 0.0, 1.0);
        let q1 = vec3(1.0, 0.0, 0.0);
        let q2 = vec3(0.8f64.cosh(), 0.8f64.sinh(), 0.0);
        let a = vertex_angle(&p, &q1, &q2).unwrap();
        assert_abs_diff_eq!(a.re, 0.0, epsilon = 1e-12);
        assert!(a.im.abs() > 1e-6);
    }

    #[test]
    fn dual_basis_of_standard_frame() {
        let w = dual_basis(&vec3(1.0, 0.0, 0.0), &vec3(0.0, 1.0, 0.0), &vec3(0.0, 0.0, 1.0))
            .unwrap();
        assert_eq!(w[0], vec3(-1.0, 0.0, 0.0));
        assert_eq!(w[1], vec3(0.0, 1.0, 0.0));
        assert_eq!(w[2], vec3(0.0, 0.0, 1.0));
    }

    #[test]
    fn dual_basis_round_trips() {
        let v1 = vec3(1.2, 0.3, -0.1);
        let v2 = vec3(0.4, 1.5, 0.2);
        let v3 = vec3(-0.3, 0.1, 1.1);
        let w = dual_basis(&v1, &v2, &v3).unwrap();
        for (i, wi) in w.iter().enumerate() {
            for (j, vj) in [&v1, &v2, &v3].iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(inner_product(wi, vj).unwrap(), expected, epsilon = 1e-10);
            }
        }
        let back = dual_basis(&w[0], &w[1], &w[2]).unwrap();
        for (orig, b) in [&v1, &v2, &v3].iter().zip(&back) {
            for (x, y) in orig.coords().iter().zip(b.coords()) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn gram_matrices_are_inverse() {
        let v1 = vec3(1.1, 0.2, 0.4);
        let v2 = vec3(0.3, 1.2, -0.5);
        let v3 = vec3(-0.2, 0.6, 1.4);
        let w = dual_basis(&v1, &v2, &v3).unwrap();
        let vs = [&v1, &v2, &v3];
        let mut gram_v = Matrix3::zeros();
        let mut gram_w = Matrix3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                gram_v[(i, j)] = inner_product(vs[i], vs[j]).unwrap();
                gram_w[(i, j)] = inner_product(&w[i], &w[j]).unwrap();
            }
        }
        let product = gram_v * gram_w;
        let residual = product - Matrix3::identity();
        assert!(residual.iter().all(|r| r.abs() < 1e-8));
    }

    #[test]
    fn geometric_dual_signs() {
        let d = geometric_dual(&vec3(0.0, 1.0, 0.0)).unwrap();
        assert_eq!(d, vec3(0.0, -1.0, 0.0));
        let d = geometric_dual(&vec3(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(d, vec3(1.0, 0.0, 0.0));
        assert!(geometric_dual(&vec3(1.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn lens_and_lune_relations() {
        // Orthogonal duals seen from the pole: right lens angle.
        let x = vec3(0.0, 1.0, 0.0);
        let y = vec3(0.0, 0.0, 1.0);
        let p = vec3(1.0, 0.0, 0.0);
        let (lune, lens) = lens_lune_angles(&x, &y, &p).unwrap();
        assert_abs_diff_eq!(lens.re, FRAC_PI_2, epsilon = 1e-12);
        assert_abs_diff_eq!(lens.im, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(lune.re, FRAC_PI_2, epsilon = 1e-12);

        // Riemannian vertex: lens = pi - lune.
        let y = vec3(0.0, -std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2);
        let (lune, lens) = lens_lune_angles(&x, &y, &p).unwrap();
        assert!((lens - (Complex64::new(PI, 0.0) - lune)).norm() < 1e-10);

        // Lorentzian vertex: the pair lands in the admissible relation set.
        let x = vec3(0.3f64.sinh(), 0.3f64.cosh(), 0.0);
        let y = vec3(-0.6f64.sinh(), 0.6f64.cosh(), 0.0);
        let p = vec3(0.0, 0.0, 1.0);
        let (lune, lens) = lens_lune_angles(&x, &y, &p).unwrap();
        let pi = Complex64::new(PI, 0.0);
        let candidates = [pi - lune, lune - pi, pi + lune];
        let matches = candidates.iter().any(|c| {
            let diff = lens - c;
            let wrapped = Complex64::new(diff.re.rem_euclid(2.0 * PI), diff.im);
            wrapped.norm() < 1e-9
                || (wrapped - Complex64::new(2.0 * PI, 0.0)).norm() < 1e-9
        });
        assert!(matches, "lens {lens} not related to lune {lune}");

        // p off the intersection is rejected.
        let bad = vec3(1.0, 0.5, 0.0);
        assert!(lens_lune_angles(&x, &y, &bad).is_err());
    }

    #[test]
    fn scale_invariance() {
        let x = vec3(0.2, 1.3, -0.4);
        let y = vec3(1.5, 0.3, 0.9);
        let d1 = extended_distance(&x, &y).unwrap().finite().unwrap();
        let d2 = extended_distance(&x.scaled(3.7), &y.scaled(0.2))
            .unwrap()
            .finite()
            .unwrap();
        assert!((d1 - d2).norm() < 1e-12);
    }

    #[test]
    fn zero_vector_is_rejected() {
        let zero = vec3(0.0, 0.0, 0.0);
        assert!(extended_distance(&zero, &vec3(1.0, 0.0, 0.0)).is_err());
    }
}
