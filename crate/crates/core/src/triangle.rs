//! Triangle measurement on the extended models and the verification
//! batteries for the generalized cosine, dual cosine and sine laws.
//!
//! A triangle is any linearly independent, non-lightlike triple of vectors in
//! `R^{2,1}`. Sides come straight from the distance case table. Angles are
//! pinned by two facts: the cosine of the angle at a vertex is read off the
//! geometric duals of the two sides through it, and the sign of its sine is
//! the multi-sign expression in the vertex and dual norms. The branch is
//! frozen so the all-timelike stratum reproduces classical hyperbolic
//! interior angles, and the same rule is applied on every stratum.

use crate::branch::{msgn, sgn, sqrt_conv, SignValue};
use crate::lorentz::{inner_product, lorentz_norm, CausalClass, MinkowskiVector};
use crate::metric::{dual_basis, extended_distance, geometric_dual, DistanceCase, ExtDistance};
use crate::{ComplexMeasure, Error, Result};
use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

/// Causal-class pattern of a measured triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    /// Number of timelike vertices (0 to 3).
    pub timelike_vertices: u8,
    /// Case-table branches of the three sides `(a, b, c)`.
    pub side_cases: [DistanceCase; 3],
}

impl std::fmt::Display for Stratum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}T[{},{},{}]",
            self.timelike_vertices, self.side_cases[0], self.side_cases[1], self.side_cases[2]
        )
    }
}

/// A measured triangle: vertices, complex sides and angles, vertex and dual
/// norms, the dual triangle's sides, and the causal stratum.
///
/// Index conventions: side `i` is opposite vertex `i` (so `sides[0] = a`
/// joins `v2, v3`), the algebraic dual `w_i` is normal to side `i`'s line,
/// and `dual_sides[i]` joins the geometric duals of the other two sides.
#[derive(Clone, Debug, Serialize)]
pub struct ExtTriangle {
    vertices: [MinkowskiVector; 3],
    sides: [ExtDistance; 3],
    side_values: [ComplexMeasure; 3],
    angles: [ComplexMeasure; 3],
    vertex_norms: [ComplexMeasure; 3],
    dual_norms: [ComplexMeasure; 3],
    dual_sides: [ComplexMeasure; 3],
    #[serde(skip)]
    algebraic_duals: [MinkowskiVector; 3],
    #[serde(skip)]
    geometric_duals: [MinkowskiVector; 3],
    stratum: Stratum,
}

fn other_two(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => unreachable!(),
    }
}

impl ExtTriangle {
    /// Measure the triangle spanned by three linearly independent,
    /// non-lightlike vectors of `R^{2,1}`.
    pub fn measure(
        v1: MinkowskiVector,
        v2: MinkowskiVector,
        v3: MinkowskiVector,
    ) -> Result<Self> {
        let vertices = [v1, v2, v3];
        let mut timelike = 0u8;
        for v in &vertices {
            match v.class()? {
                CausalClass::Lightlike => {
                    return Err(Error::InvalidTriangle("lightlike vertex"))
                }
                CausalClass::Timelike { .. } => timelike += 1,
                CausalClass::Spacelike => {}
            }
        }

        let mut sides = [None; 3];
        for i in 0..3 {
            let (j, k) = other_two(i);
            sides[i] = Some(extended_distance(&vertices[j], &vertices[k])?);
        }
        let sides = sides.map(Option::unwrap);
        let mut side_values = [Complex64::new(0.0, 0.0); 3];
        for i in 0..3 {
            side_values[i] = sides[i]
                .finite()
                .ok_or(Error::InvalidTriangle("infinite side"))?;
        }

        let algebraic_duals = dual_basis(&vertices[0], &vertices[1], &vertices[2])
            .map_err(|_| Error::InvalidTriangle("linearly dependent vertices"))?;
        let mut geometric_duals = algebraic_duals.clone();
        for (slot, w) in geometric_duals.iter_mut().zip(&algebraic_duals) {
            *slot = geometric_dual(w)
                .map_err(|_| Error::InvalidTriangle("side line tangent to the light cone"))?;
        }

        let vertex_norms = [
            lorentz_norm(&vertices[0]),
            lorentz_norm(&vertices[1]),
            lorentz_norm(&vertices[2]),
        ];
        let dual_norms = [
            lorentz_norm(&algebraic_duals[0]),
            lorentz_norm(&algebraic_duals[1]),
            lorentz_norm(&algebraic_duals[2]),
        ];

        let mut dual_sides = [Complex64::new(0.0, 0.0); 3];
        let mut angles = [Complex64::new(0.0, 0.0); 3];
        for i in 0..3 {
            let (j, k) = other_two(i);
            dual_sides[i] = extended_distance(&geometric_duals[j], &geometric_duals[k])?
                .finite()
                .ok_or(Error::InvalidTriangle("infinite dual side"))?;

            let q = inner_product(&geometric_duals[j], &geometric_duals[k])?;
            let cos_a = -Complex64::new(q, 0.0) / (dual_norms[j] * dual_norms[k]);
            let sin_sq = Complex64::new(1.0, 0.0) - cos_a * cos_a;
            if sin_sq.im.abs() > 1e-8 * (1.0 + sin_sq.norm()) {
                return Err(Error::Degenerate(format!(
                    "angle sine-square drifted off the real axis: {sin_sq}"
                )));
            }
            let nv = vertices[i].ip(&vertices[i]);
            let nwj = algebraic_duals[j].ip(&algebraic_duals[j]);
            let nwk = algebraic_duals[k].ip(&algebraic_duals[k]);
            let sign = -msgn(&[-1.0, -nv, -nwj, -nwk])?;
            let sin_a = sin_sq.re.abs().max(0.0);
            let sin_a = sqrt_conv(if sin_sq.re < 0.0 { -sin_a } else { sin_a })
                * sign.as_f64();
            angles[i] = -Complex64::i() * (cos_a + Complex64::i() * sin_a).ln();
        }

        let stratum = Stratum {
            timelike_vertices: timelike,
            side_cases: [sides[0].case, sides[1].case, sides[2].case],
        };

        Ok(ExtTriangle {
            vertices,
            sides,
            side_values,
            angles,
            vertex_norms,
            dual_norms,
            dual_sides,
            algebraic_duals,
            geometric_duals,
            stratum,
        })
    }

    pub fn vertices(&self) -> &[MinkowskiVector; 3] {
        &self.vertices
    }

    /// Sides `(a, b, c)` with their case tags; side `i` is opposite vertex `i`.
    pub fn sides(&self) -> &[ExtDistance; 3] {
        &self.sides
    }

    /// Complex side lengths `(a, b, c)` on the hyperbolic sphere.
    pub fn side_values(&self) -> [ComplexMeasure; 3] {
        self.side_values
    }

    /// Side lengths on the de Sitter sphere: `-i` times the hyperbolic ones.
    pub fn spherical_sides(&self) -> [ComplexMeasure; 3] {
        self.side_values.map(|s| -Complex64::i() * s)
    }

    /// Angles `(A, B, C)` at vertices 1, 2, 3; identical on both models.
    pub fn angles(&self) -> [ComplexMeasure; 3] {
        self.angles
    }

    pub fn vertex_norms(&self) -> [ComplexMeasure; 3] {
        self.vertex_norms
    }

    pub fn dual_norms(&self) -> [ComplexMeasure; 3] {
        self.dual_norms
    }

    /// Sides of the geometric dual triangle; `dual_sides[i]` joins the duals
    /// of the two sides through vertex `i` and satisfies
    /// `-cos(angles[i]) = cosh(dual_sides[i])`.
    pub fn dual_sides(&self) -> [ComplexMeasure; 3] {
        self.dual_sides
    }

    pub fn algebraic_duals(&self) -> &[MinkowskiVector; 3] {
        &self.algebraic_duals
    }

    pub fn geometric_duals(&self) -> &[MinkowskiVector; 3] {
        &self.geometric_duals
    }

    pub fn stratum(&self) -> Stratum {
        self.stratum
    }

    pub fn side_cases(&self) -> [DistanceCase; 3] {
        self.stratum.side_cases
    }

    /// Gram matrix `<v_i, v_j>` of the vertices.
    pub fn gram(&self) -> Matrix3<f64> {
        let mut g = Matrix3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                g[(i, j)] = self.vertices[i].ip(&self.vertices[j]);
            }
        }
        g
    }

    /// True when any sine or sinh entering the law denominators falls below
    /// `threshold`; such triangles are valid but numerically thin.
    pub fn is_thin(&self, threshold: f64) -> bool {
        self.side_values
            .iter()
            .any(|s| s.sinh().norm() < threshold)
            || self.angles.iter().any(|a| a.sin().norm() < threshold)
    }
}

/// Free-function form of [`ExtTriangle::measure`].
pub fn measure_triangle(
    v1: MinkowskiVector,
    v2: MinkowskiVector,
    v3: MinkowskiVector,
) -> Result<ExtTriangle> {
    ExtTriangle::measure(v1, v2, v3)
}

/// Rebuild vertex vectors from a Gram matrix of signature (2,1).
///
/// The result spans the same inner-product configuration, so all measured
/// sides agree with the original triangle at the `cosh` level.
pub fn triangle_from_gram(gram: &Matrix3<f64>) -> Result<[MinkowskiVector; 3]> {
    let sym = nalgebra::SymmetricEigen::new(*gram);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| sym.eigenvalues[a].total_cmp(&sym.eigenvalues[b]));
    let eigenvalues = [
        sym.eigenvalues[order[0]],
        sym.eigenvalues[order[1]],
        sym.eigenvalues[order[2]],
    ];
    if !(eigenvalues[0] < 0.0 && eigenvalues[1] > 0.0 && eigenvalues[2] > 0.0) {
        return Err(Error::Degenerate(format!(
            "Gram matrix does not have signature (2,1): eigenvalues {eigenvalues:?}"
        )));
    }
    // V = diag(sqrt|lambda|) Q^T gives V^T S V = Q Lambda Q^T = G.
    let mut v = Matrix3::zeros();
    for (row, &col) in order.iter().enumerate() {
        let scale = eigenvalues[row].abs().sqrt();
        for c in 0..3 {
            v[(row, c)] = scale * sym.eigenvectors[(c, col)];
        }
    }
    Ok([
        MinkowskiVector::new(vec![v[(0, 0)], v[(1, 0)], v[(2, 0)]])?,
        MinkowskiVector::new(vec![v[(0, 1)], v[(1, 1)], v[(2, 1)]])?,
        MinkowskiVector::new(vec![v[(0, 2)], v[(1, 2)], v[(2, 2)]])?,
    ])
}

/// Residual report for one triangle: named absolute residuals of every law
/// instance, with degenerate (0/0-prone) entries flagged.
#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub stratum: String,
    pub residuals: BTreeMap<String, f64>,
    pub degenerate: Vec<String>,
    pub values: MeasuredValues,
}

/// The measured quantities a report refers to.
#[derive(Clone, Debug, Serialize)]
pub struct MeasuredValues {
    pub sides: [ComplexMeasure; 3],
    pub angles: [ComplexMeasure; 3],
    pub vertex_norms: [ComplexMeasure; 3],
    pub dual_norms: [ComplexMeasure; 3],
}

impl LawReport {
    fn new(t: &ExtTriangle) -> Self {
        LawReport {
            stratum: t.stratum().to_string(),
            residuals: BTreeMap::new(),
            degenerate: Vec::new(),
            values: MeasuredValues {
                sides: t.side_values(),
                angles: t.angles(),
                vertex_norms: t.vertex_norms(),
                dual_norms: t.dual_norms(),
            },
        }
    }

    fn push(&mut self, name: &str, residual: f64) {
        self.residuals.insert(name.to_string(), residual);
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().fold(0.0f64, |m, &r| m.max(r))
    }
}

const DEGENERATE_TOL: f64 = 1e-9;

const SIDE_NAMES: [char; 3] = ['a', 'b', 'c'];
const ANGLE_NAMES: [char; 3] = ['A', 'B', 'C'];

/// Cosine and dual cosine laws, hyperbolic and spherical forms, all cyclic
/// permutations. Residuals are cross-multiplied so denominator zeros report
/// a finite value; such instances are additionally flagged as degenerate.
pub fn verify_cosine_laws(t: &ExtTriangle) -> LawReport {
    let mut report = LawReport::new(t);
    let s = t.side_values();
    let ang = t.angles();
    let ss = t.spherical_sides();

    for i in 0..3 {
        let (j, k) = other_two(i);

        let denom = s[j].sinh() * s[k].sinh();
        if denom.norm() < DEGENERATE_TOL {
            report.degenerate.push(format!("cosine_{}", ANGLE_NAMES[i]));
        }
        let lhs = ang[i].cos() * denom;
        let rhs = s[j].cosh() * s[k].cosh() - s[i].cosh();
        report.push(&format!("cosine_{}", ANGLE_NAMES[i]), (lhs - rhs).norm());

        let denom = ang[j].sin() * ang[k].sin();
        if denom.norm() < DEGENERATE_TOL {
            report
                .degenerate
                .push(format!("dual_cosine_{}", SIDE_NAMES[i]));
        }
        let lhs = s[i].cosh() * denom;
        let rhs = ang[j].cos() * ang[k].cos() + ang[i].cos();
        report.push(&format!("dual_cosine_{}", SIDE_NAMES[i]), (lhs - rhs).norm());

        let lhs = ang[i].cos() * ss[j].sin() * ss[k].sin();
        let rhs = ss[i].cos() - ss[j].cos() * ss[k].cos();
        report.push(
            &format!("spherical_cosine_{}", ANGLE_NAMES[i]),
            (lhs - rhs).norm(),
        );

        let lhs = ss[i].cos() * ang[j].sin() * ang[k].sin();
        let rhs = ang[j].cos() * ang[k].cos() + ang[i].cos();
        report.push(
            &format!("spherical_dual_cosine_{}", SIDE_NAMES[i]),
            (lhs - rhs).norm(),
        );
    }
    report
}

/// Sine law (pairwise, cross-multiplied), its squared form, and the
/// spherical counterpart.
pub fn verify_sine_law(t: &ExtTriangle) -> LawReport {
    let mut report = LawReport::new(t);
    let s = t.side_values();
    let ang = t.angles();
    let ss = t.spherical_sides();

    let pairs = [(0usize, 1usize), (1, 2), (2, 0)];
    for (i, j) in pairs {
        let name = format!("sine_{}{}", SIDE_NAMES[i], SIDE_NAMES[j]);
        let lhs = s[i].sinh() * ang[j].sin();
        let rhs = s[j].sinh() * ang[i].sin();
        if lhs.norm() < DEGENERATE_TOL && rhs.norm() < DEGENERATE_TOL {
            report.degenerate.push(name.clone());
        }
        report.push(&name, (lhs - rhs).norm());

        let lhs = ss[i].sin() * ang[j].sin();
        let rhs = ss[j].sin() * ang[i].sin();
        report.push(
            &format!("spherical_sine_{}{}", SIDE_NAMES[i], SIDE_NAMES[j]),
            (lhs - rhs).norm(),
        );
    }

    // Squared form: the common ratio equals
    // sinh^2 a sinh^2 b sinh^2 c / (1 - sum cosh^2 + 2 prod cosh).
    let cosh: Vec<ComplexMeasure> = s.iter().map(|x| x.cosh()).collect();
    let denominator = Complex64::new(1.0, 0.0)
        - cosh[0] * cosh[0]
        - cosh[1] * cosh[1]
        - cosh[2] * cosh[2]
        + 2.0 * cosh[0] * cosh[1] * cosh[2];
    for i in 0..3 {
        let (j, k) = other_two(i);
        let lhs = denominator;
        let sin_a = ang[i].sin();
        let rhs = sin_a * sin_a * (s[j].sinh() * s[j].sinh()) * (s[k].sinh() * s[k].sinh());
        report.push(
            &format!("sine_squared_{}", SIDE_NAMES[i]),
            (lhs - rhs).norm(),
        );
    }
    report
}

/// Per-side sign rule: the sign of `sinh(side_i)` equals
/// `-msgn(-1, -|v_j|^2, -|v_k|^2, -|w_i|^2)` over the endpoint vertices and
/// the side's dual normal. The analogous rule pins the sign of
/// `sin(angle_i)`. Residual entries are 0 on match, 1 on mismatch.
pub fn verify_sign_identities(t: &ExtTriangle) -> LawReport {
    let mut report = LawReport::new(t);
    let s = t.side_values();
    let ang = t.angles();
    let nv: Vec<f64> = t.vertices.iter().map(|v| v.ip(v)).collect();
    let nw: Vec<f64> = t.algebraic_duals.iter().map(|w| w.ip(w)).collect();

    for i in 0..3 {
        let (j, k) = other_two(i);

        let name = format!("side_sign_{}", SIDE_NAMES[i]);
        match sgn(s[i].sinh()) {
            Ok(actual) => {
                let expected = -msgn(&[-1.0, -nv[j], -nv[k], -nw[i]]).expect("nonzero norms");
                report.push(&name, if actual == expected { 0.0 } else { 1.0 });
            }
            Err(_) => {
                report.degenerate.push(name);
            }
        }

        let name = format!("angle_sign_{}", ANGLE_NAMES[i]);
        match sgn(ang[i].sin()) {
            Ok(actual) => {
                let expected = -msgn(&[-1.0, -nv[i], -nw[j], -nw[k]]).expect("nonzero norms");
                report.push(&name, if actual == expected { 0.0 } else { 1.0 });
            }
            Err(_) => {
                report.degenerate.push(name);
            }
        }
    }

    report.push(
        "sign_cancellation",
        if sign_cancellation_holds() { 0.0 } else { 1.0 },
    );
    report.push(
        "dual_product_sign",
        if dual_product_sign_holds() { 0.0 } else { 1.0 },
    );
    report.push(
        "sine_exchange_sign",
        if sine_exchange_sign_holds() { 0.0 } else { 1.0 },
    );
    report
}

/// Sign pattern `(|v1|^2, |v2|^2, |v3|^2, |w1|^2, |w2|^2, |w3|^2)` signs.
/// Admissible patterns exclude two timelike vertices with a timelike dual of
/// the side joining them (the joining line crosses the disk, so its normal
/// must be spacelike).
pub fn admissible_sign_patterns() -> Vec<[f64; 6]> {
    let mut patterns = Vec::new();
    let mut magnitude = 0.6f64;
    for bits in 0u32..64 {
        let signed = |bit: u32, mag: f64| if bits >> bit & 1 == 1 { -mag } else { mag };
        magnitude = 0.3 + (magnitude * 1.37).fract() * 5.0;
        let p = [
            signed(0, magnitude + 0.11),
            signed(1, magnitude + 0.23),
            signed(2, magnitude + 0.37),
            signed(3, magnitude + 0.41),
            signed(4, magnitude + 0.53),
            signed(5, magnitude + 0.67),
        ];
        let mut admissible = true;
        for i in 0..3 {
            let (j, k) = other_two(i);
            if p[j] < 0.0 && p[k] < 0.0 && p[3 + i] < 0.0 {
                admissible = false;
            }
        }
        if admissible {
            patterns.push(p);
        }
    }
    patterns
}

fn m(args: &[f64]) -> SignValue {
    msgn(args).expect("nonzero arguments")
}

/// The four-factor msgn product that cancels in the cosine-law derivation,
/// checked over every admissible sign pattern.
pub fn sign_cancellation_holds() -> bool {
    admissible_sign_patterns().iter().all(|p| {
        let [x1, x2, x3, y1, y2, _y3] = *p;
        let product = m(&[-1.0, x1, x3, x1 * y2 * x3])
            * m(&[-1.0, x2, x3, y1 * x2 * x3])
            * m(&[-1.0, -x1, -x3, -y2])
            * m(&[-1.0, -x2, -x3, -y1]);
        product == SignValue::Plus
    })
}

/// `msgn(-1, -x1 y2 y3) msgn(-1, -x2 y1 y3) = sgn(x1 x2 y1 y2)`, checked
/// over every admissible sign pattern.
pub fn dual_product_sign_holds() -> bool {
    admissible_sign_patterns().iter().all(|p| {
        let [x1, x2, _x3, y1, y2, y3] = *p;
        let lhs = m(&[-1.0, -x1 * y2 * y3]) * m(&[-1.0, -x2 * y1 * y3]);
        let rhs = sgn(Complex64::new(x1 * x2 * y1 * y2, 0.0)).expect("nonzero");
        lhs == rhs
    })
}

/// The six-factor msgn identity that closes the sine-law proof, checked over
/// every admissible sign pattern.
pub fn sine_exchange_sign_holds() -> bool {
    admissible_sign_patterns().iter().all(|p| {
        let [x1, x2, x3, y1, y2, y3] = *p;
        let product = m(&[-1.0, -x1, -y2, -y3])
            * m(&[-1.0, -x1, -x3, -y2])
            * m(&[-1.0, -x2, -y1, -y3])
            * m(&[-1.0, -x2, -x3, -y1])
            * m(&[-x1 * y2 * y3, x1 * x3 * y2])
            * m(&[-x2 * y1 * y3, x2 * x3 * y1]);
        product == SignValue::Plus
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::vec3;
    use crate::sample::{right_triangle, rng, triangle_in_stratum, TriangleStratum};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn measure(vs: [MinkowskiVector; 3]) -> ExtTriangle {
        let [v1, v2, v3] = vs;
        ExtTriangle::measure(v1, v2, v3).unwrap()
    }

    #[test]
    fn right_triangle_measurements() {
        let a = 0.5f64;
        let b = 0.5f64;
        let t = measure(right_triangle(a, b));
        let sides = t.side_values();
        // Hypotenuse: cosh c = cosh a cosh b.
        let expected_c = (a.cosh() * b.cosh()).acosh();
        assert_abs_diff_eq!(sides[2].re, expected_c, epsilon = 1e-10);
        assert_abs_diff_eq!(sides[2].im, 0.0, epsilon = 1e-10);
        // Legs.
        assert_abs_diff_eq!(sides[0].re, a, epsilon = 1e-12);
        assert_abs_diff_eq!(sides[1].re, b, epsilon = 1e-12);
        // Right angle at v3.
        let angles = t.angles();
        assert_abs_diff_eq!(angles[2].re, FRAC_PI_2, epsilon = 1e-10);
        assert_abs_diff_eq!(angles[2].im, 0.0, epsilon = 1e-10);
        // Right-triangle sine relation: sinh a = sin A sinh c.
        let lhs = sides[0].sinh();
        let rhs = angles[0].sin() * sides[2].sinh();
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn octant_triangle() {
        // Pole plus two orthogonal equator points: every side is a quarter
        // turn and every angle is right.
        let t = measure([
            vec3(1.0, 0.0, 0.0),
            vec3(0.0, 1.0, 0.0),
            vec3(0.0, 0.0, 1.0),
        ]);
        for s in t.side_values() {
            assert_abs_diff_eq!(s.re, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(s.im, FRAC_PI_2, epsilon = 1e-12);
        }
        for a in t.angles() {
            assert_abs_diff_eq!(a.re, FRAC_PI_2, epsilon = 1e-12);
            assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-12);
        }
        for s in t.spherical_sides() {
            assert_abs_diff_eq!(s.re, FRAC_PI_2, epsilon = 1e-12);
            assert_abs_diff_eq!(s.im, 0.0, epsilon = 1e-12);
        }
        // Spherical cosine law at the octant: cos C = 0.
        let report = verify_cosine_laws(&t);
        assert!(report.max_residual() < 1e-12);
    }

    #[test]
    fn classical_laws_hold_on_random_stratified_triangles() {
        let mut r = rng(5);
        for stratum in TriangleStratum::ALL {
            for _ in 0..40 {
                let t = triangle_in_stratum(&mut r, stratum).unwrap();
                let cos = verify_cosine_laws(&t);
                assert!(
                    cos.max_residual() < 1e-8,
                    "cosine residual {} in {stratum:?}\n{:?}",
                    cos.max_residual(),
                    cos.values
                );
                let sine = verify_sine_law(&t);
                assert!(
                    sine.max_residual() < 1e-8,
                    "sine residual {} in {stratum:?}",
                    sine.max_residual()
                );
                let signs = verify_sign_identities(&t);
                assert!(
                    signs.max_residual() == 0.0,
                    "sign mismatch in {stratum:?}: {:?}",
                    signs.residuals
                );
            }
        }
    }

    #[test]
    fn dual_triangle_relations() {
        let mut r = rng(6);
        for stratum in TriangleStratum::ALL {
            for _ in 0..20 {
                let t = triangle_in_stratum(&mut r, stratum).unwrap();
                let ang = t.angles();
                let dual = t.dual_sides();
                for i in 0..3 {
                    // -cos A = cosh a' for the geometric dual.
                    let lhs = -ang[i].cos();
                    let rhs = dual[i].cosh();
                    assert!(
                        (lhs - rhs).norm() < 1e-9,
                        "dual side relation failed: {lhs} vs {rhs}"
                    );
                }

                // Sign-corrected reverse relation -cos A' = cosh a * sgn(...).
                let duals = t.geometric_duals().clone();
                if let Ok(dual_triangle) =
                    ExtTriangle::measure(duals[0].clone(), duals[1].clone(), duals[2].clone())
                {
                    let nv: Vec<f64> = t.vertices().iter().map(|v| v.ip(v)).collect();
                    let nw: Vec<f64> =
                        t.algebraic_duals().iter().map(|w| w.ip(w)).collect();
                    let sides = t.side_values();
                    let dual_angles = dual_triangle.angles();
                    for i in 0..3 {
                        let (j, k) = other_two(i);
                        let sign = sgn(Complex64::new(nv[j] * nv[k] * nw[j] * nw[k], 0.0))
                            .unwrap()
                            .as_f64();
                        let lhs = -dual_angles[i].cos();
                        let rhs = sides[i].cosh() * sign;
                        assert!(
                            (lhs - rhs).norm() < 1e-8,
                            "reverse dual relation failed: {lhs} vs {rhs}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gram_reconstruction_preserves_side_cosh() {
        let mut r = rng(7);
        for stratum in TriangleStratum::ALL {
            let t = triangle_in_stratum(&mut r, stratum).unwrap();
            let rebuilt = triangle_from_gram(&t.gram()).unwrap();
            let [u1, u2, u3] = rebuilt;
            let t2 = ExtTriangle::measure(u1, u2, u3).unwrap();
            for (s1, s2) in t.side_values().iter().zip(t2.side_values()) {
                assert!(
                    (s1.cosh() - s2.cosh()).norm() < 1e-8,
                    "cosh mismatch {s1} vs {s2}"
                );
            }
        }
    }

    #[test]
    fn exhaustive_sign_identities() {
        assert!(sign_cancellation_holds());
        assert!(dual_product_sign_holds());
        assert!(sine_exchange_sign_holds());
    }

    #[test]
    fn mixed_stratum_side_offsets() {
        // One spacelike and two timelike vertices: the sides at the spacelike
        // vertex pick up a quarter-turn imaginary offset.
        let mut r = rng(8);
        let t = triangle_in_stratum(&mut r, TriangleStratum::Timelike2Spacelike1).unwrap();
        let cases = t.side_cases();
        assert_eq!(cases[0], DistanceCase::TimelikeTimelike);
        let sides = t.side_values();
        assert_abs_diff_eq!(sides[1].im, FRAC_PI_2, epsilon = 1e-9);
        assert_abs_diff_eq!(sides[2].im, FRAC_PI_2, epsilon = 1e-9);
        let im = sides[0].im;
        assert!(im.abs() < 1e-9 || (im - PI).abs() < 1e-9);
    }

    #[test]
    fn lightlike_vertex_is_rejected() {
        let err = ExtTriangle::measure(
            vec3(1.0, 1.0, 0.0),
            vec3(1.0, 0.0, 0.0),
            vec3(0.0, 1.0, 0.0),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidTriangle(_)));
    }

    #[test]
    fn dependent_vertices_are_rejected() {
        let v = vec3(1.0, 0.2, 0.0);
        let err = ExtTriangle::measure(v.clone(), v.scaled(2.0), vec3(0.0, 1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::InvalidTriangle(_)));
    }
}
