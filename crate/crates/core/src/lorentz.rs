//! Vectors of `R^{n,1}`, the signature-(n,1) bilinear form, causal
//! classification, ambient and model norms, isometries and tangent
//! directions.
//!
//! The bilinear form is `<x, y> = -x0*y0 + x1*y1 + ... + xn*yn`. A vector is
//! timelike, lightlike or spacelike according to the sign of `<x, x>`; the
//! ambient Lorentzian norm `<x, x>^(1/2)` is taken positive real, zero or
//! positive pure imaginary (never negative or negative imaginary), which is
//! the branch the clockwise contour convention selects.

use crate::branch::sqrt_conv;
use crate::{ComplexMeasure, Error, Model, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Neg, Sub};

/// A point of `R^{n,1}`, stored as its `n + 1` coordinates `(x0, ..., xn)`.
///
/// Coordinates are plain doubles; vectors are immutable values and are never
/// auto-normalized (the distance and angle formulas are homogeneous, so raw
/// representatives are valid inputs).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct MinkowskiVector {
    coords: Vec<f64>,
}

impl MinkowskiVector {
    pub fn new(coords: impl Into<Vec<f64>>) -> Result<Self> {
        let coords = coords.into();
        if coords.len() < 2 || coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidCoordinates);
        }
        Ok(MinkowskiVector { coords })
    }

    /// Spatial dimension `n`; the vector has `n + 1` coordinates.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// The time coordinate `x0`.
    pub fn time(&self) -> f64 {
        self.coords[0]
    }

    pub fn scaled(&self, factor: f64) -> Self {
        MinkowskiVector {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn euclidean_norm_sq(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum()
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.euclidean_norm_sq().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }

    /// Causal class under the default tolerance.
    pub fn class(&self) -> Result<CausalClass> {
        causal_class(self, default_class_tolerance(self))
    }

    pub(crate) fn ip(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.coords.len(), other.coords.len());
        let mut acc = -self.coords[0] * other.coords[0];
        for k in 1..self.coords.len() {
            acc += self.coords[k] * other.coords[k];
        }
        acc
    }
}

impl TryFrom<Vec<f64>> for MinkowskiVector {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        MinkowskiVector::new(coords)
    }
}

impl From<MinkowskiVector> for Vec<f64> {
    fn from(v: MinkowskiVector) -> Vec<f64> {
        v.coords
    }
}

impl Neg for &MinkowskiVector {
    type Output = MinkowskiVector;

    fn neg(self) -> MinkowskiVector {
        self.scaled(-1.0)
    }
}

impl Add for &MinkowskiVector {
    type Output = MinkowskiVector;

    fn add(self, rhs: &MinkowskiVector) -> MinkowskiVector {
        assert_eq!(self.coords.len(), rhs.coords.len(), "dimension mismatch");
        MinkowskiVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &MinkowskiVector {
    type Output = MinkowskiVector;

    fn sub(self, rhs: &MinkowskiVector) -> MinkowskiVector {
        assert_eq!(self.coords.len(), rhs.coords.len(), "dimension mismatch");
        MinkowskiVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Convenience constructor for vectors of `R^{1,1}`.
pub fn vec2(x0: f64, x1: f64) -> MinkowskiVector {
    MinkowskiVector::new(vec![x0, x1]).expect("finite coordinates")
}

/// Convenience constructor for vectors of `R^{2,1}`.
pub fn vec3(x0: f64, x1: f64, x2: f64) -> MinkowskiVector {
    MinkowskiVector::new(vec![x0, x1, x2]).expect("finite coordinates")
}

/// The signature-(n,1) bilinear form `-x0*y0 + x1*y1 + ... + xn*yn`.
pub fn inner_product(x: &MinkowskiVector, y: &MinkowskiVector) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    Ok(x.ip(y))
}

/// Ambient Lorentzian norm `<x, x>^(1/2)`: positive real for spacelike `x`,
/// zero for lightlike, positive pure imaginary for timelike.
pub fn lorentz_norm(x: &MinkowskiVector) -> ComplexMeasure {
    sqrt_conv(x.ip(x))
}

/// Which sheet of the timelike cone a vector lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sheet {
    Upper,
    Lower,
}

/// Causal class of a vector, with the sheet recorded for timelike vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalClass {
    Timelike { sheet: Sheet },
    Spacelike,
    Lightlike,
}

impl CausalClass {
    pub fn is_timelike(self) -> bool {
        matches!(self, CausalClass::Timelike { .. })
    }

    pub fn is_spacelike(self) -> bool {
        self == CausalClass::Spacelike
    }

    pub fn is_lightlike(self) -> bool {
        self == CausalClass::Lightlike
    }
}

/// Default classification tolerance: floating-point light cones need a band
/// whose width scales with the square of the vector.
pub fn default_class_tolerance(x: &MinkowskiVector) -> f64 {
    1e-9 * x.euclidean_norm_sq().max(1.0)
}

/// Classify a vector as timelike, spacelike or lightlike with tolerance
/// `tau >= 0` on `<x, x>`.
pub fn causal_class(x: &MinkowskiVector, tau: f64) -> Result<CausalClass> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let q = x.ip(x);
    Ok(if q.abs() <= tau {
        CausalClass::Lightlike
    } else if q < 0.0 {
        CausalClass::Timelike {
            sheet: if x.time() > 0.0 {
                Sheet::Upper
            } else {
                Sheet::Lower
            },
        }
    } else {
        CausalClass::Spacelike
    })
}

/// Norm of a tangent vector at a non-ideal base point `p`, after the sign
/// conventions of the two models.
///
/// The hyperbolic-sphere rule: tangents on the hyperbolic part keep their
/// ambient norm; tangents on the Lorentzian part pick up a factor `i`, so a
/// spacelike tangent gets a positive imaginary norm and a timelike one a
/// negative real norm. The de Sitter rule is the hyperbolic one divided by
/// `i`, which makes `i * model_norm(S) = model_norm(H)` hold identically.
pub fn model_norm(
    x: &MinkowskiVector,
    p: &MinkowskiVector,
    model: Model,
) -> Result<ComplexMeasure> {
    if x.dim() != p.dim() {
        return Err(Error::DimensionMismatch(x.dim(), p.dim()));
    }
    let scale = x.euclidean_norm() * p.euclidean_norm();
    if x.ip(p).abs() > 1e-8 * scale.max(1e-300) {
        return Err(Error::NotIncident("tangent vector must satisfy <x, p> = 0".into()));
    }
    let ambient = lorentz_norm(x);
    match (p.class()?, model) {
        (CausalClass::Lightlike, _) => Err(Error::Lightlike("ideal base point")),
        (CausalClass::Timelike { .. }, Model::HyperbolicSphere) => Ok(ambient),
        (CausalClass::Spacelike, Model::HyperbolicSphere) => Ok(Complex64::i() * ambient),
        (CausalClass::Timelike { .. }, Model::SphericalSphere) => {
            Ok(-Complex64::i() * ambient)
        }
        (CausalClass::Spacelike, Model::SphericalSphere) => Ok(ambient),
    }
}

/// Component of `q` Lorentz-orthogonal to a non-lightlike `p`:
/// `u = q - (<q,p>/<p,p>) p`. The geodesic through `p` with initial
/// direction `u` reaches the projective class of `q`.
pub fn tangent_toward(p: &MinkowskiVector, q: &MinkowskiVector) -> Result<MinkowskiVector> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    let pp = p.ip(p);
    if pp.abs() <= default_class_tolerance(p) {
        return Err(Error::Lightlike("tangent_toward base point"));
    }
    let u = q - &p.scaled(q.ip(p) / pp);
    if u.euclidean_norm() <= 1e-12 * q.euclidean_norm() {
        return Err(Error::Degenerate("q is proportional to p".into()));
    }
    Ok(u)
}

/// The vector Lorentz-orthogonal to both arguments in `R^{2,1}`, normalized
/// so that `<cross(x,y), u> = det[u; x; y]` for every `u`.
pub fn lorentz_cross(x: &MinkowskiVector, y: &MinkowskiVector) -> Result<MinkowskiVector> {
    if x.dim() != 2 || y.dim() != 2 {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    let a = x.coords();
    let b = y.coords();
    let c0 = a[1] * b[2] - a[2] * b[1];
    let c1 = a[2] * b[0] - a[0] * b[2];
    let c2 = a[0] * b[1] - a[1] * b[0];
    MinkowskiVector::new(vec![-c0, c1, c2])
}

fn signature_matrix(n: usize) -> DMatrix<f64> {
    let mut s = DMatrix::identity(n + 1, n + 1);
    s[(0, 0)] = -1.0;
    s
}

/// An element of `O(n,1)` acting on `R^{n,1}`, validated at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzIsometry {
    matrix: DMatrix<f64>,
}

impl LorentzIsometry {
    /// Residual bound enforced on `M^T S M - S` at construction.
    pub const ISOMETRY_TOL: f64 = 1e-12;

    pub fn from_matrix(matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() < 2 {
            return Err(Error::InvalidCoordinates);
        }
        let n = matrix.nrows() - 1;
        let s = signature_matrix(n);
        let residual = (matrix.transpose() * &s * &matrix) - &s;
        let max = residual.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if max >= Self::ISOMETRY_TOL {
            return Err(Error::NotIsometry(max));
        }
        Ok(LorentzIsometry { matrix })
    }

    pub fn identity(n: usize) -> Self {
        LorentzIsometry {
            matrix: DMatrix::identity(n + 1, n + 1),
        }
    }

    /// Boost of the given rapidity in the `(x0, x_axis)` plane, `axis >= 1`.
    pub fn boost(n: usize, axis: usize, rapidity: f64) -> Self {
        assert!(axis >= 1 && axis <= n, "boost axis out of range");
        let mut m = DMatrix::identity(n + 1, n + 1);
        m[(0, 0)] = rapidity.cosh();
        m[(0, axis)] = rapidity.sinh();
        m[(axis, 0)] = rapidity.sinh();
        m[(axis, axis)] = rapidity.cosh();
        LorentzIsometry { matrix: m }
    }

    /// Rotation by `angle` in the spatial `(x_i, x_j)` plane, `1 <= i < j <= n`.
    pub fn rotation(n: usize, i: usize, j: usize, angle: f64) -> Self {
        assert!(i >= 1 && j > i && j <= n, "rotation plane out of range");
        let mut m = DMatrix::identity(n + 1, n + 1);
        m[(i, i)] = angle.cos();
        m[(i, j)] = -angle.sin();
        m[(j, i)] = angle.sin();
        m[(j, j)] = angle.cos();
        LorentzIsometry { matrix: m }
    }

    /// A random element of the identity component, built as
    /// `rotation * boost * rotation` with rapidity below `max_rapidity`.
    pub fn random_proper<R: Rng + ?Sized>(n: usize, rng: &mut R, max_rapidity: f64) -> Self {
        use std::f64::consts::TAU;
        let mut g = Self::identity(n);
        if n >= 2 {
            g = g.compose(&Self::rotation(n, 1, 2, rng.gen_range(0.0..TAU)));
        }
        let axis = rng.gen_range(1..=n);
        g = g.compose(&Self::boost(n, axis, rng.gen_range(-max_rapidity..max_rapidity)));
        if n >= 2 {
            g = g.compose(&Self::rotation(n, 1, 2, rng.gen_range(0.0..TAU)));
        }
        g
    }

    pub fn compose(&self, other: &LorentzIsometry) -> LorentzIsometry {
        LorentzIsometry {
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn inverse(&self) -> LorentzIsometry {
        let n = self.matrix.nrows() - 1;
        let s = signature_matrix(n);
        // M^{-1} = S M^T S for Lorentz isometries.
        LorentzIsometry {
            matrix: &s * self.matrix.transpose() * &s,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows() - 1
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Matrix-vector product; panics on dimension mismatch.
    pub fn apply(&self, x: &MinkowskiVector) -> MinkowskiVector {
        assert_eq!(self.dim(), x.dim(), "dimension mismatch");
        let v = DVector::from_column_slice(x.coords());
        let image = &self.matrix * v;
        MinkowskiVector {
            coords: image.iter().copied().collect(),
        }
    }
}

/// Free-function form of [`LorentzIsometry::apply`].
pub fn apply_isometry(m: &LorentzIsometry, x: &MinkowskiVector) -> MinkowskiVector {
    m.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn inner_product_signature() {
        let e0 = vec3(1.0, 0.0, 0.0);
        assert_abs_diff_eq!(inner_product(&e0, &e0).unwrap(), -1.0);

        let x = vec2(1.0, 0.0);
        let y = vec2(1.0f64.cosh(), 1.0f64.sinh());
        assert_abs_diff_eq!(
            inner_product(&x, &y).unwrap(),
            -1.0f64.cosh(),
            epsilon = 1e-12
        );

        let x = vec3(0.0, 1.0, 0.0);
        let y = vec3(0.0, 1.0f64.cos(), 1.0f64.sin());
        assert_abs_diff_eq!(
            inner_product(&x, &y).unwrap(),
            1.0f64.cos(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn inner_product_dimension_mismatch() {
        let x = vec2(1.0, 0.0);
        let y = vec3(1.0, 0.0, 0.0);
        assert!(matches!(
            inner_product(&x, &y),
            Err(Error::DimensionMismatch(1, 2))
        ));
    }

    #[test]
    fn lorentz_norm_branches() {
        let timelike = vec3(1.0, 0.0, 0.0);
        assert_eq!(lorentz_norm(&timelike), Complex64::new(0.0, 1.0));
        let spacelike = vec3(0.0, 1.0, 0.0);
        assert_eq!(lorentz_norm(&spacelike), Complex64::new(1.0, 0.0));
        let lightlike = vec3(1.0, 1.0, 0.0);
        assert_eq!(lorentz_norm(&lightlike), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn causal_classification() {
        assert_eq!(
            vec3(1.0, 0.0, 0.0).class().unwrap(),
            CausalClass::Timelike { sheet: Sheet::Upper }
        );
        assert_eq!(
            vec3(-2.0, 0.5, 0.0).class().unwrap(),
            CausalClass::Timelike { sheet: Sheet::Lower }
        );
        assert_eq!(vec3(0.5, 1.0, 0.0).class().unwrap(), CausalClass::Spacelike);
        assert_eq!(vec3(1.0, 1.0, 0.0).class().unwrap(), CausalClass::Lightlike);
        assert!(vec3(0.0, 0.0, 0.0).class().is_err());
    }

    #[test]
    fn model_norm_conventions() {
        // Spacelike tangent at a Lorentzian (spacelike) point.
        let p = vec3(0.0, 1.0, 0.0);
        let x = vec3(0.0, 0.0, 2.0);
        let h = model_norm(&x, &p, Model::HyperbolicSphere).unwrap();
        assert_abs_diff_eq!(h.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(h.im, 2.0, epsilon = 1e-12);
        let s = model_norm(&x, &p, Model::SphericalSphere).unwrap();
        assert_abs_diff_eq!(s.re, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.im, 0.0, epsilon = 1e-12);

        // Timelike tangent at a Lorentzian point: negative real on the
        // hyperbolic sphere.
        let t = vec3(1.0, 0.0, 0.0);
        let h = model_norm(&t, &p, Model::HyperbolicSphere).unwrap();
        assert_abs_diff_eq!(h.re, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(h.im, 0.0, epsilon = 1e-12);

        // Tangent at a hyperbolic (timelike) point of the de Sitter sphere.
        let p = vec3(1.0, 0.0, 0.0);
        let x = vec3(0.0, 1.0, 0.0);
        let s = model_norm(&x, &p, Model::SphericalSphere).unwrap();
        assert_abs_diff_eq!(s.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.im, -1.0, epsilon = 1e-12);

        // Ideal base point is rejected.
        let ideal = vec3(1.0, 1.0, 0.0);
        let x = vec3(0.0, 0.0, 1.0);
        assert!(model_norm(&x, &ideal, Model::HyperbolicSphere).is_err());
    }

    #[test]
    fn tangent_toward_examples() {
        let p = vec3(1.0, 0.0, 0.0);
        let q = vec3(1.0f64.cosh(), 1.0f64.sinh(), 0.0);
        let u = tangent_toward(&p, &q).unwrap();
        assert_abs_diff_eq!(u.coords()[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(u.coords()[1], 1.0f64.sinh(), epsilon = 1e-12);
        assert_abs_diff_eq!(inner_product(&u, &p).unwrap(), 0.0, epsilon = 1e-12);

        let p = vec3(0.0, 1.0, 0.0);
        let q = vec3(0.0, 0.0, 1.0);
        let u = tangent_toward(&p, &q).unwrap();
        assert_eq!(u, vec3(0.0, 0.0, 1.0));

        let p = vec3(0.0, 1.0, 0.0);
        let q = vec3(1.0f64.sinh(), 1.0f64.cosh(), 0.0);
        let u = tangent_toward(&p, &q).unwrap();
        assert_abs_diff_eq!(u.coords()[0], 1.0f64.sinh(), epsilon = 1e-12);
        assert_abs_diff_eq!(u.coords()[1], 0.0, epsilon = 1e-12);

        // Proportional input has no tangent direction.
        assert!(tangent_toward(&p, &p.scaled(3.0)).is_err());
        // Lightlike base point is rejected.
        assert!(tangent_toward(&vec3(1.0, 1.0, 0.0), &q).is_err());
    }

    #[test]
    fn isometries_act_as_expected() {
        let id = LorentzIsometry::identity(2);
        let x = vec3(0.3, 1.2, -0.4);
        assert_eq!(id.apply(&x), x);

        let b = LorentzIsometry::boost(1, 1, 1.0);
        let image = b.apply(&vec2(1.0, 0.0));
        assert_abs_diff_eq!(image.coords()[0], 1.0f64.cosh(), epsilon = 1e-12);
        assert_abs_diff_eq!(image.coords()[1], 1.0f64.sinh(), epsilon = 1e-12);

        let r = LorentzIsometry::rotation(2, 1, 2, FRAC_PI_2);
        let image = r.apply(&vec3(0.0, 1.0, 0.0));
        assert_abs_diff_eq!(image.coords()[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(image.coords()[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(image.coords()[2], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn isometry_validation_rejects_garbage() {
        let mut m = DMatrix::identity(3, 3);
        m[(0, 1)] = 0.5;
        assert!(LorentzIsometry::from_matrix(m).is_err());
    }

    #[test]
    fn isometry_inverse_composes_to_identity() {
        let g = LorentzIsometry::boost(2, 1, 0.7)
            .compose(&LorentzIsometry::rotation(2, 1, 2, 0.3));
        let gi = g.inverse();
        let x = vec3(0.2, -1.1, 0.8);
        let back = gi.apply(&g.apply(&x));
        for (a, b) in back.coords().iter().zip(x.coords()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn cross_is_orthogonal_to_both() {
        let x = vec3(0.4, 1.3, -0.2);
        let y = vec3(-1.0, 0.3, 0.9);
        let c = lorentz_cross(&x, &y).unwrap();
        assert_abs_diff_eq!(inner_product(&c, &x).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(inner_product(&c, &y).unwrap(), 0.0, epsilon = 1e-12);
    }
}
