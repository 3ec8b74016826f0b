//! Quadrature along the clockwise contour that defines extended lengths and
//! volumes.
//!
//! The singular integrals behind the extended measurements run along the real
//! axis from `a` to `b` and detour above the pole at `r = 1` on a small
//! semicircle traversed clockwise. This module evaluates them with adaptive
//! Gauss-Kronrod quadrature and serves as the independent numeric oracle the
//! closed-form distance and volume formulas are checked against.

use crate::{ComplexMeasure, Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// Orientation of the detour around `r = 1`.
///
/// Only the clockwise detour (through the upper half-plane) is implemented;
/// the counterclockwise value is accepted by parsers so configuration files
/// stay forward-compatible, and rejected at integration time.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Clockwise,
    Counterclockwise,
}

/// An integration path on the real axis from `a` to `b`, with a semicircular
/// detour of radius `delta` above `r = 1` whenever the path crosses it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContourSpec {
    pub a: f64,
    pub b: f64,
    pub delta: f64,
    pub samples_per_segment: usize,
    pub orientation: Orientation,
}

impl ContourSpec {
    pub const DEFAULT_DELTA: f64 = 1e-2;

    /// Path from `a` to `b` with the default detour radius (shrunk if the
    /// endpoints sit close to the pole).
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::InvalidContour(format!(
                "endpoints must be finite with a < b, got [{a}, {b}]"
            )));
        }
        let mut delta = Self::DEFAULT_DELTA;
        if a < 1.0 && 1.0 < b {
            delta = delta.min((1.0 - a).min(b - 1.0) / 4.0);
        }
        let spec = ContourSpec {
            a,
            b,
            delta,
            samples_per_segment: 8,
            orientation: Orientation::Clockwise,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_delta(mut self, delta: f64) -> Result<Self> {
        self.delta = delta;
        self.validate()?;
        Ok(self)
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    fn crosses_pole(&self) -> bool {
        self.a < 1.0 && 1.0 < self.b
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0) {
            return Err(Error::InvalidContour("detour radius must be positive".into()));
        }
        if self.crosses_pole() && self.delta >= (1.0 - self.a).min(self.b - 1.0) / 2.0 {
            return Err(Error::InvalidContour(
                "detour radius must stay below half the distance from the pole to both endpoints"
                    .into(),
            ));
        }
        if (self.a - 1.0).abs() < 1e-12 || (self.b - 1.0).abs() < 1e-12 {
            return Err(Error::InvalidContour("endpoint sits on the pole".into()));
        }
        Ok(())
    }

    fn pieces(&self) -> Vec<Piece> {
        if self.crosses_pole() {
            vec![
                Piece::Line(self.a, 1.0 - self.delta),
                Piece::UpperSemicircle { radius: self.delta },
                Piece::Line(1.0 + self.delta, self.b),
            ]
        } else {
            vec![Piece::Line(self.a, self.b)]
        }
    }
}

enum Piece {
    /// Straight segment on the real axis.
    Line(f64, f64),
    /// Semicircle `1 + delta * exp(i*theta)`, `theta` from `pi` down to `0`:
    /// above the pole, traversed clockwise.
    UpperSemicircle { radius: f64 },
}

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (symmetric halves).
const KRONROD_NODES: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// Single Gauss-Kronrod panel over `t in [t0, t1]` for a complex-valued
/// integrand; returns the K15 value and an error estimate.
///
/// The embedded 7-point Gauss rule sits at Kronrod node indices 1, 3, 5 plus
/// the center node.
fn gk15<F: Fn(f64) -> Complex64>(f: &F, t0: f64, t1: f64) -> (Complex64, f64) {
    let half = 0.5 * (t1 - t0);
    let mid = 0.5 * (t0 + t1);
    let fmid = f(mid);
    let mut kronrod = KRONROD_WEIGHTS[7] * fmid;
    let mut gauss = GAUSS_WEIGHTS[3] * fmid;
    for k in 0..7 {
        let x = KRONROD_NODES[k];
        let pair = f(mid + half * x) + f(mid - half * x);
        kronrod += KRONROD_WEIGHTS[k] * pair;
        if k % 2 == 1 {
            gauss += GAUSS_WEIGHTS[k / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).norm())
}

/// Adaptive bisection driver to absolute tolerance `tol`.
fn adaptive<F: Fn(f64) -> Complex64>(
    f: &F,
    t0: f64,
    t1: f64,
    tol: f64,
    depth: usize,
) -> Result<Complex64> {
    let (value, err) = gk15(f, t0, t1);
    if err <= tol || (t1 - t0).abs() < 1e-14 {
        if err.is_nan() {
            return Err(Error::Quadrature(err));
        }
        return Ok(value);
    }
    if depth == 0 {
        return Err(Error::Quadrature(err));
    }
    let mid = 0.5 * (t0 + t1);
    Ok(adaptive(f, t0, mid, tol / 2.0, depth - 1)?
        + adaptive(f, mid, t1, tol / 2.0, depth - 1)?)
}

/// Local quadrature tolerance targeted by the adaptive rule.
pub const QUAD_TOL: f64 = 1e-11;

fn integrate_piece<F: Fn(Complex64) -> Complex64>(
    f: &F,
    piece: &Piece,
    panels: usize,
) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    match piece {
        Piece::Line(x0, x1) => {
            let g = |t: f64| f(Complex64::new(t, 0.0));
            let step = (x1 - x0) / panels as f64;
            for k in 0..panels {
                let a = x0 + step * k as f64;
                total += adaptive(&g, a, a + step, QUAD_TOL, 40)?;
            }
        }
        Piece::UpperSemicircle { radius } => {
            let r = *radius;
            // z = 1 + r e^{i theta}, dz = i r e^{i theta} d theta, theta: pi -> 0.
            let g = move |theta: f64| {
                let e = Complex64::from_polar(r, theta);
                f(Complex64::new(1.0, 0.0) + e) * Complex64::i() * e
            };
            let step = -PI / panels as f64;
            for k in 0..panels {
                let a = PI + step * k as f64;
                total += adaptive(&g, a, a + step, QUAD_TOL, 40)?;
            }
        }
    }
    Ok(total)
}

/// Contour quadrature of a complex-analytic integrand along `path`.
pub fn integrate_contour<F: Fn(Complex64) -> Complex64>(
    f: F,
    path: &ContourSpec,
) -> Result<ComplexMeasure> {
    if path.orientation == Orientation::Counterclockwise {
        return Err(Error::NotImplemented);
    }
    path.validate()?;
    let panels = path.samples_per_segment.max(1);
    let mut total = Complex64::new(0.0, 0.0);
    for piece in path.pieces() {
        total += integrate_piece(&f, &piece, panels)?;
    }
    Ok(total)
}

/// Closed-form extended length of the segment `[0, b]` on the 1-dimensional
/// model: `artanh(b)` inside the disk, `arcoth(b) + (pi/2) i` outside.
pub fn length_1d(b: f64) -> Result<ComplexMeasure> {
    if !(b >= 0.0) || !b.is_finite() {
        return Err(Error::InvalidContour(format!("b must be finite and >= 0, got {b}")));
    }
    if (b - 1.0).abs() < 1e-12 {
        return Err(Error::DivergentLength);
    }
    if b < 1.0 {
        Ok(Complex64::new(b.atanh(), 0.0))
    } else {
        Ok(Complex64::new((1.0 / b).atanh(), FRAC_PI_2))
    }
}

/// Radial profile of a rotationally sliced domain: at radius `r` the angular
/// slice has measure `F(r)`, assumed analytic near `r = 1`.
pub struct RadialProfile {
    /// Dimension `n` of the model; the volume element carries
    /// `r^{n-1} / (1 - r^2)^{(n+1)/2}`.
    pub n: usize,
    angular: Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
}

impl RadialProfile {
    pub fn new(
        n: usize,
        angular: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        RadialProfile {
            n,
            angular: Box::new(angular),
        }
    }

    /// Constant angular measure, e.g. the full unit sphere `S^{n-1}`.
    pub fn constant(n: usize, value: f64) -> Self {
        Self::new(n, move |_| Complex64::new(value, 0.0))
    }

    /// Profile covering the whole radial slice: `F = vol(S^{n-1})`.
    pub fn full_sphere(n: usize) -> Result<Self> {
        Ok(Self::constant(n, unit_sphere_volume(n - 1)?))
    }

    pub fn eval(&self, r: Complex64) -> Complex64 {
        (self.angular)(r)
    }
}

/// Total volume of the unit sphere `S^k`.
pub fn unit_sphere_volume(k: usize) -> Result<f64> {
    Ok(match k {
        0 => 2.0,
        1 => 2.0 * PI,
        2 => 4.0 * PI,
        3 => 2.0 * PI * PI,
        _ => {
            return Err(Error::InvalidContour(format!(
                "sphere dimension {k} not supported"
            )))
        }
    })
}

/// `(1 - z^2)^{1/2}` continued along the clockwise contour: positive real on
/// the axis left of the pole, principal on the detour, and `-i sqrt(r^2 - 1)`
/// on the axis right of the pole.
fn continued_sqrt_one_minus_sq(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re > 1.0 {
        Complex64::new(0.0, -(z.re * z.re - 1.0).sqrt())
    } else {
        (Complex64::new(1.0, 0.0) - z * z).sqrt()
    }
}

fn volume_integrand(profile: &RadialProfile) -> impl Fn(Complex64) -> Complex64 + '_ {
    let n = profile.n;
    move |z: Complex64| {
        let s = continued_sqrt_one_minus_sq(z);
        let denom = s.powu((n + 1) as u32);
        z.powu((n - 1) as u32) * profile.eval(z) / denom
    }
}

/// Extended volume of the radial set `{r <= b}` weighted by `profile`,
/// integrating the singular volume form along the clockwise contour. Accepts
/// `b = infinity` for the full affine chart (one hemisphere of the model).
pub fn volume_radial(profile: &RadialProfile, b: f64) -> Result<ComplexMeasure> {
    if profile.n == 0 {
        return Err(Error::InvalidContour("dimension must be at least 1".into()));
    }
    if b.is_finite() {
        if !(b > 0.0) {
            return Err(Error::InvalidContour(format!("b must be positive, got {b}")));
        }
        let path = ContourSpec::new(0.0, b)?;
        return integrate_contour(volume_integrand(profile), &path);
    }

    // Split at r = 2: a finite contour part plus an analytic tail obtained by
    // the substitution r = 1/s, which turns the branch factor into
    // i^{n+1} (1 - s^2)^{-(n+1)/2} with the positive real root.
    let cut = 2.0;
    let path = ContourSpec::new(0.0, cut)?;
    let finite = integrate_contour(volume_integrand(profile), &path)?;
    let n = profile.n;
    let tail_factor = Complex64::i().powu((n + 1) as u32);
    let tail_integrand = move |s: Complex64| {
        let root = (Complex64::new(1.0, 0.0) - s * s).sqrt();
        profile.eval(1.0 / s) / root.powu((n + 1) as u32)
    };
    let tail_path = ContourSpec::new(0.0, 1.0 / cut)?;
    let tail = integrate_contour(tail_integrand, &tail_path)?;
    Ok(finite + tail_factor * tail)
}

/// Total extended volume of the n-dimensional model: both hemispheres of the
/// hyperbolic sphere, times `(-i)^n` for the de Sitter sphere.
pub fn total_volume(model: crate::Model, n: usize) -> Result<ComplexMeasure> {
    let profile = RadialProfile::full_sphere(n)?;
    let hemisphere = volume_radial(&profile, f64::INFINITY)?;
    let hyperbolic = 2.0 * hemisphere;
    Ok(match model {
        crate::Model::HyperbolicSphere => hyperbolic,
        crate::Model::SphericalSphere => (-Complex64::i()).powu(n as u32) * hyperbolic,
    })
}
