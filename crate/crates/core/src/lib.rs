//! Complex-valued trigonometry on the extended hyperbolic sphere and the
//! extended de Sitter sphere.
//!
//! Both models live on the Euclidean unit sphere seen through the
//! signature-(n,1) bilinear form of `R^{n,1}`. Once geodesics leave the
//! classical hyperbolic disk, lengths, angles, areas and volumes take complex
//! values; this crate computes them with a fixed global branch policy (the
//! clockwise detour above the `r = 1` pole) and verifies that the generalized
//! cosine, dual cosine and sine laws, the polygon relations they induce, and
//! the triangle area formulas all hold numerically.
//!
//! Module map:
//!
//! * [`lorentz`] — vectors of `R^{n,1}`, the bilinear form, causal
//!   classification, norms, isometries.
//! * [`branch`] — the square-root/sign conventions (`sqrt_conv`, `sgn`,
//!   `msgn`) and the strip-normalized inverse hyperbolic cosine.
//! * [`contour`] — quadrature along the clockwise contour; the independent
//!   oracle for lengths and volumes.
//! * [`metric`] — the extended distance case table, angles, duals, lune and
//!   lens angles.
//! * [`triangle`] — triangle measurement and the law verification batteries.
//! * [`polygon`] — stratified samplers and identity checks for the polygon
//!   families (Lambert quadrilaterals, right-angled hexagons and pentagons).
//! * [`area`] — angle-defect and side-product triangle areas, and the
//!   hyperbolic/spherical correspondence checks.
//! * [`suite`] — the aggregated verification suite used by the CLI and the
//!   acceptance tests.

pub mod area;
pub mod branch;
pub mod contour;
pub mod lorentz;
pub mod metric;
pub mod polygon;
pub mod sample;
pub mod suite;
pub mod triangle;

use serde::{Deserialize, Serialize};

/// A complex scalar carrying a length, angle, norm, area or volume value.
pub type ComplexMeasure = num_complex::Complex64;

/// Which extended model a measurement lives on.
///
/// The two models share the underlying sphere; their metrics differ by a
/// factor of -1, so every tangent norm satisfies `i * norm_S = norm_H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    /// The extended hyperbolic space (curvature -1 everywhere).
    HyperbolicSphere,
    /// The extended de Sitter space (curvature +1 everywhere).
    SphericalSphere,
}

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("coordinates must be finite and at least two-dimensional")]
    InvalidCoordinates,
    #[error("zero vector")]
    ZeroVector,
    #[error("lightlike vector not allowed here: {0}")]
    Lightlike(&'static str),
    #[error("sign is undefined for {0}")]
    SignUndefined(String),
    #[error("msgn requires nonzero real arguments")]
    MsgnZeroArgument,
    #[error("matrix is singular or too ill-conditioned")]
    Singular,
    #[error("matrix is not a Lorentz isometry (residual {0:.3e})")]
    NotIsometry(f64),
    #[error("invalid contour: {0}")]
    InvalidContour(String),
    #[error("counterclockwise contours are not implemented")]
    NotImplemented,
    #[error("quadrature did not converge (error estimate {0:.3e})")]
    Quadrature(f64),
    #[error("integral diverges at b = 1")]
    DivergentLength,
    #[error("distance is infinite")]
    InfiniteDistance,
    #[error("point is not on the required subspace: {0}")]
    NotIncident(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("invalid triangle: {0}")]
    InvalidTriangle(&'static str),
    #[error("sampling failed after {0} attempts")]
    SamplingFailed(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use branch::{arccosh_strip, msgn, sgn, sqrt_conv, SignValue};
pub use lorentz::{
    causal_class, inner_product, lorentz_norm, model_norm, tangent_toward, CausalClass,
    LorentzIsometry, MinkowskiVector, Sheet,
};
pub use metric::{
    angle_between, dual_basis, extended_distance, geometric_dual, lens_lune_angles,
    spherical_distance, vertex_angle, DistanceCase, DistanceValue, DualPair, ExtDistance,
};
pub use triangle::{measure_triangle, ExtTriangle, LawReport, Stratum};
