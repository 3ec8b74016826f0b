//! Branch and sign conventions used throughout the crate.
//!
//! Every complex-valued quantity in the library is pinned to a single branch
//! policy: principal square roots and logarithms (cut on the negative real
//! axis, negative reals mapping into the closed upper half-plane). That
//! policy reproduces the clockwise contour convention of [`crate::contour`],
//! so the helpers here are the one place branch decisions are made.

use crate::{ComplexMeasure, Error, Result};
use num_complex::Complex64;
use std::ops::{Mul, Neg};

/// Relative tolerance deciding when a complex value counts as purely real or
/// purely imaginary. Quantities fed to [`sgn`] are analytically one or the
/// other; drift beyond this indicates a bug upstream.
pub const SGN_TOL: f64 = 1e-9;

/// A sign, +1 or -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignValue {
    Plus,
    Minus,
}

impl SignValue {
    pub fn from_positive(positive: bool) -> Self {
        if positive {
            SignValue::Plus
        } else {
            SignValue::Minus
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            SignValue::Plus => 1.0,
            SignValue::Minus => -1.0,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            SignValue::Plus => 1,
            SignValue::Minus => -1,
        }
    }
}

impl Mul for SignValue {
    type Output = SignValue;

    fn mul(self, rhs: SignValue) -> SignValue {
        SignValue::from_positive(self == rhs)
    }
}

impl Neg for SignValue {
    type Output = SignValue;

    fn neg(self) -> SignValue {
        match self {
            SignValue::Plus => SignValue::Minus,
            SignValue::Minus => SignValue::Plus,
        }
    }
}

/// Square root of a real number under the convention that negative inputs
/// map to the positive imaginary axis: `sqrt_conv(-4) = 2i`, never `-2i`.
pub fn sqrt_conv(a: f64) -> ComplexMeasure {
    if a >= 0.0 {
        Complex64::new(a.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-a).sqrt())
    }
}

/// Sign of a number that is purely real or purely imaginary: +1 for positive
/// or positive pure imaginary, -1 for negative or negative pure imaginary.
///
/// Fails on (numerically) zero input and on inputs with both components
/// significant; the latter signals a convention violation upstream. Note the
/// usual multiplicativity is lost on the imaginary axis: `sgn(i * i) = -1`
/// while `sgn(i) * sgn(i) = 1`.
pub fn sgn(a: ComplexMeasure) -> Result<SignValue> {
    let mag = a.norm();
    if !(mag > 0.0) {
        return Err(Error::SignUndefined(format!("{a} (zero magnitude)")));
    }
    let (major, minor) = if a.re.abs() >= a.im.abs() {
        (a.re, a.im)
    } else {
        (a.im, a.re)
    };
    if minor.abs() >= SGN_TOL * mag {
        return Err(Error::SignUndefined(format!("{a} (genuinely complex)")));
    }
    Ok(SignValue::from_positive(major > 0.0))
}

/// Multi-argument sign: the sign of `prod(sqrt_conv(a_i)) / sqrt_conv(prod(a_i))`
/// for nonzero real arguments, which closes to `(-1)^floor(alpha/2)` where
/// `alpha` counts the negative arguments.
pub fn msgn(args: &[f64]) -> Result<SignValue> {
    if args.is_empty() {
        return Err(Error::MsgnZeroArgument);
    }
    let mut negatives = 0usize;
    for &a in args {
        if a == 0.0 || !a.is_finite() {
            return Err(Error::MsgnZeroArgument);
        }
        if a < 0.0 {
            negatives += 1;
        }
    }
    Ok(SignValue::from_positive(negatives / 2 % 2 == 0))
}

/// The defining expression for [`msgn`]: the product of the individual roots
/// divided by the root of the product. Kept as an independent route so tests
/// can cross-check the closed form.
pub fn msgn_by_roots(args: &[f64]) -> Result<ComplexMeasure> {
    if args.is_empty() {
        return Err(Error::MsgnZeroArgument);
    }
    let mut numerator = Complex64::new(1.0, 0.0);
    let mut product = 1.0;
    for &a in args {
        if a == 0.0 || !a.is_finite() {
            return Err(Error::MsgnZeroArgument);
        }
        numerator *= sqrt_conv(a);
        product *= a;
    }
    Ok(numerator / sqrt_conv(product))
}

/// Inverse hyperbolic cosine normalized to the strip `Re z >= 0`,
/// `Im z in [0, pi]`.
///
/// Computed as `log(q + sqrt(q-1) * sqrt(q+1))` with principal square roots
/// and logarithm. For real `q` and for `q` in the closed upper half-plane the
/// result lies in the half-strip above; inputs in the open lower half-plane
/// land in the conjugate strip `Im z in [-pi, 0)` (the half-strip does not
/// cover them), and `cosh` of the result still reproduces `q`.
pub fn arccosh_strip(q: ComplexMeasure) -> ComplexMeasure {
    let one = Complex64::new(1.0, 0.0);
    let w = (q + (q - one).sqrt() * (q + one).sqrt()).ln();
    let eps = 1e-14 * (1.0 + w.norm());
    if w.re < -eps {
        -w
    } else if w.re.abs() <= eps && w.im < 0.0 {
        -w
    } else {
        w
    }
}

/// Real arccosh with clamping for arguments that round slightly below 1.
pub(crate) fn arccosh_real(t: f64) -> f64 {
    let t = t.max(1.0);
    (t + (t * t - 1.0).sqrt()).ln()
}
