//! Triangle area by angle defect and by the side-length product formula,
//! plus the hyperbolic/spherical correspondence checks.

use crate::triangle::ExtTriangle;
use crate::{ComplexMeasure, Error, Model, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Both area evaluations for one triangle.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AreaResult {
    /// Angle defect: `pi - A - B - C` (hyperbolic) or `A + B + C - pi`
    /// (spherical).
    pub s_defect: ComplexMeasure,
    /// The quarter-angle side-product formula.
    pub s_sides: ComplexMeasure,
    /// Semiperimeter `(a + b + c) / 2`.
    pub semiperimeter: ComplexMeasure,
}

/// Area of a measured triangle by angle defect.
pub fn area_defect(t: &ExtTriangle, model: Model) -> ComplexMeasure {
    let [a, b, c] = t.angles();
    let sum = a + b + c;
    match model {
        Model::HyperbolicSphere => Complex64::new(PI, 0.0) - sum,
        Model::SphericalSphere => sum - Complex64::new(PI, 0.0),
    }
}

/// Area from the side lengths alone:
/// `tan^2(S/4) = tanh(p/2) tanh((p-a)/2) tanh((p-b)/2) tanh((p-c)/2)` on the
/// hyperbolic sphere, with `tan` replacing `tanh` on the spherical one.
///
/// The square root and arctangent take their principal branches, which are
/// continuous from the classical region where the product is a positive
/// real.
pub fn area_sides(
    a: ComplexMeasure,
    b: ComplexMeasure,
    c: ComplexMeasure,
    model: Model,
) -> Result<ComplexMeasure> {
    let p = (a + b + c) / 2.0;
    let factors = [p, p - a, p - b, p - c];
    let mut product = Complex64::new(1.0, 0.0);
    for f in factors {
        let half = f / 2.0;
        let factor = match model {
            Model::HyperbolicSphere => half.tanh(),
            Model::SphericalSphere => half.tan(),
        };
        if !factor.re.is_finite() || !factor.im.is_finite() {
            return Err(Error::Degenerate(format!(
                "side-product factor at {half} is not finite"
            )));
        }
        product *= factor;
    }
    Ok(4.0 * product.sqrt().atan())
}

/// Angle defect computed from side lengths alone: the companion of
/// [`area_sides`], with each angle read off the cosine law through the
/// principal arccosine.
pub fn area_defect_from_sides(
    a: ComplexMeasure,
    b: ComplexMeasure,
    c: ComplexMeasure,
    model: Model,
) -> Result<ComplexMeasure> {
    let sides = [a, b, c];
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..3 {
        let (j, k) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let (x, y, z) = (sides[i], sides[j], sides[k]);
        let ratio = match model {
            Model::HyperbolicSphere => {
                let denom = y.sinh() * z.sinh();
                if denom.norm() < 1e-12 {
                    return Err(Error::Degenerate("cosine-law denominator vanishes".into()));
                }
                (y.cosh() * z.cosh() - x.cosh()) / denom
            }
            Model::SphericalSphere => {
                let denom = y.sin() * z.sin();
                if denom.norm() < 1e-12 {
                    return Err(Error::Degenerate("cosine-law denominator vanishes".into()));
                }
                (x.cos() - y.cos() * z.cos()) / denom
            }
        };
        sum += ratio.acos();
    }
    Ok(match model {
        Model::HyperbolicSphere => Complex64::new(PI, 0.0) - sum,
        Model::SphericalSphere => sum - Complex64::new(PI, 0.0),
    })
}

/// Convenience pairing of both evaluations on a measured triangle. The side
/// formula consumes hyperbolic side lengths for the hyperbolic model and
/// spherical ones (`-i` times) for the spherical model.
pub fn area_pair(t: &ExtTriangle, model: Model) -> Result<AreaResult> {
    let sides = match model {
        Model::HyperbolicSphere => t.side_values(),
        Model::SphericalSphere => t.spherical_sides(),
    };
    let [a, b, c] = sides;
    Ok(AreaResult {
        s_defect: area_defect(t, model),
        s_sides: area_sides(a, b, c, model)?,
        semiperimeter: (a + b + c) / 2.0,
    })
}

/// Which law a correspondence check exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LawKind {
    Cosine,
    DualCosine,
    Sine,
    Area,
}

impl LawKind {
    pub const ALL: [LawKind; 4] = [
        LawKind::Cosine,
        LawKind::DualCosine,
        LawKind::Sine,
        LawKind::Area,
    ];
}

/// Cross-model correspondence residual on one measured triangle.
///
/// Evaluates the hyperbolic form of the law at the hyperbolic lengths and the
/// spherical form at `-i` times them, and reports how far the pair is from
/// the exact algebraic relation connecting the two (`f_S = -f_H` for the
/// cosine law, `f_S = f_H` for the dual law, `f_S = -i f_H` for the sine law,
/// equal side-products for the areas). For the laws even in the lengths the
/// substitution `i -> -i` must not matter; that symmetry residual is
/// included in the returned value.
pub fn correspondence_check(law: LawKind, t: &ExtTriangle) -> f64 {
    let s = t.side_values();
    let ang = t.angles();
    let minus_i = -Complex64::i();
    let ss: Vec<ComplexMeasure> = s.iter().map(|x| minus_i * x).collect();
    let ss_conj: Vec<ComplexMeasure> = s.iter().map(|x| Complex64::i() * x).collect();

    match law {
        LawKind::Cosine => {
            let f_h = ang[2].cos() * s[0].sinh() * s[1].sinh()
                - (s[0].cosh() * s[1].cosh() - s[2].cosh());
            let f_s = ang[2].cos() * ss[0].sin() * ss[1].sin()
                - (ss[2].cos() - ss[0].cos() * ss[1].cos());
            let f_s_conj = ang[2].cos() * ss_conj[0].sin() * ss_conj[1].sin()
                - (ss_conj[2].cos() - ss_conj[0].cos() * ss_conj[1].cos());
            (f_s + f_h).norm().max((f_s - f_s_conj).norm())
        }
        LawKind::DualCosine => {
            let f_h = s[2].cosh() * ang[0].sin() * ang[1].sin()
                - (ang[0].cos() * ang[1].cos() + ang[2].cos());
            let f_s = ss[2].cos() * ang[0].sin() * ang[1].sin()
                - (ang[0].cos() * ang[1].cos() + ang[2].cos());
            let f_s_conj = ss_conj[2].cos() * ang[0].sin() * ang[1].sin()
                - (ang[0].cos() * ang[1].cos() + ang[2].cos());
            (f_s - f_h).norm().max((f_s - f_s_conj).norm())
        }
        LawKind::Sine => {
            let f_h = s[0].sinh() * ang[1].sin() - s[1].sinh() * ang[0].sin();
            let f_s = ss[0].sin() * ang[1].sin() - ss[1].sin() * ang[0].sin();
            (f_s + Complex64::i() * f_h).norm()
        }
        LawKind::Area => {
            let tanh_product = |sides: &[ComplexMeasure]| {
                let p = (sides[0] + sides[1] + sides[2]) / 2.0;
                (p / 2.0).tanh()
                    * ((p - sides[0]) / 2.0).tanh()
                    * ((p - sides[1]) / 2.0).tanh()
                    * ((p - sides[2]) / 2.0).tanh()
            };
            let tan_product = |sides: &[ComplexMeasure]| {
                let p = (sides[0] + sides[1] + sides[2]) / 2.0;
                (p / 2.0).tan()
                    * ((p - sides[0]) / 2.0).tan()
                    * ((p - sides[1]) / 2.0).tan()
                    * ((p - sides[2]) / 2.0).tan()
            };
            let t_h = tanh_product(&s);
            let t_s = tan_product(&ss);
            let t_s_conj = tan_product(&ss_conj);
            (t_h - t_s).norm().max((t_s - t_s_conj).norm())
        }
    }
}
