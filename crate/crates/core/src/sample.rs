//! Deterministic random generators for stratified verification runs.
//!
//! Everything here is seeded explicitly (ChaCha8), so identical seeds yield
//! identical reports. Parameter ranges default to moderate values that keep
//! configurations away from degenerate duals.

use crate::lorentz::{vec3, LorentzIsometry, MinkowskiVector};
use crate::metric::DistanceCase;
use crate::triangle::ExtTriangle;
use crate::{Error, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Seeded RNG used across the verification suites.
pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

const MAX_RETRIES: usize = 500;

/// Random timelike vector of `R^{2,1}`, upper sheet unless `any_sheet`.
pub fn random_timelike<R: Rng + ?Sized>(rng: &mut R, any_sheet: bool) -> MinkowskiVector {
    let rho: f64 = rng.gen_range(0.1..2.0);
    let theta = rng.gen_range(0.0..TAU);
    let scale = rng.gen_range(0.5..2.0);
    let sign = if any_sheet && rng.gen_bool(0.5) { -1.0 } else { 1.0 };
    vec3(
        sign * scale * rho.cosh(),
        scale * rho.sinh() * theta.cos(),
        scale * rho.sinh() * theta.sin(),
    )
}

/// Random spacelike vector of `R^{2,1}`.
pub fn random_spacelike<R: Rng + ?Sized>(rng: &mut R) -> MinkowskiVector {
    let rho: f64 = rng.gen_range(-1.5..1.5);
    let theta = rng.gen_range(0.0..TAU);
    let scale = rng.gen_range(0.5..2.0);
    vec3(
        scale * rho.sinh(),
        scale * rho.cosh() * theta.cos(),
        scale * rho.cosh() * theta.sin(),
    )
}

/// Random lightlike vector of `R^{2,1}` on either half of the cone.
pub fn random_lightlike<R: Rng + ?Sized>(rng: &mut R) -> MinkowskiVector {
    let theta = rng.gen_range(0.0..TAU);
    let scale = rng.gen_range(0.5..2.0);
    let sign = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
    vec3(sign * scale, scale * theta.cos(), scale * theta.sin())
}

/// Random element of the identity component of the isometry group of
/// `R^{2,1}` with rapidity bounded by `max_rapidity`.
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R, max_rapidity: f64) -> LorentzIsometry {
    LorentzIsometry::random_proper(2, rng, max_rapidity)
}

/// Draw a pair of vectors landing in the requested branch of the distance
/// case table.
pub fn pair_in_case<R: Rng + ?Sized>(
    rng: &mut R,
    case: DistanceCase,
) -> Result<(MinkowskiVector, MinkowskiVector)> {
    for _ in 0..MAX_RETRIES {
        let candidate = match case {
            DistanceCase::ProportionalLightlike => {
                let x = random_lightlike(rng);
                let lambda = rng.gen_range(0.3..3.0) * if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
                Some((x.clone(), x.scaled(lambda)))
            }
            DistanceCase::IndependentLightlike => {
                let x = random_lightlike(rng);
                let y = random_lightlike(rng);
                Some((x, y))
            }
            DistanceCase::LightlikeOrthogonal => {
                // y lives on the tangent plane of the cone along x.
                let theta = rng.gen_range(0.0..TAU);
                let s = rng.gen_range(0.5..2.0);
                let x = vec3(s, s * theta.cos(), s * theta.sin());
                let m = vec3(0.0, -theta.sin(), theta.cos());
                let alpha = rng.gen_range(-2.0..2.0);
                let beta = rng.gen_range(0.3..2.0) * if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
                let y = &x.scaled(alpha) + &m.scaled(beta);
                Some((x, y))
            }
            DistanceCase::LightlikeSkew => {
                let x = random_lightlike(rng);
                let y = if rng.gen_bool(0.5) {
                    random_timelike(rng, true)
                } else {
                    random_spacelike(rng)
                };
                Some((x, y))
            }
            DistanceCase::TimelikeTimelike => {
                Some((random_timelike(rng, true), random_timelike(rng, true)))
            }
            DistanceCase::TimelikeSpacelike => {
                Some((random_timelike(rng, true), random_spacelike(rng)))
            }
            DistanceCase::SpacelikeSecant | DistanceCase::SpacelikeUltraparallel => {
                Some((random_spacelike(rng), random_spacelike(rng)))
            }
            DistanceCase::SpacelikeTangent => {
                let a = rng.gen_range(0.3..2.0);
                let b = rng.gen_range(0.3..2.0);
                let flip = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
                let l1 = rng.gen_range(0.5..2.0);
                let l2 = rng.gen_range(0.5..2.0);
                let g = random_isometry(rng, 1.0);
                let x = g.apply(&vec3(a, a, 1.0).scaled(l1));
                let y = g.apply(&vec3(b, b, flip).scaled(l2));
                Some((x, y))
            }
        };
        if let Some((x, y)) = candidate {
            if let Ok(d) = crate::metric::extended_distance(&x, &y) {
                if d.case == case {
                    return Ok((x, y));
                }
            }
        }
    }
    Err(Error::SamplingFailed(MAX_RETRIES))
}

/// Vertex-causal-class strata used by the triangle law batteries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleStratum {
    /// Three timelike vertices: the classical hyperbolic stratum.
    Timelike3,
    /// Two timelike vertices, one spacelike.
    Timelike2Spacelike1,
    /// One timelike vertex, two spacelike.
    Timelike1Spacelike2,
    /// Three spacelike vertices with every side line crossing the disk.
    Spacelike3Secant,
    /// Three spacelike vertices with every side of equator type.
    Spacelike3Equator,
}

impl TriangleStratum {
    pub const ALL: [TriangleStratum; 5] = [
        TriangleStratum::Timelike3,
        TriangleStratum::Timelike2Spacelike1,
        TriangleStratum::Timelike1Spacelike2,
        TriangleStratum::Spacelike3Secant,
        TriangleStratum::Spacelike3Equator,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TriangleStratum::Timelike3 => "3-timelike",
            TriangleStratum::Timelike2Spacelike1 => "2-timelike-1-spacelike",
            TriangleStratum::Timelike1Spacelike2 => "1-timelike-2-spacelike",
            TriangleStratum::Spacelike3Secant => "3-spacelike-secant",
            TriangleStratum::Spacelike3Equator => "3-spacelike-equator",
        }
    }
}

fn well_separated(thetas: &[f64], min_gap: f64) -> bool {
    for (i, &a) in thetas.iter().enumerate() {
        for &b in &thetas[i + 1..] {
            let gap = (a - b).rem_euclid(TAU);
            if gap.min(TAU - gap) < min_gap {
                return false;
            }
        }
    }
    true
}

fn stratum_vertices<R: Rng + ?Sized>(
    rng: &mut R,
    stratum: TriangleStratum,
) -> Option<[MinkowskiVector; 3]> {
    let thetas = [
        rng.gen_range(0.0..TAU),
        rng.gen_range(0.0..TAU),
        rng.gen_range(0.0..TAU),
    ];
    if !well_separated(&thetas, 0.35) {
        return None;
    }
    let timelike = |rng: &mut R, theta: f64| {
        let rho: f64 = rng.gen_range(0.15..1.8);
        vec3(rho.cosh(), rho.sinh() * theta.cos(), rho.sinh() * theta.sin())
    };
    let spacelike_outer = |rng: &mut R, theta: f64| {
        let rho: f64 = rng.gen_range(0.35..1.8);
        vec3(rho.sinh(), rho.cosh() * theta.cos(), rho.cosh() * theta.sin())
    };
    let spacelike_equator = |rng: &mut R, theta: f64| {
        let rho: f64 = rng.gen_range(-0.15..0.15);
        vec3(rho.sinh(), rho.cosh() * theta.cos(), rho.cosh() * theta.sin())
    };
    Some(match stratum {
        TriangleStratum::Timelike3 => [
            timelike(rng, thetas[0]),
            timelike(rng, thetas[1]),
            timelike(rng, thetas[2]),
        ],
        TriangleStratum::Timelike2Spacelike1 => [
            spacelike_outer(rng, thetas[0]),
            timelike(rng, thetas[1]),
            timelike(rng, thetas[2]),
        ],
        TriangleStratum::Timelike1Spacelike2 => [
            timelike(rng, thetas[0]),
            spacelike_outer(rng, thetas[1]),
            spacelike_outer(rng, thetas[2]),
        ],
        TriangleStratum::Spacelike3Secant => {
            // Poles of three pairwise ultraparallel lines; random ray flips
            // exercise both ultraparallel branches.
            let mut vs = [
                vec3(0.0, 0.0, 0.0),
                vec3(0.0, 0.0, 0.0),
                vec3(0.0, 0.0, 0.0),
            ];
            let base = rng.gen_range(0.0..TAU);
            for (k, v) in vs.iter_mut().enumerate() {
                let theta = base + k as f64 * TAU / 3.0 + rng.gen_range(-0.22..0.22);
                let rho: f64 = rng.gen_range(0.8..1.8);
                let flip = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
                *v = vec3(rho.sinh(), rho.cosh() * theta.cos(), rho.cosh() * theta.sin())
                    .scaled(flip);
            }
            vs
        }
        TriangleStratum::Spacelike3Equator => [
            spacelike_equator(rng, thetas[0]),
            spacelike_equator(rng, thetas[1]),
            spacelike_equator(rng, thetas[2]),
        ],
    })
}

fn stratum_matches(stratum: TriangleStratum, t: &ExtTriangle) -> bool {
    let cases = t.side_cases();
    match stratum {
        TriangleStratum::Timelike3 => t.stratum().timelike_vertices == 3,
        TriangleStratum::Timelike2Spacelike1 => t.stratum().timelike_vertices == 2,
        TriangleStratum::Timelike1Spacelike2 => t.stratum().timelike_vertices == 1,
        TriangleStratum::Spacelike3Secant => {
            t.stratum().timelike_vertices == 0
                && cases
                    .iter()
                    .all(|c| *c == DistanceCase::SpacelikeUltraparallel)
        }
        TriangleStratum::Spacelike3Equator => {
            t.stratum().timelike_vertices == 0
                && cases.iter().all(|c| *c == DistanceCase::SpacelikeSecant)
        }
    }
}

/// Sample a measured triangle in the requested stratum, rejecting
/// near-degenerate configurations.
pub fn triangle_in_stratum<R: Rng + ?Sized>(
    rng: &mut R,
    stratum: TriangleStratum,
) -> Result<ExtTriangle> {
    for _ in 0..MAX_RETRIES {
        let Some([v1, v2, v3]) = stratum_vertices(rng, stratum) else {
            continue;
        };
        let Ok(t) = ExtTriangle::measure(v1, v2, v3) else {
            continue;
        };
        if stratum_matches(stratum, &t) && !t.is_thin(0.05) {
            return Ok(t);
        }
    }
    Err(Error::SamplingFailed(MAX_RETRIES))
}

/// A right-angled classical triangle: legs `a`, `b` meeting at the disk
/// center, hypotenuse opposite. Vertex order is `(v1, v2, v3)` with the right
/// angle at `v3`.
pub fn right_triangle(a: f64, b: f64) -> [MinkowskiVector; 3] {
    [
        vec3(b.cosh(), 0.0, b.sinh()),
        vec3(a.cosh(), a.sinh(), 0.0),
        vec3(1.0, 0.0, 0.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::extended_distance;

    #[test]
    fn pair_samplers_hit_their_cases() {
        let mut r = rng(11);
        for case in [
            DistanceCase::ProportionalLightlike,
            DistanceCase::IndependentLightlike,
            DistanceCase::LightlikeOrthogonal,
            DistanceCase::LightlikeSkew,
            DistanceCase::TimelikeTimelike,
            DistanceCase::TimelikeSpacelike,
            DistanceCase::SpacelikeSecant,
            DistanceCase::SpacelikeUltraparallel,
            DistanceCase::SpacelikeTangent,
        ] {
            for _ in 0..20 {
                let (x, y) = pair_in_case(&mut r, case).unwrap();
                assert_eq!(extended_distance(&x, &y).unwrap().case, case);
            }
        }
    }

    #[test]
    fn stratum_samplers_hit_their_strata() {
        let mut r = rng(12);
        for stratum in TriangleStratum::ALL {
            for _ in 0..10 {
                let t = triangle_in_stratum(&mut r, stratum).unwrap();
                assert!(stratum_matches(stratum, &t), "stratum {stratum:?}");
            }
        }
    }
}
