//! Ball volumes, spherical caps, slanted planar packings and randomized
//! saturated packings on a torus.

use std::f64::consts::PI;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{rat, ratio, to_f64};

/// Angle subtended at a sphere's center by the radius of a touching sphere
/// of the same size: `arcsin(1/2)`, in every dimension.
pub const TOUCHING_HALF_ANGLE: f64 = PI / 6.0;

/// `v_d r^d`, with `v_d = coefficient · π^pi_power` exact.
#[derive(Debug, Clone, PartialEq)]
pub struct BallVolume {
    pub d: usize,
    pub r: f64,
    pub value: f64,
    pub coefficient: BigRational,
    /// `⌊d/2⌋`.
    pub pi_power: u32,
    /// Same volume with `Γ(d/2 + 1)` replaced by Stirling's formula.
    pub stirling: f64,
    pub stirling_rel_error: f64,
}

/// Exact `v_d / π^⌊d/2⌋` from `v_1 = 2`, `v_2 = π`, `v_d = v_{d−2} · 2π/d`.
pub fn unit_ball_coefficient(d: usize) -> Result<(BigRational, u32)> {
    if d < 1 {
        return Err(Error::Domain("ball volume needs d >= 1".into()));
    }
    let (mut c, mut p, start) = if d % 2 == 1 { (rat(2), 0, 1) } else { (rat(1), 1, 2) };
    let mut k = start;
    while k < d {
        k += 2;
        c *= ratio(2, k as i64);
        p += 1;
    }
    Ok((c, p))
}

pub fn ball_volume(d: usize, r: f64) -> Result<BallVolume> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    let (coefficient, pi_power) = unit_ball_coefficient(d)?;
    let unit = to_f64(&coefficient) * PI.powi(pi_power as i32);
    let value = unit * r.powi(d as i32);
    let s = d as f64 / 2.0;
    let ln_stirling = 0.5 * (2.0 * PI * s).ln() + s * (s.ln() - 1.0);
    let stirling = ((s * PI.ln() - ln_stirling).exp()) * r.powi(d as i32);
    let stirling_rel_error = ((stirling - value) / value).abs();
    Ok(BallVolume { d, r, value, coefficient, pi_power, stirling, stirling_rel_error })
}

/// `ln Γ(s + 1)` for `s` a nonnegative integer or half-integer, by summing
/// logarithms of the factors.
pub fn ln_gamma_plus_one(s: f64) -> Result<f64> {
    let two_s = (2.0 * s).round();
    if s < 0.0 || (two_s - 2.0 * s).abs() > 1e-12 {
        return Err(Error::Domain(format!("{s} is not a nonnegative half-integer")));
    }
    let two_s = two_s as u64;
    let mut acc = 0.0;
    let mut x = s;
    while x > 0.25 {
        acc += x.ln();
        x -= 1.0;
    }
    if two_s % 2 == 1 {
        // Γ(1/2) = √π
        acc += 0.5 * PI.ln();
    }
    Ok(acc)
}

/// `|Stirling(s) / Γ(s+1) − 1|` with Stirling `sqrt(2πs) (s/e)^s`.
pub fn stirling_relative_error(s: f64) -> Result<f64> {
    let exact = ln_gamma_plus_one(s)?;
    let approx = 0.5 * (2.0 * PI * s).ln() + s * (s.ln() - 1.0);
    Ok((approx - exact).exp_m1().abs())
}

/// `ln v_n`, used for enumeration size estimates.
pub fn ln_unit_ball_volume(n: usize) -> f64 {
    let s = n as f64 / 2.0;
    s * PI.ln() - ln_gamma_plus_one(s).unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapBound {
    /// Fraction of the sphere's area in the cap above height `h`.
    pub fraction: f64,
    pub reciprocal: f64,
    /// `⌊reciprocal⌋`: at most this many disjoint such caps fit.
    pub max_caps: Option<u64>,
}

/// Cap above height `h = hOverR · r` covers `(1 − hOverR)/2` of the sphere.
pub fn cap_fraction_and_contact_bound(h_over_r: f64) -> Result<CapBound> {
    if !(-1.0..=1.0).contains(&h_over_r) {
        return Err(Error::Domain(format!("h/r = {h_over_r} is outside [-1, 1]")));
    }
    let fraction = (1.0 - h_over_r) / 2.0;
    let reciprocal = 1.0 / fraction;
    let max_caps = reciprocal.is_finite().then(|| reciprocal.floor() as u64);
    Ok(CapBound { fraction, reciprocal, max_caps })
}

/// The planar lattice `(2r, 0), (2r cos φ, 2r sin φ)`, compared with the
/// square packing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlantedPacking {
    pub phi: f64,
    /// Distance between rows relative to the square arrangement.
    pub row_factor: f64,
    pub density: f64,
}

pub fn slanted_packing(phi: f64) -> Result<SlantedPacking> {
    if !(PI / 3.0 - 1e-12..=PI / 2.0 + 1e-12).contains(&phi) {
        return Err(Error::Domain("slant angle must lie in [π/3, π/2]".into()));
    }
    let (v1, v2) = ([2.0, 0.0], [2.0 * phi.cos(), 2.0 * phi.sin()]);
    let area = (v1[0] * v2[1] - v1[1] * v2[0]).abs();
    let row_factor = area / v1[0] / 2.0;
    Ok(SlantedPacking { phi, row_factor, density: PI / area })
}

pub const DEFAULT_STREAK: u64 = 5000;
pub const COVERAGE_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SaturationResult {
    pub d: usize,
    pub side: f64,
    pub r: f64,
    pub seed: u64,
    pub streak: u64,
    pub count: usize,
    pub density: f64,
    /// Fraction of fresh uniform points within `2r` of a center.
    pub coverage: f64,
    pub centers: Vec<Vec<f64>>,
}

fn torus_dist_sq(a: &[f64], b: &[f64], side: f64) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = (x - y).abs() % side;
            let d = d.min(side - d);
            d * d
        })
        .sum()
}

fn sample(rng: &mut ChaCha8Rng, d: usize, side: f64) -> Vec<f64> {
    (0..d).map(|_| rng.random::<f64>() * side).collect()
}

/// Random sequential packing of radius-`r` balls in the torus `[0, L)^d`,
/// stopped after `streak` consecutive rejected candidates.
pub fn saturate_random(d: usize, side: f64, r: f64, seed: u64, streak: u64) -> Result<SaturationResult> {
    if !(1..=3).contains(&d) {
        return Err(Error::Domain(format!("saturation supports d in 1..3, got {d}")));
    }
    if !(r > 0.0) || !(side >= 8.0 * r) {
        return Err(Error::Domain("need r > 0 and L >= 8r".into()));
    }
    if streak == 0 {
        return Err(Error::Domain("rejection streak must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min_sq = 4.0 * r * r;
    let mut centers: Vec<Vec<f64>> = Vec::new();
    let mut misses = 0u64;
    while misses < streak {
        let p = sample(&mut rng, d, side);
        if centers.iter().all(|c| torus_dist_sq(c, &p, side) >= min_sq) {
            centers.push(p);
            misses = 0;
        } else {
            misses += 1;
        }
    }
    let covered = (0..COVERAGE_SAMPLES)
        .filter(|_| {
            let p = sample(&mut rng, d, side);
            centers.iter().any(|c| torus_dist_sq(c, &p, side) < min_sq)
        })
        .count();
    let density = centers.len() as f64 * ball_volume(d, r)?.value / side.powi(d as i32);
    Ok(SaturationResult {
        d,
        side,
        r,
        seed,
        streak,
        count: centers.len(),
        density,
        coverage: covered as f64 / COVERAGE_SAMPLES as f64,
        centers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn small_volumes() {
        assert!(rel(ball_volume(1, 1.0).unwrap().value, 2.0) < 1e-15);
        assert!(rel(ball_volume(2, 1.0).unwrap().value, PI) < 1e-15);
        assert!(rel(ball_volume(3, 1.0).unwrap().value, 4.0 * PI / 3.0) < 1e-15);
        assert!(rel(ball_volume(8, 1.0).unwrap().value, PI.powi(4) / 24.0) < 1e-15);
    }

    #[test]
    fn exact_coefficients() {
        assert_eq!(unit_ball_coefficient(3).unwrap(), (ratio(4, 3), 1));
        assert_eq!(unit_ball_coefficient(8).unwrap(), (ratio(1, 24), 4));
        assert_eq!(unit_ball_coefficient(5).unwrap(), (ratio(8, 15), 2));
    }

    #[test]
    fn radius_scaling() {
        let v = ball_volume(5, 1.7).unwrap();
        assert!(rel(v.value, ball_volume(5, 1.0).unwrap().value * 1.7f64.powi(5)) < 1e-14);
    }

    #[test]
    fn half_integer_gamma() {
        assert!((ln_gamma_plus_one(0.5).unwrap() - (PI.sqrt() / 2.0).ln()).abs() < 1e-15);
        assert!((ln_gamma_plus_one(4.0).unwrap() - 24f64.ln()).abs() < 1e-14);
        assert!(ln_gamma_plus_one(0.3).is_err());
    }

    #[test]
    fn stirling_is_close_at_large_s() {
        let e = stirling_relative_error(1000.0).unwrap();
        assert!(e < 1e-4 && e > 1e-5, "{e}");
    }

    #[test]
    fn contact_bound_in_three_dimensions() {
        let c = cap_fraction_and_contact_bound(3f64.sqrt() / 2.0).unwrap();
        assert!(rel(c.reciprocal, 4.0 / (2.0 - 3f64.sqrt())) < 1e-12);
        assert_eq!(c.max_caps, Some(14));
        assert_eq!(cap_fraction_and_contact_bound(1.0).unwrap().fraction, 0.0);
        assert_eq!(cap_fraction_and_contact_bound(-1.0).unwrap().fraction, 1.0);
        assert!(cap_fraction_and_contact_bound(1.5).is_err());
    }

    #[test]
    fn slanted_rows() {
        let s = slanted_packing(5.0 * PI / 12.0).unwrap();
        assert!(rel(s.row_factor, (5.0 * PI / 12.0).sin()) < 1e-12);
        let h = slanted_packing(PI / 3.0).unwrap();
        assert!(rel(h.density, PI / (2.0 * 3f64.sqrt())) < 1e-12);
        assert!(rel(slanted_packing(PI / 2.0).unwrap().density, PI / 4.0) < 1e-12);
    }

    #[test]
    fn touching_angle() {
        assert!((0.5f64.asin() - TOUCHING_HALF_ANGLE).abs() < 1e-15);
    }

    #[test]
    fn saturation_is_reproducible() {
        let a = saturate_random(2, 20.0, 1.0, 7, 2000).unwrap();
        let b = saturate_random(2, 20.0, 1.0, 7, 2000).unwrap();
        assert_eq!(a, b);
        for (i, p) in a.centers.iter().enumerate() {
            for q in &a.centers[i + 1..] {
                assert!(torus_dist_sq(p, q, 20.0) >= 4.0);
            }
        }
    }

    #[test]
    fn saturation_preconditions() {
        assert!(saturate_random(4, 20.0, 1.0, 0, 10).is_err());
        assert!(saturate_random(2, 5.0, 1.0, 0, 10).is_err());
    }
}
