//! Reduction of planar lattices to the standard fundamental domain
//! `|Re τ| ≤ ½, |τ| ≥ 1, Im τ > 0`.

use num_complex::Complex64;

use crate::error::{Error, Result};

const EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduced2d {
    /// Always `(1, 0)` after normalization.
    pub v: [f64; 2],
    /// The second vector, equal to `τ`.
    pub v_prime: [f64; 2],
    pub tau: Complex64,
}

/// Reduces the lattice spanned by `a` and `b` up to scaling and isometry.
pub fn reduce_2d(a: [f64; 2], b: [f64; 2]) -> Result<Reduced2d> {
    let za = Complex64::new(a[0], a[1]);
    let zb = Complex64::new(b[0], b[1]);
    let cross = a[0] * b[1] - a[1] * b[0];
    if za.norm() == 0.0 || cross.abs() <= EPS * za.norm() * zb.norm() {
        return Err(Error::Rank("basis vectors are linearly dependent".into()));
    }
    Ok(reduce_tau(zb / za))
}

/// Same reduction from a Gram matrix `[[a, b], [b, c]]`.
pub fn reduce_2d_gram(a: f64, b: f64, c: f64) -> Result<Reduced2d> {
    let disc = a * c - b * b;
    if a <= 0.0 || disc <= EPS * a * c.abs() {
        return Err(Error::Rank("Gram matrix is not positive definite".into()));
    }
    Ok(reduce_tau(Complex64::new(b / a, disc.sqrt() / a)))
}

fn reduce_tau(mut tau: Complex64) -> Reduced2d {
    if tau.im < 0.0 {
        tau = -tau;
    }
    for _ in 0..10_000 {
        tau.re -= tau.re.round();
        if tau.norm_sqr() < 1.0 - EPS {
            tau = -tau.inv();
        } else {
            break;
        }
    }
    // Boundary gluing: Re τ = −½ is identified with ½, and the arc is folded
    // onto Re τ ≥ 0.
    if (tau.re + 0.5).abs() < EPS {
        tau.re = 0.5;
    }
    if (tau.norm_sqr() - 1.0).abs() < EPS && tau.re < 0.0 {
        tau.re = -tau.re;
    }
    if tau.re.abs() < EPS {
        tau.re = 0.0;
    }
    Reduced2d { v: [1.0, 0.0], v_prime: [tau.re, tau.im], tau }
}
