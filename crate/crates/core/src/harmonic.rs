//! Fourier analysis on `Z/m`, the Fourier series of a circular cap, and the
//! Poisson summation identity for Gaussians on a lattice.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::to_f64;
use crate::geometry::ball_volume;
use crate::lattice::{dual, enumerate_shells, Lattice};

/// Samples `f(0), …, f(m−1)` of a function on `Z/m`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSamples {
    pub values: Vec<Complex64>,
}

/// `f̂(0), …, f̂(m−1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoeffs {
    pub coeffs: Vec<Complex64>,
}

impl PeriodicSamples {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Dimension("need m >= 1 samples".into()));
        }
        Ok(Self { values })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn m(&self) -> usize {
        self.values.len()
    }
}

impl FourierCoeffs {
    pub fn m(&self) -> usize {
        self.coeffs.len()
    }
}

/// `e^{2πi·num/m}` with `num` reduced mod `m` first.
fn root_of_unity(num: i64, m: usize) -> Complex64 {
    let r = num.rem_euclid(m as i64) as f64;
    Complex64::from_polar(1.0, 2.0 * PI * r / m as f64)
}

/// `f̂(k) = (1/m) Σ_j f(j) e^{−2πijk/m}`.
pub fn dft_zm(f: &PeriodicSamples) -> FourierCoeffs {
    let m = f.m();
    let coeffs = (0..m)
        .map(|k| {
            let s: Complex64 = f
                .values
                .iter()
                .enumerate()
                .map(|(j, v)| v * root_of_unity(-((j * k) as i64), m))
                .sum();
            s / m as f64
        })
        .collect();
    FourierCoeffs { coeffs }
}

/// `f(j) = Σ_k f̂(k) e^{2πijk/m}`.
pub fn inverse_dft_zm(c: &FourierCoeffs) -> PeriodicSamples {
    let m = c.m();
    let values = (0..m)
        .map(|j| {
            c.coeffs
                .iter()
                .enumerate()
                .map(|(k, v)| v * root_of_unity((j * k) as i64, m))
                .sum()
        })
        .collect();
    PeriodicSamples { values }
}

pub const SYMMETRY_TOL: f64 = 1e-10;
pub const SPECTRUM_TOL: f64 = 1e-9;

/// Bochner's criterion on `Z/m`: `f` is positive definite iff every `f̂(k)`
/// is nonnegative.
pub fn is_positive_definite_function(f: &PeriodicSamples) -> Result<bool> {
    let m = f.m();
    for j in 0..m {
        let a = f.values[(m - j) % m];
        let b = f.values[j].conj();
        if (a - b).norm() > SYMMETRY_TOL {
            return Err(Error::Contract(format!("f(-{j}) is not the conjugate of f({j})")));
        }
    }
    Ok(dft_zm(f).coeffs.iter().all(|c| c.re >= -SPECTRUM_TOL))
}

/// Fourier series of the indicator of `|φ| < φ0` on the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct CapSeries {
    pub phi0: f64,
    /// `coeffs[0] = φ0/π`, `coeffs[k] = sin(kφ0)/(kπ)`.
    pub coeffs: Vec<f64>,
}

pub fn cap_fourier(phi0: f64, terms: usize) -> Result<CapSeries> {
    if !(phi0 > 0.0 && phi0 < PI) {
        return Err(Error::Domain(format!("cap angle {phi0} is outside (0, π)")));
    }
    let coeffs = (0..=terms)
        .map(|k| if k == 0 { phi0 / PI } else { (k as f64 * phi0).sin() / (k as f64 * PI) })
        .collect();
    Ok(CapSeries { phi0, coeffs })
}

impl CapSeries {
    /// `c_0 + 2 Σ_{k≥1} c_k cos(kφ)`.
    pub fn partial_sum(&self, phi: f64) -> f64 {
        self.coeffs[0]
            + 2.0 * self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * (k as f64 * phi).cos()).sum::<f64>()
    }

    /// Indicator value, ½ on the jump.
    pub fn step(&self, phi: f64) -> f64 {
        let a = phi.abs();
        if (a - self.phi0).abs() < 1e-15 {
            0.5
        } else if a < self.phi0 {
            1.0
        } else {
            0.0
        }
    }

    /// `(φ, partial sum)` on `points` equally spaced angles in `[−π, π]`.
    pub fn grid(&self, points: usize) -> Vec<(f64, f64)> {
        let n = points.max(2);
        (0..n)
            .map(|i| {
                let phi = -PI + 2.0 * PI * i as f64 / (n - 1) as f64;
                (phi, self.partial_sum(phi))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_error: f64,
    /// Estimated mass of the omitted terms on each side.
    pub lhs_tail: f64,
    pub rhs_tail: f64,
    pub dual_cutoff: f64,
}

pub const POISSON_TAIL_TOL: f64 = 1e-14;

/// Heuristic `Σ_{‖v‖² > c} e^{−πa‖v‖²}` from the vector density, doubled.
fn gaussian_tail(dim: usize, covolume: f64, a: f64, c: f64) -> f64 {
    let vd = ball_volume(dim, 1.0).map(|b| b.value).unwrap_or(f64::NAN);
    let half = dim as f64 / 2.0;
    // dN = v_d (d/2) n^{d/2−1} dn / covolume
    let step = 1.0 / (64.0 * PI * a);
    let mut n = c;
    let mut acc = 0.0;
    loop {
        let w = vd * half * n.powf(half - 1.0) * (-PI * a * n).exp() / covolume;
        acc += w * step;
        n += step;
        if n > c + 2.0 && w * step < acc * 1e-18 {
            break;
        }
    }
    2.0 * acc
}

fn gaussian_sum(l: &Lattice, a: f64, cutoff: f64) -> Result<f64> {
    let max = BigRational::from_float(cutoff)
        .ok_or_else(|| Error::Domain(format!("bad cutoff {cutoff}")))?;
    let shells = enumerate_shells(l, &max)?;
    // Sum small terms first.
    Ok(shells.iter().rev().map(|s| s.count as f64 * (-PI * a * to_f64(&s.norm_sq)).exp()).sum())
}

/// Both sides of `Σ_Λ e^{−πα‖v‖²} = α^{−d/2} Δ^{−1/2} Σ_{Λ∨} e^{−π‖k‖²/α}`,
/// truncated at `‖v‖² ≤ c` and `‖k‖² ≤ α²c`.
pub fn poisson_gaussian_check(l: &Lattice, alpha: f64, cutoff: f64) -> Result<PoissonCheck> {
    if !(alpha > 0.0) {
        return Err(Error::Domain("alpha must be positive".into()));
    }
    if !(cutoff > 0.0) {
        return Err(Error::Domain("cutoff must be positive".into()));
    }
    let d = l.dim();
    let disc = to_f64(l.discriminant());
    let prefactor = alpha.powf(-(d as f64) / 2.0) / disc.sqrt();
    let dual_cutoff = alpha * alpha * cutoff;
    let lhs_tail = gaussian_tail(d, disc.sqrt(), alpha, cutoff);
    let rhs_tail = prefactor * gaussian_tail(d, 1.0 / disc.sqrt(), 1.0 / alpha, dual_cutoff);
    if lhs_tail > POISSON_TAIL_TOL || rhs_tail > POISSON_TAIL_TOL {
        return Err(Error::Precision(format!(
            "cutoff {cutoff} leaves tails {lhs_tail:.2e} / {rhs_tail:.2e}, above {POISSON_TAIL_TOL:e}"
        )));
    }
    let lhs = gaussian_sum(l, alpha, cutoff)?;
    let rhs = prefactor * gaussian_sum(&dual(l)?, 1.0 / alpha, dual_cutoff)?;
    Ok(PoissonCheck { lhs, rhs, abs_error: (lhs - rhs).abs(), lhs_tail, rhs_tail, dual_cutoff })
}

/// Smallest integer cutoff for which [`poisson_gaussian_check`] accepts.
pub fn poisson_default_cutoff(l: &Lattice, alpha: f64) -> f64 {
    let d = l.dim();
    let disc = to_f64(l.discriminant());
    let prefactor = alpha.powf(-(d as f64) / 2.0) / disc.sqrt();
    (1..=400)
        .map(f64::from)
        .find(|&c| {
            gaussian_tail(d, disc.sqrt(), alpha, c) <= POISSON_TAIL_TOL / 2.0
                && prefactor * gaussian_tail(d, 1.0 / disc.sqrt(), 1.0 / alpha, alpha * alpha * c)
                    <= POISSON_TAIL_TOL / 2.0
        })
        .unwrap_or(400.0)
}
