//! Truncated `q`-series: Eisenstein series and lattice theta series.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::rat;
use crate::lattice::{enumerate_shells, Lattice};

/// Coefficients of `q^0, …, q^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Dimension("a q-series needs at least the constant term".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The constant series 1 at the given order.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = BigInt::one();
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// Cauchy product truncated at the smaller order.
pub fn qseries_mul(a: &QSeries, b: &QSeries) -> QSeries {
    let n = a.order().min(b.order());
    let coeffs = (0..=n)
        .map(|k| (0..=k).map(|i| &a.coeffs[i] * &b.coeffs[k - i]).sum())
        .collect();
    QSeries { coeffs }
}

/// `B_k` from `Σ_{j<n+1} C(n+1, j) B_j = 0`, `B_0 = 1`.
pub fn bernoulli(k: usize) -> Result<BigRational> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::Domain(format!("B_{k}: k must be even and at least 2")));
    }
    let mut b: Vec<BigRational> = vec![rat(1)];
    for n in 1..=k {
        let s: BigRational = (0..n)
            .map(|j| BigRational::from_integer(binomial(BigInt::from(n + 1), BigInt::from(j))) * &b[j])
            .sum();
        b.push(-s / rat(n as i64 + 1));
    }
    Ok(b.swap_remove(k))
}

/// `σ_p(n) = Σ_{d | n} d^p`.
pub fn divisor_sum(n: u64, p: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(p);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(p);
            }
        }
        d += 1;
    }
    s
}

/// `E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) q^n` for `k ∈ {2, 4, 6}`.
pub fn eisenstein(k: usize, order: usize) -> Result<QSeries> {
    if !matches!(k, 2 | 4 | 6) {
        return Err(Error::Domain(format!("E_{k} is not supported; use k = 2, 4 or 6")));
    }
    let factor = -rat(2 * k as i64) / bernoulli(k)?;
    if !factor.is_integer() {
        return Err(Error::Domain(format!("E_{k} does not have integral coefficients")));
    }
    let factor = factor.to_integer();
    let mut coeffs = vec![BigInt::one()];
    coeffs.extend((1..=order as u64).map(|n| &factor * divisor_sum(n, k as u32 - 1)));
    Ok(QSeries { coeffs })
}

/// `Σ_v q^{‖v‖²/2}` for an even lattice.
pub fn theta_series(l: &Lattice, order: usize) -> Result<QSeries> {
    if !l.is_even() {
        return Err(Error::Domain(format!("{} is not an even lattice", l.name())));
    }
    let shells = enumerate_shells(l, &rat(2 * order as i64))?;
    let mut coeffs = vec![BigInt::zero(); order + 1];
    for s in shells {
        let n = (s.norm_sq.to_integer() / 2u32)
            .to_usize()
            .ok_or_else(|| Error::Domain("shell norm out of range".into()))?;
        coeffs[n] += s.count;
    }
    Ok(QSeries { coeffs })
}
