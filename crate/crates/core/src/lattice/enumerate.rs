//! Fincke–Pohst enumeration of short lattice vectors.
//!
//! Pruning runs in `f64` on the LDL factors with a little slack; the accepted
//! vectors are then re-checked with an exact integer norm, so the counts are
//! exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{common_denominator, ldl_decompose, to_f64, RationalMatrix};
use crate::geometry::ln_unit_ball_volume;

use super::Lattice;

pub const DEFAULT_VECTOR_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShellOptions {
    /// Keep one representative of each `±v` pair.
    pub representatives: bool,
    /// Refuse when the predicted number of vectors exceeds this.
    pub max_vectors: u64,
}

impl Default for ShellOptions {
    fn default() -> Self {
        Self { representatives: false, max_vectors: DEFAULT_VECTOR_CAP }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Shell {
    pub norm_sq: BigRational,
    /// Number of vectors of this norm, counting `v` and `−v` separately.
    pub count: u64,
    /// Basis coordinates, one per `±v` pair, when requested.
    pub representatives: Option<Vec<Vec<i64>>>,
}

/// A positive-definite Gram matrix scaled to integers, with floating LDL
/// factors for pruning.
#[derive(Debug, Clone)]
pub struct IntegralForm {
    denominator: BigInt,
    gram: Vec<Vec<i128>>,
    diag: Vec<f64>,
    /// `lower[i][k]` for `i > k`.
    lower: Vec<Vec<f64>>,
    det: f64,
}

impl IntegralForm {
    pub fn new(gram: &RationalMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Dimension("Gram matrix must be square".into()));
        }
        let ldl = ldl_decompose(gram)?;
        let denominator = common_denominator(gram.entries());
        let den = BigRational::from_integer(denominator.clone());
        let n = gram.rows();
        let mut g = vec![vec![0i128; n]; n];
        for (i, row) in g.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (&gram[(i, j)] * &den)
                    .to_integer()
                    .to_i128()
                    .ok_or_else(|| Error::Resource("Gram entries too large for enumeration".into()))?;
            }
        }
        let scale = to_f64(&den);
        let diag: Vec<f64> = ldl.diag.iter().map(|d| to_f64(d) * scale).collect();
        let lower = (0..n).map(|i| (0..n).map(|k| to_f64(&ldl.lower[(i, k)])).collect()).collect();
        let det = diag.iter().product();
        Ok(Self { denominator, gram: g, diag, lower, det })
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    /// Norms of this form are `numerator / denominator`.
    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// Largest integer numerator `b` with `b / denominator ≤ max_norm_sq`.
    pub fn numerator_bound(&self, max_norm_sq: &BigRational) -> Result<i128> {
        let b = (max_norm_sq * BigRational::from_integer(self.denominator.clone())).floor().to_integer();
        b.to_i128().ok_or_else(|| Error::Resource("norm bound too large".into()))
    }

    pub fn norm_numerator(&self, x: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, row) in self.gram.iter().enumerate() {
            let mut t = 0i128;
            for (j, g) in row.iter().enumerate() {
                t += g * x[j] as i128;
            }
            s += t * x[i] as i128;
        }
        s
    }
}

/// Gaussian-heuristic estimate of the number of vectors of norm `≤ bound`.
pub fn predicted_count(form: &IntegralForm, bound_numerator: i128) -> f64 {
    let n = form.dim();
    if bound_numerator <= 0 {
        return 1.0;
    }
    let r = (bound_numerator as f64).sqrt();
    let ln = ln_unit_ball_volume(n) + n as f64 * r.ln() - 0.5 * form.det.ln();
    ln.exp().max(1.0)
}

struct Search<'a, F: FnMut(&[i64], i128)> {
    form: &'a IntegralForm,
    bound: i128,
    bound_f: f64,
    x: Vec<i64>,
    visit: F,
}

impl<F: FnMut(&[i64], i128)> Search<'_, F> {
    /// Chooses `x[k]` given `x[k+1..]`; `used` is the float norm of the
    /// fixed tail, `exact` its exact numerator, `top_zero` whether the tail
    /// is all zero.
    fn level(&mut self, k: usize, used: f64, exact: i128, top_zero: bool) {
        let n = self.form.dim();
        let mut center = 0.0;
        let mut cross = 0i128;
        for i in k + 1..n {
            center -= self.form.lower[i][k] * self.x[i] as f64;
            cross += self.form.gram[k][i] * self.x[i] as i128;
        }
        let d = self.form.diag[k];
        let room = self.bound_f - used;
        if room < 0.0 {
            return;
        }
        let half = (room / d).sqrt();
        let mut lo = (center - half).ceil() as i64;
        let hi = (center + half).floor() as i64;
        if top_zero {
            lo = lo.max(0);
        }
        let gkk = self.form.gram[k][k];
        for v in lo..=hi {
            let dv = v as f64 - center;
            let used_k = used + d * dv * dv;
            if used_k > self.bound_f {
                continue;
            }
            let vi = v as i128;
            let exact_k = exact + gkk * vi * vi + 2 * vi * cross;
            self.x[k] = v;
            let zero = top_zero && v == 0;
            if k == 0 {
                if !zero && exact_k <= self.bound {
                    (self.visit)(&self.x, exact_k);
                }
            } else {
                self.level(k - 1, used_k, exact_k, zero);
            }
        }
        self.x[k] = 0;
    }
}

/// Calls `visit(coords, numerator)` once for each pair `±v` of nonzero
/// vectors with norm numerator `≤ bound_numerator`. The sign is fixed so the
/// last nonzero coordinate is positive.
pub fn for_each_short_vector(
    form: &IntegralForm,
    bound_numerator: i128,
    visit: impl FnMut(&[i64], i128),
) {
    let n = form.dim();
    if n == 0 || bound_numerator <= 0 {
        return;
    }
    let b = bound_numerator as f64;
    let mut search = Search {
        form,
        bound: bound_numerator,
        bound_f: b * (1.0 + 1e-9) + 1e-6,
        x: vec![0; n],
        visit,
    };
    search.level(n - 1, 0.0, 0, true);
}

/// All vectors of squared length `≤ max_norm_sq`, grouped by exact norm in
/// increasing order. The zero vector forms the first shell.
pub fn enumerate_shells(l: &Lattice, max_norm_sq: &BigRational) -> Result<Vec<Shell>> {
    enumerate_shells_with(l.gram(), max_norm_sq, &ShellOptions::default())
}

pub fn enumerate_shells_with(
    gram: &RationalMatrix,
    max_norm_sq: &BigRational,
    opts: &ShellOptions,
) -> Result<Vec<Shell>> {
    if max_norm_sq.is_negative() {
        return Err(Error::Domain("maximum norm must be nonnegative".into()));
    }
    let form = IntegralForm::new(gram)?;
    let bound = form.numerator_bound(max_norm_sq)?;
    let predicted = predicted_count(&form, bound);
    if predicted > opts.max_vectors as f64 {
        return Err(Error::Resource(format!(
            "about {predicted:.3e} vectors predicted, cap is {}",
            opts.max_vectors
        )));
    }
    let mut table: BTreeMap<i128, (u64, Vec<Vec<i64>>)> = BTreeMap::new();
    for_each_short_vector(&form, bound, |x, num| {
        let entry = table.entry(num).or_default();
        entry.0 += 2;
        if opts.representatives {
            entry.1.push(x.to_vec());
        }
    });
    let den = form.denominator().clone();
    let mut shells = vec![Shell {
        norm_sq: BigRational::zero(),
        count: 1,
        representatives: opts.representatives.then(|| vec![vec![0; form.dim()]]),
    }];
    shells.extend(table.into_iter().map(|(num, (count, reps))| Shell {
        norm_sq: BigRational::new(BigInt::from(num), den.clone()),
        count,
        representatives: opts.representatives.then_some(reps),
    }));
    Ok(shells)
}

/// Squared length of the shortest nonzero vector of the form.
pub fn minimum_norm(gram: &RationalMatrix) -> Result<BigRational> {
    let form = IntegralForm::new(gram)?;
    let bound = (0..form.dim()).map(|i| form.gram[i][i]).min().unwrap_or(0);
    let mut best: Option<i128> = None;
    for_each_short_vector(&form, bound, |_, num| {
        if best.is_none_or(|b| num < b) {
            best = Some(num);
        }
    });
    let best = best.ok_or_else(|| Error::Dimension("empty lattice has no minimum".into()))?;
    Ok(BigRational::new(BigInt::from(best), form.denominator().clone()))
}
