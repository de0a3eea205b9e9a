//! Linear-programming upper bounds on the center density of sphere packings.
//!
//! Candidate functions are radial combinations of Laguerre–Gaussians
//! `φ_k(t) = L_k^{(d/2−1)}(2πt²) e^{−πt²}`, which are Fourier eigenfunctions
//! in `R^d` with eigenvalue `(−1)^k`. The sign conditions are imposed on
//! sample grids, so the bounds are numerical and uncertified.

pub mod simplex;

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use simplex::FreeLp;

pub const UNCERTIFIED: &str = "numerical bound (uncertified)";

/// Sign-condition violations above this are flagged in results.
pub const VIOLATION_FLAG: f64 = 1e-6;

/// `L_0^{(ν)}(x), …, L_K^{(ν)}(x)` by the three-term recurrence.
pub fn laguerre_all(nu: f64, max_degree: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_degree + 1);
    out.push(1.0);
    if max_degree >= 1 {
        out.push(1.0 + nu - x);
    }
    for k in 1..max_degree {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + nu - x) * out[k] - (kf + nu) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

fn nu(d: usize) -> f64 {
    d as f64 / 2.0 - 1.0
}

/// `φ_k(t)` for `k = 0, …, K`.
pub fn eigenbasis_all(d: usize, max_degree: usize, t: f64) -> Vec<f64> {
    let x = 2.0 * PI * t * t;
    let g = (-PI * t * t).exp();
    laguerre_all(nu(d), max_degree, x).into_iter().map(|l| l * g).collect()
}

pub fn eigenbasis_eval(d: usize, k: usize, t: f64) -> f64 {
    eigenbasis_all(d, k, t)[k]
}

/// `φ_k(0) = L_k^{(ν)}(0) = C(k+ν, k)`.
fn values_at_zero(d: usize, max_degree: usize) -> Vec<f64> {
    let nu = nu(d);
    let mut out = vec![1.0];
    for k in 1..=max_degree {
        let prev = out[k - 1];
        out.push(prev * (k as f64 + nu) / k as f64);
    }
    out
}

/// `f(t) = Σ c_k φ_k(t/λ)`, whose transform is
/// `f̂(s) = λ^d Σ (−1)^k c_k φ_k(λs)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunctionRep {
    pub d: usize,
    pub coefficients: Vec<f64>,
    /// `λ`.
    pub scale: f64,
}

impl RadialFunctionRep {
    pub fn new(d: usize, coefficients: Vec<f64>) -> Result<Self> {
        Self::with_scale(d, coefficients, 1.0)
    }

    pub fn with_scale(d: usize, coefficients: Vec<f64>, scale: f64) -> Result<Self> {
        if d < 1 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        if coefficients.is_empty() {
            return Err(Error::Dimension("need at least one coefficient".into()));
        }
        if !(scale > 0.0) {
            return Err(Error::Domain("scale must be positive".into()));
        }
        Ok(Self { d, coefficients, scale })
    }

    pub fn max_degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, t: f64) -> f64 {
        let phi = eigenbasis_all(self.d, self.max_degree(), t / self.scale);
        phi.iter().zip(&self.coefficients).map(|(p, c)| p * c).sum()
    }

    pub fn eval_fourier(&self, s: f64) -> f64 {
        let phi = eigenbasis_all(self.d, self.max_degree(), s * self.scale);
        let sum: f64 = phi
            .iter()
            .zip(&self.coefficients)
            .enumerate()
            .map(|(k, (p, c))| if k % 2 == 0 { p * c } else { -p * c })
            .sum();
        self.scale.powi(self.d as i32) * sum
    }
}

/// Sample grids in units where the sign-change radius is `√2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub spacing: f64,
    /// `f̂ ≥ 0` is imposed on `[0, pos_max]`.
    pub pos_max: f64,
    /// `f ≤ 0` is imposed on `[√2, neg_max]`.
    pub neg_max: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { spacing: SQRT_2 / 40.0, pos_max: 8.0, neg_max: 8.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    /// `max (−f̂)₊` relative to `f̂(0)`.
    pub max_pos_violation: f64,
    /// `max f₊` beyond `R`, relative to `f̂(0)`.
    pub max_neg_violation: f64,
    /// Radii where `f` changes sign or nearly vanishes, clusters merged.
    pub zeros_near: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpBoundResult {
    pub d: usize,
    pub r: f64,
    /// `f(0)/f̂(0)`, an upper bound on the center density.
    pub bound: f64,
    pub function: RadialFunctionRep,
    pub max_pos_violation: f64,
    pub max_neg_violation: f64,
    pub zeros_near: Vec<f64>,
    /// Set when a violation exceeds [`VIOLATION_FLAG`].
    pub flagged: bool,
    pub grid: GridSpec,
    pub constraints: usize,
    pub refinement_rounds: usize,
    pub iterations: usize,
    pub label: &'static str,
}

const SCAN_POINTS: usize = 16_001;
const REFINE_TOL: f64 = 1e-9;
const MAX_ROUNDS: usize = 40;

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn stepped(a: f64, b: f64, h: f64) -> Vec<f64> {
    let n = ((b - a) / h + 1e-9).floor() as usize;
    (0..=n).map(|i| a + h * i as f64).collect()
}

/// Rows of the normalized basis `ψ_k = φ_k / φ_k(0)`, optionally with the
/// `(−1)^k` Fourier signs.
fn basis_row(d: usize, max_degree: usize, at0: &[f64], t: f64, fourier: bool) -> Vec<f64> {
    eigenbasis_all(d, max_degree, t)
        .into_iter()
        .zip(at0)
        .enumerate()
        .map(|(k, (p, z))| if fourier && k % 2 == 1 { -p / z } else { p / z })
        .collect()
}

fn equilibrate(mut row: Vec<f64>) -> Vec<f64> {
    let m = row.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if m > 0.0 {
        row.iter_mut().for_each(|v| *v /= m);
    }
    row
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scan points where the relative violation has a local maximum above the
/// refinement tolerance. `sign` is +1 for `≥ 0` rows.
fn new_points(points: &[f64], rows: &[Vec<f64>], scales: &[f64], c: &[f64]) -> Vec<f64> {
    let v: Vec<f64> = rows.iter().zip(scales).map(|(r, s)| -dot(r, c) / s).collect();
    (0..v.len())
        .filter(|&i| {
            v[i] > REFINE_TOL
                && (i == 0 || v[i] >= v[i - 1])
                && (i + 1 == v.len() || v[i] >= v[i + 1])
        })
        .map(|i| points[i])
        .collect()
}

/// Minimizes `f(0)` subject to `f̂(0) = 1`, `f̂ ≥ 0` and `f ≤ 0` beyond `r`
/// on sample grids, with exchange rounds that add the worst violations of a
/// dense scan as new constraints.
pub fn solve_bound(d: usize, r: f64, max_degree: usize, grid: &GridSpec) -> Result<LpBoundResult> {
    if d < 1 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    if !(r > 0.0) {
        return Err(Error::Domain("radius must be positive".into()));
    }
    if max_degree < 4 {
        return Err(Error::Domain("degree must be at least 4".into()));
    }
    if !(grid.spacing > 0.0 && grid.spacing <= SQRT_2 / 20.0) {
        return Err(Error::Domain("grid spacing must be positive and at most R/20".into()));
    }
    if !(grid.pos_max > 0.0 && grid.neg_max > SQRT_2) {
        return Err(Error::Domain("grid ranges must extend past the sign-change radius".into()));
    }
    let k = max_degree;
    let lambda = r / SQRT_2;
    let at0 = values_at_zero(d, k);

    let pos_points = stepped(0.0, grid.pos_max, grid.spacing);
    let neg_points = stepped(SQRT_2, grid.neg_max, grid.spacing);
    let mut ge_rows: Vec<Vec<f64>> = pos_points
        .iter()
        .map(|&s| equilibrate(basis_row(d, k, &at0, s, true)))
        .chain(neg_points.iter().map(|&t| {
            equilibrate(basis_row(d, k, &at0, t, false).into_iter().map(|v| -v).collect())
        }))
        .collect();

    let scan_pos = linspace(0.0, grid.pos_max, SCAN_POINTS);
    let scan_neg = linspace(SQRT_2, grid.neg_max, SCAN_POINTS);
    // Scan rows are "≥ 0" rows; violations are negative values.
    let scan_pos_rows: Vec<Vec<f64>> = scan_pos.iter().map(|&s| basis_row(d, k, &at0, s, true)).collect();
    let scan_neg_rows: Vec<Vec<f64>> = scan_neg
        .iter()
        .map(|&t| basis_row(d, k, &at0, t, false).into_iter().map(|v| -v).collect())
        .collect();
    let row_scale = |r: &Vec<f64>| r.iter().fold(1e-300f64, |a, v| a.max(v.abs()));
    let pos_scales: Vec<f64> = scan_pos_rows.iter().map(row_scale).collect();
    let neg_scales: Vec<f64> = scan_neg_rows.iter().map(row_scale).collect();

    let objective = vec![1.0; k + 1];
    let fourier_at_0: Vec<f64> = (0..=k).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let mut warm: Option<Vec<usize>> = None;
    let mut iterations = 0;
    let mut rounds = 0;
    let solution = loop {
        let lp = FreeLp {
            objective: objective.clone(),
            ge_rhs: vec![0.0; ge_rows.len()],
            ge_rows: ge_rows.clone(),
            eq_rows: vec![fourier_at_0.clone()],
            eq_rhs: vec![1.0],
        };
        let sol = lp.solve(warm.as_deref())?;
        iterations += sol.iterations;
        let mut added = new_points(&scan_pos, &scan_pos_rows, &pos_scales, &sol.x);
        let added_neg = new_points(&scan_neg, &scan_neg_rows, &neg_scales, &sol.x);
        if (added.is_empty() && added_neg.is_empty()) || rounds >= MAX_ROUNDS {
            break sol;
        }
        rounds += 1;
        ge_rows.extend(added.drain(..).map(|s| equilibrate(basis_row(d, k, &at0, s, true))));
        ge_rows.extend(
            added_neg
                .into_iter()
                .map(|t| equilibrate(basis_row(d, k, &at0, t, false).into_iter().map(|v| -v).collect())),
        );
        warm = (!sol.dual_basis.is_empty()).then_some(sol.dual_basis);
    };

    let coefficients: Vec<f64> = solution.x.iter().zip(&at0).map(|(c, z)| c / z).collect();
    let function = RadialFunctionRep::with_scale(d, coefficients, lambda)?;
    let fhat0 = function.eval_fourier(0.0);
    let bound = function.eval(0.0) / fhat0;
    if !(bound > 0.0) {
        return Err(Error::Solver(format!("solver returned a nonpositive bound {bound}")));
    }
    let fine = grid.spacing / 4.0;
    let ver = verify_on(&function, r, fine * lambda, fine / lambda, grid.pos_max / lambda, grid.neg_max * lambda);
    Ok(LpBoundResult {
        d,
        r,
        bound,
        flagged: ver.max_pos_violation > VIOLATION_FLAG || ver.max_neg_violation > VIOLATION_FLAG,
        max_pos_violation: ver.max_pos_violation,
        max_neg_violation: ver.max_neg_violation,
        zeros_near: ver.zeros_near,
        function,
        grid: *grid,
        constraints: ge_rows.len(),
        refinement_rounds: rounds,
        iterations,
        label: UNCERTIFIED,
    })
}

/// Scans `f̂` on `[0, 8/λ]` and `f` on `[r, 8λ]` with the given spacing.
pub fn verify_function(rep: &RadialFunctionRep, r: f64, fine_spacing: f64) -> Result<Verification> {
    if !(fine_spacing > 0.0) || !(r > 0.0) {
        return Err(Error::Domain("spacing and radius must be positive".into()));
    }
    let l = rep.scale;
    Ok(verify_on(rep, r, fine_spacing, fine_spacing, 8.0 / l, (8.0 * l).max(r)))
}

fn verify_on(rep: &RadialFunctionRep, r: f64, h_direct: f64, h_fourier: f64, pos_max: f64, neg_max: f64) -> Verification {
    let norm = rep.eval_fourier(0.0).abs().max(1e-300);
    let max_pos_violation = stepped(0.0, pos_max, h_fourier)
        .into_iter()
        .map(|s| (-rep.eval_fourier(s)).max(0.0))
        .fold(0.0, f64::max)
        / norm;
    let max_neg_violation =
        stepped(r, neg_max, h_direct).into_iter().map(|t| rep.eval(t).max(0.0)).fold(0.0, f64::max) / norm;
    Verification { max_pos_violation, max_neg_violation, zeros_near: near_zeros(rep, h_direct, neg_max) }
}

/// Sign changes of `f` (refined by bisection) and local minima of `|f|`
/// below `1e-6 f(0)`, with candidates closer than 0.1 merged.
fn near_zeros(rep: &RadialFunctionRep, h: f64, t_max: f64) -> Vec<f64> {
    let f0 = rep.eval(0.0).abs();
    let ts = stepped(0.0, t_max, h);
    let vals: Vec<f64> = ts.iter().map(|&t| rep.eval(t)).collect();
    let mut cands = Vec::new();
    for i in 1..ts.len() {
        if vals[i - 1] != 0.0 && vals[i] != 0.0 && (vals[i - 1] > 0.0) != (vals[i] > 0.0) {
            let (mut a, mut b, fa) = (ts[i - 1], ts[i], vals[i - 1]);
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                if (rep.eval(m) > 0.0) == (fa > 0.0) {
                    a = m;
                } else {
                    b = m;
                }
            }
            cands.push(0.5 * (a + b));
        } else if vals[i] == 0.0
            || (i + 1 < ts.len()
                && vals[i].abs() <= vals[i - 1].abs()
                && vals[i].abs() <= vals[i + 1].abs()
                && vals[i].abs() < 1e-6 * f0
                && (vals[i] > 0.0) == (vals[i + 1] > 0.0))
        {
            cands.push(ts[i]);
        }
    }
    let mut out = Vec::new();
    let mut cluster: Vec<f64> = Vec::new();
    for t in cands {
        if cluster.last().is_some_and(|&l| t - l >= 0.1) {
            out.push(0.5 * (cluster[0] + cluster[cluster.len() - 1]));
            cluster.clear();
        }
        cluster.push(t);
    }
    if !cluster.is_empty() {
        out.push(0.5 * (cluster[0] + cluster[cluster.len() - 1]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_values() {
        assert_eq!(eigenbasis_eval(5, 0, 0.0), 1.0);
        assert!((eigenbasis_eval(3, 0, 0.7) - (-PI * 0.49f64).exp()).abs() < 1e-15);
        assert!((eigenbasis_eval(8, 1, 0.0) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn degree_two_matches_polynomial() {
        // L_2^{(3)}(x) = x²/2 − 5x + 10
        let x = 2.0 * PI;
        let direct = (x * x / 2.0 - 5.0 * x + 10.0) * (-PI).exp();
        assert!((eigenbasis_eval(8, 2, 1.0) - direct).abs() < 1e-12 * direct.abs().max(1.0));
    }

    #[test]
    fn gaussian_is_not_feasible() {
        let g = RadialFunctionRep::new(3, vec![1.0]).unwrap();
        let v = verify_function(&g, 1.0, 0.01).unwrap();
        assert!(v.max_neg_violation > 0.0);
        assert_eq!(v.max_pos_violation, 0.0);
    }

    #[test]
    fn one_dimensional_bound() {
        let res = solve_bound(1, 1.0, 20, &GridSpec::default()).unwrap();
        assert!((0.99..=1.01).contains(&res.bound), "{}", res.bound);
        assert!(!res.flagged, "{res:?}");
    }

    #[test]
    fn bad_parameters() {
        assert!(solve_bound(8, SQRT_2, 3, &GridSpec::default()).is_err());
        let coarse = GridSpec { spacing: 0.2, ..GridSpec::default() };
        assert!(solve_bound(8, SQRT_2, 10, &coarse).is_err());
    }
}
