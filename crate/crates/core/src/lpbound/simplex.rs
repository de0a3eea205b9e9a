//! Dense revised simplex method with Bland's rule.
//!
//! Problems are small (tens of rows, up to a few thousand columns), so the
//! basis is refactorized from scratch at every iteration.

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-10;
const FEAS_TOL: f64 = 1e-9;

/// `min cᵀx` subject to `Ax = b`, `x ≥ 0`, with `A` given by columns.
#[derive(Debug, Clone)]
pub struct StandardLp {
    pub columns: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    /// Simplex multipliers `π` with `c − Aᵀπ ≥ 0` at the optimum.
    pub duals: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
    /// Final basis, usable as a warm start after appending columns; empty
    /// when an artificial variable is still basic.
    pub basis: Vec<usize>,
}

struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(cols: &[&[f64]]) -> Result<Self> {
        let n = cols.len();
        let mut lu = vec![0.0; n * n];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                lu[i * n + j] = col[i];
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n).max_by(|&a, &b| lu[a * n + k].abs().total_cmp(&lu[b * n + k].abs())).unwrap();
            if lu[p * n + k].abs() < 1e-14 {
                return Err(Error::Solver("basis matrix became singular".into()));
            }
            if p != k {
                for j in 0..n {
                    lu.swap(p * n + j, k * n + j);
                }
                perm.swap(p, k);
            }
            let piv = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / piv;
                lu[i * n + k] = f;
                if f != 0.0 {
                    for j in k + 1..n {
                        lu[i * n + j] -= f * lu[k * n + j];
                    }
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    /// Solves `B x = b`.
    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.lu[i * n + k] * y[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] -= self.lu[i * n + k] * y[k];
            }
            y[i] /= self.lu[i * n + i];
        }
        y
    }

    /// Solves `Bᵀ x = c`.
    fn solve_transpose(&self, c: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut z = c.to_vec();
        for i in 0..n {
            for k in 0..i {
                z[i] -= self.lu[k * n + i] * z[k];
            }
            z[i] /= self.lu[i * n + i];
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                z[i] -= self.lu[k * n + i] * z[k];
            }
        }
        let mut out = vec![0.0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            out[p] = z[i];
        }
        out
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

enum Outcome {
    Optimal,
    Unbounded,
}

/// Runs simplex iterations from a feasible `basis`. Columns with index in
/// `blocked` never enter.
fn iterate(
    columns: &[Vec<f64>],
    b: &[f64],
    c: &[f64],
    basis: &mut [usize],
    blocked: &dyn Fn(usize) -> bool,
    iterations: &mut usize,
    limit: usize,
) -> Result<Outcome> {
    let m = b.len();
    let n = columns.len();
    let mut in_basis = vec![false; n];
    basis.iter().for_each(|&j| in_basis[j] = true);
    loop {
        if *iterations >= limit {
            return Err(Error::Solver(format!("no convergence after {limit} iterations")));
        }
        let cols: Vec<&[f64]> = basis.iter().map(|&j| columns[j].as_slice()).collect();
        let lu = Lu::factor(&cols)?;
        let xb = lu.solve(b);
        let cb: Vec<f64> = basis.iter().map(|&j| c[j]).collect();
        let pi = lu.solve_transpose(&cb);
        // Bland: lowest-index column with negative reduced cost enters.
        let entering = (0..n).find(|&j| {
            !in_basis[j] && !blocked(j) && {
                let scale = 1.0 + c[j].abs();
                c[j] - dot(&columns[j], &pi) < -COST_TOL * scale
            }
        });
        let Some(q) = entering else { return Ok(Outcome::Optimal) };
        let u = lu.solve(&columns[q]);
        // Ratio test; ties go to the lowest basic variable index.
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            if u[i] > PIVOT_TOL {
                let ratio = xb[i].max(0.0) / u[i];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        if ratio < best - 1e-12 || (ratio <= best + 1e-12 && basis[i] < basis[r]) {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
        }
        let Some((r, _)) = leave else { return Ok(Outcome::Unbounded) };
        in_basis[basis[r]] = false;
        in_basis[q] = true;
        basis[r] = q;
        *iterations += 1;
    }
}

/// Solves a standard-form LP. `warm` is a feasible basis from an earlier
/// solve of the same rows (extra columns may have been appended since).
pub fn solve_standard(lp: &StandardLp, warm: Option<&[usize]>) -> Result<LpSolution> {
    let m = lp.b.len();
    let n = lp.columns.len();
    if lp.c.len() != n {
        return Err(Error::Dimension("cost vector length differs from column count".into()));
    }
    if let Some(bad) = lp.columns.iter().position(|col| col.len() != m) {
        return Err(Error::Dimension(format!("column {bad} has the wrong length")));
    }
    let limit = 200 * (m + n) + 10_000;
    let mut iterations = 0;
    if let Some(w) = warm {
        if w.len() == m && w.iter().all(|&j| j < n) {
            let mut basis = w.to_vec();
            let cols: Vec<&[f64]> = basis.iter().map(|&j| lp.columns[j].as_slice()).collect();
            if let Ok(lu) = Lu::factor(&cols) {
                if lu.solve(&lp.b).iter().all(|&x| x >= -FEAS_TOL) {
                    return finish(&lp.columns, &lp.b, &lp.c, &mut basis, &|_| false, &mut iterations, limit);
                }
            }
        }
    }

    // Phase 1: artificial identity columns, rows flipped so b ≥ 0.
    let sign: Vec<f64> = lp.b.iter().map(|&v| if v < 0.0 { -1.0 } else { 1.0 }).collect();
    let mut columns: Vec<Vec<f64>> =
        lp.columns.iter().map(|col| col.iter().zip(&sign).map(|(a, s)| a * s).collect()).collect();
    let b: Vec<f64> = lp.b.iter().zip(&sign).map(|(a, s)| a * s).collect();
    for i in 0..m {
        let mut e = vec![0.0; m];
        e[i] = 1.0;
        columns.push(e);
    }
    let mut c1 = vec![0.0; n];
    c1.extend(std::iter::repeat_n(1.0, m));
    let mut basis: Vec<usize> = (n..n + m).collect();
    let is_art = |j: usize| j >= n;
    iterate(&columns, &b, &c1, &mut basis, &|_| false, &mut iterations, limit)?;
    let cols: Vec<&[f64]> = basis.iter().map(|&j| columns[j].as_slice()).collect();
    let xb = Lu::factor(&cols)?.solve(&b);
    let infeas: f64 = basis.iter().zip(&xb).filter(|(j, _)| is_art(**j)).map(|(_, x)| *x).sum();
    let bnorm = b.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    if infeas > FEAS_TOL * bnorm {
        return Err(Error::Solver(format!("problem is infeasible (phase-1 residual {infeas:.3e})")));
    }
    // Drive remaining artificials out where possible.
    for r in 0..m {
        if !is_art(basis[r]) {
            continue;
        }
        let cols: Vec<&[f64]> = basis.iter().map(|&j| columns[j].as_slice()).collect();
        let lu = Lu::factor(&cols)?;
        let in_basis: Vec<usize> = basis.clone();
        if let Some(q) = (0..n).find(|&j| !in_basis.contains(&j) && lu.solve(&columns[j])[r].abs() > PIVOT_TOL) {
            basis[r] = q;
            iterations += 1;
        }
    }
    let mut c2 = lp.c.clone();
    c2.extend(std::iter::repeat_n(0.0, m));
    let mut sol = finish(&columns, &b, &c2, &mut basis, &is_art, &mut iterations, limit)?;
    // Rows were flipped for phase 1; undo that on the multipliers.
    sol.duals.iter_mut().zip(&sign).for_each(|(d, s)| *d *= s);
    sol.x.truncate(n);
    if sol.basis.iter().any(|&j| is_art(j)) {
        sol.basis.clear();
    }
    Ok(sol)
}

fn finish(
    columns: &[Vec<f64>],
    b: &[f64],
    c: &[f64],
    basis: &mut [usize],
    blocked: &dyn Fn(usize) -> bool,
    iterations: &mut usize,
    limit: usize,
) -> Result<LpSolution> {
    match iterate(columns, b, c, basis, blocked, iterations, limit)? {
        Outcome::Unbounded => return Err(Error::Solver("problem is unbounded".into())),
        Outcome::Optimal => {}
    }
    let cols: Vec<&[f64]> = basis.iter().map(|&j| columns[j].as_slice()).collect();
    let lu = Lu::factor(&cols)?;
    let xb = lu.solve(b);
    let cb: Vec<f64> = basis.iter().map(|&j| c[j]).collect();
    let duals = lu.solve_transpose(&cb);
    let mut x = vec![0.0; columns.len()];
    for (&j, &v) in basis.iter().zip(&xb) {
        x[j] = v.max(0.0);
    }
    let objective = x.iter().zip(c).map(|(a, b)| a * b).sum();
    Ok(LpSolution { x, duals, objective, iterations: *iterations, basis: basis.to_vec() })
}

/// `min gᵀx` over free `x` subject to `G x ≥ p` and `E x = e`, solved
/// through its dual in standard form.
#[derive(Debug, Clone)]
pub struct FreeLp {
    pub objective: Vec<f64>,
    pub ge_rows: Vec<Vec<f64>>,
    pub ge_rhs: Vec<f64>,
    pub eq_rows: Vec<Vec<f64>>,
    pub eq_rhs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreeLpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
    /// Basis of the dual problem; column indices are stable when inequality
    /// rows are appended.
    pub dual_basis: Vec<usize>,
}

impl FreeLp {
    /// Dual columns are ordered: equality `z⁺`, equality `z⁻`, then one per
    /// inequality row, so appending inequalities keeps earlier indices.
    fn dual(&self) -> StandardLp {
        let mut columns = Vec::new();
        let mut c = Vec::new();
        for (row, &e) in self.eq_rows.iter().zip(&self.eq_rhs) {
            columns.push(row.clone());
            c.push(-e);
            columns.push(row.iter().map(|v| -v).collect());
            c.push(e);
        }
        for (row, &p) in self.ge_rows.iter().zip(&self.ge_rhs) {
            columns.push(row.clone());
            c.push(-p);
        }
        StandardLp { columns, b: self.objective.clone(), c }
    }

    pub fn solve(&self, warm: Option<&[usize]>) -> Result<FreeLpSolution> {
        let n = self.objective.len();
        if self.ge_rows.iter().chain(&self.eq_rows).any(|r| r.len() != n) {
            return Err(Error::Dimension("constraint row length differs from variable count".into()));
        }
        if self.ge_rows.len() != self.ge_rhs.len() || self.eq_rows.len() != self.eq_rhs.len() {
            return Err(Error::Dimension("right-hand side length mismatch".into()));
        }
        let dual = self.dual();
        let sol = solve_standard(&dual, warm).map_err(|e| match e {
            Error::Solver(msg) if msg.contains("infeasible") => {
                Error::Solver("bound problem is unbounded below (its dual is infeasible)".into())
            }
            Error::Solver(msg) if msg.contains("unbounded") => {
                Error::Solver("bound problem is infeasible (its dual is unbounded)".into())
            }
            other => other,
        })?;
        let x: Vec<f64> = sol.duals.iter().map(|v| -v).collect();
        let objective = dot(&self.objective, &x);
        Ok(FreeLpSolution { x, objective, iterations: sol.iterations, dual_basis: sol.basis })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cols(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let n = rows[0].len();
        (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect()
    }

    #[test]
    fn small_standard_problem() {
        // min −x1 − x2 s.t. x1 + 2x2 + s1 = 4, 3x1 + x2 + s2 = 6
        let lp = StandardLp {
            columns: cols(&[vec![1.0, 2.0, 1.0, 0.0], vec![3.0, 1.0, 0.0, 1.0]]),
            b: vec![4.0, 6.0],
            c: vec![-1.0, -1.0, 0.0, 0.0],
        };
        let s = solve_standard(&lp, None).unwrap();
        assert!((s.objective + 2.8).abs() < 1e-12, "{s:?}");
        assert!((s.x[0] - 1.6).abs() < 1e-12 && (s.x[1] - 1.2).abs() < 1e-12);
        // Reduced costs are nonnegative at the optimum.
        for (j, col) in lp.columns.iter().enumerate() {
            assert!(lp.c[j] - dot(col, &s.duals) > -1e-12);
        }
    }

    #[test]
    fn beale_cycling_example_terminates() {
        // Cycles under Dantzig's rule with lowest-index tie breaking.
        let lp = StandardLp {
            columns: cols(&[
                vec![0.25, -8.0, -1.0, 9.0, 1.0, 0.0, 0.0],
                vec![0.5, -12.0, -0.5, 3.0, 0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
            ]),
            b: vec![0.0, 0.0, 1.0],
            c: vec![-0.75, 20.0, -0.5, 6.0, 0.0, 0.0, 0.0],
        };
        let s = solve_standard(&lp, None).unwrap();
        assert!((s.objective + 1.25).abs() < 1e-12, "{s:?}");
    }

    #[test]
    fn infeasible_and_unbounded() {
        let infeasible = StandardLp { columns: vec![vec![1.0], vec![1.0]], b: vec![-1.0], c: vec![1.0, 1.0] };
        assert!(matches!(solve_standard(&infeasible, None), Err(Error::Solver(m)) if m.contains("infeasible")));
        let unbounded = StandardLp { columns: vec![vec![1.0], vec![-1.0]], b: vec![1.0], c: vec![0.0, -1.0] };
        assert!(matches!(solve_standard(&unbounded, None), Err(Error::Solver(m)) if m.contains("unbounded")));
    }

    #[test]
    fn free_variables_with_inequalities() {
        // min x + y s.t. x ≥ 1, y ≥ 2, x + y ≥ 4, x − y = 0 → x = y = 2
        let lp = FreeLp {
            objective: vec![1.0, 1.0],
            ge_rows: vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]],
            ge_rhs: vec![1.0, 2.0, 4.0],
            eq_rows: vec![vec![1.0, -1.0]],
            eq_rhs: vec![0.0],
        };
        let s = lp.solve(None).unwrap();
        assert!((s.objective - 4.0).abs() < 1e-12);
        assert!((s.x[0] - 2.0).abs() < 1e-12 && (s.x[1] - 2.0).abs() < 1e-12, "{s:?}");
    }

    #[test]
    fn warm_start_after_adding_rows() {
        let mut lp = FreeLp {
            objective: vec![1.0, 1.0],
            ge_rows: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            ge_rhs: vec![1.0, 1.0],
            eq_rows: vec![],
            eq_rhs: vec![],
        };
        let first = lp.solve(None).unwrap();
        assert!((first.objective - 2.0).abs() < 1e-12);
        lp.ge_rows.push(vec![1.0, 2.0]);
        lp.ge_rhs.push(5.0);
        let cold = lp.solve(None).unwrap();
        let warm = lp.solve(Some(&first.dual_basis)).unwrap();
        assert!((cold.objective - 3.0).abs() < 1e-12);
        assert!((warm.objective - cold.objective).abs() < 1e-12);
    }

    #[test]
    fn unbounded_bound_problem() {
        let lp = FreeLp {
            objective: vec![1.0],
            ge_rows: vec![vec![-1.0]],
            ge_rhs: vec![0.0],
            eq_rows: vec![],
            eq_rhs: vec![],
        };
        assert!(matches!(lp.solve(None), Err(Error::Solver(_))));
    }
}
