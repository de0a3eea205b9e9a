//! Periodic point sets (unions of lattice translates) and the nine-dimensional
//! fluid diamond packing `D_9 ∪ (D_9 + γ + t e_i)`.

use crate::error::{Error, Result};
use crate::exact::to_f64;

use super::{construct_named, Lattice, NamedLattice};

#[derive(Debug, Clone)]
pub struct PeriodicPointSet {
    lattice: Lattice,
    translates: Vec<Vec<f64>>,
}

impl PeriodicPointSet {
    pub fn new(lattice: Lattice, translates: Vec<Vec<f64>>) -> Result<Self> {
        if translates.is_empty() {
            return Err(Error::Dimension("need at least one translate".into()));
        }
        if lattice.dim() != lattice.ambient() {
            return Err(Error::Dimension("periodic sets need a full-rank lattice".into()));
        }
        if let Some(t) = translates.iter().find(|t| t.len() != lattice.ambient()) {
            return Err(Error::Dimension(format!(
                "translate has length {}, ambient dimension is {}",
                t.len(),
                lattice.ambient()
            )));
        }
        let set = Self { lattice, translates };
        if set.min_distance()? <= 0.0 {
            return Err(Error::Contract("translates coincide modulo the lattice".into()));
        }
        Ok(set)
    }

    /// `D_9 ∪ (D_9 + γ_{i,t})`.
    pub fn fluid_diamond(i: usize, t: f64) -> Result<Self> {
        let d9 = construct_named(NamedLattice::D(9))?;
        Self::new(d9, vec![vec![0.0; 9], fluid_diamond_shift(i, t)?])
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn translates(&self) -> &[Vec<f64>] {
        &self.translates
    }

    /// Smallest distance between a point of translate `a` and one of `b`
    /// (excluding coincident points when `a == b`).
    pub fn translate_distance(&self, a: usize, b: usize) -> Result<f64> {
        if a == b {
            return Ok(to_f64(&self.lattice.min_norm()?).sqrt());
        }
        let delta: Vec<f64> =
            self.translates[a].iter().zip(&self.translates[b]).map(|(x, y)| x - y).collect();
        Ok(closest_distance_sq(&self.lattice, &delta).sqrt())
    }

    /// Minimum distance between distinct points of the set.
    pub fn min_distance(&self) -> Result<f64> {
        let mut best = f64::INFINITY;
        for a in 0..self.translates.len() {
            for b in a..self.translates.len() {
                best = best.min(self.translate_distance(a, b)?);
            }
        }
        Ok(best)
    }
}

/// `γ + t e_i` in `R^9` with `γ = (½, …, ½)`, `i` counted from 1.
pub fn fluid_diamond_shift(i: usize, t: f64) -> Result<Vec<f64>> {
    if !(1..=9).contains(&i) {
        return Err(Error::Domain(format!("coordinate index {i} is outside 1..9")));
    }
    let mut g = vec![0.5; 9];
    g[i - 1] += t;
    Ok(g)
}

/// Distance from `D_9 + γ_{i,t}` to `D_9`, by exhaustive search over the
/// four integers nearest each coordinate of `γ_{i,t}`.
pub fn fluid_diamond_min_distance(i: usize, t: f64) -> Result<f64> {
    let g = fluid_diamond_shift(i, t)?;
    let cands: Vec<[i64; 4]> = g
        .iter()
        .map(|&x| {
            let f = x.floor() as i64;
            [f - 1, f, f + 1, f + 2]
        })
        .collect();
    let mut best = f64::INFINITY;
    box_search(&g, &cands, 0, 0.0, 0, &mut best);
    Ok(best.sqrt())
}

fn box_search(g: &[f64], cands: &[[i64; 4]], k: usize, acc: f64, parity: i64, best: &mut f64) {
    if acc >= *best {
        return;
    }
    if k == g.len() {
        if parity == 0 {
            *best = acc;
        }
        return;
    }
    for &v in &cands[k] {
        let d = g[k] - v as f64;
        box_search(g, cands, k + 1, acc + d * d, (parity + v).rem_euclid(2), best);
    }
}

/// Squared distance from `x` to the nearest point of `D_n`: round every
/// coordinate, and if the sum is odd re-round the worst coordinate the other
/// way.
pub fn d_lattice_nearest_distance_sq(x: &[f64]) -> f64 {
    let mut f: Vec<f64> = x.iter().map(|v| v.round()).collect();
    let sum: f64 = f.iter().sum();
    if (sum as i64).rem_euclid(2) == 1 {
        let (k, _) = x
            .iter()
            .zip(&f)
            .map(|(a, b)| (a - b).abs())
            .enumerate()
            .fold((0, -1.0), |acc, (k, e)| if e > acc.1 { (k, e) } else { acc });
        f[k] += if x[k] >= f[k] { 1.0 } else { -1.0 };
    }
    x.iter().zip(&f).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// Squared distance from `target` to the lattice, by Fincke–Pohst search
/// around the real coordinates of `target`.
fn closest_distance_sq(l: &Lattice, target: &[f64]) -> f64 {
    let basis = l.basis().to_f64_rows();
    let gram = l.gram().to_f64_rows();
    let n = l.dim();
    // Real coordinates c with Σ c_i b_i = target: solve G c = B target.
    let rhs: Vec<f64> = basis.iter().map(|b| b.iter().zip(target).map(|(x, y)| x * y).sum()).collect();
    let c = solve_spd(&gram, &rhs);
    let (diag, lower) = ldl_f64(&gram);
    let norm = |x: &[i64]| -> f64 {
        let mut v = target.to_vec();
        for (i, &xi) in x.iter().enumerate() {
            for (vj, bj) in v.iter_mut().zip(&basis[i]) {
                *vj -= xi as f64 * bj;
            }
        }
        v.iter().map(|a| a * a).sum()
    };
    let rounded: Vec<i64> = c.iter().map(|v| v.round() as i64).collect();
    let mut best = norm(&rounded);
    let mut x = vec![0i64; n];
    cvp_level(n - 1, &c, &diag, &lower, 0.0, &mut x, &mut best, &norm);
    best
}

#[allow(clippy::too_many_arguments)]
fn cvp_level(
    k: usize,
    c: &[f64],
    diag: &[f64],
    lower: &[Vec<f64>],
    used: f64,
    x: &mut [i64],
    best: &mut f64,
    norm: &dyn Fn(&[i64]) -> f64,
) {
    let n = c.len();
    let mut center = c[k];
    for i in k + 1..n {
        center -= lower[i][k] * (x[i] as f64 - c[i]);
    }
    let room = *best * (1.0 + 1e-12) - used;
    if room < 0.0 {
        return;
    }
    let half = (room / diag[k]).sqrt();
    for v in (center - half).ceil() as i64..=(center + half).floor() as i64 {
        let dv = v as f64 - center;
        let u = used + diag[k] * dv * dv;
        if u > *best * (1.0 + 1e-12) {
            continue;
        }
        x[k] = v;
        if k == 0 {
            *best = best.min(norm(x));
        } else {
            cvp_level(k - 1, c, diag, lower, u, x, best, norm);
        }
    }
}

fn ldl_f64(g: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = g.len();
    let mut l = vec![vec![0.0; n]; n];
    let mut d = vec![0.0; n];
    for j in 0..n {
        l[j][j] = 1.0;
        d[j] = g[j][j] - (0..j).map(|k| l[j][k] * l[j][k] * d[k]).sum::<f64>();
        for i in j + 1..n {
            l[i][j] = (g[i][j] - (0..j).map(|k| l[i][k] * l[j][k] * d[k]).sum::<f64>()) / d[j];
        }
    }
    (d, l)
}

fn solve_spd(g: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let (d, l) = ldl_f64(g);
    let n = b.len();
    let mut y = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            y[i] -= l[i][k] * y[k];
        }
    }
    for i in 0..n {
        y[i] /= d[i];
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            y[i] -= l[k][i] * y[k];
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_at_zero_is_three_halves_away() {
        assert!((fluid_diamond_min_distance(1, 0.0).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn half_shift_touches_sqrt_two() {
        let d = fluid_diamond_min_distance(4, 0.5).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn never_below_sqrt_two() {
        for i in 1..=9 {
            for k in -20..=20 {
                let t = k as f64 * 0.137;
                assert!(fluid_diamond_min_distance(i, t).unwrap() >= 2f64.sqrt() - 1e-12);
            }
        }
    }

    #[test]
    fn nearest_point_rule_agrees_with_box_search() {
        for k in -10..=10 {
            let t = k as f64 * 0.291;
            let g = fluid_diamond_shift(9, t).unwrap();
            let a = d_lattice_nearest_distance_sq(&g).sqrt();
            let b = fluid_diamond_min_distance(9, t).unwrap();
            assert!((a - b).abs() < 1e-12, "t = {t}: {a} vs {b}");
        }
    }

    #[test]
    fn point_set_distance_includes_lattice_minimum() {
        let s = PeriodicPointSet::fluid_diamond(1, 0.0).unwrap();
        assert!((s.min_distance().unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert!((s.translate_distance(0, 1).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn bad_index_is_a_domain_error() {
        assert!(matches!(fluid_diamond_min_distance(0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(fluid_diamond_min_distance(10, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn coincident_translates_are_rejected() {
        let z2 = construct_named(NamedLattice::Z(2)).unwrap();
        assert!(PeriodicPointSet::new(z2, vec![vec![0.0, 0.0], vec![1.0, 0.0]]).is_err());
    }
}
