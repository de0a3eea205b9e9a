//! The `E_8` root system, its Coxeter element, the Coxeter-plane projection
//! and the realization of `E_8` on cyclotomic integers.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{determinant, dot, is_positive_definite, rat, to_f64, Definiteness, RationalMatrix};
use crate::harmonic::{dft_zm, PeriodicSamples, SPECTRUM_TOL};
use crate::lattice::{e8_simple_roots, enumerate_shells_with, ShellOptions};

/// Roots of `E_8` with every coordinate doubled, so all entries are integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    roots: Vec<[i64; 8]>,
    simple: Vec<[i64; 8]>,
}

fn doubled(v: &[BigRational]) -> [i64; 8] {
    let mut out = [0i64; 8];
    for (o, x) in out.iter_mut().zip(v) {
        *o = (x * rat(2)).to_integer().to_i64().expect("small coordinate");
    }
    out
}

impl RootSystem {
    /// The 112 roots `±e_i ± e_j` followed by the 128 roots `(±½, …, ±½)`
    /// with an even number of minus signs.
    pub fn e8() -> Self {
        let mut roots = Vec::with_capacity(240);
        for i in 0..8 {
            for j in i + 1..8 {
                for (si, sj) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                    let mut v = [0i64; 8];
                    v[i] = si;
                    v[j] = sj;
                    roots.push(v);
                }
            }
        }
        for mask in 0u32..256 {
            if mask.count_ones() % 2 == 0 {
                let mut v = [1i64; 8];
                for (k, x) in v.iter_mut().enumerate() {
                    if mask >> k & 1 == 1 {
                        *x = -1;
                    }
                }
                roots.push(v);
            }
        }
        let simple = e8_simple_roots().iter().map(|r| doubled(r)).collect();
        Self { roots, simple }
    }

    pub fn roots(&self) -> &[[i64; 8]] {
        &self.roots
    }

    pub fn simple_roots(&self) -> &[[i64; 8]] {
        &self.simple
    }

    pub fn root_rational(v: &[i64; 8]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::new(BigInt::from(x), BigInt::from(2))).collect()
    }
}

/// `v − 2 (v, α)/(α, α) · α`, requiring `(α, α) = 2`.
pub fn reflect(alpha: &[BigRational], v: &[BigRational]) -> Result<Vec<BigRational>> {
    if alpha.len() != v.len() {
        return Err(Error::Dimension("root and vector have different lengths".into()));
    }
    if dot(alpha, alpha) != rat(2) {
        return Err(Error::Domain("reflection needs a root of squared length 2".into()));
    }
    let c = dot(v, alpha);
    Ok(v.iter().zip(alpha).map(|(x, a)| x - &c * a).collect())
}

/// Matrix of `v ↦ v − (v, α) α` acting on column vectors.
pub fn reflection_matrix(alpha: &[BigRational]) -> Result<RationalMatrix> {
    if dot(alpha, alpha) != rat(2) {
        return Err(Error::Domain("reflection needs a root of squared length 2".into()));
    }
    let n = alpha.len();
    let mut m = RationalMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] -= &alpha[i] * &alpha[j];
        }
    }
    Ok(m)
}

fn product(ms: &[RationalMatrix]) -> Result<RationalMatrix> {
    let mut acc = RationalMatrix::identity(ms[0].rows());
    for m in ms {
        acc = acc.mul(m)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoxeterElement {
    /// `R_green R_blue` in the standard coordinates of `R^8`.
    pub matrix: RationalMatrix,
    /// `r_1 r_3 r_5 r_8`.
    pub green: RationalMatrix,
    /// `r_2 r_4 r_6 r_7`.
    pub blue: RationalMatrix,
    pub order: usize,
    /// Characteristic polynomial, leading coefficient first.
    pub char_poly: Vec<BigInt>,
}

pub fn coxeter_element() -> Result<CoxeterElement> {
    let simple = e8_simple_roots();
    let r = |i: usize| reflection_matrix(&simple[i - 1]);
    let green = product(&[r(1)?, r(3)?, r(5)?, r(8)?])?;
    let blue = product(&[r(2)?, r(4)?, r(6)?, r(7)?])?;
    let matrix = green.mul(&blue)?;
    let order = matrix_order(&matrix, 1000)?;
    let char_poly = characteristic_polynomial(&matrix)?;
    Ok(CoxeterElement { matrix, green, blue, order, char_poly })
}

/// Smallest `n ≥ 1` with `m^n = I`.
pub fn matrix_order(m: &RationalMatrix, limit: usize) -> Result<usize> {
    let id = RationalMatrix::identity(m.rows());
    let mut p = m.clone();
    for n in 1..=limit {
        if p == id {
            return Ok(n);
        }
        p = p.mul(m)?;
    }
    Err(Error::Resource(format!("no finite order up to {limit}")))
}

/// Faddeev–LeVerrier; coefficients of `det(zI − m)`, leading first.
pub fn characteristic_polynomial(m: &RationalMatrix) -> Result<Vec<BigInt>> {
    if !m.is_square() {
        return Err(Error::Dimension("characteristic polynomial of a non-square matrix".into()));
    }
    let n = m.rows();
    let id = RationalMatrix::identity(n);
    let mut coeffs = vec![rat(1)];
    let mut mk = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        let prev = coeffs.last().unwrap().clone();
        let mut next = m.mul(&mk)?;
        for i in 0..n {
            next[(i, i)] += &prev * &id[(i, i)];
        }
        mk = next;
        let am = m.mul(&mk)?;
        let tr: BigRational = (0..n).map(|i| am[(i, i)].clone()).sum();
        coeffs.push(-tr / rat(k as i64));
    }
    coeffs
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Domain("characteristic polynomial is not integral".into()))
            }
        })
        .collect()
}

/// `(C^i v, w)` for `i = 0, …, 29`.
pub fn coxeter_matrix_element(c: &CoxeterElement, v: &[BigRational], w: &[BigRational]) -> Result<Vec<BigRational>> {
    if v.len() != 8 || w.len() != 8 {
        return Err(Error::Dimension("vectors must lie in R^8".into()));
    }
    let mut cur = v.to_vec();
    let mut out = Vec::with_capacity(30);
    for _ in 0..30 {
        out.push(dot(&cur, w));
        cur = apply(&c.matrix, &cur);
    }
    Ok(out)
}

fn apply(m: &RationalMatrix, v: &[BigRational]) -> Vec<BigRational> {
    (0..m.rows()).map(|i| dot(m.row(i), v)).collect()
}

/// The integer between 0 and `x` closest to `x`: truncation toward zero,
/// after snapping values within `1e-9` of an integer.
pub fn floor_toward_zero(x: f64) -> i64 {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as i64
    } else {
        x.trunc() as i64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoxeterProjection {
    /// `(v, x)` for each root, `x` the unit eigenvector for `e^{2πi/30}`.
    pub points: Vec<Complex64>,
    pub eigenvector: Vec<Complex64>,
    pub residual: f64,
}

impl CoxeterProjection {
    pub fn project(&self, v: &[f64]) -> Complex64 {
        v.iter().zip(&self.eigenvector).map(|(a, x)| x * *a).sum()
    }
}

/// Projects every root onto the plane of the eigenvector of `C` for
/// `e^{2πi/30}`; `C` then acts on the points as rotation by `−2π/30`.
pub fn coxeter_plane_project(rs: &RootSystem, c: &CoxeterElement) -> Result<CoxeterProjection> {
    let a: Vec<Vec<f64>> = c.matrix.to_f64_rows();
    let lambda = Complex64::from_polar(1.0, 2.0 * PI / 30.0);
    let x = inverse_iteration(&a, lambda)?;
    let residual = (0..8)
        .map(|i| {
            let cx: Complex64 = (0..8).map(|j| x[j] * a[i][j]).sum();
            (cx - lambda * x[i]).norm_sqr()
        })
        .sum::<f64>()
        .sqrt();
    if residual > 1e-10 {
        return Err(Error::Precision(format!("eigenvector residual {residual:.2e}")));
    }
    let proj = CoxeterProjection { points: Vec::new(), eigenvector: x, residual };
    let points = rs
        .roots()
        .iter()
        .map(|r| proj.project(&r.iter().map(|&v| v as f64 / 2.0).collect::<Vec<_>>()))
        .collect();
    Ok(CoxeterProjection { points, ..proj })
}

fn inverse_iteration(a: &[Vec<f64>], lambda: Complex64) -> Result<Vec<Complex64>> {
    let n = a.len();
    let shift = lambda * (1.0 + 1e-10);
    let mut x: Vec<Complex64> = (0..n).map(|i| Complex64::new(1.0 + 0.1 * i as f64, 0.3)).collect();
    for _ in 0..8 {
        let mut m: Vec<Vec<Complex64>> = (0..n)
            .map(|i| (0..n).map(|j| Complex64::new(a[i][j], 0.0) - if i == j { shift } else { Complex64::zero() }).collect())
            .collect();
        x = complex_solve(&mut m, x)?;
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        x.iter_mut().for_each(|z| *z /= norm);
    }
    let lead = *x.iter().find(|z| z.norm() > 1e-8).unwrap();
    let phase = lead.conj() / lead.norm();
    Ok(x.into_iter().map(|z| z * phase).collect())
}

fn complex_solve(m: &mut [Vec<Complex64>], mut b: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let n = b.len();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm()))
            .unwrap();
        if m[p][k].norm() == 0.0 {
            return Err(Error::Precision("singular shifted matrix".into()));
        }
        m.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            let (top, bottom) = m.split_at_mut(i);
            for (x, &t) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *x -= f * t;
            }
            let t = b[k];
            b[i] -= f * t;
        }
    }
    for k in (0..n).rev() {
        let s: Complex64 = (k + 1..n).map(|j| m[k][j] * b[j]).sum();
        b[k] = (b[k] - s) / m[k][k];
    }
    Ok(b)
}

/// `Ψ_m`, coefficients in increasing degree.
pub fn cyclotomic_poly(m: usize) -> Result<Vec<BigInt>> {
    if !(1..=1000).contains(&m) {
        return Err(Error::Domain(format!("cyclotomic index {m} is outside 1..1000")));
    }
    let mut num = vec![BigInt::zero(); m + 1];
    num[0] = BigInt::from(-1);
    num[m] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = poly_div_exact(&num, &cyclotomic_poly(d)?);
    }
    Ok(num)
}

/// Quotient of monic-divisor polynomial division; the remainder is zero
/// for the divisions used here.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = &rem[k + dd] / &den[dd];
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    q
}

/// Element `Σ c_i ζ^i` of `Z[ζ_m]`, `i < 8`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicInt {
    pub m: usize,
    pub coeffs: [i64; 8],
}

impl CyclotomicInt {
    pub fn new(m: usize, coeffs: [i64; 8]) -> Result<Self> {
        check_m(m)?;
        Ok(Self { m, coeffs })
    }

    /// Multiplication by `ζ`, reduced modulo `Ψ_m`.
    pub fn mul_zeta(&self) -> Self {
        let psi = cyclotomic_poly(self.m).expect("valid m");
        let top = self.coeffs[7];
        let mut out = [0i64; 8];
        out[1..8].copy_from_slice(&self.coeffs[..7]);
        // ζ^8 = −Σ_{i<8} ψ_i ζ^i
        for (o, p) in out.iter_mut().zip(&psi) {
            *o -= top * p.to_i64().unwrap();
        }
        Self { m: self.m, coeffs: out }
    }

    pub fn inner(&self, other: &Self, gram: &RationalMatrix) -> BigRational {
        let mut s = BigRational::zero();
        for a in 0..8 {
            for b in 0..8 {
                s += &gram[(a, b)] * rat(self.coeffs[a] * other.coeffs[b]);
            }
        }
        s
    }
}

fn check_m(m: usize) -> Result<()> {
    if !matches!(m, 20 | 24 | 30) {
        return Err(Error::Domain(format!("m = {m}; supported values are 20, 24, 30")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EtaVerification {
    pub even: bool,
    pub unimodular: bool,
    pub positive_definite: bool,
    pub root_count: u64,
    pub spectrum_pattern: bool,
}

impl EtaVerification {
    pub fn passed(&self) -> bool {
        self.even && self.unimodular && self.positive_definite && self.root_count == 240 && self.spectrum_pattern
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EtaRealization {
    pub m: usize,
    pub scale: i64,
    /// `⌊⌊scale · cos(2πi/m)⌋⌋` for `i = 0, …, m−1`.
    pub eta: Vec<i64>,
    /// Real parts of the transform of `eta` on `Z/m`.
    pub spectrum: Vec<f64>,
    /// `gram[a][b] = η(ζ^{a−b})` on the basis `1, ζ, …, ζ^7`.
    pub gram: RationalMatrix,
    pub verification: EtaVerification,
}

pub fn eta_realization(m: usize, scale: i64) -> Result<EtaRealization> {
    check_m(m)?;
    if scale <= 0 || scale % 2 != 0 {
        return Err(Error::Domain(format!("scale {scale} must be a positive even integer")));
    }
    let eta: Vec<i64> = (0..m)
        .map(|i| floor_toward_zero(scale as f64 * (2.0 * PI * i as f64 / m as f64).cos()))
        .collect();
    let samples = PeriodicSamples::from_real(&eta.iter().map(|&e| e as f64).collect::<Vec<_>>())?;
    let spectrum: Vec<f64> = dft_zm(&samples).coeffs.iter().map(|c| c.re).collect();
    let spectrum_pattern = spectrum.iter().enumerate().all(|(j, &s)| {
        if j.gcd(&m) == 1 {
            s > SPECTRUM_TOL
        } else {
            s.abs() <= SPECTRUM_TOL
        }
    });
    let mut gram = RationalMatrix::zeros(8, 8);
    for a in 0..8 {
        for b in 0..8 {
            gram[(a, b)] = rat(eta[(a + m - b) % m]);
        }
    }
    let positive_definite = is_positive_definite(&gram)? == Definiteness::PositiveDefinite;
    let unimodular = determinant(&gram)?.abs().is_one();
    let even = gram.is_integral() && (0..8).all(|i| gram[(i, i)].to_integer().is_even());
    let root_count = if positive_definite {
        enumerate_shells_with(&gram, &rat(2), &ShellOptions::default())?
            .iter()
            .find(|s| s.norm_sq == rat(2))
            .map_or(0, |s| s.count)
    } else {
        0
    };
    Ok(EtaRealization {
        m,
        scale,
        eta,
        spectrum,
        gram,
        verification: EtaVerification { even, unimodular, positive_definite, root_count, spectrum_pattern },
    })
}

/// Simple-root coordinates of an ambient vector.
pub fn simple_root_coordinates(v: &[BigRational]) -> Result<Vec<BigRational>> {
    let basis = RationalMatrix::from_rows(e8_simple_roots())?;
    let inv = basis.inverse()?;
    // v = c · B  ⇒  c = v · B⁻¹
    Ok((0..8)
        .map(|j| (0..8).map(|i| &v[i] * &inv[(i, j)]).sum())
        .collect())
}

/// Converts a rational vector to `f64` coordinates.
pub fn to_f64_vec(v: &[BigRational]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn root_system_shape() {
        let rs = RootSystem::e8();
        assert_eq!(rs.roots().len(), 240);
        for r in rs.roots() {
            assert_eq!(r.iter().map(|x| x * x).sum::<i64>(), 8);
            let neg: [i64; 8] = r.map(|x| -x);
            assert!(rs.roots().contains(&neg));
        }
        for s in rs.simple_roots() {
            assert!(rs.roots().contains(s));
        }
    }

    #[test]
    fn reflection_examples() {
        let a: Vec<BigRational> = [1, -1, 0].iter().map(|&x| rat(x)).collect();
        let b: Vec<BigRational> = [0, 1, -1].iter().map(|&x| rat(x)).collect();
        let want: Vec<BigRational> = [1, 0, -1].iter().map(|&x| rat(x)).collect();
        assert_eq!(reflect(&a, &b).unwrap(), want);
        let neg: Vec<BigRational> = a.iter().map(|x| -x).collect();
        assert_eq!(reflect(&a, &a).unwrap(), neg);
        let orth: Vec<BigRational> = [1, 1, 5].iter().map(|&x| rat(x)).collect();
        assert_eq!(reflect(&a, &orth).unwrap(), orth);
        let not_root: Vec<BigRational> = [1, 0, 0].iter().map(|&x| rat(x)).collect();
        assert!(matches!(reflect(&not_root, &b), Err(Error::Domain(_))));
    }

    #[test]
    fn coxeter_order_and_polynomial() {
        let c = coxeter_element().unwrap();
        assert_eq!(c.order, 30);
        assert_eq!(ints(&c.char_poly), [1, 1, 0, -1, -1, -1, 0, 1, 1]);
    }

    #[test]
    fn coxeter_matrix_is_the_tabulated_one() {
        let table: [[i64; 8]; 8] = [
            [-1, -1, 3, -1, -1, 1, 1, -1],
            [3, -1, -1, -1, -1, 1, 1, -1],
            [-1, -1, -1, -1, 3, 1, 1, -1],
            [-1, 3, -1, -1, -1, 1, 1, -1],
            [-1, -1, -1, -1, -1, -3, 1, -1],
            [-1, -1, -1, 3, -1, 1, 1, -1],
            [-1, -1, -1, -1, -1, 1, -3, -1],
            [-1, -1, -1, -1, -1, 1, 1, 3],
        ];
        let c = coxeter_element().unwrap();
        for (i, row) in table.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(c.matrix[(i, j)], ratio(x, 4), "entry ({i}, {j})");
            }
        }
    }

    #[test]
    fn half_products_are_involutions() {
        let c = coxeter_element().unwrap();
        let id = RationalMatrix::identity(8);
        assert_eq!(c.green.mul(&c.green).unwrap(), id);
        assert_eq!(c.blue.mul(&c.blue).unwrap(), id);
        let inv = c.matrix.inverse().unwrap();
        assert_eq!(c.green.mul(&c.matrix).unwrap(), inv.mul(&c.green).unwrap());
    }

    #[test]
    fn floor_bracket() {
        assert_eq!(floor_toward_zero(1.956), 1);
        assert_eq!(floor_toward_zero(-0.9999999999999996), -1);
        assert_eq!(floor_toward_zero(-1.3), -1);
        assert_eq!(floor_toward_zero(0.2), 0);
        assert_eq!(floor_toward_zero(2.0), 2);
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(ints(&cyclotomic_poly(1).unwrap()), [-1, 1]);
        assert_eq!(ints(&cyclotomic_poly(30).unwrap()), [1, 1, 0, -1, -1, -1, 0, 1, 1]);
        assert_eq!(ints(&cyclotomic_poly(24).unwrap()), [1, 0, 0, 0, -1, 0, 0, 0, 1]);
        assert_eq!(ints(&cyclotomic_poly(20).unwrap()), [1, 0, -1, 0, 1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(105).unwrap().len(), 49);
        assert!(cyclotomic_poly(0).is_err());
    }

    #[test]
    fn eta_values() {
        let e = eta_realization(30, 2).unwrap();
        assert_eq!(e.eta[..8], [2, 1, 1, 1, 1, 1, 0, 0]);
        assert!(e.verification.passed(), "{:?}", e.verification);
        let e = eta_realization(20, 4).unwrap();
        assert_eq!(e.eta[..8], [4, 3, 3, 2, 1, 0, -1, -2]);
        assert!(eta_realization(15, 2).is_err());
        assert!(eta_realization(24, 3).is_err());
    }

    #[test]
    fn projection_rotates_and_lines_up_green_roots() {
        let rs = RootSystem::e8();
        let c = coxeter_element().unwrap();
        let p = coxeter_plane_project(&rs, &c).unwrap();
        let lambda = Complex64::from_polar(1.0, 2.0 * PI / 30.0);
        let cm = c.matrix.to_f64_rows();
        for r in rs.roots() {
            let v: Vec<f64> = r.iter().map(|&x| x as f64 / 2.0).collect();
            let cv: Vec<f64> = (0..8).map(|i| (0..8).map(|j| cm[i][j] * v[j]).sum()).collect();
            assert!((p.project(&cv) - lambda.conj() * p.project(&v)).norm() < 1e-8);
        }
        let green: Vec<Complex64> = [0, 2, 4, 7].iter().map(|&i| {
            let v: Vec<f64> = rs.simple_roots()[i].iter().map(|&x| x as f64 / 2.0).collect();
            p.project(&v)
        }).collect();
        for z in &green {
            assert!((z * green[0].conj()).im.abs() < 1e-8);
        }
    }
}
