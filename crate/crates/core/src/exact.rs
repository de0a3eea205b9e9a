//! Exact rational linear algebra.
//!
//! Everything here works over [`BigRational`]; there is deliberately no
//! floating-point path. Determinants use fraction-free (Bareiss) elimination
//! on an integer-scaled copy of the matrix, definiteness is decided from the
//! signs of exact symmetric pivots.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer as an exact rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `p/q` as an exact rational. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn rational_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"-2.375"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if s.contains('/') {
            return Err(Error::Parse(format!("cannot mix '/' and '.' in {s:?}")));
        }
        let negative = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let denom = num_traits::pow(BigInt::from(10), frac_part.len());
        let value = BigRational::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    BigRational::from_str(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 gives up on huge operands; fall back to scaled division.
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|row| row.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    /// `self · selfᵀ`, the Gram matrix of the rows.
    pub fn gram(&self) -> Self {
        let mut g = Self::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..=i {
                let dot = dot(self.row(i), self.row(j));
                g[(i, j)] = dot.clone();
                g[(j, i)] = dot;
            }
        }
        g
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("{}x{} matrix has no inverse", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or_else(|| Error::Rank(format!("matrix is singular (column {col})")))?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] /= &p;
                inv[(col, j)] /= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let aj = &a[(col, j)] * &f;
                    a[(r, j)] -= aj;
                    let ij = &inv[(col, j)] * &f;
                    inv[(r, j)] -= ij;
                }
            }
        }
        Ok(inv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).iter().map(to_f64).collect()).collect()
    }

    /// Rows as `"p/q"` strings, the JSON representation.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(rational_to_string).collect()).collect()
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_string_rows()).finish()
    }
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Least common multiple of all denominators in `xs`.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Exact determinant.
///
/// Each row is cleared of denominators first, so the Bareiss recurrence runs
/// entirely in integers and every intermediate division is exact.
pub fn determinant(m: &RationalMatrix) -> Result<BigRational> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigRational::one());
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let den = common_denominator(m.row(i));
        a.push(m.row(i).iter().map(|x| x.numer() * (&den / x.denom())).collect());
        scale *= den;
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigRational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(BigRational::new(sign * &a[n - 1][n - 1], scale))
}

/// Sign class of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

impl Definiteness {
    pub fn as_str(self) -> &'static str {
        match self {
            Definiteness::PositiveDefinite => "positive-definite",
            Definiteness::PositiveSemidefinite => "positive-semidefinite",
            Definiteness::Indefinite => "indefinite",
        }
    }
}

/// Classifies a symmetric matrix by exact symmetric elimination.
///
/// Pivots are taken on the diagonal with symmetric row/column swaps, which is
/// a congruence and so preserves inertia. A negative pivot, or a remaining
/// block with zero diagonal but a nonzero off-diagonal entry, means the form
/// takes negative values.
pub fn is_positive_definite(m: &RationalMatrix) -> Result<Definiteness> {
    if !m.is_symmetric() {
        return Err(Error::Contract("definiteness test needs a symmetric matrix".into()));
    }
    let n = m.rows;
    let mut a = m.clone();
    for k in 0..n {
        // Largest positive diagonal entry keeps the pivot choice deterministic.
        let mut best: Option<usize> = None;
        for i in k..n {
            if a[(i, i)].is_negative() {
                return Ok(Definiteness::Indefinite);
            }
            if a[(i, i)].is_positive() && best.is_none_or(|b| a[(i, i)] > a[(b, b)]) {
                best = Some(i);
            }
        }
        let Some(p) = best else {
            let rest_zero = (k..n).all(|i| (k..n).all(|j| a[(i, j)].is_zero()));
            return Ok(if rest_zero {
                Definiteness::PositiveSemidefinite
            } else {
                Definiteness::Indefinite
            });
        };
        symmetric_swap(&mut a, k, p);
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &pivot;
            for j in k..n {
                let v = &f * &a[(k, j)];
                a[(i, j)] -= v;
            }
        }
        for i in k + 1..n {
            a[(k, i)] = BigRational::zero();
        }
    }
    Ok(Definiteness::PositiveDefinite)
}

fn symmetric_swap(a: &mut RationalMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap_rows(i, j);
    for r in 0..a.rows {
        a.entries.swap(r * a.cols + i, r * a.cols + j);
    }
}

/// `m = L · diag(d) · Lᵀ` with `L` unit lower triangular.
#[derive(Debug, Clone, PartialEq)]
pub struct LdlDecomposition {
    pub diag: Vec<BigRational>,
    pub lower: RationalMatrix,
}

impl LdlDecomposition {
    pub fn reconstruct(&self) -> RationalMatrix {
        let n = self.diag.len();
        let mut out = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut s = BigRational::zero();
                for k in 0..=j {
                    s += &self.lower[(i, k)] * &self.diag[k] * &self.lower[(j, k)];
                }
                out[(i, j)] = s.clone();
                out[(j, i)] = s;
            }
        }
        out
    }
}

/// Exact LDLᵀ factorization without pivoting. Fails on the first pivot that
/// is not strictly positive.
pub fn ldl_decompose(m: &RationalMatrix) -> Result<LdlDecomposition> {
    if !m.is_symmetric() {
        return Err(Error::Contract("LDL decomposition needs a symmetric matrix".into()));
    }
    let n = m.rows;
    let mut lower = RationalMatrix::identity(n);
    let mut diag: Vec<BigRational> = Vec::with_capacity(n);
    for j in 0..n {
        let mut d = m[(j, j)].clone();
        for k in 0..j {
            d -= &lower[(j, k)] * &lower[(j, k)] * &diag[k];
        }
        if !d.is_positive() {
            return Err(Error::NotPositiveDefinite { index: j, pivot: rational_to_string(&d) });
        }
        for i in j + 1..n {
            let mut s = m[(i, j)].clone();
            for k in 0..j {
                s -= &lower[(i, k)] * &lower[(j, k)] * &diag[k];
            }
            lower[(i, j)] = s / &d;
        }
        diag.push(d);
    }
    Ok(LdlDecomposition { diag, lower })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn identity_determinant() {
        assert_eq!(determinant(&RationalMatrix::identity(8)).unwrap(), rat(1));
    }

    #[test]
    fn degenerate_form_has_zero_determinant() {
        let q = m(&[vec![1, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]]);
        assert_eq!(determinant(&q).unwrap(), rat(0));
        assert_eq!(is_positive_definite(&q).unwrap(), Definiteness::PositiveSemidefinite);
    }

    #[test]
    fn non_square_determinant_is_an_error() {
        let r = RationalMatrix::zeros(2, 3);
        assert!(matches!(determinant(&r), Err(Error::Dimension(_))));
    }

    #[test]
    fn determinant_needs_row_swap() {
        let q = m(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(determinant(&q).unwrap(), rat(-1));
    }

    #[test]
    fn rational_entries() {
        let q = RationalMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 4), ratio(1, 5)],
        ])
        .unwrap();
        // 1/10 - 1/12 = 1/60
        assert_eq!(determinant(&q).unwrap(), ratio(1, 60));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            is_positive_definite(&m(&[vec![2, -1], vec![-1, 2]])).unwrap(),
            Definiteness::PositiveDefinite
        );
        assert_eq!(
            is_positive_definite(&m(&[vec![1, 2], vec![2, 1]])).unwrap(),
            Definiteness::Indefinite
        );
        // zero diagonal with off-diagonal coupling
        assert_eq!(
            is_positive_definite(&m(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]])).unwrap(),
            Definiteness::Indefinite
        );
        assert_eq!(
            is_positive_definite(&m(&[vec![0, 0], vec![0, 0]])).unwrap(),
            Definiteness::PositiveSemidefinite
        );
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let q = m(&[vec![1, 2], vec![0, 1]]);
        assert!(matches!(is_positive_definite(&q), Err(Error::Contract(_))));
        assert!(matches!(ldl_decompose(&q), Err(Error::Contract(_))));
    }

    #[test]
    fn ldl_examples() {
        let id = ldl_decompose(&RationalMatrix::identity(4)).unwrap();
        assert!(id.diag.iter().all(|d| d.is_one()));
        assert_eq!(id.lower, RationalMatrix::identity(4));

        let a2 = m(&[vec![2, -1], vec![-1, 2]]);
        let f = ldl_decompose(&a2).unwrap();
        assert_eq!(f.diag, vec![rat(2), ratio(3, 2)]);
        assert_eq!(f.lower[(1, 0)], ratio(-1, 2));
        assert_eq!(f.reconstruct(), a2);
    }

    #[test]
    fn ldl_reports_failing_pivot() {
        let q = m(&[vec![1, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]]);
        match ldl_decompose(&q) {
            Err(Error::NotPositiveDefinite { index, pivot }) => {
                assert_eq!(index, 2);
                assert_eq!(pivot, "0");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RationalMatrix::identity(3));
        assert!(matches!(m(&[vec![1, 1], vec![1, 1]]).inverse(), Err(Error::Rank(_))));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational_to_string(&ratio(6, 4)), "3/2");
        assert_eq!(rational_to_string(&rat(-7)), "-7");
        assert_eq!(parse_rational("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-2.375").unwrap(), ratio(-19, 8));
        assert_eq!(parse_rational(" 5 ").unwrap(), rat(5));
        assert!(parse_rational("x").is_err());
    }
}
