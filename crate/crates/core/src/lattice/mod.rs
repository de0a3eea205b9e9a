//! Euclidean lattices given by a rational basis.
//!
//! A [`Lattice`] keeps the basis in the coordinates it was written in (so
//! `A_d` lives in `R^{d+1}`), and every invariant is computed from the exact
//! Gram matrix.

mod enumerate;
mod fluid;
mod reduce;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    common_denominator, determinant, is_positive_definite, ratio, rat, to_f64, Definiteness,
    RationalMatrix,
};
use crate::geometry::ball_volume;

pub use enumerate::{
    enumerate_shells, enumerate_shells_with, for_each_short_vector, minimum_norm, predicted_count,
    IntegralForm, Shell, ShellOptions, DEFAULT_VECTOR_CAP,
};
pub use fluid::{
    d_lattice_nearest_distance_sq, fluid_diamond_min_distance, fluid_diamond_shift,
    PeriodicPointSet,
};
pub use reduce::{reduce_2d, reduce_2d_gram, Reduced2d};

#[derive(Clone, PartialEq)]
pub struct Lattice {
    name: String,
    basis: RationalMatrix,
    gram: RationalMatrix,
    discriminant: BigRational,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("ambient", &self.ambient())
            .field("discriminant", &self.discriminant.to_string())
            .finish()
    }
}

impl Lattice {
    /// Lattice spanned by the rows of `basis`. The rows must be linearly
    /// independent.
    pub fn from_basis(name: impl Into<String>, basis: RationalMatrix) -> Result<Self> {
        if basis.rows() == 0 {
            return Err(Error::Dimension("a lattice needs at least one basis vector".into()));
        }
        if basis.rows() > basis.cols() {
            return Err(Error::Rank(format!(
                "{} vectors cannot be independent in R^{}",
                basis.rows(),
                basis.cols()
            )));
        }
        let gram = basis.gram();
        if is_positive_definite(&gram)? != Definiteness::PositiveDefinite {
            return Err(Error::Rank("basis vectors are linearly dependent".into()));
        }
        let discriminant = determinant(&gram)?;
        Ok(Self { name: name.into(), basis, gram, discriminant })
    }

    /// Lattice spanned by an arbitrary generating set; a basis is extracted
    /// by integer row reduction.
    pub fn from_generators(name: impl Into<String>, generators: &RationalMatrix) -> Result<Self> {
        Self::from_basis(name, basis_from_generators(generators)?)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn discriminant(&self) -> &BigRational {
        &self.discriminant
    }

    pub fn is_integral(&self) -> bool {
        self.gram.is_integral()
    }

    /// All Gram entries integral and all diagonal entries even.
    pub fn is_even(&self) -> bool {
        self.is_integral()
            && (0..self.dim()).all(|i| self.gram[(i, i)].numer().is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_integral() && self.discriminant.is_one()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Ambient coordinates of the lattice vector with basis coordinates `coords`.
    pub fn to_ambient(&self, coords: &[i64]) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.ambient()];
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = rat(c);
            for (j, x) in self.basis.row(i).iter().enumerate() {
                v[j] += x * &c;
            }
        }
        v
    }

    /// Same lattice, basis multiplied on the left by an integer matrix.
    pub fn change_basis(&self, transform: &RationalMatrix) -> Result<Self> {
        if !transform.is_integral() || determinant(transform)?.abs() != BigRational::one() {
            return Err(Error::Domain("basis change must be unimodular and integral".into()));
        }
        Self::from_basis(self.name.clone(), transform.mul(&self.basis)?)
    }

    /// Squared length of the shortest nonzero vector.
    pub fn min_norm(&self) -> Result<BigRational> {
        minimum_norm(&self.gram)
    }
}

/// Names accepted by [`construct_named`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedLattice {
    Z(usize),
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    /// `E_8` presented as `D_8 ∪ (D_8 + γ)`.
    E8FromD8,
    Hexagonal,
}

impl FromStr for NamedLattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        match lower.as_str() {
            "e6" => return Ok(NamedLattice::E6),
            "e7" => return Ok(NamedLattice::E7),
            "e8" => return Ok(NamedLattice::E8),
            "e8-d8" | "e8d8" | "e8_d8" => return Ok(NamedLattice::E8FromD8),
            "hexagonal" | "hex" => return Ok(NamedLattice::Hexagonal),
            _ => {}
        }
        let (head, tail) = lower.split_at(1);
        let tail = tail.trim_start_matches(['(', '_', ':']).trim_end_matches(')');
        let d: usize = tail
            .parse()
            .map_err(|_| Error::Parse(format!("unknown lattice name {s:?}")))?;
        match head {
            "z" => Ok(NamedLattice::Z(d)),
            "a" => Ok(NamedLattice::A(d)),
            "d" => Ok(NamedLattice::D(d)),
            _ => Err(Error::Parse(format!("unknown lattice name {s:?}"))),
        }
    }
}

impl fmt::Display for NamedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedLattice::Z(d) => write!(f, "Z{d}"),
            NamedLattice::A(d) => write!(f, "A{d}"),
            NamedLattice::D(d) => write!(f, "D{d}"),
            NamedLattice::E6 => f.write_str("E6"),
            NamedLattice::E7 => f.write_str("E7"),
            NamedLattice::E8 => f.write_str("E8"),
            NamedLattice::E8FromD8 => f.write_str("E8-D8"),
            NamedLattice::Hexagonal => f.write_str("hexagonal"),
        }
    }
}

fn unit(n: usize, i: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    v[i] = rat(1);
    v
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// The eight simple roots `α_1..α_8` of `E_8` in `R^8`: `e_i − e_{i+1}` for
/// `i ≤ 6`, `α_7 = e_6 + e_7`, `α_8 = −(½,…,½)`.
pub fn e8_simple_roots() -> Vec<Vec<BigRational>> {
    let mut roots: Vec<Vec<BigRational>> =
        (0..6).map(|i| sub(&unit(8, i), &unit(8, i + 1))).collect();
    roots.push(add(&unit(8, 5), &unit(8, 6)));
    roots.push(vec![ratio(-1, 2); 8]);
    roots
}

fn d_basis(d: usize) -> Vec<Vec<BigRational>> {
    let mut rows = vec![add(&unit(d, 0), &unit(d, 1))];
    rows.extend((0..d - 1).map(|i| sub(&unit(d, i), &unit(d, i + 1))));
    rows
}

pub fn construct_named(name: NamedLattice) -> Result<Lattice> {
    let label = name.to_string();
    let basis = match name {
        NamedLattice::Z(d) => {
            if d < 1 {
                return Err(Error::Domain("Z^d needs d >= 1".into()));
            }
            RationalMatrix::identity(d)
        }
        NamedLattice::A(d) => {
            if d < 1 {
                return Err(Error::Domain("A_d needs d >= 1".into()));
            }
            RationalMatrix::from_rows((0..d).map(|i| sub(&unit(d + 1, i), &unit(d + 1, i + 1))).collect())?
        }
        NamedLattice::Hexagonal => {
            return Ok(construct_named(NamedLattice::A(2))?.with_name(label));
        }
        NamedLattice::D(d) => {
            if d < 2 {
                return Err(Error::Domain(format!("D_{d} is degenerate; D_d needs d >= 2")));
            }
            RationalMatrix::from_rows(d_basis(d))?
        }
        NamedLattice::E8 => RationalMatrix::from_rows(e8_simple_roots())?,
        NamedLattice::E7 => RationalMatrix::from_rows(e8_simple_roots().split_off(1))?,
        NamedLattice::E6 => RationalMatrix::from_rows(e8_simple_roots().split_off(2))?,
        NamedLattice::E8FromD8 => {
            let mut gens = d_basis(8);
            gens.push(vec![ratio(1, 2); 8]);
            return Lattice::from_generators(label, &RationalMatrix::from_rows(gens)?);
        }
    };
    Lattice::from_basis(label, basis)
}

/// Gram matrix of a simply-laced Dynkin diagram: 2 on the diagonal, −1 for
/// every edge.
pub fn dynkin_gram(nodes: usize, edges: &[(usize, usize)]) -> Result<RationalMatrix> {
    let mut g = RationalMatrix::zeros(nodes, nodes);
    for i in 0..nodes {
        g[(i, i)] = rat(2);
    }
    for &(a, b) in edges {
        if a >= nodes || b >= nodes {
            return Err(Error::Contract(format!("edge ({a}, {b}) refers to a missing node")));
        }
        if a == b {
            return Err(Error::Contract(format!("self-loop at node {a}")));
        }
        if !g[(a, b)].is_zero() {
            return Err(Error::Contract(format!("duplicate edge ({a}, {b})")));
        }
        g[(a, b)] = rat(-1);
        g[(b, a)] = rat(-1);
    }
    Ok(g)
}

/// Edges of the `E_8` diagram on nodes `0..8` (node `i` is `α_{i+1}`).
pub const E8_DYNKIN_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (4, 6), (6, 7)];

/// The extended diagram with a ninth node attached to `α_1`, whose Gram
/// matrix is singular.
pub const E9_DYNKIN_EDGES: [(usize, usize); 8] =
    [(8, 0), (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (4, 6), (6, 7)];

/// Dual lattice: basis rows `G⁻¹ B`, so `(k_i, v_j) = δ_ij`.
pub fn dual(l: &Lattice) -> Result<Lattice> {
    let inv = l.gram.inverse()?;
    let basis = inv.mul(&l.basis)?;
    Lattice::from_basis(format!("dual({})", l.name), basis)
}

/// Density `v_d r^d / sqrt(Δ)` with `r` half the minimal distance.
pub fn packing_density(l: &Lattice) -> Result<f64> {
    let min = l.min_norm()?;
    let r = to_f64(&min).sqrt() / 2.0;
    Ok(ball_volume(l.dim(), r)?.value / to_f64(&l.discriminant).sqrt())
}

/// Basis of the Z-span of the given rational rows, via Hermite row reduction.
pub fn basis_from_generators(generators: &RationalMatrix) -> Result<RationalMatrix> {
    let den = common_denominator(generators.entries());
    let den_r = BigRational::from_integer(den.clone());
    let rows: Vec<Vec<BigInt>> = (0..generators.rows())
        .map(|i| generators.row(i).iter().map(|x| (x * &den_r).to_integer()).collect())
        .collect();
    let reduced = hermite_rows(rows, generators.cols());
    if reduced.is_empty() {
        return Err(Error::Rank("generators span the zero lattice".into()));
    }
    RationalMatrix::from_rows(
        reduced
            .into_iter()
            .map(|row| row.into_iter().map(|x| BigRational::new(x, den.clone())).collect())
            .collect(),
    )
}

/// Row-style Hermite normal form of an integer matrix; zero rows dropped.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..cols {
        // Euclid on the column among the remaining rows.
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero
                .iter()
                .min_by(|&&a, &&b| rows[a][col].abs().cmp(&rows[b][col].abs()).then(a.cmp(&b)))
                .unwrap();
            let pivot_row = rows[p].clone();
            for &r in &nonzero {
                if r == p {
                    continue;
                }
                let q = rows[r][col].div_floor(&pivot_row[col]);
                for j in 0..cols {
                    let v = &q * &pivot_row[j];
                    rows[r][j] -= v;
                }
            }
        }
        if let Some(p) = (0..rows.len()).find(|&r| !rows[r][col].is_zero()) {
            let mut row = rows.swap_remove(p);
            if row[col].is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            // Reduce earlier pivots' rows above this pivot.
            for prev in out.iter_mut() {
                let q = prev[col].div_floor(&row[col]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let v = &q * &row[j];
                        prev[j] -= v;
                    }
                }
            }
            out.push(row);
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    out
}
