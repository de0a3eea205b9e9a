//! Binary linear codes and the lattice `Ĉ = {v ∈ Z^d : v mod 2 ∈ C}`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{ratio, RationalMatrix};
use crate::lattice::{basis_from_generators, Lattice};

/// Largest code handled by exhaustive listing.
pub const MAX_CODEWORDS_LOG2: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCode {
    length: usize,
    generators: Vec<Vec<u8>>,
}

impl BinaryCode {
    /// Generators must be 0/1 vectors of the given length, independent over GF(2).
    pub fn new(length: usize, generators: Vec<Vec<u8>>) -> Result<Self> {
        for g in &generators {
            if g.len() != length {
                return Err(Error::Dimension(format!(
                    "generator of length {} in a code of length {length}",
                    g.len()
                )));
            }
            if g.iter().any(|&b| b > 1) {
                return Err(Error::Parse("generator entries must be 0 or 1".into()));
            }
        }
        if gf2_rank(&generators) != generators.len() {
            return Err(Error::Rank("generators are dependent over GF(2)".into()));
        }
        Ok(Self { length, generators })
    }

    /// Parses rows like `"01010101"`.
    pub fn from_strings(rows: &[&str]) -> Result<Self> {
        let length = rows.first().map_or(0, |r| r.len());
        let gens = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        _ => Err(Error::Parse(format!("bad bit {c:?} in {r:?}"))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(length, gens)
    }

    /// The code of the given length with no nonzero words.
    pub fn zero(length: usize) -> Self {
        Self { length, generators: Vec::new() }
    }

    /// All of `{0,1}^length`.
    pub fn full(length: usize) -> Self {
        let gens = (0..length)
            .map(|i| (0..length).map(|j| u8::from(i == j)).collect())
            .collect();
        Self { length, generators: gens }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<u8>] {
        &self.generators
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| g.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect())
            .collect()
    }

    /// Every codeword, in the order of the binary expansion of the
    /// generator selection mask.
    pub fn codewords(&self) -> Result<Vec<Vec<u8>>> {
        let k = self.dimension();
        if k > MAX_CODEWORDS_LOG2 {
            return Err(Error::Resource(format!("2^{k} codewords is too many to list")));
        }
        Ok((0u64..1 << k)
            .map(|mask| {
                let mut w = vec![0u8; self.length];
                for (i, g) in self.generators.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        w.iter_mut().zip(g).for_each(|(a, b)| *a ^= b);
                    }
                }
                w
            })
            .collect())
    }

    /// Minimum weight of a nonzero codeword; `None` for the zero code.
    pub fn min_distance(&self) -> Result<Option<usize>> {
        Ok(self
            .codewords()?
            .iter()
            .map(|w| w.iter().filter(|&&b| b == 1).count())
            .filter(|&wt| wt > 0)
            .min())
    }

    /// Whether the code equals its dual under the standard inner product.
    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension() == self.length
            && self.generators.iter().all(|a| {
                self.generators
                    .iter()
                    .all(|b| a.iter().zip(b).filter(|(x, y)| **x & **y == 1).count() % 2 == 0)
            })
    }
}

fn gf2_rank(rows: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) else { continue };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] == 1 {
                row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

/// The `[8, 4, 4]` extended Hamming code with systematic generator `[I_4 | A]`.
pub fn extended_hamming_8_4() -> BinaryCode {
    BinaryCode::from_strings(&["10001101", "01001011", "00100111", "00011110"])
        .expect("fixed generator is valid")
}

#[derive(Debug, Clone)]
pub struct ConstructionA {
    pub lattice: Lattice,
    /// Gram matrix of `Ĉ / √2`, present when every norm in `Ĉ` is even.
    pub halved_gram: Option<RationalMatrix>,
}

/// `Ĉ`, with basis from Hermite reduction of the lifted generators and the
/// rows `2e_i`.
pub fn construction_lattice(c: &BinaryCode) -> Result<ConstructionA> {
    let d = c.length();
    if d == 0 {
        return Err(Error::Dimension("code of length 0".into()));
    }
    let mut rows: Vec<Vec<BigRational>> = c
        .generators()
        .iter()
        .map(|g| g.iter().map(|&b| ratio(b as i64, 1)).collect())
        .collect();
    for i in 0..d {
        rows.push((0..d).map(|j| ratio(if i == j { 2 } else { 0 }, 1)).collect());
    }
    let basis = basis_from_generators(&RationalMatrix::from_rows(rows)?)?;
    let lattice = Lattice::from_basis(format!("construction-A[{d},{}]", c.dimension()), basis)?;
    let gram = lattice.gram();
    let even = (0..d).all(|i| gram[(i, i)].to_integer() % BigInt::from(2) == BigInt::from(0));
    let halved_gram = even.then(|| gram.scale(&ratio(1, 2)));
    Ok(ConstructionA { lattice, halved_gram })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{determinant, rat};
    use crate::lattice::enumerate_shells_with;
    use crate::lattice::ShellOptions;

    #[test]
    fn hamming_parameters() {
        let h = extended_hamming_8_4();
        let words = h.codewords().unwrap();
        assert_eq!(words.len(), 16);
        assert!(words.contains(&vec![0; 8]));
        assert!(words.contains(&vec![1; 8]));
        assert_eq!(h.min_distance().unwrap(), Some(4));
        assert!(h.is_self_dual());
    }

    #[test]
    fn small_codes() {
        let rep = BinaryCode::from_strings(&["111"]).unwrap();
        assert_eq!(rep.min_distance().unwrap(), Some(3));
        assert_eq!(BinaryCode::full(2).min_distance().unwrap(), Some(1));
        assert_eq!(BinaryCode::zero(3).min_distance().unwrap(), None);
    }

    #[test]
    fn dependent_generators_rejected() {
        assert!(matches!(BinaryCode::from_strings(&["110", "011", "101"]), Err(Error::Rank(_))));
        assert!(BinaryCode::from_strings(&["12"]).is_err());
    }

    #[test]
    fn trivial_constructions() {
        let zero = construction_lattice(&BinaryCode::zero(3)).unwrap();
        assert_eq!(zero.lattice.discriminant(), &rat(64));
        let full = construction_lattice(&BinaryCode::full(3)).unwrap();
        assert_eq!(full.lattice.gram(), &RationalMatrix::identity(3));
        assert!(full.halved_gram.is_none());
    }

    #[test]
    fn hamming_gives_e8() {
        let a = construction_lattice(&extended_hamming_8_4()).unwrap();
        assert_eq!(a.lattice.discriminant(), &rat(256));
        let g = a.halved_gram.unwrap();
        assert_eq!(determinant(&g).unwrap(), rat(1));
        assert!(g.is_integral());
        let shells = enumerate_shells_with(&g, &rat(2), &ShellOptions::default()).unwrap();
        assert_eq!(shells[1].count, 240);
    }
}
