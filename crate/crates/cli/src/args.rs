//! Value parsers for command-line tokens.

use std::f64::consts::PI;

use num_rational::BigRational;
use serde_json::{json, Value};
use spherepack_core::exact::{parse_rational, rational_to_string, RationalMatrix};
use spherepack_core::lattice::{construct_named, Lattice, NamedLattice};

use crate::output::{usage, CliError};

/// A real number token: a decimal, `p/q`, or a symbolic form such as
/// `sqrt2`, `3sqrt2`, `sqrt3/2`, `pi`, `pi/3` or `2pi/3`.
pub fn real(token: &str) -> Result<f64, CliError> {
    let t = token.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let mut value = real_term(num).ok_or_else(|| usage(format!("cannot read {token:?} as a number")))?;
    if let Some(d) = den {
        let d = real_term(d).ok_or_else(|| usage(format!("cannot read {token:?} as a number")))?;
        if d == 0.0 {
            return Err(usage(format!("division by zero in {token:?}")));
        }
        value /= d;
    }
    if !value.is_finite() {
        return Err(usage(format!("{token:?} is not finite")));
    }
    Ok(value)
}

fn real_term(s: &str) -> Option<f64> {
    let s = s.trim();
    let (sign, s) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(s)),
    };
    let lower = s.to_ascii_lowercase();
    let coeff = |c: &str| -> Option<f64> { if c.is_empty() { Some(1.0) } else { c.trim_end_matches('*').parse().ok() } };
    if let Some(c) = lower.strip_suffix("pi") {
        return Some(sign * coeff(c)? * PI);
    }
    if let Some((c, n)) = lower.split_once("sqrt") {
        let n: f64 = n.trim_matches(['(', ')']).parse().ok()?;
        if n < 0.0 {
            return None;
        }
        return Some(sign * coeff(c)? * n.sqrt());
    }
    lower.parse::<f64>().ok().map(|v| sign * v)
}

pub fn rational(token: &str) -> Result<BigRational, CliError> {
    parse_rational(token).map_err(|e| usage(e.to_string()))
}

/// Comma-separated reals.
pub fn reals(token: &str) -> Result<Vec<f64>, CliError> {
    token.split(',').filter(|s| !s.trim().is_empty()).map(real).collect()
}

/// Rows separated by `;`, entries by `,`, e.g. `"1,0;1/2,1"`.
pub fn matrix(token: &str) -> Result<RationalMatrix, CliError> {
    let rows = token
        .split(';')
        .map(|r| r.split(',').map(rational).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    RationalMatrix::from_rows(rows).map_err(|e| usage(e.to_string()))
}

/// Rational vector, e.g. `"1/2,1/2,0"`.
pub fn vector(token: &str) -> Result<Vec<BigRational>, CliError> {
    token.split(',').map(rational).collect()
}

/// A lattice given by name, or by basis rows with `--basis`.
pub fn lattice(name: Option<&str>, basis: Option<&str>) -> Result<Lattice, CliError> {
    match (name, basis) {
        (Some(n), None) => {
            let named: NamedLattice = n.parse().map_err(|e: spherepack_core::Error| usage(e.to_string()))?;
            Ok(construct_named(named)?)
        }
        (None, Some(b)) => Ok(Lattice::from_basis("custom", matrix(b)?)?),
        (Some(_), Some(_)) => Err(usage("give either a lattice name or --basis, not both")),
        (None, None) => Err(usage("missing lattice: give a name such as E8 or --basis ROWS")),
    }
}

pub fn rat_json(x: &BigRational) -> Value {
    json!(rational_to_string(x))
}

pub fn matrix_json(m: &RationalMatrix) -> Value {
    json!(m.to_string_rows())
}

pub fn vector_json(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_reals() {
        assert_eq!(real("sqrt2").unwrap(), 2f64.sqrt());
        assert_eq!(real("3sqrt2").unwrap(), 3.0 * 2f64.sqrt());
        assert_eq!(real("sqrt3/2").unwrap(), 3f64.sqrt() / 2.0);
        assert_eq!(real("pi/3").unwrap(), PI / 3.0);
        assert_eq!(real("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(real("-0.5").unwrap(), -0.5);
        assert_eq!(real("1/4").unwrap(), 0.25);
        assert!(real("sqrt").is_err());
        assert!(real("1/0").is_err());
        assert!(real("banana").is_err());
    }

    #[test]
    fn matrices_and_lattices() {
        let m = matrix("1,0;1/2,3/2").unwrap();
        assert_eq!(m.to_string_rows(), vec![vec!["1", "0"], vec!["1/2", "3/2"]]);
        assert!(matrix("1,0;1").is_err());
        assert_eq!(lattice(Some("E8"), None).unwrap().dim(), 8);
        assert!(lattice(Some("Q7"), None).is_err());
        assert!(lattice(None, None).is_err());
    }
}
