use std::f64::consts::PI;

use clap::Subcommand;
use num_complex::Complex64;
use serde_json::json;
use spherepack_core::harmonic::{
    cap_fourier, dft_zm, is_positive_definite_function, poisson_default_cutoff,
    poisson_gaussian_check, PeriodicSamples,
};

use crate::args;
use crate::output::{usage, CliError, Report, Table};
use crate::svg;

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Transform of a function on Z/m, normalized by 1/m.
    Dft {
        /// Real parts, comma-separated.
        #[arg(long)]
        values: String,
        /// Imaginary parts, comma-separated.
        #[arg(long)]
        imag: Option<String>,
    },
    /// Whether a conjugate-symmetric function on Z/m is positive definite.
    Posdef {
        #[arg(long)]
        values: String,
        #[arg(long)]
        imag: Option<String>,
    },
    /// Partial sums of the Fourier series of a cap indicator.
    Gibbs {
        /// Cap half-angle, e.g. pi/3.
        #[arg(long, default_value = "pi/3")]
        phi0: String,
        #[arg(long, default_value_t = 50)]
        terms: usize,
        /// Sample count on [−π, π].
        #[arg(long, default_value_t = 721)]
        points: usize,
    },
    /// Both sides of Poisson summation for a Gaussian on a lattice.
    Poisson {
        name: Option<String>,
        #[arg(long)]
        basis: Option<String>,
        #[arg(long, default_value = "1")]
        alpha: String,
        /// Squared-norm cutoff; chosen automatically when absent.
        #[arg(long)]
        cutoff: Option<String>,
    },
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::Dft { .. } => "dft",
            Verb::Posdef { .. } => "posdef",
            Verb::Gibbs { .. } => "gibbs",
            Verb::Poisson { .. } => "poisson",
        }
    }
}

fn samples(values: &str, imag: Option<&str>) -> Result<PeriodicSamples, CliError> {
    let re = args::reals(values)?;
    let im = match imag {
        Some(s) => args::reals(s)?,
        None => vec![0.0; re.len()],
    };
    if re.len() != im.len() {
        return Err(usage("--values and --imag must have the same length"));
    }
    Ok(PeriodicSamples::new(re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect())?)
}

fn spectrum(f: &PeriodicSamples) -> (Vec<serde_json::Value>, Table) {
    let mut table = Table::new(vec!["j", "re", "im"]);
    let list = dft_zm(f)
        .coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| {
            table.push(vec![json!(j), json!(c.re), json!(c.im)]);
            json!({ "j": j, "re": c.re, "im": c.im })
        })
        .collect();
    (list, table)
}

pub fn run(verb: &Verb) -> Result<Report, CliError> {
    match verb {
        Verb::Dft { values, imag } => {
            let f = samples(values, imag.as_deref())?;
            let (coeffs, table) = spectrum(&f);
            Ok(Report::new(json!({ "values": values, "imag": imag }), json!({ "m": f.m(), "coeffs": coeffs }))
                .with_table(table))
        }
        Verb::Posdef { values, imag } => {
            let f = samples(values, imag.as_deref())?;
            let pd = is_positive_definite_function(&f)?;
            let (coeffs, table) = spectrum(&f);
            Ok(Report::new(
                json!({ "values": values, "imag": imag }),
                json!({ "m": f.m(), "positiveDefinite": pd, "coeffs": coeffs }),
            )
            .with_table(table))
        }
        Verb::Gibbs { phi0, terms, points } => {
            let phi0 = args::real(phi0)?;
            let series = cap_fourier(phi0, *terms)?;
            let grid = series.grid(*points);
            let mut table = Table::new(vec!["phi", "partialSum", "step"]);
            for &(phi, s) in &grid {
                table.push(vec![json!(phi), json!(s), json!(series.step(phi))]);
            }
            let max = grid.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
            let min = grid.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
            Ok(Report::new(
                json!({ "phi0": phi0, "terms": terms, "points": points }),
                json!({
                    "coeffs": series.coeffs,
                    "maxPartialSum": max,
                    "minPartialSum": min,
                    "overshoot": max - 1.0,
                    "samples": grid.iter().map(|(p, s)| json!([p, s])).collect::<Vec<_>>(),
                }),
            )
            .with_table(table)
            .with_svg(svg::gibbs(&series, &grid, PI)))
        }
        Verb::Poisson { name, basis, alpha, cutoff } => {
            let l = args::lattice(name.as_deref(), basis.as_deref())?;
            let a = args::real(alpha)?;
            let c = match cutoff {
                Some(c) => args::real(c)?,
                None => poisson_default_cutoff(&l, a),
            };
            let p = poisson_gaussian_check(&l, a, c)?;
            Ok(Report::new(
                json!({ "name": name, "basis": basis, "alpha": a, "cutoff": c }),
                json!({
                    "lattice": l.name(),
                    "lhs": p.lhs,
                    "rhs": p.rhs,
                    "absError": p.abs_error,
                    "lhsTail": p.lhs_tail,
                    "rhsTail": p.rhs_tail,
                    "dualCutoff": p.dual_cutoff,
                }),
            ))
        }
    }
}
