use std::f64::consts::SQRT_2;

use clap::Subcommand;
use serde_json::json;
use spherepack_core::lpbound::{solve_bound, verify_function, GridSpec, RadialFunctionRep, UNCERTIFIED};

use crate::args;
use crate::output::{usage, CliError, Report, Table};

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Minimize f(0)/f̂(0) over Laguerre–Gaussian combinations with sampled sign conditions.
    Lp {
        #[arg(long)]
        dim: usize,
        /// Sign-change radius R (twice the sphere radius); accepts sqrtN.
        #[arg(long, default_value = "sqrt2")]
        radius: String,
        /// Highest Laguerre degree K.
        #[arg(long, default_value_t = 30)]
        degree: usize,
        /// Constraint grid spacing, in units where R = √2.
        #[arg(long, default_value = "sqrt2/40")]
        spacing: String,
        /// Extent of the f̂ ≥ 0 grid, in units where R = √2.
        #[arg(long, default_value = "8")]
        pos_max: String,
        /// Extent of the f ≤ 0 grid, in units where R = √2.
        #[arg(long, default_value = "8")]
        neg_max: String,
        /// Samples of (t, f, f̂) in the CSV output.
        #[arg(long, default_value_t = 401)]
        samples: usize,
    },
    /// Check the sign conditions of a given function on a fine grid.
    Verify {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "sqrt2")]
        radius: String,
        /// Coefficients c_0, …, c_K over φ_k(t/λ).
        #[arg(long)]
        coefficients: String,
        /// λ.
        #[arg(long, default_value = "1")]
        scale: String,
        #[arg(long, default_value = "0.005")]
        spacing: String,
    },
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::Lp { .. } => "lp",
            Verb::Verify { .. } => "verify",
        }
    }
}

fn profile(f: &RadialFunctionRep, t_max: f64, n: usize) -> Table {
    let mut table = Table::new(vec!["t", "f", "fhat"]);
    let n = n.max(2);
    for i in 0..n {
        let t = t_max * i as f64 / (n - 1) as f64;
        table.push(vec![json!(t), json!(f.eval(t)), json!(f.eval_fourier(t))]);
    }
    table
}

pub fn run(verb: &Verb) -> Result<Report, CliError> {
    match verb {
        Verb::Lp { dim, radius, degree, spacing, pos_max, neg_max, samples } => {
            let r = args::real(radius)?;
            let grid = GridSpec {
                spacing: args::real(spacing)?,
                pos_max: args::real(pos_max)?,
                neg_max: args::real(neg_max)?,
            };
            let res = solve_bound(*dim, r, *degree, &grid)?;
            let table = profile(&res.function, 4.0 * r, *samples);
            Ok(Report::new(
                json!({
                    "dim": dim,
                    "radius": r,
                    "degree": degree,
                    "spacing": grid.spacing,
                    "posMax": grid.pos_max,
                    "negMax": grid.neg_max,
                }),
                json!({
                    "bound": res.bound,
                    "label": res.label,
                    "coefficients": res.function.coefficients,
                    "scale": res.function.scale,
                    "maxPosViolation": res.max_pos_violation,
                    "maxNegViolation": res.max_neg_violation,
                    "flagged": res.flagged,
                    "zerosNear": res.zeros_near,
                    "constraints": res.constraints,
                    "refinementRounds": res.refinement_rounds,
                    "iterations": res.iterations,
                    "gridUnitsRadius": SQRT_2,
                }),
            )
            .with_table(table))
        }
        Verb::Verify { dim, radius, coefficients, scale, spacing } => {
            let r = args::real(radius)?;
            let c = args::reals(coefficients)?;
            if c.is_empty() {
                return Err(usage("--coefficients is empty"));
            }
            let f = RadialFunctionRep::with_scale(*dim, c, args::real(scale)?)?;
            let h = args::real(spacing)?;
            let v = verify_function(&f, r, h)?;
            let fhat0 = f.eval_fourier(0.0);
            Ok(Report::new(
                json!({ "dim": dim, "radius": r, "coefficients": f.coefficients, "scale": f.scale, "spacing": h }),
                json!({
                    "ratio": f.eval(0.0) / fhat0,
                    "label": UNCERTIFIED,
                    "maxPosViolation": v.max_pos_violation,
                    "maxNegViolation": v.max_neg_violation,
                    "zerosNear": v.zeros_near,
                }),
            )
            .with_table(profile(&f, 4.0 * r, 401)))
        }
    }
}
