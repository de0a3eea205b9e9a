use clap::Subcommand;
use serde_json::json;
use spherepack_core::geometry::{
    ball_volume, cap_fraction_and_contact_bound, saturate_random, TOUCHING_HALF_ANGLE,
    DEFAULT_STREAK,
};

use crate::args::{self, rat_json};
use crate::output::{CliError, Report, Table};

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Volume of a d-dimensional ball, exactly and by Stirling's formula.
    Ballvol {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "1")]
        radius: String,
    },
    /// Spherical cap fraction and the resulting contact bound.
    Cap {
        /// Cap height over radius; the default is the cap shadowed by a touching sphere.
        #[arg(long, default_value = "sqrt3/2")]
        h_over_r: String,
    },
    /// Random sequential packing on a torus, run until a rejection streak.
    Saturate {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "20")]
        side: String,
        #[arg(long, default_value = "1")]
        radius: String,
        #[arg(long, default_value_t = DEFAULT_STREAK)]
        streak: u64,
    },
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::Ballvol { .. } => "ballvol",
            Verb::Cap { .. } => "cap",
            Verb::Saturate { .. } => "saturate",
        }
    }
}

pub fn run(verb: &Verb, seed: u64) -> Result<Report, CliError> {
    match verb {
        Verb::Ballvol { dim, radius } => {
            let r = args::real(radius)?;
            let b = ball_volume(*dim, r)?;
            Ok(Report::new(
                json!({ "dim": dim, "radius": r }),
                json!({
                    "value": b.value,
                    "coefficient": rat_json(&b.coefficient),
                    "piPower": b.pi_power,
                    "stirling": b.stirling,
                    "stirlingRelError": b.stirling_rel_error,
                }),
            ))
        }
        Verb::Cap { h_over_r } => {
            let h = args::real(h_over_r)?;
            let c = cap_fraction_and_contact_bound(h)?;
            Ok(Report::new(
                json!({ "hOverR": h }),
                json!({
                    "fraction": c.fraction,
                    "reciprocal": c.reciprocal,
                    "maxCaps": c.max_caps,
                    "touchingHalfAngle": TOUCHING_HALF_ANGLE,
                }),
            ))
        }
        Verb::Saturate { dim, side, radius, streak } => {
            let (l, r) = (args::real(side)?, args::real(radius)?);
            let s = saturate_random(*dim, l, r, seed, *streak)?;
            let header = ["x", "y", "z"][..s.d].to_vec();
            let mut table = Table::new(header);
            for c in &s.centers {
                table.push(c.iter().map(|x| json!(x)).collect());
            }
            let lower = 0.5f64.powi(s.d as i32);
            Ok(Report::new(
                json!({ "dim": dim, "side": l, "radius": r, "streak": streak, "seed": seed }),
                json!({
                    "count": s.count,
                    "density": s.density,
                    "lowerBound": lower,
                    "meetsLowerBound": s.density >= lower,
                    "coverage": s.coverage,
                    "coveragePass": s.coverage >= 0.999,
                }),
            )
            .with_table(table))
        }
    }
}
