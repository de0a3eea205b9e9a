use clap::Subcommand;
use num_bigint::BigInt;
use serde_json::json;
use spherepack_core::coxeter::{
    coxeter_element, coxeter_matrix_element, coxeter_plane_project, cyclotomic_poly,
    eta_realization, RootSystem,
};
use spherepack_core::exact::rat;

use crate::args::{self, matrix_json, vector_json};
use crate::output::{usage, CliError, Report, Table};
use crate::svg;

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// The Coxeter element of E8 as a product of two involutions.
    Element {
        /// Ambient vector v for the matrix elements (C^i v, w).
        #[arg(long)]
        v: Option<String>,
        /// Ambient vector w; defaults to v.
        #[arg(long)]
        w: Option<String>,
    },
    /// Projection of the 240 roots to the Coxeter plane.
    Project,
    /// E8 as a lattice in a cyclotomic field.
    Eta {
        #[arg(long, default_value_t = 30)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        scale: i64,
    },
    /// Cyclotomic polynomial Ψ_m, coefficients from the constant term up.
    Cyclotomic {
        #[arg(long)]
        m: usize,
    },
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::Element { .. } => "element",
            Verb::Project => "project",
            Verb::Eta { .. } => "eta",
            Verb::Cyclotomic { .. } => "cyclotomic",
        }
    }
}

fn ints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

pub fn run(verb: &Verb) -> Result<Report, CliError> {
    match verb {
        Verb::Element { v, w } => {
            let c = coxeter_element()?;
            let four_c = c.matrix.scale(&rat(4));
            let mut result = json!({
                "matrix": matrix_json(&c.matrix),
                "fourTimesMatrix": matrix_json(&four_c),
                "green": matrix_json(&c.green),
                "blue": matrix_json(&c.blue),
                "order": c.order,
                "charPoly": ints(&c.char_poly),
            });
            if let Some(v) = v {
                let vv = args::vector(v)?;
                let ww = match w {
                    Some(w) => args::vector(w)?,
                    None => vv.clone(),
                };
                if vv.len() != 8 || ww.len() != 8 {
                    return Err(usage("--v and --w need eight coordinates"));
                }
                result["matrixElements"] = vector_json(&coxeter_matrix_element(&c, &vv, &ww)?);
            } else if w.is_some() {
                return Err(usage("--w requires --v"));
            }
            Ok(Report::new(json!({ "v": v, "w": w }), result))
        }
        Verb::Project => {
            let rs = RootSystem::e8();
            let c = coxeter_element()?;
            let p = coxeter_plane_project(&rs, &c)?;
            let mut table = Table::new(vec!["re", "im"]);
            for z in &p.points {
                table.push(vec![json!(z.re), json!(z.im)]);
            }
            let points: Vec<_> = p.points.iter().map(|z| json!([z.re, z.im])).collect();
            Ok(Report::new(json!({}), json!({ "count": points.len(), "residual": p.residual, "points": points }))
                .with_table(table)
                .with_svg(svg::coxeter(&p.points)))
        }
        Verb::Eta { m, scale } => {
            let e = eta_realization(*m, *scale)?;
            let mut table = Table::new(vec!["i", "eta", "spectrum"]);
            for (i, (a, s)) in e.eta.iter().zip(&e.spectrum).enumerate() {
                table.push(vec![json!(i), json!(a), json!(s)]);
            }
            let v = &e.verification;
            Ok(Report::new(
                json!({ "m": m, "scale": scale }),
                json!({
                    "eta": e.eta,
                    "spectrum": e.spectrum,
                    "gram": matrix_json(&e.gram),
                    "verification": {
                        "even": v.even,
                        "unimodular": v.unimodular,
                        "positiveDefinite": v.positive_definite,
                        "rootCount": v.root_count,
                        "spectrumPattern": v.spectrum_pattern,
                        "passed": v.passed(),
                    },
                }),
            )
            .with_table(table))
        }
        Verb::Cyclotomic { m } => {
            let p = cyclotomic_poly(*m)?;
            Ok(Report::new(json!({ "m": m }), json!({ "degree": p.len() - 1, "coeffs": ints(&p) })))
        }
    }
}
