use clap::Subcommand;
use serde_json::{json, Value};
use spherepack_core::exact::to_f64;
use spherepack_core::lattice::{
    construct_named, dual, enumerate_shells, enumerate_shells_with, fluid_diamond_min_distance,
    fluid_diamond_shift, packing_density, reduce_2d, reduce_2d_gram, Lattice, NamedLattice,
    PeriodicPointSet, ShellOptions,
};
use spherepack_core::modular::theta_series;

use super::shells_json;
use crate::args::{self, matrix_json, rat_json};
use crate::output::{usage, CliError, Report, Table};
use crate::svg;

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Basis, Gram matrix and invariants.
    Info {
        /// E8, E7, E6, D4, A2, Z3, E8-D8, hexagonal, ...
        name: Option<String>,
        /// Basis rows instead of a name, e.g. "1,0;1/2,1".
        #[arg(long)]
        basis: Option<String>,
    },
    /// Theta series of an even lattice.
    Theta {
        name: Option<String>,
        #[arg(long)]
        basis: Option<String>,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Vector counts by squared norm.
    Shells {
        name: Option<String>,
        #[arg(long)]
        basis: Option<String>,
        /// Largest squared norm, a rational such as 8 or 10/3.
        #[arg(long, default_value = "8")]
        max_norm: String,
        /// Include one vector of each ± pair, in basis coordinates.
        #[arg(long)]
        representatives: bool,
    },
    /// Packing density, or a table of the classical lattices.
    Density {
        name: Option<String>,
        #[arg(long)]
        basis: Option<String>,
        /// Densities of A1, A2, A3, D4, D5, E6, E7, E8.
        #[arg(long)]
        table: bool,
    },
    /// Dual lattice.
    Dual {
        name: Option<String>,
        #[arg(long)]
        basis: Option<String>,
    },
    /// Reduce a planar lattice to the standard fundamental domain.
    Reduce2d {
        /// Two basis vectors, e.g. "1,0;0.3,2".
        #[arg(long)]
        basis: Option<String>,
        /// Gram entries "a,b,c" of [[a,b],[b,c]].
        #[arg(long)]
        gram: Option<String>,
    },
    /// The nine-dimensional fluid diamond packing.
    Fluid {
        /// Coordinate index of the shift, 1..9.
        #[arg(long, default_value_t = 1)]
        index: usize,
        /// Shift amount.
        #[arg(long, default_value = "0")]
        t: String,
    },
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::Info { .. } => "info",
            Verb::Theta { .. } => "theta",
            Verb::Shells { .. } => "shells",
            Verb::Density { .. } => "density",
            Verb::Dual { .. } => "dual",
            Verb::Reduce2d { .. } => "reduce2d",
            Verb::Fluid { .. } => "fluid",
        }
    }
}

fn source(name: &Option<String>, basis: &Option<String>) -> Value {
    json!({ "name": name, "basis": basis })
}

fn describe(l: &Lattice) -> Result<Value, CliError> {
    Ok(json!({
        "name": l.name(),
        "dim": l.dim(),
        "ambientDim": l.ambient(),
        "basis": matrix_json(l.basis()),
        "gram": matrix_json(l.gram()),
        "discriminant": rat_json(l.discriminant()),
        "integral": l.is_integral(),
        "even": l.is_even(),
        "unimodular": l.is_unimodular(),
    }))
}

pub fn run(verb: &Verb) -> Result<Report, CliError> {
    match verb {
        Verb::Info { name, basis } => {
            let l = args::lattice(name.as_deref(), basis.as_deref())?;
            let min = l.min_norm()?;
            let shells = enumerate_shells(&l, &min)?;
            let kissing = shells.iter().find(|s| s.norm_sq == min).map_or(0, |s| s.count);
            let mut result = describe(&l)?;
            result["minNormSq"] = rat_json(&min);
            result["kissing"] = json!(kissing);
            result["density"] = json!(packing_density(&l)?);
            Ok(Report::new(source(name, basis), result))
        }
        Verb::Theta { name, basis, order } => {
            let l = args::lattice(name.as_deref(), basis.as_deref())?;
            let t = theta_series(&l, *order)?;
            let mut table = Table::new(vec!["n", "coeff"]);
            for (n, c) in t.coeff_strings().into_iter().enumerate() {
                table.push(vec![json!(n), json!(c)]);
            }
            let mut params = source(name, basis);
            params["order"] = json!(order);
            Ok(Report::new(params, json!({ "lattice": l.name(), "coeffs": t.coeff_strings() })).with_table(table))
        }
        Verb::Shells { name, basis, max_norm, representatives } => {
            let l = args::lattice(name.as_deref(), basis.as_deref())?;
            let max = args::rational(max_norm)?;
            let opts = ShellOptions { representatives: *representatives, ..Default::default() };
            let shells = enumerate_shells_with(l.gram(), &max, &opts)?;
            let (list, table) = shells_json(&shells);
            let mut params = source(name, basis);
            params["maxNorm"] = rat_json(&max);
            params["representatives"] = json!(representatives);
            Ok(Report::new(params, json!({ "lattice": l.name(), "shells": list })).with_table(table))
        }
        Verb::Density { name, basis, table: true } => {
            if name.is_some() || basis.is_some() {
                return Err(usage("--table takes no lattice"));
            }
            let names = [
                NamedLattice::A(1),
                NamedLattice::A(2),
                NamedLattice::A(3),
                NamedLattice::D(4),
                NamedLattice::D(5),
                NamedLattice::E6,
                NamedLattice::E7,
                NamedLattice::E8,
            ];
            let mut table = Table::new(vec!["lattice", "dim", "density"]);
            let mut rows = Vec::new();
            let mut bars = Vec::new();
            for n in names {
                let l = construct_named(n)?;
                let d = packing_density(&l)?;
                table.push(vec![json!(n.to_string()), json!(l.dim()), json!(d)]);
                rows.push(json!({ "lattice": n.to_string(), "dim": l.dim(), "density": d }));
                bars.push((n.to_string(), d));
            }
            Ok(Report::new(json!({ "table": true }), json!({ "densities": rows }))
                .with_table(table)
                .with_svg(svg::density_table(&bars)))
        }
        Verb::Density { name, basis, table: false } => {
            let l = args::lattice(name.as_deref(), basis.as_deref())?;
            let min = l.min_norm()?;
            Ok(Report::new(
                source(name, basis),
                json!({
                    "lattice": l.name(),
                    "minNormSq": rat_json(&min),
                    "packingRadius": to_f64(&min).sqrt() / 2.0,
                    "density": packing_density(&l)?,
                }),
            ))
        }
        Verb::Dual { name, basis } => {
            let l = args::lattice(name.as_deref(), basis.as_deref())?;
            let d = dual(&l)?;
            Ok(Report::new(source(name, basis), describe(&d)?))
        }
        Verb::Reduce2d { basis, gram } => {
            let (r, params) = match (basis, gram) {
                (Some(b), None) => {
                    let rows: Vec<Vec<f64>> =
                        b.split(';').map(args::reals).collect::<Result<_, _>>()?;
                    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
                        return Err(usage("--basis needs two vectors of length 2"));
                    }
                    (reduce_2d([rows[0][0], rows[0][1]], [rows[1][0], rows[1][1]])?, json!({ "basis": b }))
                }
                (None, Some(g)) => {
                    let v = args::reals(g)?;
                    if v.len() != 3 {
                        return Err(usage("--gram needs three entries a,b,c"));
                    }
                    (reduce_2d_gram(v[0], v[1], v[2])?, json!({ "gram": g }))
                }
                _ => return Err(usage("give exactly one of --basis or --gram")),
            };
            Ok(Report::new(
                params,
                json!({
                    "v": r.v,
                    "vPrime": r.v_prime,
                    "tau": { "re": r.tau.re, "im": r.tau.im },
                }),
            ))
        }
        Verb::Fluid { index, t } => {
            let tv = args::real(t)?;
            let shift = fluid_diamond_shift(*index, tv)?;
            let between = fluid_diamond_min_distance(*index, tv)?;
            let set = PeriodicPointSet::fluid_diamond(*index, tv)?;
            Ok(Report::new(
                json!({ "index": index, "t": tv }),
                json!({
                    "shift": shift,
                    "interTranslateDistance": between,
                    "latticeMinDistance": set.translate_distance(0, 0)?,
                    "minDistance": set.min_distance()?,
                }),
            ))
        }
    }
}
