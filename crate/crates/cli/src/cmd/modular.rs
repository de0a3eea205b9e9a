use clap::Subcommand;
use serde_json::json;
use spherepack_core::modular::{bernoulli, eisenstein, theta_series, QSeries};

use crate::args::{self, rat_json};
use crate::output::{CliError, Report, Table};

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// q-expansion of E_k for k = 2, 4, 6.
    Eisenstein {
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Theta series of an even lattice.
    Theta {
        name: Option<String>,
        #[arg(long)]
        basis: Option<String>,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Bernoulli number B_k.
    Bernoulli {
        #[arg(long)]
        k: usize,
    },
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::Eisenstein { .. } => "eisenstein",
            Verb::Theta { .. } => "theta",
            Verb::Bernoulli { .. } => "bernoulli",
        }
    }
}

fn series_table(q: &QSeries) -> Table {
    let mut t = Table::new(vec!["n", "coeff"]);
    for (n, c) in q.coeff_strings().into_iter().enumerate() {
        t.push(vec![json!(n), json!(c)]);
    }
    t
}

pub fn run(verb: &Verb) -> Result<Report, CliError> {
    match verb {
        Verb::Eisenstein { k, order } => {
            let e = eisenstein(*k, *order)?;
            Ok(Report::new(json!({ "k": k, "order": order }), json!({ "coeffs": e.coeff_strings() }))
                .with_table(series_table(&e)))
        }
        Verb::Theta { name, basis, order } => {
            let l = args::lattice(name.as_deref(), basis.as_deref())?;
            let t = theta_series(&l, *order)?;
            Ok(Report::new(
                json!({ "name": name, "basis": basis, "order": order }),
                json!({ "lattice": l.name(), "coeffs": t.coeff_strings() }),
            )
            .with_table(series_table(&t)))
        }
        Verb::Bernoulli { k } => {
            let b = bernoulli(*k)?;
            Ok(Report::new(json!({ "k": k }), json!({ "value": rat_json(&b) })))
        }
    }
}
