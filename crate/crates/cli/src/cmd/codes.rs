use clap::Subcommand;
use serde_json::{json, Value};
use spherepack_core::codes::{construction_lattice, extended_hamming_8_4, BinaryCode};
use spherepack_core::lattice::{enumerate_shells, enumerate_shells_with, ShellOptions};

use super::shells_json;
use crate::args::{self, matrix_json, rat_json};
use crate::output::{usage, CliError, Report};

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// The extended Hamming [8,4,4] code.
    Hamming84,
    /// Construction A lattice of a binary code.
    Construct {
        /// Generator rows such as "1100,0011"; defaults to the extended Hamming code.
        #[arg(long)]
        generators: Option<String>,
        /// Largest squared norm for shell tables.
        #[arg(long, default_value = "8")]
        max_norm: String,
    },
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::Hamming84 => "hamming84",
            Verb::Construct { .. } => "construct",
        }
    }
}

fn describe(c: &BinaryCode) -> Result<Value, CliError> {
    let words = c.codewords()?;
    let mut weights = vec![0u64; c.length() + 1];
    for w in &words {
        weights[w.iter().filter(|&&b| b == 1).count()] += 1;
    }
    Ok(json!({
        "length": c.length(),
        "dimension": c.dimension(),
        "generators": c.generator_strings(),
        "size": words.len(),
        "minDistance": c.min_distance()?,
        "weightDistribution": weights,
        "selfDual": c.is_self_dual(),
    }))
}

pub fn run(verb: &Verb) -> Result<Report, CliError> {
    match verb {
        Verb::Hamming84 => Ok(Report::new(json!({}), describe(&extended_hamming_8_4())?)),
        Verb::Construct { generators, max_norm } => {
            let code = match generators {
                None => extended_hamming_8_4(),
                Some(g) => {
                    let rows: Vec<&str> = g.split(',').map(str::trim).collect();
                    if rows.iter().any(|r| r.len() != rows[0].len()) {
                        return Err(usage("generator rows must have equal length"));
                    }
                    BinaryCode::from_strings(&rows)?
                }
            };
            let max = args::rational(max_norm)?;
            let a = construction_lattice(&code)?;
            let (shells, table) = shells_json(&enumerate_shells(&a.lattice, &max)?);
            let mut result = json!({
                "code": describe(&code)?,
                "basis": matrix_json(a.lattice.basis()),
                "gram": matrix_json(a.lattice.gram()),
                "discriminant": rat_json(a.lattice.discriminant()),
                "minNormSq": rat_json(&a.lattice.min_norm()?),
                "shells": shells,
                "halvedGram": Value::Null,
                "halvedShells": Value::Null,
            });
            let mut report_table = table;
            if let Some(h) = &a.halved_gram {
                let (hs, ht) = shells_json(&enumerate_shells_with(h, &max, &ShellOptions::default())?);
                result["halvedGram"] = matrix_json(h);
                result["halvedShells"] = hs;
                report_table = ht;
            }
            Ok(Report::new(json!({ "generators": code.generator_strings(), "maxNorm": rat_json(&max) }), result)
                .with_table(report_table))
        }
    }
}
