pub mod bound;
pub mod codes;
pub mod coxeter;
pub mod fourier;
pub mod geometry;
pub mod lattice;
pub mod modular;

use serde_json::{json, Value};
use spherepack_core::lattice::Shell;

use crate::args::rat_json;
use crate::output::Table;

/// Shell list as JSON, with a matching CSV table.
pub fn shells_json(shells: &[Shell]) -> (Value, Table) {
    let mut table = Table::new(vec!["normSq", "count"]);
    let list = shells
        .iter()
        .map(|s| {
            table.push(vec![rat_json(&s.norm_sq), json!(s.count)]);
            let mut v = json!({ "normSq": rat_json(&s.norm_sq), "count": s.count });
            if let Some(reps) = &s.representatives {
                v["representatives"] = json!(reps);
            }
            v
        })
        .collect();
    (Value::Array(list), table)
}
