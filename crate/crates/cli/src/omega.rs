//! The `omega` subcommand: per-object sieve counts and members.

use propcoh_core::fincat::FiniteCategory;
use propcoh_core::topos::sieves_on;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct OmegaRow {
    pub object: String,
    pub count: usize,
    pub sieves: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OmegaTable {
    pub rows: Vec<OmegaRow>,
}

/// Tabulates Ω of a category: sieve counts and members per object, in
/// declaration order.
pub fn omega_cmd(cat: &FiniteCategory) -> Result<OmegaTable, CliError> {
    let mut rows = Vec::new();
    for o in cat.objects() {
        let sieves = sieves_on(cat, o).map_err(CliError::Core)?;
        rows.push(OmegaRow {
            object: o.clone(),
            count: sieves.len(),
            sieves: sieves
                .iter()
                .map(|s| s.members.iter().cloned().collect())
                .collect(),
        });
    }
    Ok(OmegaTable { rows })
}

impl OmegaTable {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&format!("object {}: {} sieves\n", row.object, row.count));
            for s in &row.sieves {
                out.push_str(&format!("  {{{}}}\n", s.join(", ")));
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("omega rows serialize")
    }
}
