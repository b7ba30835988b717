use serde::Serialize;

use super::field::{Derivation, OmegaMode};
use crate::diffop::DiffOp;
use crate::error::Result;
use crate::exactalg::{DiffExpr, Symbol};

#[derive(Clone, Debug, Serialize)]
pub struct CompatEntry {
    pub entry: String,
    pub compatible: bool,
    /// Difference of the two routes when they disagree.
    pub defect: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatReport {
    pub n: usize,
    pub entries: Vec<CompatEntry>,
    pub all_compatible: bool,
}

/// Compares, for every dependent entry `s_ab = phi(t)`, the chain-rule
/// derivative of `phi` along the field with the entry of `Y S - (zdot/z) S A`.
///
/// Uses the mirrored intersection matrix, so a non-self-dual operator still
/// yields a chart and shows up as incompatible entries rather than an error.
pub fn compatibility_check(l: &DiffOp) -> Result<CompatReport> {
    compatibility_of(&Derivation::new(l, OmegaMode::Mirrored)?)
}

pub fn compatibility_of(d: &Derivation) -> Result<CompatReport> {
    let chart = &d.chart;
    let rhs = d.chart_rhs();
    let base_rate = d.zdot.div(&DiffExpr::sym(Symbol::Z)).expect("z is nonzero");
    let mut coords: Vec<Symbol> = (1..=chart.m()).map(Symbol::t).collect();
    if let Some(w) = chart.aux_symbol() {
        coords.push(w);
    }
    let mut entries = Vec::new();
    for (&(a, b), phi) in &chart.dependents {
        let mut chain = base_rate.mul(&d.theta.partial_theta(phi)?);
        for (sym, r) in coords.iter().zip(&rhs) {
            if phi.contains(*sym) {
                chain = chain.add(&phi.partial(*sym).mul(r));
            }
        }
        let direct = d.sdot.get(a - 1, b - 1);
        let defect = chart.reduce(&chain.sub(direct));
        entries.push(CompatEntry {
            entry: format!("s{a}_{b}"),
            compatible: defect.is_zero(),
            defect: (!defect.is_zero()).then(|| defect.to_string()),
        });
    }
    let all_compatible = entries.iter().all(|e| e.compatible);
    Ok(CompatReport { n: d.n(), entries, all_compatible })
}
