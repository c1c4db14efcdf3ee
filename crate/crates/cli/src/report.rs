//! Per-record summary: classical prediction, both bound pairs and the two
//! membership flags.

use qdt_core::{
    classical_bounds, conditional_classical, quantum_bounds, Choice, Experiment, QdtError,
};
use serde::Serialize;

use crate::dataset::ExperimentFile;
use crate::reference;
use crate::render::{fixed, flag, table};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub label: String,
    pub p0: f64,
    pub p1: f64,
    pub q0: f64,
    pub observed_pk: Option<f64>,
    pub classical_pk: f64,
    pub classical_lo: f64,
    pub classical_hi: f64,
    pub quantum_lo: f64,
    pub quantum_hi: f64,
    /// `observed_pk` outside the classical interval.
    pub sure_thing_violated: Option<bool>,
    /// `observed_pk` inside the quantum bounds.
    pub within_quantum: Option<bool>,
}

pub fn report_row(exp: &Experiment) -> Result<ReportRow, QdtError> {
    let classical = classical_bounds(exp, Choice::Zero)?;
    let quantum = quantum_bounds(exp, Choice::Zero)?.interval;
    Ok(ReportRow {
        label: exp.label.clone(),
        p0: exp.p0,
        p1: exp.p1,
        q0: exp.q0,
        observed_pk: exp.observed_pk,
        classical_pk: conditional_classical(exp, Choice::Zero)?,
        classical_lo: classical.lo(),
        classical_hi: classical.hi(),
        quantum_lo: quantum.lo(),
        quantum_hi: quantum.hi(),
        sure_thing_violated: exp.observed_pk.map(|pk| !classical.contains(pk)),
        within_quantum: exp.observed_pk.map(|pk| quantum.contains(pk)),
    })
}

/// One entry per record; a failing record does not stop the others.
pub fn report(file: &ExperimentFile) -> Vec<(Experiment, Result<ReportRow, QdtError>)> {
    file.records
        .iter()
        .map(|r| (r.experiment.clone(), report_row(&r.experiment)))
        .collect()
}

/// Cells that disagree with the published summary by more than one unit in
/// the second decimal.
pub fn discrepancies(exp: &Experiment, row: &ReportRow) -> Vec<String> {
    let Some(published) = reference::lookup(exp) else {
        return Vec::new();
    };
    let cells = [
        (
            "classical prediction",
            row.classical_pk,
            published.classical_pk,
        ),
        ("quantum lower bound", row.quantum_lo, published.quantum_lo),
        ("quantum upper bound", row.quantum_hi, published.quantum_hi),
    ];
    cells
        .iter()
        .filter(|(_, computed, printed)| {
            let rendered: f64 = fixed(*computed, 2).parse().expect("rendered number parses");
            (rendered - printed).abs() > 0.01 + 1e-9
        })
        .map(|(what, computed, printed)| {
            format!(
                "{}: {what} computes to {} (rendered {}); the published summary prints {printed:.2}",
                row.label,
                trim(*computed),
                fixed(*computed, 2),
            )
        })
        .collect()
}

fn trim(v: f64) -> String {
    let s = format!("{v:.12}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn render(entries: &[(Experiment, Result<ReportRow, QdtError>)], decimals: usize) -> String {
    let header = [
        "label",
        "p0",
        "p1",
        "q0",
        "P_obs",
        "P_cl",
        "cl_lo",
        "cl_hi",
        "q_lo",
        "q_hi",
        "sure-thing",
        "quantum",
    ];
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for (exp, result) in entries {
        match result {
            Ok(row) => {
                let mut label = row.label.clone();
                for note in discrepancies(exp, row) {
                    notes.push(note);
                    label.push_str(&format!(" [{}]", notes.len()));
                }
                let f = |v: f64| fixed(v, decimals);
                rows.push(vec![
                    label,
                    f(row.p0),
                    f(row.p1),
                    f(row.q0),
                    row.observed_pk.map(f).unwrap_or_else(|| "n/a".to_string()),
                    f(row.classical_pk),
                    f(row.classical_lo),
                    f(row.classical_hi),
                    f(row.quantum_lo),
                    f(row.quantum_hi),
                    flag(row.sure_thing_violated, "violated", "holds"),
                    flag(row.within_quantum, "inside", "outside"),
                ]);
            }
            Err(e) => failures.push(format!("{}: {e}", exp.label)),
        }
    }
    let mut out = table(&header, &rows);
    for (i, note) in notes.iter().enumerate() {
        out.push_str(&format!("[{}] {note}\n", i + 1));
    }
    for f in failures {
        out.push_str(&format!("error: {f}\n"));
    }
    out
}
