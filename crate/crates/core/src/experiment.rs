//! The succinctness experiment over the `L(h, p)` family.

use serde::Serialize;

use crate::analysis::{bounded_cutpoint_report, RecognitionReport};
use crate::constructions::{build_lhp_dfa, build_lhp_qfac, lhp_member, LhpParams, ModPMoQfaParams};
use crate::error::{Error, Result};
use crate::models::Qfac;

/// One CSV row; the field order is the column order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub h: usize,
    pub p: u64,
    pub epsilon: f64,
    pub dfa_states: usize,
    pub pfa_lower_bound: u64,
    pub qfac_classical: usize,
    pub qfac_quantum: usize,
    pub mm_forbidden: bool,
    pub f_construction: bool,
    pub observed_isolation: f64,
    pub max_len: usize,
}

#[derive(Clone, Debug)]
pub struct SuccinctnessOutcome {
    pub row: ExperimentRow,
    pub report: RecognitionReport,
    pub qfac: Qfac,
    pub modp: ModPMoQfaParams,
}

/// Builds every machine for one `(h, p)` and measures the 1QFAC against the
/// direct membership test on all words up to `max_len`.
pub fn succinctness_row(h: usize, p: u64, epsilon: f64, seed: u64, max_len: usize) -> Result<SuccinctnessOutcome> {
    let params = LhpParams::new(h, p, epsilon)?;
    let dfa = build_lhp_dfa(h, p)?.minimize();
    let mm = dfa.detect_mm_forbidden();
    let f = dfa.detect_f_construction();
    for w in mm.iter().chain(f.iter()) {
        if !w.verify(&dfa)? {
            return Err(Error::Assertion(format!("witness {w} does not replay")));
        }
    }
    let (qfac, modp) = build_lhp_qfac(params, seed)?;
    let report = bounded_cutpoint_report(&qfac, |w| Ok(lhp_member(h, p, w)), max_len)?;
    let row = ExperimentRow {
        h,
        p,
        epsilon,
        dfa_states: dfa.num_states(),
        pfa_lower_bound: p,
        qfac_classical: qfac.num_classical(),
        qfac_quantum: qfac.dim(),
        mm_forbidden: mm.is_some(),
        f_construction: f.is_some(),
        observed_isolation: report.isolation,
        max_len,
    };
    Ok(SuccinctnessOutcome { row, report, qfac, modp })
}

/// Rows for the grid `hs × ps`, in that nesting order.
pub fn succinctness_grid(
    hs: &[usize],
    ps: &[u64],
    epsilon: f64,
    seed: u64,
    max_len: usize,
) -> Result<Vec<ExperimentRow>> {
    let mut rows = Vec::with_capacity(hs.len() * ps.len());
    for &h in hs {
        for &p in ps {
            rows.push(succinctness_row(h, p, epsilon, seed, max_len)?.row);
        }
    }
    Ok(rows)
}
