use std::fmt;
use std::str::FromStr;

use crate::classical::Dfa;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::models::{MoQfa, Qfac};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Intersect,
    Union,
    DfaMinusQ,
    QMinusDfa,
}

impl FromStr for CombineOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "intersect" => Ok(CombineOp::Intersect),
            "union" => Ok(CombineOp::Union),
            "dfa_minus_q" => Ok(CombineOp::DfaMinusQ),
            "q_minus_dfa" => Ok(CombineOp::QMinusDfa),
            other => Err(Error::InvalidParameter(format!("unknown combination {other:?}"))),
        }
    }
}

impl fmt::Display for CombineOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CombineOp::Intersect => "intersect",
            CombineOp::Union => "union",
            CombineOp::DfaMinusQ => "dfa_minus_q",
            CombineOp::QMinusDfa => "q_minus_dfa",
        })
    }
}

/// Runs `dfa` as the classical part and `m` as the quantum part.
///
/// The accept projector at classical state `s` depends on whether `s` is
/// accepting in `dfa`:
///
/// | op            | `s ∈ F`       | `s ∉ F` |
/// |---------------|---------------|---------|
/// | `intersect`   | `P_acc`       | `O`     |
/// | `union`       | `I`           | `P_acc` |
/// | `dfa_minus_q` | `I − P_acc`   | `O`     |
/// | `q_minus_dfa` | `O`           | `P_acc` |
pub fn combine_dfa_moqfa(dfa: &Dfa, m: &MoQfa, op: CombineOp) -> Result<Qfac> {
    dfa.alphabet().check_same(m.alphabet())?;
    let n = m.dim();
    let p_acc = m.accept_projector();
    let zero = Matrix::zeros(n, n);
    let identity = Matrix::identity(n);
    let accept = (0..dfa.num_states())
        .map(|s| match (op, dfa.is_accepting(s)) {
            (CombineOp::Intersect, true) => p_acc.clone(),
            (CombineOp::Union, true) => identity.clone(),
            (CombineOp::Union, false) => p_acc.clone(),
            (CombineOp::DfaMinusQ, true) => &identity - &p_acc,
            (CombineOp::QMinusDfa, false) => p_acc.clone(),
            _ => zero.clone(),
        })
        .collect();
    Qfac::new(
        dfa.states().to_vec(),
        m.basis().to_vec(),
        dfa.alphabet().clone(),
        dfa.initial(),
        m.initial_state().clone(),
        dfa.transitions().to_vec(),
        vec![m.unitaries().to_vec(); dfa.num_states()],
        accept,
    )
}
