//! The quantum machine types and their acceptance semantics, plus the
//! [`Machine`] trait shared with the classical models.

use std::fmt;

use crate::alphabet::Alphabet;
use crate::classical::{Dfa, Pfa};
use crate::error::Result;
use crate::linalg::{self, Matrix, StateVector, TOL_NORM, TOL_OPERATOR};

mod mm;
mod mo;
mod multiletter;
mod qfac;
pub mod random;

pub use mm::{MmQfa, MmStep};
pub use mo::MoQfa;
pub use multiletter::MultiLetterQfa;
pub use qfac::{Qfac, RunTrace, TraceStep};

/// Anything that assigns an acceptance probability to words.
pub trait Machine {
    fn alphabet(&self) -> &Alphabet;

    fn accept_prob(&self, word: &str) -> Result<f64>;

    /// Violated type invariants; empty for a well-formed machine.
    fn validate(&self) -> Vec<Violation>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    NotUnitary,
    NotProjector,
    NotStochastic,
    NotNormalized,
    NonFinite,
    MissingWindow,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::NotUnitary => "not unitary",
            Problem::NotProjector => "not a projector",
            Problem::NotStochastic => "not stochastic",
            Problem::NotNormalized => "not normalized",
            Problem::NonFinite => "non-finite entries",
            Problem::MissingWindow => "missing window unitary",
        })
    }
}

/// One violated invariant: which component, what is wrong, and by how much.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub component: String,
    pub problem: Problem,
    pub defect: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} (defect {:.3e})", self.component, self.problem, self.defect)
    }
}

pub(crate) fn check_unitary(component: impl Into<String>, m: &Matrix, out: &mut Vec<Violation>) {
    let component = component.into();
    if !m.is_finite() {
        out.push(Violation { component, problem: Problem::NonFinite, defect: f64::INFINITY });
        return;
    }
    match linalg::unitarity_defect(m) {
        Ok(d) if d <= TOL_OPERATOR => {}
        Ok(d) => out.push(Violation { component, problem: Problem::NotUnitary, defect: d }),
        Err(_) => out.push(Violation { component, problem: Problem::NotUnitary, defect: f64::INFINITY }),
    }
}

pub(crate) fn check_projector(component: impl Into<String>, p: &Matrix, out: &mut Vec<Violation>) {
    let component = component.into();
    if !p.is_finite() {
        out.push(Violation { component, problem: Problem::NonFinite, defect: f64::INFINITY });
        return;
    }
    match linalg::projector_defect(p) {
        Ok(d) if d <= TOL_OPERATOR => {}
        Ok(d) => out.push(Violation { component, problem: Problem::NotProjector, defect: d }),
        Err(_) => out.push(Violation { component, problem: Problem::NotProjector, defect: f64::INFINITY }),
    }
}

pub(crate) fn check_state(component: impl Into<String>, v: &StateVector, out: &mut Vec<Violation>) {
    let component = component.into();
    if !v.is_finite() {
        out.push(Violation { component, problem: Problem::NonFinite, defect: f64::INFINITY });
        return;
    }
    let d = (v.norm() - 1.0).abs();
    if d > TOL_NORM {
        out.push(Violation { component, problem: Problem::NotNormalized, defect: d });
    }
}

/// Projector onto the span of the flagged basis states.
pub(crate) fn basis_projector(flags: &[bool]) -> Matrix {
    let diag: Vec<_> = flags
        .iter()
        .map(|&f| if f { linalg::ONE } else { linalg::ZERO })
        .collect();
    Matrix::diagonal(&diag)
}

impl Machine for Dfa {
    fn alphabet(&self) -> &Alphabet {
        Dfa::alphabet(self)
    }

    fn accept_prob(&self, word: &str) -> Result<f64> {
        Ok(if self.accepts(word)? { 1.0 } else { 0.0 })
    }

    fn validate(&self) -> Vec<Violation> {
        // Totality and index ranges are enforced at construction.
        Vec::new()
    }
}

impl Machine for Pfa {
    fn alphabet(&self) -> &Alphabet {
        Pfa::alphabet(self)
    }

    fn accept_prob(&self, word: &str) -> Result<f64> {
        Pfa::accept_prob(self, word)
    }

    fn validate(&self) -> Vec<Violation> {
        self.stochastic_defects()
            .into_iter()
            .map(|(component, defect)| Violation {
                component,
                problem: Problem::NotStochastic,
                defect,
            })
            .collect()
    }
}

/// Any of the six supported models.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMachine {
    Dfa(Dfa),
    Pfa(Pfa),
    Mo(MoQfa),
    Mm(MmQfa),
    MultiLetter(MultiLetterQfa),
    Qfac(Qfac),
}

impl AnyMachine {
    fn inner(&self) -> &dyn Machine {
        match self {
            AnyMachine::Dfa(m) => m,
            AnyMachine::Pfa(m) => m,
            AnyMachine::Mo(m) => m,
            AnyMachine::Mm(m) => m,
            AnyMachine::MultiLetter(m) => m,
            AnyMachine::Qfac(m) => m,
        }
    }

    /// The `type` tag used in machine documents.
    pub fn type_name(&self) -> &'static str {
        match self {
            AnyMachine::Dfa(_) => "dfa",
            AnyMachine::Pfa(_) => "pfa",
            AnyMachine::Mo(_) => "mo1qfa",
            AnyMachine::Mm(_) => "mm1qfa",
            AnyMachine::MultiLetter(_) => "ml1qfa",
            AnyMachine::Qfac(_) => "qfac",
        }
    }
}

impl Machine for AnyMachine {
    fn alphabet(&self) -> &Alphabet {
        self.inner().alphabet()
    }

    fn accept_prob(&self, word: &str) -> Result<f64> {
        self.inner().accept_prob(word)
    }

    fn validate(&self) -> Vec<Violation> {
        self.inner().validate()
    }
}

macro_rules! any_from {
    ($($variant:ident($ty:ty)),*) => {
        $(impl From<$ty> for AnyMachine {
            fn from(m: $ty) -> Self {
                AnyMachine::$variant(m)
            }
        })*
    };
}

any_from!(Dfa(Dfa), Pfa(Pfa), Mo(MoQfa), Mm(MmQfa), MultiLetter(MultiLetterQfa), Qfac(Qfac));
