//! Simulation, construction and state-complexity analysis for one-way quantum
//! finite automata with classical states (1QFAC) and the related models:
//! DFA, PFA, measure-once, measure-many and multi-letter QFA.

pub mod alphabet;
pub mod analysis;
pub mod classical;
pub mod constructions;
pub mod error;
pub mod experiment;
pub mod format;
pub mod linalg;
pub mod models;

pub use alphabet::Alphabet;
pub use analysis::{BoundCheck, RecognitionReport};
pub use classical::{Dfa, ForbiddenWitness, Pfa, SetOp, UnaryCycleProfile, WitnessKind};
pub use constructions::{CombineOp, LhpParams, ModPMoQfa, ModPMoQfaParams};
pub use error::{Error, Result};
pub use experiment::ExperimentRow;
pub use format::MachineDocument;
pub use linalg::{Complex, Matrix, StateVector};
pub use models::{AnyMachine, Machine, MmQfa, MoQfa, MultiLetterQfa, Qfac, RunTrace, Violation};
