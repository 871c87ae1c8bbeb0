use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, StateVector};

use super::{basis_projector, check_state, check_unitary, Machine, Violation};

/// Measure-once one-way quantum finite automaton.
#[derive(Clone, Debug, PartialEq)]
pub struct MoQfa {
    basis: Vec<String>,
    alphabet: Alphabet,
    initial: StateVector,
    /// `unitaries[a]` is `U_σ` for the symbol with alphabet index `a`.
    unitaries: Vec<Matrix>,
    accepting: Vec<bool>,
}

pub(crate) fn check_square_family(dim: usize, family: &[Matrix], what: &str) -> Result<()> {
    for (i, m) in family.iter().enumerate() {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::Dimension(format!(
                "{what} {i} is {}x{}, expected {dim}x{dim}",
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(())
}

impl MoQfa {
    /// Checks shapes; numeric invariants are reported by [`Machine::validate`].
    pub fn new(
        basis: Vec<String>,
        alphabet: Alphabet,
        initial: StateVector,
        unitaries: Vec<Matrix>,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::Malformed("no basis states".into()));
        }
        if initial.dim() != n || accepting.len() != n {
            return Err(Error::Dimension(format!(
                "initial state and accepting flags must have dimension {n}"
            )));
        }
        if unitaries.len() != alphabet.len() {
            return Err(Error::Malformed(format!(
                "{} unitaries for {} symbols",
                unitaries.len(),
                alphabet.len()
            )));
        }
        check_square_family(n, &unitaries, "unitary")?;
        Ok(MoQfa { basis, alphabet, initial, unitaries, accepting })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial_state(&self) -> &StateVector {
        &self.initial
    }

    pub fn unitary(&self, symbol: usize) -> &Matrix {
        &self.unitaries[symbol]
    }

    pub fn unitaries(&self) -> &[Matrix] {
        &self.unitaries
    }

    pub fn accepting_flags(&self) -> &[bool] {
        &self.accepting
    }

    /// `P_acc`, the projector onto the accepting basis states.
    pub fn accept_projector(&self) -> Matrix {
        basis_projector(&self.accepting)
    }

    /// `U_{σₙ} ⋯ U_{σ₁} |ψ₀⟩`.
    pub fn final_state(&self, word: &str) -> Result<StateVector> {
        let encoded = self.alphabet.encode(word)?;
        Ok(encoded
            .iter()
            .fold(self.initial.clone(), |v, &a| self.unitaries[a].apply(&v)))
    }

    pub(crate) fn accept_weight(&self, v: &StateVector) -> f64 {
        v.amplitudes()
            .iter()
            .zip(&self.accepting)
            .filter(|(_, &acc)| acc)
            .map(|(a, _)| a.norm_sqr())
            .sum()
    }
}

impl Machine for MoQfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn accept_prob(&self, word: &str) -> Result<f64> {
        Ok(self.accept_weight(&self.final_state(word)?))
    }

    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_state("initial state", &self.initial, &mut out);
        for (a, u) in self.unitaries.iter().enumerate() {
            check_unitary(format!("unitary U_{}", self.alphabet.symbol(a)), u, &mut out);
        }
        out
    }
}
