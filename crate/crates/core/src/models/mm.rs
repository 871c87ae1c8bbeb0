use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, StateVector};

use super::mo::check_square_family;
use super::{check_state, check_unitary, Machine, Violation};

/// Measure-many one-way quantum finite automaton with right end-marker `$`.
///
/// After each unitary (including the end-marker unitary) the state is
/// measured by `{P_acc, P_rej, P_non}`; accepted and rejected weight halts and
/// the unnormalized non-halting component continues. Weight still
/// non-halting after `$` counts as rejection.
#[derive(Clone, Debug, PartialEq)]
pub struct MmQfa {
    basis: Vec<String>,
    alphabet: Alphabet,
    initial: StateVector,
    unitaries: Vec<Matrix>,
    end_marker: Matrix,
    accepting: Vec<bool>,
    rejecting: Vec<bool>,
}

/// Cumulative probabilities after one measurement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MmStep {
    pub accepted: f64,
    pub rejected: f64,
    /// Squared norm of the non-halting component.
    pub residual: f64,
}

impl MmQfa {
    pub fn new(
        basis: Vec<String>,
        alphabet: Alphabet,
        initial: StateVector,
        unitaries: Vec<Matrix>,
        end_marker: Matrix,
        accepting: Vec<bool>,
        rejecting: Vec<bool>,
    ) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::Malformed("no basis states".into()));
        }
        if initial.dim() != n || accepting.len() != n || rejecting.len() != n {
            return Err(Error::Dimension(format!(
                "initial state and halting flags must have dimension {n}"
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
        check_square_family(n, std::slice::from_ref(&end_marker), "end-marker unitary")?;
        if let Some(i) = (0..n).find(|&i| accepting[i] && rejecting[i]) {
            return Err(Error::Malformed(format!(
                "basis state {:?} is both accepting and rejecting",
                basis[i]
            )));
        }
        Ok(MmQfa { basis, alphabet, initial, unitaries, end_marker, accepting, rejecting })
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

    pub fn unitaries(&self) -> &[Matrix] {
        &self.unitaries
    }

    pub fn end_marker(&self) -> &Matrix {
        &self.end_marker
    }

    pub fn accepting_flags(&self) -> &[bool] {
        &self.accepting
    }

    pub fn rejecting_flags(&self) -> &[bool] {
        &self.rejecting
    }

    /// One entry per measurement: after each symbol and after `$`.
    pub fn audit(&self, word: &str) -> Result<Vec<MmStep>> {
        let encoded = self.alphabet.encode(word)?;
        let mut v = self.initial.clone();
        let (mut accepted, mut rejected) = (0.0, 0.0);
        let mut steps = Vec::with_capacity(encoded.len() + 1);
        let operators = encoded
            .iter()
            .map(|&a| &self.unitaries[a])
            .chain(std::iter::once(&self.end_marker));
        for u in operators {
            let w = u.apply(&v);
            let mut amps = w.amplitudes().to_vec();
            for (i, amp) in amps.iter_mut().enumerate() {
                if self.accepting[i] {
                    accepted += amp.norm_sqr();
                    *amp = crate::linalg::ZERO;
                } else if self.rejecting[i] {
                    rejected += amp.norm_sqr();
                    *amp = crate::linalg::ZERO;
                }
            }
            v = StateVector::new(amps);
            steps.push(MmStep { accepted, rejected, residual: v.norm_sqr() });
        }
        Ok(steps)
    }

    /// `(p_acc, p_rej)`, with the residue after `$` folded into `p_rej`.
    pub fn probabilities(&self, word: &str) -> Result<(f64, f64)> {
        let last = *self.audit(word)?.last().expect("end marker always measured");
        Ok((last.accepted, last.rejected + last.residual))
    }
}

impl Machine for MmQfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn accept_prob(&self, word: &str) -> Result<f64> {
        Ok(self.probabilities(word)?.0)
    }

    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_state("initial state", &self.initial, &mut out);
        for (a, u) in self.unitaries.iter().enumerate() {
            check_unitary(format!("unitary U_{}", self.alphabet.symbol(a)), u, &mut out);
        }
        check_unitary("end-marker unitary U_$", &self.end_marker, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn machine(accepting: Vec<bool>, rejecting: Vec<bool>) -> MmQfa {
        let h = 1.0 / 2f64.sqrt();
        let hadamard = Matrix::from_real(2, 2, &[h, h, h, -h]).unwrap();
        MmQfa::new(
            vec!["a".into(), "b".into()],
            Alphabet::unary(),
            StateVector::basis(2, 0),
            vec![hadamard.clone()],
            hadamard,
            accepting,
            rejecting,
        )
        .unwrap()
    }

    #[test]
    fn everything_accepting_halts_immediately() {
        let m = machine(vec![true, true], vec![false, false]);
        let steps = m.audit("000").unwrap();
        assert!((steps[0].accepted - 1.0).abs() < 1e-15);
        let (acc, rej) = m.probabilities("00").unwrap();
        assert!((acc - 1.0).abs() < 1e-12 && rej.abs() < 1e-12);
        assert!((m.probabilities("").unwrap().0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn nothing_accepting() {
        let m = machine(vec![false, false], vec![false, true]);
        for w in m.alphabet().words_up_to(5) {
            let (acc, rej) = m.probabilities(&w).unwrap();
            assert_eq!(acc, 0.0);
            assert!((rej - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn halting_weights_accumulate() {
        // Hadamard then measure |1⟩ as accept: each step halts half of the
        // remaining |0⟩ weight.
        let m = machine(vec![false, true], vec![false, false]);
        let steps = m.audit("0").unwrap();
        assert!((steps[0].accepted - 0.5).abs() < 1e-12);
        assert!((steps[1].accepted - 0.75).abs() < 1e-12);
        let (acc, rej) = m.probabilities("0").unwrap();
        assert!((acc - 0.75).abs() < 1e-12 && (rej - 0.25).abs() < 1e-12);
    }

    #[test]
    fn overlapping_halting_sets_rejected() {
        let h = Matrix::identity(1);
        let r = MmQfa::new(
            vec!["a".into()],
            Alphabet::unary(),
            StateVector::basis(1, 0),
            vec![h.clone()],
            h,
            vec![true],
            vec![true],
        );
        assert!(r.is_err());
    }
}
