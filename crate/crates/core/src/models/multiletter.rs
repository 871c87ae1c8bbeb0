use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, BLANK};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, StateVector};

use super::{basis_projector, check_state, check_unitary, Machine, Problem, Violation};

/// k-letter measure-once automaton: the unitary applied at each step is chosen
/// by the last `k` symbols read, left-padded with the blank letter `_`.
///
/// Only the supplied windows are stored; evolving through a window without a
/// unitary is an error.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiLetterQfa {
    k: usize,
    basis: Vec<String>,
    alphabet: Alphabet,
    initial: StateVector,
    windows: BTreeMap<String, Matrix>,
    accepting: Vec<bool>,
}

impl MultiLetterQfa {
    pub fn new(
        k: usize,
        basis: Vec<String>,
        alphabet: Alphabet,
        initial: StateVector,
        windows: BTreeMap<String, Matrix>,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("window length k must be at least 1".into()));
        }
        let n = basis.len();
        if n == 0 {
            return Err(Error::Malformed("no basis states".into()));
        }
        if initial.dim() != n || accepting.len() != n {
            return Err(Error::Dimension(format!(
                "initial state and accepting flags must have dimension {n}"
            )));
        }
        for (w, u) in &windows {
            if w.chars().count() != k {
                return Err(Error::Malformed(format!("window {w:?} does not have length {k}")));
            }
            if let Some(c) = w.chars().find(|&c| c != BLANK && !alphabet.contains(c)) {
                return Err(Error::UnknownSymbol(c));
            }
            if u.rows() != n || u.cols() != n {
                return Err(Error::Dimension(format!(
                    "window {w:?} unitary is {}x{}, expected {n}x{n}",
                    u.rows(),
                    u.cols()
                )));
            }
        }
        Ok(MultiLetterQfa { k, basis, alphabet, initial, windows, accepting })
    }

    pub fn k(&self) -> usize {
        self.k
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

    pub fn windows(&self) -> &BTreeMap<String, Matrix> {
        &self.windows
    }

    pub fn window(&self, w: &str) -> Result<&Matrix> {
        self.windows
            .get(w)
            .ok_or_else(|| Error::MissingWindow(w.to_string()))
    }

    pub fn accepting_flags(&self) -> &[bool] {
        &self.accepting
    }

    pub fn accept_projector(&self) -> Matrix {
        basis_projector(&self.accepting)
    }

    /// Window read at step `i` (1-based) of `word`: `Λ^{k−i}σ₁…σᵢ` while
    /// `i < k`, then `σ_{i−k+1}…σᵢ`.
    pub fn window_at(&self, word: &[char], i: usize) -> String {
        let start = i.saturating_sub(self.k);
        let pad = self.k.saturating_sub(i);
        std::iter::repeat_n(BLANK, pad)
            .chain(word[start..i].iter().copied())
            .collect()
    }

    /// Every window that can occur while scanning some input.
    pub fn required_windows(&self) -> Vec<String> {
        let mut out = Vec::new();
        for pad in (0..self.k).rev() {
            for tail in self.alphabet.words_up_to(self.k - pad) {
                if tail.chars().count() == self.k - pad {
                    out.push(std::iter::repeat_n(BLANK, pad).chain(tail.chars()).collect());
                }
            }
        }
        out
    }

    pub fn final_state(&self, word: &str) -> Result<StateVector> {
        self.alphabet.encode(word)?;
        let chars: Vec<char> = word.chars().collect();
        let mut v = self.initial.clone();
        for i in 1..=chars.len() {
            let w = self.window_at(&chars, i);
            v = self.window(&w)?.apply(&v);
        }
        Ok(v)
    }
}

impl Machine for MultiLetterQfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn accept_prob(&self, word: &str) -> Result<f64> {
        let v = self.final_state(word)?;
        Ok(v
            .amplitudes()
            .iter()
            .zip(&self.accepting)
            .filter(|(_, &acc)| acc)
            .map(|(a, _)| a.norm_sqr())
            .sum())
    }

    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_state("initial state", &self.initial, &mut out);
        for (w, u) in &self.windows {
            check_unitary(format!("window unitary U_{w}"), u, &mut out);
        }
        for w in self.required_windows() {
            if !self.windows.contains_key(&w) {
                out.push(Violation {
                    component: format!("window {w}"),
                    problem: Problem::MissingWindow,
                    defect: 1.0,
                });
            }
        }
        out
    }
}
