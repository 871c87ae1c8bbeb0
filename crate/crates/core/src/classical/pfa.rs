use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::linalg::TOL_PROB;

/// Probabilistic finite automaton with one row-stochastic matrix per symbol.
///
/// The acceptance probability of `σ₁…σₙ` is `ρ M(σ₁) ⋯ M(σₙ) η_F`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pfa {
    states: Vec<String>,
    alphabet: Alphabet,
    rho: Vec<f64>,
    /// `matrices[a]` is `M(σ_a)`, row-major `n × n`.
    matrices: Vec<Vec<f64>>,
    accepting: Vec<bool>,
}

impl Pfa {
    /// Checks shapes only; stochasticity is reported by [`Pfa::stochastic_defects`].
    pub fn new(
        states: Vec<String>,
        alphabet: Alphabet,
        rho: Vec<f64>,
        matrices: Vec<Vec<f64>>,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(Error::Malformed("a PFA needs at least one state".into()));
        }
        if rho.len() != n || accepting.len() != n {
            return Err(Error::Malformed(format!(
                "initial distribution and accepting flags must have {n} entries"
            )));
        }
        if matrices.len() != alphabet.len() {
            return Err(Error::Malformed(format!(
                "{} matrices for {} symbols",
                matrices.len(),
                alphabet.len()
            )));
        }
        for (a, m) in matrices.iter().enumerate() {
            if m.len() != n * n {
                return Err(Error::Malformed(format!(
                    "matrix for {:?} is not {n}x{n}",
                    alphabet.symbol(a)
                )));
            }
        }
        Ok(Pfa {
            states,
            alphabet,
            rho,
            matrices,
            accepting,
        })
    }

    /// The 0/1 stochastic encoding of a DFA.
    pub fn from_dfa(dfa: &super::Dfa) -> Self {
        let n = dfa.num_states();
        let mut rho = vec![0.0; n];
        rho[dfa.initial()] = 1.0;
        let matrices = (0..dfa.alphabet().len())
            .map(|a| {
                let mut m = vec![0.0; n * n];
                for s in 0..n {
                    m[s * n + dfa.next(s, a)] = 1.0;
                }
                m
            })
            .collect();
        Pfa {
            states: dfa.states().to_vec(),
            alphabet: dfa.alphabet().clone(),
            rho,
            matrices,
            accepting: dfa.accepting_flags().to_vec(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn accepting_flags(&self) -> &[bool] {
        &self.accepting
    }

    /// `M(σ)` as a row-major slice.
    pub fn matrix(&self, symbol: usize) -> &[f64] {
        &self.matrices[symbol]
    }

    /// Distribution `ρ M(σ₁) ⋯ M(σₙ)` after reading `word`.
    pub fn distribution(&self, word: &str) -> Result<Vec<f64>> {
        let n = self.num_states();
        let mut dist = self.rho.clone();
        for a in self.alphabet.encode(word)? {
            let m = &self.matrices[a];
            let mut next = vec![0.0; n];
            for (i, &p) in dist.iter().enumerate() {
                if p != 0.0 {
                    for (j, out) in next.iter_mut().enumerate() {
                        *out += p * m[i * n + j];
                    }
                }
            }
            dist = next;
        }
        Ok(dist)
    }

    /// Product matrix `M(σ₁) ⋯ M(σₙ)` (identity for the empty word).
    pub fn word_matrix(&self, word: &str) -> Result<Vec<f64>> {
        let n = self.num_states();
        let mut acc = vec![0.0; n * n];
        for i in 0..n {
            acc[i * n + i] = 1.0;
        }
        for a in self.alphabet.encode(word)? {
            acc = real_matmul(&acc, &self.matrices[a], n);
        }
        Ok(acc)
    }

    pub fn accept_prob(&self, word: &str) -> Result<f64> {
        Ok(self
            .distribution(word)?
            .iter()
            .zip(&self.accepting)
            .filter(|(_, &acc)| acc)
            .map(|(p, _)| p)
            .sum())
    }

    /// Human-readable stochasticity defects, one per offending row or vector.
    pub fn stochastic_defects(&self) -> Vec<(String, f64)> {
        let n = self.num_states();
        let mut out = Vec::new();
        if let Some(d) = distribution_defect(&self.rho) {
            out.push(("initial distribution rho".to_string(), d));
        }
        for (a, m) in self.matrices.iter().enumerate() {
            for i in 0..n {
                if let Some(d) = distribution_defect(&m[i * n..(i + 1) * n]) {
                    out.push((
                        format!("matrix {:?} row {i} ({})", self.alphabet.symbol(a), self.states[i]),
                        d,
                    ));
                }
            }
        }
        out
    }
}

/// Largest violation of nonnegativity / unit sum, if above tolerance.
fn distribution_defect(row: &[f64]) -> Option<f64> {
    if row.iter().any(|x| !x.is_finite()) {
        return Some(f64::INFINITY);
    }
    let negative = row.iter().fold(0.0f64, |m, &x| m.max(-x));
    let sum_defect = (row.iter().sum::<f64>() - 1.0).abs();
    let defect = negative.max(sum_defect);
    (defect > TOL_PROB).then_some(defect)
}

pub(crate) fn real_matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x != 0.0 {
                for j in 0..n {
                    out[i * n + j] += x * b[k * n + j];
                }
            }
        }
    }
    out
}
