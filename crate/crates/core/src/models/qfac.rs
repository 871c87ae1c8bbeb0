use crate::alphabet::Alphabet;
use crate::classical::Dfa;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, StateVector};

use super::mo::check_square_family;
use super::{check_projector, check_state, check_unitary, Machine, Violation};

/// One-way quantum finite automaton with classical states.
///
/// On symbol `σ` in classical state `s` the quantum state evolves by `U_{sσ}`
/// and the classical state moves to `δ(s, σ)`. At the end the measurement
/// `{P_{s,acc}, I − P_{s,acc}}` of the final classical state is applied.
#[derive(Clone, Debug, PartialEq)]
pub struct Qfac {
    classical: Vec<String>,
    basis: Vec<String>,
    alphabet: Alphabet,
    initial_classical: usize,
    initial: StateVector,
    delta: Vec<Vec<usize>>,
    /// `unitaries[s][a]` is `U_{sσ}`.
    unitaries: Vec<Vec<Matrix>>,
    /// `accept[s]` is `P_{s,acc}`.
    accept: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub classical: usize,
    pub state: StateVector,
}

/// The `(s_x, |ψ_x⟩)` pairs for every prefix `x` of an input, starting with
/// the empty prefix.
#[derive(Clone, Debug, PartialEq)]
pub struct RunTrace {
    pub steps: Vec<TraceStep>,
}

impl RunTrace {
    pub fn last(&self) -> &TraceStep {
        self.steps.last().expect("a trace always holds the empty prefix")
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl Qfac {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        classical: Vec<String>,
        basis: Vec<String>,
        alphabet: Alphabet,
        initial_classical: usize,
        initial: StateVector,
        delta: Vec<Vec<usize>>,
        unitaries: Vec<Vec<Matrix>>,
        accept: Vec<Matrix>,
    ) -> Result<Self> {
        let k = classical.len();
        let n = basis.len();
        if k == 0 || n == 0 {
            return Err(Error::Malformed("need at least one classical and one basis state".into()));
        }
        if initial_classical >= k {
            return Err(Error::Malformed(format!(
                "initial classical index {initial_classical} out of range"
            )));
        }
        if initial.dim() != n {
            return Err(Error::Dimension(format!("initial state must have dimension {n}")));
        }
        if delta.len() != k || unitaries.len() != k || accept.len() != k {
            return Err(Error::Malformed(
                "transitions, unitaries and measurements must cover every classical state".into(),
            ));
        }
        for s in 0..k {
            if delta[s].len() != alphabet.len() || unitaries[s].len() != alphabet.len() {
                return Err(Error::Malformed(format!(
                    "classical state {:?} must have one transition and one unitary per symbol",
                    classical[s]
                )));
            }
            if let Some(&t) = delta[s].iter().find(|&&t| t >= k) {
                return Err(Error::Malformed(format!(
                    "classical state {:?} moves to index {t}",
                    classical[s]
                )));
            }
            check_square_family(n, &unitaries[s], "unitary")?;
        }
        check_square_family(n, &accept, "accept projector")?;
        Ok(Qfac {
            classical,
            basis,
            alphabet,
            initial_classical,
            initial,
            delta,
            unitaries,
            accept,
        })
    }

    pub fn num_classical(&self) -> usize {
        self.classical.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn classical_states(&self) -> &[String] {
        &self.classical
    }

    pub fn classical_index(&self, name: &str) -> Result<usize> {
        self.classical
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial_classical(&self) -> usize {
        self.initial_classical
    }

    pub fn initial_state(&self) -> &StateVector {
        &self.initial
    }

    pub fn next(&self, s: usize, symbol: usize) -> usize {
        self.delta[s][symbol]
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn unitary(&self, s: usize, symbol: usize) -> &Matrix {
        &self.unitaries[s][symbol]
    }

    pub fn accept_projector(&self, s: usize) -> &Matrix {
        &self.accept[s]
    }

    /// `I − P_{s,acc}`.
    pub fn reject_projector(&self, s: usize) -> Matrix {
        &Matrix::identity(self.dim()) - &self.accept[s]
    }

    /// The classical part as a DFA. A state is marked accepting when its
    /// accept projector is nonzero; only the transition structure matters to
    /// the analyses that consume it.
    pub fn classical_dfa(&self) -> Dfa {
        Dfa::new(
            self.classical.clone(),
            self.alphabet.clone(),
            self.initial_classical,
            self.delta.clone(),
            self.accept.iter().map(|p| p.max_norm() > 0.0).collect(),
        )
        .expect("classical part is a complete DFA")
    }

    pub fn run(&self, word: &str) -> Result<RunTrace> {
        let encoded = self.alphabet.encode(word)?;
        let mut s = self.initial_classical;
        let mut v = self.initial.clone();
        let mut steps = Vec::with_capacity(encoded.len() + 1);
        steps.push(TraceStep { classical: s, state: v.clone() });
        for a in encoded {
            v = self.unitaries[s][a].apply(&v);
            s = self.delta[s][a];
            steps.push(TraceStep { classical: s, state: v.clone() });
        }
        Ok(RunTrace { steps })
    }

    /// Final `(s_x, |ψ_x⟩)` without recording the trace.
    pub fn final_configuration(&self, word: &str) -> Result<(usize, StateVector)> {
        let encoded = self.alphabet.encode(word)?;
        let mut s = self.initial_classical;
        let mut v = self.initial.clone();
        for a in encoded {
            v = self.unitaries[s][a].apply(&v);
            s = self.delta[s][a];
        }
        Ok((s, v))
    }

    pub fn reject_prob(&self, word: &str) -> Result<f64> {
        let (s, v) = self.final_configuration(word)?;
        Ok(self.reject_projector(s).apply(&v).norm_sqr())
    }

    /// `U_{s,x} = U_{s_{n−1}xₙ} ⋯ U_{s x₁}`, the identity for the empty word.
    pub fn word_operator(&self, s: usize, word: &str) -> Result<Matrix> {
        if s >= self.num_classical() {
            return Err(Error::UnknownState(format!("classical index {s}")));
        }
        let encoded = self.alphabet.encode(word)?;
        let mut state = s;
        let mut acc = Matrix::identity(self.dim());
        for a in encoded {
            acc = &self.unitaries[state][a] * &acc;
            state = self.delta[state][a];
        }
        Ok(acc)
    }
}

impl Machine for Qfac {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn accept_prob(&self, word: &str) -> Result<f64> {
        let (s, v) = self.final_configuration(word)?;
        Ok(self.accept[s].apply(&v).norm_sqr())
    }

    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        check_state("initial state", &self.initial, &mut out);
        for s in 0..self.num_classical() {
            for a in 0..self.alphabet.len() {
                check_unitary(
                    format!("unitary {}|{}", self.classical[s], self.alphabet.symbol(a)),
                    &self.unitaries[s][a],
                    &mut out,
                );
            }
            check_projector(
                format!("accept projector of {}", self.classical[s]),
                &self.accept[s],
                &mut out,
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random;
    use crate::models::Problem;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Two classical states swapping on `1`, random 2-dim unitaries.
    fn sample(seed: u64) -> Qfac {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut u = || random::unitary(2, &mut rng);
        let unitaries = vec![vec![u(), u()], vec![u(), u()]];
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 100);
        Qfac::new(
            vec!["s".into(), "t".into()],
            vec!["a".into(), "b".into()],
            Alphabet::binary(),
            0,
            StateVector::basis(2, 0),
            vec![vec![0, 1], vec![1, 0]],
            unitaries,
            vec![random::projector(2, 1, &mut rng), Matrix::identity(2)],
        )
        .unwrap()
    }

    #[test]
    fn empty_input_trace() {
        let m = sample(1);
        let t = m.run("").unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.last().classical, 0);
        assert_eq!(&t.last().state, m.initial_state());
    }

    #[test]
    fn trace_follows_classical_part() {
        let m = sample(2);
        let dfa = m.classical_dfa();
        for w in m.alphabet().words_up_to(5) {
            let t = m.run(&w).unwrap();
            assert_eq!(t.len(), w.len() + 1);
            for (i, step) in t.steps.iter().enumerate() {
                assert_eq!(step.classical, dfa.run(&w[..i]).unwrap());
            }
        }
    }

    #[test]
    fn accept_and_reject_sum_to_one() {
        let m = sample(3);
        for w in m.alphabet().words_up_to(5) {
            let total = m.accept_prob(&w).unwrap() + m.reject_prob(&w).unwrap();
            assert!((total - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn word_operator_composes() {
        let m = sample(4);
        assert_eq!(m.word_operator(1, "").unwrap(), Matrix::identity(2));
        assert_eq!(&m.word_operator(0, "1").unwrap(), m.unitary(0, 1));
        let (x, y) = ("0110", "101");
        let sx = m.classical_dfa().run(x).unwrap();
        let lhs = m.word_operator(0, &format!("{x}{y}")).unwrap();
        let rhs = &m.word_operator(sx, y).unwrap() * &m.word_operator(0, x).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        assert!(m.word_operator(5, "").is_err());
    }

    #[test]
    fn validation_reports_each_defect() {
        let m = sample(5);
        assert!(m.validate().is_empty());

        let mut bad = m.clone();
        bad.unitaries[1][0] = Matrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        let v = bad.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].problem, Problem::NotUnitary);
        assert!(v[0].component.contains("t|0"));

        let mut bad = m.clone();
        bad.accept[0] = Matrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.5]).unwrap();
        let v = bad.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].problem, Problem::NotProjector);
    }

    #[test]
    fn identity_measurement_always_accepts() {
        let mut m = sample(6);
        m.accept = vec![Matrix::identity(2); 2];
        for w in m.alphabet().words_up_to(4) {
            assert!((m.accept_prob(&w).unwrap() - 1.0).abs() < 1e-12);
        }
    }
}
