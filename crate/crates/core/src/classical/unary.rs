use super::search::shortest_word;
use super::Dfa;
use crate::error::{Error, Result};

/// Shape of the rho-shaped transition chain of a unary DFA.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnaryCycleProfile {
    /// Number of symbols read before first entering the cycle.
    pub tail_length: usize,
    /// Length of the minimal cycle.
    pub period: usize,
}

impl Dfa {
    /// Tail and period of the chain `s₀, δ(s₀,0), δ(s₀,00), …`.
    pub fn unary_minimal_cycle(&self) -> Result<UnaryCycleProfile> {
        if self.alphabet().len() != 1 {
            return Err(Error::InvalidAlphabet(format!(
                "unary automaton expected, alphabet is {}",
                self.alphabet()
            )));
        }
        let mut first_visit = vec![usize::MAX; self.num_states()];
        let mut state = self.initial();
        let mut step = 0;
        while first_visit[state] == usize::MAX {
            first_visit[state] = step;
            state = self.next(state, 0);
            step += 1;
        }
        Ok(UnaryCycleProfile {
            tail_length: first_visit[state],
            period: step - first_visit[state],
        })
    }

    /// Whether `state` lies on a nonempty cycle.
    pub fn on_cycle(&self, state: usize) -> bool {
        shortest_word(
            state,
            |s, a| self.next(s, a),
            self.alphabet().len(),
            |s| s == state,
            true,
        )
        .is_some()
    }

    /// Whether `x ≡_L xy` for some nonempty `y`.
    ///
    /// On a minimal automaton this holds exactly when `s_x` lies on a cycle;
    /// the caller is responsible for minimizing first.
    pub fn is_self_reachable(&self, x: &str) -> Result<bool> {
        Ok(self.on_cycle(self.run(x)?))
    }
}
