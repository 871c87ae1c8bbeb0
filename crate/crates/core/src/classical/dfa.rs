use std::collections::{HashMap, VecDeque};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// A complete deterministic finite automaton.
///
/// States carry stable string names; internally they are indices into
/// `states`, and `delta[s][a]` is the successor of state `s` on the symbol with
/// alphabet index `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    states: Vec<String>,
    alphabet: Alphabet,
    initial: usize,
    delta: Vec<Vec<usize>>,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(
        states: Vec<String>,
        alphabet: Alphabet,
        initial: usize,
        delta: Vec<Vec<usize>>,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(Error::Malformed("a DFA needs at least one state".into()));
        }
        if initial >= n {
            return Err(Error::Malformed(format!("initial state index {initial} out of range")));
        }
        if delta.len() != n || accepting.len() != n {
            return Err(Error::Malformed(
                "transition table and accepting flags must cover every state".into(),
            ));
        }
        for (s, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::Malformed(format!(
                    "state {:?} has {} transitions for {} symbols",
                    states[s],
                    row.len(),
                    alphabet.len()
                )));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::Malformed(format!(
                    "state {:?} has a transition to index {t}",
                    states[s]
                )));
            }
        }
        let mut seen = HashMap::new();
        for (i, name) in states.iter().enumerate() {
            if let Some(j) = seen.insert(name.as_str(), i) {
                return Err(Error::Malformed(format!(
                    "state name {name:?} used twice (indices {j} and {i})"
                )));
            }
        }
        Ok(Dfa {
            states,
            alphabet,
            initial,
            delta,
            accepting,
        })
    }

    /// Builds a DFA from named states and `(from, symbol, to)` edges. Every
    /// state must have exactly one edge per symbol.
    pub fn from_edges(
        states: &[&str],
        alphabet: Alphabet,
        initial: &str,
        accepting: &[&str],
        edges: &[(&str, char, &str)],
    ) -> Result<Self> {
        let index: HashMap<&str, usize> =
            states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownState(name.to_string()))
        };
        let mut delta = vec![vec![usize::MAX; alphabet.len()]; states.len()];
        for &(from, symbol, to) in edges {
            let a = alphabet.index(symbol)?;
            let slot = &mut delta[lookup(from)?][a];
            if *slot != usize::MAX {
                return Err(Error::Malformed(format!(
                    "state {from:?} has two transitions on {symbol:?}"
                )));
            }
            *slot = lookup(to)?;
        }
        for (s, row) in delta.iter().enumerate() {
            if let Some(a) = row.iter().position(|&t| t == usize::MAX) {
                return Err(Error::Malformed(format!(
                    "state {:?} has no transition on {:?}",
                    states[s],
                    alphabet.symbol(a)
                )));
            }
        }
        let mut flags = vec![false; states.len()];
        for &name in accepting {
            flags[lookup(name)?] = true;
        }
        Dfa::new(
            states.iter().map(|s| s.to_string()).collect(),
            alphabet,
            lookup(initial)?,
            delta,
            flags,
        )
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, state: usize) -> &str {
        &self.states[state]
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting_flags(&self) -> &[bool] {
        &self.accepting
    }

    /// Successor of `state` on the symbol with alphabet index `symbol`.
    pub fn next(&self, state: usize, symbol: usize) -> usize {
        self.delta[state][symbol]
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.delta
    }

    /// `δ(state, word)` on an already encoded word.
    pub fn run_indices_from(&self, state: usize, word: &[usize]) -> usize {
        word.iter().fold(state, |s, &a| self.delta[s][a])
    }

    /// `δ(state, word)`.
    pub fn run_from(&self, state: usize, word: &str) -> Result<usize> {
        let encoded = self.alphabet.encode(word)?;
        Ok(self.run_indices_from(state, &encoded))
    }

    /// `s_x = δ(s₀, x)`; the empty word yields the initial state.
    pub fn run(&self, word: &str) -> Result<usize> {
        self.run_from(self.initial, word)
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.accepting[self.run(word)?])
    }

    /// States reachable from the initial state, in breadth-first order with
    /// symbols expanded in lexicographic order.
    pub fn reachable_states(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(s) = queue.pop_front() {
            for &t in &self.delta[s] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        order
    }

    /// Whether the accepted language is empty.
    pub fn is_empty_language(&self) -> bool {
        self.reachable_states().iter().all(|&s| !self.accepting[s])
    }

    /// Same automaton with a different accepting set.
    pub fn with_accepting(&self, accepting: Vec<bool>) -> Result<Self> {
        Dfa::new(
            self.states.clone(),
            self.alphabet.clone(),
            self.initial,
            self.delta.clone(),
            accepting,
        )
    }

    /// Language complement.
    pub fn complement(&self) -> Self {
        Dfa {
            accepting: self.accepting.iter().map(|a| !a).collect(),
            ..self.clone()
        }
    }
}
