use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use super::Dfa;
use crate::error::{Error, Result};

/// Boolean combination used by [`Dfa::product`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Intersect,
    Union,
    /// `L(left) \ L(right)`.
    Diff,
}

impl SetOp {
    fn combine(self, left: bool, right: bool) -> bool {
        match self {
            SetOp::Intersect => left && right,
            SetOp::Union => left || right,
            SetOp::Diff => left && !right,
        }
    }
}

impl FromStr for SetOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "intersect" => Ok(SetOp::Intersect),
            "union" => Ok(SetOp::Union),
            "diff" => Ok(SetOp::Diff),
            other => Err(Error::InvalidParameter(format!("unknown set operation {other:?}"))),
        }
    }
}

impl fmt::Display for SetOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetOp::Intersect => "intersect",
            SetOp::Union => "union",
            SetOp::Diff => "diff",
        })
    }
}

/// Reachable part of the synchronized product of two automata over the same
/// alphabet, as a list of state pairs in breadth-first order together with the
/// product transition table.
pub(crate) fn reachable_pairs(left: &Dfa, right: &Dfa) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let k = left.alphabet().len();
    let start = (left.initial(), right.initial());
    let mut index = HashMap::from([(start, 0usize)]);
    let mut pairs = vec![start];
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some((a, b)) = queue.pop_front() {
        let mut row = Vec::with_capacity(k);
        for sym in 0..k {
            let next = (left.next(a, sym), right.next(b, sym));
            let id = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                queue.push_back(next);
                pairs.len() - 1
            });
            row.push(id);
        }
        delta.push(row);
    }
    (pairs, delta)
}

impl Dfa {
    /// Product automaton recognizing `op` applied to the two languages.
    pub fn product(&self, other: &Dfa, op: SetOp) -> Result<Dfa> {
        self.alphabet().check_same(other.alphabet())?;
        let (pairs, delta) = reachable_pairs(self, other);
        let states = pairs
            .iter()
            .map(|&(a, b)| format!("({}, {})", self.state_name(a), other.state_name(b)))
            .collect();
        let accepting = pairs
            .iter()
            .map(|&(a, b)| op.combine(self.is_accepting(a), other.is_accepting(b)))
            .collect();
        Dfa::new(states, self.alphabet().clone(), 0, delta, accepting)
    }

    /// Exact language equality, decided on the reachable product.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        self.alphabet().check_same(other.alphabet())?;
        let (pairs, _) = reachable_pairs(self, other);
        Ok(pairs
            .iter()
            .all(|&(a, b)| self.is_accepting(a) == other.is_accepting(b)))
    }

    /// Shortest (then lexicographically least) word accepted by exactly one of
    /// the two automata.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<String>> {
        self.alphabet().check_same(other.alphabet())?;
        let word = super::search::shortest_word(
            (self.initial(), other.initial()),
            |(a, b), sym| (self.next(a, sym), other.next(b, sym)),
            self.alphabet().len(),
            |(a, b)| self.is_accepting(a) != other.is_accepting(b),
            false,
        );
        Ok(word.map(|w| self.alphabet().decode(&w)))
    }
}
