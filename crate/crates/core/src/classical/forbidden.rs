//! Detectors for the two transition patterns that rule out recognition by
//! measure-many and by multi-letter quantum automata.

use std::fmt;

use super::search::shortest_word;
use super::Dfa;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// `δ(q₁,x) = δ(q₂,x) = q₂` and `δ(q₂,y) = q₁`.
    MmForbidden,
    /// `δ(q₁,x) = δ(q₂,x) = q₂`, `δ(q₁,y) = q₁`, `δ(q₂,y) = q₂`, `x, y ≠ ε`.
    FConstruction,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::MmForbidden => "mm_forbidden",
            WitnessKind::FConstruction => "f_construction",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenWitness {
    pub kind: WitnessKind,
    pub q1: String,
    pub q2: String,
    pub x: String,
    pub y: String,
}

impl ForbiddenWitness {
    /// Replays the defining equations on `dfa`.
    pub fn verify(&self, dfa: &Dfa) -> Result<bool> {
        let q1 = dfa.state_index(&self.q1)?;
        let q2 = dfa.state_index(&self.q2)?;
        let merge = q1 != q2 && dfa.run_from(q1, &self.x)? == q2 && dfa.run_from(q2, &self.x)? == q2;
        let cycle = match self.kind {
            WitnessKind::MmForbidden => dfa.run_from(q2, &self.y)? == q1,
            WitnessKind::FConstruction => {
                !self.x.is_empty()
                    && !self.y.is_empty()
                    && dfa.run_from(q1, &self.y)? == q1
                    && dfa.run_from(q2, &self.y)? == q2
            }
        };
        Ok(merge && cycle)
    }
}

impl fmt::Display for ForbiddenWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: q1={} q2={} x={:?} y={:?}",
            self.kind, self.q1, self.q2, self.x, self.y
        )
    }
}

type Candidate = (usize, Vec<usize>, usize, usize, usize, Vec<usize>);

impl Dfa {
    /// Shortest word merging `q1` into `q2` with `q2` fixed, i.e. reaching the
    /// pair `(q2, q2)` from `(q1, q2)`.
    fn merging_word(&self, q1: usize, q2: usize) -> Option<Vec<usize>> {
        shortest_word(
            (q1, q2),
            |(a, b), s| (self.next(a, s), self.next(b, s)),
            self.alphabet().len(),
            |p| p == (q2, q2),
            false,
        )
    }

    fn best_witness<F>(&self, kind: WitnessKind, second: F) -> Option<ForbiddenWitness>
    where
        F: Fn(usize, usize) -> Option<Vec<usize>>,
    {
        let n = self.num_states();
        let mut best: Option<Candidate> = None;
        for q2 in 0..n {
            for q1 in (0..n).filter(|&q| q != q2) {
                let Some(x) = self.merging_word(q1, q2) else {
                    continue;
                };
                if let Some((bx, ..)) = &best {
                    if x.len() > *bx {
                        continue;
                    }
                }
                let Some(y) = second(q1, q2) else {
                    continue;
                };
                let key = (x.len(), x, y.len(), q1, q2, y);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, x, _, q1, q2, y)| ForbiddenWitness {
            kind,
            q1: self.state_name(q1).to_string(),
            q2: self.state_name(q2).to_string(),
            x: self.alphabet().decode(&x),
            y: self.alphabet().decode(&y),
        })
    }

    /// Searches for the pattern forbidden for measure-many automata.
    ///
    /// Among all witnesses the one with the shortest, lexicographically least
    /// `x` is returned; remaining ties go to the shortest `y`, then to the
    /// smallest state indices, then to the least `y`. The automaton should be
    /// minimal.
    pub fn detect_mm_forbidden(&self) -> Option<ForbiddenWitness> {
        self.best_witness(WitnessKind::MmForbidden, |q1, q2| {
            shortest_word(
                q2,
                |s, a| self.next(s, a),
                self.alphabet().len(),
                |s| s == q1,
                false,
            )
        })
    }

    /// Searches for the F-construction (ruling out multi-letter automata)
    /// with the same ordering of witnesses as [`Dfa::detect_mm_forbidden`].
    pub fn detect_f_construction(&self) -> Option<ForbiddenWitness> {
        self.best_witness(WitnessKind::FConstruction, |q1, q2| {
            shortest_word(
                (q1, q2),
                |(a, b), s| (self.next(a, s), self.next(b, s)),
                self.alphabet().len(),
                |p| p == (q1, q2),
                true,
            )
        })
    }
}
