//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's automata algorithms.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use qfac::{Alphabet, Dfa};
use rand::Rng;
use regex::Regex;

/// Membership in `L(h, p)` through a regular expression and a length check.
pub struct LhpOracle {
    re: Regex,
    p: usize,
}

impl LhpOracle {
    pub fn new(h: usize, p: usize) -> Self {
        LhpOracle {
            re: Regex::new(&format!("^(1*00*10{{{h}}})*1*$")).unwrap(),
            p,
        }
    }

    pub fn contains(&self, w: &str) -> bool {
        w.len().is_multiple_of(self.p) && self.re.is_match(w)
    }
}

/// All words over `symbols` of length at most `max_len`, shortest first.
pub fn words(symbols: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| symbols.iter().map(move |c| format!("{w}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Random nonempty set of binary words of length at most `max_len`.
pub fn random_finite_language<R: Rng>(max_len: usize, rng: &mut R) -> Vec<String> {
    let all = words(&['0', '1'], max_len);
    loop {
        let chosen: Vec<String> = all.iter().filter(|_| rng.gen_bool(0.3)).cloned().collect();
        if !chosen.is_empty() {
            return chosen;
        }
    }
}

/// Residual signature of `x`: membership of `xz` for every probe `z`.
fn signature(member: &dyn Fn(&str) -> bool, x: &str, probes: &[String]) -> Vec<bool> {
    probes.iter().map(|z| member(&format!("{x}{z}"))).collect()
}

/// Number of Myhill-Nerode classes, by residual signatures of all words up to
/// `word_len` probed with all suffixes up to `probe_len`.
pub fn brute_class_count(member: &dyn Fn(&str) -> bool, symbols: &[char], word_len: usize, probe_len: usize) -> usize {
    let probes = words(symbols, probe_len);
    words(symbols, word_len)
        .iter()
        .map(|x| signature(member, x, &probes))
        .collect::<HashSet<_>>()
        .len()
}

/// `t_s` by exploring strings breadth-first and grouping them by
/// (classical state, residual signature). Strings are only extended when
/// their pair is new, and never beyond `max_len`. `classical_step` replays
/// the classical part one symbol at a time.
pub fn brute_ts(
    classical_states: usize,
    classical_initial: usize,
    classical_step: &dyn Fn(usize, char) -> usize,
    member: &dyn Fn(&str) -> bool,
    symbols: &[char],
    max_len: usize,
    probe_len: usize,
) -> Vec<usize> {
    let probes = words(symbols, probe_len);
    let mut seen: HashSet<(usize, Vec<bool>)> = HashSet::new();
    let mut queue = VecDeque::from([(String::new(), classical_initial)]);
    seen.insert((classical_initial, signature(member, "", &probes)));
    while let Some((x, s)) = queue.pop_front() {
        if x.len() >= max_len {
            continue;
        }
        for &c in symbols {
            let xc = format!("{x}{c}");
            let t = classical_step(s, c);
            if seen.insert((t, signature(member, &xc, &probes))) {
                queue.push_back((xc, t));
            }
        }
    }
    let mut ts = vec![0; classical_states];
    for (s, _) in seen {
        ts[s] += 1;
    }
    ts
}

/// Classical step function of a DFA through its public transition table.
pub fn dfa_step(dfa: &Dfa) -> impl Fn(usize, char) -> usize + '_ {
    move |s, c| dfa.transitions()[s][dfa.alphabet().index(c).unwrap()]
}

/// Self-reachability by definition: `x ≡_L xy` for a nonempty `y` of length
/// at most `y_len`, with equivalence tested on probes up to `probe_len`.
pub fn brute_self_reachable(
    member: &dyn Fn(&str) -> bool,
    symbols: &[char],
    x: &str,
    y_len: usize,
    probe_len: usize,
) -> bool {
    let probes = words(symbols, probe_len);
    let base = signature(member, x, &probes);
    words(symbols, y_len)
        .iter()
        .skip(1)
        .any(|y| signature(member, &format!("{x}{y}"), &probes) == base)
}

/// `C_L(x)` from its definition, using [`brute_self_reachable`].
pub fn brute_cl(member: &dyn Fn(&str) -> bool, symbols: &[char], x: &str, bound: usize) -> usize {
    let status: Vec<bool> = (0..=x.len())
        .map(|j| brute_self_reachable(member, symbols, &x[..j], bound, bound))
        .collect();
    let mut total = 0;
    let mut j = 0;
    while j < status.len() {
        let mut end = j;
        while end < status.len() && status[end] == status[j] {
            end += 1;
        }
        total += if status[j] { 1 } else { end - j };
        j = end;
    }
    total
}

pub fn set_of(words: &[String]) -> BTreeSet<String> {
    words.iter().cloned().collect()
}

pub fn binary() -> Alphabet {
    Alphabet::binary()
}
