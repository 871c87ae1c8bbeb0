use crate::alphabet::Alphabet;
use crate::classical::Dfa;
use crate::error::{Error, Result};
use crate::models::Qfac;

use super::{build_modp_moqfa_over, combine_dfa_moqfa, require_epsilon, require_prime, CombineOp};

/// Parameters of the language `L(h, p)`: words accepted by the base automaton
/// whose length is a multiple of `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LhpParams {
    pub h: usize,
    pub p: u64,
    pub epsilon: f64,
}

impl LhpParams {
    pub fn new(h: usize, p: u64, epsilon: f64) -> Result<Self> {
        require_h(h)?;
        require_prime(p)?;
        require_epsilon(epsilon)?;
        Ok(LhpParams { h, p, epsilon })
    }
}

fn require_h(h: usize) -> Result<()> {
    if h == 0 {
        Err(Error::InvalidParameter("h must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Successor in the base automaton, with `None` standing for the sink `q_r`.
fn base_step(h: usize, i: usize, one: bool) -> Option<usize> {
    match (i, one) {
        (0, true) => Some(0),
        (0, false) => Some(1),
        (1, false) => Some(1),
        (1, true) => Some(2),
        (i, false) if i == h + 1 => Some(0),
        (i, false) => Some(i + 1),
        (_, true) => None,
    }
}

/// Base automaton over `{0, 1}` with states `q0 … q{h+1}` plus the sink `qr`.
///
/// `q0` is initial, the only accepting state, and loops on `1`. A `0` moves
/// to `q1`, which loops on `0`; a `1` then starts the count of `h` zeros
/// through `q2 … q{h+1}` back to `q0`. Any other `1` falls into `qr`.
///
/// Because `q0` loops on `1` the accepted language is `(1*00*10^h)*1*`,
/// which also admits trailing ones.
pub fn build_base_dfa(h: usize) -> Result<Dfa> {
    require_h(h)?;
    let n = h + 2;
    let sink = n;
    let mut states: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
    states.push("qr".into());
    let mut delta: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            [false, true]
                .iter()
                .map(|&one| base_step(h, i, one).unwrap_or(sink))
                .collect()
        })
        .collect();
    delta.push(vec![sink, sink]);
    let mut accepting = vec![false; n + 1];
    accepting[0] = true;
    Dfa::new(states, Alphabet::binary(), 0, delta, accepting)
}

/// The base automaton lifted with a length counter modulo `p`.
///
/// States are `qi,j` for `i ≤ h + 1`, `j < p`, plus `qr`. The initial and
/// only accepting state is `q0,0`.
pub fn build_lhp_dfa(h: usize, p: u64) -> Result<Dfa> {
    require_h(h)?;
    require_prime(p)?;
    let p = p as usize;
    let n = h + 2;
    let sink = n * p;
    let id = |i: usize, j: usize| i * p + j;
    let mut states = Vec::with_capacity(sink + 1);
    let mut delta = Vec::with_capacity(sink + 1);
    for i in 0..n {
        for j in 0..p {
            states.push(format!("q{i},{j}"));
            delta.push(
                [false, true]
                    .iter()
                    .map(|&one| match base_step(h, i, one) {
                        Some(t) => id(t, (j + 1) % p),
                        None => sink,
                    })
                    .collect(),
            );
        }
    }
    states.push("qr".into());
    delta.push(vec![sink, sink]);
    let mut accepting = vec![false; sink + 1];
    accepting[id(0, 0)] = true;
    Dfa::new(states, Alphabet::binary(), 0, delta, accepting)
}

/// Direct membership test for `L(h, p)` as words of `(1*00*10^h)*1*`,
/// independent of the automata above.
pub fn lhp_member(h: usize, p: u64, word: &str) -> bool {
    if !(word.len() as u64).is_multiple_of(p) {
        return false;
    }
    // Each block is 1*0 0* 1 0^h; scan blocks greedily.
    let bytes = word.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        while i < bytes.len() && bytes[i] == b'1' {
            i += 1;
        }
        if i == bytes.len() {
            break;
        }
        let zeros = bytes[i..].iter().take_while(|&&b| b == b'0').count();
        if zeros == 0 {
            return false;
        }
        i += zeros;
        if i >= bytes.len() || bytes[i] != b'1' {
            return false;
        }
        i += 1;
        if bytes.len() < i + h || bytes[i..i + h].iter().any(|&b| b != b'0') {
            return false;
        }
        i += h;
    }
    true
}

/// One-sided-error 1QFAC for `L(h, p)`: the base DFA as classical part and
/// the mod-`p` MO-1QFA as quantum part, intersected.
pub fn build_lhp_qfac(params: LhpParams, seed: u64) -> Result<(Qfac, super::ModPMoQfaParams)> {
    let LhpParams { h, p, epsilon } = LhpParams::new(params.h, params.p, params.epsilon)?;
    let base = build_base_dfa(h)?;
    let modp = build_modp_moqfa_over(Alphabet::binary(), p, epsilon, seed)?;
    let qfac = combine_dfa_moqfa(&base, &modp.machine, CombineOp::Intersect)?;
    Ok((qfac, modp.params))
}
