//! Bounded recognition reports, equivalence-class counting and the
//! quantitative state-complexity bounds.

use std::collections::{BTreeMap, HashSet};
use std::io;

use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::classical::{reachable_pairs, Dfa, SetOp};
use crate::error::{Error, Result};
use crate::linalg::packing_bound;
use crate::models::Machine;

/// Extremes of the acceptance probability over all words up to `max_len`,
/// split by membership.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecognitionReport {
    pub max_len: usize,
    pub members: usize,
    pub nonmembers: usize,
    /// `1.0` when no member was enumerated.
    pub member_min_prob: f64,
    /// `0.0` when no non-member was enumerated.
    pub nonmember_max_prob: f64,
    pub cut_point: f64,
    /// Half the gap; zero or negative means no isolation was observed.
    pub isolation: f64,
    pub hardest_member: Option<String>,
    pub hardest_nonmember: Option<String>,
}

/// Evaluates `machine` on every word up to `max_len` in length-lexicographic
/// order. Ties keep the first word found.
pub fn bounded_cutpoint_report<M, F>(machine: &M, mut membership: F, max_len: usize) -> Result<RecognitionReport>
where
    M: Machine + ?Sized,
    F: FnMut(&str) -> Result<bool>,
{
    let mut report = RecognitionReport {
        max_len,
        members: 0,
        nonmembers: 0,
        member_min_prob: 1.0,
        nonmember_max_prob: 0.0,
        cut_point: 0.0,
        isolation: 0.0,
        hardest_member: None,
        hardest_nonmember: None,
    };
    for w in machine.alphabet().words_up_to(max_len) {
        let p = machine.accept_prob(&w)?;
        if membership(&w)? {
            report.members += 1;
            if report.hardest_member.is_none() || p < report.member_min_prob {
                report.member_min_prob = p;
                report.hardest_member = Some(w);
            }
        } else {
            report.nonmembers += 1;
            if report.hardest_nonmember.is_none() || p > report.nonmember_max_prob {
                report.nonmember_max_prob = p;
                report.hardest_nonmember = Some(w);
            }
        }
    }
    report.cut_point = (report.member_min_prob + report.nonmember_max_prob) / 2.0;
    report.isolation = (report.member_min_prob - report.nonmember_max_prob) / 2.0;
    Ok(report)
}

/// `t_s` for every classical state `s`, indexed like `classical`: the number
/// of states `q` of `min_dfa` such that `(s, q)` is reachable in the
/// synchronized product. Unreachable classical states get 0.
pub fn count_ts(classical: &Dfa, min_dfa: &Dfa) -> Result<Vec<usize>> {
    classical.alphabet().check_same(min_dfa.alphabet())?;
    let (pairs, _) = reachable_pairs(classical, min_dfa);
    let mut ts = vec![0; classical.num_states()];
    for (s, _) in pairs {
        ts[s] += 1;
    }
    Ok(ts)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub bound_name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub inputs: BTreeMap<String, f64>,
}

impl BoundCheck {
    fn new(name: &str, lhs: f64, rhs: f64, inputs: &[(&str, f64)]) -> Self {
        BoundCheck {
            bound_name: name.to_string(),
            lhs,
            rhs,
            holds: lhs <= rhs,
            inputs: inputs.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

/// `m ≤ k (1 + 2/ε)^{2n}` for a 1QFAC with `k` classical and `n` quantum
/// basis states recognizing a language whose minimal DFA has `m` states.
pub fn check_qfac_dfa_bound(m: usize, k: usize, n: usize, eps: f64) -> Result<BoundCheck> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidParameter(format!("isolation {eps} must be positive")));
    }
    let rhs = k as f64 * packing_bound(eps, n)?;
    Ok(BoundCheck::new(
        "qfac_dfa",
        m as f64,
        rhs,
        &[("m", m as f64), ("k", k as f64), ("n", n as f64), ("eps", eps)],
    ))
}

/// `m ≤ (Σ_{i<k} |Σ|^i)(1 + 2/ε)^{2n}` for a `k`-letter 1QFA.
pub fn check_ml_dfa_bound(m: usize, sigma_size: usize, k: usize, n: usize, eps: f64) -> Result<BoundCheck> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidParameter(format!("isolation {eps} must be positive")));
    }
    if k == 0 || sigma_size == 0 {
        return Err(Error::InvalidParameter("k and the alphabet size must be positive".into()));
    }
    let windows: f64 = (0..k).map(|i| (sigma_size as f64).powi(i as i32)).sum();
    let rhs = windows * packing_bound(eps, n)?;
    Ok(BoundCheck::new(
        "ml_dfa",
        m as f64,
        rhs,
        &[
            ("m", m as f64),
            ("sigma", sigma_size as f64),
            ("k", k as f64),
            ("n", n as f64),
            ("eps", eps),
        ],
    ))
}

/// Prefix-run statistic of `x` with respect to the language of `min_dfa`.
///
/// The prefixes `x[..0], x[..1], …, x` are split into maximal runs of equal
/// self-reachability. Runs that are not self-reachable contribute their
/// length, self-reachable runs contribute one each.
pub fn compute_cl(min_dfa: &Dfa, x: &str) -> Result<usize> {
    if x.is_empty() {
        return Err(Error::InvalidParameter("x must be nonempty".into()));
    }
    min_dfa.alphabet().encode(x)?;
    let chars: Vec<char> = x.chars().collect();
    let mut status = Vec::with_capacity(chars.len() + 1);
    for j in 0..=chars.len() {
        let prefix: String = chars[..j].iter().collect();
        status.push(min_dfa.is_self_reachable(&prefix)?);
    }
    let mut total = 0;
    let mut i = 0;
    while i < status.len() {
        let run = status[i..].iter().take_while(|&&s| s == status[i]).count();
        total += if status[i] { 1 } else { run };
        i += run;
    }
    Ok(total)
}

/// `max_{x∈L} |x| + 2`.
pub fn finite_classical_lower_bound<S: AsRef<str>>(language: &[S]) -> Result<usize> {
    language
        .iter()
        .map(|w| w.as_ref().chars().count() + 2)
        .max()
        .ok_or_else(|| Error::InvalidParameter("language is empty".into()))
}

/// Shortest, then lexicographically least, word on which the two machines'
/// acceptance probabilities differ by more than `tol`.
pub fn machines_agree_bounded<A, B>(a: &A, b: &B, max_len: usize, tol: f64) -> Result<Option<String>>
where
    A: Machine + ?Sized,
    B: Machine + ?Sized,
{
    a.alphabet().check_same(b.alphabet())?;
    for w in a.alphabet().words_up_to(max_len) {
        if (a.accept_prob(&w)? - b.accept_prob(&w)?).abs() > tol {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Cycle periods of a unary classical part and of its product with the
/// minimal DFA: `(l_D, l_A, l_D / l_A)`.
pub fn qfac_cycle_factor(classical: &Dfa, min_dfa: &Dfa) -> Result<(usize, usize, usize)> {
    if classical.alphabet().len() != 1 {
        return Err(Error::InvalidAlphabet(format!(
            "cycle factors need a unary alphabet, got {}",
            classical.alphabet()
        )));
    }
    let derived = classical.product(min_dfa, SetOp::Intersect)?;
    let l_d = derived.unary_minimal_cycle()?.period;
    let l_a = classical.unary_minimal_cycle()?.period;
    if l_d % l_a != 0 {
        return Err(Error::Assertion(format!(
            "derived period {l_d} is not a multiple of the classical period {l_a}"
        )));
    }
    Ok((l_d, l_a, l_d / l_a))
}

/// One CSV row per (machine, language, max_len).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub machine: String,
    pub language: String,
    pub max_len: usize,
    pub members: usize,
    pub nonmembers: usize,
    pub member_min_prob: f64,
    pub nonmember_max_prob: f64,
    pub cut_point: f64,
    pub isolation: f64,
    pub hardest_member: String,
    pub hardest_nonmember: String,
}

impl ReportRow {
    pub fn new(machine: &str, language: &str, report: &RecognitionReport) -> Self {
        ReportRow {
            machine: machine.to_string(),
            language: language.to_string(),
            max_len: report.max_len,
            members: report.members,
            nonmembers: report.nonmembers,
            member_min_prob: report.member_min_prob,
            nonmember_max_prob: report.nonmember_max_prob,
            cut_point: report.cut_point,
            isolation: report.isolation,
            hardest_member: report.hardest_member.clone().unwrap_or_default(),
            hardest_nonmember: report.hardest_nonmember.clone().unwrap_or_default(),
        }
    }
}

/// Flat CSV form of a [`BoundCheck`]; `inputs` become `name=value` pairs
/// joined by `;`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub bound_name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub inputs: String,
}

impl From<&BoundCheck> for BoundRow {
    fn from(b: &BoundCheck) -> Self {
        BoundRow {
            bound_name: b.bound_name.clone(),
            lhs: b.lhs,
            rhs: b.rhs,
            holds: b.holds,
            inputs: b
                .inputs
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";"),
        }
    }
}

/// Writes rows with a header line.
pub fn write_csv<W: io::Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Error::Malformed(format!("csv: {e}")))?;
    }
    writer.flush().map_err(|e| Error::Malformed(format!("csv: {e}")))
}

/// Membership oracle backed by a DFA.
pub fn dfa_oracle(dfa: &Dfa) -> impl FnMut(&str) -> Result<bool> + '_ {
    move |w| dfa.accepts(w)
}

/// Membership oracle for a finite set of words.
pub fn finite_oracle<S: AsRef<str>>(language: &[S]) -> impl FnMut(&str) -> Result<bool> {
    let set: HashSet<String> = language.iter().map(|w| w.as_ref().to_string()).collect();
    move |w| Ok(set.contains(w))
}

/// Minimal DFA of a finite language, built as a trie with a dead state and
/// then minimized.
pub fn finite_language_dfa<S: AsRef<str>>(language: &[S], alphabet: &Alphabet) -> Result<Dfa> {
    let k = alphabet.len();
    let mut delta: Vec<Vec<usize>> = vec![vec![usize::MAX; k]];
    let mut accepting = vec![false];
    for w in language {
        let mut s = 0;
        for a in alphabet.encode(w.as_ref())? {
            if delta[s][a] == usize::MAX {
                delta.push(vec![usize::MAX; k]);
                accepting.push(false);
                delta[s][a] = delta.len() - 1;
            }
            s = delta[s][a];
        }
        accepting[s] = true;
    }
    let dead = delta.len();
    delta.push(vec![dead; k]);
    accepting.push(false);
    for row in &mut delta {
        row.iter_mut().filter(|t| **t == usize::MAX).for_each(|t| *t = dead);
    }
    let states = (0..delta.len()).map(|i| format!("t{i}")).collect();
    Ok(Dfa::new(states, alphabet.clone(), 0, delta, accepting)?.minimize())
}
