//! Self-describing JSON machine documents.
//!
//! Every document carries `schema_version` (currently `"1"`), a `type` tag
//! and the model fields. Complex numbers are `[re, im]` pairs and matrices
//! are arrays of rows. 1QFAC unitaries are keyed `"state|symbol"` and
//! multi-letter windows spell the blank as `_`. An optional `meta` object
//! records build parameters such as seeds and certificates.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::alphabet::Alphabet;
use crate::classical::{Dfa, Pfa};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, StateVector};
use crate::models::{AnyMachine, MmQfa, MoQfa, MultiLetterQfa, Qfac};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MachineDocument {
    pub schema_version: String,
    #[serde(flatten)]
    pub body: Body,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

type Table = BTreeMap<String, BTreeMap<String, String>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Body {
    #[serde(rename = "dfa")]
    Dfa {
        states: Vec<String>,
        alphabet: Vec<String>,
        initial: String,
        accepting: Vec<String>,
        transitions: Table,
    },
    #[serde(rename = "pfa")]
    Pfa {
        states: Vec<String>,
        alphabet: Vec<String>,
        rho: Vec<f64>,
        accepting: Vec<String>,
        matrices: BTreeMap<String, Vec<Vec<f64>>>,
    },
    #[serde(rename = "mo1qfa")]
    Mo {
        basis: Vec<String>,
        alphabet: Vec<String>,
        initial: StateVector,
        unitaries: BTreeMap<String, Matrix>,
        accepting: Vec<String>,
    },
    #[serde(rename = "mm1qfa")]
    Mm {
        basis: Vec<String>,
        alphabet: Vec<String>,
        initial: StateVector,
        unitaries: BTreeMap<String, Matrix>,
        end_marker: Matrix,
        accepting: Vec<String>,
        rejecting: Vec<String>,
    },
    #[serde(rename = "ml1qfa")]
    MultiLetter {
        k: usize,
        basis: Vec<String>,
        alphabet: Vec<String>,
        initial: StateVector,
        unitaries: BTreeMap<String, Matrix>,
        accepting: Vec<String>,
    },
    #[serde(rename = "qfac")]
    Qfac {
        classical_states: Vec<String>,
        basis: Vec<String>,
        alphabet: Vec<String>,
        initial_classical: String,
        initial: StateVector,
        transitions: Table,
        unitaries: BTreeMap<String, Matrix>,
        accept_projectors: BTreeMap<String, Matrix>,
    },
}

fn symbols(alphabet: &Alphabet) -> Vec<String> {
    alphabet.symbols().iter().map(|c| c.to_string()).collect()
}

fn selected(names: &[String], flags: &[bool]) -> Vec<String> {
    names
        .iter()
        .zip(flags)
        .filter(|(_, &f)| f)
        .map(|(n, _)| n.clone())
        .collect()
}

fn flags(names: &[String], chosen: &[String], what: &str) -> Result<Vec<bool>> {
    let mut out = vec![false; names.len()];
    for c in chosen {
        let i = names
            .iter()
            .position(|n| n == c)
            .ok_or_else(|| Error::UnknownState(format!("{what} entry {c}")))?;
        out[i] = true;
    }
    Ok(out)
}

fn position(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::UnknownState(name.to_string()))
}

fn table(states: &[String], alphabet: &Alphabet, delta: &[Vec<usize>]) -> Table {
    states
        .iter()
        .zip(delta)
        .map(|(s, row)| {
            let targets = row
                .iter()
                .enumerate()
                .map(|(a, &t)| (alphabet.symbol(a).to_string(), states[t].clone()))
                .collect();
            (s.clone(), targets)
        })
        .collect()
}

fn parse_table(states: &[String], alphabet: &Alphabet, t: &Table) -> Result<Vec<Vec<usize>>> {
    if let Some(extra) = t.keys().find(|k| !states.contains(k)) {
        return Err(Error::UnknownState(format!("transitions entry {extra}")));
    }
    states
        .iter()
        .map(|s| {
            let row = t
                .get(s)
                .ok_or_else(|| Error::Malformed(format!("state {s:?} has no transitions")))?;
            if row.len() != alphabet.len() {
                return Err(Error::Malformed(format!(
                    "state {s:?} has {} transitions for {} symbols",
                    row.len(),
                    alphabet.len()
                )));
            }
            alphabet
                .symbols()
                .iter()
                .map(|c| {
                    let target = row
                        .get(&c.to_string())
                        .ok_or_else(|| Error::Malformed(format!("state {s:?} has no transition on {c:?}")))?;
                    position(states, target)
                })
                .collect()
        })
        .collect()
}

fn per_symbol<T: Clone>(alphabet: &Alphabet, map: &BTreeMap<String, T>, what: &str) -> Result<Vec<T>> {
    if map.len() != alphabet.len() {
        return Err(Error::Malformed(format!(
            "{} {what} entries for {} symbols",
            map.len(),
            alphabet.len()
        )));
    }
    alphabet
        .symbols()
        .iter()
        .map(|c| {
            map.get(&c.to_string())
                .cloned()
                .ok_or_else(|| Error::Malformed(format!("no {what} for symbol {c:?}")))
        })
        .collect()
}

fn by_symbol<T: Clone>(alphabet: &Alphabet, items: &[T]) -> BTreeMap<String, T> {
    alphabet
        .symbols()
        .iter()
        .zip(items)
        .map(|(c, m)| (c.to_string(), m.clone()))
        .collect()
}

impl MachineDocument {
    pub fn new(machine: &AnyMachine, meta: Option<Value>) -> Self {
        let body = match machine {
            AnyMachine::Dfa(d) => Body::Dfa {
                states: d.states().to_vec(),
                alphabet: symbols(d.alphabet()),
                initial: d.state_name(d.initial()).to_string(),
                accepting: selected(d.states(), d.accepting_flags()),
                transitions: table(d.states(), d.alphabet(), d.transitions()),
            },
            AnyMachine::Pfa(p) => {
                let n = p.num_states();
                let matrices: Vec<Vec<Vec<f64>>> = (0..p.alphabet().len())
                    .map(|a| p.matrix(a).chunks(n).map(<[f64]>::to_vec).collect())
                    .collect();
                Body::Pfa {
                    states: p.states().to_vec(),
                    alphabet: symbols(p.alphabet()),
                    rho: p.rho().to_vec(),
                    accepting: selected(p.states(), p.accepting_flags()),
                    matrices: by_symbol(p.alphabet(), &matrices),
                }
            }
            AnyMachine::Mo(m) => Body::Mo {
                basis: m.basis().to_vec(),
                alphabet: symbols(m.alphabet()),
                initial: m.initial_state().clone(),
                unitaries: by_symbol(m.alphabet(), m.unitaries()),
                accepting: selected(m.basis(), m.accepting_flags()),
            },
            AnyMachine::Mm(m) => Body::Mm {
                basis: m.basis().to_vec(),
                alphabet: symbols(m.alphabet()),
                initial: m.initial_state().clone(),
                unitaries: by_symbol(m.alphabet(), m.unitaries()),
                end_marker: m.end_marker().clone(),
                accepting: selected(m.basis(), m.accepting_flags()),
                rejecting: selected(m.basis(), m.rejecting_flags()),
            },
            AnyMachine::MultiLetter(m) => Body::MultiLetter {
                k: m.k(),
                basis: m.basis().to_vec(),
                alphabet: symbols(m.alphabet()),
                initial: m.initial_state().clone(),
                unitaries: m.windows().clone(),
                accepting: selected(m.basis(), m.accepting_flags()),
            },
            AnyMachine::Qfac(q) => {
                let names = q.classical_states();
                let mut unitaries = BTreeMap::new();
                let mut accept = BTreeMap::new();
                for (s, name) in names.iter().enumerate() {
                    for (a, c) in q.alphabet().symbols().iter().enumerate() {
                        unitaries.insert(format!("{name}|{c}"), q.unitary(s, a).clone());
                    }
                    accept.insert(name.clone(), q.accept_projector(s).clone());
                }
                Body::Qfac {
                    classical_states: names.to_vec(),
                    basis: q.basis().to_vec(),
                    alphabet: symbols(q.alphabet()),
                    initial_classical: names[q.initial_classical()].clone(),
                    initial: q.initial_state().clone(),
                    transitions: table(names, q.alphabet(), q.transitions()),
                    unitaries,
                    accept_projectors: accept,
                }
            }
        };
        MachineDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            body,
            meta,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: MachineDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {:?}, expected {SCHEMA_VERSION:?}",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        MachineDocument::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize") + "\n"
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }

    /// Builds the machine, checking every name and shape.
    pub fn to_machine(&self) -> Result<AnyMachine> {
        Ok(match &self.body {
            Body::Dfa { states, alphabet, initial, accepting, transitions } => {
                let alphabet = Alphabet::from_strings(alphabet)?;
                let delta = parse_table(states, &alphabet, transitions)?;
                AnyMachine::Dfa(Dfa::new(
                    states.clone(),
                    alphabet,
                    position(states, initial)?,
                    delta,
                    flags(states, accepting, "accepting")?,
                )?)
            }
            Body::Pfa { states, alphabet, rho, accepting, matrices } => {
                let alphabet = Alphabet::from_strings(alphabet)?;
                let rows = per_symbol(&alphabet, matrices, "matrix")?;
                let n = states.len();
                let mut flat = Vec::with_capacity(rows.len());
                for (a, m) in rows.into_iter().enumerate() {
                    if m.len() != n || m.iter().any(|r| r.len() != n) {
                        return Err(Error::Malformed(format!(
                            "matrix for {:?} is not {n}x{n}",
                            alphabet.symbol(a)
                        )));
                    }
                    flat.push(m.concat());
                }
                AnyMachine::Pfa(Pfa::new(
                    states.clone(),
                    alphabet,
                    rho.clone(),
                    flat,
                    flags(states, accepting, "accepting")?,
                )?)
            }
            Body::Mo { basis, alphabet, initial, unitaries, accepting } => {
                let alphabet = Alphabet::from_strings(alphabet)?;
                let us = per_symbol(&alphabet, unitaries, "unitary")?;
                AnyMachine::Mo(MoQfa::new(
                    basis.clone(),
                    alphabet,
                    initial.clone(),
                    us,
                    flags(basis, accepting, "accepting")?,
                )?)
            }
            Body::Mm { basis, alphabet, initial, unitaries, end_marker, accepting, rejecting } => {
                let alphabet = Alphabet::from_strings(alphabet)?;
                let us = per_symbol(&alphabet, unitaries, "unitary")?;
                AnyMachine::Mm(MmQfa::new(
                    basis.clone(),
                    alphabet,
                    initial.clone(),
                    us,
                    end_marker.clone(),
                    flags(basis, accepting, "accepting")?,
                    flags(basis, rejecting, "rejecting")?,
                )?)
            }
            Body::MultiLetter { k, basis, alphabet, initial, unitaries, accepting } => {
                let alphabet = Alphabet::from_strings(alphabet)?;
                AnyMachine::MultiLetter(MultiLetterQfa::new(
                    *k,
                    basis.clone(),
                    alphabet,
                    initial.clone(),
                    unitaries.clone(),
                    flags(basis, accepting, "accepting")?,
                )?)
            }
            Body::Qfac {
                classical_states,
                basis,
                alphabet,
                initial_classical,
                initial,
                transitions,
                unitaries,
                accept_projectors,
            } => {
                let alphabet = Alphabet::from_strings(alphabet)?;
                let delta = parse_table(classical_states, &alphabet, transitions)?;
                let expected = classical_states.len() * alphabet.len();
                if unitaries.len() != expected {
                    return Err(Error::Malformed(format!(
                        "{} unitaries, expected one per state|symbol pair ({expected})",
                        unitaries.len()
                    )));
                }
                let mut us = Vec::with_capacity(classical_states.len());
                let mut accept = Vec::with_capacity(classical_states.len());
                for s in classical_states {
                    let row = alphabet
                        .symbols()
                        .iter()
                        .map(|c| {
                            let key = format!("{s}|{c}");
                            unitaries
                                .get(&key)
                                .cloned()
                                .ok_or_else(|| Error::Malformed(format!("no unitary for {key:?}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    us.push(row);
                    accept.push(
                        accept_projectors
                            .get(s)
                            .cloned()
                            .ok_or_else(|| Error::Malformed(format!("no accept projector for {s:?}")))?,
                    );
                }
                if accept_projectors.len() != classical_states.len() {
                    return Err(Error::Malformed("accept projectors name unknown states".into()));
                }
                AnyMachine::Qfac(Qfac::new(
                    classical_states.clone(),
                    basis.clone(),
                    alphabet,
                    position(classical_states, initial_classical)?,
                    initial.clone(),
                    delta,
                    us,
                    accept,
                )?)
            }
        })
    }
}
