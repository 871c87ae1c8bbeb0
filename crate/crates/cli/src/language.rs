//! Target languages named on the command line.
//!
//! `finite:w1,w2,...` is a finite set (an empty item is the empty word),
//! `lhp:H,P` is the `L(h, p)` family, `mod:P` is every word whose length is a
//! multiple of `P`, and `dfa:PATH` is the language of a DFA document.

use std::fmt;
use std::str::FromStr;

use qfac::analysis::finite_language_dfa;
use qfac::constructions::{build_lhp_dfa, lhp_member};
use qfac::{Alphabet, AnyMachine, Dfa, Error, MachineDocument, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Language {
    Finite(Vec<String>),
    Lhp { h: usize, p: u64 },
    Mod(u64),
    Dfa(String),
}

impl FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| format!("expected KIND:ARGS, got {s:?}"))?;
        let number = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
        match kind {
            "finite" => Ok(Language::Finite(arg.split(',').map(str::to_string).collect())),
            "lhp" => {
                let (h, p) = arg.split_once(',').ok_or("lhp needs H,P")?;
                Ok(Language::Lhp { h: number(h)? as usize, p: number(p)? })
            }
            "mod" => Ok(Language::Mod(number(arg)?)),
            "dfa" => Ok(Language::Dfa(arg.to_string())),
            other => Err(format!("unknown language kind {other:?} (finite, lhp, mod, dfa)")),
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Language::Finite(words) => write!(f, "finite:{}", words.join(",")),
            Language::Lhp { h, p } => write!(f, "lhp:{h},{p}"),
            Language::Mod(p) => write!(f, "mod:{p}"),
            Language::Dfa(path) => write!(f, "dfa:{path}"),
        }
    }
}

impl Language {
    /// Loads whatever the language needs; the alphabet is the machine's.
    pub fn resolve(&self, alphabet: &Alphabet) -> Result<Resolved> {
        let minimal = match self {
            Language::Finite(words) => finite_language_dfa(words, alphabet)?,
            Language::Lhp { h, p } => build_lhp_dfa(*h, *p)?.minimize(),
            Language::Mod(p) => length_cycle(*p, alphabet)?,
            Language::Dfa(path) => match MachineDocument::load(path)?.to_machine()? {
                AnyMachine::Dfa(d) => d.minimize(),
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "{path} holds a {} document, expected dfa",
                        other.type_name()
                    )))
                }
            },
        };
        minimal.alphabet().check_same(alphabet)?;
        Ok(Resolved { language: self.clone(), minimal })
    }
}

pub struct Resolved {
    language: Language,
    pub minimal: Dfa,
}

impl Resolved {
    pub fn contains(&self, word: &str) -> Result<bool> {
        match &self.language {
            // The direct test stays independent of the automaton.
            Language::Lhp { h, p } => Ok(lhp_member(*h, *p, word)),
            Language::Mod(p) => Ok((word.chars().count() as u64).is_multiple_of(*p)),
            _ => self.minimal.accepts(word),
        }
    }
}

fn length_cycle(p: u64, alphabet: &Alphabet) -> Result<Dfa> {
    if p == 0 {
        return Err(Error::InvalidParameter("mod:P needs P >= 1".into()));
    }
    let p = p as usize;
    let names = (0..p).map(|i| format!("r{i}")).collect();
    let delta = (0..p).map(|i| vec![(i + 1) % p; alphabet.len()]).collect();
    let accepting = (0..p).map(|i| i == 0).collect();
    Dfa::new(names, alphabet.clone(), 0, delta, accepting)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        assert_eq!("finite:0,01".parse(), Ok(Language::Finite(vec!["0".into(), "01".into()])));
        assert_eq!("finite:,0".parse(), Ok(Language::Finite(vec!["".into(), "0".into()])));
        assert_eq!("lhp:1,5".parse(), Ok(Language::Lhp { h: 1, p: 5 }));
        assert_eq!("mod:3".parse(), Ok(Language::Mod(3)));
        assert!("lhp:1".parse::<Language>().is_err());
        assert!("regex:0*".parse::<Language>().is_err());
    }

    #[test]
    fn mod_language_over_binary() {
        let r = Language::Mod(3).resolve(&Alphabet::binary()).unwrap();
        assert_eq!(r.minimal.num_states(), 3);
        assert!(r.contains("010").unwrap());
        assert!(!r.contains("01").unwrap());
    }
}
