use std::fmt;

use crate::error::{Error, Result};

/// The blank letter used to pad multi-letter windows. Never a user symbol.
pub const BLANK: char = '_';

/// A finite input alphabet of single-character symbols, kept in sorted order
/// so that symbol indices follow lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut symbols: Vec<char> = symbols.into_iter().collect();
        symbols.sort_unstable();
        if let Some(w) = symbols.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidAlphabet(format!("duplicate symbol {:?}", w[0])));
        }
        if symbols.contains(&BLANK) {
            return Err(Error::InvalidAlphabet(format!(
                "{BLANK:?} is reserved for the blank letter"
            )));
        }
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        Ok(Alphabet { symbols })
    }

    /// Parses the symbols listed as single-character strings.
    pub fn from_strings<S: AsRef<str>>(symbols: &[S]) -> Result<Self> {
        let mut chars = Vec::with_capacity(symbols.len());
        for s in symbols {
            let s = s.as_ref();
            let mut it = s.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => chars.push(c),
                _ => {
                    return Err(Error::InvalidAlphabet(format!(
                        "symbol {s:?} is not a single character"
                    )))
                }
            }
        }
        Alphabet::new(chars)
    }

    /// `{0}`.
    pub fn unary() -> Self {
        Alphabet { symbols: vec!['0'] }
    }

    /// `{0, 1}`.
    pub fn binary() -> Self {
        Alphabet {
            symbols: vec!['0', '1'],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    pub fn index(&self, symbol: char) -> Result<usize> {
        self.symbols
            .binary_search(&symbol)
            .map_err(|_| Error::UnknownSymbol(symbol))
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.symbols.binary_search(&symbol).is_ok()
    }

    /// Maps a word to symbol indices.
    pub fn encode(&self, word: &str) -> Result<Vec<usize>> {
        word.chars().map(|c| self.index(c)).collect()
    }

    pub fn decode(&self, indices: &[usize]) -> String {
        indices.iter().map(|&i| self.symbols[i]).collect()
    }

    /// All words of length at most `max_len`, shortest first and
    /// lexicographic within a length.
    pub fn words_up_to(&self, max_len: usize) -> Words<'_> {
        Words {
            alphabet: self,
            current: Some(Vec::new()),
            max_len,
        }
    }

    /// Errors with both alphabets spelled out unless they are identical.
    pub fn check_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over words in length-lexicographic order.
pub struct Words<'a> {
    alphabet: &'a Alphabet,
    current: Option<Vec<usize>>,
    max_len: usize,
}

impl Iterator for Words<'_> {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        let word = self.current.take()?;
        let out = self.alphabet.decode(&word);
        let k = self.alphabet.len();
        let mut next = word;
        // Odometer increment; overflow moves to the next length.
        let mut i = next.len();
        loop {
            if i == 0 {
                if next.len() < self.max_len {
                    self.current = Some(vec![0; next.len() + 1]);
                }
                break;
            }
            i -= 1;
            if next[i] + 1 < k {
                next[i] += 1;
                next[i + 1..].iter_mut().for_each(|x| *x = 0);
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
