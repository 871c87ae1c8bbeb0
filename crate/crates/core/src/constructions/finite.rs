use std::collections::BTreeSet;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, StateVector};
use crate::models::Qfac;

/// Permutation on one `m`-letter factor swapping letters `0` and `a`.
fn swap_zero_with(m: usize, a: usize) -> Matrix {
    let mut s = Matrix::identity(m);
    if a != 0 {
        let zero = crate::linalg::ZERO;
        let one = crate::linalg::ONE;
        s.set(0, 0, zero);
        s.set(a, a, zero);
        s.set(0, a, one);
        s.set(a, 0, one);
    }
    s
}

fn kron_all(factors: &[Matrix]) -> Matrix {
    factors
        .iter()
        .fold(Matrix::identity(1), |acc, f| acc.kron(f))
}

/// Exact recognizer of a finite language.
///
/// With `l` the longest word length, the classical part is the chain
/// `s0 … s{l+1}` ending in a sink, and the quantum part is `l` factors of
/// dimension `|Σ|`. Reading the `i`-th symbol writes it into factor `i`, so
/// after a word `w` with `|w| ≤ l` the state is `|w⟩|0…0⟩`. The accept
/// projector at `s_i` keeps the members of length `i`. Words longer than `l`
/// reach the sink, whose projector is zero.
pub fn build_exact_finite_qfac<S: AsRef<str>>(language: &[S], alphabet: Alphabet) -> Result<Qfac> {
    let mut words = BTreeSet::new();
    for w in language {
        let w = w.as_ref();
        alphabet.encode(w)?;
        words.insert(w.to_string());
    }
    let l = words.iter().map(|w| w.chars().count()).max().unwrap_or(0);
    let m = alphabet.len();
    let dim = m
        .checked_pow(l as u32)
        .filter(|&d| d <= 1 << 16)
        .ok_or_else(|| Error::InvalidParameter(format!("quantum dimension {m}^{l} is too large")))?;

    let classical: Vec<String> = (0..l + 2).map(|i| format!("s{i}")).collect();
    let basis: Vec<String> = (0..dim)
        .map(|index| {
            let mut digits = vec![0usize; l];
            let mut rest = index;
            for d in digits.iter_mut().rev() {
                *d = rest % m;
                rest /= m;
            }
            format!("|{}>", alphabet.decode(&digits))
        })
        .collect();

    let identity_factor = Matrix::identity(m);
    let mut unitaries = Vec::with_capacity(l + 2);
    for depth in 0..l + 2 {
        let row = (0..m)
            .map(|a| {
                if depth < l {
                    let mut factors = vec![identity_factor.clone(); l];
                    factors[depth] = swap_zero_with(m, a);
                    kron_all(&factors)
                } else {
                    Matrix::identity(dim)
                }
            })
            .collect();
        unitaries.push(row);
    }

    let mut accept = vec![Matrix::zeros(dim, dim); l + 2];
    for w in &words {
        let digits = alphabet.encode(w)?;
        let i = digits.len();
        // |w⟩⟨w| on the first i factors, identity on the rest.
        let mut factors: Vec<Matrix> = digits
            .iter()
            .map(|&a| {
                let e = StateVector::basis(m, a);
                Matrix::outer(&e, &e)
            })
            .collect();
        factors.extend(std::iter::repeat_n(identity_factor.clone(), l - i));
        accept[i] = &accept[i] + &kron_all(&factors);
    }

    let delta = (0..l + 2).map(|i| vec![(i + 1).min(l + 1); m]).collect();
    Qfac::new(
        classical,
        basis,
        alphabet,
        0,
        StateVector::basis(dim, 0),
        delta,
        unitaries,
        accept,
    )
}
