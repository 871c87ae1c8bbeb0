//! Seeded random machines of every quantum model, used by tests, benches and
//! property checks. All outputs pass `validate`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::alphabet::{Alphabet, BLANK};
use crate::linalg::random::{projector, unit_vector, unitary};
use crate::linalg::Matrix;

use super::{MmQfa, MoQfa, MultiLetterQfa, Qfac};

fn basis_names(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("q{i}")).collect()
}

fn random_flags<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<bool> {
    (0..dim).map(|_| rng.gen_bool(0.5)).collect()
}

pub fn moqfa<R: Rng + ?Sized>(dim: usize, alphabet: Alphabet, rng: &mut R) -> MoQfa {
    let unitaries = (0..alphabet.len()).map(|_| unitary(dim, rng)).collect();
    let initial = unit_vector(dim, rng);
    let accepting = random_flags(dim, rng);
    MoQfa::new(basis_names(dim), alphabet, initial, unitaries, accepting).expect("consistent shapes")
}

/// Each basis state is accepting, rejecting or non-halting with equal odds.
pub fn mmqfa<R: Rng + ?Sized>(dim: usize, alphabet: Alphabet, rng: &mut R) -> MmQfa {
    let unitaries = (0..alphabet.len()).map(|_| unitary(dim, rng)).collect();
    let end = unitary(dim, rng);
    let initial = unit_vector(dim, rng);
    let kinds: Vec<u8> = (0..dim).map(|_| rng.gen_range(0..3)).collect();
    MmQfa::new(
        basis_names(dim),
        alphabet,
        initial,
        unitaries,
        end,
        kinds.iter().map(|&c| c == 1).collect(),
        kinds.iter().map(|&c| c == 2).collect(),
    )
    .expect("consistent shapes")
}

/// `k`-letter machine carrying a unitary for every window that scanning can
/// reach.
pub fn multiletter<R: Rng + ?Sized>(k: usize, dim: usize, alphabet: Alphabet, rng: &mut R) -> MultiLetterQfa {
    let mut windows = vec![String::new()];
    for _ in 0..k {
        windows = windows
            .iter()
            .flat_map(|w| {
                std::iter::once(BLANK)
                    .chain(alphabet.symbols().iter().copied())
                    .map(move |c| format!("{w}{c}"))
            })
            .collect();
    }
    // Keep Λ^j followed by symbols only, with at least one symbol.
    let map: BTreeMap<String, Matrix> = windows
        .into_iter()
        .filter(|w| {
            let trimmed = w.trim_start_matches(BLANK);
            !trimmed.is_empty() && !trimmed.contains(BLANK)
        })
        .map(|w| (w, unitary(dim, rng)))
        .collect();
    let initial = unit_vector(dim, rng);
    let accepting = random_flags(dim, rng);
    MultiLetterQfa::new(k, basis_names(dim), alphabet, initial, map, accepting).expect("consistent shapes")
}

fn qfac_with<R: Rng + ?Sized>(
    classical: usize,
    dim: usize,
    alphabet: Alphabet,
    delta: Vec<Vec<usize>>,
    rng: &mut R,
) -> Qfac {
    let unitaries = (0..classical)
        .map(|_| (0..alphabet.len()).map(|_| unitary(dim, rng)).collect())
        .collect();
    let accept = (0..classical)
        .map(|_| {
            let rank = rng.gen_range(0..=dim);
            projector(dim, rank, rng)
        })
        .collect();
    let initial = unit_vector(dim, rng);
    Qfac::new(
        (0..classical).map(|i| format!("s{i}")).collect(),
        basis_names(dim),
        alphabet,
        0,
        initial,
        delta,
        unitaries,
        accept,
    )
    .expect("consistent shapes")
}

/// 1QFAC with arbitrary classical transitions and random rank projectors.
pub fn qfac<R: Rng + ?Sized>(classical: usize, dim: usize, alphabet: Alphabet, rng: &mut R) -> Qfac {
    let delta = (0..classical)
        .map(|_| (0..alphabet.len()).map(|_| rng.gen_range(0..classical)).collect())
        .collect();
    qfac_with(classical, dim, alphabet, delta, rng)
}

/// 1QFAC whose classical transition on each symbol is a permutation.
pub fn reversible_qfac<R: Rng + ?Sized>(classical: usize, dim: usize, alphabet: Alphabet, rng: &mut R) -> Qfac {
    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(alphabet.len());
    for _ in 0..alphabet.len() {
        let mut perm: Vec<usize> = (0..classical).collect();
        perm.shuffle(rng);
        columns.push(perm);
    }
    let delta = (0..classical)
        .map(|s| columns.iter().map(|perm| perm[s]).collect())
        .collect();
    qfac_with(classical, dim, alphabet, delta, rng)
}
