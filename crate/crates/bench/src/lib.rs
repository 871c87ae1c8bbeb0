//! Fixtures shared by the benchmarks.

use qfac::Alphabet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded generator so every benchmark run sees the same inputs.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` random words of exactly `len` symbols.
pub fn random_words(alphabet: &Alphabet, len: usize, count: usize, seed: u64) -> Vec<String> {
    let mut rng = rng(seed);
    let symbols = alphabet.symbols();
    (0..count)
        .map(|_| (0..len).map(|_| symbols[rng.gen_range(0..symbols.len())]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_are_reproducible() {
        let a = random_words(&Alphabet::binary(), 8, 4, 1);
        assert_eq!(a, random_words(&Alphabet::binary(), 8, 4, 1));
        assert!(a.iter().all(|w| w.len() == 8));
    }
}
