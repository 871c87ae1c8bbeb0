mod common;

use common::{brute_class_count, words};
use proptest::prelude::*;
use qfac::constructions::{combine_dfa_moqfa, CombineOp};
use qfac::format::MachineDocument;
use qfac::models::random;
use qfac::{Alphabet, AnyMachine, Dfa, Machine, Pfa, SetOp};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random total binary DFA with `n` states.
fn arb_dfa() -> impl Strategy<Value = Dfa> {
    (1usize..=6).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(0..n, 2), n),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(delta, accepting)| {
                let names = (0..n).map(|i| format!("d{i}")).collect();
                Dfa::new(names, Alphabet::binary(), 0, delta, accepting).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimize_preserves_language(d in arb_dfa()) {
        let m = d.minimize();
        prop_assert!(m.equivalent(&d).unwrap());
        for w in words(&['0', '1'], 6) {
            prop_assert_eq!(m.accepts(&w).unwrap(), d.accepts(&w).unwrap());
        }
        prop_assert_eq!(m.minimize().num_states(), m.num_states());
    }

    #[test]
    fn minimal_size_is_the_residual_count(d in arb_dfa()) {
        // Six states are always separated by words of length five.
        let member = |w: &str| d.accepts(w).unwrap();
        let classes = brute_class_count(&member, &['0', '1'], 6, 5);
        prop_assert_eq!(d.minimize().num_states(), classes);
    }

    #[test]
    fn products_follow_set_operations(a in arb_dfa(), b in arb_dfa()) {
        for (op, f) in [
            (SetOp::Intersect, (|x, y| x && y) as fn(bool, bool) -> bool),
            (SetOp::Union, |x, y| x || y),
            (SetOp::Diff, |x, y| x && !y),
        ] {
            let p = a.product(&b, op).unwrap();
            for w in words(&['0', '1'], 5) {
                prop_assert_eq!(p.accepts(&w).unwrap(), f(a.accepts(&w).unwrap(), b.accepts(&w).unwrap()));
            }
        }
    }

    #[test]
    fn distinguishing_word_separates(a in arb_dfa(), b in arb_dfa()) {
        match a.distinguishing_word(&b).unwrap() {
            None => prop_assert!(a.equivalent(&b).unwrap()),
            Some(w) => {
                prop_assert_ne!(a.accepts(&w).unwrap(), b.accepts(&w).unwrap());
                let shorter_words = if w.is_empty() { Vec::new() } else { words(&['0', '1'], w.len() - 1) };
                for shorter in shorter_words {
                    prop_assert_eq!(a.accepts(&shorter).unwrap(), b.accepts(&shorter).unwrap());
                }
            }
        }
    }

    #[test]
    fn witnesses_replay(d in arb_dfa()) {
        let m = d.minimize();
        for w in [m.detect_mm_forbidden(), m.detect_f_construction()].into_iter().flatten() {
            prop_assert!(w.verify(&m).unwrap(), "{}", w);
        }
    }

    #[test]
    fn pfa_word_matrix_is_multiplicative(seed in any::<u64>(), u in "[01]{0,4}", v in "[01]{0,4}") {
        let pfa = random_pfa(seed);
        let n = pfa.num_states();
        let mu = pfa.word_matrix(&u).unwrap();
        let mv = pfa.word_matrix(&v).unwrap();
        let muv = pfa.word_matrix(&format!("{u}{v}")).unwrap();
        for i in 0..n {
            for j in 0..n {
                let prod: f64 = (0..n).map(|k| mu[i * n + k] * mv[k * n + j]).sum();
                prop_assert!((prod - muv[i * n + j]).abs() < 1e-12);
            }
        }
        prop_assert!(pfa.stochastic_defects().is_empty());
    }

    #[test]
    fn combinations_follow_the_table(seed in any::<u64>(), d in arb_dfa()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mo = random::moqfa(2, Alphabet::binary(), &mut rng);
        for op in [CombineOp::Intersect, CombineOp::Union, CombineOp::DfaMinusQ, CombineOp::QMinusDfa] {
            let q = combine_dfa_moqfa(&d, &mo, op).unwrap();
            prop_assert!(q.validate().is_empty());
            for w in words(&['0', '1'], 4) {
                let pq = mo.accept_prob(&w).unwrap();
                let inside = d.accepts(&w).unwrap();
                let expected = match (op, inside) {
                    (CombineOp::Intersect, true) | (CombineOp::QMinusDfa, false) => pq,
                    (CombineOp::Union, true) => 1.0,
                    (CombineOp::Union, false) => pq,
                    (CombineOp::DfaMinusQ, true) => 1.0 - pq,
                    _ => 0.0,
                };
                prop_assert!((q.accept_prob(&w).unwrap() - expected).abs() < 1e-9, "{op} on {w:?}");
            }
        }
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let machines: Vec<AnyMachine> = vec![
            random::moqfa(3, Alphabet::binary(), &mut rng).into(),
            random::mmqfa(3, Alphabet::binary(), &mut rng).into(),
            random::multiletter(2, 2, Alphabet::binary(), &mut rng).into(),
            random::qfac(2, 2, Alphabet::binary(), &mut rng).into(),
            random_pfa(seed).into(),
        ];
        for m in machines {
            let text = MachineDocument::new(&m, None).to_json();
            let back = MachineDocument::parse(&text).unwrap().to_machine().unwrap();
            prop_assert_eq!(&back, &m);
        }
    }
}

fn random_pfa(seed: u64) -> Pfa {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 3;
    let row = |rng: &mut ChaCha8Rng| {
        let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        let sum: f64 = raw.iter().sum();
        raw.into_iter().map(|x| x / sum).collect::<Vec<_>>()
    };
    let rho = row(&mut rng);
    let matrices = (0..2).map(|_| (0..n).flat_map(|_| row(&mut rng)).collect()).collect();
    Pfa::new(
        (0..n).map(|i| format!("p{i}")).collect(),
        Alphabet::binary(),
        rho,
        matrices,
        vec![true, false, true],
    )
    .unwrap()
}
