use crate::alphabet::BLANK;
use crate::error::{Error, Result};
use crate::linalg::{projector_basis, Matrix, StateVector, TOL_OPERATOR, ZERO};
use crate::models::{MoQfa, MultiLetterQfa, Qfac};

/// Simulates a `k`-letter 1QFA by a 1QFAC whose classical state remembers the
/// last `k − 1` symbols, blank-padded at the start.
///
/// Reading `σ` in classical state `s_w` applies the window unitary `U_{wσ}`
/// and moves to the state for the last `k − 1` letters of `wσ`. Only windows
/// reachable from the all-blank start are created, which gives
/// `Σ_{i<k} |Σ|^i` classical states.
pub fn kletter_to_qfac(m: &MultiLetterQfa) -> Result<Qfac> {
    let k = m.k();
    let alphabet = m.alphabet().clone();
    let sigma = alphabet.len();

    let mut windows: Vec<String> = Vec::new();
    for filled in 0..k {
        let pad: String = std::iter::repeat_n(BLANK, k - 1 - filled).collect();
        let mut tails: Vec<String> = vec![String::new()];
        for _ in 0..filled {
            tails = tails
                .iter()
                .flat_map(|t| alphabet.symbols().iter().map(move |c| format!("{t}{c}")))
                .collect();
        }
        windows.extend(tails.into_iter().map(|t| format!("{pad}{t}")));
    }
    let index = |w: &str| windows.iter().position(|x| x == w).expect("window state exists");

    let mut delta = Vec::with_capacity(windows.len());
    let mut unitaries = Vec::with_capacity(windows.len());
    for w in &windows {
        let mut row = Vec::with_capacity(sigma);
        let mut us = Vec::with_capacity(sigma);
        for &c in alphabet.symbols() {
            let full = format!("{w}{c}");
            us.push(m.window(&full)?.clone());
            let next: String = full.chars().skip(1).collect();
            row.push(index(&next));
        }
        delta.push(row);
        unitaries.push(us);
    }
    let p = m.accept_projector();
    let count = windows.len();
    Qfac::new(
        windows.iter().map(|w| format!("s[{w}]")).collect(),
        m.basis().to_vec(),
        alphabet,
        0,
        m.initial_state().clone(),
        delta,
        unitaries,
        vec![p; count],
    )
}

/// Flattens a 1QFAC whose transitions are permutations into an MO-1QFA on
/// `S × Q`, basis index `s·|Q| + q`.
///
/// `U′_σ = Σ_s |δ(s,σ)⟩⟨s| ⊗ U_{sσ}` and the accept projector is
/// `Σ_s |s⟩⟨s| ⊗ P_{s,acc}`. When some `P_{s,acc}` is not diagonal in the
/// given basis, that block is rewritten in a basis adapted to the projector
/// so the accepting set is a set of basis states.
pub fn reversible_qfac_to_mo(m: &Qfac) -> Result<MoQfa> {
    let ks = m.num_classical();
    let n = m.dim();
    let names = m.classical_states();
    for a in 0..m.alphabet().len() {
        let mut source: Vec<Option<usize>> = vec![None; ks];
        for s in 0..ks {
            let t = m.next(s, a);
            if let Some(first) = source[t] {
                return Err(Error::NotReversible {
                    first: names[first].clone(),
                    second: names[s].clone(),
                    symbol: m.alphabet().symbol(a),
                    target: names[t].clone(),
                });
            }
            source[t] = Some(s);
        }
    }

    // Per-block change of basis and accepting flags.
    let mut change = Vec::with_capacity(ks);
    let mut accepting = Vec::with_capacity(ks * n);
    let mut basis = Vec::with_capacity(ks * n);
    for (s, name) in names.iter().enumerate() {
        let p = m.accept_projector(s);
        match p.diagonal_support(TOL_OPERATOR) {
            Some(ones) => {
                change.push(Matrix::identity(n));
                let mut flags = vec![false; n];
                ones.into_iter().for_each(|i| flags[i] = true);
                accepting.extend(flags);
                basis.extend(m.basis().iter().map(|q| format!("({name}, {q})")));
            }
            None => {
                let (w, rank) = projector_basis(p, TOL_OPERATOR)?;
                change.push(w);
                accepting.extend((0..n).map(|i| i < rank));
                basis.extend((0..n).map(|i| format!("({name}, #{i})")));
            }
        }
    }
    let v = Matrix::direct_sum(&change);
    let v_adj = v.adjoint();

    let dim = ks * n;
    let mut unitaries = Vec::with_capacity(m.alphabet().len());
    for a in 0..m.alphabet().len() {
        let mut u = Matrix::zeros(dim, dim);
        for s in 0..ks {
            let t = m.next(s, a);
            let block = m.unitary(s, a);
            for i in 0..n {
                for j in 0..n {
                    u.set(t * n + i, s * n + j, block.get(i, j));
                }
            }
        }
        unitaries.push(&(&v_adj * &u) * &v);
    }

    let mut initial = vec![ZERO; dim];
    let s0 = m.initial_classical();
    initial[s0 * n..(s0 + 1) * n].copy_from_slice(m.initial_state().amplitudes());
    let initial = v_adj.apply(&StateVector::new(initial));

    MoQfa::new(basis, m.alphabet().clone(), initial, unitaries, accepting)
}
