use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::linalg::{random::rotation, Matrix, StateVector};
use crate::models::{Machine, MoQfa};

use super::{require_epsilon, require_prime};

/// Random multiplier sets tried per block count.
pub const DEFAULT_DRAWS: usize = 200;

/// Parameters and certificate of a mod-`p` MO-1QFA.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModPMoQfaParams {
    pub p: u64,
    pub epsilon: f64,
    /// `g_j ∈ [0, p − 1]`; block `j` rotates by `2πg_j/p`.
    pub rotation_multipliers: Vec<u64>,
    pub block_count: usize,
    pub seed: u64,
    /// Largest acceptance probability of `0^z` over `z ∈ [1, p − 1]`,
    /// measured on the built machine.
    pub certificate: f64,
    /// `⌈log₂ p⌉`, reported next to `block_count`.
    pub log2_p: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModPMoQfa {
    pub machine: MoQfa,
    pub params: ModPMoQfaParams,
}

fn block_angle(p: u64, g: u64) -> f64 {
    if p == 2 {
        // A half turn would return to the start after every symbol.
        PI / 2.0
    } else {
        2.0 * PI * g as f64 / p as f64
    }
}

/// Closed form of the acceptance probability of `0^z`:
/// `((1/d) Σ_j cos(θ_j z))²`.
fn closed_form(p: u64, multipliers: &[u64], z: u64) -> f64 {
    let d = multipliers.len() as f64;
    let amp: f64 = multipliers
        .iter()
        .map(|&g| (block_angle(p, g) * z as f64).cos())
        .sum::<f64>()
        / d;
    amp * amp
}

/// Largest closed-form acceptance probability over the nonzero residues.
pub fn modp_certificate(p: u64, multipliers: &[u64]) -> f64 {
    (1..p)
        .map(|z| closed_form(p, multipliers, z))
        .fold(0.0, f64::max)
}

fn ceil_log2(p: u64) -> usize {
    (64 - (p - 1).leading_zeros()) as usize
}

/// Real reflection `W` with `W ψ = e₀` for a real unit vector `ψ`.
fn householder_to_e0(psi: &[f64]) -> Matrix {
    let n = psi.len();
    let mut v = psi.to_vec();
    v[0] -= 1.0;
    let vv: f64 = v.iter().map(|x| x * x).sum();
    if vv < 1e-30 {
        return Matrix::identity(n);
    }
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { 1.0 } else { 0.0 };
            data.push(delta - 2.0 * v[i] * v[j] / vv);
        }
    }
    Matrix::from_real(n, n, &data).expect("square data")
}

/// The MO-1QFA for a given multiplier set.
///
/// A multiplier `g` gives a planar rotation by `2πg/p`, so `g = 0` is an
/// identity block. The blocks act on `2d` dimensions and the start vector is the
/// uniform superposition `ψ₀` of the block starting vectors. Acceptance
/// projects onto `ψ₀` itself; to keep the accepting set a set of basis
/// states the whole machine is expressed in a basis whose first vector is
/// `ψ₀`. Every symbol of `alphabet` applies the same unitary.
pub fn modp_moqfa_from_multipliers(alphabet: Alphabet, p: u64, multipliers: &[u64]) -> Result<MoQfa> {
    require_prime(p)?;
    if multipliers.is_empty() {
        return Err(Error::InvalidParameter("need at least one rotation block".into()));
    }
    if let Some(&g) = multipliers.iter().find(|&&g| g >= p) {
        return Err(Error::InvalidParameter(format!(
            "rotation multiplier {g} outside [0, {}]",
            p - 1
        )));
    }
    let d = multipliers.len();
    let blocks: Vec<Matrix> = multipliers.iter().map(|&g| rotation(block_angle(p, g))).collect();
    let rotations = Matrix::direct_sum(&blocks);
    let amp = 1.0 / (d as f64).sqrt();
    let psi: Vec<f64> = (0..2 * d).map(|i| if i % 2 == 0 { amp } else { 0.0 }).collect();
    let w = householder_to_e0(&psi);
    let u = &(&w * &rotations) * &w;
    let basis = (0..2 * d).map(|i| format!("b{i}")).collect();
    let mut accepting = vec![false; 2 * d];
    accepting[0] = true;
    let unitaries = vec![u; alphabet.len()];
    MoQfa::new(basis, alphabet, StateVector::basis(2 * d, 0), unitaries, accepting)
}

/// Unary mod-`p` MO-1QFA over `{0}` with one-sided error at most `epsilon`.
pub fn build_modp_moqfa(p: u64, epsilon: f64, seed: u64) -> Result<ModPMoQfa> {
    build_modp_moqfa_over(Alphabet::unary(), p, epsilon, seed)
}

/// Seeded search for the smallest certified block count.
///
/// For each `d = 1, 2, …, max_blocks`, draws `draws` multiplier sets
/// uniformly from `[0, p − 1]` and returns the first whose certificate is at
/// most `epsilon`.
pub fn search_multipliers(p: u64, epsilon: f64, seed: u64, max_blocks: usize, draws: usize) -> Result<Vec<u64>> {
    require_prime(p)?;
    if p == 2 {
        return Ok(vec![1]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    for d in 1..=max_blocks {
        for _ in 0..draws {
            let g: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
            let c = modp_certificate(p, &g);
            best = best.min(c);
            if c <= epsilon {
                return Ok(g);
            }
        }
    }
    Err(Error::SearchExhausted { p, epsilon, best })
}

/// Builds the machine from [`search_multipliers`] with [`DEFAULT_DRAWS`]
/// draws per block count and at most `4⌈log₂ p⌉ + 4` blocks, then checks the
/// certificate by simulation.
pub fn build_modp_moqfa_over(alphabet: Alphabet, p: u64, epsilon: f64, seed: u64) -> Result<ModPMoQfa> {
    require_prime(p)?;
    require_epsilon(epsilon)?;
    let log2_p = ceil_log2(p);
    let multipliers = search_multipliers(p, epsilon, seed, 4 * log2_p + 4, DEFAULT_DRAWS)?;
    let machine = modp_moqfa_from_multipliers(alphabet, p, &multipliers)?;
    let unary: String = machine.alphabet().symbol(0).to_string();
    let mut certificate: f64 = 0.0;
    for z in 1..p {
        certificate = certificate.max(machine.accept_prob(&unary.repeat(z as usize))?);
    }
    let full = machine.accept_prob(&unary.repeat(p as usize))?;
    if certificate > epsilon + 1e-9 || (full - 1.0).abs() > 1e-9 {
        return Err(Error::Assertion(format!(
            "simulated certificate {certificate} or full-period probability {full} disagrees with the search"
        )));
    }
    Ok(ModPMoQfa {
        machine,
        params: ModPMoQfaParams {
            p,
            epsilon,
            block_count: multipliers.len(),
            rotation_multipliers: multipliers,
            seed,
            certificate,
            log2_p,
        },
    })
}
