//! Seeded random unitaries, states and projectors for tests, benches and
//! experiments.

use rand::Rng;
use rand_distr::StandardNormal;

use super::{Complex, Matrix, StateVector};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-like random unitary: Gram-Schmidt on a complex Gaussian matrix.
pub fn unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Matrix {
    let mut columns: Vec<Vec<Complex>> = Vec::with_capacity(dim);
    while columns.len() < dim {
        let mut v: Vec<Complex> = (0..dim).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for c in &columns {
                let dot: Complex = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= dot * y;
                }
            }
        }
        let norm = v.iter().map(Complex::norm_sqr).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= norm);
        columns.push(v);
    }
    let mut m = Matrix::zeros(dim, dim);
    for (j, c) in columns.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            m.set(i, j, *x);
        }
    }
    m
}

/// Uniformly random unit vector.
pub fn unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> StateVector {
    loop {
        let v = StateVector::new((0..dim).map(|_| gaussian(rng)).collect());
        if v.norm() > 1e-6 {
            return v.normalized();
        }
    }
}

/// Random rank-`rank` orthogonal projector `V diag(1..1, 0..0) V†`.
pub fn projector<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> Matrix {
    let v = unitary(dim, rng);
    let diag: Vec<Complex> = (0..dim)
        .map(|i| Complex::new(if i < rank { 1.0 } else { 0.0 }, 0.0))
        .collect();
    &(&v * &Matrix::diagonal(&diag)) * &v.adjoint()
}

/// Real planar rotation by `theta`.
pub fn rotation(theta: f64) -> Matrix {
    let (s, c) = theta.sin_cos();
    Matrix::from_real(2, 2, &[c, -s, s, c]).expect("2x2 rotation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{is_projector, is_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_produce_valid_operators() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for dim in 1..6 {
            assert!(is_unitary(&unitary(dim, &mut rng), 1e-10).unwrap());
            for rank in 0..=dim {
                assert!(is_projector(&projector(dim, rank, &mut rng), 1e-10).unwrap());
            }
            assert!((unit_vector(dim, &mut rng).norm() - 1.0).abs() < 1e-12);
        }
    }
}
