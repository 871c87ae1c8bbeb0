//! Explicit machine constructions and conversions between models.

mod combine;
mod convert;
mod finite;
mod lhp;
mod modp;

pub use combine::{combine_dfa_moqfa, CombineOp};
pub use convert::{kletter_to_qfac, reversible_qfac_to_mo};
pub use finite::build_exact_finite_qfac;
pub use lhp::{build_base_dfa, build_lhp_dfa, build_lhp_qfac, lhp_member, LhpParams};
pub use modp::{
    build_modp_moqfa, build_modp_moqfa_over, modp_certificate, modp_moqfa_from_multipliers, search_multipliers,
    ModPMoQfa, ModPMoQfaParams, DEFAULT_DRAWS,
};

use crate::error::{Error, Result};

/// Trial-division primality test; the moduli used here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("p = {p} is not prime")))
    }
}

pub(crate) fn require_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("epsilon = {epsilon} must lie in (0, 1)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(require_prime(9).is_err());
        assert!(require_epsilon(0.0).is_err());
        assert!(require_epsilon(1.0).is_err());
        assert!(require_epsilon(0.2).is_ok());
    }
}
