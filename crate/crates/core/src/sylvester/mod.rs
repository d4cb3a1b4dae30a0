//! The restricted partition function (denumerant) and its Sylvester-wave
//! decomposition.
//!
//! Two independent evaluation routes are kept side by side:
//! - [`denumerant_dp`], the one-generator-at-a-time dynamic program, defined
//!   for s >= 0 and always an integer;
//! - the wave quasipolynomials behind [`WaveEngine`], exact in cyclotomic
//!   arithmetic and total functions of s (negative continuation included).
//!
//! Their agreement on every integer is the crate's master oracle.

pub mod umbral;
mod waves;

pub use waves::{
    lemma1_check, parity_check, periodicity_check, wave1_polynomial, wave2_polynomial,
    wave_eval, wave_sum_verify, waveq_partial, zero_sequence, Lemma1Outcome, RatioClass,
    WaveEngine, WavePolynomials, WaveSumRow,
};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::semigroup::GeneratorTuple;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WaveError {
    #[error("no even generator: the q = 2 wave does not exist")]
    NoEvenGenerator,
    #[error("modulus {q} divides no generator")]
    ModulusDividesNothing { q: u64 },
    #[error("residue {n} is not admissible for modulus {q}")]
    BadResidue { q: u64, n: u64 },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Denumerant values W(0), …, W(s_max) by dynamic programming over one
/// generator at a time.
pub fn denumerant_table(tuple: &GeneratorTuple, s_max: u64) -> Vec<BigInt> {
    let mut table = vec![BigInt::zero(); s_max as usize + 1];
    table[0] = BigInt::one();
    for &d in tuple.generators() {
        let d = d as usize;
        if d > s_max as usize {
            continue;
        }
        for j in d..=s_max as usize {
            let prev = table[j - d].clone();
            table[j] += prev;
        }
    }
    table
}

/// Number of solutions of Σ x_i d_i = s over nonnegative integers.
pub fn denumerant_dp(tuple: &GeneratorTuple, s: u64) -> BigInt {
    denumerant_table(tuple, s).pop().expect("table is nonempty")
}

/// The data attached to one wave modulus q: the generators q divides, their
/// count and product, and the power sums of both halves of the split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveSpec {
    pub q: u64,
    /// Generators divisible by q.
    pub xi_set: Vec<u64>,
    /// The remaining generators.
    pub complement: Vec<u64>,
    pub omega: usize,
    /// Product over the divisible generators.
    pub pi_omega: BigInt,
}

impl WaveSpec {
    /// λ_k: power sum over the divisible generators.
    pub fn lambda(&self, k: u32) -> BigInt {
        self.xi_set.iter().map(|&d| BigInt::from(d).pow(k)).sum()
    }

    /// γ_k: power sum over the complement.
    pub fn gamma(&self, k: u32) -> BigInt {
        self.complement.iter().map(|&d| BigInt::from(d).pow(k)).sum()
    }
}

/// Builds the wave spec for modulus `q >= 2`; errors when q divides nothing.
pub fn wave_spec(tuple: &GeneratorTuple, q: u64) -> Result<WaveSpec, WaveError> {
    debug_assert!(q >= 2);
    let (xi_set, complement): (Vec<u64>, Vec<u64>) =
        tuple.generators().iter().partition(|&&d| d % q == 0);
    if xi_set.is_empty() {
        return Err(if q == 2 {
            WaveError::NoEvenGenerator
        } else {
            WaveError::ModulusDividesNothing { q }
        });
    }
    let pi_omega = xi_set.iter().fold(BigInt::one(), |acc, &d| acc * BigInt::from(d));
    Ok(WaveSpec { q, omega: xi_set.len(), xi_set, complement, pi_omega })
}

/// All wave moduli of the tuple: every divisor > 1 of every generator,
/// deduplicated and sorted.
pub fn admissible_moduli(tuple: &GeneratorTuple) -> Vec<u64> {
    let mut out = std::collections::BTreeSet::new();
    for &d in tuple.generators() {
        let mut q = 2;
        while q * q <= d {
            if d % q == 0 {
                out.insert(q);
                out.insert(d / q);
            }
            q += 1;
        }
        if d > 1 {
            out.insert(d);
        }
    }
    out.into_iter().collect()
}

/// Residues n paired with q: n = 1 alone for q = 2, otherwise
/// 1 <= n < q/2 with gcd(n, q) = 1.
pub fn admissible_residues(q: u64) -> Vec<u64> {
    if q == 2 {
        return vec![1];
    }
    (1..q.div_ceil(2)).filter(|&n| residue_is_admissible(q, n)).collect()
}

/// Membership test behind [`admissible_residues`], without the allocation.
pub fn residue_is_admissible(q: u64, n: u64) -> bool {
    if q == 2 {
        return n == 1;
    }
    n >= 1 && 2 * n < q && num_integer::gcd(n, q) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::validate_generators;

    #[test]
    fn denumerant_examples() {
        let t = validate_generators(&[3, 5, 7]).unwrap();
        assert_eq!(denumerant_dp(&t, 0), BigInt::one());
        assert_eq!(denumerant_dp(&t, 10), BigInt::from(2));
        assert_eq!(denumerant_dp(&t, 4), BigInt::zero());

        // Exhaustive enumeration oracle.
        for s in 0..=60u64 {
            let mut count = 0u64;
            for a in 0..=s / 3 {
                for b in 0..=(s - 3 * a) / 5 {
                    if (s - 3 * a - 5 * b) % 7 == 0 {
                        count += 1;
                    }
                }
            }
            assert_eq!(denumerant_dp(&t, s), BigInt::from(count), "W({s})");
        }
    }

    #[test]
    fn wave_spec_examples() {
        let t = validate_generators(&[8, 9, 10, 12]).unwrap();
        let spec = wave_spec(&t, 2).unwrap();
        assert_eq!(spec.xi_set, vec![8, 10, 12]);
        assert_eq!(spec.omega, 3);
        assert_eq!(spec.pi_omega, BigInt::from(960));
        // λ_k + γ_k = σ_k.
        for k in 1..=4u32 {
            assert_eq!(spec.lambda(k) + spec.gamma(k), t.sigma(k as u64));
        }

        let t2 = validate_generators(&[3, 5, 7]).unwrap();
        assert!(matches!(wave_spec(&t2, 2), Err(WaveError::NoEvenGenerator)));
        assert!(matches!(wave_spec(&t2, 4), Err(WaveError::ModulusDividesNothing { q: 4 })));
    }

    #[test]
    fn moduli_and_residues() {
        let t = validate_generators(&[8, 9, 10, 12]).unwrap();
        assert_eq!(admissible_moduli(&t), vec![2, 3, 4, 5, 6, 8, 9, 10, 12]);

        let t2 = validate_generators(&[3, 5, 7]).unwrap();
        assert_eq!(admissible_moduli(&t2), vec![3, 5, 7]);

        assert_eq!(admissible_residues(2), vec![1]);
        assert_eq!(admissible_residues(3), vec![1]);
        assert_eq!(admissible_residues(5), vec![1, 2]);
        assert_eq!(admissible_residues(7), vec![1, 2, 3]);
        assert_eq!(admissible_residues(12), vec![1, 5]);
    }
}
