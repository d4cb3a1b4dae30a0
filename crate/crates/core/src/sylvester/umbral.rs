//! Symbolic (umbral) power expansion.
//!
//! Expressions like `(c + Σ_i B d_i)^r`, where the power of each symbol `B`
//! collapses to a sequence value (`B^k -> B_k`), are evaluated through
//! truncated exponential generating functions: the expression equals
//! `r! [t^r] e^{c t} Π_i S(d_i t)` with `S(u) = Σ_k a_k u^k / k!` built from
//! the symbol's sequence. Everything is exact; series are truncated at the
//! highest power needed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::special::{bernoulli_number, euler_at_zero, factorial, frobenius_carlitz_seq};
use crate::algebra::{AlgebraError, CyclotomicNumber};

fn inv_factorial(j: u64) -> BigRational {
    BigRational::new(BigInt::one(), factorial(j))
}

/// Truncated series of e^{c t}.
fn series_exp(c: &BigRational, r_max: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(r_max + 1);
    let mut pow = BigRational::one();
    for j in 0..=r_max as u64 {
        out.push(&pow * inv_factorial(j));
        pow *= c;
    }
    out
}

/// Truncated series with coefficients `a_j d^j / j!` for a rational sequence.
fn series_from_sequence(d: u64, r_max: usize, a: impl Fn(u64) -> BigRational) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(r_max + 1);
    let mut pow = BigInt::one();
    for j in 0..=r_max as u64 {
        out.push(a(j) * BigRational::from(pow.clone()) * inv_factorial(j));
        pow *= BigInt::from(d);
    }
    out
}

fn series_mul(a: &[BigRational], b: &[BigRational], r_max: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); r_max + 1];
    for (i, x) in a.iter().enumerate().take(r_max + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(r_max + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Values of `(constant + Σ_i B d_i)^r` for r = 0..=r_max, with `B^k -> B_k`
/// (Bernoulli numbers), one independent symbol per generator.
pub fn bernoulli_symbol_powers(constant: &BigRational, gens: &[u64], r_max: usize) -> Vec<BigRational> {
    let mut series = series_exp(constant, r_max);
    for &d in gens {
        let factor = series_from_sequence(d, r_max, bernoulli_number);
        series = series_mul(&series, &factor, r_max);
    }
    scale_by_factorials(series)
}

/// Values of `(constant + Σ_i E(0) d_i)^r` with `E(0)^k -> E_k(0)`.
pub fn euler_symbol_powers(constant: &BigRational, gens: &[u64], r_max: usize) -> Vec<BigRational> {
    let mut series = series_exp(constant, r_max);
    for &d in gens {
        let factor = series_from_sequence(d, r_max, euler_at_zero);
        series = series_mul(&series, &factor, r_max);
    }
    scale_by_factorials(series)
}

fn scale_by_factorials(series: Vec<BigRational>) -> Vec<BigRational> {
    series
        .into_iter()
        .enumerate()
        .map(|(r, c)| c * BigRational::from(factorial(r as u64)))
        .collect()
}

/// Values of `(constant + Σ_i H(x_i) d_i)^r` with `H(x_i)^k -> H_k(x_i)`
/// (Frobenius–Carlitz values), in the cyclotomic field of order `q`.
pub fn frobenius_symbol_powers(
    q: u64,
    constant: &BigRational,
    factors: &[(u64, CyclotomicNumber)],
    r_max: usize,
) -> Result<Vec<CyclotomicNumber>, AlgebraError> {
    let mut series: Vec<CyclotomicNumber> = series_exp(constant, r_max)
        .into_iter()
        .map(|c| CyclotomicNumber::from_rational(q, c))
        .collect();

    for (d, x) in factors {
        let h = frobenius_carlitz_seq(r_max as u64, x)?;
        let mut factor = Vec::with_capacity(r_max + 1);
        let mut pow = BigInt::one();
        for j in 0..=r_max as u64 {
            let scale = BigRational::from(pow.clone()) * inv_factorial(j);
            factor.push(h[j as usize].scalar_mul(&scale));
            pow *= BigInt::from(*d);
        }
        series = cyclo_series_mul(q, &series, &factor, r_max);
    }

    Ok(series
        .into_iter()
        .enumerate()
        .map(|(r, c)| c.scalar_mul(&BigRational::from(factorial(r as u64))))
        .collect())
}

fn cyclo_series_mul(
    q: u64,
    a: &[CyclotomicNumber],
    b: &[CyclotomicNumber],
    r_max: usize,
) -> Vec<CyclotomicNumber> {
    let mut out = vec![CyclotomicNumber::zero(q); r_max + 1];
    for (i, x) in a.iter().enumerate().take(r_max + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(r_max + 1 - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn sigma(gens: &[u64], k: u32) -> BigRational {
        BigRational::from(gens.iter().map(|&d| BigInt::from(d).pow(k)).sum::<BigInt>())
    }

    /// Closed forms of the first seven Bernoulli-symbol powers in terms of
    /// the power sums σ_k, used as an independent oracle.
    fn f_closed(gens: &[u64], r: usize) -> BigRational {
        let s1 = sigma(gens, 1);
        let s2 = sigma(gens, 2);
        let s4 = sigma(gens, 4);
        let s6 = sigma(gens, 6);
        match r {
            0 => rat(1, 1),
            1 => s1 / rat(2, 1),
            2 => (&s1 * &s1 - s2 / rat(3, 1)) / rat(4, 1),
            3 => s1.clone() * (&s1 * &s1 - s2) / rat(8, 1),
            4 => {
                let s1_2 = &s1 * &s1;
                (&s1_2 * &s1_2 - rat(2, 1) * &s1_2 * &s2 + &s2 * &s2 / rat(3, 1)
                    + rat(2, 15) * &s4)
                    / rat(16, 1)
            }
            5 => {
                let s1_2 = &s1 * &s1;
                s1.clone()
                    * (&s1_2 * &s1_2 - rat(10, 3) * &s1_2 * &s2 + rat(5, 3) * &s2 * &s2
                        + rat(2, 3) * &s4)
                    / rat(32, 1)
            }
            6 => {
                let s1_2 = &s1 * &s1;
                let s2_2 = &s2 * &s2;
                (&s1_2 * &s1_2 * &s1_2 - rat(5, 1) * &s1_2 * &s1_2 * &s2
                    + rat(5, 1) * &s1_2 * &s2_2
                    + rat(2, 1) * &s1_2 * &s4
                    - rat(5, 9) * &s2_2 * &s2
                    - rat(2, 3) * &s2 * &s4
                    - rat(16, 63) * &s6)
                    / rat(64, 1)
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn bernoulli_symbol_powers_match_closed_forms() {
        for gens in [vec![3u64, 5, 7], vec![2, 3], vec![8, 9, 10, 12], vec![1, 4, 6, 9, 20]] {
            let s1 = sigma(&gens, 1);
            let f = bernoulli_symbol_powers(&s1, &gens, 6);
            for r in 0..=6 {
                assert_eq!(f[r], f_closed(&gens, r), "f_{r} for {gens:?}");
            }
        }
    }

    #[test]
    fn f2_for_357() {
        let gens = [3u64, 5, 7];
        let f = bernoulli_symbol_powers(&sigma(&gens, 1), &gens, 2);
        assert_eq!(f[2], rat(148, 3));
    }

    /// Closed forms of the first six Euler-symbol powers in terms of the
    /// power sums γ_k of the participating generators.
    fn g_closed(gens: &[u64], r: usize) -> BigRational {
        let g1 = sigma(gens, 1);
        let g2 = sigma(gens, 2);
        let g4 = sigma(gens, 4);
        match r {
            0 => rat(1, 1),
            1 => g1 / rat(2, 1),
            2 => (&g1 * &g1 - g2) / rat(4, 1),
            3 => g1.clone() * (&g1 * &g1 - rat(3, 1) * &g2) / rat(8, 1),
            4 => {
                let g1_2 = &g1 * &g1;
                (&g1_2 * &g1_2 - rat(6, 1) * &g1_2 * &g2 + rat(3, 1) * &g2 * &g2
                    + rat(2, 1) * &g4)
                    / rat(16, 1)
            }
            5 => {
                let g1_2 = &g1 * &g1;
                g1.clone()
                    * (&g1_2 * &g1_2 - rat(10, 1) * &g1_2 * &g2 + rat(15, 1) * &g2 * &g2
                        + rat(10, 1) * &g4)
                    / rat(32, 1)
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn euler_symbol_powers_match_closed_forms() {
        for gens in [vec![3u64, 5, 7], vec![9u64], vec![5, 9, 11, 3]] {
            let g1 = sigma(&gens, 1);
            let g = euler_symbol_powers(&g1, &gens, 5);
            for r in 0..=5 {
                assert_eq!(g[r], g_closed(&gens, r), "g_{r} for {gens:?}");
            }
        }
    }

    #[test]
    fn frobenius_symbol_powers_reduce_to_euler_at_minus_one() {
        // With every x_i = -1 the Frobenius–Carlitz symbols are the Euler
        // symbols, so the order-2 cyclotomic route must agree exactly.
        let gens = [3u64, 5, 9];
        let g1 = sigma(&gens, 1);
        let factors: Vec<(u64, CyclotomicNumber)> =
            gens.iter().map(|&d| (d, CyclotomicNumber::root_of_unity(2, 1))).collect();
        let via_cyclo = frobenius_symbol_powers(2, &g1, &factors, 5).unwrap();
        let via_euler = euler_symbol_powers(&g1, &gens, 5);
        for r in 0..=5 {
            assert_eq!(via_cyclo[r].is_rational(), Some(via_euler[r].clone()), "r = {r}");
        }
    }
}
