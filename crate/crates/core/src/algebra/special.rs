//! The number sequences feeding the wave coefficients: Bernoulli numbers,
//! Euler-polynomial values at zero, and the Frobenius–Carlitz values H_n(x)
//! generated by (1 - x)/(e^t - x).

use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cyclotomic::CyclotomicNumber;
use super::AlgebraError;

/// Binomial coefficient as a `BigInt`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// B_k with the B_1 = -1/2 convention, by the recurrence
/// sum_{j=0}^{k} C(k+1, j) B_j = 0. Memoized process-wide.
pub fn bernoulli_number(k: u64) -> BigRational {
    static CACHE: RwLock<Vec<BigRational>> = RwLock::new(Vec::new());

    {
        let cache = CACHE.read().expect("bernoulli cache poisoned");
        if let Some(b) = cache.get(k as usize) {
            return b.clone();
        }
    }
    let mut cache = CACHE.write().expect("bernoulli cache poisoned");
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= k as usize {
        let n = cache.len() as u64;
        let mut sum = BigRational::zero();
        for (j, b) in cache.iter().enumerate() {
            sum += BigRational::from(binomial(n + 1, j as u64)) * b;
        }
        let value = -sum / BigRational::from(BigInt::from(n + 1));
        cache.push(value);
    }
    cache[k as usize].clone()
}

/// E_k(0), the Euler polynomial at zero: E_0(0) = 1 and
/// E_n(0) = -(1/2) sum_{j<n} C(n, j) E_j(0), so all even indices >= 2 vanish.
pub fn euler_at_zero(k: u64) -> BigRational {
    static CACHE: RwLock<Vec<BigRational>> = RwLock::new(Vec::new());

    {
        let cache = CACHE.read().expect("euler cache poisoned");
        if let Some(e) = cache.get(k as usize) {
            return e.clone();
        }
    }
    let mut cache = CACHE.write().expect("euler cache poisoned");
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= k as usize {
        let n = cache.len() as u64;
        let mut sum = BigRational::zero();
        for (j, e) in cache.iter().enumerate() {
            sum += BigRational::from(binomial(n, j as u64)) * e;
        }
        cache.push(-sum / BigRational::from(BigInt::from(2)));
    }
    cache[k as usize].clone()
}

/// H_0(x), …, H_r(x) for a cyclotomic argument x ≠ 1, by the recurrence
/// sum_{j=0}^{n} C(n, j) H_j(x) = x H_n(x), i.e.
/// H_n(x) = (x - 1)^{-1} sum_{j<n} C(n, j) H_j(x).
pub fn frobenius_carlitz_seq(r: u64, x: &CyclotomicNumber) -> Result<Vec<CyclotomicNumber>, AlgebraError> {
    if x.is_one() {
        return Err(AlgebraError::SingularAtOne);
    }
    let q = x.order();
    let one = CyclotomicNumber::one(q);
    // 1/(x - 1) has a rotation-based closed form when x is a root of unity
    // (the only case the wave formulas hit); fall back to the general
    // inverse otherwise.
    let denom_inv = match x.as_root_of_unity() {
        Some(e) => -super::cyclotomic::one_minus_root_inverse(q, e as i64)?,
        None => x.checked_sub(&one)?.inverse()?,
    };
    let mut seq = Vec::with_capacity(r as usize + 1);
    seq.push(one);
    for n in 1..=r {
        let mut sum = CyclotomicNumber::zero(q);
        for (j, h) in seq.iter().enumerate() {
            let c = BigRational::from(binomial(n, j as u64));
            sum = &sum + &h.scalar_mul(&c);
        }
        seq.push(&sum * &denom_inv);
    }
    Ok(seq)
}

/// H_r(x) alone; see [`frobenius_carlitz_seq`].
pub fn frobenius_carlitz(r: u64, x: &CyclotomicNumber) -> Result<CyclotomicNumber, AlgebraError> {
    Ok(frobenius_carlitz_seq(r, x)?.pop().expect("sequence is nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bernoulli_printed_values() {
        assert_eq!(bernoulli_number(0), rat(1, 1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(4), rat(-1, 30));
        assert_eq!(bernoulli_number(6), rat(1, 42));
        for k in 1..=6u64 {
            assert_eq!(bernoulli_number(2 * k + 1), rat(0, 1), "B_{} = 0", 2 * k + 1);
        }
    }

    #[test]
    fn euler_printed_values() {
        assert_eq!(euler_at_zero(0), rat(1, 1));
        assert_eq!(euler_at_zero(1), rat(-1, 2));
        assert_eq!(euler_at_zero(3), rat(1, 4));
        assert_eq!(euler_at_zero(5), rat(-1, 2));
        assert_eq!(euler_at_zero(7), rat(17, 8));
        for k in 1..=5u64 {
            assert_eq!(euler_at_zero(2 * k), rat(0, 1), "E_{}(0) = 0", 2 * k);
        }
    }

    #[test]
    fn frobenius_carlitz_matches_closed_forms() {
        // At x = -1 (order 2) the values are the Euler values at zero.
        let minus_one = CyclotomicNumber::root_of_unity(2, 1);
        let seq = frobenius_carlitz_seq(8, &minus_one).unwrap();
        for (k, h) in seq.iter().enumerate() {
            assert_eq!(h.is_rational(), Some(euler_at_zero(k as u64)), "H_{k}(-1) = E_{k}(0)");
        }

        // Closed forms H_1..H_4 at a primitive 5th root.
        let x = CyclotomicNumber::root_of_unity(5, 1);
        let one = CyclotomicNumber::one(5);
        let xm1_inv = (&x - &one).inverse().unwrap();
        let seq = frobenius_carlitz_seq(4, &x).unwrap();
        // H_1 = 1/(x-1)
        assert_eq!(seq[1], xm1_inv);
        // H_2 = (x+1)/(x-1)^2
        let h2 = &(&x + &one) * &(&xm1_inv * &xm1_inv);
        assert_eq!(seq[2], h2);
        // H_3 = (x^2+4x+1)/(x-1)^3
        let x2 = &x * &x;
        let num3 = &(&x2 + &x.scalar_mul(&rat(4, 1))) + &one;
        let h3 = &num3 * &(&(&xm1_inv * &xm1_inv) * &xm1_inv);
        assert_eq!(seq[3], h3);
        // H_4 = (x^3+11x^2+11x+1)/(x-1)^4
        let x3 = &x2 * &x;
        let num4 = &(&x3 + &x2.scalar_mul(&rat(11, 1))) + &(&x.scalar_mul(&rat(11, 1)) + &one);
        let pow4 = &(&xm1_inv * &xm1_inv) * &(&xm1_inv * &xm1_inv);
        assert_eq!(seq[4], &num4 * &pow4);
    }

    #[test]
    fn frobenius_carlitz_reflection_law() {
        // H_n(1/x) = (-1)^n x H_n(x) for primitive roots of every order <= 12.
        for q in 2..=12u64 {
            for n_exp in 1..q {
                if num_integer::gcd(n_exp, q) != 1 {
                    continue;
                }
                let x = CyclotomicNumber::root_of_unity(q, n_exp as i64);
                let x_inv = CyclotomicNumber::root_of_unity(q, -(n_exp as i64));
                let direct = frobenius_carlitz_seq(8, &x).unwrap();
                let inverted = frobenius_carlitz_seq(8, &x_inv).unwrap();
                for n in 1..=8usize {
                    let mut rhs = (&x * &direct[n]).scalar_mul(&rat(1, 1));
                    if n % 2 == 1 {
                        rhs = -rhs;
                    }
                    assert_eq!(inverted[n], rhs, "reflection law, q={q} exp={n_exp} n={n}");
                }
            }
        }
    }

    #[test]
    fn frobenius_carlitz_rejects_one() {
        let one = CyclotomicNumber::one(4);
        assert!(matches!(frobenius_carlitz(3, &one), Err(AlgebraError::SingularAtOne)));
    }

    #[test]
    fn binomial_and_factorial() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
