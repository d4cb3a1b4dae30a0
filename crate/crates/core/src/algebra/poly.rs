//! Sparse polynomials over the arbitrary-precision integers.
//!
//! The main consumer is the Hilbert-series numerator `Q(z)`, which is sparse
//! (a few dozen terms) but can have degrees in the hundreds, so terms are kept
//! in a degree-indexed map rather than a dense vector.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// A sparse polynomial with `BigInt` coefficients, indexed by degree.
///
/// Invariant: no zero coefficient is ever stored, so the zero polynomial is
/// the empty map and `degree()` returns `None` for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntPolynomial {
    terms: BTreeMap<u64, BigInt>,
}

impl SparseIntPolynomial {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(degree: u64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(degree, coeff);
        }
        Self { terms }
    }

    /// `1 - z^e`, the building block of every numerator in this crate.
    pub fn one_minus_power(e: u64) -> Self {
        let mut p = Self::one();
        p.add_term(e, -BigInt::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    /// Adds `coeff * z^degree`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, degree: u64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(degree).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: u64) -> BigInt {
        self.terms.get(&degree).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing degree order.
    pub fn iter_terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    /// Sum of all coefficients, i.e. the value at `z = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Value at `z = -1`.
    pub fn eval_at_minus_one(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for (d, c) in &self.terms {
            if d % 2 == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(*d, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(*d, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (da, ca) in &self.terms {
            for (db, cb) in &other.terms {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }

    /// Product truncated to degrees `<= cap`; cheaper than `mul` when the
    /// high-degree part is about to be discarded anyway.
    pub fn mul_truncated(&self, other: &Self, cap: u64) -> Self {
        let mut out = Self::zero();
        for (da, ca) in &self.terms {
            if *da > cap {
                break;
            }
            for (db, cb) in &other.terms {
                let d = da + db;
                if d > cap {
                    break;
                }
                out.add_term(d, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Drops every term of degree `> cap`.
    pub fn truncate(&mut self, cap: u64) {
        self.terms.retain(|d, _| *d <= cap);
    }

    /// `z^deg(self) * self(1/z)`: the coefficient list reversed.
    ///
    /// Used by the numerator duality test; returns zero unchanged.
    pub fn reversed(&self) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(deg) => Self {
                terms: self.terms.iter().map(|(d, c)| (deg - d, c.clone())).collect(),
            },
        }
    }

    /// Exact Euclidean division: `self = div * quotient + remainder` with
    /// `deg remainder < deg div`. The divisor must be monic up to sign so
    /// the division stays inside the integers.
    pub fn div_rem(&self, div: &Self) -> Result<(Self, Self), AlgebraError> {
        let div_deg = div.degree().ok_or(AlgebraError::DivisionByZeroPolynomial)?;
        let lead = div.leading_coeff().expect("nonzero polynomial has a leading term");
        if !lead.abs().is_one() {
            return Err(AlgebraError::NonMonicDivisor);
        }
        let lead_is_one = lead.is_one();

        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rdeg) = rem.degree() {
            if rdeg < div_deg {
                break;
            }
            let rlead = rem.leading_coeff().expect("nonzero").clone();
            let factor = if lead_is_one { rlead } else { -rlead };
            let shift = rdeg - div_deg;
            quot.add_term(shift, factor.clone());
            for (d, c) in &div.terms {
                rem.add_term(d + shift, -(c * &factor));
            }
        }
        Ok((quot, rem))
    }

    /// Tests whether `div^mult` divides `self` exactly.
    pub fn divisible_by_power(&self, div: &Self, mult: u32) -> Result<bool, AlgebraError> {
        let mut current = self.clone();
        for _ in 0..mult {
            let (q, r) = current.div_rem(div)?;
            if !r.is_zero() {
                return Ok(false);
            }
            current = q;
        }
        Ok(true)
    }
}

impl fmt::Display for SparseIntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (*d, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{d}")?,
                (_, false) => write!(f, "{mag}*z^{d}")?,
            }
        }
        Ok(())
    }
}

/// The `q`-th cyclotomic polynomial, computed by dividing `x^q - 1` by the
/// product of the cyclotomic polynomials of the proper divisors of `q`.
/// Results are memoized process-wide (single writer, many readers).
pub fn cyclotomic_polynomial(q: u64) -> SparseIntPolynomial {
    use std::collections::HashMap;
    use std::sync::{Arc, RwLock};

    static CACHE: RwLock<Option<HashMap<u64, Arc<SparseIntPolynomial>>>> = RwLock::new(None);

    assert!(q >= 1, "cyclotomic order must be positive");
    if let Some(map) = CACHE.read().expect("cyclotomic cache poisoned").as_ref() {
        if let Some(p) = map.get(&q) {
            return (**p).clone();
        }
    }

    let mut num = SparseIntPolynomial::one_minus_power(q).neg(); // x^q - 1
    for d in 1..q {
        if q % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            let (quot, rem) = num.div_rem(&phi_d).expect("cyclotomic division is exact");
            debug_assert!(rem.is_zero());
            num = quot;
        }
    }

    let mut guard = CACHE.write().expect("cyclotomic cache poisoned");
    guard
        .get_or_insert_with(HashMap::new)
        .entry(q)
        .or_insert_with(|| Arc::new(num.clone()));
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(u64, i64)]) -> SparseIntPolynomial {
        SparseIntPolynomial::from_terms(terms.iter().map(|&(d, c)| (d, BigInt::from(c))))
    }

    #[test]
    fn cyclotomic_small_orders() {
        assert_eq!(cyclotomic_polynomial(1), poly(&[(0, -1), (1, 1)]));
        assert_eq!(cyclotomic_polynomial(2), poly(&[(0, 1), (1, 1)]));
        assert_eq!(cyclotomic_polynomial(3), poly(&[(0, 1), (1, 1), (2, 1)]));
        assert_eq!(cyclotomic_polynomial(4), poly(&[(0, 1), (2, 1)]));
        assert_eq!(cyclotomic_polynomial(6), poly(&[(0, 1), (1, -1), (2, 1)]));
        // Recursive division of x^12 - 1 by the proper-divisor product.
        assert_eq!(cyclotomic_polynomial(12), poly(&[(0, 1), (2, -1), (4, 1)]));
    }

    #[test]
    fn cyclotomic_product_recovers_x_pow_q_minus_one() {
        for q in 1..=30u64 {
            let mut prod = SparseIntPolynomial::one();
            for d in 1..=q {
                if q % d == 0 {
                    prod = prod.mul(&cyclotomic_polynomial(d));
                }
            }
            let expected = poly(&[(0, -1)]).add(&SparseIntPolynomial::monomial(q, 1));
            assert_eq!(prod, expected, "product of divisors' cyclotomics for q={q}");
        }
    }

    #[test]
    fn division_exact_and_remainder() {
        let num = SparseIntPolynomial::one_minus_power(6);
        let den = SparseIntPolynomial::one_minus_power(1);
        let (q, r) = num.div_rem(&den).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, poly(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]));

        let (q2, r2) = poly(&[(0, 1), (1, 1)]).div_rem(&poly(&[(0, -1), (1, 1)])).unwrap();
        assert_eq!(q2, poly(&[(0, 1)]));
        assert_eq!(r2, poly(&[(0, 2)]));
    }

    #[test]
    fn division_errors() {
        let p = poly(&[(0, 1), (3, 2)]);
        assert!(matches!(
            p.div_rem(&SparseIntPolynomial::zero()),
            Err(AlgebraError::DivisionByZeroPolynomial)
        ));
        assert!(matches!(p.div_rem(&poly(&[(0, 1), (2, 3)])), Err(AlgebraError::NonMonicDivisor)));
    }

    #[test]
    fn reversal_is_an_involution() {
        let p = poly(&[(0, 1), (3, -2), (7, 5)]);
        assert_eq!(p.reversed().reversed(), p);
    }

    #[test]
    fn display_formatting() {
        assert_eq!(poly(&[(0, 1), (10, -1), (12, -1), (17, 1)]).to_string(), "1 - z^10 - z^12 + z^17");
        assert_eq!(SparseIntPolynomial::zero().to_string(), "0");
        assert_eq!(poly(&[(1, -3)]).to_string(), "-3*z");
    }
}
