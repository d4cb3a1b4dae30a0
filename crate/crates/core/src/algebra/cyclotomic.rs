//! Exact arithmetic in the cyclotomic fields Q(ξ_q).
//!
//! Elements are residue classes modulo the q-th cyclotomic polynomial, stored
//! as rational coordinate vectors of length φ(q) in the power basis
//! 1, ξ, …, ξ^{φ(q)-1}. Reducing modulo Φ_q (rather than x^q - 1) keeps the
//! representation canonical, so rationality is a plain coordinate test and
//! equality is structural.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::cyclotomic_polynomial;
use super::AlgebraError;

/// Euler's totient.
pub fn euler_phi(q: u64) -> u64 {
    let mut n = q;
    let mut result = q;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Per-order data shared by every element of Q(ξ_q): the minimal polynomial
/// as a dense monic integer vector, and the reduced coordinates of all powers
/// ξ^0 … ξ^{q-1}.
struct OrderContext {
    degree: usize,
    /// Dense coefficients of Φ_q, length degree + 1, monic.
    phi: Vec<BigInt>,
    /// powers[j] = coordinates of ξ^j, each of length `degree`.
    powers: Vec<Vec<BigRational>>,
}

static CONTEXTS: RwLock<Option<HashMap<u64, Arc<OrderContext>>>> = RwLock::new(None);

fn context(q: u64) -> Arc<OrderContext> {
    assert!(q >= 1, "cyclotomic order must be positive");
    if let Some(map) = CONTEXTS.read().expect("cyclotomic context cache poisoned").as_ref() {
        if let Some(ctx) = map.get(&q) {
            return Arc::clone(ctx);
        }
    }

    let phi_poly = cyclotomic_polynomial(q);
    let degree = phi_poly.degree().expect("cyclotomic polynomial is nonzero") as usize;
    let mut phi = vec![BigInt::zero(); degree + 1];
    for (d, c) in phi_poly.iter_terms() {
        phi[d as usize] = c.clone();
    }

    // ξ^{j+1} = shift of ξ^j, reduced once per step.
    let mut powers = Vec::with_capacity(q as usize);
    let mut current = vec![BigRational::zero(); degree];
    if degree > 0 {
        current[0] = BigRational::one();
    }
    for _ in 0..q {
        powers.push(current.clone());
        let mut shifted = vec![BigRational::zero(); degree + 1];
        shifted[1..=degree].clone_from_slice(&current);
        reduce_in_place(&mut shifted, &phi, degree);
        shifted.truncate(degree.max(1));
        shifted.resize(degree, BigRational::zero());
        current = shifted;
    }

    let ctx = Arc::new(OrderContext { degree, phi, powers });
    let mut guard = CONTEXTS.write().expect("cyclotomic context cache poisoned");
    Arc::clone(guard.get_or_insert_with(HashMap::new).entry(q).or_insert_with(|| Arc::clone(&ctx)))
}

/// Reduces a dense rational coefficient vector modulo the monic integer
/// polynomial `phi` of degree `deg`, in place.
fn reduce_in_place(coeffs: &mut Vec<BigRational>, phi: &[BigInt], deg: usize) {
    while coeffs.len() > deg {
        let lead = coeffs.pop().expect("nonempty");
        if lead.is_zero() {
            continue;
        }
        let top = coeffs.len() - deg;
        for (i, c) in phi.iter().take(deg).enumerate() {
            if !c.is_zero() {
                let delta = &lead * BigRational::from(c.clone());
                coeffs[top + i] -= delta;
            }
        }
    }
    coeffs.resize(deg, BigRational::zero());
}

/// An element of Q(ξ_q), reduced modulo Φ_q.
///
/// Arithmetic between different orders is rejected: there is no automatic
/// lifting into a common field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicNumber {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(order: u64) -> Self {
        let ctx = context(order);
        Self { order, coeffs: vec![BigRational::zero(); ctx.degree] }
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: u64, value: BigRational) -> Self {
        let ctx = context(order);
        if ctx.degree == 0 {
            // Order 1: Φ_1 = x - 1 has degree 1, so this cannot happen; kept
            // for safety against a zero-degree modulus.
            return Self { order, coeffs: vec![] };
        }
        let mut coeffs = vec![BigRational::zero(); ctx.degree];
        coeffs[0] = value;
        Self { order, coeffs }
    }

    pub fn from_int(order: u64, value: impl Into<BigInt>) -> Self {
        Self::from_rational(order, BigRational::from(value.into()))
    }

    /// ξ_q^exp for any (possibly negative) exponent.
    pub fn root_of_unity(order: u64, exp: i64) -> Self {
        let ctx = context(order);
        let e = exp.rem_euclid(order as i64) as usize;
        Self { order, coeffs: ctx.powers[e].clone() }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.is_rational().map_or(false, |r| r.is_one())
    }

    /// The rational value, when every non-constant coordinate vanishes.
    pub fn is_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(AlgebraError::OrderMismatch { left: self.order, right: other.order })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        let ctx = context(self.order);
        let deg = ctx.degree;
        let mut prod = vec![BigRational::zero(); 2 * deg.max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        reduce_in_place(&mut prod, &ctx.phi, deg);
        Ok(Self { order: self.order, coeffs: prod })
    }

    pub fn scalar_mul(&self, scalar: &BigRational) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|c| c * scalar).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Φ_q. Every nonzero element is a unit because Φ_q is irreducible over
    /// the rationals.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::NotInvertible);
        }
        let ctx = context(self.order);
        let phi: Vec<BigRational> = ctx.phi.iter().map(|c| BigRational::from(c.clone())).collect();

        // Invariants: r0 = s0 * self (mod Φ), r1 = s1 * self (mod Φ).
        let mut r0 = phi;
        let mut r1 = dense_trim(self.coeffs.clone());
        let mut s0 = vec![BigRational::zero()];
        let mut s1 = vec![BigRational::one()];
        while !dense_is_zero(&r1) {
            let (q, r) = dense_div_rem(&r0, &r1);
            let s = dense_sub(&s0, &dense_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant (gcd with an irreducible modulus).
        debug_assert!(r0.len() == 1 && !r0[0].is_zero(), "gcd with irreducible Φ_q must be constant");
        let inv_lead = BigRational::one() / r0[0].clone();
        let mut coeffs: Vec<BigRational> = s0.iter().map(|c| c * &inv_lead).collect();
        reduce_in_place(&mut coeffs, &ctx.phi, ctx.degree);
        Ok(Self { order: self.order, coeffs })
    }

    /// The exponent e with self = ξ_q^e, if the element is a power of the
    /// canonical root.
    pub fn as_root_of_unity(&self) -> Option<u64> {
        let ctx = context(self.order);
        (0..self.order).find(|&e| ctx.powers[e as usize] == self.coeffs)
    }

    /// Multiplication by ξ_q^exp, as a cyclic rotation in the x^q - 1
    /// embedding followed by one reduction. Much cheaper than a general
    /// product: only additions and one modular reduction.
    pub fn rotated(&self, exp: i64) -> Self {
        let ctx = context(self.order);
        let q = self.order as usize;
        let e = exp.rem_euclid(self.order as i64) as usize;
        if e == 0 {
            return self.clone();
        }
        let mut wide = vec![BigRational::zero(); q + ctx.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                wide[(i + e) % q] += c;
            }
        }
        wide.truncate(q.max(ctx.degree));
        reduce_in_place(&mut wide, &ctx.phi, ctx.degree);
        Self { order: self.order, coeffs: wide }
    }

    /// The Galois automorphism ξ → ξ^a for a coprime to the order.
    pub fn galois(&self, a: u64) -> Result<Self, AlgebraError> {
        if num_integer::gcd(a % self.order, self.order) != 1 {
            return Err(AlgebraError::NotInvertible);
        }
        let ctx = context(self.order);
        let mut out = Self::zero(self.order);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let image = (a as u128 * k as u128 % self.order as u128) as usize;
            for (i, p) in ctx.powers[image].iter().enumerate() {
                if !p.is_zero() {
                    out.coeffs[i] += c * p;
                }
            }
        }
        Ok(out)
    }

    /// Complex conjugation: the field automorphism ξ → ξ^{q-1}.
    pub fn conjugate(&self) -> Self {
        self.galois(self.order - 1).expect("q - 1 is coprime to q")
    }

    /// Fixed by conjugation, i.e. lies in the maximal real subfield.
    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// Negated by conjugation (a purely imaginary value).
    pub fn is_imaginary(&self) -> bool {
        self.conjugate() == self.neg_ref()
    }

    fn neg_ref(&self) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// 1 / (1 - ξ_q^k) by the closed form -(1/q) Σ_{j=1}^{q-1} j ξ^{kj}, valid
/// whenever ξ_q^k ≠ 1. Only rotations and one scalar, no Euclid.
pub fn one_minus_root_inverse(q: u64, k: i64) -> Result<CyclotomicNumber, AlgebraError> {
    let e = k.rem_euclid(q as i64) as u64;
    if e == 0 {
        return Err(AlgebraError::NotInvertible);
    }
    let ctx = context(q);
    let mut acc = CyclotomicNumber::zero(q);
    for j in 1..q {
        let exp = ((e as u128 * j as u128) % q as u128) as usize;
        let weight = BigRational::from(BigInt::from(j));
        for (i, p) in ctx.powers[exp].iter().enumerate() {
            if !p.is_zero() {
                acc.coeffs[i] += p * &weight;
            }
        }
    }
    Ok(acc.scalar_mul(&BigRational::new(-BigInt::one(), BigInt::from(q))))
}

fn dense_trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigRational::zero());
    }
    v
}

fn dense_is_zero(v: &[BigRational]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn dense_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    dense_trim(out)
}

fn dense_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if dense_is_zero(a) || dense_is_zero(b) {
        return vec![BigRational::zero()];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    dense_trim(out)
}

fn dense_div_rem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let den = dense_trim(den.to_vec());
    let dd = den.len() - 1;
    let lead = den.last().expect("nonzero divisor").clone();
    let mut rem = dense_trim(num.to_vec());
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd).max(1)];
    while rem.len() - 1 >= dd && !dense_is_zero(&rem) {
        let shift = rem.len() - 1 - dd;
        let factor = rem.last().expect("nonzero") / &lead;
        quot[shift] = factor.clone();
        for (i, c) in den.iter().enumerate() {
            let delta = c * &factor;
            rem[shift + i] -= delta;
        }
        rem = dense_trim(rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    (dense_trim(quot), rem)
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
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
            let q = self.order;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z{q}")?,
                (1, false) => write!(f, "{mag}*z{q}")?,
                (_, true) => write!(f, "z{q}^{k}")?,
                (_, false) => write!(f, "{mag}*z{q}^{k}")?,
            }
        }
        Ok(())
    }
}

// Operator forms for same-order arithmetic; a mismatch is a programming
// error, so these panic where the checked methods return an error.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs).expect("cyclotomic order mismatch")
            }
        }
        impl $trait for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.neg_ref()
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn phi_values() {
        for (q, expected) in [(1, 1), (2, 1), (3, 2), (4, 2), (6, 2), (12, 4), (30, 8), (37, 36)] {
            assert_eq!(euler_phi(q), expected, "phi({q})");
        }
    }

    #[test]
    fn primitive_root_relations() {
        // ξ_3 + ξ_3^2 = -1 in the basis {1, ξ_3}.
        let xi = CyclotomicNumber::root_of_unity(3, 1);
        let xi2 = CyclotomicNumber::root_of_unity(3, 2);
        assert_eq!(&xi + &xi2, CyclotomicNumber::from_int(3, -1));
        // ξ_q^q = 1 for a spread of orders.
        for q in 2..=12u64 {
            let xi = CyclotomicNumber::root_of_unity(q, 1);
            let mut acc = CyclotomicNumber::one(q);
            for _ in 0..q {
                acc = &acc * &xi;
            }
            assert!(acc.is_one(), "ξ_{q}^{q} = 1");
        }
    }

    #[test]
    fn product_of_one_minus_roots_is_five() {
        // (1-ξ_5)(1-ξ_5^2)(1-ξ_5^3)(1-ξ_5^4) = Φ_5(1) = 5.
        let one = CyclotomicNumber::one(5);
        let mut acc = CyclotomicNumber::one(5);
        for k in 1..5 {
            acc = &acc * &(&one - &CyclotomicNumber::root_of_unity(5, k));
        }
        assert_eq!(acc.is_rational(), Some(rat(5, 1)));
    }

    #[test]
    fn rationality_detection() {
        let mut sum = CyclotomicNumber::one(3);
        sum = &sum + &CyclotomicNumber::root_of_unity(3, 1);
        sum = &sum + &CyclotomicNumber::root_of_unity(3, 2);
        assert_eq!(sum.is_rational(), Some(rat(0, 1)));

        assert_eq!(CyclotomicNumber::root_of_unity(7, 1).is_rational(), None);

        // Sum of all primitive 5th roots is -1.
        let mut s = CyclotomicNumber::zero(5);
        for n in 1..=4 {
            s = &s + &CyclotomicNumber::root_of_unity(5, n);
        }
        assert_eq!(s.is_rational(), Some(rat(-1, 1)));
    }

    #[test]
    fn minimal_polynomial_annihilates_root() {
        for q in 1..=30u64 {
            let phi = cyclotomic_polynomial(q);
            let mut acc = CyclotomicNumber::zero(q);
            for (d, c) in phi.iter_terms() {
                let term = CyclotomicNumber::root_of_unity(q, d as i64)
                    .scalar_mul(&BigRational::from(c.clone()));
                acc = &acc + &term;
            }
            assert!(acc.is_zero(), "Φ_{q}(ξ_{q}) = 0");
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let one = CyclotomicNumber::one(7);
        let x = &(&CyclotomicNumber::root_of_unity(7, 3) + &one)
            - &CyclotomicNumber::root_of_unity(7, 5).scalar_mul(&rat(2, 3));
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());

        assert!(matches!(CyclotomicNumber::zero(5).inverse(), Err(AlgebraError::NotInvertible)));
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let a = CyclotomicNumber::one(3);
        let b = CyclotomicNumber::one(5);
        assert!(matches!(a.checked_add(&b), Err(AlgebraError::OrderMismatch { .. })));
        assert!(matches!(a.checked_mul(&b), Err(AlgebraError::OrderMismatch { .. })));
    }

    #[test]
    fn conjugation_and_realness() {
        let xi = CyclotomicNumber::root_of_unity(7, 2);
        let conj = xi.conjugate();
        assert_eq!(conj, CyclotomicNumber::root_of_unity(7, -2));
        let real = &xi + &xi.conjugate();
        assert!(real.is_real());
        let imag = &xi - &xi.conjugate();
        assert!(imag.is_imaginary());
        assert!((&real * &real).is_real());
    }
}
