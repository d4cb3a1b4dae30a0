//! Sylvester-wave quasipolynomials with exact cyclotomic coefficients.
//!
//! The wave attached to modulus q has degree ω_q - 1 in s. Wave 1 is the
//! polynomial part, built from Bernoulli symbols. The q = 2 wave couples
//! Bernoulli symbols on the even generators with Euler symbols on the odd
//! ones and oscillates with (-1)^s. Waves with q >= 3 pair the residues n
//! and q - n into a cosine part L and a sine part M whose coefficients are
//! built from Frobenius–Carlitz symbols; both parts are evaluated in Q(ξ_q)
//! and every full wave value at an integer is rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::umbral::{bernoulli_symbol_powers, euler_symbol_powers, frobenius_symbol_powers};
use super::{
    admissible_moduli, admissible_residues, denumerant_dp, residue_is_admissible, wave_spec,
    WaveError, WaveSpec,
};
use crate::algebra::special::{binomial, factorial};
use crate::algebra::CyclotomicNumber;
use crate::semigroup::GeneratorTuple;

/// Coefficients of the polynomial part W_1(s), from s^{m-1} down to s^0,
/// with the 1/((m-1)! π_m) prefactor already applied. The leading
/// coefficient is therefore exactly 1/((m-1)! π_m).
pub fn wave1_polynomial(tuple: &GeneratorTuple) -> Vec<BigRational> {
    let m = tuple.embedding_dimension();
    let sigma1 = BigRational::from(BigInt::from(tuple.sigma1_u64()));
    let f = bernoulli_symbol_powers(&sigma1, tuple.generators(), m - 1);
    let denom = BigRational::from(factorial(m as u64 - 1) * tuple.product());
    (1..=m as u64)
        .map(|k| BigRational::from(binomial(m as u64 - 1, k - 1)) * &f[(k - 1) as usize] / &denom)
        .collect()
}

/// The cosine/sine coefficient lists of one wave component.
///
/// `l` holds L_1..L_ω (coefficients of s^{ω-1} down to s^0) and `im` holds
/// the purely imaginary products i·M_1..i·M_ω (empty when q <= 2, where the
/// sine part vanishes identically). L is fixed by conjugation and i·M is
/// negated by it; both facts are checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WavePolynomials {
    pub q: u64,
    pub n: u64,
    pub omega: usize,
    l: Vec<CyclotomicNumber>,
    im: Vec<CyclotomicNumber>,
}

impl WavePolynomials {
    pub fn l_coeffs(&self) -> &[CyclotomicNumber] {
        &self.l
    }

    /// i·M_k values; divide by i under the fixed embedding to read M_k.
    pub fn im_coeffs(&self) -> &[CyclotomicNumber] {
        &self.im
    }

    pub fn l1(&self) -> &CyclotomicNumber {
        &self.l[0]
    }

    pub fn im1(&self) -> Option<&CyclotomicNumber> {
        self.im.first()
    }

    fn eval(coeffs: &[CyclotomicNumber], q: u64, s: i64) -> CyclotomicNumber {
        let sr = BigRational::from(BigInt::from(s));
        let mut acc = CyclotomicNumber::zero(q);
        for c in coeffs {
            acc = &acc.scalar_mul(&sr) + c;
        }
        acc
    }

    pub fn eval_l(&self, s: i64) -> CyclotomicNumber {
        Self::eval(&self.l, self.q, s)
    }

    pub fn eval_im(&self, s: i64) -> CyclotomicNumber {
        if self.im.is_empty() {
            CyclotomicNumber::zero(self.q)
        } else {
            Self::eval(&self.im, self.q, s)
        }
    }

    fn check_reality(&self) -> Result<(), WaveError> {
        for (k, c) in self.l.iter().enumerate() {
            if !c.is_real() {
                return Err(WaveError::Internal(format!(
                    "L_{} of wave ({}, {}) is not real: {c}",
                    k + 1,
                    self.q,
                    self.n
                )));
            }
        }
        for (k, c) in self.im.iter().enumerate() {
            if !c.is_imaginary() {
                return Err(WaveError::Internal(format!(
                    "i*M_{} of wave ({}, {}) is not imaginary: {c}",
                    k + 1,
                    self.q,
                    self.n
                )));
            }
        }
        Ok(())
    }
}

/// The q = 2 wave in its normalized form: L^{2,1} has leading coefficient 1
/// and the wave is 2^{ω_2 - m} / ((ω_2 - 1)! π_{ω_2}) · L^{2,1}(s) · (-1)^s.
pub fn wave2_polynomial(tuple: &GeneratorTuple) -> Result<WavePolynomials, WaveError> {
    let spec = wave_spec(tuple, 2)?;
    let r_max = spec.omega - 1;
    let lambda1 = BigRational::from(spec.lambda(1));
    let gamma1 = BigRational::from(spec.gamma(1));
    let l_sym = bernoulli_symbol_powers(&lambda1, &spec.xi_set, r_max);
    let g_sym = euler_symbol_powers(&gamma1, &spec.complement, r_max);

    let mut l = Vec::with_capacity(spec.omega);
    for r in 0..=r_max as u64 {
        let mut sum = BigRational::zero();
        for k in 0..=r {
            sum += BigRational::from(binomial(r, k)) * &g_sym[k as usize] * &l_sym[(r - k) as usize];
        }
        let coeff = BigRational::from(binomial(spec.omega as u64 - 1, r)) * sum;
        l.push(CyclotomicNumber::from_rational(2, coeff));
    }

    if !l[0].is_one() {
        return Err(WaveError::Internal("normalized q = 2 wave must have L_1 = 1".into()));
    }
    let wp = WavePolynomials { q: 2, n: 1, omega: spec.omega, l, im: vec![] };
    wp.check_reality()?;
    Ok(wp)
}

/// The (q, n) wave component for q >= 3, with coefficients
/// L_{r+1} = C(ω-1, r) Σ_k C(r, k) (Π_{k,+} + Π_{k,-}) l_{r-k} and
/// i M_{r+1} the same with a minus, where Π_{k,±} divides the
/// Frobenius–Carlitz symbol powers by Π (1 - ξ^{±d_i n}) over the
/// complement. The leading pair is cross-checked against its closed form
/// (1 ± (-1)^{m-ω} ξ^{σ_1 n}) / Π (1 - ξ^{d_i n}).
pub fn waveq_partial(tuple: &GeneratorTuple, q: u64, n: u64) -> Result<WavePolynomials, WaveError> {
    if q < 3 {
        return Err(WaveError::BadResidue { q, n });
    }
    if !residue_is_admissible(q, n) {
        return Err(WaveError::BadResidue { q, n });
    }
    let first = waveq_first_component(tuple, q)?;
    if n == 1 {
        Ok(first)
    } else {
        derive_component(&first, n)
    }
}

/// The n = 1 component, computed directly from the symbol series and
/// cross-checked against the closed form of its leading pair.
fn waveq_first_component(tuple: &GeneratorTuple, q: u64) -> Result<WavePolynomials, WaveError> {
    let n = 1u64;
    let spec = wave_spec(tuple, q)?;
    let m = tuple.embedding_dimension();
    let r_max = spec.omega - 1;

    let lambda1 = BigRational::from(spec.lambda(1));
    let l_sym: Vec<CyclotomicNumber> = bernoulli_symbol_powers(&lambda1, &spec.xi_set, r_max)
        .into_iter()
        .map(|c| CyclotomicNumber::from_rational(q, c))
        .collect();

    let gamma1 = BigRational::from(spec.gamma(1));
    let mut pi_plus = Vec::with_capacity(r_max + 1);
    let mut pi_minus = Vec::with_capacity(r_max + 1);
    let mut denom_inv_plus = None;
    for sign in [1i64, -1i64] {
        let factors: Vec<(u64, CyclotomicNumber)> = spec
            .complement
            .iter()
            .map(|&d| (d, root_power(q, sign * (d as i64), n)))
            .collect();
        let h = frobenius_symbol_powers(q, &gamma1, &factors, r_max)?;
        let denom_inv = product_denominator_inverse(q, &spec.complement, sign, n)?;
        let target = if sign > 0 { &mut pi_plus } else { &mut pi_minus };
        *target = h.iter().map(|hr| hr * &denom_inv).collect();
        if sign > 0 {
            denom_inv_plus = Some(denom_inv);
        }
    }

    let mut l = Vec::with_capacity(spec.omega);
    let mut im = Vec::with_capacity(spec.omega);
    for r in 0..=r_max as u64 {
        let outer = BigRational::from(binomial(spec.omega as u64 - 1, r));
        let mut sum_l = CyclotomicNumber::zero(q);
        let mut sum_m = CyclotomicNumber::zero(q);
        for k in 0..=r {
            let c = BigRational::from(binomial(r, k));
            let lk = l_sym[(r - k) as usize].scalar_mul(&c);
            sum_l = &sum_l + &(&(&pi_plus[k as usize] + &pi_minus[k as usize]) * &lk);
            sum_m = &sum_m + &(&(&pi_plus[k as usize] - &pi_minus[k as usize]) * &lk);
        }
        l.push(sum_l.scalar_mul(&outer));
        im.push(sum_m.scalar_mul(&outer));
    }

    // Closed form of the leading pair.
    let denom_inv = denom_inv_plus.expect("computed in the sign loop");
    let parity_sign = if (m - spec.omega) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let xi_sigma = root_power(q, tuple.sigma1_u64() as i64, n).scalar_mul(&parity_sign);
    let one = CyclotomicNumber::one(q);
    let l1_closed = &(&one + &xi_sigma) * &denom_inv;
    let im1_closed = &(&one - &xi_sigma) * &denom_inv;
    if l[0] != l1_closed || im[0] != im1_closed {
        return Err(WaveError::Internal(format!(
            "leading wave coefficients for (q, n) = ({q}, {n}) disagree with their closed form"
        )));
    }

    let wp = WavePolynomials { q, n, omega: spec.omega, l, im };
    wp.check_reality()?;
    Ok(wp)
}

/// The (q, n) component as the image of the (q, 1) component under the
/// Galois map ξ → ξ^n: every symbol value and denominator in the
/// coefficient formulas is equivariant, and the rational Bernoulli symbols
/// are fixed.
fn derive_component(first: &WavePolynomials, n: u64) -> Result<WavePolynomials, WaveError> {
    let map = |coeffs: &[CyclotomicNumber]| -> Result<Vec<CyclotomicNumber>, WaveError> {
        coeffs.iter().map(|c| c.galois(n).map_err(WaveError::Algebra)).collect()
    };
    let wp = WavePolynomials {
        q: first.q,
        n,
        omega: first.omega,
        l: map(&first.l)?,
        im: map(&first.im)?,
    };
    // Conjugation commutes with every Galois map, so reality is inherited.
    debug_assert!(wp.check_reality().is_ok());
    Ok(wp)
}

/// ξ_q^{base·n} with overflow-safe exponent arithmetic.
fn root_power(q: u64, base: i64, n: u64) -> CyclotomicNumber {
    let exp = (base as i128 * n as i128).rem_euclid(q as i128) as i64;
    CyclotomicNumber::root_of_unity(q, exp)
}

/// 1 / Π_{d in complement} (1 - ξ_q^{sign d n}), factor by factor through
/// the rotation-based closed form.
fn product_denominator_inverse(
    q: u64,
    complement: &[u64],
    sign: i64,
    n: u64,
) -> Result<CyclotomicNumber, WaveError> {
    let mut acc = CyclotomicNumber::one(q);
    for &d in complement {
        let exp = (sign as i128 * d as i128 * n as i128).rem_euclid(q as i128) as i64;
        let inv = crate::algebra::cyclotomic::one_minus_root_inverse(q, exp)
            .map_err(WaveError::Algebra)?;
        acc = &acc * &inv;
    }
    Ok(acc)
}

/// One modulus of a tuple's wave decomposition, ready for evaluation.
#[derive(Debug, Clone)]
struct QWave {
    q: u64,
    /// Rational polynomial per residue class of s mod q, prefactor folded
    /// in: residue_polys[ρ][j] is the coefficient of s^{ω-1-j}. Restricted
    /// to one residue class every wave is a plain rational polynomial (its
    /// value is Galois-invariant at infinitely many integers), so all
    /// cyclotomic arithmetic happens once, at construction.
    residue_polys: Vec<Vec<BigRational>>,
}

impl QWave {
    fn build(tuple: &GeneratorTuple, q: u64) -> Result<Self, WaveError> {
        let spec: WaveSpec = wave_spec(tuple, q)?;
        let m = tuple.embedding_dimension();
        let base = factorial(spec.omega as u64 - 1) * &spec.pi_omega;

        if q == 2 {
            let wp = wave2_polynomial(tuple)?;
            let two_pow = BigInt::from(1u8) << (m - spec.omega);
            let prefactor = BigRational::new(BigInt::one(), base * two_pow);
            let coeffs: Vec<BigRational> = wp
                .l_coeffs()
                .iter()
                .map(|c| c.is_rational().expect("order-2 values are rational") * &prefactor)
                .collect();
            let negated: Vec<BigRational> = coeffs.iter().map(|c| -c).collect();
            return Ok(QWave { q, residue_polys: vec![coeffs, negated] });
        }

        // The per-component 1/2 from pairing n with q - n folds into the
        // prefactor.
        let prefactor = BigRational::new(BigInt::one(), base * BigInt::from(2));
        let first = waveq_first_component(tuple, q)?;
        let components = admissible_residues(q)
            .into_iter()
            .map(|n| if n == 1 { Ok(first.clone()) } else { derive_component(&first, n) })
            .collect::<Result<Vec<_>, _>>()?;

        // Per component, L(s) cos(2πns/q) + M(s) sin(2πns/q) splits as
        // (L - iM) ξ^{ns} + (L + iM) ξ^{-ns}; on the class s ≡ ρ the root
        // powers are constants, applied as cheap rotations.
        let mut residue_polys = Vec::with_capacity(q as usize);
        for rho in 0..q as i64 {
            let mut coeffs = Vec::with_capacity(spec.omega);
            for j in 0..spec.omega {
                let mut acc = CyclotomicNumber::zero(q);
                for wp in &components {
                    let l = &wp.l[j];
                    let im = if wp.im.is_empty() {
                        CyclotomicNumber::zero(q)
                    } else {
                        wp.im[j].clone()
                    };
                    let fwd = (l - &im).rotated(wp.n as i64 * rho);
                    let bwd = (l + &im).rotated(-(wp.n as i64) * rho);
                    acc = &acc + &(&fwd + &bwd);
                }
                let value = acc.is_rational().ok_or_else(|| {
                    WaveError::Internal(format!(
                        "wave q = {q} coefficient at residue {rho} is not rational: {acc}"
                    ))
                })?;
                coeffs.push(value * &prefactor);
            }
            residue_polys.push(coeffs);
        }
        Ok(QWave { q, residue_polys })
    }

    fn eval(&self, s: i64) -> BigRational {
        let rho = s.rem_euclid(self.q as i64) as usize;
        let sr = BigRational::from(BigInt::from(s));
        let mut acc = BigRational::zero();
        for c in &self.residue_polys[rho] {
            acc = acc * &sr + c;
        }
        acc
    }

    /// Purely periodic means degree 0 in s on every residue class.
    fn is_constant_per_residue(&self) -> bool {
        self.residue_polys.iter().all(|coeffs| {
            coeffs.len() <= 1 || coeffs[..coeffs.len() - 1].iter().all(|c| c.is_zero())
        })
    }
}

/// All waves of a tuple, built once and evaluated at arbitrary integers.
/// Construction per modulus is independent; evaluation is read-only and
/// cheap (one rational polynomial per residue class).
#[derive(Debug, Clone)]
pub struct WaveEngine {
    sigma1: i64,
    m: usize,
    pairwise_coprime: bool,
    wave1: Vec<BigRational>,
    qwaves: Vec<QWave>,
}

impl WaveEngine {
    pub fn new(tuple: &GeneratorTuple) -> Result<Self, WaveError> {
        let qwaves = admissible_moduli(tuple)
            .into_iter()
            .map(|q| QWave::build(tuple, q))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WaveEngine {
            sigma1: tuple.sigma1_u64() as i64,
            m: tuple.embedding_dimension(),
            pairwise_coprime: tuple.pairwise_coprime(),
            wave1: wave1_polynomial(tuple),
            qwaves,
        })
    }

    /// The moduli present in the decomposition, q = 1 first.
    pub fn moduli(&self) -> Vec<u64> {
        std::iter::once(1).chain(self.qwaves.iter().map(|w| w.q)).collect()
    }

    pub fn eval_wave1(&self, s: i64) -> BigRational {
        let sr = BigRational::from(BigInt::from(s));
        let mut acc = BigRational::zero();
        for c in &self.wave1 {
            acc = acc * &sr + c;
        }
        acc
    }

    /// W_q(s) for q = 1 or an admissible modulus.
    pub fn eval_wave(&self, q: u64, s: i64) -> Result<BigRational, WaveError> {
        if q == 1 {
            return Ok(self.eval_wave1(s));
        }
        let qw = self
            .qwaves
            .iter()
            .find(|w| w.q == q)
            .ok_or(WaveError::ModulusDividesNothing { q })?;
        Ok(qw.eval(s))
    }

    /// Every wave value at `s`, keyed by modulus (q = 1 first).
    pub fn per_wave(&self, s: i64) -> Vec<(u64, BigRational)> {
        let mut out = vec![(1, self.eval_wave1(s))];
        for qw in &self.qwaves {
            out.push((qw.q, qw.eval(s)));
        }
        out
    }

    /// Σ_q W_q(s), the quasipolynomial continuation of the denumerant.
    pub fn total(&self, s: i64) -> BigRational {
        let mut acc = self.eval_wave1(s);
        for qw in &self.qwaves {
            acc += qw.eval(s);
        }
        acc
    }

    /// Zero sequence of the continuation (pairwise-coprime tuples only):
    /// s = -1, …, -(σ_1 - 1), plus -σ_1/2 when m and σ_1 are both even.
    pub fn zero_rows(&self) -> Option<Vec<(i64, BigRational)>> {
        if !self.pairwise_coprime {
            return None;
        }
        let mut points: Vec<i64> = (-(self.sigma1 - 1)..=-1).collect();
        if self.m % 2 == 0 && self.sigma1 % 2 == 0 {
            points.push(-self.sigma1 / 2);
        }
        Some(points.into_iter().map(|s| (s, self.total(s))).collect())
    }

    /// Reflection law at integer points of the doubled variable:
    /// W(u) = ±W(-σ_1 - u), + for odd m and - for even m.
    pub fn parity_rows(
        &self,
        u_range: std::ops::RangeInclusive<i64>,
    ) -> Vec<(i64, BigRational, BigRational, bool)> {
        let positive = self.m % 2 == 1;
        u_range
            .map(|u| {
                let lhs = self.total(u);
                let mut rhs = self.total(-self.sigma1 - u);
                if !positive {
                    rhs = -rhs;
                }
                let ok = lhs == rhs;
                (u, lhs, rhs, ok)
            })
            .collect()
    }

    /// W_q(s) = W_q(s mod q) over `periods` periods; only degree-0 waves
    /// (ω_q = 1) are purely periodic.
    pub fn wave_is_periodic(&self, q: u64, periods: u32) -> Result<bool, WaveError> {
        let qw = self
            .qwaves
            .iter()
            .find(|w| w.q == q)
            .ok_or(WaveError::ModulusDividesNothing { q })?;
        if !qw.is_constant_per_residue() {
            return Ok(false);
        }
        for s in 0..(q as i64) * periods as i64 {
            if qw.eval(s) != qw.eval(s.rem_euclid(q as i64)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Evaluates a single wave W_q(s) from scratch; batch callers should build a
/// [`WaveEngine`] once instead.
pub fn wave_eval(tuple: &GeneratorTuple, q: u64, s: i64) -> Result<BigRational, WaveError> {
    if q == 1 {
        let wave1 = wave1_polynomial(tuple);
        let sr = BigRational::from(BigInt::from(s));
        let mut acc = BigRational::zero();
        for c in &wave1 {
            acc = acc * &sr + c;
        }
        return Ok(acc);
    }
    Ok(QWave::build(tuple, q)?.eval(s))
}

/// One row of the wave-sum comparison.
#[derive(Debug, Clone)]
pub struct WaveSumRow {
    pub s: i64,
    pub per_wave: Vec<(u64, BigRational)>,
    pub total: BigRational,
    /// Dynamic-programming count; absent for negative s, where the DP is
    /// undefined and the waves provide the continuation.
    pub dp: Option<BigInt>,
    pub matches: bool,
}

/// Evaluates Σ_q W_q(s) over the range and compares it with the DP count
/// wherever s >= 0. Failures are rows with `matches == false`, not errors.
pub fn wave_sum_verify(
    tuple: &GeneratorTuple,
    range: std::ops::RangeInclusive<i64>,
) -> Result<Vec<WaveSumRow>, WaveError> {
    let engine = WaveEngine::new(tuple)?;
    let mut rows = Vec::new();
    for s in range {
        let per_wave = engine.per_wave(s);
        let total: BigRational = per_wave.iter().map(|(_, v)| v.clone()).sum();
        let dp = if s >= 0 { Some(denumerant_dp(tuple, s as u64)) } else { None };
        let matches = match &dp {
            Some(count) => total == BigRational::from(count.clone()),
            None => true,
        };
        rows.push(WaveSumRow { s, per_wave, total, dp, matches });
    }
    Ok(rows)
}

/// The zero sequence of the wave continuation for pairwise-coprime tuples;
/// `None` when the tuple is not pairwise coprime (the sequence is not
/// guaranteed there). See [`WaveEngine::zero_rows`].
pub fn zero_sequence(tuple: &GeneratorTuple) -> Result<Option<Vec<(i64, BigRational)>>, WaveError> {
    if !tuple.pairwise_coprime() {
        return Ok(None);
    }
    Ok(WaveEngine::new(tuple)?.zero_rows())
}

/// Reflection law of the continuation; see [`WaveEngine::parity_rows`].
pub fn parity_check(
    tuple: &GeneratorTuple,
    u_range: std::ops::RangeInclusive<i64>,
) -> Result<Vec<(i64, BigRational, BigRational, bool)>, WaveError> {
    Ok(WaveEngine::new(tuple)?.parity_rows(u_range))
}

/// Pure periodicity of one wave; see [`WaveEngine::wave_is_periodic`].
pub fn periodicity_check(tuple: &GeneratorTuple, q: u64, periods: u32) -> Result<bool, WaveError> {
    WaveEngine::new(tuple)?.wave_is_periodic(q, periods)
}

/// Which of the leading coefficients L_1, M_1 the selection rules force to
/// vanish, as a function of σ_1 n / q and the parities of m and ω_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioClass {
    Integer,
    HalfInteger,
    Neither,
}

#[derive(Debug, Clone)]
pub struct Lemma1Outcome {
    pub q: u64,
    pub n: u64,
    pub ratio_class: RatioClass,
    pub l1_forced_zero: bool,
    pub m1_forced_zero: bool,
    pub l1_is_zero: bool,
    pub m1_is_zero: bool,
    /// Exact agreement: forced coefficients vanish and unforced ones do not.
    pub consistent: bool,
}

/// Evaluates the closed-form leading pair and classifies σ_1 n / q.
pub fn lemma1_check(tuple: &GeneratorTuple, q: u64, n: u64) -> Result<Lemma1Outcome, WaveError> {
    if q < 2 || !residue_is_admissible(q, n) {
        return Err(WaveError::BadResidue { q, n });
    }
    let spec = wave_spec(tuple, q)?;
    let m = tuple.embedding_dimension();

    // The closed form divides 1 ± (-1)^{m-ω} ξ^{σ_1 n} by a product of
    // nonzero units, so vanishing is decided by the numerators alone.
    let parity_sign =
        if (m - spec.omega) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let xi_sigma = root_power(q, tuple.sigma1_u64() as i64, n).scalar_mul(&parity_sign);
    let one = CyclotomicNumber::one(q);
    let l1 = &one + &xi_sigma;
    let im1 = &one - &xi_sigma;

    let prod = tuple.sigma1_u64() as u128 * n as u128;
    let ratio_class = if prod % q as u128 == 0 {
        RatioClass::Integer
    } else if (2 * prod) % q as u128 == 0 && ((2 * prod) / q as u128) % 2 == 1 {
        RatioClass::HalfInteger
    } else {
        RatioClass::Neither
    };

    let m_omega_odd = (m - spec.omega) % 2 == 1;
    let (l1_forced_zero, m1_forced_zero) = match ratio_class {
        RatioClass::Integer => (m_omega_odd, !m_omega_odd),
        RatioClass::HalfInteger => (!m_omega_odd, m_omega_odd),
        RatioClass::Neither => (false, false),
    };

    let l1_is_zero = l1.is_zero();
    let m1_is_zero = im1.is_zero();
    let consistent = l1_is_zero == l1_forced_zero && m1_is_zero == m1_forced_zero;
    Ok(Lemma1Outcome {
        q,
        n,
        ratio_class,
        l1_forced_zero,
        m1_forced_zero,
        l1_is_zero,
        m1_is_zero,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::validate_generators;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn tuple(gens: &[u64]) -> GeneratorTuple {
        validate_generators(gens).unwrap()
    }

    #[test]
    fn wave1_for_357() {
        // s^2/210 + s/14 + 74/315.
        let c = wave1_polynomial(&tuple(&[3, 5, 7]));
        assert_eq!(c, vec![rat(1, 210), rat(1, 14), rat(74, 315)]);
    }

    #[test]
    fn wave1_leading_coefficient_is_schur_constant() {
        for gens in [vec![3u64, 5, 7], vec![2, 3], vec![8, 9, 10, 12], vec![5, 6, 7, 8]] {
            let t = tuple(&gens);
            let c = wave1_polynomial(&t);
            let m = t.embedding_dimension() as u64;
            let expected = BigRational::new(BigInt::one(), factorial(m - 1) * t.product());
            assert_eq!(c[0], expected, "leading coefficient for {gens:?}");
        }
    }

    #[test]
    fn wave2_examples() {
        assert!(matches!(wave2_polynomial(&tuple(&[3, 5, 7])), Err(WaveError::NoEvenGenerator)));

        let t = tuple(&[8, 9, 10, 12]);
        let wp = wave2_polynomial(&t).unwrap();
        assert_eq!(wp.omega, 3);
        assert_eq!(wp.l_coeffs().len(), 3);
        assert!(wp.l1().is_one());
        // L_2 = (ω_2 - 1) σ_1 / 2 = 2 · 39 / 2 = 39.
        assert_eq!(wp.l_coeffs()[1].is_rational(), Some(rat(39, 1)));
    }

    #[test]
    fn derived_components_match_their_closed_forms() {
        // Components for n > 1 come from the Galois map; their leading pair
        // must still satisfy the closed form stated for that n.
        for (gens, q) in [(vec![3u64, 5, 7], 7u64), (vec![3, 5, 7], 5), (vec![8, 9, 10, 12], 12)] {
            let t = tuple(&gens);
            let spec = wave_spec(&t, q).unwrap();
            let m = t.embedding_dimension();
            for n in admissible_residues(q) {
                let wp = waveq_partial(&t, q, n).unwrap();
                let denom_inv = product_denominator_inverse(q, &spec.complement, 1, n).unwrap();
                let sign = if (m - spec.omega) % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
                let xi_sigma = root_power(q, t.sigma1_u64() as i64, n).scalar_mul(&sign);
                let one = CyclotomicNumber::one(q);
                assert_eq!(*wp.l1(), &(&one + &xi_sigma) * &denom_inv, "L1 for q={q} n={n}");
                assert_eq!(
                    *wp.im1().unwrap(),
                    &(&one - &xi_sigma) * &denom_inv,
                    "iM1 for q={q} n={n}"
                );
                assert!(wp.check_reality().is_ok());
            }
        }
    }

    #[test]
    fn waveq_rejects_bad_residues() {
        let t = tuple(&[3, 5, 7]);
        assert!(matches!(waveq_partial(&t, 5, 5), Err(WaveError::BadResidue { .. })));
        assert!(matches!(waveq_partial(&t, 5, 3), Err(WaveError::BadResidue { .. })));
        assert!(matches!(waveq_partial(&t, 4, 1), Err(WaveError::ModulusDividesNothing { q: 4 })));
    }

    #[test]
    fn wave_sum_matches_dp_for_357() {
        let t = tuple(&[3, 5, 7]);
        let rows = wave_sum_verify(&t, 0..=60).unwrap();
        for row in &rows {
            assert!(row.matches, "wave sum vs DP at s = {}: {} vs {:?}", row.s, row.total, row.dp);
        }
    }

    #[test]
    fn wave_sum_matches_dp_with_composite_generators() {
        for gens in [vec![2u64, 3], vec![8, 9, 10, 12], vec![4, 10, 19, 25]] {
            let t = tuple(&gens);
            let rows = wave_sum_verify(&t, 0..=40).unwrap();
            for row in &rows {
                assert!(row.matches, "{gens:?} at s = {}", row.s);
            }
        }
    }

    #[test]
    fn wave_values_for_357_match_trig_form() {
        // W_1(0) = 74/315 and W_3(s) = (2/9) cos(2πs/3).
        let t = tuple(&[3, 5, 7]);
        let engine = WaveEngine::new(&t).unwrap();
        assert_eq!(engine.eval_wave(1, 0).unwrap(), rat(74, 315));
        assert_eq!(engine.eval_wave(3, 0).unwrap(), rat(2, 9));
        assert_eq!(engine.eval_wave(3, 1).unwrap(), rat(-1, 9));
        assert_eq!(engine.eval_wave(3, 2).unwrap(), rat(-1, 9));

        // The one-shot evaluation path agrees with the engine.
        assert_eq!(wave_eval(&t, 3, 0).unwrap(), rat(2, 9));
        assert_eq!(wave_eval(&t, 1, 0).unwrap(), rat(74, 315));
        assert!(matches!(wave_eval(&t, 4, 0), Err(WaveError::ModulusDividesNothing { q: 4 })));
    }

    #[test]
    fn higher_waves_purely_periodic_for_prime_tuple() {
        let t = tuple(&[3, 5, 7]);
        for q in [3, 5, 7] {
            assert!(periodicity_check(&t, q, 5).unwrap(), "W_{q} periodic");
        }
    }

    #[test]
    fn zero_sequence_for_357() {
        let t = tuple(&[3, 5, 7]);
        let rows = zero_sequence(&t).unwrap().expect("pairwise coprime");
        assert_eq!(rows.len(), 14);
        for (s, v) in rows {
            assert!(v.is_zero(), "W({s}) = {v} should vanish");
        }

        let not_coprime = tuple(&[8, 9, 10, 12]);
        assert_eq!(zero_sequence(&not_coprime).unwrap(), None);
    }

    #[test]
    fn parity_of_continuation() {
        // Odd m: symmetric about -σ_1/2; even m: antisymmetric.
        let t = tuple(&[3, 5, 7]);
        for (u, lhs, rhs, ok) in parity_check(&t, 0..=20).unwrap() {
            assert!(ok, "W({u}) = {lhs} vs W({}) = {rhs}", -15 - u);
        }
        let t2 = tuple(&[2, 3]);
        for (u, lhs, rhs, ok) in parity_check(&t2, 0..=20).unwrap() {
            assert!(ok, "W({u}) = {lhs} vs -W({}) = {rhs}", -5 - u);
        }
        let t4 = tuple(&[8, 9, 10, 12]);
        for (u, lhs, rhs, ok) in parity_check(&t4, 0..=15).unwrap() {
            assert!(ok, "even-m antisymmetry at u = {u}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn lemma1_selection_rules_for_357() {
        let t = tuple(&[3, 5, 7]);
        // q = 3, n = 1: σ_1 n / q = 5, integer; m and ω both odd: M_1 = 0.
        let out = lemma1_check(&t, 3, 1).unwrap();
        assert_eq!(out.ratio_class, RatioClass::Integer);
        assert!(out.m1_forced_zero && out.m1_is_zero);
        assert!(!out.l1_forced_zero && !out.l1_is_zero);
        assert!(out.consistent);

        // q = 5: both residues give integers (15n/5 = 3n): cosine only.
        for n in [1, 2] {
            let out = lemma1_check(&t, 5, n).unwrap();
            assert_eq!(out.ratio_class, RatioClass::Integer);
            assert!(out.m1_is_zero && out.consistent);
        }

        // q = 7: 15n/7 is neither, both coefficients survive.
        for n in [1, 2, 3] {
            let out = lemma1_check(&t, 7, n).unwrap();
            assert_eq!(out.ratio_class, RatioClass::Neither);
            assert!(!out.l1_is_zero && !out.m1_is_zero && out.consistent);
        }
    }

    #[test]
    fn lemma1_half_integer_case() {
        // {8,9,10,12}, q = 2: σ_1 = 39, 39/2 half-integer, m even, ω odd.
        let t = tuple(&[8, 9, 10, 12]);
        let out = lemma1_check(&t, 2, 1).unwrap();
        assert_eq!(out.ratio_class, RatioClass::HalfInteger);
        assert!(out.m1_forced_zero && out.m1_is_zero);
        assert!(!out.l1_is_zero);
        assert!(out.consistent);
    }

    #[test]
    fn leading_pair_never_both_vanish() {
        for gens in [vec![3u64, 5, 7], vec![8, 9, 10, 12], vec![10, 14, 15, 21]] {
            let t = tuple(&gens);
            for q in admissible_moduli(&t) {
                for n in admissible_residues(q) {
                    let out = lemma1_check(&t, q, n).unwrap();
                    assert!(
                        !(out.l1_is_zero && out.m1_is_zero),
                        "L_1 and M_1 both vanish for {gens:?}, (q, n) = ({q}, {n})"
                    );
                }
            }
        }
    }

    #[test]
    fn negative_continuation_uses_waves_not_dp() {
        let t = tuple(&[2, 3]);
        let rows = wave_sum_verify(&t, -4..=-1).unwrap();
        for row in &rows {
            assert!(row.dp.is_none());
            assert!(row.total.is_zero(), "zero at s = {}", row.s);
        }
    }
}
