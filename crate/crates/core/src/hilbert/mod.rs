//! Hilbert-series numerators.
//!
//! `Q(z)` is computed exactly from the membership indicator series, checked
//! against the structural laws (degree, duality, complete-intersection
//! factorization), and rebuilt from closed forms for the special families:
//! complete intersections, telescopic orderings, pseudosymmetric triples and
//! maximal-embedding-dimension semigroups.

mod syzygy;

pub use syzygy::{
    extract_syzygy_table, med_syzygy_table, Extraction, SyzygyProvenance, SyzygyTable,
    SyzygyTableFile,
};

use num_bigint::BigInt;
use num_integer::gcd;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::SparseIntPolynomial;
use crate::semigroup::{self, GeneratorTuple, SemigroupError, SemigroupProfile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("ordering does not pass the telescopic test")]
    NotTelescopic,
    #[error("semigroup is not pseudosymmetric with three generators")]
    NotPseudosymmetric,
    #[error("semigroup does not have maximal embedding dimension")]
    NotMED,
    #[error("syzygy table violates the alternating Betti sum")]
    InconsistentBetti,
    #[error("syzygy table does not reassemble the numerator: {0}")]
    TableMismatch(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// The numerator `Q(z)` of the Hilbert series, computed as the truncated
/// membership series multiplied by `Π (1 - z^{d_i})`.
///
/// Asserts `deg Q = F + σ_1`, constant term 1, `Q(1) = 0` (for m >= 2), and
/// that every coefficient in a guard window of width `max d_i` above the
/// expected degree vanishes.
pub fn hilbert_numerator(
    tuple: &GeneratorTuple,
    prof: &SemigroupProfile,
) -> Result<SparseIntPolynomial, HilbertError> {
    let sigma1 = tuple.sigma1_u64() as i64;
    let deg_q = (prof.frobenius + sigma1) as u64;
    let guard = tuple.max_generator();
    let window = deg_q + guard;

    let mut series = SparseIntPolynomial::zero();
    for s in 0..=window {
        if semigroup::membership(tuple, s) {
            series.add_term(s, BigInt::one());
        }
    }

    let mut denom = SparseIntPolynomial::one();
    for &d in tuple.generators() {
        denom = denom.mul(&SparseIntPolynomial::one_minus_power(d));
    }

    let mut q = series.mul_truncated(&denom, window);

    for (d, c) in q.iter_terms() {
        if d > deg_q && !c.is_zero() {
            return Err(HilbertError::InternalInconsistency(format!(
                "nonzero coefficient {c} at degree {d} above deg Q = {deg_q}"
            )));
        }
    }
    q.truncate(deg_q);

    if !q.coeff(0).is_one() {
        return Err(HilbertError::InternalInconsistency("constant term of Q is not 1".into()));
    }
    if q.degree() != Some(deg_q) {
        return Err(HilbertError::InternalInconsistency(format!(
            "deg Q = {:?}, expected F + sigma_1 = {deg_q}",
            q.degree()
        )));
    }
    if tuple.embedding_dimension() >= 2 && !q.eval_at_one().is_zero() {
        return Err(HilbertError::InternalInconsistency("Q(1) != 0".into()));
    }
    Ok(q)
}

/// Duality test: `z^{deg Q} Q(1/z) == (-1)^{m-1} Q(z)` exactly.
pub fn duality_check(q: &SparseIntPolynomial, m: usize) -> bool {
    let reversed = q.reversed();
    if (m - 1) % 2 == 0 {
        reversed == *q
    } else {
        reversed == q.neg()
    }
}

/// `Π (1 - z^{e_j})` expanded exactly.
pub fn ci_numerator(degrees: &[u64]) -> SparseIntPolynomial {
    let mut acc = SparseIntPolynomial::one();
    for &e in degrees {
        acc = acc.mul(&SparseIntPolynomial::one_minus_power(e));
    }
    acc
}

/// Attempts to factor `q` as a product of exactly `m - 1` binomials
/// `(1 - z^e)`, peeling the smallest positive root order first. Returns the
/// sorted factor degrees on success.
pub fn detect_ci(q: &SparseIntPolynomial, m: usize) -> Option<Vec<u64>> {
    let mut current = q.clone();
    let mut degrees = Vec::new();
    while !current.is_one() {
        if degrees.len() == m - 1 {
            return None;
        }
        let (d, c) = current.iter_terms().find(|(d, _)| *d > 0)?;
        if !c.is_negative() {
            return None;
        }
        let factor = SparseIntPolynomial::one_minus_power(d);
        let (quot, rem) = current.div_rem(&factor).ok()?;
        if !rem.is_zero() {
            return None;
        }
        degrees.push(d);
        current = quot;
    }
    if degrees.len() == m - 1 {
        degrees.sort_unstable();
        Some(degrees)
    } else {
        None
    }
}

/// Upgrades the complete-intersection flag from the numerator factorization.
/// The telescopic flag already implies it; this catches complete
/// intersections with no telescopic ordering.
pub fn finalize_complete_intersection(
    flags: &mut crate::semigroup::ClassificationFlags,
    q: &SparseIntPolynomial,
    m: usize,
) {
    if !flags.complete_intersection {
        flags.complete_intersection = detect_ci(q, m).is_some();
    }
}

/// Syzygy degrees of a telescopic ordering: with prefix gcds
/// g_1 = d_1, g_k = gcd(g_{k-1}, d_k), the degrees are
/// e_j = d_{j+1} g_j / g_{j+1} (so e_1 = lcm(d_1, d_2) and
/// e_{m-1} = d_m g_{m-1}). Asserts `Π e_j = π_m`.
pub fn telescopic_degrees(tuple: &GeneratorTuple, ordering: &[u64]) -> Result<Vec<u64>, HilbertError> {
    let m = tuple.embedding_dimension();
    let mut sorted = ordering.to_vec();
    sorted.sort_unstable();
    if sorted != tuple.generators() {
        return Err(HilbertError::NotTelescopic);
    }
    if !ordering_is_telescopic(ordering) {
        return Err(HilbertError::NotTelescopic);
    }

    let mut gcds = Vec::with_capacity(m);
    let mut acc = 0u64;
    for &d in ordering {
        acc = gcd(acc, d);
        gcds.push(acc);
    }

    let mut degrees = Vec::with_capacity(m - 1);
    for j in 1..m {
        let e = ordering[j] as u128 * gcds[j - 1] as u128 / gcds[j] as u128;
        degrees.push(e as u64);
    }

    let prod = degrees.iter().fold(BigInt::one(), |p, &e| p * BigInt::from(e));
    if prod != *tuple.product() {
        return Err(HilbertError::InternalInconsistency(format!(
            "telescopic degree product {prod} differs from generator product {}",
            tuple.product()
        )));
    }
    Ok(degrees)
}

fn ordering_is_telescopic(ordering: &[u64]) -> bool {
    let mut g_prev = ordering[0];
    for k in 1..ordering.len() {
        let d = ordering[k];
        let g_k = gcd(g_prev, d);
        let scaled: Vec<u64> = ordering[..k].iter().map(|p| p / g_prev).collect();
        if !raw_representable(d / g_k, &scaled) {
            return false;
        }
        g_prev = g_k;
    }
    g_prev == 1
}

fn raw_representable(target: u64, gens: &[u64]) -> bool {
    if target == 0 {
        return true;
    }
    let mut sieve = vec![false; target as usize + 1];
    sieve[0] = true;
    for &d in gens {
        if d == 0 || d as usize > target as usize {
            continue;
        }
        for s in d as usize..=target as usize {
            if sieve[s - d as usize] {
                sieve[s] = true;
            }
        }
    }
    sieve[target as usize]
}

/// Isqrt of a nonnegative BigInt if it is a perfect square.
pub(crate) fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let root = n.sqrt();
    if &root * &root == *n {
        Some(root)
    } else {
        None
    }
}

/// Closed-form numerator of a pseudosymmetric triple: six terms with
/// exponents d_i + d_j + F/2, F/2 + σ_1 and F + σ_1, with the Frobenius
/// number recovered from the quadratic closed form. Asserts equality with
/// the sieved numerator.
pub fn pseudosymmetric_numerator(
    tuple: &GeneratorTuple,
    prof: &SemigroupProfile,
) -> Result<SparseIntPolynomial, HilbertError> {
    if tuple.embedding_dimension() != 3 {
        return Err(HilbertError::NotPseudosymmetric);
    }
    let flags = crate::semigroup::classify(tuple, prof);
    if !flags.pseudosymmetric {
        return Err(HilbertError::NotPseudosymmetric);
    }
    let g = tuple.generators();
    let (d1, d2, d3) = (g[0], g[1], g[2]);
    let sigma1 = BigInt::from(tuple.sigma1_u64());
    let pairwise = BigInt::from(d1) * d2 + BigInt::from(d2) * d3 + BigInt::from(d3) * d1;
    let disc = &sigma1 * &sigma1 - BigInt::from(4) * pairwise + BigInt::from(4) * tuple.product();
    let root = perfect_sqrt(&disc).ok_or_else(|| {
        HilbertError::InternalInconsistency(format!("discriminant {disc} is not a perfect square"))
    })?;
    let f = root - &sigma1;
    if f.is_negative() || (&f % BigInt::from(2)) != BigInt::zero() {
        return Err(HilbertError::InternalInconsistency(format!(
            "closed-form Frobenius number {f} is not a nonnegative even integer"
        )));
    }
    let f: u64 = f.try_into().expect("desk-scale Frobenius number");
    if f as i64 != prof.frobenius {
        return Err(HilbertError::InternalInconsistency(format!(
            "closed-form Frobenius number {f} differs from sieved value {}",
            prof.frobenius
        )));
    }

    let half = f / 2;
    let sigma1 = tuple.sigma1_u64();
    let mut q = SparseIntPolynomial::one();
    for (a, b) in [(d1, d2), (d2, d3), (d3, d1)] {
        q.add_term(a + b + half, -BigInt::one());
    }
    q.add_term(half + sigma1, BigInt::one());
    q.add_term(f + sigma1, BigInt::one());

    let direct = hilbert_numerator(tuple, prof)?;
    if q != direct {
        return Err(HilbertError::InternalInconsistency(
            "pseudosymmetric closed form disagrees with the sieved numerator".into(),
        ));
    }
    Ok(q)
}

/// Per-kind syzygy degrees of a maximal-embedding-dimension semigroup,
/// assembled from the two monomial families over the tail generators
/// d_2, …, d_m: kind k collects the degrees 2 d_{j_1} + (k-1 further tail
/// generators) once each, and the sums of k+1 distinct tail generators with
/// multiplicity k.
pub fn med_kind_degrees(tuple: &GeneratorTuple) -> Result<Vec<Vec<u64>>, HilbertError> {
    let m = tuple.embedding_dimension();
    if m < 3 || tuple.min_generator() as usize != m {
        return Err(HilbertError::NotMED);
    }
    let tail: Vec<u64> = tuple.generators()[1..].to_vec();
    let t = tail.len(); // m - 1

    let mut kinds: Vec<Vec<u64>> = Vec::with_capacity(m - 1);
    for k in 1..m {
        let mut degrees = Vec::new();
        // First family: a doubled generator plus a (k-1)-subset of the rest.
        for j1 in 0..t {
            for subset in subsets_of_size(t, k - 1, Some(j1)) {
                let sum: u64 = 2 * tail[j1] + subset.iter().map(|&i| tail[i]).sum::<u64>();
                degrees.push(sum);
            }
        }
        // Second family: sums of k+1 distinct tail generators, k times each.
        if k + 1 <= t {
            for subset in subsets_of_size(t, k + 1, None) {
                let sum: u64 = subset.iter().map(|&i| tail[i]).sum();
                for _ in 0..k {
                    degrees.push(sum);
                }
            }
        }
        degrees.sort_unstable();
        kinds.push(degrees);
    }
    Ok(kinds)
}

/// All `size`-subsets of `0..n`, optionally excluding one index.
fn subsets_of_size(n: usize, size: usize, exclude: Option<usize>) -> Vec<Vec<usize>> {
    let pool: Vec<usize> = (0..n).filter(|i| Some(*i) != exclude).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(pool: &[usize], start: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..pool.len() {
            current.push(pool[i]);
            rec(pool, i + 1, size, current, out);
            current.pop();
        }
    }
    rec(&pool, 0, size, &mut current, &mut out);
    out
}

/// Numerator of a maximal-embedding-dimension semigroup assembled from the
/// monomial families, checked against the sieved numerator and the
/// closed-form Frobenius number `F = d_m - m`.
pub fn med_numerator(
    tuple: &GeneratorTuple,
    prof: &SemigroupProfile,
) -> Result<SparseIntPolynomial, HilbertError> {
    let kinds = med_kind_degrees(tuple)?;
    let mut q = SparseIntPolynomial::one();
    for (i, degrees) in kinds.iter().enumerate() {
        let sign = if i % 2 == 0 { -BigInt::one() } else { BigInt::one() };
        for &d in degrees {
            q.add_term(d, sign.clone());
        }
    }

    let m = tuple.embedding_dimension() as u64;
    if prof.frobenius != (tuple.max_generator() - m) as i64 {
        return Err(HilbertError::InternalInconsistency(format!(
            "MED Frobenius number {} differs from d_m - m = {}",
            prof.frobenius,
            tuple.max_generator() - m
        )));
    }
    let direct = hilbert_numerator(tuple, prof)?;
    if q != direct {
        return Err(HilbertError::InternalInconsistency(
            "MED monomial families disagree with the sieved numerator".into(),
        ));
    }
    Ok(q)
}
