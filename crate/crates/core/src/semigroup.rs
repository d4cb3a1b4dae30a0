//! Numerical semigroups: validated generating sets, membership, gaps,
//! Frobenius number, Apéry sets, and the classification flags (symmetric,
//! pseudosymmetric, telescopic, maximal embedding dimension, …) the rest of
//! the crate dispatches on.

use num_bigint::BigInt;
use num_integer::gcd;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("generator list is empty")]
    Empty,
    #[error("generators must be positive")]
    NonPositive,
    #[error("generators have common divisor {gcd} > 1; the complement is infinite")]
    NonCoprime { gcd: u64 },
    #[error("generating set is not minimal: {witness} is a combination of the other generators")]
    NonMinimal { witness: u64 },
    #[error("{value} is not a generator of this semigroup")]
    NotAGenerator { value: u64 },
    #[error("telescopic search over {m}! orderings refused (supported for at most 8 generators)")]
    TelescopicSearchTooLarge { m: usize },
    #[error("membership sieve bound {bound} exceeds the supported limit")]
    SieveTooLarge { bound: u128 },
}

/// Hard cap on sieve sizes; everything in this crate is desk scale.
const SIEVE_LIMIT: u128 = 200_000_000;

/// A validated minimal generating set d_1 < … < d_m with gcd 1, together
/// with the cached power sums σ_1..σ_6 and the product π_m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTuple {
    generators: Vec<u64>,
    sigma_cache: Vec<BigInt>,
    pi: BigInt,
}

impl GeneratorTuple {
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Embedding dimension m.
    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    /// σ_k = Σ d_i^k. The first six values are cached at construction;
    /// higher powers are computed on demand.
    pub fn sigma(&self, k: u64) -> BigInt {
        if k >= 1 && (k as usize) <= self.sigma_cache.len() {
            return self.sigma_cache[k as usize - 1].clone();
        }
        power_sum(&self.generators, k)
    }

    /// σ_1 as a machine integer (sums of u64 generators stay well in range).
    pub fn sigma1_u64(&self) -> u64 {
        self.generators.iter().sum()
    }

    /// π_m = Π d_i.
    pub fn product(&self) -> &BigInt {
        &self.pi
    }

    pub fn min_generator(&self) -> u64 {
        self.generators[0]
    }

    pub fn max_generator(&self) -> u64 {
        *self.generators.last().expect("tuple is nonempty")
    }

    /// True when every pair of distinct generators is coprime.
    pub fn pairwise_coprime(&self) -> bool {
        let g = &self.generators;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if gcd(g[i], g[j]) != 1 {
                    return false;
                }
            }
        }
        true
    }
}

fn power_sum(gens: &[u64], k: u64) -> BigInt {
    gens.iter().map(|d| BigInt::from(*d).pow(k as u32)).sum()
}

/// Validates a raw generator list: sorts, deduplicates, and checks the gcd
/// and minimality invariants. Returns the tuple with σ_k and π_m populated.
pub fn validate_generators(raw: &[u64]) -> Result<GeneratorTuple, SemigroupError> {
    if raw.is_empty() {
        return Err(SemigroupError::Empty);
    }
    if raw.iter().any(|&d| d == 0) {
        return Err(SemigroupError::NonPositive);
    }
    let mut gens = raw.to_vec();
    gens.sort_unstable();
    gens.dedup();

    let g = gens.iter().copied().fold(0u64, gcd);
    if g != 1 {
        return Err(SemigroupError::NonCoprime { gcd: g });
    }

    // Minimality: no generator may be a nonnegative combination of the rest.
    for (i, &d) in gens.iter().enumerate() {
        let others: Vec<u64> = gens
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, &x)| x)
            .collect();
        if representable(d, &others)? {
            return Err(SemigroupError::NonMinimal { witness: d });
        }
    }

    debug_assert!(gens[0] as usize >= gens.len(), "minimal sets satisfy d_1 >= m");

    let sigma_cache = (1..=6).map(|k| power_sum(&gens, k)).collect();
    let pi = gens.iter().fold(BigInt::one(), |acc, &d| acc * BigInt::from(d));
    Ok(GeneratorTuple { generators: gens, sigma_cache, pi })
}

/// Boolean sieve of semigroup membership for 0..=bound over an arbitrary
/// generating set (no minimality assumed).
fn member_sieve(gens: &[u64], bound: u64) -> Result<Vec<bool>, SemigroupError> {
    if bound as u128 >= SIEVE_LIMIT {
        return Err(SemigroupError::SieveTooLarge { bound: bound as u128 });
    }
    let mut sieve = vec![false; bound as usize + 1];
    sieve[0] = true;
    for &d in gens {
        let d = d as usize;
        if d > bound as usize {
            continue;
        }
        for s in d..=bound as usize {
            if sieve[s - d] {
                sieve[s] = true;
            }
        }
    }
    Ok(sieve)
}

/// Is `target` a nonnegative integer combination of `gens`? Works for any
/// set, including ones with gcd > 1 (reduces by the gcd first).
fn representable(target: u64, gens: &[u64]) -> Result<bool, SemigroupError> {
    if target == 0 {
        return Ok(true);
    }
    if gens.is_empty() {
        return Ok(false);
    }
    let g = gens.iter().copied().fold(0u64, gcd);
    if target % g != 0 {
        return Ok(false);
    }
    let reduced: Vec<u64> = gens.iter().map(|d| d / g).collect();
    let t = target / g;
    Ok(member_sieve(&reduced, t)?[t as usize])
}

/// Membership of `s` in the semigroup.
pub fn membership(tuple: &GeneratorTuple, s: u64) -> bool {
    representable(s, tuple.generators()).expect("membership sieve up to s is within limits")
}

/// Gap set, Frobenius number, genus and conductor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupProfile {
    pub gaps: Vec<u64>,
    /// Largest non-member; -1 when the semigroup is all of the naturals.
    pub frobenius: i64,
    pub genus: u64,
    pub conductor: i64,
}

/// Sieve bound that provably exceeds every Frobenius number for m >= 2.
fn frobenius_sieve_bound(tuple: &GeneratorTuple) -> Result<u64, SemigroupError> {
    let bound = tuple.min_generator() as u128 * tuple.max_generator() as u128;
    if bound >= SIEVE_LIMIT {
        return Err(SemigroupError::SieveTooLarge { bound });
    }
    Ok(bound as u64)
}

/// Computes the profile by sieving membership up to d_1·d_m, which dominates
/// the Frobenius number for every minimal set with at least two generators.
pub fn profile(tuple: &GeneratorTuple) -> Result<SemigroupProfile, SemigroupError> {
    let bound = frobenius_sieve_bound(tuple)?;
    let sieve = member_sieve(tuple.generators(), bound)?;
    let gaps: Vec<u64> = (1..=bound).filter(|&s| !sieve[s as usize]).collect();
    let frobenius = gaps.last().map_or(-1, |&g| g as i64);

    // A run of d_1 consecutive members pins the conductor, so the sieve
    // bound is certified rather than assumed.
    let run_start = (frobenius + 1) as u64;
    let d1 = tuple.min_generator();
    debug_assert!(run_start + d1 <= bound + 1, "sieve window too small");
    debug_assert!((run_start..run_start + d1.min(bound - run_start + 1)).all(|s| sieve[s as usize]));

    Ok(SemigroupProfile {
        genus: gaps.len() as u64,
        conductor: frobenius + 1,
        gaps,
        frobenius,
    })
}

/// Apéry set of the semigroup with respect to the generator `d`: for every
/// residue r mod d, entry r is the least member congruent to r.
pub fn apery_set(tuple: &GeneratorTuple, d: u64, prof: &SemigroupProfile) -> Result<Vec<u64>, SemigroupError> {
    if !tuple.generators().contains(&d) {
        return Err(SemigroupError::NotAGenerator { value: d });
    }
    let bound = (prof.frobenius.max(0) as u64) + d;
    let sieve = member_sieve(tuple.generators(), bound)?;
    let mut out = Vec::with_capacity(d as usize);
    for r in 0..d {
        let mut s = r;
        loop {
            if sieve[s as usize] {
                out.push(s);
                break;
            }
            s += d;
            debug_assert!(s <= bound, "every residue class has a member at or below F + d");
        }
    }
    Ok(out)
}

/// Outcome of the telescopic ordering search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TelescopicStatus {
    /// Telescopic; carries the witness ordering of the generators.
    Witness(Vec<u64>),
    No,
    /// Search refused: more than 8 generators.
    Refused,
}

impl TelescopicStatus {
    pub fn is_telescopic(&self) -> bool {
        matches!(self, TelescopicStatus::Witness(_))
    }

    pub fn witness(&self) -> Option<&[u64]> {
        match self {
            TelescopicStatus::Witness(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationFlags {
    pub symmetric: bool,
    pub pseudosymmetric: bool,
    /// Lower-bounded by the telescopic flag here; finalized from the
    /// numerator factorization (see the hilbert module).
    pub complete_intersection: bool,
    pub telescopic: TelescopicStatus,
    pub med: bool,
    pub almost_symmetric_med: bool,
}

/// Searches generator orderings (lexicographically, with prefix pruning) for
/// one passing the iterated-gcd membership test. Refuses beyond 8 generators,
/// where the m! search space is no longer reasonable.
pub fn telescopic_ordering(tuple: &GeneratorTuple) -> Result<TelescopicStatus, SemigroupError> {
    let m = tuple.embedding_dimension();
    if m > 8 {
        return Err(SemigroupError::TelescopicSearchTooLarge { m });
    }
    if m == 1 {
        return Ok(TelescopicStatus::Witness(tuple.generators().to_vec()));
    }

    fn extend(prefix: &mut Vec<u64>, remaining: &mut Vec<u64>, m: usize) -> Option<Vec<u64>> {
        if prefix.len() == m {
            return Some(prefix.clone());
        }
        for idx in 0..remaining.len() {
            let d = remaining[idx];
            // Step condition: d/g_k must lie in the semigroup generated by
            // the prefix scaled down by g_{k-1}.
            let ok = if prefix.is_empty() {
                true
            } else {
                let g_prev = prefix.iter().copied().fold(0u64, gcd);
                let g_k = gcd(g_prev, d);
                let scaled: Vec<u64> = prefix.iter().map(|p| p / g_prev).collect();
                representable(d / g_k, &scaled).unwrap_or(false)
            };
            if ok {
                prefix.push(d);
                remaining.remove(idx);
                if let Some(w) = extend(prefix, remaining, m) {
                    return Some(w);
                }
                let d = prefix.pop().expect("just pushed");
                remaining.insert(idx, d);
            }
        }
        None
    }

    let mut remaining = tuple.generators().to_vec();
    let mut prefix = Vec::with_capacity(m);
    match extend(&mut prefix, &mut remaining, m) {
        Some(w) => Ok(TelescopicStatus::Witness(w)),
        None => Ok(TelescopicStatus::No),
    }
}

/// Computes every classification flag decidable from the generators and the
/// profile alone. The complete-intersection flag starts as the telescopic
/// flag; the hilbert module upgrades it when the numerator factors.
pub fn classify(tuple: &GeneratorTuple, prof: &SemigroupProfile) -> ClassificationFlags {
    let m = tuple.embedding_dimension();
    let f = prof.frobenius;

    let symmetric = if f < 0 {
        true
    } else {
        let sieve = member_sieve(tuple.generators(), f as u64).expect("profile already sieved further");
        (0..=f as u64).all(|s| sieve[s as usize] != sieve[(f as u64 - s) as usize])
    };

    let pseudosymmetric = f >= 0 && f % 2 == 0 && {
        let fu = f as u64;
        let sieve = member_sieve(tuple.generators(), fu).expect("profile already sieved further");
        let special_gaps: Vec<u64> =
            (1..=fu).filter(|&h| !sieve[h as usize] && !sieve[(fu - h) as usize]).collect();
        special_gaps == [fu / 2]
    };

    // Reserved for m >= 3, where maximal embedding dimension rules out
    // symmetry; ⟨2, 2k+1⟩ has d_1 = m = 2 yet is symmetric.
    let med = m >= 3 && tuple.min_generator() as usize == m;

    let almost_symmetric_med = med && {
        let two_sigma = 2 * tuple.sigma1_u64();
        two_sigma % m as u64 == 0 && {
            let target = two_sigma / m as u64;
            let g = tuple.generators();
            (0..m).all(|j| g[j] + g[m - 1 - j] == target)
        }
    };

    let telescopic = telescopic_ordering(tuple).unwrap_or(TelescopicStatus::Refused);
    let complete_intersection = telescopic.is_telescopic();

    ClassificationFlags {
        symmetric,
        pseudosymmetric,
        complete_intersection,
        telescopic,
        med,
        almost_symmetric_med,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(gens: &[u64]) -> GeneratorTuple {
        validate_generators(gens).expect("valid tuple")
    }

    #[test]
    fn validate_examples() {
        let t = tuple(&[3, 5, 7]);
        assert_eq!(t.embedding_dimension(), 3);
        assert_eq!(t.sigma(1), BigInt::from(15));
        assert_eq!(*t.product(), BigInt::from(105));

        assert_eq!(validate_generators(&[2, 4]), Err(SemigroupError::NonCoprime { gcd: 2 }));
        assert_eq!(validate_generators(&[3, 5, 8]), Err(SemigroupError::NonMinimal { witness: 8 }));
        assert_eq!(validate_generators(&[]), Err(SemigroupError::Empty));
        assert_eq!(validate_generators(&[0, 3]), Err(SemigroupError::NonPositive));
        // Duplicates collapse rather than erroring.
        assert_eq!(tuple(&[5, 3, 3, 7]).generators(), &[3, 5, 7]);
    }

    #[test]
    fn membership_examples() {
        let t = tuple(&[3, 5, 7]);
        assert!(membership(&t, 0));
        assert!(!membership(&t, 4));
        assert!(membership(&t, 10));

        // Exhaustive combination-search oracle over the same range.
        for s in 0..=40u64 {
            let mut found = false;
            for a in 0..=s / 3 {
                for b in 0..=(s - 3 * a) / 5 {
                    if (s - 3 * a - 5 * b) % 7 == 0 {
                        found = true;
                    }
                }
            }
            assert_eq!(membership(&t, s), found, "membership({s})");
        }
    }

    #[test]
    fn profile_examples() {
        let p = profile(&tuple(&[3, 5, 7])).unwrap();
        assert_eq!(p.gaps, vec![1, 2, 4]);
        assert_eq!(p.frobenius, 4);
        assert_eq!(p.genus, 3);
        assert_eq!(p.conductor, 5);

        let p = profile(&tuple(&[2, 3])).unwrap();
        assert_eq!(p.gaps, vec![1]);
        assert_eq!(p.frobenius, 1);

        let p = profile(&tuple(&[5, 6, 7, 8])).unwrap();
        assert_eq!(p.frobenius, 9);

        let p = profile(&tuple(&[1])).unwrap();
        assert_eq!(p.frobenius, -1);
        assert_eq!(p.genus, 0);
    }

    #[test]
    fn genus_member_count_balance() {
        for gens in [vec![3u64, 5, 7], vec![2, 3], vec![5, 6, 7, 8], vec![4, 10, 19, 25]] {
            let t = tuple(&gens);
            let p = profile(&t).unwrap();
            let f = p.frobenius;
            let members_below = (0..=f.max(0) as u64).filter(|&s| membership(&t, s)).count() as i64;
            assert_eq!(p.genus as i64 + members_below, f + 1, "gaps plus members fill 0..=F for {gens:?}");
        }
    }

    #[test]
    fn apery_examples() {
        let t = tuple(&[3, 5, 7]);
        let p = profile(&t).unwrap();
        let ap = apery_set(&t, 3, &p).unwrap();
        assert_eq!(ap, vec![0, 7, 5]);
        assert_eq!(*ap.iter().max().unwrap() as i64, p.frobenius + 3);

        let t2 = tuple(&[2, 3]);
        let p2 = profile(&t2).unwrap();
        assert_eq!(apery_set(&t2, 2, &p2).unwrap(), vec![0, 3]);
        assert!(matches!(apery_set(&t2, 5, &p2), Err(SemigroupError::NotAGenerator { value: 5 })));

        // One element per residue class, all members.
        for (r, &a) in ap.iter().enumerate() {
            assert_eq!(a % 3, r as u64);
            assert!(membership(&t, a));
        }
    }

    #[test]
    fn classify_examples() {
        let t = tuple(&[3, 5, 7]);
        let p = profile(&t).unwrap();
        let flags = classify(&t, &p);
        assert!(flags.med);
        assert!(!flags.symmetric);
        // Gaps 1, 2, 4: only 2 = F/2 lacks a complement, so the triple is
        // pseudosymmetric (and, pairing 3+7 = 5+5 = 2σ_1/3, almost
        // symmetric of maximal embedding dimension).
        assert!(flags.pseudosymmetric);
        assert!(flags.almost_symmetric_med);
        assert!(!flags.telescopic.is_telescopic());

        let t = tuple(&[8, 9, 10, 12]);
        let p = profile(&t).unwrap();
        let flags = classify(&t, &p);
        assert_eq!(flags.telescopic.witness(), Some(&[8, 12, 10, 9][..]));
        assert!(flags.complete_intersection);
        assert!(flags.symmetric);

        let t = tuple(&[3, 4, 5]);
        let p = profile(&t).unwrap();
        let flags = classify(&t, &p);
        assert!(flags.pseudosymmetric);
        assert_eq!(p.frobenius, 2);
        assert_eq!(p.gaps, vec![1, 2]);

        let t = tuple(&[4, 10, 19, 25]);
        let p = profile(&t).unwrap();
        let flags = classify(&t, &p);
        assert!(flags.med);
        assert!(flags.almost_symmetric_med);
        assert!(!flags.symmetric);

        // ⟨2,3⟩ is symmetric and must not be flagged MED.
        let t = tuple(&[2, 3]);
        let p = profile(&t).unwrap();
        let flags = classify(&t, &p);
        assert!(flags.symmetric);
        assert!(!flags.med);
        assert!(flags.telescopic.is_telescopic());
    }

    #[test]
    fn symmetric_iff_double_genus() {
        for gens in [vec![2u64, 3], vec![5, 6, 7, 8], vec![8, 13, 15, 17], vec![8, 9, 10, 12], vec![10, 14, 15, 21]] {
            let t = tuple(&gens);
            let p = profile(&t).unwrap();
            let flags = classify(&t, &p);
            assert!(flags.symmetric, "{gens:?} should be symmetric");
            assert_eq!(2 * p.genus as i64, p.frobenius + 1, "2G = F + 1 for symmetric {gens:?}");
        }
    }

    #[test]
    fn classify_is_order_invariant() {
        let a = validate_generators(&[12, 8, 9, 10]).unwrap();
        let b = validate_generators(&[8, 9, 10, 12]).unwrap();
        assert_eq!(a, b);
        let (pa, pb) = (profile(&a).unwrap(), profile(&b).unwrap());
        assert_eq!(classify(&a, &pa), classify(&b, &pb));
    }

    #[test]
    fn telescopic_degrees_gcd_chain() {
        // Witness ordering (8,12,10,9) produces the gcd chain 8,4,2,1.
        let t = tuple(&[8, 9, 10, 12]);
        let w = match telescopic_ordering(&t).unwrap() {
            TelescopicStatus::Witness(w) => w,
            other => panic!("expected witness, got {other:?}"),
        };
        let mut g = Vec::new();
        let mut acc = 0;
        for &d in &w {
            acc = gcd(acc, d);
            g.push(acc);
        }
        assert_eq!(g, vec![8, 4, 2, 1]);

        // Complete intersection that is not telescopic.
        let t = tuple(&[10, 14, 15, 21]);
        assert_eq!(telescopic_ordering(&t).unwrap(), TelescopicStatus::No);
    }
}
