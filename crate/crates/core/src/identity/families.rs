//! The specialized identity suites: complete intersections, telescopic
//! orderings, symmetric semigroups (including the quadruple and quintuple
//! forms), three-generator semigroups, pseudosymmetric triples, MED
//! semigroups, and the inclusion-exclusion oracle behind the subset-sum
//! identities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CheckParams, ExactValue, Family, IdentityCheck, IdentityError};
use crate::algebra::special::factorial;
use crate::algebra::{CyclotomicNumber, SparseIntPolynomial};
use crate::hilbert::{
    ci_numerator, med_kind_degrees, perfect_sqrt, pseudosymmetric_numerator,
    telescopic_degrees, SyzygyTable,
};
use crate::semigroup::{classify, ClassificationFlags, GeneratorTuple, SemigroupProfile};
use crate::sylvester::{admissible_moduli, admissible_residues};

/// Σ over nonempty subsets T of `values` of (-1)^{|T|+1} (Σ T)^k.
fn subset_power_sum(values: &[u64], k: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for mask in 1u64..(1 << values.len()) {
        let mut sum = 0u64;
        for (i, &v) in values.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum += v;
            }
        }
        let term = BigInt::from(sum).pow(k as u32);
        if mask.count_ones() % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Σ over nonempty subsets T of (-1)^{|T|+1} (Σ T)^r ξ_q^{n Σ T}.
fn subset_cyclotomic_sum(values: &[u64], q: u64, n: u64, r: u64) -> CyclotomicNumber {
    let mut acc = CyclotomicNumber::zero(q);
    for mask in 1u64..(1 << values.len()) {
        let mut sum = 0u64;
        for (i, &v) in values.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum += v;
            }
        }
        let mut weight = BigInt::from(sum).pow(r as u32);
        if mask.count_ones() % 2 == 0 {
            weight = -weight;
        }
        let exp = ((n as u128 * sum as u128) % q as u128) as i64;
        let term =
            CyclotomicNumber::root_of_unity(q, exp).scalar_mul(&BigRational::from(weight));
        acc = &acc + &term;
    }
    acc
}

/// Identities of a complete intersection with first-kind degrees `e`:
/// the degree product equals the generator product, the alternating
/// subset power sums collapse, and the subset-weighted root-of-unity sums
/// reproduce the theorem-level identities.
pub fn ci_identity_suite(
    e: &[u64],
    tuple: &GeneratorTuple,
    q_poly: &SparseIntPolynomial,
) -> Result<Vec<IdentityCheck>, IdentityError> {
    if ci_numerator(e) != *q_poly {
        return Err(IdentityError::NotCI);
    }
    let m = tuple.embedding_dimension() as u64;
    let mut out = Vec::new();

    let e_product = e.iter().fold(BigInt::one(), |acc, &x| acc * BigInt::from(x));
    out.push(IdentityCheck::exact(
        Family::CI,
        "degree-product",
        CheckParams::default(),
        ExactValue::Int(tuple.product().clone()),
        ExactValue::Int(e_product.clone()),
    ));

    for k in 1..=m - 1 {
        let expected = if k == m - 1 {
            let mut v = factorial(m - 1) * &e_product;
            if m % 2 == 1 {
                v = -v;
            }
            ExactValue::Int(v)
        } else {
            ExactValue::int(0)
        };
        out.push(IdentityCheck::exact(
            Family::CI,
            "subset-power-sum",
            CheckParams::k(k),
            expected,
            ExactValue::Int(subset_power_sum(e, k)),
        ));
    }

    for q in admissible_moduli(tuple) {
        let omega = tuple.generators().iter().filter(|&&d| d % q == 0).count() as u64;
        for n in admissible_residues(q) {
            for r in 0..omega {
                let expected = if r == 0 {
                    ExactValue::Cyclotomic(CyclotomicNumber::one(q))
                } else {
                    ExactValue::Cyclotomic(CyclotomicNumber::zero(q))
                };
                out.push(IdentityCheck::exact(
                    Family::CI,
                    "subset-cyclotomic-sum",
                    CheckParams::qnr(q, n, r),
                    expected,
                    ExactValue::Cyclotomic(subset_cyclotomic_sum(e, q, n, r)),
                ));
            }
        }
    }
    Ok(out)
}

/// Telescopic orderings: the iterated-gcd degrees make the degree product an
/// identity and factor the numerator.
pub fn telescopic_suite(
    tuple: &GeneratorTuple,
    flags: &ClassificationFlags,
    q_poly: &SparseIntPolynomial,
) -> Result<Vec<IdentityCheck>, IdentityError> {
    let witness = flags.telescopic.witness().ok_or(IdentityError::NotCI)?;
    let degrees = telescopic_degrees(tuple, witness)?;
    let product = degrees.iter().fold(BigInt::one(), |acc, &x| acc * BigInt::from(x));
    let mut out = vec![IdentityCheck::exact(
        Family::Telescopic,
        "degree-product",
        CheckParams::default(),
        ExactValue::Int(tuple.product().clone()),
        ExactValue::Int(product),
    )];
    out.push(IdentityCheck::exact(
        Family::Telescopic,
        "factorization",
        CheckParams::default(),
        ExactValue::text(q_poly.to_string()),
        ExactValue::text(ci_numerator(&degrees).to_string()),
    ));
    Ok(out)
}

/// The degrees of the second syzygy kind of a three-generator semigroup,
/// from the first-kind degrees and the generator product: the two roots of
/// the quadratic with sum Σe and the discriminant built from the e's.
pub fn m3_second_kind_degrees(e: &[u64], pi: &BigInt) -> Result<(BigInt, BigInt), IdentityError> {
    if e.len() != 3 {
        return Err(IdentityError::BadInstance(format!(
            "expected three first-kind degrees, got {}",
            e.len()
        )));
    }
    let (e1, e2, e3) = (BigInt::from(e[0]), BigInt::from(e[1]), BigInt::from(e[2]));
    let sum = &e1 + &e2 + &e3;
    let squares = &e1 * &e1 + &e2 * &e2 + &e3 * &e3;
    let pairs = &e1 * &e2 + &e2 * &e3 + &e3 * &e1;
    let disc = squares - BigInt::from(2) * pairs + BigInt::from(4) * pi;
    let root = perfect_sqrt(&disc).ok_or(IdentityError::PerfectSquareViolated { disc })?;
    if (&sum - &root).is_negative() || ((&sum - &root) % BigInt::from(2)) != BigInt::zero() {
        return Err(IdentityError::BadInstance(format!(
            "quadratic roots for degrees {e:?} are not nonnegative integers"
        )));
    }
    let q1 = (&sum - &root) / BigInt::from(2);
    let q2 = (&sum + &root) / BigInt::from(2);
    Ok((q1, q2))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Identities of a three-generator semigroup: the power sums of its two
/// syzygy kinds, the quadratic recovering the second kind from the first,
/// the Frobenius number, and (for prime generators) the exponential
/// relations between the kinds. Pseudosymmetric triples additionally verify
/// their closed-form Frobenius number and numerator.
pub fn m3_suite(
    tuple: &GeneratorTuple,
    prof: &SemigroupProfile,
    q_poly: &SparseIntPolynomial,
) -> Result<Vec<IdentityCheck>, IdentityError> {
    if tuple.embedding_dimension() != 3 {
        return Err(IdentityError::NotM3);
    }
    let mut e = Vec::new();
    let mut second = Vec::new();
    for (d, c) in q_poly.iter_terms() {
        if d == 0 {
            continue;
        }
        let count: u64 = c.abs().try_into().expect("desk-scale multiplicity");
        let bucket = if c.is_negative() { &mut e } else { &mut second };
        for _ in 0..count {
            bucket.push(d);
        }
    }

    let mut out = Vec::new();
    if e.len() == 2 {
        out.push(IdentityCheck::skipped(
            Family::M3,
            "suite",
            "symmetric triple is a complete intersection; covered by the ci family",
        ));
        return Ok(out);
    }
    if e.len() != 3 || second.len() != 2 {
        return Err(IdentityError::BadInstance(format!(
            "unexpected sign structure: {} negative and {} positive degrees",
            e.len(),
            second.len()
        )));
    }
    let (q1, q2) = (second[0], second[1]);

    let sum_e: u64 = e.iter().sum();
    out.push(IdentityCheck::exact(
        Family::M3,
        "degree-sum",
        CheckParams::default(),
        ExactValue::int(q1 + q2),
        ExactValue::int(sum_e),
    ));

    let squares_e: BigInt = e.iter().map(|&x| BigInt::from(x) * BigInt::from(x)).sum();
    let squares_q =
        BigInt::from(q1) * BigInt::from(q1) + BigInt::from(q2) * BigInt::from(q2);
    out.push(IdentityCheck::exact(
        Family::M3,
        "degree-squares",
        CheckParams::default(),
        ExactValue::Int(squares_q - BigInt::from(2) * tuple.product()),
        ExactValue::Int(squares_e),
    ));

    match m3_second_kind_degrees(&e, tuple.product()) {
        Ok((r1, r2)) => {
            out.push(IdentityCheck::exact(
                Family::M3,
                "second-kind-from-first",
                CheckParams::default(),
                ExactValue::text(format!("{q1}, {q2}")),
                ExactValue::text(format!("{r1}, {r2}")),
            ));
        }
        Err(IdentityError::PerfectSquareViolated { disc }) => {
            out.push(IdentityCheck::exact(
                Family::M3,
                "second-kind-from-first",
                CheckParams::default(),
                ExactValue::text("perfect-square discriminant"),
                ExactValue::text(format!("discriminant {disc} is not a perfect square")),
            ));
        }
        Err(err) => return Err(err),
    }

    out.push(IdentityCheck::exact(
        Family::M3,
        "frobenius-from-degrees",
        CheckParams::default(),
        ExactValue::int(prof.frobenius),
        ExactValue::int(q2 as i64 - tuple.sigma1_u64() as i64),
    ));

    for &d in tuple.generators() {
        if !is_prime(d) {
            continue;
        }
        for n in 1..d {
            let lhs = e.iter().fold(CyclotomicNumber::zero(d), |acc, &ei| {
                &acc + &CyclotomicNumber::root_of_unity(d, ((n as u128 * ei as u128) % d as u128) as i64)
            });
            let mut rhs = CyclotomicNumber::one(d);
            for &qi in &[q1, q2] {
                rhs = &rhs
                    + &CyclotomicNumber::root_of_unity(d, ((n as u128 * qi as u128) % d as u128) as i64);
            }
            out.push(IdentityCheck::exact(
                Family::M3,
                "prime-exponential",
                CheckParams::qn(d, n),
                ExactValue::Cyclotomic(rhs),
                ExactValue::Cyclotomic(lhs),
            ));
        }
    }

    let flags = classify(tuple, prof);
    if flags.pseudosymmetric {
        let sigma1 = BigInt::from(tuple.sigma1_u64());
        let g = tuple.generators();
        let pairs = BigInt::from(g[0]) * g[1] + BigInt::from(g[1]) * g[2] + BigInt::from(g[2]) * g[0];
        let disc = &sigma1 * &sigma1 - BigInt::from(4) * pairs + BigInt::from(4) * tuple.product();
        match perfect_sqrt(&disc) {
            Some(root) => {
                let f = root - &sigma1;
                out.push(IdentityCheck::exact(
                    Family::Pseudosymmetric,
                    "frobenius-closed-form",
                    CheckParams::default(),
                    ExactValue::int(prof.frobenius),
                    ExactValue::Int(f.clone()),
                ));
                out.push(IdentityCheck::exact(
                    Family::Pseudosymmetric,
                    "frobenius-parity",
                    CheckParams::default(),
                    ExactValue::int(0),
                    ExactValue::Int(f % BigInt::from(2)),
                ));
            }
            None => {
                out.push(IdentityCheck::exact(
                    Family::Pseudosymmetric,
                    "frobenius-closed-form",
                    CheckParams::default(),
                    ExactValue::text("perfect-square discriminant"),
                    ExactValue::text(format!("discriminant {disc} is not a perfect square")),
                ));
            }
        }
        let closed_ok = pseudosymmetric_numerator(tuple, prof).map(|q| q == *q_poly);
        out.push(IdentityCheck::exact(
            Family::Pseudosymmetric,
            "numerator-closed-form",
            CheckParams::default(),
            ExactValue::text("matches"),
            ExactValue::text(match closed_ok {
                Ok(true) => "matches".to_string(),
                Ok(false) => "differs".to_string(),
                Err(err) => err.to_string(),
            }),
        ));
    }
    Ok(out)
}

/// Symmetric-semigroup identities from a per-kind table: the duality pairing
/// of Betti numbers and degrees, the duality-folded power sums for every k,
/// and the compact quadruple/quintuple forms.
pub fn symmetric_identity_suite(
    q_poly: &SparseIntPolynomial,
    tuple: &GeneratorTuple,
    table: &SyzygyTable,
) -> Result<Vec<IdentityCheck>, IdentityError> {
    table.validate_against(q_poly).map_err(IdentityError::Hilbert)?;
    let m = tuple.embedding_dimension();
    let family = if m % 2 == 0 { Family::SymmetricEven } else { Family::SymmetricOdd };
    let deg_q = q_poly.degree().expect("numerator is nonzero");
    let kinds = table.kinds();
    let mut out = Vec::new();

    // Betti palindrome β_k = β_{m-1-k}, with β_0 = 1.
    let mut betti = vec![1u64];
    betti.extend(table.betti());
    let reversed: Vec<u64> = betti.iter().rev().copied().collect();
    out.push(IdentityCheck::exact(
        family,
        "betti-palindrome",
        CheckParams::default(),
        ExactValue::text(format!("{betti:?}")),
        ExactValue::text(format!("{reversed:?}")),
    ));

    // Degree duality: the multiset of kind m-1-k is deg Q minus kind k
    // (kind 0 being the constant term's {0}).
    let kind_degrees = |k: usize| -> Vec<u64> {
        if k == 0 {
            vec![0]
        } else {
            kinds[k - 1].clone()
        }
    };
    for k in 0..m {
        let dual = m - 1 - k;
        if dual < k {
            break;
        }
        let mut mapped: Vec<u64> = kind_degrees(k).iter().map(|&c| deg_q - c).collect();
        mapped.sort_unstable();
        mapped.reverse();
        let mut target = kind_degrees(dual);
        target.sort_unstable();
        target.reverse();
        out.push(IdentityCheck::exact(
            family,
            "degree-duality",
            CheckParams::k(k as u64),
            ExactValue::text(format!("{target:?}")),
            ExactValue::text(format!("{mapped:?}")),
        ));
    }

    // Duality-folded power sums; the right side is (m-1)! π_m exactly at
    // k = m-1 and zero below, for either parity of m.
    let mu = m / 2;
    let q_int = BigInt::from(deg_q);
    for k in 1..=(m - 1) as u64 {
        let qk = q_int.pow(k as u32);
        let mut val = qk.clone();
        for r in 1..mu {
            let mut inner = BigInt::zero();
            for &c in &kinds[r - 1] {
                let ck = BigInt::from(c).pow(k as u32);
                let dk = BigInt::from(deg_q - c).pow(k as u32);
                if m % 2 == 0 {
                    inner += ck - dk;
                } else {
                    inner += ck + dk;
                }
            }
            if r % 2 == 1 {
                inner = -inner;
            }
            if m % 2 == 0 {
                val -= inner;
            } else {
                val += inner;
            }
        }
        if m % 2 == 1 {
            let mut middle = BigInt::zero();
            for &c in &kinds[mu - 1] {
                middle += BigInt::from(c).pow(k as u32);
            }
            if mu % 2 == 1 {
                middle = -middle;
            }
            val += middle;
        }
        let expected = if k == (m - 1) as u64 {
            ExactValue::Int(factorial(k) * tuple.product())
        } else {
            ExactValue::int(0)
        };
        out.push(IdentityCheck::exact(family, "folded-power-sum", CheckParams::k(k), expected, ExactValue::Int(val)));
    }

    // The compact quadruple identities hold for β_1 = 5, the first Betti
    // number of every symmetric non-complete-intersection quadruple; the
    // complete-intersection case (β_1 = 3) is covered by the ci family.
    if m == 4 && kinds[0].len() == 5 {
        let i1: BigInt = kinds[0].iter().map(|&c| BigInt::from(c)).sum();
        let i2: BigInt = kinds[0].iter().map(|&c| BigInt::from(c).pow(2)).sum();
        let i3: BigInt = kinds[0].iter().map(|&c| BigInt::from(c).pow(3)).sum();
        out.push(IdentityCheck::exact(
            Family::Bresinsky4,
            "degree-from-first-kind",
            CheckParams::default(),
            ExactValue::Int(BigInt::from(2) * BigInt::from(deg_q)),
            ExactValue::Int(i1.clone()),
        ));
        out.push(IdentityCheck::exact(
            Family::Bresinsky4,
            "cubic-identity",
            CheckParams::default(),
            ExactValue::Int(BigInt::from(24) * tuple.product()),
            ExactValue::Int(
                BigInt::from(8) * &i3 - BigInt::from(6) * &i2 * &i1 + &i1 * &i1 * &i1,
            ),
        ));
    }

    if m == 5 {
        let b1 = BigInt::from(kinds[0].len() as u64) - BigInt::one();
        let j = |kind: usize, k: u32| -> BigInt {
            kinds[kind].iter().map(|&c| BigInt::from(c).pow(k)).sum()
        };
        let (j11, j12, j13, j14) = (j(0, 1), j(0, 2), j(0, 3), j(0, 4));
        let (j21, j22, j23, j24) = (j(1, 1), j(1, 2), j(1, 3), j(1, 4));
        let pi5 = tuple.product();

        out.push(IdentityCheck::exact(
            Family::Symmetric5,
            "quintuple-identity",
            CheckParams::k(1),
            ExactValue::Int(&b1 * BigInt::from(deg_q)),
            ExactValue::Int(j21.clone()),
        ));
        out.push(IdentityCheck::exact(
            Family::Symmetric5,
            "quintuple-identity",
            CheckParams::k(2),
            ExactValue::int(0),
            ExactValue::Int(&j21 * (BigInt::from(2) * &j11 - &j21) + &b1 * (&j22 - BigInt::from(2) * &j12)),
        ));
        out.push(IdentityCheck::exact(
            Family::Symmetric5,
            "quintuple-identity",
            CheckParams::k(3),
            ExactValue::int(0),
            ExactValue::Int(
                &j21 * &j21 * (BigInt::from(3) * &j11 - &j21) - BigInt::from(3) * &b1 * &j12 * &j21
                    + &b1 * &b1 * &j23,
            ),
        ));
        out.push(IdentityCheck::exact(
            Family::Symmetric5,
            "quintuple-identity",
            CheckParams::k(4),
            ExactValue::int(0),
            ExactValue::Int(
                &j21 * &j21 * &j21 * (BigInt::from(4) * &j11 - &j21)
                    - BigInt::from(6) * &b1 * &j12 * &j21 * &j21
                    + BigInt::from(4) * &b1 * &b1 * &j13 * &j21
                    + &b1 * &b1 * &b1 * (&j24 - BigInt::from(2) * &j14 - BigInt::from(24) * pi5),
            ),
        ));
    }
    Ok(out)
}

/// MED identities evaluated directly over the monomial families (no
/// numerator in the main entries), with an auxiliary reassembly cross-check
/// and, for almost symmetric MED, the counterpartner pairing.
pub fn med_identity_suite(
    tuple: &GeneratorTuple,
    prof: &SemigroupProfile,
    flags: &ClassificationFlags,
    q_poly: &SparseIntPolynomial,
) -> Result<Vec<IdentityCheck>, IdentityError> {
    if !flags.med {
        return Err(IdentityError::NotMED);
    }
    let m = tuple.embedding_dimension() as u64;
    let kinds = med_kind_degrees(tuple)?;
    let mut out = Vec::new();

    for k in 1..=m - 1 {
        let mut val = BigInt::zero();
        for (i, kind) in kinds.iter().enumerate() {
            let mut inner = BigInt::zero();
            for &d in kind {
                inner += BigInt::from(d).pow(k as u32);
            }
            if i % 2 == 0 {
                val += inner;
            } else {
                val -= inner;
            }
        }
        let expected = if k == m - 1 {
            // (-1)^m m! Π_{j >= 2} d_j, i.e. (-1)^m (m-1)! π_m for d_1 = m.
            let mut v = factorial(m - 1) * tuple.product();
            if m % 2 == 1 {
                v = -v;
            }
            ExactValue::Int(v)
        } else {
            ExactValue::int(0)
        };
        out.push(IdentityCheck::exact(
            Family::MED,
            "family-power-sum",
            CheckParams::k(k),
            expected,
            ExactValue::Int(val),
        ));
    }

    out.push(IdentityCheck::exact(
        Family::MED,
        "frobenius-closed-form",
        CheckParams::default(),
        ExactValue::int(prof.frobenius),
        ExactValue::int(tuple.max_generator() as i64 - m as i64),
    ));

    let mut rebuilt = SparseIntPolynomial::one();
    for (i, kind) in kinds.iter().enumerate() {
        let sign = if i % 2 == 0 { -BigInt::one() } else { BigInt::one() };
        for &d in kind {
            rebuilt.add_term(d, sign.clone());
        }
    }
    out.push(
        IdentityCheck::exact(
            Family::MED,
            "families-reassemble-numerator",
            CheckParams::default(),
            ExactValue::text(q_poly.to_string()),
            ExactValue::text(rebuilt.to_string()),
        )
        .auxiliary(),
    );

    if flags.almost_symmetric_med {
        let target = 2 * tuple.sigma1_u64() / m;
        let g = tuple.generators();
        let sums: Vec<u64> = (0..g.len()).map(|j| g[j] + g[g.len() - 1 - j]).collect();
        let uniform = sums.iter().all(|&s| s == target);
        out.push(IdentityCheck::exact(
            Family::AlmostSymmetricMED,
            "counterpartner-pairing",
            CheckParams::default(),
            ExactValue::int(target),
            if uniform {
                ExactValue::int(target)
            } else {
                ExactValue::text(format!("pair sums {sums:?}"))
            },
        ));
    }
    Ok(out)
}

/// The algebraic side of the inclusion-exclusion identity for a tuple of
/// set sizes `e` and word length `k`: the alternating subset power sum
/// equals 0 for k < n and (-1)^{n+1} n! Π e_i for k = n.
pub fn appendix_algebraic(e: &[u64], k: u64) -> Result<IdentityCheck, IdentityError> {
    let n = e.len() as u64;
    if k == 0 || k > n {
        return Err(IdentityError::BadInstance(format!("k = {k} out of range 1..={n}")));
    }
    let expected = if k < n {
        ExactValue::int(0)
    } else {
        let mut v = factorial(n) * e.iter().fold(BigInt::one(), |acc, &x| acc * BigInt::from(x));
        if n % 2 == 0 {
            v = -v;
        }
        ExactValue::Int(v)
    };
    Ok(IdentityCheck::exact(
        Family::Appendix,
        "inclusion-exclusion-algebraic",
        CheckParams::k(k),
        expected,
        ExactValue::Int(subset_power_sum(e, k)),
    ))
}

/// The enumeration side: literally count length-k words over an alphabet
/// with e_i letters of color i that use every color, and compare with both
/// the closed form and the inclusion-exclusion union cardinality.
pub fn appendix_enumeration(
    e: &[u64],
    k: u64,
    cap: u128,
) -> Result<Vec<IdentityCheck>, IdentityError> {
    let n = e.len() as u64;
    if k == 0 || k > n {
        return Err(IdentityError::BadInstance(format!("k = {k} out of range 1..={n}")));
    }
    if n > 16 {
        return Err(IdentityError::BadInstance("more than 16 colors".into()));
    }
    let alphabet: u64 = e.iter().sum();
    let size = (alphabet as u128).pow(k as u32);
    if size > cap {
        return Err(IdentityError::InstanceTooLarge { size, cap });
    }

    let mut colors = Vec::with_capacity(alphabet as usize);
    for (i, &count) in e.iter().enumerate() {
        for _ in 0..count {
            colors.push(i as u32);
        }
    }
    let full: u32 = (1u32 << n) - 1;

    fn count_full(colors: &[u32], remaining: u64, mask: u32, full: u32) -> u64 {
        if remaining == 0 {
            return u64::from(mask == full);
        }
        let mut acc = 0;
        for &c in colors {
            acc += count_full(colors, remaining - 1, mask | (1 << c), full);
        }
        acc
    }
    let count = count_full(&colors, k, 0, full);

    let expected_count = if k < n {
        BigInt::zero()
    } else {
        factorial(n) * e.iter().fold(BigInt::one(), |acc, &x| acc * BigInt::from(x))
    };
    let mut out = vec![IdentityCheck::exact(
        Family::Appendix,
        "enumeration-all-colors",
        CheckParams::k(k),
        ExactValue::Int(expected_count),
        ExactValue::int(count),
    )];

    // #union of the color-avoiding sets, once by complement and once by
    // inclusion-exclusion over E - Σ T.
    let total = BigInt::from(alphabet).pow(k as u32);
    let union_by_complement = &total - BigInt::from(count);
    let mut union_ie = BigInt::zero();
    for mask in 1u64..(1 << e.len()) {
        let mut sum = 0u64;
        for (i, &v) in e.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum += v;
            }
        }
        let term = BigInt::from(alphabet - sum).pow(k as u32);
        if mask.count_ones() % 2 == 1 {
            union_ie += term;
        } else {
            union_ie -= term;
        }
    }
    out.push(IdentityCheck::exact(
        Family::Appendix,
        "enumeration-union-cardinality",
        CheckParams::k(k),
        ExactValue::Int(union_by_complement),
        ExactValue::Int(union_ie),
    ));
    Ok(out)
}

/// Both routes of the inclusion-exclusion oracle for one (e, k) instance.
pub fn appendix_oracle(
    e: &[u64],
    k: u64,
    cap: u128,
) -> Result<Vec<IdentityCheck>, IdentityError> {
    let mut out = vec![appendix_algebraic(e, k)?];
    out.extend(appendix_enumeration(e, k, cap)?);
    Ok(out)
}
