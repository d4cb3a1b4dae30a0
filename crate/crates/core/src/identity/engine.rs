//! The theorem-level checks driven directly by the numerator `Q(z)`:
//! alternating power sums, root-of-unity weighted sums, and the counting
//! formula for how many such identities a tuple carries. The per-kind
//! ambiguity of the numerator's signs never enters here: the sums are
//! invariant under any admissible kind assignment.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::gcd;
use num_traits::Zero;

use super::families::{
    appendix_oracle, ci_identity_suite, m3_suite, med_identity_suite, symmetric_identity_suite,
    telescopic_suite,
};
use num_rational::BigRational;

use super::{CheckParams, ExactValue, Family, IdentityCheck, IdentityError, IdentityReport, Status};
use crate::algebra::special::factorial;
use crate::algebra::{cyclotomic_polynomial, euler_phi, CyclotomicNumber, SparseIntPolynomial};
use crate::hilbert::{detect_ci, telescopic_degrees, SyzygyTable};
use crate::semigroup::{ClassificationFlags, GeneratorTuple, SemigroupProfile};
use crate::sylvester::{admissible_moduli, admissible_residues, denumerant_table, lemma1_check};

/// A_k: the alternating power sum of the syzygy degrees, read off the
/// numerator as -Σ_{c>0} q_c c^k. For k = 0 this is the alternating Betti
/// sum 1 - β_1 + β_2 - …, i.e. Q(1).
pub fn power_sums(q: &SparseIntPolynomial, k: u64) -> BigInt {
    if k == 0 {
        return q.eval_at_one();
    }
    let mut acc = BigInt::zero();
    for (d, c) in q.iter_terms() {
        if d > 0 {
            acc -= c * BigInt::from(d).pow(k as u32);
        }
    }
    acc
}

/// E(q, n, r) = -Σ_{c>0} q_c c^r ξ_q^{nc}, reduced in Q(ξ_q).
pub fn exponential_sums(
    q_poly: &SparseIntPolynomial,
    tuple: &GeneratorTuple,
    q: u64,
    n: u64,
    r: u64,
) -> Result<CyclotomicNumber, IdentityError> {
    if !tuple.generators().iter().any(|&d| d % q == 0) {
        return Err(IdentityError::Wave(crate::sylvester::WaveError::ModulusDividesNothing { q }));
    }
    if n == 0 || n >= q || gcd(n, q) != 1 {
        return Err(IdentityError::Wave(crate::sylvester::WaveError::BadResidue { q, n }));
    }
    let mut acc = CyclotomicNumber::zero(q);
    for (c, coeff) in q_poly.iter_terms() {
        if c == 0 {
            continue;
        }
        let weight = -(coeff * BigInt::from(c).pow(r as u32));
        let exp = ((n as u128 * c as u128) % q as u128) as i64;
        let term = CyclotomicNumber::root_of_unity(q, exp)
            .scalar_mul(&num_rational::BigRational::from(weight));
        acc = &acc + &term;
    }
    Ok(acc)
}

/// The alternating power-sum identities: A_k = 0 for k = 0..m-2 and
/// A_{m-1} = (-1)^m (m-1)! π_m, cross-checked (as an auxiliary entry)
/// against the root multiplicity of Q at z = 1.
pub fn theorem1_verify(q: &SparseIntPolynomial, tuple: &GeneratorTuple) -> Vec<IdentityCheck> {
    let m = tuple.embedding_dimension() as u64;
    let mut out = Vec::new();
    for k in 0..m {
        let expected = if k == m - 1 {
            let mut v = factorial(m - 1) * tuple.product();
            if m % 2 == 1 {
                v = -v;
            }
            ExactValue::Int(v)
        } else {
            ExactValue::int(0)
        };
        out.push(IdentityCheck::exact(
            Family::Theorem1,
            "power-sum",
            CheckParams::k(k),
            expected,
            ExactValue::Int(power_sums(q, k)),
        ));
    }

    // Same statement through exact division: (1-z)^{m-1} | Q with the
    // quotient evaluating to π_m at z = 1.
    let one_minus_z = SparseIntPolynomial::one_minus_power(1);
    let mut current = q.clone();
    let mut exact = true;
    for _ in 0..m - 1 {
        match current.div_rem(&one_minus_z) {
            Ok((quot, rem)) if rem.is_zero() => current = quot,
            _ => {
                exact = false;
                break;
            }
        }
    }
    let actual = if exact {
        ExactValue::Int(current.eval_at_one())
    } else {
        ExactValue::text("(1-z)^{m-1} does not divide Q")
    };
    out.push(
        IdentityCheck::exact(
            Family::Theorem1,
            "root-multiplicity",
            CheckParams::default(),
            ExactValue::Int(tuple.product().clone()),
            actual,
        )
        .auxiliary(),
    );
    out
}

/// The root-of-unity weighted identities: for every admissible modulus q and
/// residue n, E(q,n,0) = 1 and E(q,n,r) = 0 for r < ω_q; each modulus also
/// carries the auxiliary cross-check Φ_q^{ω_q} | Q.
pub fn theorem2_verify(
    q_poly: &SparseIntPolynomial,
    tuple: &GeneratorTuple,
) -> Result<Vec<IdentityCheck>, IdentityError> {
    let mut out = Vec::new();
    for q in admissible_moduli(tuple) {
        let omega = tuple.generators().iter().filter(|&&d| d % q == 0).count() as u64;
        for n in admissible_residues(q) {
            for r in 0..omega {
                let expected = if r == 0 {
                    ExactValue::Cyclotomic(CyclotomicNumber::one(q))
                } else {
                    ExactValue::Cyclotomic(CyclotomicNumber::zero(q))
                };
                let actual = ExactValue::Cyclotomic(exponential_sums(q_poly, tuple, q, n, r)?);
                out.push(IdentityCheck::exact(
                    Family::Theorem2,
                    "cyclotomic-sum",
                    CheckParams::qnr(q, n, r),
                    expected,
                    actual,
                ));
            }
        }
        let phi = cyclotomic_polynomial(q);
        let divisible = q_poly.divisible_by_power(&phi, omega as u32)?;
        out.push(
            IdentityCheck::exact(
                Family::Theorem2,
                "cyclotomic-divisibility",
                CheckParams::q(q),
                ExactValue::text("divisible"),
                ExactValue::text(if divisible { "divisible" } else { "not divisible" }),
            )
            .auxiliary(),
        );
    }
    Ok(out)
}

/// For every generator d and every residue coprime to it, the weighted sum
/// at r = 0 equals 1. Conjugate residues are derived rather than recomputed.
pub fn corollary1_verify(
    q_poly: &SparseIntPolynomial,
    tuple: &GeneratorTuple,
) -> Result<Vec<IdentityCheck>, IdentityError> {
    let mut out = Vec::new();
    for &d in tuple.generators() {
        if d < 2 {
            continue;
        }
        let expected = ExactValue::Cyclotomic(CyclotomicNumber::one(d));
        let mut computed: std::collections::BTreeMap<u64, CyclotomicNumber> = Default::default();
        for n in 1..d {
            if gcd(n, d) != 1 {
                continue;
            }
            let value = if let Some(v) = computed.get(&(d - n)) {
                v.conjugate()
            } else {
                exponential_sums(q_poly, tuple, d, n, 0)?
            };
            computed.insert(n, value.clone());
            out.push(IdentityCheck::exact(
                Family::Corollary1,
                "root-of-unity-sum",
                CheckParams::qn(d, n),
                expected.clone(),
                ExactValue::Cyclotomic(value),
            ));
        }
    }
    Ok(out)
}

/// N(d^m) = m + ω_2 + (1/2) Σ_{q >= 3} ω_q φ(q): the number of power-sum
/// plus root-of-unity identities the tuple carries.
pub fn identity_count(tuple: &GeneratorTuple) -> u64 {
    let m = tuple.embedding_dimension() as u64;
    let mut count = m;
    for q in admissible_moduli(tuple) {
        let omega = tuple.generators().iter().filter(|&&d| d % q == 0).count() as u64;
        if q == 2 {
            count += omega;
        } else {
            count += omega * euler_phi(q) / 2;
        }
    }
    count
}

/// Options for a full verification run.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Restrict to these families; `None` runs everything applicable.
    pub families: Option<BTreeSet<Family>>,
    /// Upper end of the wave-sum comparison range (default F + σ_1).
    pub wave_s_max: Option<i64>,
    /// Cap on enumeration size for the inclusion-exclusion oracle.
    pub appendix_enumeration_cap: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { families: None, wave_s_max: None, appendix_enumeration_cap: 10_000_000 }
    }
}

/// The independently runnable pieces of a verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuitePlanItem {
    Theorem1,
    Theorem2,
    Corollary1,
    Telescopic,
    CompleteIntersection,
    Symmetric,
    M3,
    MED,
    Appendix,
    WaveSum,
    Lemma1,
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub report: IdentityReport,
    /// N(d^m); `None` when a family filter excludes the theorem checks.
    pub expected_theorem_checks: Option<u64>,
    pub executed_theorem_checks: u64,
}

/// Everything a verification needs, bundled so the plan items can run
/// independently (and in parallel) and merge deterministically.
pub struct VerifyContext<'a> {
    pub tuple: &'a GeneratorTuple,
    pub profile: &'a SemigroupProfile,
    pub flags: &'a ClassificationFlags,
    pub numerator: &'a SparseIntPolynomial,
    pub table: Option<&'a SyzygyTable>,
    pub options: VerifyOptions,
}

impl<'a> VerifyContext<'a> {
    fn family_selected(&self, families: &[Family]) -> bool {
        match &self.options.families {
            None => true,
            Some(set) => families.iter().any(|f| set.contains(f)),
        }
    }

    /// The plan for this tuple: theorem checks always, specialized suites by
    /// classification, all subject to the family filter.
    pub fn plan(&self) -> Vec<SuitePlanItem> {
        let m = self.tuple.embedding_dimension();
        let mut plan = Vec::new();
        if self.family_selected(&[Family::Theorem1]) {
            plan.push(SuitePlanItem::Theorem1);
        }
        if self.family_selected(&[Family::Theorem2]) {
            plan.push(SuitePlanItem::Theorem2);
        }
        if self.family_selected(&[Family::Corollary1]) {
            plan.push(SuitePlanItem::Corollary1);
        }
        if self.flags.telescopic.is_telescopic() && self.family_selected(&[Family::Telescopic]) {
            plan.push(SuitePlanItem::Telescopic);
        }
        if self.flags.complete_intersection && self.family_selected(&[Family::CI]) {
            plan.push(SuitePlanItem::CompleteIntersection);
        }
        if self.flags.symmetric
            && m >= 2
            && self.family_selected(&[
                Family::SymmetricEven,
                Family::SymmetricOdd,
                Family::Bresinsky4,
                Family::Symmetric5,
            ])
        {
            plan.push(SuitePlanItem::Symmetric);
        }
        if m == 3 && self.family_selected(&[Family::M3, Family::Pseudosymmetric]) {
            plan.push(SuitePlanItem::M3);
        }
        if self.flags.med && self.family_selected(&[Family::MED, Family::AlmostSymmetricMED]) {
            plan.push(SuitePlanItem::MED);
        }
        if self.flags.complete_intersection && self.family_selected(&[Family::Appendix]) {
            plan.push(SuitePlanItem::Appendix);
        }
        if self.family_selected(&[Family::WaveSum]) {
            plan.push(SuitePlanItem::WaveSum);
        }
        if self.family_selected(&[Family::Lemma1]) {
            plan.push(SuitePlanItem::Lemma1);
        }
        plan
    }

    /// Runs one plan item. Errors surface as failed checks so that a run
    /// always yields a complete report.
    pub fn run_suite(&self, item: SuitePlanItem) -> Vec<IdentityCheck> {
        match self.try_run_suite(item) {
            Ok(checks) => checks,
            Err(IdentityError::NeedsSyzygyTable) => {
                vec![IdentityCheck::skipped(
                    self.suite_family(item),
                    "suite",
                    "per-kind degrees are ambiguous and no syzygy table was supplied",
                )]
            }
            Err(err) => vec![IdentityCheck {
                family: self.suite_family(item),
                label: "suite".into(),
                params: CheckParams::default(),
                expected: ExactValue::text("suite completes"),
                actual: ExactValue::text(err.to_string()),
                status: Status::Fail,
                auxiliary: false,
            }],
        }
    }

    fn suite_family(&self, item: SuitePlanItem) -> Family {
        match item {
            SuitePlanItem::Theorem1 => Family::Theorem1,
            SuitePlanItem::Theorem2 => Family::Theorem2,
            SuitePlanItem::Corollary1 => Family::Corollary1,
            SuitePlanItem::Telescopic => Family::Telescopic,
            SuitePlanItem::CompleteIntersection => Family::CI,
            SuitePlanItem::Symmetric => {
                if self.tuple.embedding_dimension() % 2 == 0 {
                    Family::SymmetricEven
                } else {
                    Family::SymmetricOdd
                }
            }
            SuitePlanItem::M3 => Family::M3,
            SuitePlanItem::MED => Family::MED,
            SuitePlanItem::Appendix => Family::Appendix,
            SuitePlanItem::WaveSum => Family::WaveSum,
            SuitePlanItem::Lemma1 => Family::Lemma1,
        }
    }

    fn try_run_suite(&self, item: SuitePlanItem) -> Result<Vec<IdentityCheck>, IdentityError> {
        match item {
            SuitePlanItem::Theorem1 => Ok(theorem1_verify(self.numerator, self.tuple)),
            SuitePlanItem::Theorem2 => theorem2_verify(self.numerator, self.tuple),
            SuitePlanItem::Corollary1 => corollary1_verify(self.numerator, self.tuple),
            SuitePlanItem::Telescopic => telescopic_suite(self.tuple, self.flags, self.numerator),
            SuitePlanItem::CompleteIntersection => {
                let degrees = self.ci_degrees().ok_or(IdentityError::NotCI)?;
                ci_identity_suite(&degrees, self.tuple, self.numerator)
            }
            SuitePlanItem::Symmetric => {
                let table = self.resolved_table()?;
                symmetric_identity_suite(self.numerator, self.tuple, &table)
            }
            SuitePlanItem::M3 => m3_suite(self.tuple, self.profile, self.numerator),
            SuitePlanItem::MED => {
                med_identity_suite(self.tuple, self.profile, self.flags, self.numerator)
            }
            SuitePlanItem::Appendix => {
                let degrees = self.ci_degrees().ok_or(IdentityError::NotCI)?;
                let mut out = Vec::new();
                for k in 1..=degrees.len() as u64 {
                    match appendix_oracle(&degrees, k, self.options.appendix_enumeration_cap) {
                        Ok(checks) => out.extend(checks),
                        Err(IdentityError::InstanceTooLarge { size, cap }) => {
                            out.push(IdentityCheck::skipped(
                                Family::Appendix,
                                "enumeration",
                                format!("instance size {size} exceeds the cap {cap}"),
                            ));
                        }
                        Err(err) => return Err(err),
                    }
                }
                Ok(out)
            }
            SuitePlanItem::WaveSum => self.wave_sum_suite(),
            SuitePlanItem::Lemma1 => {
                let mut out = Vec::new();
                for q in admissible_moduli(self.tuple) {
                    for n in admissible_residues(q) {
                        let res = lemma1_check(self.tuple, q, n)?;
                        let describe = |l0: bool, m0: bool| {
                            format!(
                                "L1 {} M1 {}",
                                if l0 { "= 0," } else { "!= 0," },
                                if m0 { "= 0" } else { "!= 0" }
                            )
                        };
                        out.push(IdentityCheck::exact(
                            Family::Lemma1,
                            "selection-rule",
                            CheckParams::qn(q, n),
                            ExactValue::text(describe(res.l1_forced_zero, res.m1_forced_zero)),
                            ExactValue::text(describe(res.l1_is_zero, res.m1_is_zero)),
                        ));
                    }
                }
                Ok(out)
            }
        }
    }

    fn ci_degrees(&self) -> Option<Vec<u64>> {
        if let Some(witness) = self.flags.telescopic.witness() {
            if let Ok(degrees) = telescopic_degrees(self.tuple, witness) {
                return Some(degrees);
            }
        }
        detect_ci(self.numerator, self.tuple.embedding_dimension())
    }

    /// Supplied table first, then sign-based extraction, then the MED
    /// construction; `NeedsSyzygyTable` when all three are unavailable.
    fn resolved_table(&self) -> Result<SyzygyTable, IdentityError> {
        if let Some(t) = self.table {
            return Ok(t.clone());
        }
        if let Ok(crate::hilbert::Extraction::Table(t)) =
            crate::hilbert::extract_syzygy_table(self.numerator, self.tuple, self.flags)
        {
            return Ok(t);
        }
        if self.flags.med {
            if let Ok(t) = crate::hilbert::med_syzygy_table(self.tuple) {
                return Ok(t);
            }
        }
        Err(IdentityError::NeedsSyzygyTable)
    }

    fn wave_sum_suite(&self) -> Result<Vec<IdentityCheck>, IdentityError> {
        let sigma1 = self.tuple.sigma1_u64() as i64;
        let s_max = self
            .options
            .wave_s_max
            .unwrap_or(self.profile.frobenius + sigma1)
            .max(0);
        let engine = crate::sylvester::WaveEngine::new(self.tuple)?;
        let counts = denumerant_table(self.tuple, s_max as u64);

        let mut first_mismatch: Option<(i64, BigRational, BigInt)> = None;
        let mut mismatches = 0usize;
        for s in 0..=s_max {
            let total = engine.total(s);
            let count = &counts[s as usize];
            if total != BigRational::from(count.clone()) {
                mismatches += 1;
                if first_mismatch.is_none() {
                    first_mismatch = Some((s, total, count.clone()));
                }
            }
        }
        let points = s_max + 1;
        let actual = match &first_mismatch {
            None => ExactValue::text(format!("all {points} points agree")),
            Some((s, total, count)) => ExactValue::text(format!(
                "{mismatches} mismatches; first at s = {s}: waves give {total}, count is {count}"
            )),
        };
        let mut out = vec![IdentityCheck::exact(
            Family::WaveSum,
            "wave-sum-equality",
            CheckParams::default(),
            ExactValue::text(format!("all {points} points agree")),
            actual,
        )];

        if let Some(zero_rows) = engine.zero_rows() {
            let bad: Vec<String> = zero_rows
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(s, v)| format!("W({s}) = {v}"))
                .collect();
            out.push(IdentityCheck::exact(
                Family::WaveSum,
                "negative-zero-sequence",
                CheckParams::default(),
                ExactValue::text(format!("{} zeros", zero_rows.len())),
                if bad.is_empty() {
                    ExactValue::text(format!("{} zeros", zero_rows.len()))
                } else {
                    ExactValue::text(bad.join("; "))
                },
            ));
        }

        let parity_rows = engine.parity_rows(0..=sigma1.max(4));
        let bad: Vec<String> = parity_rows
            .iter()
            .filter(|(_, _, _, ok)| !ok)
            .map(|(u, lhs, rhs, _)| format!("u = {u}: {lhs} vs {rhs}"))
            .collect();
        out.push(IdentityCheck::exact(
            Family::WaveSum,
            "reflection-parity",
            CheckParams::default(),
            ExactValue::text(format!("{} points agree", parity_rows.len())),
            if bad.is_empty() {
                ExactValue::text(format!("{} points agree", parity_rows.len()))
            } else {
                ExactValue::text(bad.join("; "))
            },
        ));

        if self.tuple.pairwise_coprime() {
            for q in admissible_moduli(self.tuple) {
                let periodic = engine.wave_is_periodic(q, 3)?;
                out.push(IdentityCheck::exact(
                    Family::WaveSum,
                    "pure-periodicity",
                    CheckParams::q(q),
                    ExactValue::text("periodic"),
                    ExactValue::text(if periodic { "periodic" } else { "not periodic" }),
                ));
            }
        }
        Ok(out)
    }

    /// Runs the whole plan sequentially and merges in plan order.
    pub fn run_all(&self) -> VerifyOutcome {
        let mut report = IdentityReport::new();
        for item in self.plan() {
            report.extend(self.run_suite(item));
        }
        let theorem_families_selected = self.family_selected(&[Family::Theorem1])
            && self.family_selected(&[Family::Theorem2])
            && self.options.families.as_ref().map_or(true, |set| {
                set.contains(&Family::Theorem1) && set.contains(&Family::Theorem2)
            });
        let expected =
            if theorem_families_selected { Some(identity_count(self.tuple)) } else { None };
        VerifyOutcome {
            executed_theorem_checks: report.theorem_checks_executed(),
            expected_theorem_checks: expected,
            report,
        }
    }
}
