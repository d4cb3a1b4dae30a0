//! Exact verification of the identity families satisfied by syzygy degrees.
//!
//! Every check compares two exactly computed values; there is no tolerance
//! anywhere in this module. Trigonometric statements are verified as
//! cyclotomic-ring statements, never as floating-point sums.

mod engine;
mod families;

pub use engine::{
    corollary1_verify, exponential_sums, identity_count, power_sums, theorem1_verify,
    theorem2_verify, SuitePlanItem, VerifyContext, VerifyOptions, VerifyOutcome,
};
pub use families::{
    appendix_algebraic, appendix_enumeration, appendix_oracle, ci_identity_suite,
    m3_second_kind_degrees, m3_suite, med_identity_suite, symmetric_identity_suite,
    telescopic_suite,
};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::{AlgebraError, CyclotomicNumber};
use crate::hilbert::HilbertError;
use crate::semigroup::SemigroupError;
use crate::sylvester::WaveError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("numerator does not factor over the given first-kind degrees")]
    NotCI,
    #[error("suite requires exactly three generators")]
    NotM3,
    #[error("suite requires maximal embedding dimension")]
    NotMED,
    #[error("per-kind degrees are ambiguous; supply a syzygy table")]
    NeedsSyzygyTable,
    #[error("discriminant {disc} is not a perfect square")]
    PerfectSquareViolated { disc: BigInt },
    #[error("enumeration instance of size {size} exceeds the cap {cap}")]
    InstanceTooLarge { size: u128, cap: u128 },
    #[error("bad instance: {0}")]
    BadInstance(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Wave(#[from] WaveError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// The identity families a check can belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Theorem1,
    Theorem2,
    Corollary1,
    CI,
    Telescopic,
    SymmetricEven,
    SymmetricOdd,
    Bresinsky4,
    Symmetric5,
    M3,
    Pseudosymmetric,
    MED,
    AlmostSymmetricMED,
    Appendix,
    WaveSum,
    Lemma1,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::Theorem1,
        Family::Theorem2,
        Family::Corollary1,
        Family::CI,
        Family::Telescopic,
        Family::SymmetricEven,
        Family::SymmetricOdd,
        Family::Bresinsky4,
        Family::Symmetric5,
        Family::M3,
        Family::Pseudosymmetric,
        Family::MED,
        Family::AlmostSymmetricMED,
        Family::Appendix,
        Family::WaveSum,
        Family::Lemma1,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Theorem1 => "theorem1",
            Family::Theorem2 => "theorem2",
            Family::Corollary1 => "corollary1",
            Family::CI => "ci",
            Family::Telescopic => "telescopic",
            Family::SymmetricEven => "symmetric-even",
            Family::SymmetricOdd => "symmetric-odd",
            Family::Bresinsky4 => "bresinsky4",
            Family::Symmetric5 => "symmetric5",
            Family::M3 => "m3",
            Family::Pseudosymmetric => "pseudosymmetric",
            Family::MED => "med",
            Family::AlmostSymmetricMED => "almost-symmetric-med",
            Family::Appendix => "appendix",
            Family::WaveSum => "wave-sum",
            Family::Lemma1 => "lemma1",
        }
    }

    /// Parses a family filter token. "symmetric" selects both parities.
    pub fn parse_filter(token: &str) -> Option<Vec<Family>> {
        let t = token.trim().to_ascii_lowercase();
        if t == "symmetric" {
            return Some(vec![Family::SymmetricEven, Family::SymmetricOdd]);
        }
        Family::ALL.iter().find(|f| f.name() == t).map(|f| vec![*f])
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exactly represented value in a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactValue {
    Int(BigInt),
    Rational(BigRational),
    Cyclotomic(CyclotomicNumber),
    /// Structured text for non-numeric outcomes (patterns, polynomials).
    Text(String),
}

impl ExactValue {
    pub fn int(v: impl Into<BigInt>) -> Self {
        ExactValue::Int(v.into())
    }

    pub fn text(v: impl Into<String>) -> Self {
        ExactValue::Text(v.into())
    }

    /// Exact difference `self - other` when both sides are numeric values of
    /// the same kind.
    pub fn residual(&self, other: &ExactValue) -> Option<ExactValue> {
        match (self, other) {
            (ExactValue::Int(a), ExactValue::Int(b)) => Some(ExactValue::Int(a - b)),
            (ExactValue::Rational(a), ExactValue::Rational(b)) => Some(ExactValue::Rational(a - b)),
            (ExactValue::Cyclotomic(a), ExactValue::Cyclotomic(b)) => {
                a.checked_sub(b).ok().map(ExactValue::Cyclotomic)
            }
            _ => None,
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Int(v) => write!(f, "{v}"),
            ExactValue::Rational(v) => write!(f, "{v}"),
            ExactValue::Cyclotomic(v) => write!(f, "{v}"),
            ExactValue::Text(v) => f.write_str(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped { reason: String },
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped { .. } => "skipped",
        }
    }
}

/// Optional (q, n, r, k) parameters attached to a check.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct CheckParams {
    pub q: Option<u64>,
    pub n: Option<u64>,
    pub r: Option<u64>,
    pub k: Option<u64>,
}

impl CheckParams {
    pub fn q(q: u64) -> Self {
        CheckParams { q: Some(q), ..Default::default() }
    }

    pub fn qn(q: u64, n: u64) -> Self {
        CheckParams { q: Some(q), n: Some(n), ..Default::default() }
    }

    pub fn qnr(q: u64, n: u64, r: u64) -> Self {
        CheckParams { q: Some(q), n: Some(n), r: Some(r), ..Default::default() }
    }

    pub fn k(k: u64) -> Self {
        CheckParams { k: Some(k), ..Default::default() }
    }
}

impl fmt::Display for CheckParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(q) = self.q {
            parts.push(format!("q={q}"));
        }
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(r) = self.r {
            parts.push(format!("r={r}"));
        }
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        f.write_str(&parts.join(" "))
    }
}

/// One verified identity: expected and actual values, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub family: Family,
    /// Short kind within the family, e.g. "power-sum" or "degree-product".
    pub label: String,
    pub params: CheckParams,
    pub expected: ExactValue,
    pub actual: ExactValue,
    pub status: Status,
    /// Cross-checks of another route; not counted against N(d^m).
    pub auxiliary: bool,
}

impl IdentityCheck {
    /// A check that passes exactly when `expected == actual`.
    pub fn exact(
        family: Family,
        label: impl Into<String>,
        params: CheckParams,
        expected: ExactValue,
        actual: ExactValue,
    ) -> Self {
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        IdentityCheck { family, label: label.into(), params, expected, actual, status, auxiliary: false }
    }

    pub fn auxiliary(mut self) -> Self {
        self.auxiliary = true;
        self
    }

    pub fn skipped(family: Family, label: impl Into<String>, reason: impl Into<String>) -> Self {
        IdentityCheck {
            family,
            label: label.into(),
            params: CheckParams::default(),
            expected: ExactValue::text(""),
            actual: ExactValue::text(""),
            status: Status::Skipped { reason: reason.into() },
            auxiliary: false,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn residual(&self) -> Option<ExactValue> {
        if self.failed() {
            self.expected.residual(&self.actual)
        } else {
            None
        }
    }
}

/// An ordered collection of checks with deterministic merge order.
#[derive(Debug, Clone, Default)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: IdentityCheck) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = IdentityCheck>) {
        self.checks.extend(checks);
    }

    /// Stable canonical order: family, then label, then parameters.
    pub fn sort_canonical(&mut self) {
        self.checks.sort_by(|a, b| {
            (a.family, &a.label, a.params).cmp(&(b.family, &b.label, b.params))
        });
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| c.failed()).count()
    }

    pub fn skipped(&self) -> usize {
        self.checks.iter().filter(|c| matches!(c.status, Status::Skipped { .. })).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    /// Executed (pass or fail) theorem checks, the quantity N(d^m) counts.
    pub fn theorem_checks_executed(&self) -> u64 {
        self.checks
            .iter()
            .filter(|c| {
                matches!(c.family, Family::Theorem1 | Family::Theorem2)
                    && !c.auxiliary
                    && !matches!(c.status, Status::Skipped { .. })
            })
            .count() as u64
    }
}
