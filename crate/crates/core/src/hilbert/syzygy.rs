//! Per-kind syzygy degree tables.
//!
//! The numerator only exposes the signed aggregate of the kinds, so a table
//! is recovered from `Q(z)` alone just where the sign structure pins it
//! down: any m = 2 or 3, symmetric m = 4 (single top kind), and symmetric
//! m = 5 (duality pairing). Everywhere else extraction reports `Ambiguous`
//! and callers must supply a table. MED tables are constructed directly from
//! the monomial families instead.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{duality_check, med_kind_degrees, HilbertError};
use crate::algebra::SparseIntPolynomial;
use crate::semigroup::{ClassificationFlags, GeneratorTuple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SyzygyProvenance {
    Extracted,
    Supplied,
    Constructed,
}

/// Kind-indexed multisets of syzygy degrees C_{j,i} (kind 1 first), with the
/// Betti numbers implied by the multiset sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyTable {
    kinds: Vec<Vec<u64>>,
    provenance: SyzygyProvenance,
}

impl SyzygyTable {
    /// Builds a table, sorting each kind. `m` is the embedding dimension;
    /// there must be exactly m - 1 kinds and the alternating Betti sum must
    /// vanish.
    pub fn new(
        mut kinds: Vec<Vec<u64>>,
        m: usize,
        provenance: SyzygyProvenance,
    ) -> Result<Self, HilbertError> {
        if kinds.len() + 1 != m {
            return Err(HilbertError::TableMismatch(format!(
                "expected {} kinds for embedding dimension {m}, got {}",
                m - 1,
                kinds.len()
            )));
        }
        for kind in &mut kinds {
            kind.sort_unstable();
        }
        let table = Self { kinds, provenance };
        if m >= 2 && !table.alternating_betti_sum_vanishes() {
            return Err(HilbertError::InconsistentBetti);
        }
        table.check_kind_ordering()?;
        Ok(table)
    }

    pub fn kinds(&self) -> &[Vec<u64>] {
        &self.kinds
    }

    pub fn provenance(&self) -> SyzygyProvenance {
        self.provenance
    }

    /// β_1, …, β_{m-1}.
    pub fn betti(&self) -> Vec<u64> {
        self.kinds.iter().map(|k| k.len() as u64).collect()
    }

    fn alternating_betti_sum_vanishes(&self) -> bool {
        let mut acc: i64 = 1;
        for (i, kind) in self.kinds.iter().enumerate() {
            let b = kind.len() as i64;
            if i % 2 == 0 {
                acc -= b;
            } else {
                acc += b;
            }
        }
        acc == 0
    }

    /// Strictly increasing kind minima and maxima (all cancellations between
    /// adjacent kinds already performed).
    fn check_kind_ordering(&self) -> Result<(), HilbertError> {
        for w in self.kinds.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.is_empty() || b.is_empty() {
                continue;
            }
            if b[0] <= a[0] || b[b.len() - 1] <= a[a.len() - 1] {
                return Err(HilbertError::TableMismatch(
                    "kind minima and maxima must increase strictly".into(),
                ));
            }
        }
        Ok(())
    }

    /// 1 - Σ_i (-1)^{i+1} Σ_j z^{C_{j,i}}: must reproduce `Q` bit-exactly.
    pub fn reassemble(&self) -> SparseIntPolynomial {
        let mut q = SparseIntPolynomial::one();
        for (i, kind) in self.kinds.iter().enumerate() {
            let sign = if i % 2 == 0 { -BigInt::one() } else { BigInt::one() };
            for &d in kind {
                q.add_term(d, sign.clone());
            }
        }
        q
    }

    pub fn validate_against(&self, q: &SparseIntPolynomial) -> Result<(), HilbertError> {
        let rebuilt = self.reassemble();
        if rebuilt == *q {
            Ok(())
        } else {
            Err(HilbertError::TableMismatch(format!(
                "reassembled numerator {rebuilt} differs from {q}"
            )))
        }
    }
}

/// Outcome of sign-based extraction. `Ambiguous` is an explicit result, not
/// an error: the sign system simply does not determine the kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extraction {
    Table(SyzygyTable),
    Ambiguous { reason: String },
}

impl Extraction {
    pub fn table(&self) -> Option<&SyzygyTable> {
        match self {
            Extraction::Table(t) => Some(t),
            Extraction::Ambiguous { .. } => None,
        }
    }
}

fn signed_degree_multisets(q: &SparseIntPolynomial) -> (Vec<u64>, Vec<u64>) {
    let mut negatives = Vec::new();
    let mut positives = Vec::new();
    for (d, c) in q.iter_terms() {
        if d == 0 {
            continue;
        }
        let count: u64 = c.abs().try_into().expect("desk-scale multiplicity");
        let bucket = if c.is_negative() { &mut negatives } else { &mut positives };
        for _ in 0..count {
            bucket.push(d);
        }
    }
    (negatives, positives)
}

/// Recovers the per-kind table from the signs of `Q(z)` where that is
/// unambiguous; see the module docs for the covered cases.
pub fn extract_syzygy_table(
    q: &SparseIntPolynomial,
    tuple: &GeneratorTuple,
    flags: &ClassificationFlags,
) -> Result<Extraction, HilbertError> {
    let m = tuple.embedding_dimension();
    let (negatives, positives) = signed_degree_multisets(q);

    let table = match m {
        1 => SyzygyTable::new(vec![], 1, SyzygyProvenance::Extracted)?,
        2 => {
            if !positives.is_empty() {
                return Err(HilbertError::TableMismatch(
                    "two-generator numerator has a positive non-constant term".into(),
                ));
            }
            SyzygyTable::new(vec![negatives], 2, SyzygyProvenance::Extracted)?
        }
        3 => SyzygyTable::new(vec![negatives, positives], 3, SyzygyProvenance::Extracted)?,
        4 if flags.symmetric && duality_check(q, 4) => {
            let deg = q.degree().expect("numerator is nonzero");
            if q.coeff(deg) != -BigInt::one() {
                return Ok(Extraction::Ambiguous {
                    reason: "top coefficient is not -1; the last kind is not a single syzygy".into(),
                });
            }
            let kind1: Vec<u64> = negatives.iter().copied().filter(|&d| d != deg).collect();
            SyzygyTable::new(vec![kind1, positives, vec![deg]], 4, SyzygyProvenance::Extracted)?
        }
        5 if flags.symmetric && duality_check(q, 5) => {
            match split_symmetric_quintuple(q, &negatives, &positives)? {
                Extraction::Table(t) => t,
                amb => return Ok(amb),
            }
        }
        _ => {
            return Ok(Extraction::Ambiguous {
                reason: format!(
                    "no sign-based reconstruction for embedding dimension {m}{}",
                    if flags.symmetric { "" } else { " (nonsymmetric)" }
                ),
            })
        }
    };

    table.validate_against(q)?;
    Ok(Extraction::Table(table))
}

/// Symmetric m = 5: kind 4 is the single top degree, kind 2 is the self-dual
/// positive part, and kinds 1/3 split the negatives under the duality
/// C_{j,1} + C_{j,3} = deg Q. A dual pair is forced only when the kind
/// min/max interleaving decides it; otherwise the split is ambiguous.
fn split_symmetric_quintuple(
    q: &SparseIntPolynomial,
    negatives: &[u64],
    positives: &[u64],
) -> Result<Extraction, HilbertError> {
    let deg = q.degree().expect("numerator is nonzero");
    if q.coeff(deg) != BigInt::one() {
        return Ok(Extraction::Ambiguous {
            reason: "top coefficient is not +1; the last kind is not a single syzygy".into(),
        });
    }
    let kind2: Vec<u64> = positives.iter().copied().filter(|&d| d != deg).collect();

    // The positive part must itself be closed under c -> deg - c.
    let mut dual2: Vec<u64> = kind2.iter().map(|&c| deg - c).collect();
    dual2.sort_unstable();
    if dual2 != kind2 {
        return Err(HilbertError::TableMismatch(
            "middle kind is not self-dual under c -> deg Q - c".into(),
        ));
    }

    let mut counts = std::collections::BTreeMap::<u64, u64>::new();
    for &c in negatives {
        *counts.entry(c).or_insert(0) += 1;
    }

    let mut kind1 = Vec::new();
    let mut kind3 = Vec::new();
    let keys: Vec<u64> = counts.keys().copied().collect();
    for c in keys {
        let mu = counts[&c];
        if mu == 0 {
            continue;
        }
        let dual = deg.checked_sub(c).ok_or_else(|| {
            HilbertError::TableMismatch("negative degree exceeds deg Q".into())
        })?;
        if dual == c {
            if mu % 2 != 0 {
                return Err(HilbertError::TableMismatch(
                    "self-dual degree with odd multiplicity".into(),
                ));
            }
            for _ in 0..mu / 2 {
                kind1.push(c);
                kind3.push(c);
            }
            counts.insert(c, 0);
            continue;
        }
        let mu_dual = *counts.get(&dual).unwrap_or(&0);
        if mu_dual != mu {
            return Err(HilbertError::TableMismatch(format!(
                "degrees {c} and {dual} have unequal multiplicities {mu} vs {mu_dual}"
            )));
        }
        let (lo, hi) = (c.min(dual), c.max(dual));
        let forced = match (kind2.first(), kind2.last()) {
            (Some(&c2min), Some(&c2max)) => lo <= c2min || hi >= c2max,
            // Empty middle kind: the interleaving constraint alone orders
            // the pair (min of kind 1 precedes min of kind 3).
            _ => true,
        };
        if !forced {
            return Ok(Extraction::Ambiguous {
                reason: format!(
                    "dual pair ({lo}, {hi}) lies strictly inside the middle kind's degree range; \
                     the kind split is not determined by Q alone"
                ),
            });
        }
        for _ in 0..mu {
            kind1.push(lo);
            kind3.push(hi);
        }
        counts.insert(c, 0);
        counts.insert(dual, 0);
    }

    let table = SyzygyTable::new(vec![kind1, kind2, kind3, vec![deg]], 5, SyzygyProvenance::Extracted)?;
    Ok(Extraction::Table(table))
}

/// Constructed table for MED semigroups from the monomial families.
pub fn med_syzygy_table(tuple: &GeneratorTuple) -> Result<SyzygyTable, HilbertError> {
    let kinds = med_kind_degrees(tuple)?;
    SyzygyTable::new(kinds, tuple.embedding_dimension(), SyzygyProvenance::Constructed)
}

/// On-disk form of a user-supplied table: degrees per kind, kind 1 first.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SyzygyTableFile {
    pub generators: Vec<u64>,
    pub kinds: Vec<Vec<u64>>,
}

impl SyzygyTableFile {
    pub fn parse(json: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(json)
    }

    /// Validates the file against the tuple and its numerator, returning a
    /// supplied-provenance table.
    pub fn into_table(
        self,
        tuple: &GeneratorTuple,
        q: &SparseIntPolynomial,
    ) -> Result<SyzygyTable, HilbertError> {
        let mut gens = self.generators.clone();
        gens.sort_unstable();
        if gens != tuple.generators() {
            return Err(HilbertError::TableMismatch(format!(
                "table generators {:?} do not match {:?}",
                self.generators,
                tuple.generators()
            )));
        }
        let table = SyzygyTable::new(self.kinds, tuple.embedding_dimension(), SyzygyProvenance::Supplied)?;
        table.validate_against(q)?;
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::hilbert_numerator;
    use crate::semigroup::{classify, profile, validate_generators};

    fn extract(gens: &[u64]) -> (SparseIntPolynomial, Extraction) {
        let t = validate_generators(gens).unwrap();
        let p = profile(&t).unwrap();
        let q = hilbert_numerator(&t, &p).unwrap();
        let flags = classify(&t, &p);
        let e = extract_syzygy_table(&q, &t, &flags).unwrap();
        (q, e)
    }

    #[test]
    fn extract_m3() {
        let (_, e) = extract(&[3, 5, 7]);
        let table = e.table().expect("m=3 extraction is always determined");
        assert_eq!(table.kinds(), &[vec![10, 12, 14], vec![17, 19]]);
        assert_eq!(table.betti(), vec![3, 2]);
    }

    #[test]
    fn extract_symmetric_m4() {
        let (_, e) = extract(&[5, 6, 7, 8]);
        let table = e.table().expect("symmetric m=4 extraction");
        assert_eq!(
            table.kinds(),
            &[vec![12, 13, 14, 15, 16], vec![19, 20, 21, 22, 23], vec![35]]
        );
        assert_eq!(table.betti(), vec![5, 5, 1]);

        let (_, e) = extract(&[8, 13, 15, 17]);
        let table = e.table().expect("symmetric m=4 extraction");
        assert_eq!(
            table.kinds(),
            &[vec![30, 32, 34, 39, 41], vec![47, 49, 54, 56, 58], vec![88]]
        );
    }

    #[test]
    fn extract_nonsymmetric_m4_is_ambiguous() {
        let (_, e) = extract(&[4, 10, 19, 25]);
        assert!(matches!(e, Extraction::Ambiguous { .. }));
        // The MED construction covers it instead.
        let t = validate_generators(&[4, 10, 19, 25]).unwrap();
        let table = med_syzygy_table(&t).unwrap();
        assert_eq!(table.betti(), vec![6, 8, 3]);
        assert_eq!(table.provenance(), SyzygyProvenance::Constructed);
    }

    #[test]
    fn extract_symmetric_quintuple_when_every_pair_is_forced() {
        // Telescopic quintuple: the negatives split into four dual pairs
        // that all sit outside the middle kind's degree range, so the
        // reconstruction is unique.
        let (_, e) = extract(&[16, 18, 20, 24, 29]);
        let table = e.table().expect("forced quintuple extraction");
        assert_eq!(
            table.kinds(),
            &[
                vec![36, 40, 48, 58],
                vec![76, 84, 88, 94, 98, 106],
                vec![124, 134, 142, 146],
                vec![182]
            ]
        );
        assert_eq!(table.betti(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn extract_symmetric_quintuple_reports_free_pairs() {
        let (_, e) = extract(&[19, 23, 29, 31, 37]);
        match e {
            Extraction::Ambiguous { reason } => {
                assert!(reason.contains("dual pair"), "reason: {reason}");
            }
            Extraction::Table(_) => panic!("four dual pairs are undetermined by Q alone"),
        }
    }

    #[test]
    fn supplied_table_roundtrip() {
        let t = validate_generators(&[3, 5, 7]).unwrap();
        let p = profile(&t).unwrap();
        let q = hilbert_numerator(&t, &p).unwrap();
        let file = SyzygyTableFile::parse(
            r#"{"generators":[3,5,7],"kinds":[[10,12,14],[17,19]]}"#,
        )
        .unwrap();
        let table = file.into_table(&t, &q).unwrap();
        assert_eq!(table.provenance(), SyzygyProvenance::Supplied);
        table.validate_against(&q).unwrap();

        let bad = SyzygyTableFile::parse(
            r#"{"generators":[3,5,7],"kinds":[[10,12,15],[17,19]]}"#,
        )
        .unwrap();
        assert!(bad.into_table(&t, &q).is_err());
    }

    #[test]
    fn betti_sum_enforced() {
        assert!(matches!(
            SyzygyTable::new(vec![vec![10, 12], vec![17, 19]], 3, SyzygyProvenance::Supplied),
            Err(HilbertError::InconsistentBetti)
        ));
    }
}
