//! Subcommand implementations. Every command parses its inputs (exit 2 on
//! any input error, with the library error surfaced verbatim), computes
//! exactly, and emits either aligned text or stable JSON.

use std::collections::BTreeSet;
use std::path::Path;

use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use nsg_core::hilbert::{
    extract_syzygy_table, hilbert_numerator, med_syzygy_table, Extraction, SyzygyTable,
    SyzygyTableFile,
};
use nsg_core::identity::{identity_count, Family, VerifyContext, VerifyOptions};
use nsg_core::semigroup::TelescopicStatus;
use nsg_core::sylvester::{
    admissible_moduli, admissible_residues, denumerant_dp, wave1_polynomial, wave2_polynomial,
    wave_spec, waveq_partial, WaveEngine,
};
use nsg_core::{
    ClassificationFlags, GeneratorTuple, IdentityReport, SemigroupProfile, SparseIntPolynomial,
};

use crate::report::{check_rows, emit_json, int_json, render_table, report_json};
use crate::OutputFormat;

type CommandResult = Result<u8, String>;

fn parse_generators(raw: &str) -> Result<Vec<u64>, String> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().map_err(|_| format!("invalid generator '{s}'")))
        .collect()
}

fn parse_range(raw: &str) -> Result<(i64, i64), String> {
    let raw = raw.trim();
    if let Some((lo, hi)) = raw.split_once("..") {
        let lo: i64 = lo.trim().parse().map_err(|_| format!("invalid range start '{lo}'"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| format!("invalid range end '{hi}'"))?;
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok((lo, hi))
    } else {
        let s: i64 = raw.parse().map_err(|_| format!("invalid range '{raw}'"))?;
        Ok((s, s))
    }
}

fn resolve_parallelism(arg: Option<usize>) -> Result<usize, String> {
    let value = match arg {
        Some(v) => v,
        None => match std::env::var("NSG_PARALLELISM") {
            Ok(raw) => raw
                .parse::<usize>()
                .map_err(|_| format!("invalid NSG_PARALLELISM value '{raw}'"))?,
            Err(_) => 1,
        },
    };
    if value == 0 {
        return Err("parallelism must be positive".into());
    }
    Ok(value)
}

fn thread_pool(parallelism: usize) -> Result<rayon::ThreadPool, String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| format!("failed to build thread pool: {e}"))
}

struct Loaded {
    tuple: GeneratorTuple,
    profile: SemigroupProfile,
    flags: ClassificationFlags,
    numerator: SparseIntPolynomial,
}

fn load(raw: &str) -> Result<Loaded, String> {
    let gens = parse_generators(raw)?;
    let tuple = nsg_core::validate_generators(&gens).map_err(|e| e.to_string())?;
    let profile = nsg_core::profile(&tuple).map_err(|e| e.to_string())?;
    let mut flags = nsg_core::classify(&tuple, &profile);
    let numerator = hilbert_numerator(&tuple, &profile).map_err(|e| e.to_string())?;
    nsg_core::hilbert::finalize_complete_intersection(
        &mut flags,
        &numerator,
        tuple.embedding_dimension(),
    );
    Ok(Loaded { tuple, profile, flags, numerator })
}

fn flag_names(flags: &ClassificationFlags) -> Vec<&'static str> {
    let mut names = Vec::new();
    if flags.symmetric {
        names.push("symmetric");
    }
    if flags.pseudosymmetric {
        names.push("pseudosymmetric");
    }
    if flags.complete_intersection {
        names.push("complete-intersection");
    }
    if flags.telescopic.is_telescopic() {
        names.push("telescopic");
    }
    if flags.med {
        names.push("med");
    }
    if flags.almost_symmetric_med {
        names.push("almost-symmetric-med");
    }
    names
}

fn numerator_json(q: &SparseIntPolynomial) -> Value {
    Value::Array(
        q.iter_terms()
            .map(|(d, c)| Value::Array(vec![json!(d), int_json(c)]))
            .collect(),
    )
}

fn syzygy_json(extraction: &Option<SyzygyTable>, ambiguous: Option<&str>) -> Value {
    match extraction {
        Some(table) => json!({
            "provenance": match table.provenance() {
                nsg_core::SyzygyProvenance::Extracted => "extracted",
                nsg_core::SyzygyProvenance::Supplied => "supplied",
                nsg_core::SyzygyProvenance::Constructed => "constructed",
            },
            "betti": table.betti(),
            "kinds": table.kinds(),
        }),
        None => json!({ "ambiguous": ambiguous.unwrap_or("per-kind degrees undetermined") }),
    }
}

/// Extraction with the MED construction as fallback.
fn resolve_table_for_analysis(loaded: &Loaded) -> (Option<SyzygyTable>, Option<String>) {
    match extract_syzygy_table(&loaded.numerator, &loaded.tuple, &loaded.flags) {
        Ok(Extraction::Table(t)) => (Some(t), None),
        Ok(Extraction::Ambiguous { reason }) => {
            if loaded.flags.med {
                match med_syzygy_table(&loaded.tuple) {
                    Ok(t) => (Some(t), None),
                    Err(_) => (None, Some(reason)),
                }
            } else {
                (None, Some(reason))
            }
        }
        Err(e) => (None, Some(e.to_string())),
    }
}

pub fn analyze(raw: &str, output: OutputFormat) -> CommandResult {
    let loaded = load(raw)?;
    let (table, ambiguous) = resolve_table_for_analysis(&loaded);
    let deg = loaded.numerator.degree().unwrap_or(0);

    match output {
        OutputFormat::Json => {
            let telescopic = match &loaded.flags.telescopic {
                TelescopicStatus::Witness(w) => json!(w),
                TelescopicStatus::No => Value::Null,
                TelescopicStatus::Refused => json!("search-refused"),
            };
            emit_json(&json!({
                "command": "analyze",
                "generators": loaded.tuple.generators(),
                "embedding_dimension": loaded.tuple.embedding_dimension(),
                "sigma1": loaded.tuple.sigma1_u64(),
                "product": loaded.tuple.product().to_string(),
                "frobenius": loaded.profile.frobenius,
                "conductor": loaded.profile.conductor,
                "genus": loaded.profile.genus,
                "gaps": loaded.profile.gaps,
                "classification": {
                    "symmetric": loaded.flags.symmetric,
                    "pseudosymmetric": loaded.flags.pseudosymmetric,
                    "complete_intersection": loaded.flags.complete_intersection,
                    "telescopic": telescopic,
                    "med": loaded.flags.med,
                    "almost_symmetric_med": loaded.flags.almost_symmetric_med,
                },
                "numerator_degree": deg,
                "numerator": numerator_json(&loaded.numerator),
                "syzygy": syzygy_json(&table, ambiguous.as_deref()),
            }));
        }
        OutputFormat::Text => {
            let gens: Vec<String> =
                loaded.tuple.generators().iter().map(u64::to_string).collect();
            println!("generators: {}", gens.join(", "));
            println!("embedding dimension: {}", loaded.tuple.embedding_dimension());
            println!("sigma1: {}", loaded.tuple.sigma1_u64());
            println!("product: {}", loaded.tuple.product());
            println!("frobenius: {}", loaded.profile.frobenius);
            println!("conductor: {}", loaded.profile.conductor);
            println!("genus: {}", loaded.profile.genus);
            let gaps: Vec<String> = loaded.profile.gaps.iter().map(u64::to_string).collect();
            println!("gaps: {}", if gaps.is_empty() { "none".into() } else { gaps.join(", ") });
            let names = flag_names(&loaded.flags);
            println!("flags: {}", if names.is_empty() { "none".into() } else { names.join(", ") });
            match &loaded.flags.telescopic {
                TelescopicStatus::Witness(w) => {
                    let w: Vec<String> = w.iter().map(u64::to_string).collect();
                    println!("telescopic witness: ({})", w.join(", "));
                }
                TelescopicStatus::No => {}
                TelescopicStatus::Refused => {
                    println!("telescopic: search refused (more than 8 generators)")
                }
            }
            println!("numerator degree: {deg}");
            println!("numerator: {}", loaded.numerator);
            match (&table, &ambiguous) {
                (Some(t), _) => {
                    let provenance = match t.provenance() {
                        nsg_core::SyzygyProvenance::Extracted => "extracted",
                        nsg_core::SyzygyProvenance::Supplied => "supplied",
                        nsg_core::SyzygyProvenance::Constructed => "constructed",
                    };
                    let betti: Vec<String> = t.betti().iter().map(u64::to_string).collect();
                    println!("syzygy table ({provenance}): betti {}", betti.join(", "));
                    for (i, kind) in t.kinds().iter().enumerate() {
                        let ds: Vec<String> = kind.iter().map(u64::to_string).collect();
                        println!("  kind {}: {}", i + 1, ds.join(", "));
                    }
                }
                (None, Some(reason)) => println!("syzygy table: ambiguous ({reason})"),
                (None, None) => println!("syzygy table: ambiguous"),
            }
        }
    }
    Ok(0)
}

pub fn verify(
    raw: &str,
    table_path: Option<&Path>,
    families: Option<&str>,
    wave_max: Option<i64>,
    output: OutputFormat,
    parallelism: Option<usize>,
) -> CommandResult {
    let loaded = load(raw)?;
    if loaded.tuple.embedding_dimension() < 2 {
        return Err("verification needs at least two generators (the trivial semigroup carries \
             no syzygy identities)"
            .into());
    }

    let table = match table_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let file = SyzygyTableFile::parse(&text).map_err(|e| format!("bad table JSON: {e}"))?;
            Some(file.into_table(&loaded.tuple, &loaded.numerator).map_err(|e| e.to_string())?)
        }
        None => None,
    };

    let family_filter: Option<BTreeSet<Family>> = match families {
        None => None,
        Some(raw) => {
            let mut set = BTreeSet::new();
            for token in raw.split(',') {
                let parsed = Family::parse_filter(token)
                    .ok_or_else(|| format!("unknown family '{}'", token.trim()))?;
                set.extend(parsed);
            }
            Some(set)
        }
    };

    let options = VerifyOptions {
        families: family_filter,
        wave_s_max: wave_max,
        ..VerifyOptions::default()
    };
    let ctx = VerifyContext {
        tuple: &loaded.tuple,
        profile: &loaded.profile,
        flags: &loaded.flags,
        numerator: &loaded.numerator,
        table: table.as_ref(),
        options,
    };

    let parallelism = resolve_parallelism(parallelism)?;
    let plan = ctx.plan();
    let suites: Vec<Vec<nsg_core::IdentityCheck>> = if parallelism > 1 {
        thread_pool(parallelism)?.install(|| plan.par_iter().map(|item| ctx.run_suite(*item)).collect())
    } else {
        plan.iter().map(|item| ctx.run_suite(*item)).collect()
    };
    let mut report = IdentityReport::new();
    for suite in suites {
        report.extend(suite);
    }
    report.sort_canonical();

    let executed = report.theorem_checks_executed();
    let theorem_families_selected = match &ctx.options.families {
        None => true,
        Some(set) => set.contains(&Family::Theorem1) && set.contains(&Family::Theorem2),
    };
    let expected = theorem_families_selected.then(|| identity_count(&loaded.tuple));
    let count_match = expected.map(|n| n == executed);
    let mut exit: u8 = if report.all_passed() { 0 } else { 1 };
    if count_match == Some(false) {
        exit = exit.max(1);
    }

    match output {
        OutputFormat::Json => {
            let mut value = report_json(&report);
            let obj = value.as_object_mut().expect("report is an object");
            obj.insert("command".into(), json!("verify"));
            obj.insert("generators".into(), json!(loaded.tuple.generators()));
            obj.insert(
                "identity_count".into(),
                json!({
                    "expected": expected,
                    "executed": executed,
                    "match": count_match,
                }),
            );
            emit_json(&value);
        }
        OutputFormat::Text => {
            if report.checks.is_empty() {
                println!("no checks executed");
            } else {
                let rows = check_rows(&report);
                print!(
                    "{}",
                    render_table(
                        &["check", "params", "status", "expected", "actual", "residual"],
                        &rows
                    )
                );
            }
            match (expected, count_match) {
                (Some(n), Some(ok)) => println!(
                    "identity count: expected {n}, executed {executed}{}",
                    if ok { "" } else { "  MISMATCH" }
                ),
                _ => println!("identity count: executed {executed} (filtered run)"),
            }
            println!(
                "summary: passed {}, failed {}, skipped {}",
                report.passed(),
                report.failed(),
                report.skipped()
            );
        }
    }
    Ok(exit)
}

struct PartitionRow {
    s: i64,
    dp: Option<num_bigint::BigInt>,
    per_wave: Vec<(u64, BigRational)>,
    total: BigRational,
    matches: Option<bool>,
}

fn evaluate_rows(
    tuple: &GeneratorTuple,
    engine: &WaveEngine,
    lo: i64,
    hi: i64,
    with_dp: bool,
    parallelism: usize,
) -> Result<Vec<PartitionRow>, String> {
    let points: Vec<i64> = (lo..=hi).collect();
    let eval = |&s: &i64| -> PartitionRow {
        let per_wave = engine.per_wave(s);
        let total: BigRational = per_wave.iter().map(|(_, v)| v.clone()).sum();
        let dp = (with_dp && s >= 0).then(|| denumerant_dp(tuple, s as u64));
        let matches = dp.as_ref().map(|d| total == BigRational::from(d.clone()));
        PartitionRow { s, dp, per_wave, total, matches }
    };
    if parallelism > 1 {
        Ok(thread_pool(parallelism)?.install(|| points.par_iter().map(eval).collect()))
    } else {
        Ok(points.iter().map(eval).collect())
    }
}

fn partition_rows_json(rows: &[PartitionRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| {
                let waves: Vec<Value> = row
                    .per_wave
                    .iter()
                    .map(|(q, v)| json!([q, v.to_string()]))
                    .collect();
                json!({
                    "s": row.s,
                    "dp": row.dp.as_ref().map(|d| d.to_string()),
                    "waves": waves,
                    "total": row.total.to_string(),
                    "match": row.matches,
                })
            })
            .collect(),
    )
}

fn partition_table(rows: &[PartitionRow], moduli: &[u64]) -> String {
    let mut headers: Vec<String> = vec!["s".into(), "count".into()];
    headers.extend(moduli.iter().map(|q| format!("W_{q}")));
    headers.push("total".into());
    headers.push("match".into());
    let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();

    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            let mut cells = vec![
                row.s.to_string(),
                row.dp.as_ref().map_or("-".into(), |d| d.to_string()),
            ];
            cells.extend(row.per_wave.iter().map(|(_, v)| v.to_string()));
            cells.push(row.total.to_string());
            cells.push(match row.matches {
                Some(true) => "yes".into(),
                Some(false) => "NO".into(),
                None => "-".into(),
            });
            cells
        })
        .collect();
    render_table(&header_refs, &body)
}

pub fn partition(
    raw: &str,
    range: &str,
    waves_only: bool,
    output: OutputFormat,
    parallelism: Option<usize>,
) -> CommandResult {
    let gens = parse_generators(raw)?;
    let tuple = nsg_core::validate_generators(&gens).map_err(|e| e.to_string())?;
    let (lo, hi) = parse_range(range)?;
    if lo < 0 && !waves_only {
        return Err(
            "the dynamic program is undefined for negative s; pass --waves-only for the \
             quasipolynomial continuation"
                .into(),
        );
    }
    let parallelism = resolve_parallelism(parallelism)?;
    let engine = WaveEngine::new(&tuple).map_err(|e| e.to_string())?;
    let rows = evaluate_rows(&tuple, &engine, lo, hi, !waves_only, parallelism)?;
    let mismatch = rows.iter().any(|r| r.matches == Some(false));

    match output {
        OutputFormat::Json => {
            emit_json(&json!({
                "command": "partition",
                "generators": tuple.generators(),
                "range": {"from": lo, "to": hi},
                "waves_only": waves_only,
                "rows": partition_rows_json(&rows),
                "all_match": !mismatch,
            }));
        }
        OutputFormat::Text => {
            print!("{}", partition_table(&rows, &engine.moduli()));
            if !waves_only {
                println!("all match: {}", if mismatch { "NO" } else { "yes" });
            }
        }
    }
    Ok(u8::from(mismatch))
}

pub fn waves(
    raw: &str,
    range: &str,
    output: OutputFormat,
    parallelism: Option<usize>,
) -> CommandResult {
    let gens = parse_generators(raw)?;
    let tuple = nsg_core::validate_generators(&gens).map_err(|e| e.to_string())?;
    let (lo, hi) = parse_range(range)?;
    let parallelism = resolve_parallelism(parallelism)?;

    let wave1: Vec<String> = wave1_polynomial(&tuple).iter().map(|c| c.to_string()).collect();
    let mut per_q = Vec::new();
    for q in admissible_moduli(&tuple) {
        let spec = wave_spec(&tuple, q).map_err(|e| e.to_string())?;
        let mut components = Vec::new();
        if q == 2 {
            let wp = wave2_polynomial(&tuple).map_err(|e| e.to_string())?;
            components.push((1u64, wp));
        } else {
            for n in admissible_residues(q) {
                components.push((n, waveq_partial(&tuple, q, n).map_err(|e| e.to_string())?));
            }
        }
        per_q.push((spec, components));
    }

    let engine = WaveEngine::new(&tuple).map_err(|e| e.to_string())?;
    let rows = evaluate_rows(&tuple, &engine, lo, hi, false, parallelism)?;

    match output {
        OutputFormat::Json => {
            let waves_json: Vec<Value> = per_q
                .iter()
                .map(|(spec, components)| {
                    json!({
                        "q": spec.q,
                        "omega": spec.omega,
                        "xi_set": spec.xi_set,
                        "pi_omega": spec.pi_omega.to_string(),
                        "components": components
                            .iter()
                            .map(|(n, wp)| {
                                json!({
                                    "n": n,
                                    "l": wp.l_coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                                    "i_m": wp.im_coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                                })
                            })
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            emit_json(&json!({
                "command": "waves",
                "generators": tuple.generators(),
                "wave1": wave1,
                "waves": waves_json,
                "range": {"from": lo, "to": hi},
                "rows": partition_rows_json(&rows),
            }));
        }
        OutputFormat::Text => {
            println!("wave 1 coefficients (s^{} .. s^0): {}", tuple.embedding_dimension() - 1, wave1.join(", "));
            for (spec, components) in &per_q {
                let xi: Vec<String> = spec.xi_set.iter().map(u64::to_string).collect();
                println!("wave q={} (omega {}, divides {})", spec.q, spec.omega, xi.join(", "));
                for (n, wp) in components {
                    let l: Vec<String> = wp.l_coeffs().iter().map(|c| c.to_string()).collect();
                    println!("  n={n}: L = [{}]", l.join(", "));
                    if !wp.im_coeffs().is_empty() {
                        let im: Vec<String> = wp.im_coeffs().iter().map(|c| c.to_string()).collect();
                        println!("  n={n}: i*M = [{}]", im.join(", "));
                    }
                }
            }
            print!("{}", partition_table(&rows, &engine.moduli()));
        }
    }
    Ok(0)
}

pub fn count(raw: &str, output: OutputFormat) -> CommandResult {
    let gens = parse_generators(raw)?;
    let tuple = nsg_core::validate_generators(&gens).map_err(|e| e.to_string())?;
    let n = identity_count(&tuple);
    let m = tuple.embedding_dimension() as u64;

    let mut per_q = Vec::new();
    for q in admissible_moduli(&tuple) {
        let omega = tuple.generators().iter().filter(|&&d| d % q == 0).count() as u64;
        let residues = admissible_residues(q).len() as u64;
        per_q.push((q, omega, residues, omega * residues));
    }

    match output {
        OutputFormat::Json => {
            emit_json(&json!({
                "command": "count",
                "generators": tuple.generators(),
                "m": m,
                "per_q": per_q
                    .iter()
                    .map(|(q, omega, residues, checks)| {
                        json!({"q": q, "omega": omega, "residues": residues, "checks": checks})
                    })
                    .collect::<Vec<_>>(),
                "total": n,
            }));
        }
        OutputFormat::Text => {
            println!("power-sum identities: {m}");
            let rows: Vec<Vec<String>> = per_q
                .iter()
                .map(|(q, omega, residues, checks)| {
                    vec![q.to_string(), omega.to_string(), residues.to_string(), checks.to_string()]
                })
                .collect();
            print!("{}", render_table(&["q", "omega", "residues", "checks"], &rows));
            println!("total identities: {n}");
        }
    }
    Ok(0)
}
