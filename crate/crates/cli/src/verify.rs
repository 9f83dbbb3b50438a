//! The end-to-end checks behind `verify-all`. Each returns one [`Check`].

use std::collections::BTreeMap;
use std::time::Instant;

use minimal2::ellcurve::{family_identity_check, quadfamily_check, FamilyTable};
use minimal2::error::{LieError, SearchError};
use minimal2::lie::{lie_check_all_classes, round_trip_check, LieCheckRecord};
use minimal2::minimality::{
    census, falsify_odd_prime, lemma_det_mod8_certifies, lemma_non_two_group_witness, nilpotent_det_squares,
    recheck_entry, CensusConfig, CensusEntry, FalsifyReport,
};
use minimal2::modarith::ResidueMatrix;
use minimal2::modcurve::{genus, genus_with_formula, GenusData};
use minimal2::subgroup::{subgroup_classes, OpenSubgroup};
use serde::Serialize;
use serde_json::json;

use crate::config::{Profile, RunConfig};
use crate::report::Check;

/// The 7652 minimal classes of level at most 128.
pub const EXTENDED_CENSUS_COUNT: usize = 7652;

/// Runs `f`, filling in `elapsed_ms` when timing is on.
pub fn timed(timing: bool, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let mut c = f();
    if timing {
        c.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    c
}

fn label_counts(entries: &[CensusEntry]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for e in entries {
        *m.entry(format!("{}.{}", e.level, e.index)).or_insert(0) += 1;
    }
    m
}

pub fn lemma_oracles() -> Check {
    let a = lemma_det_mod8_certifies(6);
    let b = match lemma_non_two_group_witness() {
        Ok(b) => b,
        Err(e) => return Check::error("lemma_oracles", e),
    };
    let passed = a.passed() && b.passed();
    Check::new(
        "lemma_oracles",
        passed,
        format!("{}: {} cases, {} failures; {}: {} cases, {} failures", a.name, a.cases, a.failures.len(), b.name, b.cases, b.failures.len()),
    )
    .with_details([a, b])
}

/// The genus-0 census with index at most 96 and level at most 64.
pub fn genus0_census_config(seed: u64) -> CensusConfig {
    CensusConfig { level_bound: 64, index_bound: Some(96), genus: Some(0), seed, ..Default::default() }
}

pub fn genus0_census(entries: &[CensusEntry]) -> Check {
    let counts = label_counts(entries);
    let want: BTreeMap<String, usize> = [("8.24", 4), ("16.48", 8), ("32.96", 16)].into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    let genus_ok = entries.iter().all(|e| e.genus == 0);
    let no_minus_i = entries.iter().all(|e| !e.contains_minus_i);
    let passed = entries.len() == 28 && counts == want && genus_ok && no_minus_i;
    Check::new(
        "genus0_census",
        passed,
        format!("{} classes {:?}; all genus 0: {genus_ok}; none contain -I: {no_minus_i}", entries.len(), counts),
    )
    .with_details(json!({ "counts": counts }))
}

/// Every minimal class of level at most `level_bound`, any index.
pub fn extended_census(level_bound: u32, seed: u64) -> Check {
    let cfg = CensusConfig { level_bound, index_bound: None, seed, ..Default::default() };
    let res = match census(&cfg) {
        Ok(r) => r,
        Err(e) => return Check::error("extended_census", e),
    };
    let within_96 = res.entries.iter().filter(|e| e.index <= 96).count();
    let with_minus_i = res.entries.iter().filter(|e| e.contains_minus_i).count();
    let genus0 = res.entries.iter().filter(|e| e.genus == 0).count();
    let total = res.entries.len();
    let passed = level_bound != 128 || total == EXTENDED_CENSUS_COUNT;
    Check::new(
        "extended_census",
        passed,
        format!(
            "level <= {level_bound}: {total} minimal classes (expected {EXTENDED_CENSUS_COUNT} at level 128), {within_96} of index <= 96, {genus0} of genus 0, {with_minus_i} containing -I"
        ),
    )
    .with_details(json!({
        "classes": total,
        "index_at_most_96": within_96,
        "genus_0": genus0,
        "containing_minus_i": with_minus_i,
        "nodes_processed": res.nodes_processed,
        "nodes_per_index": res.nodes_per_index,
        "counts": label_counts(&res.entries),
    }))
}

pub fn lie_classes(seed: u64, max_retries: u32) -> Check {
    lie_classes_from(&lie_check_all_classes(seed, max_retries))
}

pub fn lie_classes_from(records: &Result<Vec<LieCheckRecord>, LieError>) -> Check {
    match records {
        Ok(records) => {
            let min_v = records.iter().map(|r| r.valuation).min().unwrap_or(0);
            let max_v = records.iter().map(|r| r.valuation).max().unwrap_or(0);
            let retries: u32 = records.iter().map(|r| r.retries).sum();
            let mut hist = BTreeMap::new();
            for r in records {
                *hist.entry(r.valuation).or_insert(0usize) += 1;
            }
            Check::new(
                "lie_classes",
                records.len() == 96 * 96,
                format!("{} classes accepted; valuation of d min {min_v} max {max_v}; {retries} retries", records.len()),
            )
            .with_details(json!({ "valuation_histogram": hist, "total_retries": retries }))
        }
        Err(e) => Check::error("lie_classes", e),
    }
}

pub fn odd_prime_falsification(primes: &[u32], seed: u64) -> Check {
    let reports: Vec<_> = primes.iter().map(|&p| (p, falsify_odd_prime(p, seed))).collect();
    odd_prime_falsification_from(&reports)
}

pub fn odd_prime_falsification_from(reports: &[(u32, Result<FalsifyReport, SearchError>)]) -> Check {
    let mut parts = Vec::new();
    let mut details = Vec::new();
    let mut passed = true;
    for (p, r) in reports {
        match r {
            Ok(r) => {
                let ok = r.minimal_count == 0 && r.witnesses.len() == r.det_surjective_classes;
                passed &= ok;
                parts.push(format!(
                    "p={p}: {} of {} classes det-surjective, {} witnesses, {} minimal",
                    r.det_surjective_classes,
                    r.classes_total,
                    r.witnesses.len(),
                    r.minimal_count
                ));
                let mut strategies = BTreeMap::new();
                for w in &r.witnesses {
                    *strategies.entry(format!("{:?}", w.strategy)).or_insert(0usize) += 1;
                }
                details.push(json!({ "prime": p, "classes": r.classes_total, "det_surjective": r.det_surjective_classes, "minimal": r.minimal_count, "strategies": strategies }));
            }
            Err(e) => return Check::error("odd_prime_falsification", format!("p={p}: {e}")),
        }
    }
    Check::new("odd_prime_falsification", passed, parts.join("; ")).with_details(details)
}

pub fn nilpotency_squares() -> Check {
    match nilpotent_det_squares(3) {
        Ok(r) => Check::new(
            "nilpotency_squares",
            r.violations.is_empty() && r.subgroups_tested > 0 && r.nilpotent > 0,
            format!("{} subgroups mod 9 over the kernel, {} nilpotent, {} with non-square det", r.subgroups_tested, r.nilpotent, r.violations.len()),
        )
        .with_details(r),
        Err(e) => Check::error("nilpotency_squares", e),
    }
}

pub fn quadratic_family(n_max: u32) -> Check {
    let mut records = Vec::new();
    for n in 1..=n_max {
        match quadfamily_check(n) {
            Ok(r) => records.push(r),
            Err(e) => return Check::error("quadratic_family", format!("n={n}: {e}")),
        }
    }
    let mut failures = Vec::new();
    for r in &records {
        if !r.discriminant_ok {
            failures.push(format!("n={}: discriminant {}", r.n, r.discriminant));
        }
        if r.gaussian != (r.n == 3) {
            failures.push(format!("n={}: Q(i) flag", r.n));
        }
        if r.n % 2 == 1 && !r.conic_solvable {
            failures.push(format!("n={}: t^2+1=-2u^2 unsolvable", r.n));
        }
        if r.n == 10 && r.twist_j != format!("{}/256", 257u64.pow(3)) {
            failures.push(format!("n=10: j = {}", r.twist_j));
        }
        if r.n == 2 && (r.twist_a.as_str(), r.twist_b.as_str()) != ("-10", "20") {
            failures.push(format!("n=2: twist ({}, {})", r.twist_a, r.twist_b));
        }
    }
    Check::new(
        "quadratic_family",
        failures.is_empty(),
        if failures.is_empty() { format!("n = 1..{n_max}: all identities exact") } else { failures.join("; ") },
    )
    .with_details(records)
}

pub fn lie_round_trip(seed: u64, trials: usize) -> Check {
    let r = round_trip_check(seed, trials);
    Check::new(
        "lie_round_trip",
        r.failures == 0 && r.trials > 0,
        format!("{} trials, {} failures, min log precision {}", r.trials, r.failures, r.min_log_precision),
    )
    .with_details(r)
}

pub fn frattini_rank_of_entries(entries: &[CensusEntry]) -> Check {
    let mut failures = Vec::new();
    for e in entries {
        match recheck_entry(e) {
            Ok(c) if c.minimal && c.frattini_rank == 2 && c.det_images_ok => {}
            Ok(c) => failures.push(format!("{} ({}): rank {}, det images {:?}", e.label, &e.canonical_key[..12], c.frattini_rank, c.maximal_det_images)),
            Err(err) => failures.push(format!("{}: {err}", e.label)),
        }
    }
    Check::new(
        "frattini_rank",
        failures.is_empty() && !entries.is_empty(),
        format!("{} entries rechecked, {} failures", entries.len(), failures.len()),
    )
    .with_details(failures)
}

pub fn family_identities(cfg: &RunConfig) -> Check {
    let table = match FamilyTable::builtin() {
        Ok(t) => t,
        Err(e) => return Check::error("family_identities", e),
    };
    let labels: Vec<String> =
        if cfg.family.labels.is_empty() { table.families.iter().map(|f| f.label.clone()).collect() } else { cfg.family.labels.clone() };
    let mut reports = Vec::new();
    for l in &labels {
        let Some(spec) = table.get(l) else {
            return Check::error("family_identities", format!("no family labelled {l}"));
        };
        match family_identity_check(spec, &cfg.family_config()) {
            Ok(r) => reports.push(r),
            Err(e) => return Check::error("family_identities", format!("{l}: {e}")),
        }
    }
    let passed = reports.iter().all(|r| r.passed);
    let summary = reports
        .iter()
        .map(|r| format!("{}: {}/{} nonsingular, {} counterexamples", r.label, r.nonsingular, r.specializations, r.counterexamples.len()))
        .collect::<Vec<_>>()
        .join("; ");
    Check::new("family_identities", passed, summary).with_details(reports)
}

fn wrong_twelve_genus(m: u64, nu2: u64, nu3: u64, c: u64) -> i64 {
    12 + m as i64 - 3 * nu2 as i64 - 4 * nu3 as i64 - 4 * c as i64
}

#[derive(Serialize)]
struct ClassicalCurve {
    name: &'static str,
    data: GenusData,
}

/// Classical values, the integrality identity on every census entry and on
/// every det-surjective subgroup class mod 3, 4 and 5, and a tampered
/// formula that must be rejected.
pub fn genus_oracle(entries: &[CensusEntry]) -> Check {
    let run = || -> Result<Check, minimal2::error::GroupError> {
        let m = |n, a, b, c, d| ResidueMatrix::new(n, a, b, c, d);
        let x1 = genus(&OpenSubgroup::full(2)?)?;
        let x0_2 = genus(&OpenSubgroup::closure(&[m(2, 1, 1, 0, 1)?], 2)?)?;
        let x2 = genus(&OpenSubgroup::closure(&[], 2)?)?;
        let classical_ok = (x1.psl_index, x1.genus) == (1, 0)
            && (x0_2.psl_index, x0_2.cusps, x0_2.genus) == (3, 2, 0)
            && (x2.psl_index, x2.cusps, x2.genus) == (6, 3, 0);
        let mut groups = 0;
        let mut failures = Vec::new();
        for e in entries {
            let g = genus(&e.subgroup()?)?;
            groups += 1;
            if !g.integrality_holds() || g.genus != e.genus {
                failures.push(e.label.clone());
            }
        }
        for n in [3u32, 4, 5] {
            let units = (1..n).filter(|u| u % 2 == 1 || n % 2 == 1).count();
            for h in subgroup_classes(n)? {
                if h.det_image(n)?.len() != units {
                    continue;
                }
                groups += 1;
                if !genus(&h)?.integrality_holds() {
                    failures.push(format!("{:?}", h.to_spec()));
                }
            }
        }
        let x0_2_group = OpenSubgroup::closure(&[m(2, 1, 1, 0, 1)?], 2)?;
        let tamper_caught = genus_with_formula(&x0_2_group, wrong_twelve_genus).is_err();
        let passed = classical_ok && failures.is_empty() && tamper_caught;
        Ok(Check::new(
            "genus_oracle",
            passed,
            format!(
                "X(1), X0(2), X(2) genus {}, {}, {}; integrality on {groups} groups, {} failures; tampered formula rejected: {tamper_caught}",
                x1.genus,
                x0_2.genus,
                x2.genus,
                failures.len()
            ),
        )
        .with_details(json!({
            "classical": [
                ClassicalCurve { name: "X(1)", data: x1 },
                ClassicalCurve { name: "X0(2)", data: x0_2 },
                ClassicalCurve { name: "X(2)", data: x2 },
            ],
            "failures": failures,
        })))
    };
    run().unwrap_or_else(|e| Check::error("genus_oracle", e))
}

/// Every check of the profile, lemma oracles first. If those fail the rest
/// is not attempted.
pub fn verify_all(cfg: &RunConfig) -> Vec<Check> {
    let t = cfg.timing;
    let mut checks = vec![timed(t, lemma_oracles)];
    if !checks[0].passed {
        return checks;
    }
    let mut entries = Vec::new();
    checks.push(timed(t, || match census(&genus0_census_config(cfg.seed)) {
        Ok(r) => {
            entries = r.entries;
            genus0_census(&entries)
        }
        Err(e) => Check::error("genus0_census", e),
    }));
    if cfg.verify.profile == Profile::Extended {
        checks.push(timed(t, || extended_census(cfg.verify.extended_level_bound, cfg.seed)));
    }
    checks.push(timed(t, || lie_classes(cfg.seed, cfg.lie.max_retries)));
    checks.push(timed(t, || odd_prime_falsification(&cfg.falsify.primes, cfg.seed)));
    checks.push(timed(t, nilpotency_squares));
    checks.push(timed(t, || quadratic_family(cfg.quadfamily.n_max)));
    checks.push(timed(t, || lie_round_trip(cfg.seed, cfg.lie.round_trip_trials)));
    checks.push(timed(t, || frattini_rank_of_entries(&entries)));
    checks.push(timed(t, || family_identities(cfg)));
    checks.push(timed(t, || genus_oracle(&entries)));
    checks
}
