use std::path::Path;

use anyhow::{bail, Context};
use minimal2::lie::lie_check_all_classes;
use minimal2::minimality::{census, falsify_odd_prime, is_minimal, recheck_entry, CensusEntry, Witness};
use minimal2::modcurve::genus;
use minimal2::subgroup::{OpenSubgroup, SubgroupSpec};
use serde::Serialize;
use serde_json::json;

use crate::config::{Command, RunConfig};
use crate::report::{Check, Report};
use crate::verify;

fn read_group(path: Option<&Path>) -> anyhow::Result<OpenSubgroup> {
    let Some(path) = path else { bail!("no group file given (--group)") };
    let src = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec: SubgroupSpec = serde_json::from_str(&src).with_context(|| format!("parsing {}", path.display()))?;
    Ok(OpenSubgroup::from_spec(&spec)?)
}

#[derive(Serialize)]
struct CsvRow<'a> {
    label: &'a str,
    level: u32,
    index: u64,
    genus: i64,
    contains_minus_i: bool,
    frattini_rank: usize,
    modulus: u32,
    generators: String,
    canonical_key: &'a str,
}

pub fn write_census_csv(entries: &[CensusEntry], path: &Path) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    for e in entries {
        let generators =
            e.group.generators.iter().map(|g| format!("{} {} {} {}", g[0], g[1], g[2], g[3])).collect::<Vec<_>>().join(";");
        w.serialize(CsvRow {
            label: &e.label,
            level: e.level,
            index: e.index,
            genus: e.genus,
            contains_minus_i: e.contains_minus_i,
            frattini_rank: e.frattini_rank,
            modulus: e.group.modulus,
            generators,
            canonical_key: &e.canonical_key,
        })?;
    }
    w.flush()?;
    Ok(())
}

fn run_census(cfg: &RunConfig) -> anyhow::Result<Report> {
    let res = census(&cfg.census_config())?;
    if let Some(path) = &cfg.csv {
        write_census_csv(&res.entries, path)?;
    }
    let mut failures = Vec::new();
    for e in &res.entries {
        let c = recheck_entry(e)?;
        if !(c.minimal && c.det_images_ok && c.genus_ok) {
            failures.push(e.label.clone());
        }
    }
    let checks = vec![Check::new(
        "entries_recheck",
        failures.is_empty(),
        format!("{} entries, {} failed the independent recheck", res.entries.len(), failures.len()),
    )
    .with_details(failures)];
    Ok(Report::new(cfg, checks, serde_json::to_value(res)?))
}

fn run_check(cfg: &RunConfig) -> anyhow::Result<Report> {
    let h = read_group(cfg.check.group.as_deref())?;
    let r = is_minimal(&h)?;
    let lifted = minimal2::minimality::at_modulus(&h, r.certifying_modulus)?;
    // A negative verdict must come with a witness that checks out.
    let witness_ok = match &r.witness {
        None => r.verdict,
        Some(Witness::FailedPrecondition { .. }) => !r.verdict && (!r.det_surjective || !r.is_two_group),
        Some(Witness::MaximalSubgroup { subgroup, .. }) => {
            let k = OpenSubgroup::from_spec(subgroup)?;
            let k = minimal2::minimality::at_modulus(&k, lifted.modulus())?;
            !r.verdict && k.is_subgroup_of(&lifted) && k.order() < lifted.order() && k.det_surjective_2adic()?
        }
    };
    let label = if r.det_surjective { Some(minimal2::modcurve::label_string(&h)?) } else { None };
    let checks = vec![Check::new(
        "witness",
        witness_ok,
        format!("minimal: {}; level {}; frattini rank {:?}", r.verdict, r.level, r.frattini_rank),
    )];
    Ok(Report::new(cfg, checks, json!({ "label": label, "index": h.index(), "minimality": r })))
}

fn run_genus(cfg: &RunConfig) -> anyhow::Result<Report> {
    let h = read_group(cfg.check.group.as_deref())?;
    let g = genus(&h)?;
    let checks = vec![Check::new(
        "integrality",
        g.integrality_holds(),
        format!("genus {} (m={}, nu2={}, nu3={}, cusps={})", g.genus, g.psl_index, g.nu2, g.nu3, g.cusps),
    )];
    Ok(Report::new(cfg, checks, json!({ "level": h.level(), "index": h.index(), "genus": g })))
}

fn run_lie(cfg: &RunConfig) -> anyhow::Result<Report> {
    let records = lie_check_all_classes(cfg.seed, cfg.lie.max_retries);
    let summary = verify::lie_classes_from(&records);
    Ok(Report::new(cfg, vec![summary], json!({ "records": records.unwrap_or_default() })))
}

fn run_falsify(cfg: &RunConfig) -> anyhow::Result<Report> {
    let reports: Vec<_> = cfg.falsify.primes.iter().map(|&p| (p, falsify_odd_prime(p, cfg.seed))).collect();
    let check = verify::odd_prime_falsification_from(&reports);
    let ok: Vec<_> = reports.into_iter().filter_map(|(_, r)| r.ok()).collect();
    Ok(Report::new(cfg, vec![check], serde_json::to_value(ok)?))
}

/// Dispatches on `cfg.command`.
pub fn run(cfg: &RunConfig) -> anyhow::Result<Report> {
    cfg.validate()?;
    let start = std::time::Instant::now();
    let mut report = match cfg.command {
        Command::Census => run_census(cfg)?,
        Command::Check => run_check(cfg)?,
        Command::Genus => run_genus(cfg)?,
        Command::LieCheck => run_lie(cfg)?,
        Command::Falsify => run_falsify(cfg)?,
        Command::Quadfamily => {
            let mut c = verify::quadratic_family(cfg.quadfamily.n_max);
            let results = c.details.take();
            Report::new(cfg, vec![c], results)
        }
        Command::FamilyCheck => {
            let mut c = verify::family_identities(cfg);
            let results = c.details.take();
            Report::new(cfg, vec![c], results)
        }
        Command::VerifyAll => {
            let checks = verify::verify_all(cfg);
            Report::new(cfg, checks, json!({ "profile": cfg.verify.profile }))
        }
    };
    if cfg.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}
