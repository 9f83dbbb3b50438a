//! Acceptance suite: one PASS/FAIL line per criterion. Criterion 2 (the
//! level-128 census over every index) is hours-scale and runs only with
//! `--ignored`/`--include-ignored` or `MINIMAL2_EXTENDED=1`.

use std::time::{Duration, Instant};

use minimal2_cli::verify;
use minimal2_cli::{Check, RunConfig};

const SEED: u64 = 0;

struct Outcome {
    number: u32,
    status: &'static str,
    line: String,
}

fn judge(number: u32, check: Check, elapsed: Duration, budget: Duration) -> Outcome {
    let in_budget = elapsed <= budget;
    let status = if check.passed && in_budget { "PASS" } else { "FAIL" };
    let line = format!(
        "{} [{:.1}s, budget {}s{}]",
        check.summary,
        elapsed.as_secs_f64(),
        budget.as_secs(),
        if in_budget { "" } else { ", over budget" }
    );
    Outcome { number, status, line }
}

fn run(number: u32, budget_secs: u64, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let check = f();
    judge(number, check, start.elapsed(), Duration::from_secs(budget_secs))
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    // Listing mode used by `cargo test -- --list`.
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let extended = args.iter().any(|a| a == "--ignored" || a == "--include-ignored")
        || std::env::var("MINIMAL2_EXTENDED").is_ok_and(|v| v == "1");
    let cfg = RunConfig::default();
    let mut out = Vec::new();

    // Lemma oracles gate the rest.
    let lemmas = run(11, 300, verify::lemma_oracles);
    let gate = lemmas.status == "PASS";
    out.push(lemmas);

    if gate {
        let start = Instant::now();
        let census = minimal2::minimality::census(&verify::genus0_census_config(SEED));
        let census_time = start.elapsed();
        let entries = match census {
            Ok(r) => r.entries,
            Err(e) => {
                out.push(Outcome { number: 1, status: "FAIL", line: format!("census error: {e}") });
                Vec::new()
            }
        };
        if !entries.is_empty() {
            out.push(judge(1, verify::genus0_census(&entries), census_time, Duration::from_secs(600)));
        }
        if extended {
            out.push(run(2, 6 * 3600, || verify::extended_census(128, SEED)));
        } else {
            out.push(Outcome {
                number: 2,
                status: "SKIP",
                line: "extended level-128 census not run; pass --ignored or set MINIMAL2_EXTENDED=1".into(),
            });
        }
        out.push(run(3, 120, || verify::lie_classes(SEED, cfg.lie.max_retries)));
        out.push(run(4, 300, || verify::odd_prime_falsification(&[3, 5], SEED)));
        out.push(run(5, 300, verify::nilpotency_squares));
        out.push(run(6, 1, || verify::quadratic_family(20)));
        out.push(run(7, 300, || verify::lie_round_trip(SEED, 10_000)));
        out.push(run(8, 300, || verify::frattini_rank_of_entries(&entries)));
        out.push(run(9, 600, || verify::family_identities(&cfg)));
        out.push(run(10, 300, || verify::genus_oracle(&entries)));
    }

    out.sort_by_key(|o| o.number);
    let mut failed = 0;
    for o in &out {
        eprintln!("criterion {:>2}: {} {}", o.number, o.status, o.line);
        failed += usize::from(o.status == "FAIL");
    }
    if !gate {
        eprintln!("criteria 1-10 not run: lemma oracles failed");
        failed += 1;
    }
    eprintln!("acceptance: {} failed", failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
