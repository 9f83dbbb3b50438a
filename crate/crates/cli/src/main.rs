use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use minimal2::minimality::Descent;
use minimal2_cli::{run, Command, Profile, RunConfig};

#[derive(Parser)]
#[command(name = "minimal2", version, about = "Minimal open subgroups of GL2(Z_2): census, checks and reports")]
struct Cli {
    /// TOML run configuration; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Conjugacy classes of minimal subgroups up to a level bound.
    Census {
        #[arg(long)]
        level_bound: Option<u32>,
        #[arg(long, conflicts_with = "no_index_bound")]
        index_bound: Option<u64>,
        /// Search every index.
        #[arg(long)]
        no_index_bound: bool,
        #[arg(long)]
        genus: Option<i64>,
        /// Descend by index-2 subgroups instead of Frattini complements.
        #[arg(long)]
        index_two: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Decide minimality of a subgroup given as JSON.
    Check {
        #[arg(long)]
        group: Option<PathBuf>,
    },
    /// Genus of the modular curve of a subgroup given as JSON.
    Genus {
        #[arg(long)]
        group: Option<PathBuf>,
    },
    /// The determinant test on all 96² pairs of classes mod 4.
    LieCheck {
        #[arg(long)]
        max_retries: Option<u32>,
    },
    /// Non-minimality witnesses at odd primes.
    Falsify {
        #[arg(long = "prime")]
        primes: Vec<u32>,
    },
    /// The curves y² = x³ + 2ax² + (a² + 1)x with a² = −(2ⁿ + 1).
    Quadfamily {
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Twist and isogeny relations of a tabulated family.
    FamilyCheck {
        #[arg(long = "label")]
        labels: Vec<String>,
        #[arg(long)]
        primes: Option<usize>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Every check; `extended` adds the level-128 census.
    VerifyAll {
        #[arg(long, value_enum)]
        profile: Option<Profile>,
    },
}

fn build_config(cli: Cli) -> anyhow::Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = cli.out {
        cfg.out = Some(out);
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    cfg.timing |= cli.timing;
    match cli.cmd {
        None if cli.config.is_none() => anyhow::bail!("give a subcommand or --config"),
        None => {}
        Some(Cmd::Census { level_bound, index_bound, no_index_bound, genus, index_two, csv }) => {
            cfg.command = Command::Census;
            if let Some(l) = level_bound {
                cfg.census.level_bound = l;
            }
            if index_bound.is_some() {
                cfg.census.index_bound = index_bound;
            }
            if no_index_bound {
                cfg.census.index_bound = None;
            }
            if genus.is_some() {
                cfg.census.genus = genus;
            }
            if index_two {
                cfg.census.descent = Descent::IndexTwo;
            }
            if csv.is_some() {
                cfg.csv = csv;
            }
        }
        Some(Cmd::Check { group }) => {
            cfg.command = Command::Check;
            cfg.check.group = group.or(cfg.check.group);
        }
        Some(Cmd::Genus { group }) => {
            cfg.command = Command::Genus;
            cfg.check.group = group.or(cfg.check.group);
        }
        Some(Cmd::LieCheck { max_retries }) => {
            cfg.command = Command::LieCheck;
            if let Some(r) = max_retries {
                cfg.lie.max_retries = r;
            }
        }
        Some(Cmd::Falsify { primes }) => {
            cfg.command = Command::Falsify;
            if !primes.is_empty() {
                cfg.falsify.primes = primes;
            }
        }
        Some(Cmd::Quadfamily { n_max }) => {
            cfg.command = Command::Quadfamily;
            if let Some(n) = n_max {
                cfg.quadfamily.n_max = n;
            }
        }
        Some(Cmd::FamilyCheck { labels, primes, points }) => {
            cfg.command = Command::FamilyCheck;
            if !labels.is_empty() {
                cfg.family.labels = labels;
            }
            if let Some(p) = primes {
                cfg.family.primes = p;
            }
            if let Some(p) = points {
                cfg.family.points_per_prime = p;
            }
        }
        Some(Cmd::VerifyAll { profile }) => {
            cfg.command = Command::VerifyAll;
            if let Some(p) = profile {
                cfg.verify.profile = p;
            }
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build_config(cli).and_then(|cfg| {
        let report = run(&cfg)?;
        let json = report.to_json();
        match &cfg.out {
            Some(path) => std::fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{json}"),
        }
        for c in &report.checks {
            eprintln!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.summary);
        }
        Ok(report.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
