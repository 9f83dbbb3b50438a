use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use minimal2::ellcurve::family::FamilyCheckConfig;
use minimal2::lie::DEFAULT_MAX_RETRIES;
use minimal2::minimality::CensusConfig;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Census,
    Check,
    Genus,
    LieCheck,
    Falsify,
    Quadfamily,
    FamilyCheck,
    #[default]
    VerifyAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Census => "census",
            Command::Check => "check",
            Command::Genus => "genus",
            Command::LieCheck => "lie-check",
            Command::Falsify => "falsify",
            Command::Quadfamily => "quadfamily",
            Command::FamilyCheck => "family-check",
            Command::VerifyAll => "verify-all",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    /// Every check except the level-128 census.
    #[default]
    Desk,
    /// Adds the level-128 census with unbounded index.
    Extended,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CheckOptions {
    /// JSON file holding a subgroup spec.
    pub group: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LieOptions {
    pub max_retries: u32,
    pub round_trip_trials: usize,
}

impl Default for LieOptions {
    fn default() -> Self {
        LieOptions { max_retries: DEFAULT_MAX_RETRIES, round_trip_trials: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FalsifyOptions {
    pub primes: Vec<u32>,
}

impl Default for FalsifyOptions {
    fn default() -> Self {
        FalsifyOptions { primes: vec![3, 5] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadOptions {
    pub n_max: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { n_max: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FamilyOptions {
    /// Empty means every tabulated family.
    pub labels: Vec<String>,
    pub primes: usize,
    pub points_per_prime: usize,
    pub prime_floor: u64,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        let d = FamilyCheckConfig::default();
        FamilyOptions { labels: Vec::new(), primes: d.primes, points_per_prime: d.points_per_prime, prime_floor: d.prime_floor }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyOptions {
    pub profile: Profile,
    /// Level bound of the extended census.
    pub extended_level_bound: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { profile: Profile::Desk, extended_level_bound: 128 }
    }
}

/// Everything a run needs. Read from TOML, then overridden by command-line
/// flags. The run seed replaces the seeds of the sub-configurations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub out: Option<PathBuf>,
    /// CSV export of census entries.
    pub csv: Option<PathBuf>,
    /// Include wall-clock timings in the report (breaks byte-identity).
    pub timing: bool,
    pub census: CensusConfig,
    pub check: CheckOptions,
    pub lie: LieOptions,
    pub falsify: FalsifyOptions,
    pub quadfamily: QuadOptions,
    pub family: FamilyOptions,
    pub verify: VerifyOptions,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::default(),
            seed: 0,
            out: None,
            csv: None,
            timing: false,
            census: CensusConfig::default(),
            check: CheckOptions::default(),
            lie: LieOptions::default(),
            falsify: FalsifyOptions::default(),
            quadfamily: QuadOptions::default(),
            family: FamilyOptions::default(),
            verify: VerifyOptions::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(src: &str) -> anyhow::Result<Self> {
        let cfg: RunConfig = toml::from_str(src).context("invalid run config")?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let src = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_toml(&src)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        let c = &self.census;
        if c.level_bound == 0 || c.index_bound == Some(0) {
            bail!("census bounds must be positive");
        }
        if c.element_budget == 0 || c.orbit_budget == 0 || c.node_budget == 0 {
            bail!("census budgets must be positive");
        }
        if self.lie.max_retries == 0 || self.lie.round_trip_trials == 0 {
            bail!("lie retries and trials must be positive");
        }
        if self.falsify.primes.is_empty() {
            bail!("falsify needs at least one prime");
        }
        if let Some(p) = self.falsify.primes.iter().find(|&&p| p < 3 || !minimal2::modarith::is_prime(p.into())) {
            bail!("{p} is not an odd prime");
        }
        if self.falsify.primes.iter().any(|&p| p * p > minimal2::modarith::MAX_PACKED_MODULUS) {
            bail!("falsify primes must satisfy p² ≤ {}", minimal2::modarith::MAX_PACKED_MODULUS);
        }
        if self.quadfamily.n_max == 0 || self.quadfamily.n_max > 60 {
            bail!("quadfamily n_max must lie in 1..=60");
        }
        if self.family.primes == 0 || self.family.points_per_prime == 0 {
            bail!("family check needs at least one prime and one point");
        }
        if self.verify.extended_level_bound == 0 {
            bail!("extended level bound must be positive");
        }
        Ok(())
    }

    pub fn census_config(&self) -> CensusConfig {
        CensusConfig { seed: self.seed, ..self.census.clone() }
    }

    pub fn family_config(&self) -> FamilyCheckConfig {
        FamilyCheckConfig {
            primes: self.family.primes,
            points_per_prime: self.family.points_per_prime,
            prime_floor: self.family.prime_floor,
            seed: self.seed,
        }
    }
}
