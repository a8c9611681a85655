//! Verification campaigns over families of torsion profiles.
//!
//! Profiles are enumerated lexicographically over the (sorted, deduplicated)
//! torsion alphabet, last entry varying fastest. Sampled mode draws every
//! entry uniformly from the alphabet with a ChaCha8 generator seeded by
//! `seed_from_u64(seed)`; one generator serves the whole genus range in
//! increasing genus order, `count` profiles per genus, entries `m_2..m_g` in
//! order, each drawn as `gen_range(0..alphabet.len())`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::TorsionProfile;
use crate::error::{Error, Result};
use crate::invariants::{clifford_index, gonality, CliffordValue};
use crate::io::{CliffordField, TableauDocument};
use crate::reduction::reduce_to_rank_one;
use crate::search::{enumerate_tableaux, find_tableau, SearchBudget};
use crate::tableau::validate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Genus 3 with no eligible class; the convention value was used.
    EmptySet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub degree: i64,
    pub rank: i64,
    pub tableau: TableauDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub gonality_witness: Witness,
    pub clifford_witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub genus: usize,
    pub torsion: Vec<u32>,
    pub gonality: u32,
    pub clifford: CliffordField,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
}

/// Computes gonality and Clifford index and checks `Cliff = gon - 2`.
pub fn check_clifford_gonality(profile: &TorsionProfile) -> Result<VerificationRecord> {
    let g = profile.genus();
    if g < 3 {
        return Err(Error::GenusTooSmall { genus: g, min: 3 });
    }
    let gon = gonality(profile)?;
    let cliff = clifford_index(profile)?;
    let verdict = match cliff.value {
        CliffordValue::Value(c) if c + 2 == gon.value => Verdict::Pass,
        CliffordValue::EmptySet { .. } if g == 3 => Verdict::EmptySet,
        _ => Verdict::Fail,
    };
    let counterexample = (verdict == Verdict::Fail).then(|| Counterexample {
        gonality_witness: Witness {
            degree: gon.value as i64,
            rank: 1,
            tableau: TableauDocument::from(&gon.witness),
        },
        clifford_witness: cliff.witness.as_ref().map(|(d, r, t)| Witness {
            degree: *d,
            rank: *r,
            tableau: TableauDocument::from(t),
        }),
    });
    Ok(VerificationRecord {
        genus: g,
        torsion: profile.entries().to_vec(),
        gonality: gon.value,
        clifford: cliff.value.into(),
        verdict,
        counterexample,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub genus_min: usize,
    pub genus_max: usize,
    pub alphabet: Vec<u32>,
    pub mode: SweepMode,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
}

impl SweepConfig {
    pub fn exhaustive(genus_min: usize, genus_max: usize, alphabet: &[u32]) -> Self {
        SweepConfig {
            genus_min,
            genus_max,
            alphabet: alphabet.to_vec(),
            mode: SweepMode::Exhaustive,
            jobs: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus_min < 3 {
            return Err(Error::Config(format!("genus-min {} is below 3", self.genus_min)));
        }
        if self.genus_min > self.genus_max {
            return Err(Error::Config(format!(
                "empty genus range {}..={}",
                self.genus_min, self.genus_max
            )));
        }
        if self.alphabet.is_empty() {
            return Err(Error::Config("empty torsion alphabet".into()));
        }
        if self.alphabet.contains(&1) {
            return Err(Error::Config("torsion value 1 is not allowed".into()));
        }
        if let SweepMode::Sampled { count: 0, .. } = self.mode {
            return Err(Error::Config("sample count must be at least 1".into()));
        }
        Ok(())
    }

    pub fn profiles(&self) -> Result<Vec<TorsionProfile>> {
        self.validate()?;
        let genera = self.genus_min..=self.genus_max;
        match self.mode {
            SweepMode::Exhaustive => {
                let mut out = Vec::new();
                for g in genera {
                    out.extend(all_profiles(g, &self.alphabet)?);
                }
                Ok(out)
            }
            SweepMode::Sampled { count, seed } => sample_profiles(genera, &self.alphabet, count, seed),
        }
    }
}

fn normalized(alphabet: &[u32]) -> Vec<u32> {
    let mut a = alphabet.to_vec();
    a.sort_unstable();
    a.dedup();
    a
}

/// Every profile of genus `g` with entries from `alphabet`, lexicographically.
pub fn all_profiles(g: usize, alphabet: &[u32]) -> Result<Vec<TorsionProfile>> {
    let alphabet = normalized(alphabet);
    let slots = g.saturating_sub(1);
    let mut idx = vec![0usize; slots];
    let mut out = Vec::new();
    loop {
        out.push(TorsionProfile::new(g, idx.iter().map(|&i| alphabet[i]).collect())?);
        // odometer, last slot fastest
        let mut pos = slots;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < alphabet.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Seeded uniform samples; see the module docs for the exact draw order.
pub fn sample_profiles(
    genera: impl IntoIterator<Item = usize>,
    alphabet: &[u32],
    count: usize,
    seed: u64,
) -> Result<Vec<TorsionProfile>> {
    let alphabet = normalized(alphabet);
    if alphabet.is_empty() {
        return Err(Error::Config("empty torsion alphabet".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for g in genera {
        for _ in 0..count {
            let entries = (1..g).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect();
            out.push(TorsionProfile::new(g, entries)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub profiles: usize,
    pub passes: usize,
    pub failures: usize,
    pub empty_set_cases: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub records: Vec<VerificationRecord>,
    pub summary: SweepSummary,
}

fn run_in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    Ok(pool.install(f))
}

/// Checks `Cliff = gon - 2` on every profile of the sweep. Records come back
/// in enumeration order regardless of parallelism.
pub fn sweep_clifford_gonality(config: &SweepConfig) -> Result<SweepReport> {
    let profiles = config.profiles()?;
    let records = run_in_pool(config.jobs, || {
        profiles
            .par_iter()
            .map(check_clifford_gonality)
            .collect::<Result<Vec<_>>>()
    })??;
    let mut summary = SweepSummary {
        profiles: records.len(),
        ..SweepSummary::default()
    };
    for r in &records {
        match r.verdict {
            Verdict::Pass => summary.passes += 1,
            Verdict::Fail => summary.failures += 1,
            Verdict::EmptySet => summary.empty_set_cases += 1,
        }
    }
    Ok(SweepReport { records, summary })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionFailure {
    pub input: TableauDocument,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub genus: usize,
    pub degree: i64,
    pub rank: i64,
    pub inputs_checked: usize,
    /// More inputs exist than the cap allowed.
    pub truncated: bool,
    pub input_exists: bool,
    pub target_exists: bool,
    pub failures: Vec<ReductionFailure>,
}

impl CrossCheckReport {
    /// Input existence implies target existence (search only).
    pub fn implication_holds(&self) -> bool {
        !self.input_exists || self.target_exists
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.implication_holds()
    }
}

/// Reduces up to `exhaust_cap` enumerated inputs on `[(g-d+r) x (r+1)]` and
/// separately checks by search alone that a `[(g-d+2r-1) x 2]` tableau exists
/// whenever an input does.
pub fn cross_check_reduction(profile: &TorsionProfile, d: i64, r: i64, exhaust_cap: usize) -> Result<CrossCheckReport> {
    let g = profile.genus();
    if r < 1 {
        return Err(Error::RankTooSmall(r));
    }
    let rows = g as i64 - d + r;
    if rows < 2 {
        return Err(Error::TooFewRows {
            rows: rows.max(0) as usize,
            min: 2,
        });
    }
    let (rows, cols) = (rows as usize, r as usize + 1);
    let target_rows = (g as i64 - d + 2 * r - 1) as usize;

    let mut inputs = enumerate_tableaux(rows, cols, profile);
    let mut failures = Vec::new();
    let mut checked = 0;
    for t in inputs.by_ref().take(exhaust_cap) {
        checked += 1;
        let outcome = reduce_to_rank_one(&t, profile).and_then(|(out, _)| {
            let ok = out.shape() == (target_rows, 2) && validate(&out, profile)?.valid;
            if ok {
                Ok(())
            } else {
                Err(Error::Internal(format!("bad output {:?}", out.to_rows())))
            }
        });
        if let Err(e) = outcome {
            failures.push(ReductionFailure {
                input: TableauDocument::from(&t),
                error: e.to_string(),
            });
        }
    }
    let truncated = checked == exhaust_cap && inputs.next().is_some();

    let input_exists = find_tableau(rows, cols, profile, SearchBudget::UNLIMITED)?.is_some();
    let target_exists = find_tableau(target_rows, 2, profile, SearchBudget::UNLIMITED)?.is_some();
    Ok(CrossCheckReport {
        genus: g,
        degree: d,
        rank: r,
        inputs_checked: checked,
        truncated,
        input_exists,
        target_exists,
        failures,
    })
}
