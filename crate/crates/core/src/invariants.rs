//! Gonality, Clifford index and Brill-Noether existence tables.
//!
//! A class of degree `d` and rank at least `r` exists exactly when a tableau
//! on `[(g - d + r) x (r + 1)]` does. That criterion is applied as-is when
//! `g - d + r >= 1`; for `g - d + r <= 0` Riemann-Roch already guarantees
//! the class, and the answer is granted without search.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::TorsionProfile;
use crate::error::{Error, Result};
use crate::search::{find_tableau, SearchBudget};
use crate::tableau::Tableau;

/// Which justification backs a [`RankExistence`] answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankRegime {
    /// `g - d + r >= 2`: the tableau criterion in its stated range.
    Tableau,
    /// `g - d + r = 1`: tableau criterion extended to one-row shapes.
    SingleRow,
    /// `g - d + r <= 0`: granted by Riemann-Roch.
    RiemannRoch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankExistence {
    pub exists: bool,
    pub regime: RankRegime,
    pub witness: Option<Tableau>,
}

/// Whether the chain carries a class of degree `d` and rank at least `r`.
pub fn rank_exists(profile: &TorsionProfile, d: i64, r: i64) -> Result<RankExistence> {
    if r < 1 {
        return Err(Error::RankTooSmall(r));
    }
    let rows = profile.genus() as i64 - d + r;
    if rows <= 0 {
        return Ok(RankExistence {
            exists: true,
            regime: RankRegime::RiemannRoch,
            witness: None,
        });
    }
    let regime = if rows == 1 {
        RankRegime::SingleRow
    } else {
        RankRegime::Tableau
    };
    let witness = find_tableau(rows as usize, r as usize + 1, profile, SearchBudget::UNLIMITED)?;
    Ok(RankExistence {
        exists: witness.is_some(),
        regime,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GonalityResult {
    pub value: u32,
    /// Valid tableau on `[(g - value + 1) x 2]`.
    pub witness: Tableau,
}

/// Smallest degree carrying a rank-1 class. Always between 2 and `g`.
pub fn gonality(profile: &TorsionProfile) -> Result<GonalityResult> {
    let g = profile.genus();
    if g < 2 {
        return Err(Error::GenusTooSmall { genus: g, min: 2 });
    }
    for d in 2..=g {
        // d = g gives the 1 x 2 shape, which always exists for g >= 2
        if let Some(witness) = find_tableau(g - d + 1, 2, profile, SearchBudget::UNLIMITED)? {
            return Ok(GonalityResult {
                value: d as u32,
                witness,
            });
        }
    }
    Err(Error::Internal(format!("no rank-1 class up to degree {g}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CliffordValue {
    Value(u32),
    /// No class satisfies `r >= 1` and `g - d + r >= 2`. Carries the
    /// convention value `gon - 2`.
    EmptySet {
        convention: u32,
    },
}

impl CliffordValue {
    /// The reported number: the index itself, or the convention value.
    pub fn effective(self) -> u32 {
        match self {
            CliffordValue::Value(v) | CliffordValue::EmptySet { convention: v } => v,
        }
    }

    pub fn is_empty_set(self) -> bool {
        matches!(self, CliffordValue::EmptySet { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordResult {
    pub value: CliffordValue,
    /// `(d, r, tableau)` achieving the minimum.
    pub witness: Option<(i64, i64, Tableau)>,
    pub convention_applied: bool,
}

/// Minimum of `d - 2r` over classes with `r >= 1` and `g - d + r >= 2`.
pub fn clifford_index(profile: &TorsionProfile) -> Result<CliffordResult> {
    let g = profile.genus();
    if g < 3 {
        return Err(Error::GenusTooSmall { genus: g, min: 3 });
    }
    let g = g as i64;
    for c in 0..=g - 3 {
        for r in 1..=g - c - 2 {
            let d = c + 2 * r;
            let rows = (g - d + r) as usize;
            if let Some(t) = find_tableau(rows, r as usize + 1, profile, SearchBudget::UNLIMITED)? {
                return Ok(CliffordResult {
                    value: CliffordValue::Value(c as u32),
                    witness: Some((d, r, t)),
                    convention_applied: false,
                });
            }
        }
    }
    let gon = gonality(profile)?;
    Ok(CliffordResult {
        value: CliffordValue::EmptySet {
            convention: gon.value - 2,
        },
        witness: None,
        convention_applied: true,
    })
}

/// Residual parameters `(2g - 2 - d, g - d + r - 1)`.
pub fn serre_dual(d: i64, r: i64, genus: usize) -> (i64, i64) {
    let g = genus as i64;
    (2 * g - 2 - d, g - d + r - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnEntry {
    pub degree: i64,
    pub rank: i64,
    pub exists: bool,
    pub regime: RankRegime,
}

/// Existence table over `1 <= d <= d_max`, `1 <= r <= d`, ordered by degree
/// then rank.
pub fn bn_table(profile: &TorsionProfile, d_max: i64) -> Result<Vec<BnEntry>> {
    let pairs: Vec<(i64, i64)> = (1..=d_max).flat_map(|d| (1..=d).map(move |r| (d, r))).collect();
    pairs
        .into_par_iter()
        .map(|(d, r)| {
            let e = rank_exists(profile, d, r)?;
            Ok(BnEntry {
                degree: d,
                rank: r,
                exists: e.exists,
                regime: e.regime,
            })
        })
        .collect()
}
