//! Chains of cycles and their torsion profiles.
//!
//! Only the ratio of the marked arc to the cycle length matters, so a cycle
//! is stored as an [`ArcRatio`]. Connecting segments carry no information and
//! are not represented.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Clockwise arc from `v_i` to `w_i` divided by the length of the cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcRatio {
    /// Lowest terms, `0 < num < den`.
    Rational {
        num: u64,
        den: u64,
    },
    Irrational,
}

impl ArcRatio {
    pub fn rational(num: u64, den: u64) -> Result<Self> {
        Self::reduce(num as u128, den as u128)
    }

    /// Ratio of an arc length `arc_num/arc_den` to a cycle length
    /// `len_num/len_den`.
    pub fn from_lengths(arc: (u64, u64), length: (u64, u64)) -> Result<Self> {
        let (arc_num, arc_den) = arc;
        let (len_num, len_den) = length;
        if len_num == 0 || len_den == 0 {
            return Err(Error::InvalidLength(format!("{len_num}/{len_den}")));
        }
        if arc_den == 0 {
            return Err(Error::InvalidLength(format!("{arc_num}/{arc_den}")));
        }
        Self::reduce(arc_num as u128 * len_den as u128, arc_den as u128 * len_num as u128)
    }

    fn reduce(num: u128, den: u128) -> Result<Self> {
        if num == 0 || den == 0 || num >= den {
            return Err(Error::InvalidArc { num, den });
        }
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        match (u64::try_from(num), u64::try_from(den)) {
            (Ok(num), Ok(den)) => Ok(ArcRatio::Rational { num, den }),
            _ => Err(Error::InvalidArc { num, den }),
        }
    }
}

impl fmt::Display for ArcRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcRatio::Rational { num, den } => write!(f, "{num}/{den}"),
            ArcRatio::Irrational => f.write_str("irrational"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainOfCycles {
    cycles: Vec<ArcRatio>,
}

impl ChainOfCycles {
    pub fn new(cycles: Vec<ArcRatio>) -> Result<Self> {
        if cycles.is_empty() {
            return Err(Error::GenusTooSmall { genus: 0, min: 1 });
        }
        Ok(Self { cycles })
    }

    pub fn genus(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycles(&self) -> &[ArcRatio] {
        &self.cycles
    }
}

/// Smallest `m > 0` with `m * arc` an integer multiple of the cycle length,
/// or 0 when no such `m` exists.
pub fn torsion_of_cycle(arc: ArcRatio) -> u32 {
    match arc {
        ArcRatio::Irrational => 0,
        // lowest terms, so the denominator is the order of p/q in Q/Z
        ArcRatio::Rational { den, .. } => u32::try_from(den).unwrap_or(u32::MAX),
    }
}

/// Torsion entries `m_2..m_g`. Cycle 1 never contributes.
pub fn torsion_profile(chain: &ChainOfCycles) -> TorsionProfile {
    let entries = chain.cycles[1..].iter().map(|&arc| torsion_of_cycle(arc)).collect();
    TorsionProfile {
        genus: chain.genus(),
        entries,
    }
}

/// The vector `(m_2, ..., m_g)`. Every entry is 0 or at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ProfileRepr", into = "ProfileRepr")]
pub struct TorsionProfile {
    genus: usize,
    entries: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    genus: usize,
    torsion: Vec<u32>,
}

impl TryFrom<ProfileRepr> for TorsionProfile {
    type Error = Error;
    fn try_from(r: ProfileRepr) -> Result<Self> {
        TorsionProfile::new(r.genus, r.torsion)
    }
}

impl From<TorsionProfile> for ProfileRepr {
    fn from(p: TorsionProfile) -> Self {
        ProfileRepr {
            genus: p.genus,
            torsion: p.entries,
        }
    }
}

impl TorsionProfile {
    pub fn new(genus: usize, entries: Vec<u32>) -> Result<Self> {
        if genus < 1 {
            return Err(Error::GenusTooSmall { genus, min: 1 });
        }
        if entries.len() != genus - 1 {
            return Err(Error::ProfileLength {
                genus,
                expected: genus - 1,
                got: entries.len(),
            });
        }
        if let Some(i) = entries.iter().position(|&m| m == 1) {
            return Err(Error::TorsionOne { index: i + 2 });
        }
        Ok(Self { genus, entries })
    }

    pub fn zeros(genus: usize) -> Result<Self> {
        Self::uniform(genus, 0)
    }

    pub fn uniform(genus: usize, m: u32) -> Result<Self> {
        Self::new(genus, vec![m; genus.saturating_sub(1)])
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Entries in order `m_2, ..., m_g`.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// `m_v` for `2 <= v <= g`; `None` outside that range.
    pub fn m(&self, v: u32) -> Option<u32> {
        let v = v as usize;
        if v < 2 {
            return None;
        }
        self.entries.get(v - 2).copied()
    }

    /// Profile of the sub-chain `C_1 ∪ ... ∪ C_h`.
    pub fn truncate(&self, h: usize) -> Result<Self> {
        if h < 1 || h > self.genus {
            return Err(Error::TruncateRange { h, genus: self.genus });
        }
        Ok(Self {
            genus: h,
            entries: self.entries[..h - 1].to_vec(),
        })
    }

    /// True when every tableau valid for `self` is also valid for `other`:
    /// for each value, `self` has entry 0 or `other` has a nonzero entry
    /// dividing it.
    pub fn dominates(&self, other: &TorsionProfile) -> bool {
        self.genus == other.genus
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(&mine, &theirs)| mine == 0 || (theirs != 0 && mine % theirs == 0))
    }
}

impl fmt::Display for TorsionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={} [", self.genus)?;
        for (i, m) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("]")
    }
}
