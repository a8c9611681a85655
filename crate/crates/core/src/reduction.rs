//! Constructive reduction of a rank-`r` witness to a rank-1 witness.
//!
//! Given a valid tableau on `[(g - d + r) x (r + 1)]` with `g - d + r >= 2`,
//! [`reduce_to_rank_one`] builds a valid tableau on `[(g - d + 2r - 1) x 2]`
//! for the same profile, i.e. a class of degree `d - 2r + 2` and rank 1.
//!
//! Every recursive call works on a tableau with fewer columns:
//!
//! - `d >= g`: transpose (the residual class has smaller rank) and recurse.
//! - otherwise let `a = g - d + r` and look at the last two columns from the
//!   bottom row upward. While row `a - k` reads `(g - 2k - 1, g - 2k)` the
//!   tableau follows a staircase; the first row where the pattern breaks (or
//!   the top of the grid, or the point where the values are forced to be
//!   minimal) decides which restriction to recurse on and which pairs of
//!   unused large values to append afterwards.
//!
//! The steps taken are recorded in a [`ReductionTrace`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain::TorsionProfile;
use crate::error::{Error, Result};
use crate::tableau::{params_of, validate, Tableau};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "BASE")]
    Base,
    #[serde(rename = "LEMMA1-TRANSPOSE")]
    Lemma1Transpose,
    #[serde(rename = "B0")]
    B0,
    #[serde(rename = "L1")]
    L1,
    #[serde(rename = "L2a-i")]
    L2aI,
    #[serde(rename = "L2a-ii")]
    L2aII,
    #[serde(rename = "ADVANCE")]
    Advance,
    #[serde(rename = "T1")]
    T1,
    #[serde(rename = "T2")]
    T2,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::Base => "BASE",
            Case::Lemma1Transpose => "LEMMA1-TRANSPOSE",
            Case::B0 => "B0",
            Case::L1 => "L1",
            Case::L2aI => "L2a-i",
            Case::L2aII => "L2a-ii",
            Case::Advance => "ADVANCE",
            Case::T1 => "T1",
            Case::T2 => "T2",
        }
    }
}

/// One decision of the reduction.
///
/// `rows`, `cols` and `genus` describe the tableau the step hands on: the
/// restricted sub-problem for recursing cases, the transposed grid for
/// `LEMMA1-TRANSPOSE`, the staircase for `T1`, and the current problem for
/// `BASE` and `ADVANCE`. `appended` is the inclusive range of values added
/// as pair rows once the sub-result comes back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub case: Case,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    pub rows: usize,
    pub cols: usize,
    pub genus: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub appended: Option<(u32, u32)>,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.case.label())?;
        if let Some(k) = self.k {
            write!(f, "({k})")?;
        }
        Ok(())
    }
}

/// Steps in the order they were decided, outermost first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
}

impl ReductionTrace {
    /// Labels such as `ADVANCE(0)` or `BASE`.
    pub fn labels(&self) -> Vec<String> {
        self.steps.iter().map(Step::to_string).collect()
    }

    fn push(
        &mut self,
        case: Case,
        k: Option<usize>,
        shape: (usize, usize),
        genus: usize,
        appended: Option<(u32, u32)>,
    ) {
        self.steps.push(Step {
            case,
            k,
            rows: shape.0,
            cols: shape.1,
            genus,
            appended,
        });
    }
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels().join(" "))
    }
}

/// Reduces a valid in-regime tableau to a two-column tableau on
/// `[(g - d + 2r - 1) x 2]`, valid for the same profile.
pub fn reduce_to_rank_one(t: &Tableau, profile: &TorsionProfile) -> Result<(Tableau, ReductionTrace)> {
    if t.genus() != profile.genus() {
        return Err(Error::GenusMismatch {
            tableau: t.genus(),
            profile: profile.genus(),
        });
    }
    if t.cols() < 2 {
        return Err(Error::TooFewColumns { cols: t.cols(), min: 2 });
    }
    if t.rows() < 2 {
        return Err(Error::TooFewRows { rows: t.rows(), min: 2 });
    }
    if !validate(t, profile)?.valid {
        return Err(Error::InvalidTableau);
    }

    let q = params_of(t.shape(), t.genus())?;
    let mut trace = ReductionTrace::default();
    let out = reduce(t, profile, &mut trace)?;

    let expected_rows = t.genus() as i64 - q.degree + 2 * q.rank - 1;
    if out.shape() != (expected_rows as usize, 2) {
        return Err(Error::Internal(format!(
            "reduced shape {:?}, expected ({expected_rows}, 2) [{trace}]",
            out.shape()
        )));
    }
    if !validate(&out, profile)?.valid {
        return Err(Error::Internal(format!(
            "reduced tableau fails validation [{trace}]\n{out}"
        )));
    }
    Ok((out, trace))
}

fn internal(e: Error) -> Error {
    match e {
        Error::Internal(_) => e,
        other => Error::Internal(other.to_string()),
    }
}

/// Recurses on `sub` (already re-housed at its own genus) and brings the
/// result back to genus `genus`.
fn recurse(sub: Tableau, profile: &TorsionProfile, genus: usize, trace: &mut ReductionTrace) -> Result<Tableau> {
    let sub_profile = profile.truncate(sub.genus()).map_err(internal)?;
    reduce(&sub, &sub_profile, trace)?.with_genus(genus).map_err(internal)
}

fn reduce(t: &Tableau, profile: &TorsionProfile, trace: &mut ReductionTrace) -> Result<Tableau> {
    let (a, c) = t.shape();
    let g = t.genus();
    if c == 2 {
        trace.push(Case::Base, None, (a, c), g, None);
        return Ok(t.clone());
    }
    let q = params_of((a, c), g)?;
    if q.degree >= g as i64 {
        let tt = t.transpose();
        trace.push(Case::Lemma1Transpose, None, tt.shape(), g, None);
        return reduce(&tt, profile, trace);
    }

    // from here d <= g - 1, so a >= r + 1 >= 3
    let r = c - 1;
    let gi = g as i64;
    let top_value = t.get(a, r) as usize;
    if top_value + 2 <= g {
        let sub = t.restrict(a, r)?.with_genus(top_value).map_err(internal)?;
        trace.push(Case::B0, None, sub.shape(), top_value, Some((g as u32 - 1, g as u32)));
        let t1 = recurse(sub, profile, g, trace)?;
        return t1.append_pair_rows(g as u32 - 1, 1).map_err(internal);
    }

    let excess = q.degree - 2 * q.rank;
    let mut k = 0usize;
    loop {
        // invariant: rows a - k'..=a read (g - 2k' - 1, g - 2k') for k' <= k
        let ki = k as i64;
        let row = a - k;

        if row == 1 {
            let h = g + 2 - 2 * k;
            let sub = t.restrict(2, c)?.with_genus(h).map_err(internal)?;
            let appended = (k >= 2).then(|| (h as u32 + 1, g as u32));
            trace.push(Case::T2, Some(k), sub.shape(), h, appended);
            let t1 = recurse(sub, profile, g, trace)?;
            return t1.append_pair_rows(h as u32 + 1, k - 1).map_err(internal);
        }

        if k >= 1 && ki == excess {
            // the top a - k rows are forced to t(i, j) = i + j - 1
            let stair_rows = a + r - k - 1;
            let stair = build_staircase(stair_rows, g).map_err(internal)?;
            let first = stair_rows as u32 + 2;
            trace.push(Case::T1, Some(k), stair.shape(), g, Some((first, g as u32)));
            return stair.append_pair_rows(first, k).map_err(internal);
        }

        let above_last = t.get(row - 1, c) as i64;
        let above_prev = t.get(row - 1, r) as i64;

        if above_last == gi - 2 * ki - 1 {
            let h = g - 2 * k - 1;
            let sub = t.restrict(row, r)?.with_genus(h).map_err(internal)?;
            trace.push(Case::L1, Some(k), sub.shape(), h, Some((h as u32, g as u32)));
            let t1 = recurse(sub, profile, g, trace)?;
            return t1.append_pair_rows(h as u32, k + 1).map_err(internal);
        }

        if above_prev <= gi - 2 * ki - 4 {
            if row == 2 {
                let h = g - 2 * k;
                let sub = t.restrict(row, c)?.with_genus(h).map_err(internal)?;
                let appended = (k >= 1).then(|| (h as u32 + 1, g as u32));
                trace.push(Case::L2aI, Some(k), sub.shape(), h, appended);
                let t1 = recurse(sub, profile, g, trace)?;
                return t1.append_pair_rows(h as u32 + 1, k).map_err(internal);
            }
            let h = g - 2 * k - 4;
            let sub = t.restrict(row - 1, r)?.with_genus(h).map_err(internal)?;
            trace.push(Case::L2aII, Some(k), sub.shape(), h, Some((h as u32 + 1, g as u32)));
            let t1 = recurse(sub, profile, g, trace)?;
            return t1.append_pair_rows(h as u32 + 1, k + 2).map_err(internal);
        }

        if above_prev != gi - 2 * ki - 3 || above_last != gi - 2 * ki - 2 {
            return Err(Error::Internal(format!(
                "staircase broken at row {} without a matching case",
                row - 1
            )));
        }
        trace.push(Case::Advance, Some(k), (a, c), g, None);
        k += 1;
    }
}

/// Largest `K` such that rows `a, a - 1, ..., a - K + 1` of the last two
/// columns read `(g - 1, g), (g - 3, g - 2), ...`.
pub fn staircase_extent(t: &Tableau) -> usize {
    let (a, c) = t.shape();
    if c < 2 {
        return 0;
    }
    let g = t.genus() as i64;
    (0..a)
        .take_while(|&k| {
            let row = a - k;
            let k = k as i64;
            t.get(row, c) as i64 == g - 2 * k && t.get(row, c - 1) as i64 == g - 2 * k - 1
        })
        .count()
}

/// Two-column tableau `t(i, 1) = i`, `t(i, 2) = i + 1`. Valid for a profile
/// exactly when `m_v = 2` for `2 <= v <= rows`.
pub fn build_staircase(rows: usize, genus: usize) -> Result<Tableau> {
    if rows < 1 || rows + 1 > genus {
        return Err(Error::StaircaseShape { rows, genus });
    }
    let cells = (1..=rows as u32).flat_map(|i| [i, i + 1]).collect();
    Ok(Tableau::from_cells_unchecked(genus, rows, 2, cells))
}
