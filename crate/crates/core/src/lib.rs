//! Divisor invariants of chains of cycles computed through displacement
//! tableaux.
//!
//! A chain of cycles of genus `g` is summarised by its torsion profile
//! `(m_2, ..., m_g)`. Existence of a divisor class of degree `d` and rank at
//! least `r` is equivalent to existence of a displacement tableau on a
//! `(g - d + r) x (r + 1)` grid, so everything here reduces to tableau search:
//!
//! - [`chain`] turns arc-length data into a [`TorsionProfile`].
//! - [`tableau`] holds the [`Tableau`] type and its validation rules.
//! - [`search`] finds, counts and enumerates tableaux by backtracking.
//! - [`invariants`] computes gonality, Clifford index and Brill-Noether tables.
//! - [`reduction`] turns any rank-`r` witness into a rank-1 witness.
//! - [`verify`] runs sweeps checking `Cliff = gon - 2` and the reduction.
//! - [`io`] defines the JSON documents used by the command line tool.

pub mod chain;
pub mod error;
pub mod invariants;
pub mod io;
pub mod reduction;
pub mod search;
pub mod tableau;
pub mod verify;

pub use chain::{torsion_of_cycle, torsion_profile, ArcRatio, ChainOfCycles, TorsionProfile};
pub use error::{Error, Result};
pub use invariants::{
    bn_table, clifford_index, gonality, rank_exists, serre_dual, CliffordResult, CliffordValue, GonalityResult,
    RankExistence, RankRegime,
};
pub use reduction::{build_staircase, reduce_to_rank_one, staircase_extent, Case, ReductionTrace, Step};
pub use search::{count_tableaux, enumerate_tableaux, find_tableau, tableau_exists, SearchBudget};
pub use tableau::{params_of, shape_for, validate, DivisorQuery, Rule, Tableau, ValidationReport, Violation};
