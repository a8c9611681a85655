//! Displacement tableaux.
//!
//! A tableau of genus `g` on `[R x C]` fills the grid with values in
//! `1..=g`, strictly increasing along rows and columns. It is valid for a
//! torsion profile when every repeated value `v` sits on diagonals `x - y`
//! that agree modulo `m_v` (exact equality when `m_v = 0`).
//!
//! Coordinates in the public API are 1-based `(x, y)` = (row, column).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain::TorsionProfile;
use crate::error::{Error, Result};

/// Strictly increasing grid with a genus context. Congruence is
/// profile-relative and checked by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    rows: usize,
    cols: usize,
    genus: usize,
    cells: Vec<u32>,
}

impl Tableau {
    pub fn new(genus: usize, grid: Vec<Vec<u32>>) -> Result<Self> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyGrid);
        }
        for (i, row) in grid.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Ragged {
                    row: i + 1,
                    got: row.len(),
                    expected: cols,
                });
            }
        }
        Self::from_cells(genus, rows, cols, grid.into_iter().flatten().collect())
    }

    /// Row-major cells.
    pub fn from_cells(genus: usize, rows: usize, cols: usize, cells: Vec<u32>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyGrid);
        }
        assert_eq!(cells.len(), rows * cols, "cell count must match shape");
        let t = Tableau {
            rows,
            cols,
            genus,
            cells,
        };
        t.check_structure()?;
        Ok(t)
    }

    pub(crate) fn from_cells_unchecked(genus: usize, rows: usize, cols: usize, cells: Vec<u32>) -> Self {
        debug_assert_eq!(cells.len(), rows * cols);
        Tableau {
            rows,
            cols,
            genus,
            cells,
        }
    }

    fn check_structure(&self) -> Result<()> {
        for x in 1..=self.rows {
            for y in 1..=self.cols {
                let v = self.get(x, y);
                if v < 1 || v as usize > self.genus {
                    return Err(Error::EntryRange {
                        x,
                        y,
                        value: v,
                        genus: self.genus,
                    });
                }
                if (x > 1 && self.get(x - 1, y) >= v) || (y > 1 && self.get(x, y - 1) >= v) {
                    return Err(Error::NotIncreasing { x, y });
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Entry at row `x`, column `y` (1-based).
    pub fn get(&self, x: usize, y: usize) -> u32 {
        assert!(
            (1..=self.rows).contains(&x) && (1..=self.cols).contains(&y),
            "cell ({x}, {y}) outside {}x{}",
            self.rows,
            self.cols
        );
        self.cells[(x - 1) * self.cols + (y - 1)]
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.cells.chunks(self.cols).map(<[u32]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Tableau {
        let mut cells = Vec::with_capacity(self.cells.len());
        for y in 1..=self.cols {
            for x in 1..=self.rows {
                cells.push(self.get(x, y));
            }
        }
        Tableau {
            rows: self.cols,
            cols: self.rows,
            genus: self.genus,
            cells,
        }
    }

    /// Top-left `rows x cols` sub-grid, same genus.
    pub fn restrict(&self, rows: usize, cols: usize) -> Result<Tableau> {
        if rows < 1 || cols < 1 || rows > self.rows || cols > self.cols {
            return Err(Error::RestrictRange {
                rows,
                cols,
                max_rows: self.rows,
                max_cols: self.cols,
            });
        }
        let cells = self
            .cells
            .chunks(self.cols)
            .take(rows)
            .flat_map(|row| row[..cols].iter().copied())
            .collect();
        Ok(Tableau {
            rows,
            cols,
            genus: self.genus,
            cells,
        })
    }

    /// Same grid re-housed on the sub-chain of genus `h`.
    pub fn with_genus(&self, h: usize) -> Result<Tableau> {
        if let Some(pos) = self.cells.iter().position(|&v| v as usize > h) {
            return Err(Error::EntryRange {
                x: pos / self.cols + 1,
                y: pos % self.cols + 1,
                value: self.cells[pos],
                genus: h,
            });
        }
        Ok(Tableau {
            genus: h,
            ..self.clone()
        })
    }

    /// Appends rows `(first + 2i - 2, first + 2i - 1)` for `i = 1..=count` to
    /// a two-column tableau.
    pub fn append_pair_rows(&self, first_value: u32, count: usize) -> Result<Tableau> {
        if self.cols != 2 {
            return Err(Error::NotTwoColumns { cols: self.cols });
        }
        let mut cells = self.cells.clone();
        cells.reserve(2 * count);
        for i in 0..count as u32 {
            cells.push(first_value + 2 * i);
            cells.push(first_value + 2 * i + 1);
        }
        Tableau::from_cells(self.genus, self.rows + count, 2, cells)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.cells.chunks(self.cols).enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            f.write_str(&line.join(" "))?;
        }
        Ok(())
    }
}

/// Degree and rank of a divisor class on a chain of the given genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorQuery {
    pub genus: usize,
    pub degree: i64,
    pub rank: i64,
}

impl DivisorQuery {
    pub fn new(genus: usize, degree: i64, rank: i64) -> Self {
        DivisorQuery { genus, degree, rank }
    }

    /// `g - d + r`, the row count of the witnessing tableau.
    pub fn rows(&self) -> i64 {
        self.genus as i64 - self.degree + self.rank
    }

    /// `r >= 1` and `g - d + r >= 2`.
    pub fn in_regime(&self) -> bool {
        self.rank >= 1 && self.rows() >= 2
    }
}

/// Tableau shape `(g - d + r, r + 1)` witnessing degree `d`, rank `r`.
pub fn shape_for(q: &DivisorQuery) -> (i64, i64) {
    (q.rows(), q.rank + 1)
}

/// Inverse of [`shape_for`].
pub fn params_of(shape: (usize, usize), genus: usize) -> Result<DivisorQuery> {
    let (rows, cols) = shape;
    if cols < 2 {
        return Err(Error::TooFewColumns { cols, min: 2 });
    }
    let rank = cols as i64 - 1;
    let degree = genus as i64 - rows as i64 + rank;
    Ok(DivisorQuery { genus, degree, rank })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    RowIncrease,
    ColumnIncrease,
    Range,
    Congruence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    /// 1-based `(row, column)` cells involved.
    pub cells: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }
}

/// Checks every displacement-tableau rule for `t` against `profile`.
pub fn validate(t: &Tableau, profile: &TorsionProfile) -> Result<ValidationReport> {
    if t.genus != profile.genus() {
        return Err(Error::GenusMismatch {
            tableau: t.genus,
            profile: profile.genus(),
        });
    }
    Ok(check_grid(t.rows, t.cols, &t.cells, profile))
}

/// Like [`validate`] but for a raw rectangular grid whose ordering and range
/// have not been checked.
pub fn validate_grid(grid: &[Vec<u32>], profile: &TorsionProfile) -> Result<ValidationReport> {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyGrid);
    }
    for (i, row) in grid.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Ragged {
                row: i + 1,
                got: row.len(),
                expected: cols,
            });
        }
    }
    let cells: Vec<u32> = grid.iter().flatten().copied().collect();
    Ok(check_grid(rows, cols, &cells, profile))
}

fn check_grid(rows: usize, cols: usize, cells: &[u32], profile: &TorsionProfile) -> ValidationReport {
    let genus = profile.genus();
    let at = |x: usize, y: usize| cells[(x - 1) * cols + (y - 1)];
    let mut violations = Vec::new();

    for x in 1..=rows {
        for y in 1..=cols {
            let v = at(x, y);
            if v < 1 || v as usize > genus {
                violations.push(Violation {
                    rule: Rule::Range,
                    cells: vec![(x, y)],
                    value: Some(v),
                    modulus: None,
                });
            }
            if y > 1 && at(x, y - 1) >= v {
                violations.push(Violation {
                    rule: Rule::RowIncrease,
                    cells: vec![(x, y - 1), (x, y)],
                    value: None,
                    modulus: None,
                });
            }
            if x > 1 && at(x - 1, y) >= v {
                violations.push(Violation {
                    rule: Rule::ColumnIncrease,
                    cells: vec![(x - 1, y), (x, y)],
                    value: None,
                    modulus: None,
                });
            }
        }
    }

    // anchor each value at its first occurrence in row-major order
    let mut anchor: Vec<Option<(usize, usize)>> = vec![None; genus + 1];
    for x in 1..=rows {
        for y in 1..=cols {
            let v = at(x, y);
            if v < 2 || v as usize > genus {
                continue;
            }
            match anchor[v as usize] {
                None => anchor[v as usize] = Some((x, y)),
                Some((ax, ay)) => {
                    let m = profile.m(v).unwrap_or(0);
                    if !diagonals_congruent(ax as i64 - ay as i64, x as i64 - y as i64, m) {
                        violations.push(Violation {
                            rule: Rule::Congruence,
                            cells: vec![(ax, ay), (x, y)],
                            value: Some(v),
                            modulus: Some(m),
                        });
                    }
                }
            }
        }
    }

    ValidationReport::from_violations(violations)
}

/// `a ≡ b (mod m)`, where modulus 0 means `a == b`.
pub(crate) fn diagonals_congruent(a: i64, b: i64, m: u32) -> bool {
    if m == 0 {
        a == b
    } else {
        (a - b).rem_euclid(m as i64) == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tab(g: usize, rows: &[&[u32]]) -> Tableau {
        Tableau::new(g, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn profile(g: usize, e: &[u32]) -> TorsionProfile {
        TorsionProfile::new(g, e.to_vec()).unwrap()
    }

    #[test]
    fn validate_examples() {
        let t = tab(3, &[&[1, 2], &[2, 3]]);
        assert!(validate(&t, &profile(3, &[2, 0])).unwrap().valid);

        let r = validate(&t, &profile(3, &[3, 0])).unwrap();
        assert!(!r.valid);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].rule, Rule::Congruence);
        assert_eq!(r.violations[0].value, Some(2));
        assert_eq!(r.violations[0].modulus, Some(3));
        assert_eq!(r.violations[0].cells, vec![(1, 2), (2, 1)]);

        assert!(!validate(&t, &profile(3, &[0, 0])).unwrap().valid);

        let r = validate_grid(&[vec![1, 2], vec![2, 2]], &profile(3, &[2, 2])).unwrap();
        assert!(!r.valid);
        assert!(r
            .violations
            .iter()
            .any(|v| v.rule == Rule::RowIncrease && v.cells == vec![(2, 1), (2, 2)]));
        assert!(Tableau::new(3, vec![vec![1, 2], vec![2, 2]]).is_err());
    }

    #[test]
    fn validate_reports_range() {
        let r = validate_grid(&[vec![1, 4]], &profile(3, &[0, 0])).unwrap();
        assert_eq!(r.violations[0].rule, Rule::Range);
        assert!(validate(&tab(4, &[&[1, 2]]), &profile(3, &[0, 0])).is_err());
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(Tableau::new(3, vec![]), Err(Error::EmptyGrid));
        assert!(matches!(
            Tableau::new(3, vec![vec![1, 2], vec![3]]),
            Err(Error::Ragged { .. })
        ));
        assert!(matches!(
            Tableau::new(3, vec![vec![0, 2]]),
            Err(Error::EntryRange { .. })
        ));
        assert!(matches!(
            Tableau::new(3, vec![vec![2], vec![1]]),
            Err(Error::NotIncreasing { .. })
        ));
    }

    #[test]
    fn transpose_examples() {
        let t = tab(4, &[&[1, 2, 3], &[2, 3, 4]]);
        let tt = t.transpose();
        assert_eq!(tt.to_rows(), vec![vec![1, 2], vec![2, 3], vec![3, 4]]);
        assert_eq!(tt.transpose(), t);

        let p = TorsionProfile::uniform(5, 2).unwrap();
        let t = tab(5, &[&[1, 2, 3, 4], &[2, 3, 4, 5]]);
        assert!(validate(&t, &p).unwrap().valid);
        assert!(validate(&t.transpose(), &p).unwrap().valid);
    }

    #[test]
    fn restrict_examples() {
        let t = tab(9, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(t.restrict(2, 2).unwrap().to_rows(), vec![vec![1, 2], vec![4, 5]]);
        assert_eq!(t.restrict(3, 3).unwrap(), t);
        assert!(t.restrict(4, 1).is_err());
        assert!(t.restrict(0, 1).is_err());
    }

    #[test]
    fn with_genus_examples() {
        let t = tab(9, &[&[1, 2], &[4, 5]]);
        let h = t.with_genus(5).unwrap();
        assert_eq!((h.genus(), h.cells()), (5, t.cells()));
        assert!(matches!(t.with_genus(4), Err(Error::EntryRange { value: 5, .. })));
        assert_eq!(t.with_genus(9).unwrap(), t);
    }

    #[test]
    fn append_examples() {
        let t = tab(9, &[&[1, 2], &[4, 5]]);
        let ext = t.append_pair_rows(6, 2).unwrap();
        assert_eq!(ext.to_rows(), vec![vec![1, 2], vec![4, 5], vec![6, 7], vec![8, 9]]);
        assert_eq!(t.append_pair_rows(6, 0).unwrap(), t);

        let t = tab(3, &[&[1, 2]]);
        assert_eq!(
            t.append_pair_rows(2, 1).unwrap().to_rows(),
            vec![vec![1, 2], vec![2, 3]]
        );

        assert!(tab(9, &[&[1, 2], &[4, 5]]).append_pair_rows(4, 1).is_err());
        assert!(tab(9, &[&[1, 2], &[4, 5]]).append_pair_rows(8, 2).is_err());
        assert!(tab(9, &[&[1, 2, 3]]).append_pair_rows(4, 1).is_err());
    }

    #[test]
    fn shape_examples() {
        assert_eq!(shape_for(&DivisorQuery::new(9, 8, 2)), (3, 3));
        assert_eq!(shape_for(&DivisorQuery::new(5, 2, 1)), (4, 2));
        assert_eq!(shape_for(&DivisorQuery::new(3, 3, 1)), (1, 2));

        assert_eq!(params_of((3, 3), 9).unwrap(), DivisorQuery::new(9, 8, 2));
        assert_eq!(params_of((4, 2), 5).unwrap(), DivisorQuery::new(5, 2, 1));
        assert!(params_of((3, 1), 5).is_err());
    }

    #[test]
    fn dual_parameters_of_transposed_shape() {
        for g in 2..10usize {
            for rows in 2..=g {
                for cols in 2..=g {
                    let q = params_of((rows, cols), g).unwrap();
                    let dual = params_of((cols, rows), g).unwrap();
                    assert_eq!(dual.degree, 2 * g as i64 - 2 - q.degree);
                    assert_eq!(dual.rank, g as i64 - q.degree + q.rank - 1);
                }
            }
        }
    }

    fn arb_grid() -> impl Strategy<Value = (usize, Vec<Vec<u32>>, Vec<u32>)> {
        (1usize..4, 1usize..4, 1usize..9).prop_flat_map(|(r, c, g)| {
            let grid = proptest::collection::vec(proptest::collection::vec(1u32..=g as u32, c), r);
            let prof = proptest::collection::vec(prop_oneof![Just(0u32), 2u32..5], g - 1);
            (Just(g), grid, prof)
        })
    }

    proptest! {
        #[test]
        fn params_round_trip(g in 1usize..20, d in -5i64..40, r in 1i64..10) {
            let q = DivisorQuery::new(g, d, r);
            let (rows, cols) = shape_for(&q);
            prop_assume!(rows >= 1);
            prop_assert_eq!(params_of((rows as usize, cols as usize), g).unwrap(), q);
        }

        #[test]
        fn structural_properties_of_valid_grids((g, grid, prof) in arb_grid()) {
            let p = TorsionProfile::new(g, prof).unwrap();
            let report = validate_grid(&grid, &p).unwrap();
            prop_assert_eq!(report.valid, report.violations.is_empty());
            if !report.valid {
                return Ok(());
            }
            let t = Tableau::new(g, grid).unwrap();
            let (rows, cols) = t.shape();
            for x in 1..=rows {
                for y in 1..=cols {
                    let v = t.get(x, y) as usize;
                    prop_assert!(x + y - 1 <= v && v <= g - (rows - x) - (cols - y));
                    if v == g { prop_assert_eq!((x, y), (rows, cols)); }
                    if v == 1 { prop_assert_eq!((x, y), (1, 1)); }
                }
            }
            let tt = t.transpose();
            prop_assert!(validate(&tt, &p).unwrap().valid);
            prop_assert_eq!(tt.transpose(), t.clone());
            for rr in 1..=rows {
                for cc in 1..=cols {
                    prop_assert!(validate(&t.restrict(rr, cc).unwrap(), &p).unwrap().valid);
                }
            }
            // coarsen: replace every nonzero entry by a divisor of it
            let weaker: Vec<u32> = p.entries().iter().map(|&m| if m == 4 { 2 } else { m }).collect();
            let q = TorsionProfile::new(g, weaker).unwrap();
            prop_assert!(p.dominates(&q));
            prop_assert!(validate(&t, &q).unwrap().valid);
        }
    }
}
