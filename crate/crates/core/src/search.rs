//! Backtracking search for displacement tableaux.
//!
//! Cells are filled in row-major order. Candidates for cell `(x, y)` lie in
//! `max(above, left) + 1 ..= g - (R - x) - (C - y)`; a repeated value must
//! land on a diagonal congruent to the diagonal of its first occurrence.
//! Values are tried in increasing order, so solutions come out in row-major
//! lexicographic order and the first one is the lex-minimal tableau.

use crate::chain::TorsionProfile;
use crate::error::{Error, Result};
use crate::tableau::{diagonals_congruent, Tableau};

/// Limits for a single search call. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of cell assignments.
    pub node_cap: Option<u64>,
    /// Maximum count reported by [`count_tableaux`].
    pub count_cap: Option<u64>,
}

impl SearchBudget {
    pub const UNLIMITED: SearchBudget = SearchBudget {
        node_cap: None,
        count_cap: None,
    };

    pub fn nodes(cap: u64) -> Self {
        SearchBudget {
            node_cap: Some(cap),
            count_cap: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Anchor {
    diagonal: i64,
    uses: u32,
}

struct Walker<'p> {
    rows: usize,
    cols: usize,
    genus: u32,
    profile: &'p TorsionProfile,
    cells: Vec<u32>,
    anchors: Vec<Anchor>,
    pos: usize,
    started: bool,
    done: bool,
    nodes: u64,
    node_cap: Option<u64>,
}

impl<'p> Walker<'p> {
    fn new(rows: usize, cols: usize, profile: &'p TorsionProfile, node_cap: Option<u64>) -> Self {
        let genus = profile.genus() as u32;
        Walker {
            rows,
            cols,
            genus,
            profile,
            cells: vec![0; rows * cols],
            anchors: vec![Anchor::default(); genus as usize + 1],
            pos: 0,
            started: false,
            // row + col - 1 distinct values are needed along the hook of the last cell
            done: rows + cols - 1 > genus as usize,
            nodes: 0,
            node_cap,
        }
    }

    fn bounds(&self, pos: usize) -> (u32, u32) {
        let (x, y) = (pos / self.cols, pos % self.cols);
        let mut lo = (x + y + 1) as u32;
        if x > 0 {
            lo = lo.max(self.cells[pos - self.cols] + 1);
        }
        if y > 0 {
            lo = lo.max(self.cells[pos - 1] + 1);
        }
        let slack = (self.rows - 1 - x) + (self.cols - 1 - y);
        let hi = self.genus.saturating_sub(slack as u32);
        (lo, hi)
    }

    fn diagonal(&self, pos: usize) -> i64 {
        (pos / self.cols) as i64 - (pos % self.cols) as i64
    }

    fn admissible(&self, pos: usize, v: u32) -> bool {
        let a = self.anchors[v as usize];
        if a.uses == 0 {
            return true;
        }
        let m = self.profile.m(v).unwrap_or(0);
        diagonals_congruent(a.diagonal, self.diagonal(pos), m)
    }

    fn place(&mut self, pos: usize, v: u32) {
        self.cells[pos] = v;
        let diagonal = self.diagonal(pos);
        let a = &mut self.anchors[v as usize];
        if a.uses == 0 {
            a.diagonal = diagonal;
        }
        a.uses += 1;
    }

    fn lift(&mut self, pos: usize) {
        let v = self.cells[pos];
        self.anchors[v as usize].uses -= 1;
        self.cells[pos] = 0;
    }

    /// Advances to the next solution in lexicographic order.
    fn next_solution(&mut self) -> Result<bool> {
        if self.done {
            return Ok(false);
        }
        let n = self.cells.len();
        if self.started {
            self.pos = n - 1;
        } else {
            self.started = true;
            self.pos = 0;
        }
        loop {
            let pos = self.pos;
            let current = self.cells[pos];
            if current != 0 {
                self.lift(pos);
            }
            let (lo, hi) = self.bounds(pos);
            let next = (lo.max(current + 1)..=hi).find(|&v| self.admissible(pos, v));
            match next {
                Some(v) => {
                    self.nodes += 1;
                    if self.node_cap.is_some_and(|cap| self.nodes > cap) {
                        self.done = true;
                        return Err(Error::BudgetExhausted { nodes: self.nodes - 1 });
                    }
                    self.place(pos, v);
                    if pos + 1 == n {
                        return Ok(true);
                    }
                    self.pos += 1;
                }
                None => {
                    if pos == 0 {
                        self.done = true;
                        return Ok(false);
                    }
                    self.pos -= 1;
                }
            }
        }
    }

    fn snapshot(&self) -> Tableau {
        Tableau::from_cells_unchecked(self.genus as usize, self.rows, self.cols, self.cells.clone())
    }
}

fn check_shape(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::DegenerateShape { rows, cols });
    }
    Ok(())
}

/// Lexicographically smallest valid tableau on `[rows x cols]`, if any.
pub fn find_tableau(
    rows: usize,
    cols: usize,
    profile: &TorsionProfile,
    budget: SearchBudget,
) -> Result<Option<Tableau>> {
    check_shape(rows, cols)?;
    let mut w = Walker::new(rows, cols, profile, budget.node_cap);
    Ok(w.next_solution()?.then(|| w.snapshot()))
}

/// Existence of a tableau on `[rows x cols]`. An empty shape always exists.
pub fn tableau_exists(rows: usize, cols: usize, profile: &TorsionProfile, budget: SearchBudget) -> Result<bool> {
    if rows == 0 || cols == 0 {
        return Ok(true);
    }
    Ok(find_tableau(rows, cols, profile, budget)?.is_some())
}

/// Exact number of valid tableaux on `[rows x cols]`. An empty shape counts
/// once.
pub fn count_tableaux(rows: usize, cols: usize, profile: &TorsionProfile, budget: SearchBudget) -> Result<u64> {
    if rows == 0 || cols == 0 {
        return Ok(1);
    }
    let mut w = Walker::new(rows, cols, profile, budget.node_cap);
    let mut count = 0u64;
    while w.next_solution()? {
        count += 1;
        if budget.count_cap.is_some_and(|cap| count > cap) {
            return Err(Error::BudgetExhausted { nodes: w.nodes });
        }
    }
    Ok(count)
}

/// All valid tableaux on `[rows x cols]` in row-major lexicographic order.
pub fn enumerate_tableaux(rows: usize, cols: usize, profile: &TorsionProfile) -> Tableaux<'_> {
    let mut walker = Walker::new(rows.max(1), cols.max(1), profile, None);
    if rows == 0 || cols == 0 {
        walker.done = true;
    }
    Tableaux { walker }
}

pub struct Tableaux<'p> {
    walker: Walker<'p>,
}

impl Iterator for Tableaux<'_> {
    type Item = Tableau;

    fn next(&mut self) -> Option<Tableau> {
        // no node cap, so the walker cannot fail
        match self.walker.next_solution() {
            Ok(true) => Some(self.walker.snapshot()),
            _ => None,
        }
    }
}
