//! Integer partitions in English notation.
//!
//! A partition λ = (λ_1 ≥ λ_2 ≥ …) is stored as its weakly decreasing list of
//! positive parts.  Cells use 0-based (row, col) with row 0 the longest row,
//! so the cell (r, c) carries the torus character q^c t^r.  For a cell x ∈ λ,
//!     arm(x) = λ_{r+1} − c − 1,    leg(x) = λ′_{c+1} − r − 1,
//! and n(λ) = Σ_i (i−1) λ_i.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::Character;
use crate::error::{Error, Result};

/// A box of a Young diagram, 0-based.  `row` counts from the top (longest
/// row), `col` from the left, so the box at the origin is `(0, 0)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Exponents (dq, dt) of the torus character q^col t^row of this box.
    pub fn char_exponents(&self) -> (i64, i64) {
        (self.col as i64, self.row as i64)
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Cell { row, col }
    }
}

impl From<Cell> for (usize, usize) {
    fn from(c: Cell) -> Self {
        (c.row, c.col)
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// Weakly decreasing sequence of positive integers.  Trailing zeros are never
/// stored, so the empty partition is the empty vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, rejecting input that is not weakly decreasing.
    /// Trailing zeros are allowed and dropped.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Builds a partition from an arbitrary multiset of part sizes.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |λ| = Σ λ_i.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// λ_{i+1} for 0-based `i`; zero beyond the last part.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Conjugate partition λ′ (reflect the diagram across the diagonal).
    pub fn conjugate(&self) -> Partition {
        let rows = self.part(0) as usize;
        let mut conj = Vec::with_capacity(rows);
        for c in 0..rows {
            conj.push(self.0.iter().take_while(|&&p| p as usize > c).count() as u32);
        }
        Partition(conj)
    }

    /// All boxes in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (0..p as usize).map(move |c| Cell::new(r, c)))
    }

    pub fn contains(&self, cell: Cell) -> bool {
        (cell.col as u64) < self.part(cell.row) as u64
    }

    /// arm(x): boxes strictly to the right of `x` in its row.
    pub fn arm(&self, cell: Cell) -> i64 {
        debug_assert!(self.contains(cell));
        self.part(cell.row) as i64 - cell.col as i64 - 1
    }

    /// leg(x): boxes strictly below `x` in its column.
    pub fn leg(&self, cell: Cell) -> i64 {
        debug_assert!(self.contains(cell));
        let below = self.0[cell.row + 1..]
            .iter()
            .take_while(|&&p| p as usize > cell.col)
            .count();
        below as i64
    }

    /// n(λ) = Σ_i (i−1) λ_i, the minimal grading shift statistic.
    pub fn n_stat(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// Corners whose removal leaves a partition, top to bottom.
    pub fn removable_cells(&self) -> Vec<Cell> {
        (0..self.0.len())
            .filter(|&r| self.0[r] > self.part(r + 1))
            .map(|r| Cell::new(r, self.0[r] as usize - 1))
            .collect()
    }

    /// Boxes whose addition gives a partition, top to bottom (includes the
    /// slot opening a new row).
    pub fn addable_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for r in 0..self.0.len() {
            if r == 0 || self.0[r - 1] > self.0[r] {
                out.push(Cell::new(r, self.0[r] as usize));
            }
        }
        out.push(Cell::new(self.0.len(), 0));
        out
    }

    pub fn remove_cell(&self, cell: Cell) -> Result<Partition> {
        if cell.row >= self.0.len()
            || cell.col as u64 + 1 != self.0[cell.row] as u64
            || self.part(cell.row + 1) == self.0[cell.row]
        {
            return Err(Error::BadPartition(format!(
                "{cell:?} is not a removable corner of {self}"
            )));
        }
        let mut parts = self.0.clone();
        parts[cell.row] -= 1;
        Partition::new(parts)
    }

    pub fn add_cell(&self, cell: Cell) -> Result<Partition> {
        let ok = if cell.row == self.0.len() {
            cell.col == 0
        } else {
            cell.row < self.0.len()
                && cell.col as u64 == self.0[cell.row] as u64
                && (cell.row == 0 || self.0[cell.row - 1] > self.0[cell.row])
        };
        if !ok {
            return Err(Error::BadPartition(format!(
                "{cell:?} is not addable to {self}"
            )));
        }
        let mut parts = self.0.clone();
        if cell.row == parts.len() {
            parts.push(1);
        } else {
            parts[cell.row] += 1;
        }
        Partition::new(parts)
    }

    /// Dominance order: Σ_{i≤j} self_i ≤ Σ_{i≤j} other_i for all j.  Only
    /// meaningful between partitions of equal size; returns false otherwise.
    pub fn dominance_le(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let mut a = 0u64;
        let mut b = 0u64;
        for j in 0..self.0.len().max(other.0.len()) {
            a += self.part(j) as u64;
            b += other.part(j) as u64;
            if a > b {
                return false;
            }
        }
        true
    }

    /// Σ_{x∈λ} q^{col} t^{row}.
    pub fn box_character(&self) -> Character {
        let mut ch = Character::zero();
        for cell in self.cells() {
            let (dq, dt) = cell.char_exponents();
            ch.add_term(dq, dt, 1);
        }
        ch
    }

    /// Character Σ_x (q^{arm+1} t^{−leg} + q^{−arm} t^{leg+1}).  A closed form
    /// in B = box_character is  qtB + B̄ − (q−1)(t−1)BB̄;  both routes are
    /// computed and compared.
    pub fn cotangent_hilb(&self) -> Character {
        let mut ch = Character::zero();
        for cell in self.cells() {
            let a = self.arm(cell);
            let l = self.leg(cell);
            ch.add_term(a + 1, -l, 1);
            ch.add_term(-a, l + 1, 1);
        }
        let b = self.box_character();
        let bbar = b.bar();
        // (q−1)(t−1) = qt − q − t + 1
        let mut qt_factor = Character::zero();
        qt_factor.add_term(1, 1, 1);
        qt_factor.add_term(1, 0, -1);
        qt_factor.add_term(0, 1, -1);
        qt_factor.add_term(0, 0, 1);
        let closed = b
            .shift(1, 1)
            .add(&bbar)
            .add(&qt_factor.mul(&b).mul(&bbar).scale(-1));
        assert_eq!(
            ch, closed,
            "box cotangent character: sum and closed form disagree on {self}"
        );
        ch
    }

    /// All partitions of `n`, sorted.
    pub fn enumerate(n: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(acc.clone()));
                return;
            }
            let mut p = max.min(rest);
            while p >= 1 {
                acc.push(p);
                rec(rest - p, p, acc, out);
                acc.pop();
                p -= 1;
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts "3,1", "(3,1)", "[3,1]", or "" / "()" for the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']'])
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::BadPartition(format!("bad part {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}
