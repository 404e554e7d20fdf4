//! Flags of partitions.
//!
//! A flag point is a partition λ of n together with an ordered list of k
//! boxes □_1, …, □_k such that removing them in order passes through valid
//! partitions λ = λ^{(n)} ⊃ λ^{(n−1)} ⊃ … ⊃ λ^{(n−k)} and the removed boxes
//! occupy pairwise distinct columns (λ^{(n)}/λ^{(n−k)} is a horizontal
//! strip).  The box □_m carries the line weight w_m = q^{col} t^{row}.
//!
//! The cotangent character of a flag point is
//!     qt·B_μ + B̄_λ − (q−1)(t−1)·B_μ·B̄_λ + (q−1)·Σ_{k≥i≥j≥1} w_i/w_j
//! with μ = λ^{(n−k)}; it has nonnegative multiplicities summing to 2n−k.
//! Two independent reroutes of the same character are provided: one through
//! the interleaved partition, one through an arm/leg box sum.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Character;
use crate::error::{Error, Result};
use crate::shapes::{Cell, Partition};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "FlagRepr", into = "FlagRepr")]
pub struct FlagPoint {
    lambda: Partition,
    order: Vec<Cell>,
}

#[derive(Serialize, Deserialize)]
struct FlagRepr {
    lambda: Partition,
    order: Vec<Cell>,
}

impl TryFrom<FlagRepr> for FlagPoint {
    type Error = Error;
    fn try_from(r: FlagRepr) -> Result<Self> {
        FlagPoint::new(r.lambda, r.order)
    }
}

impl From<FlagPoint> for FlagRepr {
    fn from(p: FlagPoint) -> Self {
        FlagRepr {
            lambda: p.lambda,
            order: p.order,
        }
    }
}

impl FlagPoint {
    pub fn new(lambda: Partition, order: Vec<Cell>) -> Result<Self> {
        let mut current = lambda.clone();
        for (m, &cell) in order.iter().enumerate() {
            if order[..m].iter().any(|c| c.col == cell.col) {
                return Err(Error::InvalidFlag(format!(
                    "box {cell:?} repeats a column of an earlier box"
                )));
            }
            current = current.remove_cell(cell).map_err(|_| {
                Error::InvalidFlag(format!("box {cell:?} is not removable at step {}", m + 1))
            })?;
        }
        Ok(FlagPoint { lambda, order })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn order(&self) -> &[Cell] {
        &self.order
    }

    pub fn n(&self) -> u32 {
        self.lambda.size()
    }

    pub fn k(&self) -> usize {
        self.order.len()
    }

    /// λ^{(n)} ⊃ λ^{(n−1)} ⊃ … ⊃ λ^{(n−k)}, largest first (k+1 shapes).
    pub fn chain(&self) -> Vec<Partition> {
        let mut chain = Vec::with_capacity(self.order.len() + 1);
        chain.push(self.lambda.clone());
        let mut current = self.lambda.clone();
        for &cell in &self.order {
            current = current.remove_cell(cell).expect("validated in new");
            chain.push(current.clone());
        }
        chain
    }

    /// λ^{(n−k)}, the shape left after all removals.
    pub fn bottom(&self) -> Partition {
        let mut current = self.lambda.clone();
        for &cell in &self.order {
            current = current.remove_cell(cell).expect("validated in new");
        }
        current
    }

    /// Exponents of w_m = q^{col} t^{row} for 1-based m ≤ k.
    pub fn w_exp(&self, m: usize) -> (i64, i64) {
        self.order[m - 1].char_exponents()
    }

    /// Cotangent character; panics if the result is not an honest character
    /// of dimension 2n−k (that would be a kernel bug, not bad input).
    pub fn cotangent(&self) -> Character {
        let mu = self.bottom();
        let b_mu = mu.box_character();
        let bstar = self.lambda.box_character().bar();
        // (q−1)(t−1) = qt − q − t + 1
        let mut qt_factor = Character::zero();
        qt_factor.add_term(1, 1, 1);
        qt_factor.add_term(1, 0, -1);
        qt_factor.add_term(0, 1, -1);
        qt_factor.add_term(0, 0, 1);
        let mut ch = b_mu
            .shift(1, 1)
            .add(&bstar)
            .add(&qt_factor.mul(&b_mu).mul(&bstar).scale(-1));
        let k = self.k();
        for i in 1..=k {
            for j in 1..=i {
                let (qi, ti) = self.w_exp(i);
                let (qj, tj) = self.w_exp(j);
                // (q−1)·w_i/w_j
                ch.add_term(qi - qj + 1, ti - tj, 1);
                ch.add_term(qi - qj, ti - tj, -1);
            }
        }
        assert!(
            ch.all_nonnegative(),
            "cotangent character of {self} has a negative multiplicity"
        );
        assert_eq!(
            ch.dim(),
            2 * self.n() as i64 - k as i64,
            "cotangent character of {self} has wrong dimension"
        );
        ch
    }

    /// Single partition obtained by interleaving the rows of the chain,
    /// largest member first:  ν = (λ^{(n)}_1, …, λ^{(n−k)}_1, λ^{(n)}_2, …).
    /// This is weakly decreasing exactly because consecutive chain members
    /// nest and λ^{(n)}/λ^{(n−k)} is a horizontal strip.
    pub fn interleave(&self) -> Partition {
        let chain = self.chain();
        let mut parts = Vec::with_capacity(self.lambda.len() * chain.len());
        for r in 0..self.lambda.len() {
            for member in &chain {
                parts.push(member.part(r));
            }
        }
        Partition::new(parts).expect("chain rows interleave into a partition")
    }

    /// Cotangent character recovered from the interleaved partition: take its
    /// box cotangent character, keep only t-degrees divisible by k+1, and
    /// divide those t-degrees by k+1.
    pub fn cotangent_via_interleave(&self) -> Character {
        let m = self.k() as i64 + 1;
        let omega = self.interleave().cotangent_hilb();
        let mut out = Character::zero();
        for (&(dq, dt), &mult) in omega.iter() {
            if dt.rem_euclid(m) == 0 {
                out.add_term(dq, dt / m, mult);
            }
        }
        out
    }

    /// Tangent character as a box sum.  Every box x of μ = λ^{(n−k)}
    /// contributes two monomials built from its leg l in μ and an arm taken
    /// in a chain member depending on x's column:
    ///   · no removed box in x's column:
    ///         q^{arm_μ(x)+1} t^{−l} + q^{−arm_λ(x)} t^{l+1},
    ///   · removed box □_i in x's column, a = arm of x in λ^{(n−i+1)} (the
    ///     shape □_i is about to leave; removing a same-column box never
    ///     changes an arm, so λ^{(n−i)} gives the same value):
    ///         q^{a+1} t^{−l−1} + q^{−a} t^{l+1}.
    /// Adding k·q and applying q,t ↦ q^{-1},t^{-1} gives the dual of the
    /// cotangent character through an independent route.
    pub fn tangent_theta(&self) -> Character {
        let chain = self.chain();
        let k = self.k();
        let mu = &chain[k];
        let mut total = Character::zero();
        total.add_term(1, 0, k as i64);
        for cell in mu.cells() {
            let l = mu.leg(cell);
            let strip_label = self
                .order
                .iter()
                .position(|c| c.col == cell.col)
                .map(|idx| idx + 1);
            match strip_label {
                None => {
                    total.add_term(mu.arm(cell) + 1, -l, 1);
                    total.add_term(-chain[0].arm(cell), l + 1, 1);
                }
                Some(i) => {
                    let a = chain[i - 1].arm(cell);
                    total.add_term(a + 1, -l - 1, 1);
                    total.add_term(-a, l + 1, 1);
                }
            }
        }
        total.bar()
    }

    /// All flag points with |λ| = n and k ordered removals, sorted.
    pub fn enumerate(n: u32, k: usize) -> Vec<FlagPoint> {
        fn rec(
            lambda: &Partition,
            current: &Partition,
            remaining: usize,
            order: &mut Vec<Cell>,
            out: &mut Vec<FlagPoint>,
        ) {
            if remaining == 0 {
                out.push(FlagPoint {
                    lambda: lambda.clone(),
                    order: order.clone(),
                });
                return;
            }
            for corner in current.removable_cells() {
                if order.iter().any(|c| c.col == corner.col) {
                    continue;
                }
                let next = current.remove_cell(corner).expect("removable corner");
                order.push(corner);
                rec(lambda, &next, remaining - 1, order, out);
                order.pop();
            }
        }
        let mut out = Vec::new();
        for lam in Partition::enumerate(n) {
            rec(&lam, &lam, k, &mut Vec::new(), &mut out);
        }
        out.sort();
        out
    }
}

impl fmt::Display for FlagPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; [", self.lambda)?;
        for (i, c) in self.order.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, "])")
    }
}

impl fmt::Debug for FlagPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
