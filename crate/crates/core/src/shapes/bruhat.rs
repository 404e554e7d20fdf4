//! Partial order on A(n,k) used for leading-term statements.
//!
//! An index x = (μ, a) is encoded as a vector α of length k + l with
//! l = n−k+1: positions 1..k hold (a_k+1, …, a_1+1) and the remaining l
//! positions hold the parts of μ padded with zeros, sorted ascending.  Three
//! kinds of moves go strictly down:
//!   1. swap α_i > α_j for i < j ≤ k (sorting a descent inside the a-block),
//!   2. swap α_i < α_j for i ≤ k < j (pulling the larger value from the
//!      μ-block into the a-block),
//!   3. for α_i < α_j − 1 replace (α_i, α_j) by (α_j − 1, α_i + 1), any pair.
//! After a move the μ-part is re-sorted; a-slots stay positive automatically
//! (moves only ever place values ≥ 1 there).  x ≤ y iff x is reachable
//! from y.  The orientation of the cross-block swap (move 2) and of move 1
//! is pinned down empirically by the triangularity of the word basis: with
//! any other orientation some image support has no unique maximal index.
//!
//! Termination and antisymmetry follow from the rank
//! (Σ α_i², Σ c_p α_p) decreasing strictly lexicographically along every
//! move, where the position weight c_p falls from k−1 to 0 across the
//! a-block and equals k on every μ-slot: transfers lower Σ α² and swaps
//! preserve it while lowering the weighted sum.
//!
//! At k = 0 only move 3 survives and the order becomes dominance on μ.

use std::collections::BTreeMap;

use crate::shapes::AIndex;

pub struct BruhatPoset {
    k: usize,
    padding: usize,
    elems: Vec<AIndex>,
    pos: BTreeMap<Vec<u32>, usize>,
    below: Vec<Vec<bool>>,
}

impl BruhatPoset {
    pub fn new(n: u32, k: usize) -> Self {
        Self::with_padding(n, k, (n as usize - k) + 1)
    }

    /// Padding only needs to leave one spare zero slot; any larger choice
    /// yields the same order (checked in tests).
    pub(crate) fn with_padding(n: u32, k: usize, padding: usize) -> Self {
        assert!(n as usize >= k);
        assert!(padding > n as usize - k, "padding must exceed n-k");
        let elems = AIndex::enumerate(n, k);
        let mut poset = BruhatPoset {
            k,
            padding,
            elems,
            pos: BTreeMap::new(),
            below: Vec::new(),
        };
        for (i, x) in poset.elems.iter().enumerate() {
            poset.pos.insert(poset.alpha(x), i);
        }
        let adjacency: Vec<Vec<usize>> = poset
            .elems
            .iter()
            .map(|x| {
                down_moves(&poset.alpha(x), k)
                    .into_iter()
                    .map(|target| *poset.pos.get(&target).expect("move target stays in A(n,k)"))
                    .collect()
            })
            .collect();
        poset.below = (0..poset.elems.len())
            .map(|start| {
                let mut seen = vec![false; poset.elems.len()];
                let mut stack = vec![start];
                seen[start] = true;
                while let Some(v) = stack.pop() {
                    for &w in &adjacency[v] {
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
                seen
            })
            .collect();
        poset
    }

    pub fn elements(&self) -> &[AIndex] {
        &self.elems
    }

    pub fn index_of(&self, x: &AIndex) -> Option<usize> {
        self.pos.get(&self.alpha(x)).copied()
    }

    /// The encoding vector of x, μ-part sorted ascending.
    pub(crate) fn alpha(&self, x: &AIndex) -> Vec<u32> {
        let mut alpha = Vec::with_capacity(self.k + self.padding);
        alpha.extend(x.a.iter().rev().map(|&ai| ai + 1));
        let mut tail = x.mu.parts().to_vec();
        tail.resize(self.padding, 0);
        tail.sort_unstable();
        alpha.extend(tail);
        alpha
    }

    /// x ≤ y in the order (x reachable from y by down-moves).
    pub fn le(&self, x: &AIndex, y: &AIndex) -> bool {
        let (ix, iy) = match (self.index_of(x), self.index_of(y)) {
            (Some(ix), Some(iy)) => (ix, iy),
            _ => return false,
        };
        self.below[iy][ix]
    }

    /// The unique ≤-maximal element of a nonempty set of indices, if the set
    /// has one that dominates every other element.
    pub fn unique_max<'a>(&self, set: &'a [AIndex]) -> Option<&'a AIndex> {
        let mut best: Option<&AIndex> = None;
        for s in set {
            match best {
                None => best = Some(s),
                Some(b) => {
                    if self.le(b, s) {
                        best = Some(s);
                    }
                }
            }
        }
        let best = best?;
        if set.iter().all(|s| self.le(s, best)) {
            Some(best)
        } else {
            None
        }
    }
}

/// All single-move targets from a canonical α, canonicalized.
fn down_moves(alpha: &[u32], k: usize) -> Vec<Vec<u32>> {
    let canonical = |mut v: Vec<u32>| {
        v[k..].sort_unstable();
        v
    };
    let mut out = Vec::new();
    for i in 0..alpha.len() {
        for j in 0..alpha.len() {
            let swap = if i < j && j < k {
                alpha[i] > alpha[j]
            } else if i < k && k <= j {
                alpha[i] < alpha[j]
            } else {
                false
            };
            if swap {
                let mut next = alpha.to_vec();
                next.swap(i, j);
                out.push(canonical(next));
            }
            if i != j && alpha[i] + 1 < alpha[j] {
                let mut next = alpha.to_vec();
                next[i] = alpha[j] - 1;
                next[j] = alpha[i] + 1;
                out.push(canonical(next));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// (Σ α_i², Σ c_p α_p) with c = (k−1, …, 1, 0) on the a-block and k on the
/// μ-block; strictly decreasing along moves.
#[cfg(test)]
fn alpha_rank(alpha: &[u32], k: usize) -> (u64, u64) {
    let sq = alpha.iter().map(|&v| v as u64 * v as u64).sum();
    let weighted = alpha
        .iter()
        .enumerate()
        .map(|(p, &v)| {
            let c = if p < k { (k - 1 - p) as u64 } else { k as u64 };
            c * v as u64
        })
        .sum();
    (sq, weighted)
}
