//! The index set A(n,k): pairs x = (μ, a) of a partition μ and a vector
//! a ∈ ℤ_{≥0}^k with |μ| + |a| + k = n, in bijection with flag points.
//!
//! The bijection reads off column lengths: the chain member with i boxes
//! removed has column-length multiset
//!     μ ∪ {a_1, …, a_i} ∪ {a_{i+1}+1, …, a_k+1}   (zeros dropped),
//! so the i-th removal turns the column of length a_i+1 into one of length
//! a_i.  Conversely the conjugate multisets of a chain determine a and μ.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::shapes::{Cell, FlagPoint, Partition};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AIndex {
    pub mu: Partition,
    pub a: Vec<u32>,
}

impl AIndex {
    pub fn new(mu: Partition, a: Vec<u32>) -> Self {
        AIndex { mu, a }
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn n(&self) -> u32 {
        self.mu.size() + self.a.iter().sum::<u32>() + self.a.len() as u32
    }

    /// Column-length multiset of the chain member with `removed` boxes gone.
    fn column_multiset(&self, removed: usize) -> Vec<u32> {
        let mut cols: Vec<u32> = self.mu.parts().to_vec();
        cols.extend(self.a[..removed].iter().copied());
        cols.extend(self.a[removed..].iter().map(|&ai| ai + 1));
        cols
    }

    pub fn to_flag(&self) -> FlagPoint {
        let k = self.k();
        let chain: Vec<Partition> = (0..=k)
            .map(|i| Partition::from_unsorted(self.column_multiset(i)).conjugate())
            .collect();
        let mut order = Vec::with_capacity(k);
        for i in 1..=k {
            order.push(removed_cell(&chain[i - 1], &chain[i]));
        }
        FlagPoint::new(chain[0].clone(), order).expect("index chain is a valid flag")
    }

    pub fn from_flag(p: &FlagPoint) -> Self {
        let chain = p.chain();
        let k = p.k();
        let multisets: Vec<Vec<u32>> = chain
            .iter()
            .map(|s| s.conjugate().parts().to_vec())
            .collect();
        let mut a = Vec::with_capacity(k);
        for i in 1..=k {
            // exactly one column shrinks by one box per step
            let removed = multiset_diff(&multisets[i - 1], &multisets[i]);
            let added = multiset_diff(&multisets[i], &multisets[i - 1]);
            assert_eq!(
                removed.len(),
                1,
                "chain step {i} of {p} changes several columns"
            );
            let v = removed[0];
            match added.as_slice() {
                [] => assert_eq!(v, 1, "chain step {i} of {p} loses a column of length {v}"),
                [w] => assert_eq!(*w + 1, v, "chain step {i} of {p} is not a single-box move"),
                _ => panic!("chain step {i} of {p} changes several columns"),
            }
            a.push(v - 1);
        }
        let mut rest = multisets[k].clone();
        for &ai in &a {
            if ai > 0 {
                let pos = rest
                    .iter()
                    .position(|&c| c == ai)
                    .expect("marked column present");
                rest.remove(pos);
            }
        }
        let x = AIndex {
            mu: Partition::from_unsorted(rest),
            a,
        };
        debug_assert_eq!(&x.to_flag(), p);
        x
    }

    /// All of A(n,k), sorted by (μ, a).
    pub fn enumerate(n: u32, k: usize) -> Vec<AIndex> {
        fn comps(k: usize, s: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if k == 0 {
                if s == 0 {
                    out.push(acc.clone());
                }
                return;
            }
            for v in 0..=s {
                acc.push(v);
                comps(k - 1, s - v, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        if (n as usize) < k {
            return out;
        }
        let budget = n - k as u32;
        for s in 0..=budget {
            let mut alist = Vec::new();
            comps(k, s, &mut Vec::new(), &mut alist);
            for mu in Partition::enumerate(budget - s) {
                for a in &alist {
                    out.push(AIndex {
                        mu: mu.clone(),
                        a: a.clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }
}

/// The unique box present in `bigger` but not `smaller`.
fn removed_cell(bigger: &Partition, smaller: &Partition) -> Cell {
    let mut found = None;
    for r in 0..bigger.len() {
        let (hi, lo) = (bigger.part(r), smaller.part(r));
        if hi != lo {
            assert!(
                hi == lo + 1 && found.is_none(),
                "{bigger} / {smaller} is not a single box"
            );
            found = Some(Cell::new(r, lo as usize));
        }
    }
    found.expect("shapes are equal")
}

/// Elements of `a` left after cancelling one copy of each shared element
/// with `b` (both weakly decreasing).
fn multiset_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] > x {
            j += 1;
        }
        if j < b.len() && b[j] == x {
            j += 1;
        } else {
            out.push(x);
        }
    }
    out
}

impl fmt::Display for AIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; a=(", self.mu)?;
        for (i, v) in self.a.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "))")
    }
}

impl fmt::Debug for AIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn worked_chain() {
        let x = AIndex::new(p(&[3, 1]), vec![1, 0, 1, 2, 3]);
        assert_eq!(x.n(), 16);
        let f = x.to_flag();
        let chain = f.chain();
        let expect = [
            p(&[7, 5, 3, 1]),
            p(&[7, 4, 3, 1]),
            p(&[6, 4, 3, 1]),
            p(&[6, 3, 3, 1]),
            p(&[6, 3, 2, 1]),
            p(&[6, 3, 2]),
        ];
        assert_eq!(chain.as_slice(), expect.as_slice());
        assert_eq!(AIndex::from_flag(&f), x);
    }

    #[test]
    fn degenerate_k0() {
        let x = AIndex::new(p(&[3, 1]), vec![]);
        let f = x.to_flag();
        assert_eq!(f.lambda(), &p(&[2, 1, 1]));
        assert!(f.order().is_empty());
        assert_eq!(AIndex::from_flag(&f), x);
    }

    #[test]
    fn bijection_with_flags() {
        for n in 0..=6u32 {
            for k in 0..=3usize.min(n as usize) {
                let indices = AIndex::enumerate(n, k);
                let flags = FlagPoint::enumerate(n, k);
                assert_eq!(indices.len(), flags.len(), "sizes at n={n} k={k}");
                for x in &indices {
                    assert_eq!(&AIndex::from_flag(&x.to_flag()), x);
                }
                for f in &flags {
                    assert_eq!(&AIndex::from_flag(f).to_flag(), f);
                }
            }
        }
    }

    #[test]
    fn enumeration_is_sorted() {
        let all = AIndex::enumerate(5, 2);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        // |A(n,k)| = Σ_s p(n−k−s)·#{a ∈ ℤ_{≥0}^k, |a| = s}
        assert_eq!(AIndex::enumerate(4, 1).len(), 3 + 2 + 1 + 1);
    }
}
