//! Shared fixtures for the engine benchmarks.

use bqt_core::{BasisTag, FlagPoint, KVector, Partition, QTFraction};

/// The unit vector at the unmarked staircase-ish partition of `n`.
pub fn staircase_vector(n: u32) -> KVector {
    let mut parts = Vec::new();
    let mut left = n;
    let mut next = 1u32;
    while left > 0 {
        let take = next.min(left);
        parts.push(take);
        left -= take;
        next += 1;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    let lam = Partition::new(parts).expect("weakly decreasing");
    KVector::unit(
        FlagPoint::new(lam, Vec::new()).expect("valid flag"),
        BasisTag::H,
    )
}

/// A moderately large exact fraction exercising gcd reduction.
pub fn dense_fraction(degree: i64) -> QTFraction {
    let mut acc = QTFraction::one();
    for i in 1..=degree {
        let num = QTFraction::monomial(i, 0) - QTFraction::monomial(0, i);
        let den = QTFraction::monomial(i, i) - QTFraction::one();
        acc = acc * (num / den);
    }
    acc
}
