//! Symmetric functions over Q(q,t), stored exactly in the Schur basis with a
//! hard degree budget: any operation that would create a term of degree above
//! the budget fails with `DegreeBudget` instead of silently truncating.
//!
//! Basis bridges run through power sums using Murnaghan–Nakayama characters,
//!     p_mu = sum_lam chi^lam_mu s_lam,    s_lam = sum_mu chi^lam_mu p_mu / z_mu,
//! and multiplication by e_j (resp. h_j) adds vertical (resp. horizontal)
//! strips.  Adjoining a single letter of value c*y expands by strips below:
//!     F[X + c y] = sum_m y^m * (horizontal strips, weight c^m),
//!     F[X - c y] = sum_m y^m * (vertical strips, weight (-c)^m),
//! so p_r[X + c y] = p_r + c^r y^r with the scalar convention c^r.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::QTFraction;
use crate::error::{Error, Result};
use crate::shapes::Partition;

/// Exact symmetric function in the Schur basis, capped at degree `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFunc {
    cap: u32,
    terms: BTreeMap<Partition, QTFraction>,
}

impl SymFunc {
    pub const DEFAULT_CAP: u32 = 8;

    pub fn zero(cap: u32) -> Self {
        SymFunc {
            cap,
            terms: BTreeMap::new(),
        }
    }

    /// The unit s_{()} = 1.
    pub fn one(cap: u32) -> Self {
        let mut f = SymFunc::zero(cap);
        f.terms.insert(Partition::empty(), QTFraction::one());
        f
    }

    pub fn schur(lam: Partition, cap: u32) -> Result<Self> {
        check_budget(lam.size(), cap)?;
        let mut f = SymFunc::zero(cap);
        f.terms.insert(lam, QTFraction::one());
        Ok(f)
    }

    /// e_j = s_{(1^j)}.
    pub fn e(j: u32, cap: u32) -> Result<Self> {
        SymFunc::schur(Partition::new(vec![1; j as usize])?, cap)
    }

    /// h_j = s_{(j)}.
    pub fn h(j: u32, cap: u32) -> Result<Self> {
        let lam = if j == 0 {
            Partition::empty()
        } else {
            Partition::new(vec![j])?
        };
        SymFunc::schur(lam, cap)
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lam: &Partition) -> QTFraction {
        self.terms
            .get(lam)
            .cloned()
            .unwrap_or_else(QTFraction::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &QTFraction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Maximal |lam| over the support, if nonzero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|l| l.size()).max()
    }

    /// True when every term is homogeneous of degree d.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|l| l.size() == d)
    }

    pub fn add_term(&mut self, lam: Partition, c: QTFraction) -> Result<()> {
        check_budget(lam.size(), self.cap)?;
        // support == nonzero coefficients, so Eq stays honest
        let new = match self.terms.get(&lam) {
            Some(old) => old + &c,
            None => c,
        };
        if new.is_zero() {
            self.terms.remove(&lam);
        } else {
            self.terms.insert(lam, new);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        out.cap = self.cap.max(rhs.cap);
        for (lam, c) in &rhs.terms {
            out.add_term(lam.clone(), c.clone())
                .expect("add stays within the larger budget");
        }
        out
    }

    pub fn sub(&self, rhs: &SymFunc) -> SymFunc {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> SymFunc {
        self.scale(&-QTFraction::one())
    }

    pub fn scale(&self, c: &QTFraction) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero(self.cap);
        }
        SymFunc {
            cap: self.cap,
            terms: self.terms.iter().map(|(l, v)| (l.clone(), v * c)).collect(),
        }
    }

    /// Pieri rule: multiply by e_j, adding vertical strips of size j.
    pub fn mul_e(&self, j: u32) -> Result<SymFunc> {
        let mut out = SymFunc::zero(self.cap);
        for (lam, c) in &self.terms {
            check_budget(lam.size() + j, self.cap)?;
            for mu in vertical_strips_above(lam, j) {
                out.add_term(mu, c.clone())?;
            }
        }
        Ok(out)
    }

    /// Pieri rule: multiply by h_j, adding horizontal strips of size j.
    pub fn mul_h(&self, j: u32) -> Result<SymFunc> {
        let mut out = SymFunc::zero(self.cap);
        for (lam, c) in &self.terms {
            check_budget(lam.size() + j, self.cap)?;
            for mu in horizontal_strips_above(lam, j) {
                out.add_term(mu, c.clone())?;
            }
        }
        Ok(out)
    }

    /// F[X + c·y] split by the power of the new letter: entry m is the
    /// coefficient of y^m (horizontal strips below, weight c^m).
    pub fn pleth_add_letter(&self, c: &QTFraction) -> Vec<SymFunc> {
        self.letter_strips(c, false)
    }

    /// F[X − c·y] split by the power of the removed letter: entry m is the
    /// coefficient of y^m (vertical strips below, weight (−c)^m).
    pub fn pleth_sub_letter(&self, c: &QTFraction) -> Vec<SymFunc> {
        self.letter_strips(&-c.clone(), true)
    }

    fn letter_strips(&self, c: &QTFraction, vertical: bool) -> Vec<SymFunc> {
        let top = self.degree().unwrap_or(0) as usize;
        let mut out = vec![SymFunc::zero(self.cap); top + 1];
        for (lam, coeff) in &self.terms {
            let strips = if vertical {
                vertical_strips_below(lam)
            } else {
                horizontal_strips_below(lam)
            };
            for (mu, m) in strips {
                let w = coeff * &c.pow(m as i64).expect("nonnegative power");
                out[m as usize]
                    .add_term(mu, w)
                    .expect("strips only lower the degree");
            }
        }
        out
    }

    /// The power-sum expansion, as (mu, coefficient of p_mu) pairs.
    pub fn to_p_expansion(&self) -> Vec<(Partition, QTFraction)> {
        let mut out = Vec::new();
        for d in self.degrees() {
            let block: Vec<(&Partition, &QTFraction)> =
                self.terms.iter().filter(|(l, _)| l.size() == d).collect();
            for mu in Partition::enumerate(d) {
                let mut acc = QTFraction::zero();
                for (lam, c) in &block {
                    let chi = mn_character(lam, &mu);
                    if chi != 0 {
                        acc = &acc + &c.scale_rat(&BigRational::from(BigInt::from(chi)));
                    }
                }
                if !acc.is_zero() {
                    let acc = acc.scale_rat(&z_mu(&mu).recip());
                    out.push((mu, acc));
                }
            }
        }
        out
    }

    pub fn from_p_expansion(terms: &[(Partition, QTFraction)], cap: u32) -> Result<SymFunc> {
        let mut out = SymFunc::zero(cap);
        for (mu, c) in terms {
            check_budget(mu.size(), cap)?;
            for lam in Partition::enumerate(mu.size()) {
                let chi = mn_character(&lam, mu);
                if chi != 0 {
                    out.add_term(lam, c.scale_rat(&BigRational::from(BigInt::from(chi))))?;
                }
            }
        }
        Ok(out)
    }

    /// The expansion over products e_mu = e_{mu_1} e_{mu_2} ⋯.
    ///
    /// e_mu = s_{mu'} + (dominance-lower terms), so repeatedly strip the
    /// dominance-maximal remaining Schur term.
    pub fn to_e_expansion(&self) -> Vec<(Partition, QTFraction)> {
        let mut rest = self.clone();
        let mut out = Vec::new();
        while let Some(lam) = dominance_extreme(&rest, true) {
            let c = rest.coeff(&lam);
            let mu = lam.conjugate();
            let expanded = SymFunc::from_e_expansion(&[(mu.clone(), c.clone())], rest.cap)
                .expect("e-product of an existing term fits the budget");
            rest = rest.sub(&expanded);
            out.push((mu, c));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn from_e_expansion(terms: &[(Partition, QTFraction)], cap: u32) -> Result<SymFunc> {
        let mut out = SymFunc::zero(cap);
        for (mu, c) in terms {
            let mut prod = SymFunc::one(cap);
            for &part in mu.parts() {
                prod = prod.mul_e(part)?;
            }
            out = out.add(&prod.scale(c));
        }
        Ok(out)
    }

    /// The expansion over products h_mu; h_mu = s_mu + (dominance-higher
    /// terms), so strip the dominance-minimal remaining Schur term.
    pub fn to_h_expansion(&self) -> Vec<(Partition, QTFraction)> {
        let mut rest = self.clone();
        let mut out = Vec::new();
        while let Some(lam) = dominance_extreme(&rest, false) {
            let c = rest.coeff(&lam);
            let expanded = SymFunc::from_h_expansion(&[(lam.clone(), c.clone())], rest.cap)
                .expect("h-product of an existing term fits the budget");
            rest = rest.sub(&expanded);
            out.push((lam, c));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn from_h_expansion(terms: &[(Partition, QTFraction)], cap: u32) -> Result<SymFunc> {
        let mut out = SymFunc::zero(cap);
        for (mu, c) in terms {
            let mut prod = SymFunc::one(cap);
            for &part in mu.parts() {
                prod = prod.mul_h(part)?;
            }
            out = out.add(&prod.scale(c));
        }
        Ok(out)
    }

    /// The alphabet rescaling p_r ↦ f(r)·p_r (e.g. X ↦ X(1−q) via
    /// f(r) = 1 − q^r), computed through the power-sum bridge.
    pub fn alphabet_scale(&self, f: impl Fn(u32) -> QTFraction) -> SymFunc {
        let mut scaled = Vec::new();
        for (mu, c) in self.to_p_expansion() {
            let factor = QTFraction::product(mu.parts().iter().map(|&r| f(r)));
            let c = &c * &factor;
            if !c.is_zero() {
                scaled.push((mu, c));
            }
        }
        SymFunc::from_p_expansion(&scaled, self.cap).expect("rescaling preserves degrees")
    }

    /// Sorted list of degrees present in the support.
    fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|l| l.size()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (lam, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*s{lam}")?;
        }
        Ok(())
    }
}

fn check_budget(needed: u32, cap: u32) -> Result<()> {
    if needed > cap {
        Err(Error::DegreeBudget { needed, cap })
    } else {
        Ok(())
    }
}

/// A maximal (or minimal) element of the support in dominance order.
fn dominance_extreme(f: &SymFunc, maximal: bool) -> Option<Partition> {
    let mut best: Option<Partition> = None;
    for lam in f.terms.keys() {
        let replace = match &best {
            None => true,
            Some(b) => {
                if maximal {
                    b.dominance_le(lam)
                } else {
                    lam.dominance_le(b)
                }
            }
        };
        if replace {
            best = Some(lam.clone());
        }
    }
    // One pass suffices: the candidate only moves toward the extreme, so any
    // element strictly beyond the final candidate would have displaced the
    // then-current one when it was scanned (transitivity).
    best
}

/// mu with 0 < mu_i ≤ lam_i and lam/mu a horizontal strip (≤1 box/column),
/// i.e. the interlacing lam_{i+1} ≤ mu_i ≤ lam_i, with the strip size.
fn horizontal_strips_below(lam: &Partition) -> Vec<(Partition, u32)> {
    let parts = lam.parts();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts.len());
    fn rec(
        parts: &[u32],
        i: usize,
        removed: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<(Partition, u32)>,
    ) {
        if i == parts.len() {
            out.push((Partition::from_unsorted(cur.clone()), removed));
            return;
        }
        let lo = parts.get(i + 1).copied().unwrap_or(0);
        for m in lo..=parts[i] {
            cur.push(m);
            rec(parts, i + 1, removed + parts[i] - m, cur, out);
            cur.pop();
        }
    }
    rec(parts, 0, 0, &mut cur, &mut out);
    out
}

/// mu ⊆ lam with lam/mu a vertical strip (≤1 box/row), with the strip size.
fn vertical_strips_below(lam: &Partition) -> Vec<(Partition, u32)> {
    let parts = lam.parts();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts.len());
    fn rec(
        parts: &[u32],
        i: usize,
        removed: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<(Partition, u32)>,
    ) {
        if i == parts.len() {
            out.push((Partition::from_unsorted(cur.clone()), removed));
            return;
        }
        for d in 0..=1u32 {
            let m = parts[i] - d;
            // keep mu weakly decreasing
            if cur.last().map_or(true, |&prev| prev >= m) {
                cur.push(m);
                rec(parts, i + 1, removed + d, cur, out);
                cur.pop();
            }
        }
    }
    rec(parts, 0, 0, &mut cur, &mut out);
    out
}

/// mu ⊇ lam with mu/lam a vertical strip of size exactly j.
fn vertical_strips_above(lam: &Partition, j: u32) -> Vec<Partition> {
    let mut parts = lam.parts().to_vec();
    parts.resize(parts.len() + j as usize, 0);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts.len());
    fn rec(parts: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == parts.len() {
            if left == 0 {
                out.push(Partition::from_unsorted(cur.clone()));
            }
            return;
        }
        for d in 0..=1u32.min(left) {
            let m = parts[i] + d;
            if cur.last().map_or(true, |&prev| prev >= m) {
                cur.push(m);
                rec(parts, i + 1, left - d, cur, out);
                cur.pop();
            }
        }
    }
    rec(&parts, 0, j, &mut cur, &mut out);
    out
}

/// mu ⊇ lam with mu/lam a horizontal strip of size exactly j.
fn horizontal_strips_above(lam: &Partition, j: u32) -> Vec<Partition> {
    let mut parts = lam.parts().to_vec();
    parts.push(0);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts.len());
    fn rec(parts: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == parts.len() {
            if left == 0 {
                out.push(Partition::from_unsorted(cur.clone()));
            }
            return;
        }
        // interlacing upwards: lam_i ≤ mu_i ≤ lam_{i−1}
        let hi = if i == 0 {
            parts[0] + left
        } else {
            parts[i - 1]
        };
        for m in parts[i]..=hi.min(parts[i] + left) {
            cur.push(m);
            rec(parts, i + 1, left - (m - parts[i]), cur, out);
            cur.pop();
        }
    }
    rec(&parts, 0, j, &mut cur, &mut out);
    out
}

/// Murnaghan–Nakayama: the symmetric group character chi^lam_mu, via repeated
/// border-strip removal on beta-sets.  Values at the sizes used here fit i64
/// comfortably.
pub fn mn_character(lam: &Partition, mu: &Partition) -> i64 {
    assert_eq!(lam.size(), mu.size(), "character requires |lam| = |mu|");
    let mut memo = HashMap::new();
    mn_rec(lam.parts().to_vec(), mu.parts(), 0, &mut memo)
}

fn mn_rec(
    lam: Vec<u32>,
    mu: &[u32],
    pos: usize,
    memo: &mut HashMap<(Vec<u32>, usize), i64>,
) -> i64 {
    if pos == mu.len() {
        debug_assert!(lam.is_empty());
        return 1;
    }
    if let Some(&v) = memo.get(&(lam.clone(), pos)) {
        return v;
    }
    let r = mu[pos];
    let l = lam.len();
    // beta-set of length l: beta_i = lam_i + (l − 1 − i), strictly decreasing
    let beta: Vec<u32> = lam
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (l - 1 - i) as u32)
        .collect();
    let mut total = 0i64;
    for i in 0..l {
        if beta[i] < r {
            continue;
        }
        let nb = beta[i] - r;
        if beta.contains(&nb) {
            continue;
        }
        let height = beta.iter().filter(|&&b| b > nb && b < beta[i]).count();
        let mut nbeta: Vec<u32> = beta.iter().copied().filter(|&b| b != beta[i]).collect();
        nbeta.push(nb);
        nbeta.sort_unstable_by(|a, b| b.cmp(a));
        let next: Vec<u32> = nbeta
            .iter()
            .enumerate()
            .map(|(jj, &b)| b - (l - 1 - jj) as u32)
            .filter(|&p| p > 0)
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(next, mu, pos + 1, memo);
    }
    memo.insert((lam, pos), total);
    total
}

/// z_mu = prod mu_i * prod (multiplicities)!.
pub fn z_mu(mu: &Partition) -> BigRational {
    let mut z = BigInt::from(1);
    let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
    for &p in mu.parts() {
        z *= BigInt::from(p);
        *mult.entry(p).or_insert(0) += 1;
    }
    for (_, m) in mult {
        for f in 1..=m {
            z *= BigInt::from(f);
        }
    }
    BigRational::from(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn s(parts: &[u32]) -> SymFunc {
        SymFunc::schur(p(parts), 8).unwrap()
    }

    #[test]
    fn characters_and_z() {
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[1, 1, 1])), 2);
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[2, 1])), 0);
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[3])), -1);
        assert_eq!(mn_character(&p(&[2, 2]), &p(&[2, 2])), 2);
        assert_eq!(mn_character(&p(&[3, 1]), &p(&[1, 1, 1, 1])), 3);
        for mu in Partition::enumerate(5) {
            assert_eq!(mn_character(&p(&[5]), &mu), 1, "trivial character at {mu}");
            let sign = if (5 - mu.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                mn_character(&p(&[1; 5]), &mu),
                sign,
                "sign character at {mu}"
            );
        }
        assert_eq!(z_mu(&p(&[1, 1, 1])), BigRational::from(BigInt::from(6)));
        assert_eq!(z_mu(&p(&[2, 1])), BigRational::from(BigInt::from(2)));
        assert_eq!(z_mu(&p(&[3])), BigRational::from(BigInt::from(3)));
    }

    #[test]
    fn pieri_products() {
        // e_1 * s_(1) = s_(2) + s_(1,1)
        let f = s(&[1]).mul_e(1).unwrap();
        assert_eq!(f, s(&[2]).add(&s(&[1, 1])));
        // e_2 * s_(2) = s_(3,1) + s_(2,1,1)
        let f = s(&[2]).mul_e(2).unwrap();
        assert_eq!(f, s(&[3, 1]).add(&s(&[2, 1, 1])));
        // h_2 * s_(1) = s_(3) + s_(2,1)
        let f = s(&[1]).mul_h(2).unwrap();
        assert_eq!(f, s(&[3]).add(&s(&[2, 1])));
    }

    #[test]
    fn power_sum_bridge_round_trips() {
        // p_2 = s_(2) − s_(1,1),  p_3 = s_(3) − s_(2,1) + s_(1,1,1)
        let p2 = SymFunc::from_p_expansion(&[(p(&[2]), QTFraction::one())], 8).unwrap();
        assert_eq!(p2, s(&[2]).sub(&s(&[1, 1])));
        let p3 = SymFunc::from_p_expansion(&[(p(&[3]), QTFraction::one())], 8).unwrap();
        assert_eq!(p3, s(&[3]).sub(&s(&[2, 1])).add(&s(&[1, 1, 1])));

        let mix = s(&[2, 1])
            .scale(&QTFraction::q())
            .add(&s(&[1]).sub(&s(&[3])));
        let back = SymFunc::from_p_expansion(&mix.to_p_expansion(), 8).unwrap();
        assert_eq!(back, mix);
    }

    #[test]
    fn e_h_bridges_round_trip() {
        // e_2 = s_(1,1) and h_2 = s_(2), as expansions
        assert_eq!(
            s(&[1, 1]).to_e_expansion(),
            vec![(p(&[2]), QTFraction::one())]
        );
        assert_eq!(s(&[2]).to_h_expansion(), vec![(p(&[2]), QTFraction::one())]);
        let mix = s(&[3])
            .add(&s(&[2, 1]).scale(&QTFraction::t()))
            .sub(&s(&[1, 1, 1]));
        let via_e = SymFunc::from_e_expansion(&mix.to_e_expansion(), 8).unwrap();
        assert_eq!(via_e, mix);
        let via_h = SymFunc::from_h_expansion(&mix.to_h_expansion(), 8).unwrap();
        assert_eq!(via_h, mix);
    }

    #[test]
    fn single_letter_plethysm_uses_scalar_powers() {
        // p_2[X − c y] = p_2 − c^2 y^2 for the scalar letter c = q−1: the strip
        // route must agree with the direct power-sum computation.
        let c = &QTFraction::q() - &QTFraction::one();
        let p2 = SymFunc::from_p_expansion(&[(p(&[2]), QTFraction::one())], 8).unwrap();
        let parts = p2.pleth_sub_letter(&c);
        assert_eq!(parts[0], p2);
        assert!(parts[1].is_zero());
        assert_eq!(parts[2], SymFunc::one(8).scale(&-(&c * &c)));

        // and on the adding side e_1[X + c y] = e_1 + c y
        let e1 = s(&[1]);
        let parts = e1.pleth_add_letter(&c);
        assert_eq!(parts[0], e1);
        assert_eq!(parts[1], SymFunc::one(8).scale(&c));
    }

    #[test]
    fn adding_then_removing_a_letter_is_identity() {
        // [X + cy][X − cy] = [X]: the strips of both kinds must cancel in
        // every positive y-degree and recover the input at y^0.
        for f in [s(&[3, 1]), s(&[2, 2]).add(&s(&[4])), s(&[2, 1, 1])] {
            let c = QTFraction::t();
            let added = f.pleth_add_letter(&c);
            let mut acc: BTreeMap<u32, SymFunc> = BTreeMap::new();
            for (m, g) in added.iter().enumerate() {
                for (mm, h) in g.pleth_sub_letter(&c).into_iter().enumerate() {
                    let key = (m + mm) as u32;
                    let cur = acc.remove(&key).unwrap_or_else(|| SymFunc::zero(8));
                    acc.insert(key, cur.add(&h));
                }
            }
            for (deg, g) in acc {
                if deg == 0 {
                    assert_eq!(g, f, "degree-0 layer must recover the input");
                } else {
                    assert!(g.is_zero(), "higher y-powers must cancel at y^{deg}");
                }
            }
        }
    }

    #[test]
    fn alphabet_scaling_frozen_example() {
        // s_2[X(1−q)] = (1−q)(s_2 − q s_{1,1})
        let one = QTFraction::one();
        let q = QTFraction::q();
        let scaled = s(&[2]).alphabet_scale(|r| &one - &q.pow(r as i64).unwrap());
        let expect = s(&[2]).sub(&s(&[1, 1]).scale(&q)).scale(&(&one - &q));
        assert_eq!(scaled, expect);
    }

    #[test]
    fn budget_is_enforced() {
        let f = SymFunc::schur(p(&[2, 1]), 3).unwrap();
        match f.mul_e(1) {
            Err(Error::DegreeBudget { needed: 4, cap: 3 }) => {}
            other => panic!("expected budget failure, got {other:?}"),
        }
        assert!(SymFunc::schur(p(&[4]), 3).is_err());
    }
}
