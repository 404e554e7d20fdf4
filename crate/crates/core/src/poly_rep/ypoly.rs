//! The spaces V_k = Λ ⊗ Q(q,t)[y_1,…,y_k] and the operator action on them:
//!
//!   T_i F = ((q−1) y_i F + (y_{i+1} − q y_i) s_i F) / (y_{i+1} − y_i),
//!   d_− F = Σ_b (−1)^b e_{b+1}[X] · [y_k^b] F[X − (q−1) y_k],
//!   d_+ F = T_1 T_2 ⋯ T_k (F[X + (q−1) y_{k+1}]),
//!   d*_cm F = γ F[X + (q−1) y_{k+1}],   γ: y_i ↦ y_{i+1}, y_{k+1} ↦ t y_1,
//!
//! where s_i swaps y_i and y_{i+1}.  The T_i numerator is divisible by
//! y_{i+1} − y_i because it vanishes on the diagonal; the division is done
//! synthetically and a nonzero remainder is a hard failure.  T_i fixes
//! everything symmetric in y_i, y_{i+1} — in particular T_i 1 = 1 — which is
//! the normalization forced by (T_i − 1)(T_i + q) = 0.
//!
//! In the substitutions F[X ± (q−1) y] the symbol (q−1) y is the alphabet
//! difference q·y − y (two letters), not one letter of scalar value q−1:
//! p_r picks up ±(q^r − 1) y^r.  The two readings first diverge at r = 2,
//! and only the alphabet one satisfies d_−² T_{k−1} = d_−²; the scalar one
//! breaks it already on y_1² ∈ V_2.
//!
//! W_k = (y_1⋯y_k)^{−1} V_k is carried as a prefactor flag on the element,
//! never as negative exponents.  On W-flagged representatives the operators
//! read T_i F (unchanged), d_+ F = T_1⋯T_k (y_{k+1} · F[X+(q−1)y_{k+1}]),
//! d_− F = Σ_b (−1)^{b+1} e_b[X] · [y_k^b] F[X−(q−1)y_k], and the star
//! operator d*_+ = −(q t y_1)^{−1} d*_cm collapses to
//! d*_+ F = −(qt)^{−1} γ F[X+(q−1)y_{k+1}], staying polynomial.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::QTFraction;
use crate::error::{Error, Result};
use crate::fixed_point::{Gen, OperatorWord};
use crate::poly_rep::symfunc::SymFunc;

/// Direction of a single-letter plethystic substitution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Element of V_k (or of W_k when `w_prefix` is set): a sum of monomials in
/// y_1…y_k with symmetric-function coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YPoly {
    k: usize,
    cap: u32,
    w_prefix: bool,
    terms: BTreeMap<Vec<u32>, SymFunc>,
}

impl YPoly {
    pub fn zero(k: usize, cap: u32) -> Self {
        YPoly {
            k,
            cap,
            w_prefix: false,
            terms: BTreeMap::new(),
        }
    }

    /// The constant 1 ∈ V_k.
    pub fn one(k: usize, cap: u32) -> Self {
        let mut f = YPoly::zero(k, cap);
        f.terms.insert(vec![0; k], SymFunc::one(cap));
        f
    }

    pub fn monomial(k: usize, cap: u32, exps: Vec<u32>, f: SymFunc) -> Result<Self> {
        let mut out = YPoly::zero(k, cap);
        out.add_term(exps, f)?;
        Ok(out)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_w(&self) -> bool {
        self.w_prefix
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &SymFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> SymFunc {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| SymFunc::zero(self.cap))
    }

    pub fn add_term(&mut self, exps: Vec<u32>, f: SymFunc) -> Result<()> {
        if exps.len() != self.k {
            return Err(Error::GradeError(format!(
                "exponent vector has length {}, expected {}",
                exps.len(),
                self.k
            )));
        }
        if f.is_zero() {
            return Ok(());
        }
        let new = match self.terms.get(&exps) {
            Some(old) => old.add(&f),
            None => f,
        };
        if new.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, new);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &YPoly) -> Result<YPoly> {
        if self.k != rhs.k || self.w_prefix != rhs.w_prefix {
            return Err(Error::GradeError(
                "cannot add across different V_k / W_k spaces".into(),
            ));
        }
        let mut out = self.clone();
        out.cap = self.cap.max(rhs.cap);
        for (e, f) in &rhs.terms {
            out.add_term(e.clone(), f.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &YPoly) -> Result<YPoly> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> YPoly {
        self.scale(&-QTFraction::one())
    }

    pub fn scale(&self, c: &QTFraction) -> YPoly {
        if c.is_zero() {
            let mut out = self.clone();
            out.terms.clear();
            return out;
        }
        YPoly {
            k: self.k,
            cap: self.cap,
            w_prefix: self.w_prefix,
            terms: self
                .terms
                .iter()
                .map(|(e, f)| (e.clone(), f.scale(c)))
                .collect(),
        }
    }

    /// Multiply by y_i^pow (i is 1-based).
    pub fn mul_y(&self, i: usize, pow: u32) -> Result<YPoly> {
        self.check_var(i)?;
        let mut out = YPoly {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (e, f) in &self.terms {
            let mut e = e.clone();
            e[i - 1] += pow;
            out.terms.insert(e, f.clone());
        }
        Ok(out)
    }

    /// Reinterpret F ∈ V_k as the W_k element F/(y_1⋯y_k), i.e. flag the
    /// element and multiply the representative by y_1⋯y_k.
    pub fn to_w(&self) -> YPoly {
        assert!(!self.w_prefix, "already W-flagged");
        let mut out = YPoly {
            w_prefix: true,
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (e, f) in &self.terms {
            let e: Vec<u32> = e.iter().map(|&x| x + 1).collect();
            out.terms.insert(e, f.clone());
        }
        out
    }

    /// Inverse of `to_w`: only defined when the representative is divisible
    /// by y_1⋯y_k.
    pub fn from_w(&self) -> Result<YPoly> {
        assert!(self.w_prefix, "not W-flagged");
        let mut out = YPoly {
            w_prefix: false,
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (e, f) in &self.terms {
            if e.iter().any(|&x| x == 0) {
                return Err(Error::GradeError(
                    "element of W_k is not in the V_k subspace".into(),
                ));
            }
            let e: Vec<u32> = e.iter().map(|&x| x - 1).collect();
            out.terms.insert(e, f.clone());
        }
        Ok(out)
    }

    /// Total grade n = k + (y-degree) + (X-degree) of a homogeneous element
    /// (for W-flagged elements each variable in the prefactor counts −1).
    pub fn v_grade(&self) -> Option<u32> {
        let mut n = None;
        for (e, f) in &self.terms {
            let ydeg: u32 = e.iter().sum();
            let base = if self.w_prefix { 0 } else { self.k as u32 };
            for (lam, _) in f.iter() {
                let here = base + ydeg + lam.size();
                match n {
                    None => n = Some(here),
                    Some(v) if v == here => {}
                    Some(_) => return None,
                }
            }
        }
        n
    }

    /// F[X ± c·y_j] with a single scalar letter c·y_j (so p_r picks up
    /// ±c^r y_j^r).  j may be k+1, which extends the variable list.
    pub fn pleth_add_var(&self, j: usize, c: &QTFraction, sign: Sign) -> Result<YPoly> {
        assert!(
            !self.w_prefix,
            "substitutions act on plain V_k representatives"
        );
        if j == 0 || j > self.k + 1 {
            return Err(Error::IndexRange {
                index: j,
                k: self.k,
            });
        }
        let k_out = self.k.max(j);
        let mut out = YPoly::zero(k_out, self.cap);
        for (e, f) in &self.terms {
            let strips = match sign {
                Sign::Plus => f.pleth_add_letter(c),
                Sign::Minus => f.pleth_sub_letter(c),
            };
            for (m, g) in strips.into_iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let mut e = e.clone();
                e.resize(k_out, 0);
                e[j - 1] += m as u32;
                out.add_term(e, g)?;
            }
        }
        Ok(out)
    }

    /// F[X ± (q−1) y_j] in the alphabet reading: add the letter q·y_j and
    /// remove the letter y_j (or vice versa), so p_r ↦ p_r ± (q^r − 1) y_j^r.
    fn op_subst(&self, j: usize, sign: Sign) -> Result<YPoly> {
        let q = QTFraction::q();
        let one = QTFraction::one();
        let (first, second) = match sign {
            Sign::Plus => (Sign::Plus, Sign::Minus),
            Sign::Minus => (Sign::Minus, Sign::Plus),
        };
        self.pleth_add_var(j, &q, first)?
            .pleth_add_var(j, &one, second)
    }

    /// Swap the variables y_i and y_{i+1} (i is 1-based).
    fn swap_vars(&self, i: usize) -> YPoly {
        let mut out = YPoly {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (e, f) in &self.terms {
            let mut e = e.clone();
            e.swap(i - 1, i);
            let cur = out.terms.remove(&e);
            let f = match cur {
                Some(old) => old.add(f),
                None => f.clone(),
            };
            out.terms.insert(e, f);
        }
        out
    }

    /// T_i = ((q−1) y_i + (y_{i+1} − q y_i) s_i) / (y_{i+1} − y_i).
    pub fn poly_t(&self, i: usize) -> Result<YPoly> {
        self.check_var(i)?;
        self.check_var(i + 1)?;
        let q = QTFraction::q();
        let one = QTFraction::one();
        let qm1 = &q - &one;
        let swapped = self.swap_vars(i);
        // numerator (q−1) y_i F + y_{i+1} s_i F − q y_i s_i F
        let num = self
            .mul_y(i, 1)?
            .scale(&qm1)
            .add(&swapped.mul_y(i + 1, 1)?)?
            .sub(&swapped.mul_y(i, 1)?.scale(&q))?;
        Ok(num.div_exact_diff(i))
    }

    /// T_i^{−1} = q^{−1} T_i + q^{−1}(q − 1), from (T_i − 1)(T_i + q) = 0.
    pub fn poly_tinv(&self, i: usize) -> Result<YPoly> {
        let q_inv = QTFraction::q().inverse().expect("q invertible");
        let qm1 = &QTFraction::q() - &QTFraction::one();
        self.poly_t(i)?
            .scale(&q_inv)
            .add(&self.scale(&(&q_inv * &qm1)))
    }

    /// Exact division by (y_{i+1} − y_i); panics on a nonzero remainder,
    /// which would mean the numerator did not vanish on the diagonal.
    fn div_exact_diff(mut self, i: usize) -> YPoly {
        let mut quo = YPoly {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        while let Some(e) = self
            .terms
            .iter()
            .max_by_key(|(e, _)| e[i])
            .map(|(e, _)| e.clone())
        {
            let f = self.terms.remove(&e).expect("key just seen");
            assert!(
                e[i] > 0,
                "synthetic division left a remainder: T_i numerator not divisible"
            );
            // q-term: coefficient of y_{i+1}^{d} comes from quotient y_{i+1}^{d−1}
            let mut qe = e.clone();
            qe[i] -= 1;
            // subtract f·y^{qe}·(y_{i+1} − y_i): the y_{i+1} part cancels the
            // term we removed; push the −y_i part back into the remainder.
            let mut low = qe.clone();
            low[i - 1] += 1;
            let cur = self.terms.remove(&low);
            let repl = match cur {
                Some(old) => old.add(&f),
                None => f.clone(),
            };
            if !repl.is_zero() {
                self.terms.insert(low, repl);
            }
            let prev = quo.terms.remove(&qe);
            let tot = match prev {
                Some(old) => old.add(&f),
                None => f,
            };
            if !tot.is_zero() {
                quo.terms.insert(qe, tot);
            }
        }
        quo
    }

    /// d_−: V_k → V_{k−1} (or W_k → W_{k−1}).
    pub fn poly_dminus(&self) -> Result<YPoly> {
        if self.k == 0 {
            return Err(Error::GradeError("d_- needs k >= 1".into()));
        }
        let k = self.k;
        let (rep, w) = self.take_rep();
        let sub = rep.op_subst(k, Sign::Minus)?;
        let mut out = YPoly {
            k: k - 1,
            cap: self.cap,
            w_prefix: w,
            terms: BTreeMap::new(),
        };
        for (e, f) in &sub.terms {
            let b = e[k - 1];
            let rest = e[..k - 1].to_vec();
            // plain: (−1)^b e_{b+1};  W-flagged: (−1)^{b+1} e_b
            let (j, flip) = if w { (b, b + 1) } else { (b + 1, b) };
            let mut g = f.mul_e(j)?;
            if flip % 2 == 1 {
                g = g.neg();
            }
            out.add_term(rest, g)?;
        }
        Ok(out)
    }

    /// d_+: V_k → V_{k+1} (or W_k → W_{k+1}).
    pub fn poly_dplus(&self) -> Result<YPoly> {
        let k = self.k;
        let (rep, w) = self.take_rep();
        let mut g = rep.op_subst(k + 1, Sign::Plus)?;
        if w {
            g = g.mul_y(k + 1, 1)?;
        }
        for i in (1..=k).rev() {
            g = g.poly_t(i)?;
        }
        g.w_prefix = w;
        Ok(g)
    }

    /// The twisted raising operator d*_cm F = γ F[X + (q−1) y_{k+1}] on V_k.
    pub fn poly_dplus_cm(&self) -> Result<YPoly> {
        assert!(!self.w_prefix, "d*_cm acts on plain V_k");
        let sub = self.op_subst(self.k + 1, Sign::Plus)?;
        Ok(sub.gamma_rotate())
    }

    /// The star raising operator d*_+ = −(q t y_1)^{−1} d*_cm, which is
    /// polynomial on W-flagged representatives:
    /// d*_+ (W: F) = W: −(qt)^{−1} γ F[X + (q−1) y_{k+1}].
    pub fn poly_dplus_star(&self) -> Result<YPoly> {
        if !self.w_prefix {
            return Err(Error::GradeError("d*_+ needs a W-flagged element".into()));
        }
        let mut rep = self.clone();
        rep.w_prefix = false;
        let mut out = rep.poly_dplus_cm()?;
        let scale = -(&QTFraction::q() * &QTFraction::t())
            .inverse()
            .expect("qt invertible");
        out = out.scale(&scale);
        out.w_prefix = true;
        Ok(out)
    }

    /// γ: y_i ↦ y_{i+1} (i ≤ k−1 of the output), y_k ↦ t y_1, on an element
    /// already living in k variables.
    fn gamma_rotate(&self) -> YPoly {
        let k = self.k;
        let mut out = YPoly {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        let t = QTFraction::t();
        for (e, f) in &self.terms {
            let mut ne = vec![0u32; k];
            if k > 0 {
                ne[0] = e[k - 1];
                for i in 1..k {
                    ne[i] = e[i - 1];
                }
            }
            let f = f.scale(
                &t.pow(e[k.saturating_sub(1)] as i64)
                    .expect("nonnegative power"),
            );
            let prev = out.terms.remove(&ne);
            let tot = match prev {
                Some(old) => old.add(&f),
                None => f,
            };
            if !tot.is_zero() {
                out.terms.insert(ne, tot);
            }
        }
        out
    }

    /// Strip the W flag off a clone of the representative.
    fn take_rep(&self) -> (YPoly, bool) {
        let mut rep = self.clone();
        let w = rep.w_prefix;
        rep.w_prefix = false;
        (rep, w)
    }

    fn check_var(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.k {
            Err(Error::IndexRange {
                index: i,
                k: self.k,
            })
        } else {
            Ok(())
        }
    }

    /// Apply one generator in the polynomial realization.
    pub fn apply_gen(&self, g: &Gen) -> Result<YPoly> {
        match g {
            Gen::T(i) => self.poly_t(*i),
            Gen::TInv(i) => self.poly_tinv(*i),
            Gen::Y(j) => {
                self.check_var(*j)?;
                self.mul_y(*j, 1)
            }
            Gen::DPlus => self.poly_dplus(),
            Gen::DMinus => self.poly_dminus(),
            other => Err(Error::GradeError(format!(
                "generator {other:?} has no direct polynomial realization"
            ))),
        }
    }

    /// Apply a word (rightmost generator first, matching the fixed-point
    /// side).
    pub fn apply_word(&self, word: &OperatorWord) -> Result<YPoly> {
        let mut cur = self.clone();
        for (step, g) in word.application_order().enumerate() {
            cur = cur.apply_gen(g).map_err(|e| Error::WordStep {
                step,
                msg: e.to_string(),
            })?;
        }
        Ok(cur)
    }
}

/// The truncated series Exp[−y^{−1} X] = Σ_{j=0}^{d} (−1)^j e_j[X] y^{−j};
/// entry j is the coefficient of y^{−j}.
pub fn pexp_neg(d: u32, cap: u32) -> Result<Vec<SymFunc>> {
    (0..=d)
        .map(|j| {
            let e = SymFunc::e(j, cap)?;
            Ok(if j % 2 == 0 { e } else { e.neg() })
        })
        .collect()
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w_prefix {
            write!(f, "(y_1..y_{})^-1 * [", self.k)?;
        }
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, g)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "y^{e:?}*({g})")?;
        }
        if self.w_prefix {
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::Partition;

    const CAP: u32 = 8;

    fn sf(parts: &[u32]) -> SymFunc {
        SymFunc::schur(Partition::new(parts.to_vec()).unwrap(), CAP).unwrap()
    }

    fn q() -> QTFraction {
        QTFraction::q()
    }

    fn one() -> QTFraction {
        QTFraction::one()
    }

    /// All monomials y^e ⊗ s_λ of V_k with y-degree + |λ| ≤ d.
    fn monomials(k: usize, d: u32) -> Vec<YPoly> {
        let mut exps = vec![vec![]];
        for _ in 0..k {
            let mut next = Vec::new();
            for e in &exps {
                for v in 0..=d - e.iter().sum::<u32>() {
                    let mut e = e.clone();
                    e.push(v);
                    next.push(e);
                }
            }
            exps = next;
        }
        let mut out = Vec::new();
        for e in exps {
            let ydeg: u32 = e.iter().sum();
            for r in 0..=(d - ydeg) {
                for lam in Partition::enumerate(r) {
                    out.push(
                        YPoly::monomial(k, CAP, e.clone(), SymFunc::schur(lam, CAP).unwrap())
                            .unwrap(),
                    );
                }
            }
        }
        out
    }

    #[test]
    fn hecke_normalization_and_eigenvectors() {
        // T_1 1 = 1 in V_2
        let unit = YPoly::one(2, CAP);
        assert_eq!(unit.poly_t(1).unwrap(), unit);
        // T_1 (y_2 − q y_1) = −q (y_2 − q y_1)
        let v = YPoly::monomial(2, CAP, vec![0, 1], SymFunc::one(CAP))
            .unwrap()
            .sub(
                &YPoly::monomial(2, CAP, vec![1, 0], SymFunc::one(CAP))
                    .unwrap()
                    .scale(&q()),
            )
            .unwrap();
        assert_eq!(v.poly_t(1).unwrap(), v.scale(&-q()));
        // T_1 y_1 = y_2 + (1−q) y_1
        let y1 = YPoly::monomial(2, CAP, vec![1, 0], SymFunc::one(CAP)).unwrap();
        let expect = YPoly::monomial(2, CAP, vec![0, 1], SymFunc::one(CAP))
            .unwrap()
            .add(&y1.scale(&(&one() - &q())))
            .unwrap();
        assert_eq!(y1.poly_t(1).unwrap(), expect);
    }

    #[test]
    fn hecke_quadratic_and_braid() {
        for f in monomials(3, 2) {
            for i in 1..=2 {
                let tf = f.poly_t(i).unwrap();
                // (T_i − 1)(T_i + q) = 0
                let lhs = tf
                    .poly_t(i)
                    .unwrap()
                    .add(&tf.scale(&(&q() - &one())))
                    .unwrap()
                    .sub(&f.scale(&q()))
                    .unwrap();
                assert!(lhs.is_zero(), "quadratic fails on {f}");
                // T_i^{-1} T_i = 1
                assert_eq!(tf.poly_tinv(i).unwrap(), f);
            }
            let b1 = f.poly_t(1).unwrap().poly_t(2).unwrap().poly_t(1).unwrap();
            let b2 = f.poly_t(2).unwrap().poly_t(1).unwrap().poly_t(2).unwrap();
            assert_eq!(b1, b2, "braid fails on {f}");
        }
    }

    #[test]
    fn lowering_anchors() {
        // d_-(1 ∈ V_1) = e_1
        let unit = YPoly::one(1, CAP);
        assert_eq!(
            unit.poly_dminus().unwrap(),
            YPoly::monomial(0, CAP, vec![], sf(&[1])).unwrap()
        );
        // d_-(y_1 ∈ V_1) = −e_2
        let y1 = YPoly::monomial(1, CAP, vec![1], SymFunc::one(CAP)).unwrap();
        assert_eq!(
            y1.poly_dminus().unwrap(),
            YPoly::monomial(0, CAP, vec![], sf(&[1, 1]).neg()).unwrap()
        );
        // d_-(p_1 ∈ V_1) = e_1^2 + (q−1) e_2 = s_2 + q s_{1,1}
        let p1 = YPoly::monomial(1, CAP, vec![0], sf(&[1])).unwrap();
        let expect = sf(&[2]).add(&sf(&[1, 1]).scale(&q()));
        assert_eq!(
            p1.poly_dminus().unwrap(),
            YPoly::monomial(0, CAP, vec![], expect).unwrap()
        );
    }

    #[test]
    fn raising_anchor_is_unit() {
        // d_+^m (1 ∈ V_0) = 1 ∈ V_m: the tower of units, with coefficient 1
        let mut cur = YPoly::one(0, CAP);
        for m in 1..=5 {
            cur = cur.poly_dplus().unwrap();
            assert_eq!(cur, YPoly::one(m, CAP), "unit tower breaks at k = {m}");
        }
    }

    #[test]
    fn lower_after_raise_is_e1_multiplication() {
        // d_- d_+ = e_1 · (−) on V_0 through degree 6
        for d in 0..=6u32 {
            for lam in Partition::enumerate(d) {
                let f = YPoly::monomial(0, CAP, vec![], SymFunc::schur(lam.clone(), CAP).unwrap())
                    .unwrap();
                let round = f.poly_dplus().unwrap().poly_dminus().unwrap();
                let direct = YPoly::monomial(
                    0,
                    CAP,
                    vec![],
                    SymFunc::schur(lam, CAP).unwrap().mul_e(1).unwrap(),
                )
                .unwrap();
                assert_eq!(round, direct);
            }
        }
    }

    #[test]
    fn interplay_relations() {
        // d_+ T_i = T_{i+1} d_+ on V_2
        for f in monomials(2, 2) {
            assert_eq!(
                f.poly_t(1).unwrap().poly_dplus().unwrap(),
                f.poly_dplus().unwrap().poly_t(2).unwrap()
            );
        }
        // T_i d_- = d_- T_i for i ≤ k−2, on V_3
        for f in monomials(3, 2) {
            assert_eq!(
                f.poly_t(1).unwrap().poly_dminus().unwrap(),
                f.poly_dminus().unwrap().poly_t(1).unwrap()
            );
        }
        // d_-^2 T_{k−1} = d_-^2 on V_2
        for f in monomials(2, 2) {
            assert_eq!(
                f.poly_t(1)
                    .unwrap()
                    .poly_dminus()
                    .unwrap()
                    .poly_dminus()
                    .unwrap(),
                f.poly_dminus().unwrap().poly_dminus().unwrap()
            );
        }
        // T_1 d_+^2 = d_+^2 on V_0 and V_1
        for f in monomials(0, 3).into_iter().chain(monomials(1, 2)) {
            let dd = f.poly_dplus().unwrap().poly_dplus().unwrap();
            assert_eq!(dd.poly_t(1).unwrap(), dd);
        }
        // d_+ y_i = T_1 ⋯ T_i y_i T_i^{-1} ⋯ T_1^{-1} d_+ on V_2
        // (conjugation applied inside out: T_1^{-1} first, T_1 last)
        for f in monomials(2, 2) {
            for i in 1..=2usize {
                let lhs = f.mul_y(i, 1).unwrap().poly_dplus().unwrap();
                let mut rhs = f.poly_dplus().unwrap();
                for j in 1..=i {
                    rhs = rhs.poly_tinv(j).unwrap();
                }
                rhs = rhs.mul_y(i, 1).unwrap();
                for j in (1..=i).rev() {
                    rhs = rhs.poly_t(j).unwrap();
                }
                assert_eq!(lhs, rhs, "d_+ y_{i} interplay fails on {f}");
            }
        }
    }

    #[test]
    fn star_operator_on_w() {
        // d*_cm(1 ∈ V_0) = 1,  d*_cm(p_1) = p_1 + (q−1) t y_1
        let unit = YPoly::one(0, CAP);
        assert_eq!(unit.poly_dplus_cm().unwrap(), YPoly::one(1, CAP));
        let p1 = YPoly::monomial(0, CAP, vec![], sf(&[1])).unwrap();
        let expect = YPoly::monomial(1, CAP, vec![0], sf(&[1]))
            .unwrap()
            .add(
                &YPoly::monomial(1, CAP, vec![1], SymFunc::one(CAP))
                    .unwrap()
                    .scale(&(&(&q() - &one()) * &QTFraction::t())),
            )
            .unwrap();
        assert_eq!(p1.poly_dplus_cm().unwrap(), expect);

        // on W: d*_+ T_i^{-1} = T_{i+1}^{-1} d*_+ and T_1^{-1} d*_+ d*_+ = d*_+ d*_+
        for f in monomials(2, 2) {
            let wf = f.to_w();
            assert_eq!(
                wf.poly_tinv(1).unwrap().poly_dplus_star().unwrap(),
                wf.poly_dplus_star().unwrap().poly_tinv(2).unwrap()
            );
        }
        for f in monomials(1, 2).into_iter().chain(monomials(0, 2)) {
            let dd = f
                .to_w()
                .poly_dplus_star()
                .unwrap()
                .poly_dplus_star()
                .unwrap();
            assert_eq!(dd.poly_tinv(1).unwrap(), dd);
        }
        // round trip through the flag
        for f in monomials(2, 2) {
            assert_eq!(f.to_w().from_w().unwrap(), f);
        }
    }

    #[test]
    fn w_flag_commutes_with_plain_operators() {
        // T_i and d_± on W agree with conjugating by the prefactor whenever
        // the answer stays in V: (y_1⋯y_k)^{-1} is y-symmetric, and d_± were
        // derived from the same residue formulas.
        for f in monomials(2, 2) {
            let lhs = f.to_w().poly_t(1).unwrap();
            let rhs = f.poly_t(1).unwrap().to_w();
            assert_eq!(lhs, rhs);
            let lhs = f.to_w().poly_dplus().unwrap();
            let rhs = f.poly_dplus().unwrap().to_w();
            assert_eq!(lhs, rhs, "W-side d_+ disagrees on {f}");
            let lhs = f.to_w().poly_dminus().unwrap();
            let rhs = f.poly_dminus().unwrap().to_w();
            assert_eq!(lhs, rhs, "W-side d_- disagrees on {f}");
        }
    }

    #[test]
    fn truncated_exponential_series() {
        let s = pexp_neg(3, CAP).unwrap();
        assert_eq!(s[0], SymFunc::one(CAP));
        assert_eq!(s[1], sf(&[1]).neg());
        assert_eq!(s[2], sf(&[1, 1]));
        assert_eq!(s[3], sf(&[1, 1, 1]).neg());
    }

    #[test]
    fn grades_are_tracked() {
        let f = YPoly::monomial(2, CAP, vec![1, 0], sf(&[2])).unwrap();
        assert_eq!(f.v_grade(), Some(5));
        assert_eq!(f.poly_dplus().unwrap().v_grade(), Some(6));
        assert_eq!(f.poly_dminus().unwrap().v_grade(), Some(5));
        assert_eq!(f.to_w().v_grade(), Some(5));
    }
}
