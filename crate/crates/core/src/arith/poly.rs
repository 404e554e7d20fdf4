//! Sparse Laurent polynomials in q and t with rational coefficients.
//!
//! Terms are keyed by (q-degree, t-degree); the map never stores a zero
//! coefficient, so structural equality is value equality.  Display order is
//! lexicographically descending in (q-degree, t-degree).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct QTPoly {
    terms: BTreeMap<(i64, i64), BigRational>,
}

impl QTPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(BigRational::one(), 0, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(0, 1)
    }

    /// q^dq * t^dt with coefficient 1; exponents may be negative.
    pub fn monomial(dq: i64, dt: i64) -> Self {
        Self::term(BigRational::one(), dq, dt)
    }

    pub fn term(c: BigRational, dq: i64, dt: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((dq, dt), c);
        }
        Self { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((i64, i64), BigRational)>) -> Self {
        let mut p = Self::zero();
        for ((dq, dt), c) in it {
            p.add_term(dq, dt, c);
        }
        p
    }

    /// Convenience constructor from (dq, dt, integer coefficient) triples.
    pub fn from_int_terms(it: impl IntoIterator<Item = (i64, i64, i64)>) -> Self {
        Self::from_terms(
            it.into_iter()
                .map(|(dq, dt, c)| ((dq, dt), BigRational::from_integer(BigInt::from(c)))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn as_constant(&self) -> Option<&BigRational> {
        if self.terms.len() == 1 {
            self.terms.get(&(0, 0))
        } else if self.terms.is_empty() {
            None // zero: callers treat separately
        } else {
            None
        }
    }

    pub fn coeff(&self, dq: i64, dt: i64) -> BigRational {
        self.terms
            .get(&(dq, dt))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, dq: i64, dt: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((dq, dt)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Componentwise minimum of exponents over the support.  None for zero.
    pub fn min_deg(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys();
        let &(q0, t0) = it.next()?;
        let (mut mq, mut mt) = (q0, t0);
        for &(a, b) in it {
            mq = mq.min(a);
            mt = mt.min(b);
        }
        Some((mq, mt))
    }

    pub fn max_deg(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys();
        let &(q0, t0) = it.next()?;
        let (mut mq, mut mt) = (q0, t0);
        for &(a, b) in it {
            mq = mq.max(a);
            mt = mt.max(b);
        }
        Some((mq, mt))
    }

    /// Term with the lexicographically largest (q-degree, t-degree).
    pub fn leading(&self) -> Option<(&(i64, i64), &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Multiply by q^dq * t^dt.
    pub fn shift(&self, dq: i64, dt: i64) -> Self {
        if dq == 0 && dt == 0 {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + dq, b + dt), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The involution q ↦ q^{-1}, t ↦ t^{-1}.
    pub fn bar(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((-a, -b), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, q: &BigRational, t: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (&(dq, dt), c) in &self.terms {
            acc += c * rat_pow(q, dq)? * rat_pow(t, dt)?;
        }
        Ok(acc)
    }

    /// lcm of coefficient denominators (1 for the zero polynomial).
    pub(crate) fn denom_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = num_integer::lcm(l, c.denom().clone());
        }
        l
    }

    pub(crate) fn scale_int(&self, n: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(n.clone()))
    }

    pub fn all_integer(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

pub(crate) fn rat_pow(b: &BigRational, e: i64) -> Result<BigRational> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if b.is_zero() {
        return if e < 0 {
            Err(Error::PoleAtSample)
        } else {
            Ok(BigRational::zero())
        };
    }
    let base = if e < 0 { b.recip() } else { b.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = BigRational::one();
    let mut sq = base;
    while n > 0 {
        if n & 1 == 1 {
            acc *= &sq;
        }
        n >>= 1;
        if n > 0 {
            sq = &sq * &sq;
        }
    }
    Ok(acc)
}

impl Add for &QTPoly {
    type Output = QTPoly;
    fn add(self, rhs: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Sub for &QTPoly {
    type Output = QTPoly;
    fn sub(self, rhs: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, -c.clone());
        }
        out
    }
}

impl Mul for &QTPoly {
    type Output = QTPoly;
    fn mul(self, rhs: &QTPoly) -> QTPoly {
        let mut out = QTPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &QTPoly {
    type Output = QTPoly;
    fn neg(self) -> QTPoly {
        QTPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, -v.clone())).collect(),
        }
    }
}

impl Add for QTPoly {
    type Output = QTPoly;
    fn add(self, rhs: QTPoly) -> QTPoly {
        &self + &rhs
    }
}

impl Sub for QTPoly {
    type Output = QTPoly;
    fn sub(self, rhs: QTPoly) -> QTPoly {
        &self - &rhs
    }
}

impl Mul for QTPoly {
    type Output = QTPoly;
    fn mul(self, rhs: QTPoly) -> QTPoly {
        &self * &rhs
    }
}

impl Neg for QTPoly {
    type Output = QTPoly;
    fn neg(self) -> QTPoly {
        -&self
    }
}

impl AddAssign<&QTPoly> for QTPoly {
    fn add_assign(&mut self, rhs: &QTPoly) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

fn mono_text(dq: i64, dt: i64) -> String {
    let mut s = String::new();
    if dq != 0 {
        s.push('q');
        if dq != 1 {
            s.push('^');
            s.push_str(&dq.to_string());
        }
    }
    if dt != 0 {
        if !s.is_empty() {
            s.push('*');
        }
        s.push('t');
        if dt != 1 {
            s.push('^');
            s.push_str(&dt.to_string());
        }
    }
    s
}

impl fmt::Display for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(dq, dt), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mono = mono_text(dq, dt);
            if mono.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", a, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QTPoly {
        s.parse::<crate::QTFraction>().unwrap().into_poly().unwrap()
    }

    #[test]
    fn display_ordering_and_signs() {
        let x = QTPoly::monomial(2, 1)
            + QTPoly::int(-1)
            + QTPoly::term(BigRational::from_integer(3.into()), 0, 2);
        assert_eq!(x.to_string(), "q^2*t + 3*t^2 - 1");
        assert_eq!(QTPoly::zero().to_string(), "0");
        assert_eq!(QTPoly::monomial(-1, 0).to_string(), "q^-1");
        assert_eq!((-QTPoly::q()).to_string(), "-q");
    }

    #[test]
    fn mul_and_shift() {
        let a = p("q - t");
        let b = p("q + t");
        assert_eq!(&a * &b, p("q^2 - t^2"));
        assert_eq!(a.shift(1, 2), p("q^2*t^2 - q*t^3"));
    }

    #[test]
    fn bar_is_involutive_automorphism() {
        let a = QTPoly::monomial(2, -1) + QTPoly::int(5);
        let b = QTPoly::monomial(-3, 4) - QTPoly::t();
        assert_eq!(a.bar().bar(), a);
        assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
    }

    #[test]
    fn eval_exact() {
        let a = p("q^2 - t");
        let q = BigRational::new(1.into(), 2.into());
        let t = BigRational::new(1.into(), 3.into());
        assert_eq!(
            a.eval(&q, &t).unwrap(),
            BigRational::new((-1).into(), 12.into())
        );
        // negative exponent at zero is a pole
        let b = QTPoly::monomial(-1, 0);
        assert!(matches!(
            b.eval(&BigRational::zero(), &q),
            Err(Error::PoleAtSample)
        ));
    }

    #[test]
    fn pow_small() {
        assert_eq!(p("q + 1").pow(3), p("q^3 + 3*q^2 + 3*q + 1"));
        assert_eq!(p("q - t").pow(0), QTPoly::one());
    }
}
