//! Integer combinations of monomials q^a t^b — torus characters of virtual
//! vector spaces — with the plethystic map Λ*(C) = ∏_m (1 - m)^{c_m} into
//! ℚ(q,t) and truncated elementary symmetric series e_i[C].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::fraction::QTFraction;
use super::poly::QTPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Character {
    terms: BTreeMap<(i64, i64), i64>,
}

impl Character {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn monomial(dq: i64, dt: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((dq, dt), 1);
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, dq: i64, dt: i64, mult: i64) {
        if mult == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((dq, dt)) {
            Entry::Vacant(e) => {
                e.insert(mult);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += mult;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, dq: i64, dt: i64) -> i64 {
        self.terms.get(&(dq, dt)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &i64)> {
        self.terms.iter()
    }

    /// Virtual dimension: sum of all multiplicities.
    pub fn dim(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|&m| m >= 0)
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, &m)| (k, m * c)).collect(),
        }
    }

    /// Multiply every monomial by q^{dq} t^{dt}.
    pub fn shift(&self, dq: i64, dt: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), &m)| ((a + dq, b + dt), m))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), &m) in other.terms.iter() {
            out.add_term(a, b, m);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a1, b1), &m1) in self.terms.iter() {
            for (&(a2, b2), &m2) in other.terms.iter() {
                out.add_term(a1 + a2, b1 + b2, m1 * m2);
            }
        }
        out
    }

    /// q ↦ q^{-1}, t ↦ t^{-1} (the dual character).
    pub fn bar(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), &m)| ((-a, -b), m))
                .collect(),
        }
    }

    pub fn as_poly(&self) -> QTPoly {
        QTPoly::from_terms(
            self.terms
                .iter()
                .map(|(&k, &m)| (k, BigRational::from_integer(BigInt::from(m)))),
        )
    }

    pub fn as_fraction(&self) -> QTFraction {
        QTFraction::from_poly(self.as_poly())
    }

    /// Λ*(C) = ∏_m (1 - m)^{c_m}.  The unit monomial would contribute a zero
    /// factor (or a zero denominator) and is rejected.
    pub fn lambda_star(&self) -> Result<QTFraction> {
        if self.coeff(0, 0) != 0 {
            return Err(Error::UnitMonomial);
        }
        let mut num = QTPoly::one();
        let mut den = QTPoly::one();
        for (&(a, b), &m) in &self.terms {
            let factor = QTPoly::one() - QTPoly::monomial(a, b);
            let p = factor.pow(m.unsigned_abs() as u32);
            if m > 0 {
                num = &num * &p;
            } else {
                den = &den * &p;
            }
        }
        QTFraction::new(num, den)
    }

    /// e_0[C], …, e_n[C] read off the truncated series ∏_m (1 + z m)^{c_m}.
    /// Negative multiplicities expand through the generalized binomial, so the
    /// results are still Laurent polynomials.
    pub fn elementary(&self, n: usize) -> Vec<QTPoly> {
        let mut series: Vec<QTPoly> = vec![QTPoly::zero(); n + 1];
        series[0] = QTPoly::one();
        for (&(a, b), &m) in &self.terms {
            let factor = binomial_series(a, b, m, n);
            series = series_mul(&series, &factor, n);
        }
        series
    }
}

/// Coefficients of (1 + z q^a t^b)^m up to z^n, for any integer m.
fn binomial_series(a: i64, b: i64, m: i64, n: usize) -> Vec<QTPoly> {
    let mut out = vec![QTPoly::zero(); n + 1];
    out[0] = QTPoly::one();
    let mut binom = BigRational::one();
    for j in 1..=n {
        // binom(m, j) = binom(m, j-1) * (m - j + 1)/j
        let j_i = j as i64;
        binom = binom * BigRational::from_integer(BigInt::from(m - j_i + 1))
            / BigRational::from_integer(BigInt::from(j_i));
        if binom.is_zero() {
            break;
        }
        out[j] = QTPoly::term(binom.clone(), a * j_i, b * j_i);
    }
    out
}

fn series_mul(x: &[QTPoly], y: &[QTPoly], n: usize) -> Vec<QTPoly> {
    let mut out = vec![QTPoly::zero(); n + 1];
    for i in 0..=n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..=(n - i) {
            if !y[j].is_zero() {
                out[i + j] += &(&x[i] * &y[j]);
            }
        }
    }
    out
}

impl Add for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        let mut out = self.clone();
        for (&(a, b), &m) in &rhs.terms {
            out.add_term(a, b, m);
        }
        out
    }
}

impl Sub for &Character {
    type Output = Character;
    fn sub(self, rhs: &Character) -> Character {
        let mut out = self.clone();
        for (&(a, b), &m) in &rhs.terms {
            out.add_term(a, b, -m);
        }
        out
    }
}

impl Mul for &Character {
    type Output = Character;
    fn mul(self, rhs: &Character) -> Character {
        let mut out = Character::zero();
        for (&(a1, b1), &m1) in &self.terms {
            for (&(a2, b2), &m2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, m1 * m2);
            }
        }
        out
    }
}

impl Neg for &Character {
    type Output = Character;
    fn neg(self) -> Character {
        self.scale(-1)
    }
}

impl Add for Character {
    type Output = Character;
    fn add(self, rhs: Character) -> Character {
        &self + &rhs
    }
}

impl Sub for Character {
    type Output = Character;
    fn sub(self, rhs: Character) -> Character {
        &self - &rhs
    }
}

impl Mul for Character {
    type Output = Character;
    fn mul(self, rhs: Character) -> Character {
        &self * &rhs
    }
}

impl Neg for Character {
    type Output = Character;
    fn neg(self) -> Character {
        -&self
    }
}

impl AddAssign<&Character> for Character {
    fn add_assign(&mut self, rhs: &Character) {
        for (&(a, b), &m) in &rhs.terms {
            self.add_term(a, b, m);
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
