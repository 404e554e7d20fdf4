//! Vectors in the fixed-point modules V_{n,k}, stored as finite sums of flag
//! points with ℚ(q,t) coefficients.
//!
//! Three normalizations of the same basis are tracked by a tag:
//!   · I      — plain fixed-point classes,
//!   · H      — H_p = (−1)^{|λ|} q^{n(λ′)} t^{n(λ)} · I_p (the basis in which
//!              the operator formulas are written),
//!   · IDual  — I′_p = I_p / Λ*(cotangent of p).
//! Conversion is a diagonal rescaling; all operators act through H.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::QTFraction;
use crate::error::{Error, Result};
use crate::shapes::FlagPoint;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisTag {
    H,
    I,
    IDual,
}

impl BasisTag {
    pub fn name(&self) -> &'static str {
        match self {
            BasisTag::H => "H",
            BasisTag::I => "I",
            BasisTag::IDual => "I'",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "H" => Ok(BasisTag::H),
            "I" => Ok(BasisTag::I),
            "I'" => Ok(BasisTag::IDual),
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown basis {other:?}"),
            }),
        }
    }

    /// Diagonal factor F with  B_p = F_B(p) · I_p.
    fn factor(&self, p: &FlagPoint) -> QTFraction {
        match self {
            BasisTag::I => QTFraction::one(),
            BasisTag::H => {
                let lam = p.lambda();
                let m = QTFraction::monomial(lam.conjugate().n_stat() as i64, lam.n_stat() as i64);
                if lam.size() % 2 == 1 {
                    -m
                } else {
                    m
                }
            }
            BasisTag::IDual => p
                .cotangent()
                .lambda_star()
                .expect("cotangent character has no unit monomial")
                .inverse()
                .expect("cotangent factors are nonzero"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct KVector {
    n: u32,
    k: usize,
    basis: BasisTag,
    terms: BTreeMap<FlagPoint, QTFraction>,
}

impl KVector {
    pub fn zero(n: u32, k: usize, basis: BasisTag) -> Self {
        KVector {
            n,
            k,
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The basis vector at one flag point.
    pub fn unit(p: FlagPoint, basis: BasisTag) -> Self {
        let mut v = KVector::zero(p.n(), p.k(), basis);
        v.terms.insert(p, QTFraction::one());
        v
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, p: &FlagPoint) -> QTFraction {
        self.terms.get(p).cloned().unwrap_or_else(QTFraction::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FlagPoint, &QTFraction)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &FlagPoint> {
        self.terms.keys()
    }

    /// Adds c·B_p, dropping the entry if it cancels.  The flag must live in
    /// the vector's grade.
    pub fn add_term(&mut self, p: FlagPoint, c: QTFraction) {
        assert!(
            p.n() == self.n && p.k() == self.k,
            "flag {p} outside grade ({}, {})",
            self.n,
            self.k
        );
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &QTFraction) -> Self {
        if c.is_zero() {
            return KVector::zero(self.n, self.k, self.basis);
        }
        KVector {
            n: self.n,
            k: self.k,
            basis: self.basis,
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
        }
    }

    /// Applies q,t ↦ q^{-1},t^{-1} to every coefficient (conjugate-linear,
    /// basis-dependent — this is the raw ingredient of the symmetrizing
    /// involutions, each of which bars coefficients in its own basis).
    pub fn bar_coeffs(&self) -> Self {
        KVector {
            n: self.n,
            k: self.k,
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(p, v)| (p.clone(), v.bar()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::GradeError(format!(
                "cannot add grades ({},{}) and ({},{})",
                self.n, self.k, other.n, other.k
            )));
        }
        if self.basis != other.basis {
            return Err(Error::WrongBasis {
                expected: self.basis.name(),
                found: other.basis.name(),
            });
        }
        let mut out = self.clone();
        for (p, c) in other.terms.iter() {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&(-QTFraction::one())))
    }

    /// Rewrites the vector in another normalization of the same basis.
    pub fn convert(&self, target: BasisTag) -> Self {
        if self.basis == target {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| {
                let factor = self.basis.factor(p)
                    * target
                        .factor(p)
                        .inverse()
                        .expect("basis factors are invertible");
                (p.clone(), c * &factor)
            })
            .collect();
        KVector {
            n: self.n,
            k: self.k,
            basis: target,
            terms,
        }
    }
}

impl fmt::Display for KVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} {}{p}", self.basis.name())?;
        }
        Ok(())
    }
}

impl fmt::Debug for KVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    flag: FlagPoint,
    coeff: QTFraction,
}

#[derive(Serialize, Deserialize)]
struct KVectorRepr {
    grade: (u32, usize),
    basis: String,
    terms: Vec<TermRepr>,
}

impl Serialize for KVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KVectorRepr {
            grade: (self.n, self.k),
            basis: self.basis.name().to_string(),
            terms: self
                .terms
                .iter()
                .map(|(p, c)| TermRepr {
                    flag: p.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = KVectorRepr::deserialize(d)?;
        let basis = BasisTag::from_name(&repr.basis).map_err(D::Error::custom)?;
        let mut v = KVector::zero(repr.grade.0, repr.grade.1, basis);
        for t in repr.terms {
            if t.flag.n() != v.n || t.flag.k() != v.k {
                return Err(D::Error::custom(format!("flag {} outside grade", t.flag)));
            }
            v.add_term(t.flag, t.coeff);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{Cell, Partition};

    fn flag(parts: &[u32], order: &[(usize, usize)]) -> FlagPoint {
        FlagPoint::new(
            Partition::new(parts.to_vec()).unwrap(),
            order.iter().map(|&(r, c)| Cell::new(r, c)).collect(),
        )
        .unwrap()
    }

    fn f(s: &str) -> QTFraction {
        s.parse().unwrap()
    }

    #[test]
    fn basis_conversion_round_trip() {
        let p = flag(&[2, 1], &[(1, 0)]);
        let v = KVector::unit(p.clone(), BasisTag::H);
        // H_p = (−1)^3 q^{n(λ')} t^{n(λ)} I_p with λ = (2,1): n(λ') = 1, n(λ) = 1
        let in_i = v.convert(BasisTag::I);
        assert_eq!(in_i.coeff(&p), f("-q*t"));
        for tag in [BasisTag::H, BasisTag::I, BasisTag::IDual] {
            assert_eq!(v.convert(tag).convert(BasisTag::H), v);
        }
        let dual = v.convert(BasisTag::IDual);
        let lam_star = p.cotangent().lambda_star().unwrap();
        assert_eq!(dual.coeff(&p), &f("-q*t") * &lam_star);
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let p = flag(&[1], &[]);
        let v = KVector::unit(p.clone(), BasisTag::H);
        let w = v.scale(&f("q - t"));
        assert_eq!(w.coeff(&p), f("q - t"));
        assert!(w.sub(&w).unwrap().is_zero());
        let mixed = v.scale(&f("q")).add(&v.scale(&f("-q"))).unwrap();
        assert!(mixed.is_zero());
        assert!(v.add(&KVector::unit(p, BasisTag::I)).is_err());
    }

    #[test]
    fn serde_shape() {
        let p = flag(&[2], &[(0, 1)]);
        let mut v = KVector::zero(2, 1, BasisTag::H);
        v.add_term(p, f("1/(q - t)"));
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(
            text,
            r#"{"grade":[2,1],"basis":"H","terms":[{"flag":{"lambda":[2],"order":[[0,1]]},"coeff":"(1)/(q - t)"}]}"#
        );
        let back: KVector = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }
}
