//! The word basis of the fixed-point modules and its polynomial transport.
//!
//! Every index x = (μ, a) ∈ A(n,k) owns a canonical raising word
//!
//!   d₋^l · y₁^{a_1} ⋯ y_k^{a_k} · y_{k+1}^{μ_l − 1} ⋯ y_{k+l}^{μ_1 − 1} · d₊^{k+l}
//!
//! with l = len(μ) and μ_1 ≥ … ≥ μ_l, read right to left (the d₊ string acts
//! first).  Applied to the vacuum H_∅ it produces a vector whose support has
//! x itself as unique ≤-maximal index ([`BruhatPoset`]); applied to 1 ∈ V₀ on
//! the polynomial side it produces the matching element of V_k.  The two
//! exponent conventions that the displayed word leaves open — which end of a
//! pairs with y₁, and whether parts enter literally or shifted — are fixed
//! here by requiring the leading index of the image to equal x on every
//! grade with n ≤ 3 (they then hold on every grade we can afford to check):
//! a pairs with y₁ ⋯ y_k in order a_1, …, a_k, and the parts of μ enter
//! smallest first, each reduced by one.
//!
//! [`PhiMap`] inverts the construction: it expands any grade-homogeneous
//! element of V_k over the polynomial images and maps it to the fixed-point
//! side, giving the transport Φ under which the two actions correspond
//! ([`check_phi_equivariance`]).  [`check_lt_rules`] verifies the three
//! leading-term rules that drive the triangularity argument:
//!
//!   LT(T_m H_x)  = max(x, s_m x)           (s_m swaps a_m, a_{m+1}),
//!   supp(d₋ H_x) = {(μ ∪ {a_k+1}, (a_1, …, a_{k−1}))}   (a singleton),
//!   LT(φ H_x)    = (ν − {top}, (top, a_1, …, a_{k−1}))
//!                   with ν = μ ∪ {a_k+1}, top = max(ν).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::QTFraction;
use crate::error::{Error, Result};
use crate::fixed_point::{BasisTag, Engine, Gen, KVector, OperatorWord};
use crate::linalg::FracMat;
use crate::poly_rep::{SymFunc, YPoly};
use crate::shapes::{AIndex, BruhatPoset, FlagPoint, Partition};

/// The canonical raising word of an index (tokens act right to left).
pub fn phi_word(x: &AIndex) -> OperatorWord {
    let k = x.k();
    let l = x.mu.len();
    let mut gens = vec![Gen::DMinus; l];
    for (i, &ai) in x.a.iter().enumerate() {
        gens.extend(std::iter::repeat(Gen::Y(i + 1)).take(ai as usize));
    }
    for (j, &part) in x.mu.parts().iter().rev().enumerate() {
        gens.extend(std::iter::repeat(Gen::Y(k + 1 + j)).take(part as usize - 1));
    }
    gens.extend(std::iter::repeat(Gen::DPlus).take(k + l));
    OperatorWord(gens)
}

/// The vacuum vector H_∅ at grade (0,0).
pub fn vacuum() -> KVector {
    let empty = FlagPoint::new(Partition::empty(), vec![]).expect("empty flag is valid");
    KVector::unit(empty, BasisTag::H)
}

/// The fixed-point image of the raising word of x.
pub fn phi_word_image(eng: &Engine, x: &AIndex) -> Result<KVector> {
    eng.apply_word(&phi_word(x), &vacuum())
}

/// The polynomial image of the raising word of x (an element of V_k of
/// grade n, computed from 1 ∈ V₀).
pub fn poly_v(x: &AIndex, cap: u32) -> Result<YPoly> {
    YPoly::one(0, cap).apply_word(&phi_word(x))
}

/// An index together with its raising word and fixed-point image.
#[derive(Clone, Debug)]
pub struct PhiWitness {
    pub index: AIndex,
    pub word: OperatorWord,
    pub image: KVector,
}

/// The word-basis witnesses of one grade.
pub fn phi_witnesses(eng: &Engine, n: u32, k: usize) -> Result<Vec<PhiWitness>> {
    AIndex::enumerate(n, k)
        .into_iter()
        .map(|index| {
            let word = phi_word(&index);
            let image = eng.apply_word(&word, &vacuum())?;
            Ok(PhiWitness { index, word, image })
        })
        .collect()
}

/// The unique ≤-maximal index of the support of v, if there is one.
pub fn leading_index(poset: &BruhatPoset, v: &KVector) -> Option<AIndex> {
    let support: Vec<AIndex> = v.support().map(AIndex::from_flag).collect();
    if support.is_empty() {
        return None;
    }
    poset.unique_max(&support).cloned()
}

/// The transport V_k → U_{n,k} of one grade: expand over the polynomial
/// images of the word basis, send each word to its fixed-point image.
pub struct PhiMap {
    n: u32,
    k: usize,
    cap: u32,
    indices: Vec<AIndex>,
    images: Vec<KVector>,
    monomials: Vec<(Vec<u32>, Partition)>,
    positions: BTreeMap<(Vec<u32>, Partition), usize>,
    /// inverse of the matrix whose columns are the polynomial images of the
    /// words, written in the monomial basis y^e ⊗ s_λ
    basis_to_word: FracMat,
}

impl PhiMap {
    pub fn new(eng: &Engine, n: u32, k: usize, cap: u32) -> Result<Self> {
        if (n as usize) < k || cap < n {
            return Err(Error::GradeError(format!(
                "transport at grade ({n},{k}) needs n >= k and cap >= n, got cap {cap}"
            )));
        }
        let indices = AIndex::enumerate(n, k);
        let monomials = grade_monomials(n, k);
        assert_eq!(
            indices.len(),
            monomials.len(),
            "indices and monomials of one grade are equinumerous"
        );
        let positions: BTreeMap<(Vec<u32>, Partition), usize> = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let dim = indices.len();
        let mut word_matrix = FracMat::zeros(dim, dim);
        let mut images = Vec::with_capacity(dim);
        for (col, x) in indices.iter().enumerate() {
            images.push(phi_word_image(eng, x)?);
            let poly = poly_v(x, cap)?;
            for (exps, f) in poly.iter() {
                for (lam, c) in f.iter() {
                    let row = *positions.get(&(exps.clone(), lam.clone())).ok_or_else(|| {
                        Error::GradeError(format!("polynomial image of {x} leaves grade ({n},{k})"))
                    })?;
                    word_matrix.set(row, col, c.clone());
                }
            }
        }
        let basis_to_word = word_matrix.inverse().map_err(|_| {
            Error::Singular(format!("word images at grade ({n},{k}) are dependent"))
        })?;
        Ok(PhiMap {
            n,
            k,
            cap,
            indices,
            images,
            monomials,
            positions,
            basis_to_word,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The degree cap its polynomial arguments must respect.
    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn indices(&self) -> &[AIndex] {
        &self.indices
    }

    pub fn images(&self) -> &[KVector] {
        &self.images
    }

    pub fn monomials(&self) -> &[(Vec<u32>, Partition)] {
        &self.monomials
    }

    /// Transport a grade-homogeneous element of V_k to the fixed-point side.
    pub fn transport(&self, f: &YPoly) -> Result<KVector> {
        if f.k() != self.k || f.is_w() {
            return Err(Error::GradeError(format!(
                "transport at grade ({},{}) got an element of the wrong space",
                self.n, self.k
            )));
        }
        let mut coords = vec![QTFraction::zero(); self.monomials.len()];
        for (exps, sf) in f.iter() {
            for (lam, c) in sf.iter() {
                if c.is_zero() {
                    continue;
                }
                let pos = *self
                    .positions
                    .get(&(exps.clone(), lam.clone()))
                    .ok_or_else(|| {
                        Error::GradeError(format!(
                            "term y^{exps:?} s_{lam} is not homogeneous of grade {}",
                            self.n
                        ))
                    })?;
                coords[pos] = c.clone();
            }
        }
        let word_coords = self.basis_to_word.mul_vec(&coords);
        let mut out = KVector::zero(self.n, self.k, BasisTag::H);
        for (c, img) in word_coords.iter().zip(&self.images) {
            if !c.is_zero() {
                out = out.add(&img.scale(c))?;
            }
        }
        Ok(out)
    }
}

/// The monomial basis y^e ⊗ s_λ of the grade-n part of V_k.
fn grade_monomials(n: u32, k: usize) -> Vec<(Vec<u32>, Partition)> {
    let d = n - k as u32;
    let mut out = Vec::new();
    for s in 0..=d {
        for e in exponent_vectors(k, s) {
            for lam in Partition::enumerate(d - s) {
                out.push((e.clone(), lam));
            }
        }
    }
    out
}

/// All length-k vectors of nonnegative integers with the given sum.
fn exponent_vectors(k: usize, total: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for rest in exponent_vectors(k - 1, total - first) {
            let mut v = Vec::with_capacity(k);
            v.push(first);
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// A cache of transports, one per grade, sharing the engine and degree cap.
pub struct PhiTransport<'a> {
    eng: &'a Engine,
    cap: u32,
    maps: BTreeMap<(u32, usize), PhiMap>,
}

impl<'a> PhiTransport<'a> {
    pub fn new(eng: &'a Engine, cap: u32) -> Self {
        PhiTransport {
            eng,
            cap,
            maps: BTreeMap::new(),
        }
    }

    pub fn map(&mut self, n: u32, k: usize) -> Result<&PhiMap> {
        if !self.maps.contains_key(&(n, k)) {
            let map = PhiMap::new(self.eng, n, k, self.cap)?;
            self.maps.insert((n, k), map);
        }
        Ok(&self.maps[&(n, k)])
    }

    /// Checks that transporting commutes with one word at one source grade:
    /// apply the word polynomially then transport, against transport then
    /// the word's fixed-point action, on every monomial of the grade.
    pub fn check_word(&mut self, word: &OperatorWord, n: u32, k: usize) -> EquivarianceReport {
        let mut report = EquivarianceReport {
            word: word.to_string(),
            grade: (n, k),
            points: 0,
            failures: Vec::new(),
        };
        let (tn, tk) = match word.target_grade(n, k) {
            Ok(g) => g,
            Err(e) => {
                report.failures.push(format!("word invalid at grade: {e}"));
                return report;
            }
        };
        let monomials = match self.map(n, k) {
            Ok(m) => m.monomials().to_vec(),
            Err(e) => {
                report.failures.push(format!("source transport: {e}"));
                return report;
            }
        };
        if let Err(e) = self.map(tn, tk) {
            report.failures.push(format!("target transport: {e}"));
            return report;
        }
        let cap = self.cap;
        for (exps, lam) in monomials {
            report.points += 1;
            let outcome = (|| -> Result<Option<String>> {
                let f = YPoly::monomial(k, cap, exps.clone(), SymFunc::schur(lam.clone(), cap)?)?;
                let geometric = self
                    .eng
                    .apply_word(word, &self.maps[&(n, k)].transport(&f)?)?;
                let polynomial = self.maps[&(tn, tk)].transport(&f.apply_word(word)?)?;
                let defect = geometric.sub(&polynomial)?;
                Ok(if defect.is_zero() {
                    None
                } else {
                    Some(format!(
                        "y^{exps:?} s_{lam}: defect has {} terms",
                        defect.num_terms()
                    ))
                })
            })();
            match outcome {
                Ok(None) => {}
                Ok(Some(msg)) => report.failures.push(msg),
                Err(e) => report.failures.push(format!("y^{exps:?} s_{lam}: {e}")),
            }
        }
        report
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceReport {
    pub word: String,
    pub grade: (u32, usize),
    pub points: usize,
    pub failures: Vec<String>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One-shot form of [`PhiTransport::check_word`] without cross-word caching.
pub fn check_phi_equivariance(
    eng: &Engine,
    word: &OperatorWord,
    n: u32,
    k: usize,
) -> EquivarianceReport {
    PhiTransport::new(eng, n + word.len() as u32).check_word(word, n, k)
}

#[derive(Clone, Debug, Serialize)]
pub struct LtReport {
    pub grade: (u32, usize),
    pub checks: usize,
    pub failures: Vec<String>,
}

impl LtReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The index p of the expected d₋ image and the φ leading index of x.
fn lowered_index(x: &AIndex) -> AIndex {
    let k = x.k();
    let mut parts = x.mu.parts().to_vec();
    parts.push(x.a[k - 1] + 1);
    AIndex::new(Partition::from_unsorted(parts), x.a[..k - 1].to_vec())
}

fn phi_leading(x: &AIndex) -> AIndex {
    let k = x.k();
    let mut parts = x.mu.parts().to_vec();
    parts.push(x.a[k - 1] + 1);
    let nu = Partition::from_unsorted(parts);
    let top = nu.part(0);
    let mut rest = nu.parts()[1..].to_vec();
    rest.sort_unstable_by(|a, b| b.cmp(a));
    let mut a = Vec::with_capacity(k);
    a.push(top);
    a.extend_from_slice(&x.a[..k - 1]);
    AIndex::new(Partition::new(rest).expect("sorted tail"), a)
}

/// Verifies the three leading-term rules on every basis vector of one grade.
pub fn check_lt_rules(eng: &Engine, n: u32, k: usize) -> LtReport {
    let mut report = LtReport {
        grade: (n, k),
        checks: 0,
        failures: Vec::new(),
    };
    let poset = BruhatPoset::new(n, k);
    let poset_down = if k >= 1 {
        Some(BruhatPoset::new(n, k - 1))
    } else {
        None
    };
    let poset_up = if k >= 1 {
        Some(BruhatPoset::new(n + 1, k))
    } else {
        None
    };
    for x in AIndex::enumerate(n, k) {
        let unit = KVector::unit(x.to_flag(), BasisTag::H);
        for m in 1..k {
            for gen in [Gen::T(m), Gen::TInv(m)] {
                report.checks += 1;
                let mut swapped = x.a.clone();
                swapped.swap(m - 1, m);
                let sx = AIndex::new(x.mu.clone(), swapped);
                let expected = if poset.le(&sx, &x) { x.clone() } else { sx };
                match eng.apply_gen(gen, &unit) {
                    Ok(image) => match leading_index(&poset, &image) {
                        Some(lt) if lt == expected => {}
                        Some(lt) => report.failures.push(format!(
                            "{gen} on {x}: leading index {lt}, expected {expected}"
                        )),
                        None => report
                            .failures
                            .push(format!("{gen} on {x}: no unique maximal support index")),
                    },
                    Err(e) => report.failures.push(format!("{gen} on {x}: {e}")),
                }
            }
        }
        if k >= 1 {
            report.checks += 1;
            let expected = lowered_index(&x);
            match eng.apply_gen(Gen::DMinus, &unit) {
                Ok(image) => {
                    let support: Vec<AIndex> = image.support().map(AIndex::from_flag).collect();
                    if support.len() != 1 || support[0] != expected {
                        report.failures.push(format!(
                            "d- on {x}: support {support:?}, expected the singleton {expected}"
                        ));
                    } else if poset_down
                        .as_ref()
                        .map(|p| leading_index(p, &image) != Some(expected.clone()))
                        .unwrap_or(true)
                    {
                        report
                            .failures
                            .push(format!("d- on {x}: singleton support is not its own max"));
                    }
                }
                Err(e) => report.failures.push(format!("d- on {x}: {e}")),
            }

            report.checks += 1;
            let expected = phi_leading(&x);
            match eng.apply_gen(Gen::Phi, &unit) {
                Ok(image) => match leading_index(poset_up.as_ref().expect("k >= 1"), &image) {
                    Some(lt) if lt == expected => {}
                    Some(lt) => report.failures.push(format!(
                        "phi on {x}: leading index {lt}, expected {expected}"
                    )),
                    None => report
                        .failures
                        .push(format!("phi on {x}: no unique maximal support index")),
                },
                Err(e) => report.failures.push(format!("phi on {x}: {e}")),
            }
        }
    }
    report
}

/// The composition bookkeeping of the triangularity recursion: the maximal
/// entry of a (leftmost if tied, at 1-based position i) is lowered by one,
/// carried to the front by adjacent swaps (the b^j), re-inserted at the back
/// raised by one, and carried back to position i (the a^j, ending at a
/// itself).  Returns ([b^i, …, b^1], [a^k, …, a^i]).
pub fn lt_recursion_steps(a: &[u32]) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let k = a.len();
    assert!(k > 0, "recursion needs a nonempty composition");
    let m = *a.iter().max().expect("nonempty");
    assert!(m > 0, "recursion needs a positive maximal entry");
    let i = a.iter().position(|&v| v == m).expect("max exists") + 1;
    let mut b_steps = Vec::with_capacity(i);
    let mut b = a.to_vec();
    b[i - 1] = m - 1;
    b_steps.push(b.clone());
    for j in (1..i).rev() {
        b.swap(j - 1, j);
        b_steps.push(b.clone());
    }
    let b1 = b_steps.last().expect("at least one b step");
    let mut a_step: Vec<u32> = b1[1..].to_vec();
    a_step.push(b1[0] + 1);
    let mut a_steps = Vec::with_capacity(k - i + 1);
    a_steps.push(a_step.clone());
    for j in (i..k).rev() {
        a_step.swap(j - 1, j);
        a_steps.push(a_step.clone());
    }
    assert_eq!(
        a_steps.last().expect("nonempty"),
        &a.to_vec(),
        "recursion returns to a"
    );
    (b_steps, a_steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed_point::Engine;
    use crate::shapes::Cell;

    fn x(mu: &[u32], a: &[u32]) -> AIndex {
        AIndex::new(Partition::new(mu.to_vec()).unwrap(), a.to_vec())
    }

    #[test]
    fn word_images_anchor_cases() {
        let eng = Engine::new();
        // empty word at the vacuum
        let img = phi_word_image(&eng, &x(&[], &[])).unwrap();
        assert_eq!(img, vacuum());
        // a single raising step lands on the one-box flag
        let img = phi_word_image(&eng, &x(&[], &[0])).unwrap();
        let one_box = FlagPoint::new(
            Partition::new(vec![1]).unwrap(),
            vec![Cell { row: 0, col: 0 }],
        )
        .unwrap();
        assert_eq!(img, KVector::unit(one_box, BasisTag::H));
    }

    #[test]
    fn word_images_are_triangular_with_identity_labels() {
        let eng = Engine::new();
        for (n, k) in [
            (2u32, 0usize),
            (3, 0),
            (4, 0),
            (2, 1),
            (3, 1),
            (4, 1),
            (3, 2),
            (4, 2),
        ] {
            let poset = BruhatPoset::new(n, k);
            for w in phi_witnesses(&eng, n, k).unwrap() {
                let lt = leading_index(&poset, &w.image);
                assert_eq!(
                    lt.as_ref(),
                    Some(&w.index),
                    "leading index of the image of {} at ({n},{k})",
                    w.index
                );
            }
        }
    }

    #[test]
    fn transport_is_invertible_and_matches_the_words() {
        let eng = Engine::new();
        for (n, k) in [(3u32, 1usize), (4, 2), (4, 0)] {
            let map = PhiMap::new(&eng, n, k, n).unwrap();
            assert_eq!(map.indices().len(), map.monomials().len());
            // transporting the polynomial image of a word returns its
            // fixed-point image
            for (x, img) in map.indices().iter().zip(map.images()) {
                let p = poly_v(x, n).unwrap();
                assert_eq!(&map.transport(&p).unwrap(), img, "round trip at {x}");
            }
        }
    }

    #[test]
    fn leading_term_rules_hold_on_small_grades() {
        let eng = Engine::new();
        for (n, k) in [(2u32, 1usize), (3, 1), (4, 1), (3, 2), (4, 2)] {
            let report = check_lt_rules(&eng, n, k);
            assert!(
                report.passed(),
                "leading-term rules at ({n},{k}): {:?}",
                report.failures
            );
            assert!(report.checks > 0);
        }
    }

    #[test]
    fn equivariance_on_single_generators() {
        let eng = Engine::new();
        for (tokens, n, k) in [
            ("d+", 1u32, 0usize),
            ("d+", 3, 1),
            ("d-", 3, 1),
            ("y:1", 3, 1),
            ("T:1 d+", 2, 1),
            ("d- d+", 3, 2),
        ] {
            let word: OperatorWord = tokens.parse().unwrap();
            let report = check_phi_equivariance(&eng, &word, n, k);
            assert!(
                report.passed(),
                "equivariance of `{tokens}` at ({n},{k}): {:?}",
                report.failures
            );
        }
    }

    #[test]
    fn recursion_steps_match_the_worked_sequence() {
        let a = [2, 0, 3, 1, 3, 0, 3, 0, 1];
        let (b_steps, a_steps) = lt_recursion_steps(&a);
        assert_eq!(
            b_steps,
            vec![
                vec![2, 0, 2, 1, 3, 0, 3, 0, 1],
                vec![2, 2, 0, 1, 3, 0, 3, 0, 1],
                vec![2, 2, 0, 1, 3, 0, 3, 0, 1],
            ]
        );
        assert_eq!(
            a_steps,
            vec![
                vec![2, 0, 1, 3, 0, 3, 0, 1, 3],
                vec![2, 0, 1, 3, 0, 3, 0, 3, 1],
                vec![2, 0, 1, 3, 0, 3, 3, 0, 1],
                vec![2, 0, 1, 3, 0, 3, 3, 0, 1],
                vec![2, 0, 1, 3, 3, 0, 3, 0, 1],
                vec![2, 0, 1, 3, 3, 0, 3, 0, 1],
                vec![2, 0, 3, 1, 3, 0, 3, 0, 1],
            ]
        );
    }
}
