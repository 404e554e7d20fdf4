//! The operators acting on fixed-point vectors.
//!
//! Everything is computed in the H basis and converted back at the end.
//! Writing w_m for the character of the m-th marked box of a flag p:
//!
//!   T_m H_p   = (q-1) w_{m+1}/(w_m - w_{m+1}) H_p
//!             + (w_m - q w_{m+1})/(w_m - w_{m+1}) H_{s_m p},
//!   z_j H_p   = w_j H_p,
//!   d- H_p    = H_p'            (forget the last marked box),
//!   d+ H_p    = q^k Σ_x d_{λ+x,λ} Π_{i=1..k} (x - t w_i)/(x - qt w_i) H_{x:p},
//!   φ  H_p    = -q^{k-1} Σ_x d_{λ+x,λ} x/(x - qt w_k)
//!                 Π_{i=1..k-1} (x - t w_i)/(x - qt w_i) H_{x:p''},
//!
//! where x runs over addable corners of λ (identified with their characters),
//! `x:p` marks x first ahead of p's boxes, and p'' forgets the last box.  The
//! remaining generators are composites: T_m^{-1} = q^{-1} T_m + q^{-1}(q-1),
//! y_j = q^{j-k} T_{j-1}^{-1}..T_1^{-1} φ T_{k-1}..T_j, d*+ = q^{-k} z_1 d+,
//! N = coefficientwise bar in the H basis, SD = the same in the I basis.
//!
//! T_m swaps marked boxes m, m+1; the swap term is dropped exactly when its
//! coefficient vanishes, which happens iff the boxes are row-adjacent and the
//! swapped marking would be invalid.  Summands of d+ whose corner x shares a
//! column with a marked box vanish identically (x = t w_i) and are skipped;
//! the denominators x - qt w_i are never zero on valid flags.

use rayon::prelude::*;

use crate::arith::QTFraction;
use crate::error::{Error, Result};
use crate::linalg::FracMat;
use crate::shapes::{FlagPoint, Partition};

use super::pieri::pieri_product;
use super::vector::{BasisTag, KVector};
use super::word::{Gen, OperatorWord};

/// Deliberate single-site perturbations used to demonstrate that the
/// relation checks actually see the formulas (mutation testing).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Fault {
    /// Diagonal coefficient of T_m uses w_m instead of w_{m+1}.
    HeckeCoeff,
    /// d+ drops its global q^k scale.
    DplusScale,
    /// The box-adding weight d_{λ+x,λ} uses an arm length off by one.
    PieriArm,
}

impl Fault {
    pub fn name(&self) -> &'static str {
        match self {
            Fault::HeckeCoeff => "hecke-coeff",
            Fault::DplusScale => "dplus-scale",
            Fault::PieriArm => "pieri-arm",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "hecke-coeff" => Ok(Fault::HeckeCoeff),
            "dplus-scale" => Ok(Fault::DplusScale),
            "pieri-arm" => Ok(Fault::PieriArm),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown fault {s:?} (hecke-coeff, dplus-scale, pieri-arm)"),
            }),
        }
    }
}

/// Applies generators and words to [`KVector`]s.
#[derive(Clone, Default)]
pub struct Engine {
    test_mode: bool,
    fault: Option<Fault>,
}

impl Engine {
    pub fn new() -> Self {
        Engine {
            test_mode: false,
            fault: None,
        }
    }

    pub fn with_fault(fault: Fault) -> Self {
        Engine {
            test_mode: false,
            fault: Some(fault),
        }
    }

    /// Cross-checks φ against (d+ d- − d- d+)/(q−1) on every call.
    pub fn set_test_mode(&mut self, on: bool) {
        self.test_mode = on;
    }

    pub fn fault(&self) -> Option<Fault> {
        self.fault
    }

    fn d_weight(&self, lambda: &Partition, mu: &Partition) -> QTFraction {
        pieri_product(lambda, mu, self.fault == Some(Fault::PieriArm))
    }

    pub fn apply_gen(&self, gen: Gen, v: &KVector) -> Result<KVector> {
        let basis = v.basis();
        gen.target_grade(v.n(), v.k())?;
        let vh = v.convert(BasisTag::H);
        let out = match gen {
            Gen::T(m) => self.apply_t(&vh, m),
            Gen::TInv(m) => {
                // T^{-1} = q^{-1} T + q^{-1}(q-1), from (T-1)(T+q) = 0.
                let q_inv = QTFraction::monomial(-1, 0);
                let rest = vh.scale(&(&q_inv * &(QTFraction::q() - QTFraction::one())));
                self.apply_t(&vh, m).scale(&q_inv).add(&rest)?
            }
            Gen::Z(j) => {
                let mut out = KVector::zero(vh.n(), vh.k(), BasisTag::H);
                for (p, c) in vh.iter() {
                    let (dq, dt) = p.w_exp(j);
                    out.add_term(p.clone(), c * &QTFraction::monomial(dq, dt));
                }
                out
            }
            Gen::DMinus => {
                let mut out = KVector::zero(vh.n(), vh.k() - 1, BasisTag::H);
                for (p, c) in vh.iter() {
                    let order = p.order()[..p.k() - 1].to_vec();
                    let trimmed = FlagPoint::new(p.lambda().clone(), order)
                        .expect("prefix of a valid marking is valid");
                    out.add_term(trimmed, c.clone());
                }
                out
            }
            Gen::DPlus => self.apply_dplus(&vh),
            Gen::Phi => {
                let out = self.apply_phi(&vh);
                if self.test_mode && self.fault.is_none() {
                    let comm = self.phi_via_commutator(&vh)?;
                    assert!(
                        out.sub(&comm)?.is_zero(),
                        "phi disagrees with (d+ d- - d- d+)/(q-1)"
                    );
                }
                out
            }
            Gen::Y(j) => {
                let word = y_word(j, vh.k());
                let scale = QTFraction::monomial(j as i64 - vh.k() as i64, 0);
                self.apply_word(&word, &vh)?.scale(&scale)
            }
            Gen::DPlusStar => {
                let scale = QTFraction::monomial(-(vh.k() as i64), 0);
                self.apply_gen(Gen::Z(1), &self.apply_dplus(&vh))?
                    .scale(&scale)
            }
            Gen::NOp => vh.bar_coeffs(),
            Gen::SD => vh.convert(BasisTag::I).bar_coeffs().convert(BasisTag::H),
        };
        Ok(out.convert(basis))
    }

    pub fn apply_word(&self, word: &OperatorWord, v: &KVector) -> Result<KVector> {
        let mut cur = v.clone();
        for (step, gen) in word.application_order().enumerate() {
            cur = self.apply_gen(*gen, &cur).map_err(|e| Error::WordStep {
                step: step + 1,
                msg: e.to_string(),
            })?;
        }
        Ok(cur)
    }

    /// Matrix of `word` from grade (n,k) in the given basis; returns the
    /// enumerated domain and codomain fixed points alongside the matrix
    /// (rows indexed by the codomain, columns by the domain).
    pub fn operator_matrix(
        &self,
        word: &OperatorWord,
        n: u32,
        k: usize,
        basis: BasisTag,
    ) -> Result<(Vec<FlagPoint>, Vec<FlagPoint>, FracMat)> {
        let domain = FlagPoint::enumerate(n, k);
        let (tn, tk) = word.target_grade(n, k)?;
        let codomain = FlagPoint::enumerate(tn, tk);
        let columns: Vec<Vec<QTFraction>> = domain
            .par_iter()
            .map(|p| {
                let img = self.apply_word(word, &KVector::unit(p.clone(), basis))?;
                Ok(codomain.iter().map(|q| img.coeff(q)).collect())
            })
            .collect::<Result<_>>()?;
        let mut mat = FracMat::zeros(codomain.len(), domain.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, val) in col.iter().enumerate() {
                if !val.is_zero() {
                    mat.set(i, j, val.clone());
                }
            }
        }
        Ok((domain, codomain, mat))
    }

    fn apply_t(&self, v: &KVector, m: usize) -> KVector {
        let q = QTFraction::q();
        let q_minus_1 = &q - &QTFraction::one();
        let mut out = KVector::zero(v.n(), v.k(), BasisTag::H);
        for (p, c) in v.iter() {
            let wm = {
                let (dq, dt) = p.w_exp(m);
                QTFraction::monomial(dq, dt)
            };
            let wm1 = {
                let (dq, dt) = p.w_exp(m + 1);
                QTFraction::monomial(dq, dt)
            };
            let den = &wm - &wm1; // nonzero: marked boxes sit in distinct columns
            let diag_num = match self.fault {
                Some(Fault::HeckeCoeff) => &wm,
                _ => &wm1,
            };
            out.add_term(p.clone(), &(c * &q_minus_1) * &(diag_num / &den));
            let swap_num = &wm - &(&q * &wm1);
            if !swap_num.is_zero() {
                let mut order = p.order().to_vec();
                order.swap(m - 1, m);
                let swapped = FlagPoint::new(p.lambda().clone(), order)
                    .expect("swap is valid whenever its coefficient is nonzero");
                out.add_term(swapped, c * &(&swap_num / &den));
            }
        }
        out
    }

    fn apply_dplus(&self, v: &KVector) -> KVector {
        let k = v.k();
        let scale = match self.fault {
            Some(Fault::DplusScale) => QTFraction::one(),
            _ => QTFraction::monomial(k as i64, 0),
        };
        let mut out = KVector::zero(v.n() + 1, k + 1, BasisTag::H);
        for (p, c) in v.iter() {
            let lambda = p.lambda();
            for x in lambda.addable_cells() {
                if p.order().iter().any(|b| b.col == x.col) {
                    continue; // the factor x - t w_i for that box vanishes
                }
                let bigger = lambda.add_cell(x).expect("addable corner");
                let mut coeff = &(c * &scale) * &self.d_weight(&bigger, lambda);
                let (xq, xt) = x.char_exponents();
                let xc = QTFraction::monomial(xq, xt);
                for i in 1..=k {
                    let (dq, dt) = p.w_exp(i);
                    let num = &xc - &QTFraction::monomial(dq, dt + 1);
                    let den = &xc - &QTFraction::monomial(dq + 1, dt + 1);
                    assert!(!den.is_zero(), "pole x = qt w_i on a valid flag");
                    coeff = &coeff * &(&num / &den);
                }
                let mut order = Vec::with_capacity(k + 1);
                order.push(x);
                order.extend_from_slice(p.order());
                let marked = FlagPoint::new(bigger, order)
                    .expect("prepending a fresh corner keeps the marking valid");
                out.add_term(marked, coeff);
            }
        }
        out
    }

    fn apply_phi(&self, v: &KVector) -> KVector {
        let k = v.k();
        let scale = -QTFraction::monomial(k as i64 - 1, 0);
        let mut out = KVector::zero(v.n() + 1, k, BasisTag::H);
        for (p, c) in v.iter() {
            let lambda = p.lambda();
            let kept = &p.order()[..k - 1];
            let (yq, yt) = p.w_exp(k);
            for x in lambda.addable_cells() {
                if kept.iter().any(|b| b.col == x.col) {
                    continue;
                }
                let bigger = lambda.add_cell(x).expect("addable corner");
                let (xq, xt) = x.char_exponents();
                let xc = QTFraction::monomial(xq, xt);
                let den = &xc - &QTFraction::monomial(yq + 1, yt + 1);
                assert!(!den.is_zero(), "pole x = qt w_k on a valid flag");
                let mut coeff = &(c * &scale) * &(&self.d_weight(&bigger, lambda) * &(&xc / &den));
                for i in 1..k {
                    let (dq, dt) = p.w_exp(i);
                    let num = &xc - &QTFraction::monomial(dq, dt + 1);
                    let den = &xc - &QTFraction::monomial(dq + 1, dt + 1);
                    assert!(!den.is_zero(), "pole x = qt w_i on a valid flag");
                    coeff = &coeff * &(&num / &den);
                }
                let mut order = Vec::with_capacity(k);
                order.push(x);
                order.extend_from_slice(kept);
                let marked = FlagPoint::new(bigger, order)
                    .expect("prepending a fresh corner keeps the marking valid");
                out.add_term(marked, coeff);
            }
        }
        out
    }

    fn phi_via_commutator(&self, v: &KVector) -> Result<KVector> {
        let dp_dm = self.apply_dplus(&self.apply_gen(Gen::DMinus, v)?);
        let dm_dp = self.apply_gen(Gen::DMinus, &self.apply_dplus(v))?;
        let q_minus_1 = QTFraction::q() - QTFraction::one();
        Ok(dp_dm
            .sub(&dm_dp)?
            .scale(&q_minus_1.inverse().expect("q - 1 != 0")))
    }
}

/// y_j = q^{j-k} T_{j-1}^{-1} .. T_1^{-1} φ T_{k-1} .. T_j (scale excluded).
fn y_word(j: usize, k: usize) -> OperatorWord {
    let mut gens = Vec::new();
    for m in (1..j).rev() {
        gens.push(Gen::TInv(m));
    }
    gens.push(Gen::Phi);
    for m in (j..k).rev() {
        gens.push(Gen::T(m));
    }
    OperatorWord(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QTFraction;
    use crate::shapes::Cell;

    fn flag(lambda: &[u32], order: &[(usize, usize)]) -> FlagPoint {
        FlagPoint::new(
            Partition::new(lambda.to_vec()).unwrap(),
            order.iter().map(|&(r, c)| Cell::new(r, c)).collect(),
        )
        .unwrap()
    }

    fn frac(s: &str) -> QTFraction {
        s.parse().unwrap()
    }

    fn unit_h(lambda: &[u32], order: &[(usize, usize)]) -> KVector {
        KVector::unit(flag(lambda, order), BasisTag::H)
    }

    #[test]
    fn row_tower_under_dplus() {
        // d+ H_{(1),[(0,0)]} = H_{(2),[(0,1),(0,0)]} with coefficient exactly 1,
        // and more generally d+^n 1 marches along single rows.
        let eng = Engine::new();
        let img = eng.apply_gen(Gen::DPlus, &unit_h(&[1], &[(0, 0)])).unwrap();
        assert_eq!(img.num_terms(), 1);
        assert!(img.coeff(&flag(&[2], &[(0, 1), (0, 0)])).is_one());

        let mut v = KVector::unit(flag(&[], &[]), BasisTag::H);
        for n in 1..=4u32 {
            v = eng.apply_gen(Gen::DPlus, &v).unwrap();
            let order: Vec<(usize, usize)> = (0..n as usize).rev().map(|c| (0, c)).collect();
            assert_eq!(v.num_terms(), 1, "d+^{n} of the vacuum is a single term");
            assert!(v.coeff(&flag(&[n], &order)).is_one());
        }
    }

    #[test]
    fn phi_on_one_box() {
        // φ H_{(1),[(0,0)]} = (-H_{(2),[(0,1)]} + H_{(1,1),[(1,0)]})/(q-t)
        let mut eng = Engine::new();
        eng.set_test_mode(true);
        let img = eng.apply_gen(Gen::Phi, &unit_h(&[1], &[(0, 0)])).unwrap();
        assert_eq!(img.num_terms(), 2);
        assert_eq!(img.coeff(&flag(&[2], &[(0, 1)])), frac("(-1)/(q - t)"));
        assert_eq!(img.coeff(&flag(&[1, 1], &[(1, 0)])), frac("(1)/(q - t)"));
    }

    #[test]
    fn hecke_action_and_quadratic() {
        let eng = Engine::new();
        let p = flag(&[2, 1], &[(0, 1), (1, 0)]);
        let img = eng
            .apply_gen(Gen::T(1), &KVector::unit(p.clone(), BasisTag::H))
            .unwrap();
        assert_eq!(img.coeff(&p), frac("(q*t - t)/(q - t)"));
        assert_eq!(
            img.coeff(&flag(&[2, 1], &[(1, 0), (0, 1)])),
            frac("(q - q*t)/(q - t)")
        );

        // (T_m - 1)(T_m + q) = 0 and T_m T_m^{-1} = 1 on whole graded pieces.
        for (n, k) in [(2u32, 2usize), (3, 2), (4, 2), (4, 3)] {
            for p in FlagPoint::enumerate(n, k) {
                let v = KVector::unit(p.clone(), BasisTag::H);
                for m in 1..k {
                    let tv = eng.apply_gen(Gen::T(m), &v).unwrap();
                    let ttv = eng.apply_gen(Gen::T(m), &tv).unwrap();
                    // T^2 + (q-1) T - q = 0
                    let lhs = ttv
                        .add(&tv.scale(&(QTFraction::q() - QTFraction::one())))
                        .unwrap()
                        .sub(&v.scale(&QTFraction::q()))
                        .unwrap();
                    assert!(lhs.is_zero(), "Hecke quadratic fails at {p}, m={m}");
                    let round = eng.apply_gen(Gen::TInv(m), &tv).unwrap();
                    assert!(round.sub(&v).unwrap().is_zero(), "T^-1 T != 1 at {p}");
                }
            }
        }
    }

    #[test]
    fn phi_matches_normalized_commutator() {
        let mut eng = Engine::new();
        eng.set_test_mode(true); // asserts φ = (d+ d- − d- d+)/(q−1) internally
        for n in 1..=3u32 {
            for k in 1..=n as usize {
                for p in FlagPoint::enumerate(n, k) {
                    let v = KVector::unit(p, BasisTag::H);
                    eng.apply_gen(Gen::Phi, &v).unwrap();
                }
            }
        }
    }

    #[test]
    fn involution_and_twists() {
        let eng = Engine::new();
        for (n, k) in [(2u32, 1usize), (3, 1), (3, 2)] {
            for p in FlagPoint::enumerate(n, k) {
                let v = KVector::unit(p.clone(), BasisTag::H);
                // N^2 = id, SD^2 = id
                let nn = eng
                    .apply_gen(Gen::NOp, &eng.apply_gen(Gen::NOp, &v).unwrap())
                    .unwrap();
                assert!(nn.sub(&v).unwrap().is_zero());
                let ss = eng
                    .apply_gen(Gen::SD, &eng.apply_gen(Gen::SD, &v).unwrap())
                    .unwrap();
                assert!(ss.sub(&v).unwrap().is_zero());
                // N z_j N = z_j^{-1}: conjugating the diagonal operator inverts
                // the monomial eigenvalue.
                for j in 1..=k {
                    let lhs = eng
                        .apply_gen(
                            Gen::NOp,
                            &eng.apply_gen(Gen::Z(j), &eng.apply_gen(Gen::NOp, &v).unwrap())
                                .unwrap(),
                        )
                        .unwrap();
                    let (dq, dt) = p.w_exp(j);
                    let rhs = v.scale(&QTFraction::monomial(-dq, -dt));
                    assert!(lhs.sub(&rhs).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn star_raising_matches_involution_conjugate() {
        // q^k N d+ N = z_1 d+, i.e. d*+ = N d+ N.
        let eng = Engine::new();
        for (n, k) in [(0u32, 0usize), (1, 0), (1, 1), (2, 1), (3, 2)] {
            for p in FlagPoint::enumerate(n, k) {
                let v = KVector::unit(p, BasisTag::H);
                let lhs = eng
                    .apply_gen(
                        Gen::NOp,
                        &eng.apply_gen(Gen::DPlus, &eng.apply_gen(Gen::NOp, &v).unwrap())
                            .unwrap(),
                    )
                    .unwrap();
                let rhs = eng.apply_gen(Gen::DPlusStar, &v).unwrap();
                assert!(lhs.sub(&rhs).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn words_track_grades_and_report_errors() {
        let eng = Engine::new();
        let v = unit_h(&[1], &[(0, 0)]);
        let w: OperatorWord = "d- y:1 z:1 d+".parse().unwrap();
        let img = eng.apply_word(&w, &v).unwrap();
        assert_eq!((img.n(), img.k()), (3, 1));
        let bad: OperatorWord = "T:1 d-".parse().unwrap();
        match eng.apply_word(&bad, &v) {
            Err(Error::WordStep { step: 2, .. }) => {}
            other => panic!("expected step-2 failure, got {other:?}"),
        }
    }

    #[test]
    fn matrix_of_a_word() {
        let eng = Engine::new();
        let w: OperatorWord = "d+".parse().unwrap();
        let (dom, cod, mat) = eng.operator_matrix(&w, 2, 0, BasisTag::H).unwrap();
        assert_eq!(dom.len(), 2);
        assert_eq!(cod.len(), FlagPoint::enumerate(3, 1).len());
        assert_eq!((mat.nrows(), mat.ncols()), (cod.len(), dom.len()));
        // every partition of 2 admits two one-box growths
        for j in 0..dom.len() {
            let nonzero = (0..cod.len()).filter(|&i| !mat.at(i, j).is_zero()).count();
            assert_eq!(nonzero, 2);
        }
    }

    #[test]
    fn faults_perturb_the_operators() {
        let clean = Engine::new();
        let v = unit_h(&[2, 1], &[(0, 1), (1, 0)]);
        for fault in [Fault::HeckeCoeff, Fault::DplusScale, Fault::PieriArm] {
            let broken = Engine::with_fault(fault);
            let gen = match fault {
                Fault::HeckeCoeff => Gen::T(1),
                _ => Gen::DPlus,
            };
            let a = clean.apply_gen(gen, &v).unwrap();
            let b = broken.apply_gen(gen, &v).unwrap();
            assert!(
                !a.sub(&b).unwrap().is_zero(),
                "{} fault is invisible",
                fault.name()
            );
            assert_eq!(Fault::from_name(fault.name()).unwrap(), fault);
        }
    }
}
