//! Staircase words for the lattice family P_{m,n} and an independent
//! tableau-sum route for their matrix coefficients.
//!
//! For coprime (m,n) with n ≥ 1 the operator adding n boxes along slope m/n is
//! realized by the word
//!
//! ```text
//! P_{m,n} = d- z_1^{S_n} y_1 z_1^{S_{n-1}} y_1 ... y_1 z_1^{S_1} d+
//! ```
//!
//! with staircase exponents S_i = ⌊mi/n⌋ − ⌊m(i−1)/n⌋ (so Σ S_i = m and there
//! are n−1 y_1 factors).  Acting on the unmarked basis, its coefficients are
//! also given by a sum over one-box growth chains μ = λ⁽⁰⁾ ⊂ ... ⊂ λ⁽ⁿ⁾:
//!
//! ```text
//! ⟨λ⁽ⁿ⁾| P_{m,n} |μ⟩ = (−1)^{n−1} Σ_chains Π_i w_i^{S_i}
//!     · Π_i d_{λ⁽ⁱ⁾ λ⁽ⁱ⁻¹⁾} w_i/(w_i − qt w_{i−1}),   qt·w_0 := 0,
//! ```
//!
//! where w_i is the character of the box added at step i and the d-weights
//! are computed by the Λ*-product route, keeping the two sides of the check
//! structurally independent.  The denominators never vanish: consecutive
//! chain steps cannot sit on the same qt-diagonal.

use num_integer::Integer;

use crate::arith::QTFraction;
use crate::error::{Error, Result};
use crate::fixed_point::{pieri_lambda_star, BasisTag, Engine, KVector, OperatorWord};
use crate::shapes::{FlagPoint, Partition};

/// S_i = ⌊mi/n⌋ − ⌊m(i−1)/n⌋ for i = 1..n.
pub fn staircase(m: u32, n: u32) -> Vec<i64> {
    assert!(n >= 1);
    let (m, n) = (m as i64, n as i64);
    (1..=n).map(|i| m * i / n - m * (i - 1) / n).collect()
}

/// The word above; requires gcd(m,n) = 1.
pub fn pmn_word(m: u32, n: u32) -> Result<OperatorWord> {
    if n == 0 || m.gcd(&n) != 1 {
        return Err(Error::NotCoprime(m as i64, n as i64));
    }
    let s = staircase(m, n);
    let mut tokens = vec!["d-".to_string()];
    for i in (1..=n as usize).rev() {
        for _ in 0..s[i - 1] {
            tokens.push("z:1".to_string());
        }
        if i > 1 {
            tokens.push("y:1".to_string());
        }
    }
    tokens.push("d+".to_string());
    tokens.join(" ").parse()
}

/// Operator route: applies the staircase word.
pub fn apply_pmn(eng: &Engine, m: u32, n: u32, v: &KVector) -> Result<KVector> {
    eng.apply_word(&pmn_word(m, n)?, v)
}

/// The normalized one-box generator (1/((q−1)(1−t))) d- z_1^pow d+.
pub fn apply_pk1(eng: &Engine, pow: u32, v: &KVector) -> Result<KVector> {
    let word: OperatorWord = {
        let mut tokens = vec!["d-".to_string()];
        tokens.extend(std::iter::repeat("z:1".to_string()).take(pow as usize));
        tokens.push("d+".to_string());
        tokens.join(" ").parse()?
    };
    let norm = (&(QTFraction::q() - QTFraction::one()) * &(QTFraction::one() - QTFraction::t()))
        .inverse()?;
    Ok(eng.apply_word(&word, v)?.scale(&norm))
}

/// ω(x) = (1−x)(1−qt x)/((1−q x)(1−t x)); ω(1) = 0, poles at x = q^{-1}, t^{-1}.
pub fn omega(x: &QTFraction) -> Result<QTFraction> {
    let one = QTFraction::one();
    let num = &(&one - x) * &(&one - &(x * &QTFraction::monomial(1, 1)));
    let den = &(&one - &(x * &QTFraction::q())) * &(&one - &(x * &QTFraction::t()));
    num.checked_div(&den)
}

/// Tableau route for P_{m,n} H_μ on the unmarked basis (k = 0).
pub fn tableau_pmn(m: u32, n: u32, start: &Partition) -> Result<KVector> {
    if n == 0 || m.gcd(&n) != 1 {
        return Err(Error::NotCoprime(m as i64, n as i64));
    }
    let s = staircase(m, n);
    let sign = if n % 2 == 0 {
        -QTFraction::one()
    } else {
        QTFraction::one()
    };
    let mut out = KVector::zero(start.size() + n, 0, BasisTag::H);

    fn grow(
        current: &Partition,
        prev_w: Option<(i64, i64)>,
        step: usize,
        s: &[i64],
        acc: &QTFraction,
        out: &mut KVector,
    ) {
        if step == s.len() {
            let flag = FlagPoint::new(current.clone(), Vec::new()).expect("unmarked flag");
            out.add_term(flag, acc.clone());
            return;
        }
        for x in current.addable_cells() {
            let bigger = current.add_cell(x).expect("addable corner");
            let (wq, wt) = x.char_exponents();
            let w = QTFraction::monomial(wq, wt);
            let mut factor =
                &pieri_lambda_star(&bigger, current) * &w.pow(s[step]).expect("monomial power");
            if let Some((pq, pt)) = prev_w {
                let den = &w - &QTFraction::monomial(pq + 1, pt + 1);
                assert!(!den.is_zero(), "consecutive boxes on a qt-diagonal");
                factor = &factor * &(&w / &den);
            }
            let acc = acc * &factor;
            grow(&bigger, Some((wq, wt)), step + 1, s, &acc, out);
        }
    }

    grow(start, None, 0, &s, &sign, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vacuum() -> KVector {
        KVector::unit(
            FlagPoint::new(Partition::new(vec![]).unwrap(), vec![]).unwrap(),
            BasisTag::H,
        )
    }

    fn unmarked(parts: &[u32]) -> FlagPoint {
        FlagPoint::new(Partition::new(parts.to_vec()).unwrap(), vec![]).unwrap()
    }

    #[test]
    fn staircase_values() {
        assert_eq!(staircase(1, 1), vec![1]);
        assert_eq!(staircase(2, 3), vec![0, 1, 1]);
        assert_eq!(staircase(3, 2), vec![1, 2]);
        assert_eq!(staircase(5, 3), vec![1, 2, 2]);
        for (m, n) in [(1u32, 2u32), (4, 3), (7, 5)] {
            assert_eq!(staircase(m, n).iter().sum::<i64>(), m as i64);
        }
    }

    #[test]
    fn coprimality_enforced() {
        assert!(pmn_word(2, 4).is_err());
        assert!(pmn_word(3, 3).is_err());
        assert!(tableau_pmn(2, 2, &Partition::new(vec![]).unwrap()).is_err());
        assert_eq!(pmn_word(1, 2).unwrap().to_string(), "d- z:1 y:1 d+");
        assert_eq!(pmn_word(2, 1).unwrap().to_string(), "d- z:1 z:1 d+");
        assert_eq!(pmn_word(2, 3).unwrap().to_string(), "d- z:1 y:1 z:1 y:1 d+");
    }

    #[test]
    fn slope_one_half_calibration() {
        let eng = Engine::new();
        let img = apply_pmn(&eng, 1, 2, &vacuum()).unwrap();
        assert_eq!(img.num_terms(), 2);
        assert_eq!(img.coeff(&unmarked(&[2])), "(-q)/(q - t)".parse().unwrap());
        assert_eq!(
            img.coeff(&unmarked(&[1, 1])),
            "(t)/(q - t)".parse().unwrap()
        );
        let oracle = tableau_pmn(1, 2, &Partition::new(vec![]).unwrap()).unwrap();
        assert!(img.sub(&oracle).unwrap().is_zero());
    }

    #[test]
    fn slope_two_thirds_calibration() {
        // P_{2,3} on the vacuum; the (3) and (1,1,1) coefficients swap under
        // q <-> t and the (2,1) coefficient is symmetric.
        let eng = Engine::new();
        let img = apply_pmn(&eng, 2, 3, &vacuum()).unwrap();
        assert_eq!(img.num_terms(), 3);
        let q = QTFraction::q();
        let t = QTFraction::t();
        let one = QTFraction::one();
        let d1 = &(&q - &t.pow(2).unwrap()) * &(&q - &t); // (q - t^2)(q - t)
        let d3 = &(&q.pow(2).unwrap() - &t) * &(&q - &t); // (q^2 - t)(q - t)
        let d21 = &(&q.pow(2).unwrap() - &t) * &(&q - &t.pow(2).unwrap());
        assert_eq!(img.coeff(&unmarked(&[1, 1, 1])), &t.pow(3).unwrap() / &d1);
        assert_eq!(img.coeff(&unmarked(&[3])), &q.pow(3).unwrap() / &d3);
        let num21 = -&(&(&q * &t) * &(&(&q + &t) + &one));
        assert_eq!(img.coeff(&unmarked(&[2, 1])), &num21 / &d21);
        let oracle = tableau_pmn(2, 3, &Partition::new(vec![]).unwrap()).unwrap();
        assert!(img.sub(&oracle).unwrap().is_zero());
    }

    #[test]
    fn word_matches_tableau() {
        let eng = Engine::new();
        let starts = [vec![], vec![1], vec![2], vec![1, 1]];
        for (m, n) in [(0u32, 1u32), (1, 1), (2, 1), (1, 2), (3, 2), (1, 3), (2, 3)] {
            for parts in &starts {
                let mu = Partition::new(parts.clone()).unwrap();
                let v = KVector::unit(FlagPoint::new(mu.clone(), vec![]).unwrap(), BasisTag::H);
                let word_route = apply_pmn(&eng, m, n, &v).unwrap();
                let oracle = tableau_pmn(m, n, &mu).unwrap();
                assert!(
                    word_route.sub(&oracle).unwrap().is_zero(),
                    "routes disagree for P_{{{m},{n}}} on {mu}"
                );
            }
        }
    }

    #[test]
    fn normalized_one_box_is_pieri() {
        // (q-1)(1-t) d_{λ+x,λ}-weighted growth: the normalized generator's
        // coefficients are the plain Pieri weights divided by (q-1)(1-t).
        let eng = Engine::new();
        let img = apply_pk1(&eng, 0, &vacuum()).unwrap();
        let one = QTFraction::one();
        let expect = (&(QTFraction::q() - one.clone()) * &(one.clone() - QTFraction::t()))
            .inverse()
            .unwrap();
        assert_eq!(img.coeff(&unmarked(&[1])), expect);
    }

    #[test]
    fn omega_values() {
        assert!(omega(&QTFraction::one()).unwrap().is_zero());
        assert!(omega(&QTFraction::monomial(-1, 0)).is_err()); // pole at 1/q
                                                               // ω(q) = (1-q)(1-q^2 t)/((1-q^2)(1-qt)) = (1-q^2 t)/((1+q)(1-qt))
        let got = omega(&QTFraction::q()).unwrap();
        let one = QTFraction::one();
        let num = &one - &QTFraction::monomial(2, 1);
        let den = &(&one + &QTFraction::q()) * &(&one - &QTFraction::monomial(1, 1));
        assert_eq!(got, &num / &den);
    }
}
