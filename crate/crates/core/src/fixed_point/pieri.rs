//! One-box restriction coefficients d_{λμ} (μ = λ minus a corner x).
//!
//! Product form over the row and column of x, stats taken in μ upstairs and
//! λ downstairs:
//!     d_{λμ} = ∏_{y in row(x)} (q^{a_μ(y)} − t^{l_μ(y)+1})/(q^{a_λ(y)} − t^{l_λ(y)+1})
//!            · ∏_{y in col(x)} (q^{a_μ(y)+1} − t^{l_μ(y)})/(q^{a_λ(y)+1} − t^{l_λ(y)}).
//!
//! Independent closed form:  d_{λμ} = x^{-1}·Λ*(−x^{-1} + (q−1)(t−1)·B_μ·x^{-1} + 1);
//! the unit monomial always cancels inside the argument when x is addable to
//! μ, so Λ* is defined.  Both routes are exposed so they can be compared.

use crate::arith::{Character, QTFraction, QTPoly};
use crate::shapes::{Cell, Partition};

/// The corner by which `lambda` exceeds `mu`; panics unless it is one box.
pub(crate) fn single_box(lambda: &Partition, mu: &Partition) -> Cell {
    assert_eq!(
        lambda.size(),
        mu.size() + 1,
        "{lambda} / {mu} is not one box"
    );
    for r in 0..lambda.len() {
        if lambda.part(r) != mu.part(r) {
            assert_eq!(
                lambda.part(r),
                mu.part(r) + 1,
                "{lambda} / {mu} is not one box"
            );
            assert!(
                (r + 1..lambda.len()).all(|i| lambda.part(i) == mu.part(i)),
                "{lambda} / {mu} is not one box"
            );
            return Cell::new(r, mu.part(r) as usize);
        }
    }
    unreachable!("shapes are equal")
}

/// Product-form d_{λμ}.  `fault_arm` shifts one arm exponent by one (used to
/// exercise mutation detection; never set on real computations).
pub(crate) fn pieri_product(lambda: &Partition, mu: &Partition, fault_arm: bool) -> QTFraction {
    let x = single_box(lambda, mu);
    let mut num = QTPoly::one();
    let mut den = QTPoly::one();
    let mut fault_left = fault_arm;
    for c in 0..x.col {
        let y = Cell::new(x.row, c);
        let (mut am, lm) = (mu.arm(y), mu.leg(y));
        if fault_left {
            am += 1;
            fault_left = false;
        }
        num = &num * &QTPoly::from_int_terms([(am, 0, 1), (0, lm + 1, -1)]);
        den = &den * &QTPoly::from_int_terms([(lambda.arm(y), 0, 1), (0, lambda.leg(y) + 1, -1)]);
    }
    for r in 0..x.row {
        let y = Cell::new(r, x.col);
        let (mut am, lm) = (mu.arm(y), mu.leg(y));
        if fault_left {
            am += 1;
            fault_left = false;
        }
        num = &num * &QTPoly::from_int_terms([(am + 1, 0, 1), (0, lm, -1)]);
        den = &den * &QTPoly::from_int_terms([(lambda.arm(y) + 1, 0, 1), (0, lambda.leg(y), -1)]);
    }
    QTFraction::new(num, den).expect("pieri denominators are nonzero")
}

/// d_{λμ} for λ = μ + one box.
pub fn pieri(lambda: &Partition, mu: &Partition) -> QTFraction {
    pieri_product(lambda, mu, false)
}

/// The Λ*-route for the same coefficient.
pub fn pieri_lambda_star(lambda: &Partition, mu: &Partition) -> QTFraction {
    let x = single_box(lambda, mu);
    let (cx, rx) = x.char_exponents();
    let mut ch = Character::zero();
    ch.add_term(-cx, -rx, -1);
    ch.add_term(0, 0, 1);
    // (q−1)(t−1)·B_μ·x^{-1}
    for y in mu.cells() {
        let (cy, ry) = y.char_exponents();
        for (mq, mt, s) in [(1, 1, 1), (1, 0, -1), (0, 1, -1), (0, 0, 1)] {
            ch.add_term(cy - cx + mq, ry - rx + mt, s);
        }
    }
    let prod = ch
        .lambda_star()
        .expect("unit monomial cancels for an addable box");
    QTFraction::monomial(-cx, -rx) * prod
}

/// Σ_x d_{μ+x,μ}·χ(x)^{i+1} over addable boxes, in closed form:
/// (−1)^i e_i[−1 + (q−1)(t−1)·B_μ].
pub fn pieri_moment_closed(mu: &Partition, i: usize) -> QTFraction {
    let mut ch = Character::zero();
    ch.add_term(0, 0, -1);
    for y in mu.cells() {
        let (cy, ry) = y.char_exponents();
        for (mq, mt, s) in [(1, 1, 1), (1, 0, -1), (0, 1, -1), (0, 0, 1)] {
            ch.add_term(cy + mq, ry + mt, s);
        }
    }
    let e = ch.elementary(i);
    let val = QTFraction::from_poly(e[i].clone());
    if i % 2 == 1 {
        -val
    } else {
        val
    }
}
