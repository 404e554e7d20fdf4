//! Modified Macdonald symmetric functions, characterized axiomatically:
//!
//!   (1) H_μ[X(1−q)] ∈ span{ s_λ : λ ⊵ μ },
//!   (2) H_μ[X(1−t)] ∈ span{ s_λ : λ ⊵ μ′ },
//!   (3) the coefficient of s_{(n)} in H_μ is 1,
//!
//! solved per μ as an exact linear system over ℚ(q,t).  The solver demands a
//! uniqueness certificate — the constraint matrix must have full column rank
//! — so a wrong axiom set fails loudly instead of returning something.

use crate::arith::QTFraction;
use crate::error::{Error, Result};
use crate::linalg::FracMat;
use crate::poly_rep::symfunc::SymFunc;
use crate::shapes::Partition;

/// p_r ↦ (1 − q^r) p_r, the alphabet scaling X ↦ X(1−q).
fn one_minus_pow(base: &QTFraction, f: &SymFunc) -> SymFunc {
    f.alphabet_scale(|r| &QTFraction::one() - &base.pow(r as i64).expect("positive power"))
}

/// The modified Macdonald function H_μ, in the Schur basis.
pub fn classical_macdonald(mu: &Partition, cap: u32) -> Result<SymFunc> {
    let n = mu.size();
    if n > cap {
        return Err(Error::DegreeBudget { needed: n, cap });
    }
    if n == 0 {
        return Ok(SymFunc::one(cap));
    }
    let basis: Vec<Partition> = Partition::enumerate(n);
    let dim = basis.len();
    let q = QTFraction::q();
    let t = QTFraction::t();
    let mu_conj = mu.conjugate();

    // Column ν: the two scaled images of s_ν, once each.
    let scaled_q: Vec<SymFunc> = basis
        .iter()
        .map(|nu| Ok(one_minus_pow(&q, &SymFunc::schur(nu.clone(), cap)?)))
        .collect::<Result<_>>()?;
    let scaled_t: Vec<SymFunc> = basis
        .iter()
        .map(|nu| Ok(one_minus_pow(&t, &SymFunc::schur(nu.clone(), cap)?)))
        .collect::<Result<_>>()?;

    let mut rows: Vec<Vec<QTFraction>> = Vec::new();
    let mut rhs: Vec<QTFraction> = Vec::new();
    for lam in &basis {
        if !mu.dominance_le(lam) {
            rows.push(scaled_q.iter().map(|f| f.coeff(lam)).collect());
            rhs.push(QTFraction::zero());
        }
        if !mu_conj.dominance_le(lam) {
            rows.push(scaled_t.iter().map(|f| f.coeff(lam)).collect());
            rhs.push(QTFraction::zero());
        }
    }
    let top = Partition::new(vec![n]).expect("single row");
    rows.push(
        basis
            .iter()
            .map(|nu| {
                if *nu == top {
                    QTFraction::one()
                } else {
                    QTFraction::zero()
                }
            })
            .collect(),
    );
    rhs.push(QTFraction::one());

    let mat = FracMat::from_rows(rows);
    if mat.rank() < dim {
        return Err(Error::Singular(format!(
            "triangularity axioms underdetermined for {mu}: rank {} < {dim}",
            mat.rank()
        )));
    }
    let coords = mat
        .solve_general(&rhs)?
        .ok_or_else(|| Error::Singular(format!("triangularity axioms inconsistent for {mu}")))?;

    let mut h = SymFunc::zero(cap);
    for (nu, c) in basis.into_iter().zip(coords) {
        if !c.is_zero() {
            h.add_term(nu, c)?;
        }
    }
    Ok(h)
}

/// Matrix of multiplication by e_1 from span{H_μ : μ ⊢ n} to
/// span{H_ν : ν ⊢ n+1}.  Returns (sources, targets, matrix) with
/// matrix[(i, j)] = coefficient of H_{targets[i]} in e_1 · H_{sources[j]}.
pub fn e1_pieri_matrix(n: u32) -> Result<(Vec<Partition>, Vec<Partition>, FracMat)> {
    let cap = n + 1;
    let sources = Partition::enumerate(n);
    let targets = Partition::enumerate(n + 1);
    let dim = targets.len();

    // Change of basis: Schur coordinates of each target H_ν, as columns.
    let target_schur = Partition::enumerate(n + 1);
    let mut change = FracMat::zeros(dim, dim);
    for (j, nu) in targets.iter().enumerate() {
        let h = classical_macdonald(nu, cap)?;
        for (i, lam) in target_schur.iter().enumerate() {
            change.set(i, j, h.coeff(lam));
        }
    }

    let mut mat = FracMat::zeros(dim, sources.len());
    for (j, mu) in sources.iter().enumerate() {
        let image = classical_macdonald(mu, cap)?.mul_e(1)?;
        let coords: Vec<QTFraction> = target_schur.iter().map(|lam| image.coeff(lam)).collect();
        let x = change.solve(&coords)?;
        for (i, c) in x.into_iter().enumerate() {
            mat.set(i, j, c);
        }
    }
    Ok((sources, targets, mat))
}
