//! Polynomial realization of the algebra on V_• = ⊕_k Λ ⊗ Q(q,t)[y_1…y_k],
//! and the bridge to the fixed-point side: images of the triangular word
//! basis, classical Macdonald calibration at k = 0, leading-term rules and
//! equivariance checks.

pub mod macdonald;
pub mod phi;
pub mod symfunc;
pub mod ypoly;

pub use macdonald::{classical_macdonald, e1_pieri_matrix};
pub use phi::{
    check_lt_rules, check_phi_equivariance, leading_index, lt_recursion_steps, phi_witnesses,
    phi_word, phi_word_image, poly_v, vacuum, EquivarianceReport, LtReport, PhiMap, PhiTransport,
    PhiWitness,
};
pub use symfunc::SymFunc;
pub use ypoly::YPoly;
