//! Hyperelliptic curves, Frobenius modules on 2-torsion and the
//! Golod–Shafarevich check for towers on products `C x D`.

mod criterion;
mod curve;
mod module;

pub use criterion::{
    golod_shafarevich_check, gs_check_chi_form, hyperelliptic_product_certificate, marked_invariants, r_t_bracket,
    r_t_upper, search_parameters, ConditionFlags, MarkedInvariants, TowerCertificate, SEARCH_BUDGET,
};
pub use curve::{sample_branch_poly, FactorKind, HyperellipticCurve};
pub use module::{
    eigen_multiplicities, eigenvalue_formula, fixed_space_dim, is_semisimple, kunneth_invariants, tensor_invariant_dim,
    two_torsion_frobenius, FrobeniusModule, KunnethInvariants, MAX_MODULE_DIM,
};
