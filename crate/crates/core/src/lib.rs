//! Exact string-topology computations on 3-dimensional lens spaces.

mod arith;
pub mod bialgebra;
pub mod classify;
pub mod cyclic_algebra;
pub mod equivariant;
pub mod error;
pub mod loop_homology;
mod notation;
pub mod torsion;

pub use arith::{gcd, lcm, mod_inv};
pub use bialgebra::{
    ad_apply, bialgebra_check, bialgebra_lhs, bialgebra_rhs, bialgebra_rhs_from, BialgebraVerdict,
    EqClass, EqClassKind,
};
pub use classify::{
    classify_pair, homeomorphic, homeomorphism_representative, homeomorphism_witness,
    homotopy_equivalent, homotopy_witness, search_smallest, PairVerdict, SearchReport, SearchRow,
    SideCounts, SquareWitness, UnitWitness,
};
pub use cyclic_algebra::{
    de_rham, dennis_dlog, invert_unit, poly_mul, substitute_pushforward, CyclicPoly, OneForm,
};
pub use equivariant::{
    alpha_order, cobracket_k_family, cobracket_k_family_with, cobracket_pi_y, count_nonzero,
    count_nonzero_coproduct, k_family_closed_form, project_pi, project_pi_oneform, transfer_alpha,
    transfer_beta, working_modulus, AlphaTensor, AlphaVector, Convention, CountReport, EqTensor,
    EqTensorPair,
};
pub use error::{Error, Result, SingularSystem};
pub use loop_homology::{
    coproduct_rho, default_n_l, homogenize, k_family_coproduct, product_rho_form, wedge_with_dlog,
    BiForm, GroupSignature, HomologyTable, LensPair, RhoClass,
};
pub use notation::Notation;
pub use torsion::{
    correction_from_unit, correction_term, transform_check, LensMap, TorsionExpr, TorsionUnit,
    TransformReport,
};
