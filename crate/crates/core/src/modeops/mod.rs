//! Operator algebra over lattice modes and builders for every field operator
//! the workbench needs.

pub mod field;
pub mod identities;
pub mod operator;

pub use field::{
    build_charge, build_f, build_h0, build_h0_eps, build_h0_eps_bare, build_j, build_j_boulware, build_j_one_sided,
    build_j_split, build_rho, renormalization_constant, FieldKernel, FieldMode, ModeTable,
};
pub use operator::{apply, commutator, expectation, op_mul, vev, Ladder, ModeMonomial, ModeOperator, Signature};
