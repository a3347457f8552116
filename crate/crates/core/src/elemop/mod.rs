//! Elementary operators and the structural nilpotency criteria.

mod operator;
mod replay;
mod theorems;

pub use operator::{op_algebra, ElementaryOperator, OpAlgebra, Term};
pub use replay::{thm21_proof_replay, BasisStep, ProofTrace};
pub use theorems::{
    eq1_identity_residual, fong_sourour_check, scalar_shift_witness,
    shift_candidate, split_terms_commute, thm21_criterion, thm22_check, thm22_check_operator,
    thm23_check, CommonShiftOutcome, ShiftCheckOutcome, ShiftWitness, Theorem,
    TheoremCheckResult,
};
