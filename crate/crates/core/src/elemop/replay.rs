//! Step-by-step replay of the rank-one argument showing that `M_{A,B}^m = 0`
//! with `B^m ≠ 0` forces `A^m = 0`.
//!
//! In finite dimensions the separating functional is a coordinate functional:
//! pick a column `z = e_j` with `B^m z ≠ 0`, then `f = e_iᵀ` with
//! `(B^m z)_i ≠ 0`. For every basis vector x,
//! `0 = A^m (f ⊗ x) B^m z = f(B^m z) · A^m x`, so `A^m x = 0`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::operator::ElementaryOperator;
use crate::error::{Error, Result};
use crate::linalg::{rank_one, GaussianRational, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisStep {
    pub basis_index: usize,
    pub x: Matrix,
    /// `f ⊗ x`.
    pub rank_one: Matrix,
    /// `A^m (f ⊗ x) B^m = 0`.
    pub product_zero: bool,
    /// `A^m x`, recovered as `A^m (f ⊗ x) B^m z / f(B^m z)`.
    pub a_power_x: Matrix,
    pub a_power_x_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    /// Nilpotency index of `M_{A,B}`.
    pub exponent: u32,
    pub z: Matrix,
    pub f: Matrix,
    /// `f(B^m z)`, nonzero by construction.
    pub f_of_bz: GaussianRational,
    pub steps: Vec<BasisStep>,
    /// `A^m = 0`, assembled from the per-basis conclusions.
    pub a_power_zero: bool,
}

pub fn thm21_proof_replay(a: &Matrix, b: &Matrix) -> Result<ProofTrace> {
    let op = ElementaryOperator::multiplication(a, b)?;
    let n = op.dim();
    let report = op.is_nilpotent()?;
    let Some(m) = report.index else {
        return Err(Error::Precondition(
            "M_{A,B} is not nilpotent; nothing to replay".into(),
        ));
    };
    let a_m = a.pow(m)?;
    let b_m = b.pow(m)?;
    if b_m.is_zero() {
        return Err(Error::Precondition(format!(
            "B^{m} = 0: B is nilpotent and the argument is already complete"
        )));
    }

    let col = (0..n)
        .find(|&j| !b_m.column(j).is_zero())
        .expect("nonzero matrix has a nonzero column");
    let z = Matrix::basis_column(n, col);
    let bz = b_m.checked_mul(&z)?;
    let (row, _, _) = bz.first_nonzero().expect("B^m z is a nonzero column");
    let f = Matrix::basis_row(n, row);
    let f_of_bz = f.checked_mul(&bz)?.get(0, 0).clone();
    if f_of_bz.is_zero() {
        return Err(Error::Integrity("coordinate functional vanishes on B^m z".into()));
    }

    let mut steps = Vec::with_capacity(n);
    let mut columns = Vec::with_capacity(n);
    for k in 0..n {
        let x = Matrix::basis_column(n, k);
        let x_op = rank_one(&f, &x)?;
        let product = a_m.checked_mul(&x_op)?.checked_mul(&b_m)?;
        let product_zero = product.is_zero();
        if !product_zero {
            return Err(Error::Integrity(format!(
                "A^{m} (f⊗e_{k}) B^{m} is nonzero although M^{m} = 0"
            )));
        }
        // (f ⊗ x) B^m z = f(B^m z) x, so this is f(B^m z) · A^m x.
        let lhs = product.checked_mul(&z)?;
        let a_power_x = lhs.scale(&f_of_bz.inv()?);
        let direct = a_m.checked_mul(&x)?;
        if a_power_x != direct {
            return Err(Error::Integrity(format!(
                "rank-one identity failed for basis vector e_{k}"
            )));
        }
        let a_power_x_zero = a_power_x.is_zero();
        if !a_power_x_zero {
            return Err(Error::Integrity(format!("A^{m} e_{k} is nonzero")));
        }
        columns.push(a_power_x.clone());
        steps.push(BasisStep {
            basis_index: k,
            x,
            rank_one: x_op,
            product_zero,
            a_power_x,
            a_power_x_zero,
        });
    }

    let a_power_zero = columns.iter().all(Matrix::is_zero);
    if a_power_zero != a_m.is_zero() {
        return Err(Error::Integrity(
            "per-basis conclusions disagree with A^m computed directly".into(),
        ));
    }
    Ok(ProofTrace {
        exponent: m,
        z,
        f,
        f_of_bz,
        steps,
        a_power_zero,
    })
}
