use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::poly::char_poly;
use super::scalar::GaussianRational;
use crate::error::{Error, Result};

/// A nonzero entry of `M^(index−1)`, proving the index is not smaller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub value: GaussianRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotencyReport {
    pub nilpotent: bool,
    /// Smallest k with `M^k = 0`.
    pub index: Option<u32>,
    pub witness: Option<Witness>,
}

impl NilpotencyReport {
    pub fn not_nilpotent() -> Self {
        Self {
            nilpotent: false,
            index: None,
            witness: None,
        }
    }
}

/// Decides nilpotency of a square matrix.
///
/// Powers `M, M², …, M^d` are formed with early exit at the first zero power;
/// by Cayley–Hamilton a nilpotent d×d matrix vanishes by `M^d`. The verdict is
/// then checked against `char_poly(M) = x^d`.
pub fn is_nilpotent(m: &Matrix) -> Result<NilpotencyReport> {
    let d = m.require_square("is_nilpotent")?;
    let mut prev = Matrix::identity(d);
    let mut power = m.clone();
    let mut report = NilpotencyReport::not_nilpotent();
    for k in 1..=d as u32 {
        if power.is_zero() {
            report = NilpotencyReport {
                nilpotent: true,
                index: Some(k),
                witness: (k > 1).then(|| {
                    let (row, col, value) = prev
                        .first_nonzero()
                        .expect("power before the first zero power is nonzero");
                    Witness {
                        row,
                        col,
                        value: value.clone(),
                    }
                }),
            };
            break;
        }
        if k < d as u32 {
            let next = power.checked_mul(m)?;
            prev = std::mem::replace(&mut power, next);
        }
    }

    let poly = char_poly(m)?;
    if poly.is_pure_power_of_x() != report.nilpotent {
        return Err(Error::Integrity(format!(
            "power test says nilpotent={} but characteristic polynomial is {poly}",
            report.nilpotent
        )));
    }
    if report.nilpotent && !m.trace()?.is_zero() {
        return Err(Error::Integrity("nilpotent matrix with nonzero trace".into()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jordan_block_index_equals_size() {
        for n in 1..=5 {
            let r = is_nilpotent(&Matrix::jordan_nilpotent(n)).unwrap();
            assert!(r.nilpotent);
            assert_eq!(r.index, Some(n as u32));
        }
    }

    #[test]
    fn zero_matrix_has_index_one_and_no_witness() {
        let r = is_nilpotent(&Matrix::zeros(3, 3)).unwrap();
        assert_eq!(r.index, Some(1));
        assert_eq!(r.witness, None);
    }

    #[test]
    fn family_instance_not_nilpotent() {
        let a = Matrix::from_ints(&[[1, 2, 1], [3, 0, 1], [0, 0, 3]]);
        assert_eq!(is_nilpotent(&a).unwrap(), NilpotencyReport::not_nilpotent());
    }

    #[test]
    fn difference_matrix_witness() {
        let n = Matrix::from_ints(&[[0, 0, 1], [0, 0, 1], [0, 0, 0]]);
        let r = is_nilpotent(&n).unwrap();
        assert_eq!(r.index, Some(2));
        assert_eq!(
            r.witness,
            Some(Witness {
                row: 0,
                col: 2,
                value: 1.into()
            })
        );
    }

    #[test]
    fn trace_zero_but_not_nilpotent() {
        // [[0,1],[1,0]] has trace 0 and eigenvalues ±1.
        let r = is_nilpotent(&Matrix::from_ints(&[[0, 1], [1, 0]])).unwrap();
        assert!(!r.nilpotent);
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(
            is_nilpotent(&Matrix::zeros(1, 2)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn report_json_shape() {
        let r = is_nilpotent(&Matrix::jordan_nilpotent(2)).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"nilpotent":true,"index":2,"witness":{"row":0,"col":1,"value":"1"}}"#
        );
    }
}
