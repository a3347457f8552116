use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::scalar::GaussianRational;
use crate::error::Result;

/// Dense univariate polynomial over ℚ(i), coefficients lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<GaussianRational>,
}

impl Polynomial {
    /// Trailing zero coefficients are trimmed; the zero polynomial has no coefficients.
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| c.into()).collect())
    }

    /// `x^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); d + 1];
        coeffs[d] = GaussianRational::one();
        Self { coeffs }
    }

    /// `∏ (x − rᵢ)`.
    pub fn from_roots(roots: &[GaussianRational]) -> Self {
        roots.iter().fold(Self::monomial(0), |acc, r| {
            let mut next = vec![GaussianRational::zero(); acc.coeffs.len() + 1];
            for (k, c) in acc.coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= &(c * r);
            }
            Self::new(next)
        })
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// True iff this is exactly `x^d` for its degree d.
    pub fn is_pure_power_of_x(&self) -> bool {
        match self.coeffs.split_last() {
            Some((lead, rest)) => lead.is_one() && rest.iter().all(Zero::is_zero),
            None => false,
        }
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &acc * x + c)
    }

    /// `p(m)` by Horner's scheme.
    pub fn eval_matrix(&self, m: &Matrix) -> Result<Matrix> {
        let n = m.require_square("polynomial evaluation")?;
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(m)?.checked_add(&Matrix::scalar(n, c.clone()))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Characteristic polynomial `det(xI − a)` by the Faddeev–LeVerrier recurrence.
///
/// With `M₀ = 0`, `c_n = 1`:
/// `M_k = a·M_{k−1} + c_{n−k+1}·I` and `c_{n−k} = −tr(a·M_k) / k`.
/// The only divisions are by the integers 1..=n, which are exact in ℚ(i).
pub fn char_poly(a: &Matrix) -> Result<Polynomial> {
    let n = a.require_square("char_poly")?;
    let mut coeffs = vec![GaussianRational::zero(); n + 1];
    coeffs[n] = GaussianRational::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        m = a
            .checked_mul(&m)?
            .checked_add(&Matrix::scalar(n, coeffs[n - k + 1].clone()))?;
        let t = a.checked_mul(&m)?.trace()?;
        coeffs[n - k] = -(t / GaussianRational::from_int(k as i64));
    }
    Ok(Polynomial::new(coeffs))
}
