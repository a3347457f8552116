use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_nilpotent, GaussianRational, Matrix, NilpotencyReport};

/// One coefficient pair `(A, B)` contributing `A·X·B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub a: Matrix,
    pub b: Matrix,
}

impl Term {
    pub fn new(a: Matrix, b: Matrix) -> Self {
        Self { a, b }
    }
}

/// The elementary operator `X ↦ Σᵢ Aᵢ·X·Bᵢ` on n×n matrices.
///
/// The term list is one of many representations of the same linear map;
/// [`ElementaryOperator::equals`] compares the maps, derived `PartialEq`
/// compares term lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementaryOperator {
    dim: usize,
    terms: Vec<Term>,
}

impl ElementaryOperator {
    pub fn new(dim: usize, terms: Vec<Term>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidShape("operator dimension must be positive".into()));
        }
        if terms.is_empty() {
            return Err(Error::InvalidShape("operator needs at least one term".into()));
        }
        for (i, t) in terms.iter().enumerate() {
            for (side, m) in [("A", &t.a), ("B", &t.b)] {
                if m.shape() != (dim, dim) {
                    return Err(Error::InvalidShape(format!(
                        "term {i}: {side} is {}x{}, expected {dim}x{dim}",
                        m.rows(),
                        m.cols()
                    )));
                }
            }
        }
        Ok(Self { dim, terms })
    }

    /// Builds from `(Aᵢ, Bᵢ)` pairs; the dimension is taken from the first term.
    pub fn from_pairs(pairs: Vec<(Matrix, Matrix)>) -> Result<Self> {
        let first = pairs
            .first()
            .ok_or_else(|| Error::InvalidShape("operator needs at least one term".into()))?;
        let dim = first.0.require_square("elementary operator")?;
        Self::new(
            dim,
            pairs.into_iter().map(|(a, b)| Term::new(a, b)).collect(),
        )
    }

    pub fn identity(dim: usize) -> Self {
        let i = Matrix::identity(dim);
        Self {
            dim,
            terms: vec![Term::new(i.clone(), i)],
        }
    }

    /// `M_{A,B}(X) = A·X·B`.
    pub fn multiplication(a: &Matrix, b: &Matrix) -> Result<Self> {
        square_pair(a, b, "multiplication operator")?;
        Self::from_pairs(vec![(a.clone(), b.clone())])
    }

    /// `δ_A(X) = A·X − X·A`.
    pub fn inner_derivation(a: &Matrix) -> Result<Self> {
        Self::generalized_derivation(a, a)
    }

    /// `δ_{A,B}(X) = A·X − X·B`, as terms `[(A, I), (−I, B)]`.
    pub fn generalized_derivation(a: &Matrix, b: &Matrix) -> Result<Self> {
        let n = square_pair(a, b, "generalized derivation")?;
        let i = Matrix::identity(n);
        Self::from_pairs(vec![(a.clone(), i.clone()), (-&i, b.clone())])
    }

    /// `V_{A,B}(X) = A·X·B − B·X·A`, as terms `[(A, B), (−B, A)]`.
    pub fn v_operator(a: &Matrix, b: &Matrix) -> Result<Self> {
        square_pair(a, b, "V operator")?;
        Self::from_pairs(vec![(a.clone(), b.clone()), (-b, a.clone())])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn a_tuple(&self) -> Vec<Matrix> {
        self.terms.iter().map(|t| t.a.clone()).collect()
    }

    pub fn b_tuple(&self) -> Vec<Matrix> {
        self.terms.iter().map(|t| t.b.clone()).collect()
    }

    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        if x.shape() != (self.dim, self.dim) {
            return Err(Error::mismatch("apply", (self.dim, self.dim), x.shape()));
        }
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for t in &self.terms {
            acc = acc.checked_add(&t.a.checked_mul(x)?.checked_mul(&t.b)?)?;
        }
        Ok(acc)
    }

    /// The n²×n² matrix `Σᵢ Bᵢᵀ ⊗ Aᵢ`, acting on column-stacked `vec(X)`.
    pub fn superoperator(&self) -> Matrix {
        let n2 = self.dim * self.dim;
        self.terms.iter().fold(Matrix::zeros(n2, n2), |acc, t| {
            acc.checked_add(&t.b.transpose().kron(&t.a))
                .expect("terms share the operator dimension")
        })
    }

    fn same_dim(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::mismatch(
                op,
                (self.dim, self.dim),
                (other.dim, other.dim),
            ))
        }
    }

    /// Pointwise sum; term lists are concatenated.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other, "operator add")?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self {
            dim: self.dim,
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-GaussianRational::one()))
    }

    /// `self ∘ other`: terms `(Aᵢ·Cⱼ, Dⱼ·Bᵢ)` in lexicographic `(i, j)` order.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.same_dim(other, "operator compose")?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for outer in &self.terms {
            for inner in &other.terms {
                terms.push(Term::new(
                    outer.a.checked_mul(&inner.a)?,
                    inner.b.checked_mul(&outer.b)?,
                ));
            }
        }
        Ok(Self {
            dim: self.dim,
            terms,
        })
    }

    /// Scalar multiple; the scalar is absorbed into each left coefficient.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.a.scale(c), t.b.clone()))
                .collect(),
        }
    }

    /// k-fold composition; `power(0)` is the identity map.
    pub fn power(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.dim), |acc, _| {
            acc.compose(self).expect("same dimension")
        })
    }

    /// Extensional equality: equal superoperators.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.same_dim(other, "operator equality")?;
        Ok(self.superoperator() == other.superoperator())
    }

    pub fn is_zero_map(&self) -> bool {
        self.superoperator().is_zero()
    }

    /// Nilpotency of the induced map, decided on the superoperator.
    pub fn is_nilpotent(&self) -> Result<NilpotencyReport> {
        is_nilpotent(&self.superoperator())
    }
}

/// Operator-algebra operation selector, for callers that dispatch on a kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpAlgebra {
    Add,
    Compose,
    Scale(GaussianRational),
    Power(u32),
}

/// Applies `kind`; `rhs` is required for `Add` and `Compose` and ignored otherwise.
pub fn op_algebra(
    lhs: &ElementaryOperator,
    rhs: Option<&ElementaryOperator>,
    kind: &OpAlgebra,
) -> Result<ElementaryOperator> {
    let need_rhs = || {
        rhs.ok_or_else(|| Error::Precondition("binary operator algebra needs two operands".into()))
    };
    match kind {
        OpAlgebra::Add => lhs.add(need_rhs()?),
        OpAlgebra::Compose => lhs.compose(need_rhs()?),
        OpAlgebra::Scale(c) => Ok(lhs.scale(c)),
        OpAlgebra::Power(k) => Ok(lhs.power(*k)),
    }
}

fn square_pair(a: &Matrix, b: &Matrix, op: &'static str) -> Result<usize> {
    let n = a.require_square(op)?;
    b.require_square(op)?;
    if a.shape() != b.shape() {
        return Err(Error::mismatch(op, a.shape(), b.shape()));
    }
    Ok(n)
}

impl<'de> Deserialize<'de> for ElementaryOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            dim: usize,
            terms: Vec<Term>,
        }
        let repr = Repr::deserialize(deserializer)?;
        ElementaryOperator::new(repr.dim, repr.terms).map_err(D::Error::custom)
    }
}
