//! Seeded random instance generators.
//!
//! Every generator draws from a ChaCha8 stream keyed by the master seed; trial
//! `t` of a sweep uses stream `t`, so trials are independent of each other and
//! of the order they run in.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_nilpotent, GaussianRational, Matrix, Polynomial};

/// Recorded in reports so a sweep can be replayed elsewhere.
pub const PRNG_DESCRIPTION: &str = "rand_chacha::ChaCha8Rng::seed_from_u64(seed), stream = trial index";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub dim: usize,
    /// Numerators are drawn from `[-bound, bound]`, denominators from `[1, bound]`.
    pub entry_bound: u32,
    pub seed: u64,
    /// Allow nonzero imaginary parts.
    pub gaussian: bool,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            dim: 3,
            entry_bound: 3,
            seed: 0,
            gaussian: false,
        }
    }
}

impl GeneratorConfig {
    pub fn new(dim: usize, seed: u64) -> Self {
        Self {
            dim,
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Precondition("generator dim must be at least 1".into()));
        }
        if self.entry_bound == 0 {
            return Err(Error::Precondition("entry_bound must be at least 1".into()));
        }
        Ok(())
    }
}

pub struct Generator {
    config: GeneratorConfig,
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(config: GeneratorConfig) -> Result<Self> {
        Self::for_trial(config, 0)
    }

    pub fn for_trial(config: GeneratorConfig, trial: u64) -> Result<Self> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(trial);
        Ok(Self { config, rng })
    }

    pub fn config(&self) -> &GeneratorConfig {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.config.dim
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    pub fn index(&mut self, upper: usize) -> usize {
        self.rng.random_range(0..upper)
    }

    pub fn integer(&mut self) -> i64 {
        let b = i64::from(self.config.entry_bound);
        self.rng.random_range(-b..=b)
    }

    fn nonzero_integer(&mut self) -> i64 {
        let b = i64::from(self.config.entry_bound);
        let v = self.rng.random_range(1..=b);
        if self.coin() {
            v
        } else {
            -v
        }
    }

    fn rational_part(&mut self) -> (i64, i64) {
        let b = i64::from(self.config.entry_bound);
        (self.rng.random_range(-b..=b), self.rng.random_range(1..=b))
    }

    pub fn scalar(&mut self) -> GaussianRational {
        let (n, d) = self.rational_part();
        if self.config.gaussian {
            let (m, e) = self.rational_part();
            GaussianRational::from_parts(n, d, m, e)
        } else {
            GaussianRational::ratio(n, d)
        }
    }

    pub fn matrix(&mut self) -> Matrix {
        let n = self.dim();
        let entries = (0..n * n).map(|_| self.scalar()).collect();
        Matrix::new(n, n, entries).expect("n x n entries")
    }

    pub fn strictly_upper(&mut self) -> Matrix {
        let n = self.dim();
        let mut rows = vec![vec![GaussianRational::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for entry in row.iter_mut().skip(i + 1) {
                *entry = self.scalar();
            }
        }
        Matrix::from_rows(rows).expect("square rows")
    }

    /// A random integer matrix of determinant 1 together with its exact inverse,
    /// built as a product of elementary row operations `I + c·E_ij`.
    pub fn unimodular(&mut self) -> (Matrix, Matrix) {
        let n = self.dim();
        let mut s = Matrix::identity(n);
        let mut s_inv = Matrix::identity(n);
        if n < 2 {
            return (s, s_inv);
        }
        for _ in 0..2 * n {
            let i = self.index(n);
            let j = (i + 1 + self.index(n - 1)) % n;
            let c = self.nonzero_integer();
            let unit = Matrix::unit(n, i, j);
            let e = Matrix::identity(n).checked_add(&unit.scale(&c.into())).expect("n x n");
            let e_inv = Matrix::identity(n)
                .checked_sub(&unit.scale(&c.into()))
                .expect("n x n");
            s = s.checked_mul(&e).expect("n x n");
            s_inv = e_inv.checked_mul(&s_inv).expect("n x n");
        }
        (s, s_inv)
    }

    /// `S·U·S⁻¹` with U strictly upper triangular and S unimodular.
    pub fn gen_nilpotent(&mut self) -> Matrix {
        let u = self.strictly_upper();
        let (s, s_inv) = self.unimodular();
        self.conjugate(&u, &s, &s_inv)
    }

    pub(crate) fn conjugate(&self, m: &Matrix, s: &Matrix, s_inv: &Matrix) -> Matrix {
        s.checked_mul(m)
            .and_then(|sm| sm.checked_mul(s_inv))
            .expect("conformable square matrices")
    }

    /// Random polynomial of degree `< degree_bound`.
    pub fn polynomial(&mut self, degree_bound: usize, zero_constant: bool) -> Polynomial {
        let coeffs = (0..degree_bound.max(1))
            .map(|k| {
                if k == 0 && zero_constant {
                    GaussianRational::zero()
                } else {
                    self.scalar()
                }
            })
            .collect();
        Polynomial::new(coeffs)
    }

    /// `p_j(seed)` for random polynomials of degree `< dim`. Where `nilpotent[j]`
    /// is set, `p_j` has zero constant term, which requires a nilpotent seed.
    pub fn gen_commuting_tuple(&mut self, seed: &Matrix, nilpotent: &[bool]) -> Result<Vec<Matrix>> {
        let n = seed.require_square("gen_commuting_tuple")?;
        if n != self.dim() {
            return Err(Error::mismatch(
                "gen_commuting_tuple",
                seed.shape(),
                (self.dim(), self.dim()),
            ));
        }
        if nilpotent.iter().any(|&f| f) && !is_nilpotent(seed)?.nilpotent {
            return Err(Error::Precondition(
                "nilpotent outputs requested but the seed matrix is not nilpotent".into(),
            ));
        }
        nilpotent
            .iter()
            .map(|&zero_constant| self.polynomial(n, zero_constant).eval_matrix(seed))
            .collect()
    }

    /// A commuting pair `(B, N)` with N nilpotent and B having two distinct
    /// eigenvalues, so neither `B` nor `B + N` is scalar-plus-nilpotent.
    ///
    /// Built block-diagonally from polynomials in Jordan blocks and then
    /// conjugated by a unimodular matrix. Needs `dim ≥ 2`.
    pub fn two_eigenvalue_pair(&mut self) -> Result<(Matrix, Matrix)> {
        let n = self.dim();
        if n < 2 {
            return Err(Error::Precondition("two-eigenvalue pair needs dim >= 2".into()));
        }
        let split = 1 + self.index(n - 1);
        let c1 = self.scalar();
        let mut c2 = self.scalar();
        while c2 == c1 {
            c2 = self.scalar();
        }
        let mut b0 = Matrix::zeros(n, n);
        let mut n0 = Matrix::zeros(n, n);
        for (offset, size, c) in [(0, split, c1), (split, n - split, c2)] {
            let j = Matrix::jordan_nilpotent(size);
            let b_block = self
                .polynomial(size, true)
                .eval_matrix(&j)?
                .checked_add(&Matrix::scalar(size, c))?;
            let n_block = self.polynomial(size, true).eval_matrix(&j)?;
            b0 = place_block(&b0, &b_block, offset);
            n0 = place_block(&n0, &n_block, offset);
        }
        if n0.is_zero() {
            // Force a nonzero nilpotent part on a block with room for one.
            if split >= 2 {
                n0 = place_block(&n0, &Matrix::jordan_nilpotent(split), 0);
            } else if n - split >= 2 {
                n0 = place_block(&n0, &Matrix::jordan_nilpotent(n - split), split);
            }
        }
        let (s, s_inv) = self.unimodular();
        Ok((self.conjugate(&b0, &s, &s_inv), self.conjugate(&n0, &s, &s_inv)))
    }
}

fn place_block(target: &Matrix, block: &Matrix, offset: usize) -> Matrix {
    let n = target.rows();
    let mut rows: Vec<Vec<GaussianRational>> = target.row_vecs().map(<[_]>::to_vec).collect();
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            rows[offset + i][offset + j] = block.get(i, j).clone();
        }
    }
    let out = Matrix::from_rows(rows).expect("square rows");
    debug_assert_eq!(out.rows(), n);
    out
}
