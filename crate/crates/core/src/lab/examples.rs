//! Exact reproductions of the two worked examples.
//!
//! Example 3.1 is the non-commuting nilpotent pair `A = E12`, `B = E21` whose
//! V-operator satisfies `S³ = −S` and is therefore not nilpotent. Example 3.2
//! is a parametric commuting 3×3 family for which V is nilpotent although
//! neither A nor B is nilpotent or scalar-plus-nilpotent.

use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::elemop::{
    scalar_shift_witness, thm22_check_operator, thm23_check, ElementaryOperator, ShiftCheckOutcome,
    ShiftWitness, TheoremCheckResult,
};
use crate::error::{Error, Result};
use crate::linalg::{char_poly, is_nilpotent, GaussianRational, Matrix, NilpotencyReport, Polynomial};

pub fn example_3_1_pair() -> (Matrix, Matrix) {
    (
        Matrix::from_ints(&[[0, 1], [0, 0]]),
        Matrix::from_ints(&[[0, 0], [1, 0]]),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisImage {
    pub input: String,
    pub image: Matrix,
    /// `[[x22, 0], [0, −x11]]` for the input X.
    pub expected: Matrix,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example31Record {
    pub a: Matrix,
    pub b: Matrix,
    pub ab: Matrix,
    pub ba: Matrix,
    pub ab_ne_ba: bool,
    pub a_squared_zero: bool,
    pub b_squared_zero: bool,
    pub aba_equals_a: bool,
    pub bab_equals_b: bool,
    pub superoperator: Matrix,
    pub superoperator_cubed: Matrix,
    #[serde(rename = "S_cubed_plus_S_zero")]
    pub s_cubed_plus_s_zero: bool,
    pub basis_images: Vec<BasisImage>,
    pub v_report: NilpotencyReport,
    pub v_not_nilpotent: bool,
    /// The commuting-families check on V's terms: per-index nilpotency holds,
    /// commutativity does not.
    pub commuting_families_check: TheoremCheckResult,
    pub scalar_shift_check: ShiftCheckOutcome,
}

impl Example31Record {
    pub fn failures(&self) -> Vec<&'static str> {
        let facts = [
            (self.ab_ne_ba, "AB != BA"),
            (self.a_squared_zero, "A^2 = 0"),
            (self.b_squared_zero, "B^2 = 0"),
            (self.aba_equals_a, "ABA = A"),
            (self.bab_equals_b, "BAB = B"),
            (self.s_cubed_plus_s_zero, "S^3 = -S"),
            (
                self.basis_images.iter().all(|b| b.matches),
                "V(X) = diag(x22, -x11) on all basis matrices",
            ),
            (self.v_not_nilpotent, "V not nilpotent"),
        ];
        facts
            .into_iter()
            .filter_map(|(ok, what)| (!ok).then_some(what))
            .collect()
    }
}

fn mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.checked_mul(b)
}

pub fn example_3_1() -> Result<Example31Record> {
    let (a, b) = example_3_1_pair();
    let v = ElementaryOperator::v_operator(&a, &b)?;
    let s = v.superoperator();
    let s3 = s.pow(3)?;
    let ab = mul(&a, &b)?;
    let ba = mul(&b, &a)?;

    let mut basis_images = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            let x = Matrix::unit(2, i, j);
            let image = v.apply(&x)?;
            let expected = Matrix::from_rows(vec![
                vec![x.get(1, 1).clone(), GaussianRational::zero()],
                vec![GaussianRational::zero(), -x.get(0, 0)],
            ])?;
            basis_images.push(BasisImage {
                input: format!("E{}{}", i + 1, j + 1),
                matches: image == expected,
                image,
                expected,
            });
        }
    }
    let v_report = v.is_nilpotent()?;

    let record = Example31Record {
        ab_ne_ba: ab != ba,
        a_squared_zero: a.pow(2)?.is_zero(),
        b_squared_zero: b.pow(2)?.is_zero(),
        aba_equals_a: mul(&ab, &a)? == a,
        bab_equals_b: mul(&ba, &b)? == b,
        s_cubed_plus_s_zero: s3.checked_add(&s)?.is_zero(),
        v_not_nilpotent: !v_report.nilpotent,
        commuting_families_check: thm22_check_operator(&v)?,
        scalar_shift_check: thm23_check(&a, &b)?,
        superoperator: s,
        superoperator_cubed: s3,
        basis_images,
        v_report,
        a,
        b,
        ab,
        ba,
    };
    let failures = record.failures();
    if !failures.is_empty() {
        return Err(Error::Integrity(format!(
            "example 3.1 facts failed: {}",
            failures.join("; ")
        )));
    }
    Ok(record)
}

/// Parameters of the 3×3 family
/// `A = [[a, b, 1], [c, d, 1], [0, 0, k]]`, `B = [[a, b, 0], [c, d, 0], [0, 0, k]]`
/// with `a + b = c + d = k ≠ 0` and `b + c ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example32Params {
    pub a: GaussianRational,
    pub b: GaussianRational,
    pub c: GaussianRational,
    pub d: GaussianRational,
    pub k: GaussianRational,
}

impl Default for Example32Params {
    fn default() -> Self {
        Self {
            a: 1.into(),
            b: 2.into(),
            c: 3.into(),
            d: 0.into(),
            k: 3.into(),
        }
    }
}

impl FromStr for Example32Params {
    type Err = Error;

    /// Comma-separated `a,b,c,d,k`, each an exact scalar.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<GaussianRational>>>()?;
        let [a, b, c, d, k]: [GaussianRational; 5] = parts.try_into().map_err(|v: Vec<_>| {
            Error::Parse(format!("expected 5 comma-separated scalars a,b,c,d,k, got {}", v.len()))
        })?;
        Ok(Self { a, b, c, d, k })
    }
}

impl Example32Params {
    pub fn validate(&self) -> Result<()> {
        if &self.a + &self.b != self.k {
            return Err(Error::Precondition(format!(
                "a + b = k fails: {} + {} != {}",
                self.a, self.b, self.k
            )));
        }
        if &self.c + &self.d != self.k {
            return Err(Error::Precondition(format!(
                "c + d = k fails: {} + {} != {}",
                self.c, self.d, self.k
            )));
        }
        if self.k.is_zero() {
            return Err(Error::Precondition("k != 0 fails: k = 0".into()));
        }
        if (&self.b + &self.c).is_zero() {
            return Err(Error::Precondition(format!(
                "b + c != 0 fails: {} + {} = 0",
                self.b, self.c
            )));
        }
        Ok(())
    }

    /// The pair `(A, B)`, after checking the constraints.
    pub fn matrices(&self) -> Result<(Matrix, Matrix)> {
        self.validate()?;
        let (z, o) = (GaussianRational::zero(), GaussianRational::from_int(1));
        let p = self;
        let a = Matrix::from_rows(vec![
            vec![p.a.clone(), p.b.clone(), o.clone()],
            vec![p.c.clone(), p.d.clone(), o],
            vec![z.clone(), z.clone(), p.k.clone()],
        ])?;
        let b = Matrix::from_rows(vec![
            vec![p.a.clone(), p.b.clone(), z.clone()],
            vec![p.c.clone(), p.d.clone(), z.clone()],
            vec![z.clone(), z, p.k.clone()],
        ])?;
        Ok((a, b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example32Record {
    pub params: Example32Params,
    pub a: Matrix,
    pub b: Matrix,
    pub ab: Matrix,
    pub ba: Matrix,
    pub ab_equals_ba: bool,
    pub n: Matrix,
    pub n_report: NilpotencyReport,
    /// `V_{A,B}` and `V_{N,B}` induce the same map.
    pub v_equals_v_nb: bool,
    /// Commuting-families check on the terms of `V_{N,B}`.
    pub commuting_families_check_nb: TheoremCheckResult,
    /// Same check on the terms of `V_{A,B}`: hypotheses fail, conclusion holds.
    pub commuting_families_check_ab: TheoremCheckResult,
    pub v_report: NilpotencyReport,
    pub a_report: NilpotencyReport,
    pub b_report: NilpotencyReport,
    pub a_shift: ShiftWitness,
    pub b_shift: ShiftWitness,
    pub scalar_shift_check: ShiftCheckOutcome,
    pub char_poly_a: Polynomial,
    pub char_poly_b: Polynomial,
}

impl Example32Record {
    pub fn failures(&self) -> Vec<&'static str> {
        let facts = [
            (self.ab_equals_ba, "AB = BA"),
            (self.n_report.nilpotent, "N = A - B nilpotent"),
            (self.v_equals_v_nb, "V_{A,B} = V_{N,B}"),
            (
                self.commuting_families_check_nb.hypotheses_hold,
                "commuting-families hypotheses hold for V_{N,B}",
            ),
            (self.v_report.nilpotent, "V nilpotent"),
            (!self.a_report.nilpotent, "A not nilpotent"),
            (!self.b_report.nilpotent, "B not nilpotent"),
            (!self.a_shift.exists(), "no scalar shift for A"),
            (!self.b_shift.exists(), "no scalar shift for B"),
        ];
        facts
            .into_iter()
            .filter_map(|(ok, what)| (!ok).then_some(what))
            .collect()
    }
}

pub fn example_3_2(params: &Example32Params) -> Result<Example32Record> {
    let (a, b) = params.matrices()?;
    let ab = mul(&a, &b)?;
    let ba = mul(&b, &a)?;
    let n = a.checked_sub(&b)?;
    let v = ElementaryOperator::v_operator(&a, &b)?;
    let v_nb = ElementaryOperator::v_operator(&n, &b)?;

    let record = Example32Record {
        ab_equals_ba: ab == ba,
        n_report: is_nilpotent(&n)?,
        v_equals_v_nb: v.equals(&v_nb)?,
        commuting_families_check_nb: thm22_check_operator(&v_nb)?,
        commuting_families_check_ab: thm22_check_operator(&v)?,
        v_report: v.is_nilpotent()?,
        a_report: is_nilpotent(&a)?,
        b_report: is_nilpotent(&b)?,
        a_shift: scalar_shift_witness(&a)?,
        b_shift: scalar_shift_witness(&b)?,
        scalar_shift_check: thm23_check(&a, &b)?,
        char_poly_a: char_poly(&a)?,
        char_poly_b: char_poly(&b)?,
        params: params.clone(),
        a,
        b,
        ab,
        ba,
        n,
    };
    let failures = record.failures();
    if !failures.is_empty() {
        return Err(Error::Integrity(format!(
            "example 3.2 facts failed: {}",
            failures.join("; ")
        )));
    }
    Ok(record)
}
