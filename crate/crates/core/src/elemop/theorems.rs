//! Executable nilpotency criteria.
//!
//! Each checker evaluates the hypotheses of a structural criterion on concrete
//! matrices and, independently, decides nilpotency of the resulting operator
//! from its superoperator. For the two criteria that are equivalences in
//! finite dimensions (multiplication operators, generalized derivations) a
//! disagreement is reported as [`Error::Integrity`].

use std::fmt;

use serde::{Deserialize, Serialize};

use super::operator::ElementaryOperator;
use crate::error::{Error, Result};
use crate::linalg::{is_nilpotent, GaussianRational, Matrix, NilpotencyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// Generalized derivations: `δ_{S,T}` nilpotent iff `S − λI`, `T − λI` nilpotent.
    #[serde(rename = "1.1")]
    FongSourour,
    /// Multiplication operators: `M_{A,B}` nilpotent iff A or B nilpotent.
    #[serde(rename = "2.1")]
    Multiplication,
    /// Commuting families with a nilpotent factor per index.
    #[serde(rename = "2.2")]
    CommutingFamilies,
    /// `V_{A,B}` with commuting, scalar-plus-nilpotent A and B.
    #[serde(rename = "2.3")]
    ScalarShifts,
}

impl Theorem {
    pub fn label(self) -> &'static str {
        match self {
            Theorem::FongSourour => "1.1",
            Theorem::Multiplication => "2.1",
            Theorem::CommutingFamilies => "2.2",
            Theorem::ScalarShifts => "2.3",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1.1" => Ok(Theorem::FongSourour),
            "2.1" => Ok(Theorem::Multiplication),
            "2.2" => Ok(Theorem::CommutingFamilies),
            "2.3" => Ok(Theorem::ScalarShifts),
            other => Err(Error::Parse(format!(
                "unknown theorem {other:?}; expected 1.1, 2.1, 2.2 or 2.3"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheckResult {
    pub theorem: Theorem,
    pub hypotheses_hold: bool,
    pub hypothesis_failures: Vec<String>,
    /// Always computed from the superoperator, whether or not the hypotheses hold.
    pub conclusion_nilpotent: NilpotencyReport,
    /// `hypotheses_hold ⇒ conclusion`; for equivalences, `hypotheses_hold ⇔ conclusion`.
    pub consistent: bool,
}

impl TheoremCheckResult {
    fn implication(
        theorem: Theorem,
        hypothesis_failures: Vec<String>,
        conclusion: NilpotencyReport,
    ) -> Self {
        let hypotheses_hold = hypothesis_failures.is_empty();
        Self {
            theorem,
            hypotheses_hold,
            consistent: !hypotheses_hold || conclusion.nilpotent,
            hypothesis_failures,
            conclusion_nilpotent: conclusion,
        }
    }

    fn equivalence(
        theorem: Theorem,
        hypothesis_failures: Vec<String>,
        conclusion: NilpotencyReport,
    ) -> Result<Self> {
        let mut result = Self::implication(theorem, hypothesis_failures, conclusion);
        result.consistent = result.hypotheses_hold == result.conclusion_nilpotent.nilpotent;
        if !result.consistent {
            return Err(Error::Integrity(format!(
                "criterion {theorem} is an equivalence but hypotheses_hold={} while operator nilpotent={}",
                result.hypotheses_hold, result.conclusion_nilpotent.nilpotent
            )));
        }
        Ok(result)
    }

    /// Hypotheses fail yet the operator is nilpotent.
    pub fn is_converse_failure(&self) -> bool {
        !self.hypotheses_hold && self.conclusion_nilpotent.nilpotent
    }
}

/// A scalar λ with `A − λI` nilpotent, if one exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftWitness {
    pub lambda: Option<GaussianRational>,
}

impl ShiftWitness {
    /// Checks that `a − λI` is nilpotent before accepting `lambda`.
    pub fn verified(a: &Matrix, lambda: GaussianRational) -> Result<Self> {
        if is_nilpotent(&a.shift(&lambda)?)?.nilpotent {
            Ok(Self {
                lambda: Some(lambda),
            })
        } else {
            Err(Error::Precondition(format!(
                "A - ({lambda})I is not nilpotent"
            )))
        }
    }

    pub fn none() -> Self {
        Self { lambda: None }
    }

    pub fn exists(&self) -> bool {
        self.lambda.is_some()
    }
}

/// The only possible shift is `trace(a)/d`, since a nilpotent matrix has zero trace.
pub fn shift_candidate(a: &Matrix) -> Result<GaussianRational> {
    let d = a.require_square("scalar shift")?;
    Ok(a.trace()? / GaussianRational::from_int(d as i64))
}

pub fn scalar_shift_witness(a: &Matrix) -> Result<ShiftWitness> {
    let lambda = shift_candidate(a)?;
    match ShiftWitness::verified(a, lambda) {
        Ok(w) => Ok(w),
        Err(Error::Precondition(_)) => Ok(ShiftWitness::none()),
        Err(e) => Err(e),
    }
}

fn require_same_square(a: &Matrix, b: &Matrix, op: &'static str) -> Result<usize> {
    let n = a.require_square(op)?;
    b.require_square(op)?;
    if a.shape() != b.shape() {
        return Err(Error::mismatch(op, a.shape(), b.shape()));
    }
    Ok(n)
}

/// `M_{A,B}` is nilpotent iff A or B is nilpotent.
pub fn thm21_criterion(a: &Matrix, b: &Matrix) -> Result<TheoremCheckResult> {
    require_same_square(a, b, "thm21_criterion")?;
    let mut failures = Vec::new();
    if !is_nilpotent(a)?.nilpotent && !is_nilpotent(b)?.nilpotent {
        failures.push("neither A nor B nilpotent".to_string());
    }
    let conclusion = ElementaryOperator::multiplication(a, b)?.is_nilpotent()?;
    TheoremCheckResult::equivalence(Theorem::Multiplication, failures, conclusion)
}

fn pairwise_commuting_failures(tuple: &[Matrix], name: &str) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            if !tuple[i].commutes_with(&tuple[j])? {
                failures.push(format!(
                    "{name}-tuple not pairwise commuting: {name}_{} and {name}_{} do not commute",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    Ok(failures)
}

/// `R_{A,B} = Σ AᵢXBᵢ` is nilpotent when each tuple is pairwise commuting and,
/// for every i, `Aᵢ` or `Bᵢ` is nilpotent.
///
/// Commutation is required only within the A-tuple and within the B-tuple;
/// no `AᵢBⱼ` cross condition is imposed.
pub fn thm22_check(a_tuple: &[Matrix], b_tuple: &[Matrix]) -> Result<TheoremCheckResult> {
    if a_tuple.is_empty() || a_tuple.len() != b_tuple.len() {
        return Err(Error::InvalidShape(format!(
            "tuples must be nonempty and of equal length, got {} and {}",
            a_tuple.len(),
            b_tuple.len()
        )));
    }
    let op = ElementaryOperator::from_pairs(
        a_tuple.iter().cloned().zip(b_tuple.iter().cloned()).collect(),
    )?;

    let mut failures = pairwise_commuting_failures(a_tuple, "A")?;
    failures.extend(pairwise_commuting_failures(b_tuple, "B")?);
    for (i, (a, b)) in a_tuple.iter().zip(b_tuple).enumerate() {
        if !is_nilpotent(a)?.nilpotent && !is_nilpotent(b)?.nilpotent {
            failures.push(format!(
                "index {}: neither A_{} nor B_{} nilpotent",
                i + 1,
                i + 1,
                i + 1
            ));
        }
    }
    Ok(TheoremCheckResult::implication(
        Theorem::CommutingFamilies,
        failures,
        op.is_nilpotent()?,
    ))
}

/// [`thm22_check`] on the term list of an existing operator.
pub fn thm22_check_operator(op: &ElementaryOperator) -> Result<TheoremCheckResult> {
    thm22_check(&op.a_tuple(), &op.b_tuple())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftCheckOutcome {
    #[serde(flatten)]
    pub result: TheoremCheckResult,
    pub lambda: Option<GaussianRational>,
    pub mu: Option<GaussianRational>,
}

/// `V_{A,B}` is nilpotent when `AB = BA` and `A − λI`, `B − μI` are nilpotent
/// for some scalars λ, μ.
pub fn thm23_check(a: &Matrix, b: &Matrix) -> Result<ShiftCheckOutcome> {
    require_same_square(a, b, "thm23_check")?;
    let mut failures = Vec::new();
    if !a.commutes_with(b)? {
        failures.push("A and B do not commute".to_string());
    }
    let lambda = scalar_shift_witness(a)?.lambda;
    if lambda.is_none() {
        failures.push("no scalar lambda with A - lambda*I nilpotent".to_string());
    }
    let mu = scalar_shift_witness(b)?.lambda;
    if mu.is_none() {
        failures.push("no scalar mu with B - mu*I nilpotent".to_string());
    }
    let conclusion = ElementaryOperator::v_operator(a, b)?.is_nilpotent()?;
    Ok(ShiftCheckOutcome {
        result: TheoremCheckResult::implication(Theorem::ScalarShifts, failures, conclusion),
        lambda,
        mu,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommonShiftOutcome {
    #[serde(flatten)]
    pub result: TheoremCheckResult,
    pub lambda: Option<GaussianRational>,
}

/// Finite-dimensional generalized-derivation criterion: `δ_{S,T}` is nilpotent
/// iff there is one λ with both `S − λI` and `T − λI` nilpotent.
pub fn fong_sourour_check(s: &Matrix, t: &Matrix) -> Result<CommonShiftOutcome> {
    require_same_square(s, t, "fong_sourour_check")?;
    let ls = shift_candidate(s)?;
    let lt = shift_candidate(t)?;
    let mut failures = Vec::new();
    let mut lambda = None;
    if ls != lt {
        failures.push(format!(
            "no common lambda: trace(S)/d = {ls} but trace(T)/d = {lt}"
        ));
    } else {
        if !is_nilpotent(&s.shift(&ls)?)?.nilpotent {
            failures.push(format!("S - ({ls})I is not nilpotent"));
        }
        if !is_nilpotent(&t.shift(&lt)?)?.nilpotent {
            failures.push(format!("T - ({lt})I is not nilpotent"));
        }
        if failures.is_empty() {
            lambda = Some(ls);
        }
    }
    let conclusion = ElementaryOperator::generalized_derivation(s, t)?.is_nilpotent()?;
    Ok(CommonShiftOutcome {
        result: TheoremCheckResult::equivalence(Theorem::FongSourour, failures, conclusion)?,
        lambda,
    })
}

/// `V_{A−λI, B−μI} − (V_{A,B} + λ·δ_B − μ·δ_A)`, which is the zero map for every
/// A, B, λ, μ. No commutativity is assumed.
pub fn eq1_identity_residual(
    a: &Matrix,
    b: &Matrix,
    lambda: &GaussianRational,
    mu: &GaussianRational,
) -> Result<ElementaryOperator> {
    require_same_square(a, b, "eq1_identity_residual")?;
    let shifted = ElementaryOperator::v_operator(&a.shift(lambda)?, &b.shift(mu)?)?;
    let rhs = ElementaryOperator::v_operator(a, b)?
        .add(&ElementaryOperator::inner_derivation(b)?.scale(lambda))?
        .sub(&ElementaryOperator::inner_derivation(a)?.scale(mu))?;
    shifted.sub(&rhs)
}

/// Commutation fact used when a term is split off: the superoperators of the
/// first `len − 1` terms and of the last term commute.
pub fn split_terms_commute(op: &ElementaryOperator) -> Result<bool> {
    let terms = op.terms();
    if terms.len() < 2 {
        return Ok(true);
    }
    let (head, last) = terms.split_at(terms.len() - 1);
    let rest = ElementaryOperator::new(op.dim(), head.to_vec())?.superoperator();
    let tail = ElementaryOperator::new(op.dim(), last.to_vec())?.superoperator();
    rest.commutes_with(&tail)
}
