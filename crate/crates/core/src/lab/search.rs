//! Searches for instances where a nilpotency criterion's conclusion holds
//! although its hypotheses do not.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::examples::{example_3_1_pair, Example32Params};
use super::generate::{Generator, GeneratorConfig, PRNG_DESCRIPTION};
use super::report::{Instance, SweepMode, SweepReport, TrialTally};
use super::sweep::{classify, run_trials};
use crate::elemop::{thm21_criterion, thm22_check_operator, thm23_check, ElementaryOperator};
use crate::error::{Error, Result};
use crate::linalg::{is_nilpotent, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearchTarget {
    /// The multiplication-operator criterion read per term for length-2
    /// operators: each term has a nilpotent coefficient.
    #[serde(rename = "2.1-ext")]
    MultiplicationExtension,
    #[serde(rename = "2.2")]
    CommutingFamilies,
    #[serde(rename = "2.3")]
    ScalarShifts,
}

impl SearchTarget {
    pub fn label(self) -> &'static str {
        match self {
            SearchTarget::MultiplicationExtension => "2.1-ext",
            SearchTarget::CommutingFamilies => "2.2",
            SearchTarget::ScalarShifts => "2.3",
        }
    }
}

impl fmt::Display for SearchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SearchTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2.1-ext" => Ok(SearchTarget::MultiplicationExtension),
            "2.2" => Ok(SearchTarget::CommutingFamilies),
            "2.3" => Ok(SearchTarget::ScalarShifts),
            other => Err(Error::Parse(format!(
                "unknown search target {other:?}; expected 2.1-ext, 2.2 or 2.3"
            ))),
        }
    }
}

/// Terms lacking a nilpotent coefficient, as 1-based labels.
fn terms_without_nilpotent_factor(op: &ElementaryOperator) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (i, t) in op.terms().iter().enumerate() {
        if !is_nilpotent(&t.a)?.nilpotent && !is_nilpotent(&t.b)?.nilpotent {
            out.push(format!(
                "index {}: neither A_{} nor B_{} nilpotent",
                i + 1,
                i + 1,
                i + 1
            ));
        }
    }
    Ok(out)
}

/// Per-term criterion on an operator of any length. For length 1 this is the
/// multiplication-operator equivalence, so a mismatch there is a violation.
fn evaluate_extension(
    tally: &mut TrialTally,
    op: &ElementaryOperator,
    instance: Instance,
) -> Result<()> {
    tally.instances_tested += 1;
    let failures = terms_without_nilpotent_factor(op)?;
    let hypotheses_hold = failures.is_empty();
    let nilpotent = op.is_nilpotent()?.nilpotent;
    if hypotheses_hold {
        tally.hypothesis_instances += 1;
    }
    match (op.len(), hypotheses_hold, nilpotent) {
        (1, h, n) if h != n => tally.violations.push(
            instance.with_note("length-1 operator breaks the multiplication-operator equivalence"),
        ),
        (1, _, _) => {}
        (_, false, true) => tally.converse_failures.push(instance.with_notes(failures)),
        (_, true, false) => tally.relaxation_witnesses.push(
            instance.with_note("every term has a nilpotent coefficient but the operator is not nilpotent"),
        ),
        _ => {}
    }
    Ok(())
}

/// Classifies the V-operator instance `V_{A,B}` for the chosen target.
fn evaluate_v_pair(
    target: SearchTarget,
    tally: &mut TrialTally,
    a: &Matrix,
    b: &Matrix,
    instance: Instance,
) -> Result<()> {
    let v = ElementaryOperator::v_operator(a, b)?;
    let instance = instance.with_matrix("A", a).with_matrix("B", b);
    match target {
        SearchTarget::MultiplicationExtension => evaluate_extension(tally, &v, instance),
        SearchTarget::CommutingFamilies => {
            classify(tally, &thm22_check_operator(&v)?, instance);
            Ok(())
        }
        SearchTarget::ScalarShifts => {
            classify(tally, &thm23_check(a, b)?.result, instance);
            Ok(())
        }
    }
}

/// The two worked pairs, evaluated first in every search.
pub fn seed_pairs() -> Result<Vec<(String, Matrix, Matrix)>> {
    let (a32, b32) = Example32Params::default().matrices()?;
    let (a31, b31) = example_3_1_pair();
    Ok(vec![
        ("seed: example 3.2 (a,b,c,d,k) = (1,2,3,0,3)".into(), a32, b32),
        ("seed: example 3.1".into(), a31, b31),
    ])
}

pub fn search_converse_failures(
    target: SearchTarget,
    config: &GeneratorConfig,
    trials: u64,
) -> Result<SweepReport> {
    let mut seeds = TrialTally::default();
    for (label, a, b) in seed_pairs()? {
        evaluate_v_pair(target, &mut seeds, &a, &b, Instance::new(label, None))?;
    }

    let tallies = run_trials(config, trials, |g, trial| search_trial(target, g, trial))?;
    let mut report = SweepReport::new("search", target.label(), SweepMode::Random);
    report.config = Some(config.clone());
    report.prng = Some(PRNG_DESCRIPTION.into());
    report.trials = Some(trials);
    report.absorb(seeds);
    tallies.into_iter().for_each(|t| report.absorb(t));
    Ok(report)
}

fn random_coefficient(g: &mut Generator) -> Matrix {
    if g.coin() {
        g.gen_nilpotent()
    } else {
        g.matrix()
    }
}

fn search_trial(target: SearchTarget, g: &mut Generator, trial: u64) -> Result<TrialTally> {
    let mut tally = TrialTally::default();
    let n = g.dim();

    if n >= 2 && trial.is_multiple_of(2) {
        // Commuting A = B + N with N nilpotent and B with two eigenvalues.
        let (b, nil) = g.two_eigenvalue_pair()?;
        let a = b.checked_add(&nil)?;
        evaluate_v_pair(
            target,
            &mut tally,
            &a,
            &b,
            Instance::new("structured: A = B + N, N nilpotent, AB = BA", Some(trial))
                .with_matrix("N", &nil),
        )?;
    } else {
        match target {
            SearchTarget::ScalarShifts => {
                let m = g.matrix();
                let a = g.polynomial(n, false).eval_matrix(&m)?;
                let b = g.polynomial(n, false).eval_matrix(&m)?;
                evaluate_v_pair(
                    target,
                    &mut tally,
                    &a,
                    &b,
                    Instance::new("random commuting pair", Some(trial)),
                )?;
            }
            _ => {
                let pairs = (0..2)
                    .map(|_| (random_coefficient(g), random_coefficient(g)))
                    .collect();
                let op = ElementaryOperator::from_pairs(pairs)?;
                let instance = Instance::new("random length-2 operator", Some(trial)).with_operator(&op);
                if target == SearchTarget::MultiplicationExtension {
                    evaluate_extension(&mut tally, &op, instance)?;
                } else {
                    classify(&mut tally, &thm22_check_operator(&op)?, instance);
                }
            }
        }
    }

    if target == SearchTarget::MultiplicationExtension {
        // Length-1 control: the equivalence must never produce a hit here.
        let (a, b) = (random_coefficient(g), random_coefficient(g));
        let op = ElementaryOperator::multiplication(&a, &b)?;
        let instance = Instance::new("random length-1 operator", Some(trial)).with_operator(&op);
        match thm21_criterion(&a, &b) {
            Ok(_) => evaluate_extension(&mut tally, &op, instance)?,
            Err(Error::Integrity(msg)) => {
                tally.instances_tested += 1;
                tally.violations.push(instance.with_note(msg));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(list: &[Instance]) -> Vec<&str> {
        list.iter().map(|i| i.label.as_str()).collect()
    }

    #[test]
    fn parametric_example_is_a_converse_failure_everywhere() {
        for target in [
            SearchTarget::MultiplicationExtension,
            SearchTarget::CommutingFamilies,
            SearchTarget::ScalarShifts,
        ] {
            let r = search_converse_failures(target, &GeneratorConfig::new(3, 1), 2).unwrap();
            assert!(r.passed());
            assert!(
                labels(&r.converse_failures)
                    .iter()
                    .any(|l| l.starts_with("seed: example 3.2")),
                "{target}"
            );
            assert!(!labels(&r.converse_failures)
                .iter()
                .any(|l| l.starts_with("seed: example 3.1")));
        }
    }

    #[test]
    fn noncommuting_example_is_a_relaxation_witness() {
        for target in [SearchTarget::CommutingFamilies, SearchTarget::ScalarShifts] {
            let r = search_converse_failures(target, &GeneratorConfig::new(2, 1), 1).unwrap();
            assert!(labels(&r.relaxation_witnesses).contains(&"seed: example 3.1"));
        }
    }

    #[test]
    fn length_one_never_reported() {
        let r = search_converse_failures(
            SearchTarget::MultiplicationExtension,
            &GeneratorConfig::new(2, 8),
            30,
        )
        .unwrap();
        assert!(r.passed());
        assert!(!labels(&r.converse_failures).contains(&"random length-1 operator"));
    }

    #[test]
    fn target_labels() {
        for s in ["2.1-ext", "2.2", "2.3"] {
            assert_eq!(s.parse::<SearchTarget>().unwrap().label(), s);
        }
        assert!("2.1".parse::<SearchTarget>().is_err());
    }
}
