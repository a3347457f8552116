//! Theorem sweeps: generate instances satisfying a criterion's hypotheses,
//! check the conclusion, and harvest converse failures from hypothesis-free
//! companions.

use rayon::prelude::*;

use super::generate::{Generator, GeneratorConfig, PRNG_DESCRIPTION};
use super::report::{Instance, SweepMode, SweepReport, TrialTally};
use crate::elemop::{
    eq1_identity_residual, fong_sourour_check, split_terms_commute, thm21_criterion, thm22_check,
    thm23_check, ElementaryOperator, Theorem, TheoremCheckResult,
};
use crate::error::{Error, Result};
use crate::linalg::{GaussianRational, Matrix};

pub const SMALL_ENTRIES: [i64; 3] = [-1, 0, 1];

/// All 81 matrices of size 2 with entries in {−1, 0, 1}, in lexicographic order.
pub fn small_matrices() -> Vec<Matrix> {
    let mut out = Vec::with_capacity(81);
    for a in SMALL_ENTRIES {
        for b in SMALL_ENTRIES {
            for c in SMALL_ENTRIES {
                for d in SMALL_ENTRIES {
                    out.push(Matrix::from_ints(&[[a, b], [c, d]]));
                }
            }
        }
    }
    out
}

/// Runs an equivalence checker, turning an integrity failure into a recorded violation.
fn record_equivalence<T>(
    tally: &mut TrialTally,
    outcome: Result<T>,
    hypotheses_hold: impl Fn(&T) -> bool,
    instance: impl FnOnce() -> Instance,
) -> Result<()> {
    tally.instances_tested += 1;
    match outcome {
        Ok(r) => {
            if hypotheses_hold(&r) {
                tally.hypothesis_instances += 1;
            }
            Ok(())
        }
        Err(Error::Integrity(msg)) => {
            tally.violations.push(instance().with_note(msg));
            Ok(())
        }
        Err(e) => Err(e),
    }
}

fn exhaustive_pairs(
    target: Theorem,
    check: impl Fn(&Matrix, &Matrix) -> Result<bool> + Sync,
) -> Result<SweepReport> {
    let matrices = small_matrices();
    let tallies = matrices
        .par_iter()
        .map(|a| {
            let mut tally = TrialTally::default();
            for b in &matrices {
                let names = match target {
                    Theorem::FongSourour => ("S", "T"),
                    _ => ("A", "B"),
                };
                record_equivalence(&mut tally, check(a, b), |&h| h, || {
                    Instance::new(format!("exhaustive {target}"), None)
                        .with_matrix(names.0, a)
                        .with_matrix(names.1, b)
                })?;
            }
            Ok(tally)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = SweepReport::new(
        "sweep",
        target.label(),
        SweepMode::Exhaustive {
            dim: 2,
            entries: SMALL_ENTRIES.to_vec(),
        },
    );
    tallies.into_iter().for_each(|t| report.absorb(t));
    Ok(report)
}

/// Multiplication-operator equivalence on all 6561 ordered pairs of 2×2
/// matrices with entries in {−1, 0, 1}.
pub fn sweep_thm21_exhaustive() -> Result<SweepReport> {
    exhaustive_pairs(Theorem::Multiplication, |a, b| {
        thm21_criterion(a, b).map(|r| r.hypotheses_hold)
    })
}

/// Generalized-derivation equivalence on the same 6561 pairs.
pub fn sweep_fong_sourour_exhaustive() -> Result<SweepReport> {
    exhaustive_pairs(Theorem::FongSourour, |s, t| {
        fong_sourour_check(s, t).map(|r| r.result.hypotheses_hold)
    })
}

pub(crate) fn run_trials(
    config: &GeneratorConfig,
    trials: u64,
    trial_fn: impl Fn(&mut Generator, u64) -> Result<TrialTally> + Sync,
) -> Result<Vec<TrialTally>> {
    config.validate()?;
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut g = Generator::for_trial(config.clone(), t)?;
            trial_fn(&mut g, t)
        })
        .collect()
}

/// Randomized sweep of one criterion. Tallies are merged in trial order, so the
/// report does not depend on scheduling.
pub fn sweep_thm(theorem: Theorem, config: &GeneratorConfig, trials: u64) -> Result<SweepReport> {
    let tallies = match theorem {
        Theorem::Multiplication => run_trials(config, trials, thm21_trial)?,
        Theorem::CommutingFamilies => run_trials(config, trials, thm22_trial)?,
        Theorem::ScalarShifts => run_trials(config, trials, thm23_trial)?,
        Theorem::FongSourour => run_trials(config, trials, fong_sourour_trial)?,
    };
    let mut report = SweepReport::new("sweep", theorem.label(), SweepMode::Random);
    report.config = Some(config.clone());
    report.prng = Some(PRNG_DESCRIPTION.into());
    report.trials = Some(trials);
    tallies.into_iter().for_each(|t| report.absorb(t));
    Ok(report)
}

fn maybe_nilpotent(g: &mut Generator) -> Matrix {
    if g.coin() {
        g.gen_nilpotent()
    } else {
        g.matrix()
    }
}

fn thm21_trial(g: &mut Generator, trial: u64) -> Result<TrialTally> {
    let mut tally = TrialTally::default();
    let a = maybe_nilpotent(g);
    let b = maybe_nilpotent(g);
    record_equivalence(&mut tally, thm21_criterion(&a, &b), |r| r.hypotheses_hold, || {
        Instance::new("2.1 random pair", Some(trial))
            .with_matrix("A", &a)
            .with_matrix("B", &b)
    })?;
    Ok(tally)
}

/// Hypotheses failed, and only through commutativity.
pub(crate) fn only_commutation_failures(r: &TheoremCheckResult) -> bool {
    !r.hypothesis_failures.is_empty()
        && r.hypothesis_failures
            .iter()
            .all(|f| f.contains("commut"))
}

/// Files a hypothesis-free instance: converse failure, relaxation witness, or
/// (for a hypothesis-satisfying instance with a non-nilpotent operator) a violation.
pub(crate) fn classify(tally: &mut TrialTally, r: &TheoremCheckResult, instance: Instance) {
    tally.instances_tested += 1;
    if r.hypotheses_hold {
        tally.hypothesis_instances += 1;
        if !r.conclusion_nilpotent.nilpotent {
            tally
                .violations
                .push(instance.with_note("hypotheses hold but operator is not nilpotent"));
        }
    } else if r.conclusion_nilpotent.nilpotent {
        tally
            .converse_failures
            .push(instance.with_notes(r.hypothesis_failures.clone()));
    } else if only_commutation_failures(r) {
        tally
            .relaxation_witnesses
            .push(instance.with_notes(r.hypothesis_failures.clone()));
    }
}

fn thm22_trial(g: &mut Generator, trial: u64) -> Result<TrialTally> {
    let mut tally = TrialTally::default();
    let len = 1 + g.index(3);
    let seed_a = g.gen_nilpotent();
    let seed_b = g.gen_nilpotent();
    let a_flags: Vec<bool> = (0..len).map(|_| g.coin()).collect();
    let b_flags: Vec<bool> = a_flags.iter().map(|&fa| !fa || g.coin()).collect();
    let a = g.gen_commuting_tuple(&seed_a, &a_flags)?;
    let b = g.gen_commuting_tuple(&seed_b, &b_flags)?;
    let op = ElementaryOperator::from_pairs(a.iter().cloned().zip(b.iter().cloned()).collect())?;
    let instance = || {
        Instance::new("2.2 commuting families", Some(trial))
            .with_operator(&op)
            .with_note(format!("A nilpotent flags {a_flags:?}, B nilpotent flags {b_flags:?}"))
    };

    let r = thm22_check(&a, &b)?;
    tally.instances_tested += 1;
    if !r.hypotheses_hold {
        tally.violations.push(
            instance()
                .with_note("generated instance does not satisfy the hypotheses")
                .with_notes(r.hypothesis_failures.clone()),
        );
    } else {
        tally.hypothesis_instances += 1;
        if !r.conclusion_nilpotent.nilpotent {
            tally
                .violations
                .push(instance().with_note("hypotheses hold but R is not nilpotent"));
        }
    }
    tally.auxiliary_checks += 1;
    if !split_terms_commute(&op)? {
        tally.violations.push(
            instance().with_note("superoperators of R' and the last term do not commute"),
        );
    }

    // Hypothesis-free companion.
    let companion = if g.dim() >= 2 && g.coin() {
        let (bm, n) = g.two_eigenvalue_pair()?;
        let am = bm.checked_add(&n)?;
        ElementaryOperator::v_operator(&am, &bm)?
    } else {
        let pairs = (0..2)
            .map(|_| (maybe_nilpotent(g), maybe_nilpotent(g)))
            .collect();
        ElementaryOperator::from_pairs(pairs)?
    };
    let r = thm22_check(&companion.a_tuple(), &companion.b_tuple())?;
    classify(
        &mut tally,
        &r,
        Instance::new("2.2 hypothesis-free companion", Some(trial)).with_operator(&companion),
    );
    Ok(tally)
}

fn thm23_trial(g: &mut Generator, trial: u64) -> Result<TrialTally> {
    let mut tally = TrialTally::default();
    let seed = g.gen_nilpotent();
    let nilpotents = g.gen_commuting_tuple(&seed, &[true, true])?;
    let lambda = g.scalar();
    let mu = g.scalar();
    let n = g.dim();
    let a = nilpotents[0].checked_add(&Matrix::scalar(n, lambda.clone()))?;
    let b = nilpotents[1].checked_add(&Matrix::scalar(n, mu.clone()))?;
    let instance = |label: &str| {
        Instance::new(label, Some(trial))
            .with_matrix("A", &a)
            .with_matrix("B", &b)
            .with_scalar("lambda", &lambda)
            .with_scalar("mu", &mu)
    };

    let out = thm23_check(&a, &b)?;
    tally.instances_tested += 1;
    if !out.result.hypotheses_hold {
        tally.violations.push(
            instance("2.3 scalar-plus-nilpotent pair")
                .with_note("generated instance does not satisfy the hypotheses")
                .with_notes(out.result.hypothesis_failures.clone()),
        );
    } else {
        tally.hypothesis_instances += 1;
        if out.lambda.as_ref() != Some(&lambda) || out.mu.as_ref() != Some(&mu) {
            tally.violations.push(
                instance("2.3 scalar-plus-nilpotent pair")
                    .with_note("recovered shifts differ from the generating scalars"),
            );
        }
        if !out.result.conclusion_nilpotent.nilpotent {
            tally.violations.push(
                instance("2.3 scalar-plus-nilpotent pair")
                    .with_note("hypotheses hold but V is not nilpotent"),
            );
        }
    }

    // Shift identity on an unrelated, generally non-commuting tuple.
    let (ra, rb, rl, rm) = (g.matrix(), g.matrix(), g.scalar(), g.scalar());
    tally.auxiliary_checks += 1;
    if !eq1_identity_residual(&ra, &rb, &rl, &rm)?.is_zero_map() {
        tally.violations.push(
            Instance::new("shift identity residual", Some(trial))
                .with_matrix("A", &ra)
                .with_matrix("B", &rb)
                .with_scalar("lambda", &rl)
                .with_scalar("mu", &rm)
                .with_note("residual operator is not zero"),
        );
    }

    // Hypothesis-free companion: a commuting pair that is generally not
    // scalar-plus-nilpotent.
    let (ca, cb) = if n >= 2 && trial.is_multiple_of(2) {
        let (bm, nm) = g.two_eigenvalue_pair()?;
        (bm.checked_add(&nm)?, bm)
    } else {
        let m = g.matrix();
        (
            g.polynomial(n, false).eval_matrix(&m)?,
            g.polynomial(n, false).eval_matrix(&m)?,
        )
    };
    let out = thm23_check(&ca, &cb)?;
    classify(
        &mut tally,
        &out.result,
        Instance::new("2.3 hypothesis-free companion", Some(trial))
            .with_matrix("A", &ca)
            .with_matrix("B", &cb),
    );
    Ok(tally)
}

fn fong_sourour_trial(g: &mut Generator, trial: u64) -> Result<TrialTally> {
    let mut tally = TrialTally::default();
    let n = g.dim();
    let shifted = |g: &mut Generator, c: &GaussianRational| {
        g.gen_nilpotent().checked_add(&Matrix::scalar(n, c.clone()))
    };
    let (label, s, t) = match trial % 4 {
        0 => {
            let l = g.scalar();
            ("common shift", shifted(g, &l)?, shifted(g, &l)?)
        }
        1 => {
            let l = g.scalar();
            let mut m = g.scalar();
            while m == l {
                m = g.scalar();
            }
            ("distinct shifts", shifted(g, &l)?, shifted(g, &m)?)
        }
        2 => ("random pair", g.matrix(), g.matrix()),
        _ => {
            let s = g.matrix();
            ("inner derivation", s.clone(), s)
        }
    };
    record_equivalence(
        &mut tally,
        fong_sourour_check(&s, &t),
        |r| r.result.hypotheses_hold,
        || {
            Instance::new(format!("1.1 {label}"), Some(trial))
                .with_matrix("S", &s)
                .with_matrix("T", &t)
        },
    )?;
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrix_enumeration() {
        let all = small_matrices();
        assert_eq!(all.len(), 81);
        assert_eq!(all[0], Matrix::from_ints(&[[-1, -1], [-1, -1]]));
        assert!(all.contains(&Matrix::jordan_nilpotent(2)));
        assert!(all.contains(&Matrix::identity(2)));
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(sweep_thm(Theorem::Multiplication, &GeneratorConfig::new(2, 0), 0).is_err());
    }

    #[test]
    fn small_random_sweeps_pass() {
        for theorem in [
            Theorem::Multiplication,
            Theorem::CommutingFamilies,
            Theorem::ScalarShifts,
            Theorem::FongSourour,
        ] {
            let r = sweep_thm(theorem, &GeneratorConfig::new(2, 17), 12).unwrap();
            assert!(r.passed(), "{theorem}: {:?}", r.violations);
            assert!(r.instances_tested >= 12);
        }
    }

    #[test]
    fn dimension_one_sweeps() {
        let r = sweep_thm(Theorem::CommutingFamilies, &GeneratorConfig::new(1, 3), 6).unwrap();
        assert!(r.passed());
        let r = sweep_thm(Theorem::ScalarShifts, &GeneratorConfig::new(1, 3), 6).unwrap();
        assert!(r.passed());
    }
}
