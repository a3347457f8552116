use serde::{Deserialize, Serialize};

use super::generate::GeneratorConfig;
use crate::elemop::ElementaryOperator;
use crate::linalg::{GaussianRational, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedScalar {
    pub name: String,
    pub value: GaussianRational,
}

/// A full dump of one tested instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub label: String,
    /// Trial index; `None` for exhaustive enumeration and seeded instances.
    pub trial: Option<u64>,
    pub operands: Vec<NamedMatrix>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scalars: Vec<NamedScalar>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Instance {
    pub fn new(label: impl Into<String>, trial: Option<u64>) -> Self {
        Self {
            label: label.into(),
            trial,
            operands: Vec::new(),
            scalars: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_matrix(mut self, name: impl Into<String>, matrix: &Matrix) -> Self {
        self.operands.push(NamedMatrix {
            name: name.into(),
            matrix: matrix.clone(),
        });
        self
    }

    pub fn with_operator(mut self, op: &ElementaryOperator) -> Self {
        for (i, t) in op.terms().iter().enumerate() {
            self = self
                .with_matrix(format!("A_{}", i + 1), &t.a)
                .with_matrix(format!("B_{}", i + 1), &t.b);
        }
        self
    }

    pub fn with_scalar(mut self, name: impl Into<String>, value: &GaussianRational) -> Self {
        self.scalars.push(NamedScalar {
            name: name.into(),
            value: value.clone(),
        });
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_notes(mut self, notes: impl IntoIterator<Item = String>) -> Self {
        self.notes.extend(notes);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    /// Every pair of 2×2 matrices with entries drawn from `entries`.
    Exhaustive { dim: usize, entries: Vec<i64> },
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    /// `"sweep"` or `"search"`.
    pub kind: String,
    /// Criterion label: `1.1`, `2.1`, `2.2`, `2.3` or `2.1-ext`.
    pub target: String,
    pub mode: SweepMode,
    pub config: Option<GeneratorConfig>,
    pub prng: Option<String>,
    pub trials: Option<u64>,
    pub instances_tested: u64,
    /// Instances on which the criterion's hypotheses held.
    pub hypothesis_instances: u64,
    /// Side checks run alongside the main instances (identity residuals,
    /// split-term commutation).
    pub auxiliary_checks: u64,
    pub violations: Vec<Instance>,
    pub converse_failures: Vec<Instance>,
    /// Hypotheses failed only through commutativity and the conclusion failed too.
    #[serde(default)]
    pub relaxation_witnesses: Vec<Instance>,
}

impl SweepReport {
    pub(crate) fn new(kind: &str, target: &str, mode: SweepMode) -> Self {
        Self {
            kind: kind.into(),
            target: target.into(),
            mode,
            config: None,
            prng: None,
            trials: None,
            instances_tested: 0,
            hypothesis_instances: 0,
            auxiliary_checks: 0,
            violations: Vec::new(),
            converse_failures: Vec::new(),
            relaxation_witnesses: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn absorb(&mut self, t: TrialTally) {
        self.instances_tested += t.instances_tested;
        self.hypothesis_instances += t.hypothesis_instances;
        self.auxiliary_checks += t.auxiliary_checks;
        self.violations.extend(t.violations);
        self.converse_failures.extend(t.converse_failures);
        self.relaxation_witnesses.extend(t.relaxation_witnesses);
    }
}

/// Per-trial accumulator, merged into a report in trial order.
#[derive(Debug, Default)]
pub(crate) struct TrialTally {
    pub instances_tested: u64,
    pub hypothesis_instances: u64,
    pub auxiliary_checks: u64,
    pub violations: Vec<Instance>,
    pub converse_failures: Vec<Instance>,
    pub relaxation_witnesses: Vec<Instance>,
}
