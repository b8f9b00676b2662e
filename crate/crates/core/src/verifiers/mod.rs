//! Executable checks of the horn and auxiliary-matching machinery, the
//! sampling experiment and the stress harness for full rainbow matchings.

mod audit;
mod aux_audit;
mod horns;
mod sampling;
mod stress;

use std::fmt;

use serde::Serialize;

pub use audit::{lemma_audit, LemmaAudit, AUDIT_NODE_LIMIT};
pub use aux_audit::{compute_n_alpha, validate_aux, AuxClause, AuxReport, AuxViolation, AUDIT_MIN_T};
pub use horns::{check_horn_counting, check_observation_horn, horn_census, HornCensus, HornCertificate, HornKind};
pub use sampling::{
    chernoff_bound, sampling_experiment, sampling_experiment_with, sampling_probability, ColourSample,
    SamplingReport, SAMPLING_NODES,
};
pub use stress::{replay_case, stress_conjecture, Certificate, StressCase, StressConfig, StressReport};

/// Outcome of a "hypothesis implies conclusion" check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// The hypothesis does not hold.
    Vacuous,
    Pass { witness: String },
    /// Hypothesis holds, conclusion fails: an implementation bug.
    Violation { detail: String },
}

impl Verdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, Verdict::Violation { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Vacuous => f.write_str("vacuous"),
            Verdict::Pass { witness } => write!(f, "pass ({witness})"),
            Verdict::Violation { detail } => write!(f, "VIOLATION: {detail}"),
        }
    }
}
