use std::fmt;

use thiserror::Error;

use super::{normalize, Step, Trace};
use crate::syntax::{alpha_equal, Context, Formula, NameSet, Proof};
use crate::typing::{Checker, Mode, TypingError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The contractum no longer type-checks.
    IllTyped(TypingError),
    /// The contractum has a different type.
    TypeChanged { expected: Formula, actual: Formula },
    /// The contractum has free proof variables the redex did not have.
    FreeVarsGrew(NameSet),
}

/// The first step at which subject reduction failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ViolationReport {
    pub index: usize,
    pub step: Step,
    pub violation: Violation,
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {} at {}: ", self.index + 1, self.step.rule, self.step.path)?;
        match &self.violation {
            Violation::IllTyped(e) => write!(f, "contractum is ill-typed: {e}"),
            Violation::TypeChanged { expected, actual } => write!(f, "type changed from {expected} to {actual}"),
            Violation::FreeVarsGrew(extra) => {
                let names: Vec<&str> = extra.iter().map(String::as_str).collect();
                write!(f, "new free proof variables {}", names.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("initial term does not type-check: {0}")]
    Untyped(TypingError),
    #[error("subject reduction violated at {0}")]
    Violation(Box<ViolationReport>),
}

#[derive(Debug, Clone)]
pub struct ReplayReport {
    pub ty: Formula,
    pub trace: Trace,
}

/// Normalizes `t` and re-checks the type and the free proof variables after
/// every step.
pub fn replay_subject_reduction(
    ctx: &Context,
    t: &Proof,
    mode: Mode,
    fuel: usize,
) -> Result<ReplayReport, ReplayError> {
    let checker = Checker::new(mode);
    let ty = checker.infer(ctx, t).map_err(ReplayError::Untyped)?;
    let trace = normalize(t, fuel);
    for (index, step) in trace.steps.iter().enumerate() {
        let violation = match checker.infer(ctx, &step.after) {
            Err(e) => Some(Violation::IllTyped(e)),
            Ok(actual) if !alpha_equal(&actual, &ty) => Some(Violation::TypeChanged {
                expected: ty.clone(),
                actual,
            }),
            Ok(_) => {
                let before = step.before.free_proof_vars();
                let extra: NameSet = step.after.free_proof_vars().difference(&before).cloned().collect();
                (!extra.is_empty()).then_some(Violation::FreeVarsGrew(extra))
            }
        };
        if let Some(violation) = violation {
            return Err(ReplayError::Violation(Box::new(ViolationReport {
                index,
                step: step.clone(),
                violation,
            })));
        }
    }
    Ok(ReplayReport { ty, trace })
}
