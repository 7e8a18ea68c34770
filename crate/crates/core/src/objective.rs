use std::fmt;

use crate::error::Result;
use crate::problem::ContributionProblem;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Norm {
    L1,
    L2,
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::L1 => f.write_str("l1"),
            Norm::L2 => f.write_str("l2"),
        }
    }
}

/// Objective value tagged with the norm that produced it. For `L2` this is the squared norm.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveValue<S> {
    pub norm: Norm,
    pub value: S,
}

/// `Σ (candidate_i − δ_i)²`.
pub fn l2_objective<S: Scalar>(
    problem: &ContributionProblem<S>,
    candidate: &[S],
) -> Result<ObjectiveValue<S>> {
    problem.check_len(candidate)?;
    let value = candidate
        .iter()
        .zip(problem.deltas())
        .map(|(c, d)| {
            let diff = c.clone() - d.clone();
            diff.clone() * diff
        })
        .fold(S::zero(), |acc, t| acc + t);
    Ok(ObjectiveValue {
        norm: Norm::L2,
        value,
    })
}

/// `Σ |candidate_i − δ_i|`.
pub fn l1_objective<S: Scalar>(
    problem: &ContributionProblem<S>,
    candidate: &[S],
) -> Result<ObjectiveValue<S>> {
    problem.check_len(candidate)?;
    let value = candidate
        .iter()
        .zip(problem.deltas())
        .map(|(c, d)| (c.clone() - d.clone()).abs())
        .fold(S::zero(), |acc, t| acc + t);
    Ok(ObjectiveValue {
        norm: Norm::L1,
        value,
    })
}
