use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Target adjustments `δ` (arbitrary finite reals) together with a positive budget `y`.
///
/// The deltas are kept in caller order; solvers sort internally.
#[derive(Debug, Clone, PartialEq)]
pub struct ContributionProblem<S> {
    deltas: Vec<S>,
    budget: S,
}

impl<S: Scalar> ContributionProblem<S> {
    pub fn new(deltas: Vec<S>, budget: S) -> Result<Self> {
        if deltas.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = deltas.iter().position(|d| !d.is_finite_value()) {
            return Err(Error::NonFinite { index });
        }
        if !budget.is_finite_value() || budget <= S::zero() {
            return Err(Error::NonPositiveBudget(budget.to_string()));
        }
        Ok(Self { deltas, budget })
    }

    pub fn deltas(&self) -> &[S] {
        &self.deltas
    }

    pub fn budget(&self) -> &S {
        &self.budget
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub(crate) fn check_len(&self, candidate: &[S]) -> Result<()> {
        if candidate.len() != self.deltas.len() {
            return Err(Error::LengthMismatch {
                expected: self.deltas.len(),
                found: candidate.len(),
            });
        }
        Ok(())
    }

    /// True when `candidate` is within tolerance of the feasible set
    /// `{ v ≥ 0, Σ v = budget }`.
    pub(crate) fn is_feasible(&self, candidate: &[S]) -> bool {
        let slack = S::feasibility_tolerance();
        let floor = S::zero() - slack;
        if candidate.iter().any(|c| *c < floor) {
            return false;
        }
        let sum = candidate.iter().cloned().fold(S::zero(), |acc, c| acc + c);
        (sum - self.budget.clone()).abs() <= crate::scalar::sum_tolerance(&self.budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty() {
        assert_eq!(
            ContributionProblem::<f64>::new(vec![], 1.0),
            Err(Error::Empty)
        );
    }

    #[test]
    fn rejects_non_finite() {
        assert_eq!(
            ContributionProblem::new(vec![1.0, f64::NAN], 1.0),
            Err(Error::NonFinite { index: 1 })
        );
        assert_eq!(
            ContributionProblem::new(vec![f64::NEG_INFINITY], 1.0),
            Err(Error::NonFinite { index: 0 })
        );
    }

    #[test]
    fn rejects_non_positive_budget() {
        assert!(matches!(
            ContributionProblem::new(vec![1.0], 0.0),
            Err(Error::NonPositiveBudget(_))
        ));
        assert!(matches!(
            ContributionProblem::new(vec![1.0], -2.0),
            Err(Error::NonPositiveBudget(_))
        ));
        assert!(matches!(
            ContributionProblem::new(vec![1.0], f64::INFINITY),
            Err(Error::NonPositiveBudget(_))
        ));
    }

    #[test]
    fn accepts_negative_deltas() {
        let p = ContributionProblem::new(vec![-5.0, -1.0], 3.0).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(*p.budget(), 3.0);
    }
}
