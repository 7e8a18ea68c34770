use crate::error::Result;
use crate::l2::solve_l2;
use crate::problem::ContributionProblem;
use crate::scalar::Scalar;

/// Maximum-likelihood estimate of a composition from averaged observations with isotropic
/// Gaussian noise: the Euclidean projection of `observations` onto the probability simplex.
pub fn simplex_mle<S: Scalar>(observations: &[S]) -> Result<Vec<S>> {
    let problem = ContributionProblem::new(observations.to_vec(), S::one())?;
    Ok(solve_l2(&problem).adjustments)
}
