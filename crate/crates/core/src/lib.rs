//! No-sell rebalancing: allocate a fixed contribution across assets to land as close as possible
//! to target proportions without selling anything.
//!
//! Two closed forms are provided. [`solve_l2`] returns the unique least-squares allocation, a
//! water-filling cut `(δ_i − λ*)⁺` over the naive adjustments. [`solve_l1`] returns the family
//! of least-absolute-deviation allocations. [`oracles`] holds brute-force checks and
//! [`portfolio`] maps holdings and targets onto the solvers.
//!
//! Everything is generic over [`Scalar`]; the aliases below pin the common choices.

pub mod error;
pub mod l1;
pub mod l2;
pub mod objective;
pub mod oracles;
pub mod portfolio;
pub mod problem;
pub mod scalar;
pub mod simplex;

pub use error::{Error, Result};
pub use l1::{is_l1_optimal, l1_optimal_value, solve_l1, CaseTag, L1Case, L1SolutionFamily};
pub use l2::{solve_l2, L2Solution};
pub use objective::{l1_objective, l2_objective, Norm, ObjectiveValue};
pub use portfolio::{
    naive_adjustments, rebalance, round_to_cents, Asset, Certificate, Portfolio, PortfolioOptions,
    RebalancePlan,
};
pub use problem::ContributionProblem;
pub use scalar::Scalar;
pub use simplex::simplex_mle;

pub use num_rational::BigRational;

pub type Problem = ContributionProblem<f64>;
pub type Problem32 = ContributionProblem<f32>;
pub type ExactProblem = ContributionProblem<BigRational>;

pub type Solution = L2Solution<f64>;
pub type ExactSolution = L2Solution<BigRational>;

pub type Family = L1SolutionFamily<f64>;
pub type ExactFamily = L1SolutionFamily<BigRational>;

pub type Plan = RebalancePlan<f64>;
pub type ExactPlan = RebalancePlan<BigRational>;
