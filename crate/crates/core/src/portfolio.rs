//! Portfolio layer: assets, naive adjustments, rebalancing plans and cent rounding.

use crate::error::{Error, Result};
use crate::l1::{solve_l1, L1Case};
use crate::l2::solve_l2;
use crate::objective::Norm;
use crate::problem::ContributionProblem;
use crate::scalar::{sum_tolerance, Scalar};

/// Slack allowed on `Σ targets = 1`.
pub const TARGET_SUM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct Asset<S> {
    pub id: String,
    /// Current holding `x_i`.
    pub value: S,
    /// Target proportion `p_i`.
    pub target: S,
}

impl<S> Asset<S> {
    pub fn new(id: impl Into<String>, value: S, target: S) -> Self {
        Self {
            id: id.into(),
            value,
            target,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PortfolioOptions {
    /// Permit negative holdings.
    pub allow_short: bool,
    /// Rescale targets to sum to one instead of rejecting them.
    pub normalize: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Portfolio<S> {
    assets: Vec<Asset<S>>,
    total: S,
}

impl<S: Scalar> Portfolio<S> {
    pub fn new(assets: Vec<Asset<S>>, options: PortfolioOptions) -> Result<Self> {
        if assets.is_empty() {
            return Err(Error::Empty);
        }
        let mut seen = std::collections::HashSet::new();
        for (index, asset) in assets.iter().enumerate() {
            if asset.id.is_empty() {
                return Err(Error::EmptyAssetId { index });
            }
            if !seen.insert(asset.id.as_str()) {
                return Err(Error::DuplicateAssetId(asset.id.clone()));
            }
            if !asset.value.is_finite_value() || !asset.target.is_finite_value() {
                return Err(Error::NonFinite { index });
            }
            if !options.allow_short && asset.value < S::zero() {
                return Err(Error::ShortPosition {
                    id: asset.id.clone(),
                    value: asset.value.to_string(),
                });
            }
            let upper_ok = options.normalize || asset.target <= S::one();
            if asset.target < S::zero() || !upper_ok {
                return Err(Error::TargetOutOfRange {
                    id: asset.id.clone(),
                    target: asset.target.to_string(),
                });
            }
        }

        let target_sum = assets
            .iter()
            .fold(S::zero(), |acc, a| acc + a.target.clone());
        let tol = S::from_f64(TARGET_SUM_TOLERANCE).expect("tolerance representable");
        let mut assets = assets;
        if (target_sum.clone() - S::one()).abs() > tol {
            if !options.normalize || target_sum <= S::zero() {
                return Err(Error::TargetSum(target_sum.to_string()));
            }
            for a in assets.iter_mut() {
                a.target = a.target.clone() / target_sum.clone();
            }
        }

        let total = assets
            .iter()
            .fold(S::zero(), |acc, a| acc + a.value.clone());
        Ok(Self { assets, total })
    }

    pub fn assets(&self) -> &[Asset<S>] {
        &self.assets
    }

    /// `x = Σ x_i`.
    pub fn total(&self) -> &S {
        &self.total
    }

    pub fn len(&self) -> usize {
        self.assets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assets.is_empty()
    }
}

fn check_budget<S: Scalar>(budget: &S) -> Result<()> {
    if !budget.is_finite_value() || *budget <= S::zero() {
        return Err(Error::NonPositiveBudget(budget.to_string()));
    }
    Ok(())
}

/// Signed trades `δ_i = p_i (x + y) − x_i` that would hit the targets exactly if selling were
/// allowed. They sum to `budget`.
pub fn naive_adjustments<S: Scalar>(portfolio: &Portfolio<S>, budget: &S) -> Result<Vec<S>> {
    check_budget(budget)?;
    let grown = portfolio.total.clone() + budget.clone();
    Ok(portfolio
        .assets
        .iter()
        .map(|a| a.target.clone() * grown.clone() - a.value.clone())
        .collect())
}

/// How the chosen solver certifies its answer.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate<S> {
    L2 { active_count: usize, threshold: S },
    L1(L1Case<S>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RebalancePlan<S> {
    pub norm: Norm,
    pub budget: S,
    pub naive: Vec<S>,
    pub adjustments: Vec<S>,
    /// `(x_i + y_i) / (x + y)`.
    pub final_allocations: Vec<S>,
    pub rounded_cents: Vec<i64>,
    pub certificate: Certificate<S>,
}

/// Allocates `budget` across the portfolio without selling. The l1 plan uses the uniform
/// particular member of the solution family.
pub fn rebalance<S: Scalar>(
    portfolio: &Portfolio<S>,
    budget: &S,
    norm: Norm,
) -> Result<RebalancePlan<S>> {
    let naive = naive_adjustments(portfolio, budget)?;
    let problem = ContributionProblem::new(naive.clone(), budget.clone())?;
    let (adjustments, certificate) = match norm {
        Norm::L2 => {
            let s = solve_l2(&problem);
            let cert = Certificate::L2 {
                active_count: s.active_count,
                threshold: s.threshold,
            };
            (s.adjustments, cert)
        }
        Norm::L1 => {
            let f = solve_l1(&problem);
            (f.particular, Certificate::L1(f.case))
        }
    };

    let grown = portfolio.total.clone() + budget.clone();
    if grown <= S::zero() {
        return Err(Error::NonPositiveTotal(grown.to_string()));
    }
    let final_allocations = portfolio
        .assets
        .iter()
        .zip(&adjustments)
        .map(|(a, y)| (a.value.clone() + y.clone()) / grown.clone())
        .collect();
    let rounded_cents = round_to_cents(&adjustments, budget)?;

    Ok(RebalancePlan {
        norm,
        budget: budget.clone(),
        naive,
        adjustments,
        final_allocations,
        rounded_cents,
        certificate,
    })
}

/// Largest-remainder rounding to integer cents. The result sums to `round(100 · budget)`;
/// leftover cents go to the largest fractional remainders, ties to the lower index.
pub fn round_to_cents<S: Scalar>(adjustments: &[S], budget: &S) -> Result<Vec<i64>> {
    let sum = adjustments.iter().fold(S::zero(), |acc, a| acc + a.clone());
    if (sum.clone() - budget.clone()).abs() > sum_tolerance(budget) {
        return Err(Error::BudgetMismatch {
            sum: sum.to_string(),
            budget: budget.to_string(),
        });
    }
    let floor_tol = S::zero() - S::feasibility_tolerance();
    let hundred = S::from_count(100);

    let mut cents = Vec::with_capacity(adjustments.len());
    let mut remainders = Vec::with_capacity(adjustments.len());
    for (index, a) in adjustments.iter().enumerate() {
        if *a < floor_tol {
            return Err(Error::NegativeAdjustment {
                index,
                value: a.to_string(),
            });
        }
        let a = if *a < S::zero() { S::zero() } else { a.clone() };
        let scaled = a * hundred.clone();
        let floor = scaled.floor_value();
        let whole = floor
            .to_i64()
            .ok_or_else(|| Error::CentsOverflow(scaled.to_string()))?;
        remainders.push(scaled - floor);
        cents.push(whole);
    }

    let scaled_budget = (budget.clone() * hundred).round_value();
    let target = scaled_budget
        .to_i64()
        .ok_or_else(|| Error::CentsOverflow(scaled_budget.to_string()))?;
    let floor_total: i64 = cents.iter().sum();
    let leftover = target - floor_total;
    if leftover < 0 || leftover as usize > cents.len() {
        return Err(Error::BudgetMismatch {
            sum: sum.to_string(),
            budget: budget.to_string(),
        });
    }

    let mut order: Vec<usize> = (0..cents.len()).collect();
    order.sort_by(|&a, &b| remainders[b].cmp_finite(&remainders[a]));
    for &i in order.iter().take(leftover as usize) {
        cents[i] += 1;
    }
    Ok(cents)
}
