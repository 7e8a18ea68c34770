//! Least-squares allocation of a budget without selling.
//!
//! Minimizes `Σ (y_i − δ_i)²` subject to `y_i ≥ 0` and `Σ y_i = budget`. The minimizer is a
//! water-filling cut: with the deltas sorted descending, `k*` is the largest `k` for which
//! `Σ_{i≤k} (δ_(i) − δ_(k)) < budget`, the threshold is `λ* = (Σ_{i≤k*} δ_(i) − budget) / k*`,
//! and every asset receives `(δ_i − λ*)⁺`.

use crate::problem::ContributionProblem;
use crate::scalar::{positive_part, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct L2Solution<S> {
    /// Per-asset allocation in the caller's original order.
    pub adjustments: Vec<S>,
    /// `λ*`.
    pub threshold: S,
    /// `k*`, the number of assets receiving a positive amount.
    pub active_count: usize,
    /// `sort_permutation[r]` is the original index of the `r`-th largest delta.
    pub sort_permutation: Vec<usize>,
}

impl<S: Scalar> L2Solution<S> {
    /// Original indices of the assets that receive funds.
    pub fn active_indices(&self) -> &[usize] {
        &self.sort_permutation[..self.active_count]
    }
}

/// Indices ordering `values` descending; ties keep ascending index order.
pub(crate) fn descending_order<S: Scalar>(values: &[S]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    // sort_by is stable, so equal deltas stay in index order.
    order.sort_by(|&a, &b| values[b].cmp_finite(&values[a]));
    order
}

pub fn solve_l2<S: Scalar>(problem: &ContributionProblem<S>) -> L2Solution<S> {
    let deltas = problem.deltas();
    let budget = problem.budget();
    let order = descending_order(deltas);

    // Σ_{i≤k} (δ_(i) − δ_(k)) = prefix_k − k·δ_(k); k = 1 always qualifies since budget > 0.
    let mut prefix = S::zero();
    let mut active_count = 0;
    let mut active_prefix = S::zero();
    for (rank, &idx) in order.iter().enumerate() {
        let k = rank + 1;
        prefix = prefix + deltas[idx].clone();
        let spread = prefix.clone() - S::from_count(k) * deltas[idx].clone();
        if spread < *budget {
            active_count = k;
            active_prefix = prefix.clone();
        }
    }
    debug_assert!(active_count >= 1);

    let threshold = (active_prefix - budget.clone()) / S::from_count(active_count);
    let adjustments = deltas
        .iter()
        .map(|d| positive_part(d.clone() - threshold.clone()))
        .collect();

    L2Solution {
        adjustments,
        threshold,
        active_count,
        sort_permutation: order,
    }
}
