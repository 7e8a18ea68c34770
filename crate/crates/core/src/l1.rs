//! Least-absolute-deviation allocation of a budget without selling.
//!
//! Minimizers of `Σ |y_i − δ_i|` over `y ≥ 0`, `Σ y = budget` are not unique. With
//! `P = Σ δ_i⁺` the solution set is:
//!
//! * surplus (`budget > P`): `y_i = δ_i⁺ + ε_i` for any `ε ≥ 0` summing to `budget − P`;
//! * deficit (`budget ≤ P`): `y_i = α_i δ_i⁺` for any `α ∈ [0, 1]ⁿ` with `α·δ⁺ = budget`.
//!
//! [`L1SolutionFamily`] keeps the generators of that polytope plus the uniform particular
//! member; [`L1SolutionFamily::sample_member`] draws other members for testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::objective::{Norm, ObjectiveValue};
use crate::problem::ContributionProblem;
use crate::scalar::{positive_part, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Surplus,
    Deficit,
}

#[derive(Debug, Clone, PartialEq)]
pub enum L1Case<S> {
    /// `slack = budget − Σ δ⁺ > 0` is spread freely on top of `δ⁺`.
    Surplus { slack: S },
    /// `scale = budget / Σ δ⁺ ∈ (0, 1]` is the uniform deflation factor.
    Deficit { scale: S },
}

impl<S> L1Case<S> {
    pub fn tag(&self) -> CaseTag {
        match self {
            L1Case::Surplus { .. } => CaseTag::Surplus,
            L1Case::Deficit { .. } => CaseTag::Deficit,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct L1SolutionFamily<S> {
    pub case: L1Case<S>,
    /// Uniform member, in original order.
    pub particular: Vec<S>,
    /// `δ_i⁺`.
    pub positive_parts: Vec<S>,
}

fn sum<S: Scalar>(values: &[S]) -> S {
    values.iter().cloned().fold(S::zero(), |acc, v| acc + v)
}

pub fn solve_l1<S: Scalar>(problem: &ContributionProblem<S>) -> L1SolutionFamily<S> {
    let budget = problem.budget().clone();
    let positive_parts: Vec<S> = problem
        .deltas()
        .iter()
        .cloned()
        .map(positive_part)
        .collect();
    let positive_total = sum(&positive_parts);

    // budget == Σ δ⁺ is deficit with scale 1; both forms coincide there.
    if budget > positive_total {
        let slack = budget - positive_total;
        let share = slack.clone() / S::from_count(positive_parts.len());
        let particular = positive_parts
            .iter()
            .map(|p| p.clone() + share.clone())
            .collect();
        L1SolutionFamily {
            case: L1Case::Surplus { slack },
            particular,
            positive_parts,
        }
    } else {
        // positive_total ≥ budget > 0, so the division is safe.
        let scale = budget / positive_total;
        let particular = positive_parts
            .iter()
            .map(|p| scale.clone() * p.clone())
            .collect();
        L1SolutionFamily {
            case: L1Case::Deficit { scale },
            particular,
            positive_parts,
        }
    }
}

/// Minimum of the l1 objective without constructing a minimizer:
/// `budget − Σ δ` in surplus, `Σ |δ| − budget` in deficit.
pub fn l1_optimal_value<S: Scalar>(problem: &ContributionProblem<S>) -> ObjectiveValue<S> {
    let budget = problem.budget().clone();
    let deltas = problem.deltas();
    let positive_total = deltas
        .iter()
        .cloned()
        .map(positive_part)
        .fold(S::zero(), |acc, v| acc + v);
    let value = if budget > positive_total {
        budget - sum(deltas)
    } else {
        deltas
            .iter()
            .map(|d| d.abs())
            .fold(S::zero(), |acc, v| acc + v)
            - budget
    };
    ObjectiveValue {
        norm: Norm::L1,
        value,
    }
}

/// Membership test against the two characterizations of the l1 solution set.
pub fn is_l1_optimal<S: Scalar>(problem: &ContributionProblem<S>, candidate: &[S]) -> Result<bool> {
    problem.check_len(candidate)?;
    if !problem.is_feasible(candidate) {
        return Ok(false);
    }
    let tol = S::feasibility_tolerance();
    let positive_total = problem
        .deltas()
        .iter()
        .cloned()
        .map(positive_part)
        .fold(S::zero(), |acc, v| acc + v);
    let surplus = *problem.budget() > positive_total;
    let ok = candidate.iter().zip(problem.deltas()).all(|(c, d)| {
        let upper = positive_part(d.clone());
        if surplus {
            // ε_i = c_i − δ_i⁺ ≥ 0; their sum is fixed by feasibility.
            c.clone() >= upper - tol.clone()
        } else {
            // α_i = c_i / δ_i⁺ ≤ 1, and c_i = 0 where δ_i⁺ = 0.
            c.clone() <= upper + tol.clone()
        }
    });
    Ok(ok)
}

impl<S: Scalar> L1SolutionFamily<S> {
    pub fn case_tag(&self) -> CaseTag {
        self.case.tag()
    }

    pub fn budget(&self) -> S {
        sum(&self.particular)
    }

    /// A vertex of the solution polytope chosen by `order`.
    ///
    /// Surplus vertices put the whole slack on one asset. Deficit vertices fill assets to
    /// `δ_i⁺` in the given order until the budget runs out.
    fn vertex(&self, order: &[usize], budget: &S) -> Vec<S> {
        match &self.case {
            L1Case::Surplus { slack } => {
                let mut v = self.positive_parts.clone();
                v[order[0]] = v[order[0]].clone() + slack.clone();
                v
            }
            L1Case::Deficit { .. } => {
                let mut v = vec![S::zero(); self.positive_parts.len()];
                let mut remaining = budget.clone();
                for &i in order {
                    if remaining <= S::zero() {
                        break;
                    }
                    let cap = self.positive_parts[i].clone();
                    let take = if cap < remaining {
                        cap
                    } else {
                        remaining.clone()
                    };
                    remaining = remaining - take.clone();
                    v[i] = take;
                }
                v
            }
        }
    }

    /// Random member of the solution set: a convex combination of the particular solution
    /// and a few random vertices. Deterministic in `seed`.
    pub fn sample_member(&self, seed: u64) -> Vec<S> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.positive_parts.len();
        let budget = self.budget();
        let vertex_count = rng.gen_range(1..=3usize);

        let mut points = vec![self.particular.clone()];
        for _ in 0..vertex_count {
            let mut order: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            points.push(self.vertex(&order, &budget));
        }

        let raw: Vec<f64> = points
            .iter()
            .map(|_| rng.gen_range(0.0..1.0) + 1e-3)
            .collect();
        let weights: Vec<S> = raw
            .iter()
            .map(|w| S::from_f64(*w).expect("weight representable"))
            .collect();
        let total = sum(&weights);

        let mut member = vec![S::zero(); n];
        for (point, w) in points.iter().zip(&weights) {
            let w = w.clone() / total.clone();
            for (m, p) in member.iter_mut().zip(point) {
                *m = m.clone() + w.clone() * p.clone();
            }
        }
        member
    }

    /// In deficit, the per-asset coefficients `α_i = member_i / δ_i⁺` of a member, with
    /// `α_i = 0` wherever `δ_i⁺ = 0`. `None` in surplus.
    pub fn coefficients(&self, member: &[S]) -> Option<Vec<S>> {
        match self.case {
            L1Case::Deficit { .. } => Some(
                member
                    .iter()
                    .zip(&self.positive_parts)
                    .map(|(m, p)| {
                        if p.is_zero() {
                            S::zero()
                        } else {
                            m.clone() / p.clone()
                        }
                    })
                    .collect(),
            ),
            L1Case::Surplus { .. } => None,
        }
    }
}
