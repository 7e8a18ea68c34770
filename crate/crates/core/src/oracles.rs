//! Brute-force verification of the closed-form solvers on small instances.
//!
//! Nothing here shares a code path with [`crate::l2`] or [`crate::l1`]: the l2 oracle enumerates
//! every free set, the l1 oracle walks a lattice over the feasible simplex, and the KKT checker
//! validates a candidate without re-solving.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::objective::{l1_objective, l2_objective};
use crate::problem::ContributionProblem;
use crate::scalar::Scalar;

/// Largest instance the subset enumeration accepts.
pub const ACTIVE_SET_MAX_N: usize = 20;
/// Largest instance the lattice search accepts.
pub const GRID_MAX_N: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport<S> {
    pub best_candidate: Vec<S>,
    pub best_objective: S,
    pub candidates_examined: usize,
    pub feasible: bool,
}

/// Stationary point of the l2 problem with the free set fixed to `free`.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeSetCandidate<S> {
    /// Bit `i` set when asset `i` is free.
    pub free: u32,
    /// `λ_S = (Σ_{i∈S} δ_i − budget) / |S|`.
    pub threshold: S,
    /// `δ_i − λ_S` on the free set, zero elsewhere; negatives within slack are clamped.
    pub point: Vec<S>,
    pub feasible: bool,
}

/// Every nonempty free set and its stationary point.
pub fn l2_free_set_candidates<S: Scalar>(
    problem: &ContributionProblem<S>,
) -> Result<Vec<FreeSetCandidate<S>>> {
    let n = problem.len();
    if n > ACTIVE_SET_MAX_N {
        return Err(Error::TooLarge {
            n,
            limit: ACTIVE_SET_MAX_N,
        });
    }
    let deltas = problem.deltas();
    let budget = problem.budget().clone();
    let floor = S::zero() - S::feasibility_tolerance();

    let mut out = Vec::with_capacity((1usize << n) - 1);
    for free in 1u32..(1u32 << n) {
        let size = free.count_ones() as usize;
        let total = (0..n)
            .filter(|i| free & (1 << i) != 0)
            .fold(S::zero(), |acc, i| acc + deltas[i].clone());
        let threshold = (total - budget.clone()) / S::from_count(size);
        let mut point: Vec<S> = (0..n)
            .map(|i| {
                if free & (1 << i) != 0 {
                    deltas[i].clone() - threshold.clone()
                } else {
                    S::zero()
                }
            })
            .collect();
        let feasible = point.iter().all(|v| *v >= floor);
        if feasible {
            for v in point.iter_mut() {
                if *v < S::zero() {
                    *v = S::zero();
                }
            }
        }
        out.push(FreeSetCandidate {
            free,
            threshold,
            point,
            feasible,
        });
    }
    Ok(out)
}

/// Exact l2 minimizer by enumerating all `2ⁿ − 1` free sets.
pub fn active_set_l2_oracle<S: Scalar>(
    problem: &ContributionProblem<S>,
) -> Result<OracleReport<S>> {
    let candidates = l2_free_set_candidates(problem)?;
    let examined = candidates.len();
    let mut best: Option<(Vec<S>, S)> = None;
    for cand in candidates.into_iter().filter(|c| c.feasible) {
        let value = l2_objective(problem, &cand.point)?.value;
        if best.as_ref().is_none_or(|(_, b)| value < *b) {
            best = Some((cand.point, value));
        }
    }
    // Singletons are always feasible, so `best` is populated.
    let (best_candidate, best_objective) = best.expect("singleton free sets are feasible");
    Ok(OracleReport {
        best_candidate,
        best_objective,
        candidates_examined: examined,
        feasible: true,
    })
}

/// Checks feasibility, stationarity on the support and complementarity off it, for the given
/// multiplier `threshold`.
pub fn kkt_check_l2<S: Scalar>(
    problem: &ContributionProblem<S>,
    candidate: &[S],
    threshold: &S,
) -> Result<bool> {
    problem.check_len(candidate)?;
    if !problem.is_feasible(candidate) {
        return Ok(false);
    }
    let tol = S::feasibility_tolerance();
    let ok = candidate.iter().zip(problem.deltas()).all(|(c, d)| {
        if *c > tol {
            (c.clone() - (d.clone() - threshold.clone())).abs() <= tol
        } else {
            *d <= threshold.clone() + tol.clone()
        }
    });
    Ok(ok)
}

/// Smallest l1 objective over the lattice `{ (j_1, …, j_n) · budget / resolution : Σ j = resolution }`.
///
/// Every lattice point is feasible, so the result is an upper bound on the true optimum and
/// exceeds it by at most `n · budget / resolution`.
pub fn grid_l1_oracle<S: Scalar>(
    problem: &ContributionProblem<S>,
    resolution: usize,
) -> Result<OracleReport<S>> {
    let n = problem.len();
    if n > GRID_MAX_N {
        return Err(Error::TooLarge {
            n,
            limit: GRID_MAX_N,
        });
    }
    if resolution < 1 {
        return Err(Error::InvalidResolution);
    }
    let budget = problem.budget().clone();
    let steps = S::from_count(resolution);
    let levels: Vec<S> = (0..=resolution)
        .map(|j| S::from_count(j) * budget.clone() / steps.clone())
        .collect();
    // cost[i][j] = |levels[j] − δ_i|
    let cost: Vec<Vec<S>> = problem
        .deltas()
        .iter()
        .map(|d| {
            levels
                .iter()
                .map(|l| (l.clone() - d.clone()).abs())
                .collect()
        })
        .collect();

    let mut search = LatticeSearch {
        cost: &cost,
        parts: vec![0; n],
        best_parts: vec![0; n],
        best: None,
        examined: 0,
    };
    search.walk(0, resolution, S::zero());

    let best_candidate: Vec<S> = search
        .best_parts
        .iter()
        .map(|&j| levels[j].clone())
        .collect();
    let best_objective = l1_objective(problem, &best_candidate)?.value;
    Ok(OracleReport {
        best_candidate,
        best_objective,
        candidates_examined: search.examined,
        feasible: true,
    })
}

struct LatticeSearch<'a, S> {
    cost: &'a [Vec<S>],
    parts: Vec<usize>,
    best_parts: Vec<usize>,
    best: Option<S>,
    examined: usize,
}

impl<S: Scalar> LatticeSearch<'_, S> {
    fn walk(&mut self, asset: usize, remaining: usize, partial: S) {
        let last = self.parts.len() - 1;
        if asset == last {
            self.parts[asset] = remaining;
            let value = partial + self.cost[asset][remaining].clone();
            self.examined += 1;
            if self.best.as_ref().is_none_or(|b| value < *b) {
                self.best = Some(value);
                self.best_parts.copy_from_slice(&self.parts);
            }
            return;
        }
        for j in 0..=remaining {
            self.parts[asset] = j;
            let next = partial.clone() + self.cost[asset][j].clone();
            self.walk(asset + 1, remaining - j, next);
        }
    }
}

/// A reproducible random instance: `seed` regenerates `problem` via [`random_instance`].
#[derive(Debug, Clone)]
pub struct SeededInstance {
    pub seed: u64,
    pub problem: ContributionProblem<f64>,
}

/// `n` uniform in `1..=max_n`, deltas uniform in `[−10, 10]`, budget uniform in `(0, 20]`.
pub fn random_instance(seed: u64, max_n: usize) -> SeededInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let deltas = (0..n).map(|_| rng.gen_range(-10.0..=10.0)).collect();
    let budget = 20.0 * (1.0 - rng.gen_range(0.0..1.0));
    let problem = ContributionProblem::new(deltas, budget).expect("generated instance is valid");
    SeededInstance { seed, problem }
}

/// `count` instances with seeds `base, base + 1, …`.
pub fn random_instances(
    base: u64,
    count: usize,
    max_n: usize,
) -> impl Iterator<Item = SeededInstance> {
    (0..count as u64).map(move |i| random_instance(base.wrapping_add(i), max_n))
}
