//! Plan reports: a Table-style text layout and a JSON document.
//!
//! The table shows whole dollars and whole percents. JSON carries every number to 10
//! significant digits.

use std::fmt::Write as _;

use nosell_core::{Certificate, L1Case, Norm, Plan, Portfolio};
use serde::{Serialize, Serializer};

use crate::format::sig10;

/// A number serialized with 10 significant digits; integral values print without a fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sig10(pub f64);

impl Serialize for Sig10 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let v = sig10(self.0);
        if v.fract() == 0.0 && v.abs() < 1e15 {
            serializer.serialize_i64(v as i64)
        } else {
            serializer.serialize_f64(v)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct L2Certificate {
    pub k_star: usize,
    pub lambda_star: Sig10,
}

#[derive(Debug, Serialize)]
pub struct AssetRow {
    pub id: String,
    pub value: Sig10,
    pub target: Sig10,
    pub naive: Sig10,
    pub adjustment: Sig10,
    pub adjustment_cents: i64,
    pub final_allocation: Sig10,
}

#[derive(Debug, Serialize)]
pub struct PlanJson {
    pub norm: String,
    pub budget: Sig10,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<L2Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Sig10>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slack: Option<Sig10>,
    pub total_cents: i64,
    pub assets: Vec<AssetRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<Vec<Sig10>>>,
}

/// Sampled members of the l1 solution family, reported alongside a plan.
#[derive(Debug, Clone)]
pub struct Samples {
    pub seed: u64,
    pub members: Vec<Vec<f64>>,
}

pub fn plan_json(portfolio: &Portfolio<f64>, plan: &Plan, samples: Option<&Samples>) -> PlanJson {
    let (certificate, case, alpha, slack) = match &plan.certificate {
        Certificate::L2 {
            active_count,
            threshold,
        } => (
            Some(L2Certificate {
                k_star: *active_count,
                lambda_star: Sig10(*threshold),
            }),
            None,
            None,
            None,
        ),
        Certificate::L1(L1Case::Deficit { scale }) => {
            (None, Some("deficit"), Some(Sig10(*scale)), None)
        }
        Certificate::L1(L1Case::Surplus { slack }) => {
            (None, Some("surplus"), None, Some(Sig10(*slack)))
        }
    };
    let assets = portfolio
        .assets()
        .iter()
        .enumerate()
        .map(|(i, a)| AssetRow {
            id: a.id.clone(),
            value: Sig10(a.value),
            target: Sig10(a.target),
            naive: Sig10(plan.naive[i]),
            adjustment: Sig10(plan.adjustments[i]),
            adjustment_cents: plan.rounded_cents[i],
            final_allocation: Sig10(plan.final_allocations[i]),
        })
        .collect();
    PlanJson {
        norm: plan.norm.to_string(),
        budget: Sig10(plan.budget),
        certificate,
        case,
        alpha,
        slack,
        total_cents: plan.rounded_cents.iter().sum(),
        assets,
        samples: samples.map(|s| {
            s.members
                .iter()
                .map(|m| m.iter().copied().map(Sig10).collect())
                .collect()
        }),
    }
}

pub fn render_json(portfolio: &Portfolio<f64>, plan: &Plan, samples: Option<&Samples>) -> String {
    let mut out = serde_json::to_string_pretty(&plan_json(portfolio, plan, samples))
        .expect("plan serializes");
    out.push('\n');
    out
}

fn dollars(x: f64) -> String {
    let r = x.round();
    if r < 0.0 {
        format!("-${}", -r)
    } else {
        format!("${}", r + 0.0)
    }
}

fn percent(x: f64) -> String {
    format!("{}%", (x * 100.0).round() + 0.0)
}

pub fn render_table(portfolio: &Portfolio<f64>, plan: &Plan, samples: Option<&Samples>) -> String {
    let total = *portfolio.total();
    let id_width = portfolio
        .assets()
        .iter()
        .map(|a| a.id.len())
        .chain(["asset".len(), "total".len()])
        .max()
        .unwrap_or(5);
    let mut out = String::new();
    let header = ["initial", "target", "value", "naive", "adjustment", "final"];
    let _ = write!(out, "{:<id_width$}", "asset");
    for h in header {
        let _ = write!(out, "  {h:>10}");
    }
    out.push('\n');

    for (i, a) in portfolio.assets().iter().enumerate() {
        let initial = if total != 0.0 { a.value / total } else { 0.0 };
        let cells = [
            percent(initial),
            percent(a.target),
            dollars(a.value),
            dollars(plan.naive[i]),
            dollars(plan.adjustments[i]),
            percent(plan.final_allocations[i]),
        ];
        let _ = write!(out, "{:<id_width$}", a.id);
        for c in cells {
            let _ = write!(out, "  {c:>10}");
        }
        out.push('\n');
    }

    let target_total: f64 = portfolio.assets().iter().map(|a| a.target).sum();
    let naive_total: f64 = plan.naive.iter().sum();
    let final_total: f64 = plan.final_allocations.iter().sum();
    let cells = [
        percent(if total != 0.0 { 1.0 } else { 0.0 }),
        percent(target_total),
        dollars(total),
        dollars(naive_total),
        dollars(plan.budget),
        percent(final_total),
    ];
    let _ = write!(out, "{:<id_width$}", "total");
    for c in cells {
        let _ = write!(out, "  {c:>10}");
    }
    out.push('\n');
    out.push('\n');

    let _ = writeln!(out, "norm: {}", plan.norm);
    let _ = writeln!(out, "contribution: {}", dollars(plan.budget));
    match &plan.certificate {
        Certificate::L2 {
            active_count,
            threshold,
        } => {
            let _ = writeln!(out, "k* = {active_count}, lambda* = {}", sig10(*threshold));
        }
        Certificate::L1(L1Case::Deficit { scale }) => {
            let _ = writeln!(out, "case: deficit, alpha = {}", sig10(*scale));
        }
        Certificate::L1(L1Case::Surplus { slack }) => {
            let _ = writeln!(out, "case: surplus, slack = {}", sig10(*slack));
        }
    }
    if let Some(s) = samples {
        debug_assert_eq!(plan.norm, Norm::L1);
        let _ = writeln!(out, "\nsampled l1 solutions (seed {}):", s.seed);
        for m in &s.members {
            let row: Vec<String> = m.iter().map(|v| format!("{v:.2}")).collect();
            let _ = writeln!(out, "  {}", row.join(", "));
        }
    }
    out
}
