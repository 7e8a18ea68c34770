//! Portfolio CSV format.
//!
//! ```text
//! # comments start with '#'
//! id,value,target
//! growth,2400,0.30
//! ```
//!
//! Numbers use a period decimal separator with no thousands separators or exponents.

use std::collections::HashMap;

use nosell_core::{Asset, Portfolio, PortfolioOptions};

use crate::error::CliError;

const HEADER: [&str; 3] = ["id", "value", "target"];

/// Round to 10 significant digits.
pub fn sig10(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.9e}").parse().expect("formatted float parses")
}

/// Strict decimal grammar: optional sign, digits, optional fractional part.
pub fn parse_decimal(text: &str) -> Option<f64> {
    let body = text.strip_prefix(['-', '+']).unwrap_or(text);
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(int) || frac.is_some_and(|f| !digits(f)) {
        return None;
    }
    text.parse().ok()
}

pub fn parse_portfolio(text: &str, options: PortfolioOptions) -> Result<Portfolio<f64>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .has_headers(false)
        .from_reader(text.as_bytes());

    let mut header_seen = false;
    let mut assets = Vec::new();
    let mut first_line: HashMap<String, u64> = HashMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::parse(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if !header_seen {
            let fields: Vec<&str> = record.iter().collect();
            if fields != HEADER {
                return Err(CliError::parse(
                    line,
                    format!(
                        "expected header `id,value,target`, found `{}`",
                        fields.join(",")
                    ),
                ));
            }
            header_seen = true;
            continue;
        }
        if record.len() != 3 {
            return Err(CliError::parse(
                line,
                format!("expected 3 fields, found {}", record.len()),
            ));
        }
        let id = record[0].to_string();
        if id.is_empty() {
            return Err(CliError::parse(line, "empty asset id"));
        }
        if let Some(prev) = first_line.insert(id.clone(), line) {
            return Err(CliError::parse(
                line,
                format!("duplicate asset id `{id}` (first defined on line {prev})"),
            ));
        }
        let number = |column: &str, cell: &str| {
            parse_decimal(cell)
                .ok_or_else(|| CliError::parse(line, format!("malformed {column} `{cell}`")))
        };
        let value = number("value", &record[1])?;
        let target = number("target", &record[2])?;
        assets.push(Asset::new(id, value, target));
    }
    if !header_seen {
        return Err(CliError::parse(1, "missing header `id,value,target`"));
    }
    if assets.is_empty() {
        return Err(CliError::parse(2, "portfolio has no assets"));
    }
    Portfolio::new(assets, options).map_err(CliError::from)
}

pub fn serialize_portfolio(portfolio: &Portfolio<f64>) -> String {
    let mut out = String::from("id,value,target\n");
    for a in portfolio.assets() {
        out.push_str(&format!(
            "{},{},{}\n",
            a.id,
            sig10(a.value),
            sig10(a.target)
        ));
    }
    out
}
