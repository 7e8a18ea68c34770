use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use nosell_core::{rebalance, simplex_mle, solve_l1, ContributionProblem, Norm, PortfolioOptions};

use crate::error::CliError;
use crate::format::{parse_decimal, parse_portfolio};
use crate::report::{render_json, render_table, Samples};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "nosell",
    version,
    about = "Rebalance a portfolio with new money only"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Allocate a contribution across a portfolio without selling.
    Rebalance(RebalanceArgs),
    /// Project a vector onto the probability simplex.
    ProjectSimplex(ProjectArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    L1,
    L2,
}

impl From<NormArg> for Norm {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::L1 => Norm::L1,
            NormArg::L2 => Norm::L2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Json,
}

#[derive(Debug, clap::Args)]
#[command(allow_negative_numbers = true)]
pub struct RebalanceArgs {
    /// Portfolio CSV with header `id,value,target`.
    #[arg(long)]
    pub input: PathBuf,
    /// Amount to add.
    #[arg(long)]
    pub contribution: f64,
    #[arg(long, value_enum, default_value = "l2")]
    pub norm: NormArg,
    #[arg(long, value_enum, default_value = "table")]
    pub format: FormatArg,
    /// Rescale targets that do not sum to one.
    #[arg(long)]
    pub normalize: bool,
    /// Accept negative holdings.
    #[arg(long)]
    pub allow_short: bool,
    /// Seed for --sample.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also report K random members of the l1 solution set.
    #[arg(long, value_name = "K")]
    pub sample: Option<usize>,
}

#[derive(Debug, clap::Args)]
#[command(allow_negative_numbers = true)]
pub struct ProjectArgs {
    /// Comma-separated values.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub values: Option<String>,
    /// File with one value per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn run_rebalance_command(args: &RebalanceArgs) -> Result<String, CliError> {
    if !args.contribution.is_finite() || args.contribution <= 0.0 {
        return Err(CliError::Usage(format!(
            "contribution must be a positive amount, got {}",
            args.contribution
        )));
    }
    if args.sample.is_some() && args.norm != NormArg::L1 {
        return Err(CliError::Usage("--sample requires --norm l1".into()));
    }
    let options = PortfolioOptions {
        allow_short: args.allow_short,
        normalize: args.normalize,
    };
    let portfolio = parse_portfolio(&read(&args.input)?, options)?;
    let plan = rebalance(&portfolio, &args.contribution, args.norm.into())?;

    let samples = match args.sample {
        Some(k) => {
            let problem = ContributionProblem::new(plan.naive.clone(), plan.budget)?;
            let family = solve_l1(&problem);
            let members = (0..k as u64)
                .map(|i| family.sample_member(args.seed.wrapping_add(i)))
                .collect();
            Some(Samples {
                seed: args.seed,
                members,
            })
        }
        None => None,
    };

    Ok(match args.format {
        FormatArg::Table => render_table(&portfolio, &plan, samples.as_ref()),
        FormatArg::Json => render_json(&portfolio, &plan, samples.as_ref()),
    })
}

fn parse_values<'a>(cells: impl Iterator<Item = (u64, &'a str)>) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for (pos, cell) in cells {
        let v = parse_decimal(cell)
            .ok_or_else(|| CliError::parse(pos, format!("malformed value `{cell}`")))?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(CliError::Usage("no values given".into()));
    }
    Ok(out)
}

pub fn run_project_simplex_command(args: &ProjectArgs) -> Result<String, CliError> {
    let values = match (&args.values, &args.input) {
        (Some(v), _) => parse_values(
            v.split(',')
                .map(str::trim)
                .enumerate()
                .map(|(i, c)| (i as u64 + 1, c))
                .filter(|(_, c)| !(c.is_empty() && v.trim().is_empty())),
        )?,
        (None, Some(path)) => {
            let text = read(path)?;
            parse_values(
                text.lines()
                    .enumerate()
                    .map(|(i, l)| (i as u64 + 1, l.trim()))
                    .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
            )?
        }
        (None, None) => return Err(CliError::Usage("pass --values or --input".into())),
    };
    let theta = simplex_mle(&values)?;
    let row: Vec<String> = theta.iter().map(|t| format!("{t:.10}")).collect();
    Ok(format!("{}\n", row.join(",")))
}

/// Parses `args` (including the program name) and runs the subcommand, writing the report to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Rebalance(a) => run_rebalance_command(a),
        Command::ProjectSimplex(a) => run_project_simplex_command(a),
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let CliError::Core(nosell_core::Error::TargetSum(_)) = e {
                let _ = writeln!(err, "hint: pass --normalize to rescale the targets");
            }
            EXIT_INPUT
        }
    }
}
