//! Command-line front end for `seshadri-core`: Pell data, exceptional sets,
//! degree scans, theorem verifiers and bounds, rendered as aligned tables,
//! CSV or JSON.

pub mod args;
pub mod dto;
pub mod error;
pub mod render;
pub mod scan;

use std::fs;

use seshadri_core::analysis::{verify_main_bqsq, verify_p0_1, verify_p0_2, VerificationReport};
use seshadri_core::arith::isqrt;
use seshadri_core::pell::{cf_sqrt, conjecture_bound, fundamental_solution, nth_solution, solutions};
use seshadri_core::{run_pipeline, Error, Int, Rat};

use crate::args::{Cli, Command, ExcArgs, Format, ScanArgs, VerifyCommand};
use crate::error::CliError;
use crate::render::{BoundView, ExcView, Listing};

/// What a command produced and how the process should exit.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, ..Outcome::default() }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Pell { d, count, format } => pell(d, *count, *format),
        Command::Exc(args) => exc(args),
        Command::Scan(args) => scan(args),
        Command::Verify(v) => verify(v),
        Command::Bound { d, format } => bound(d, *format),
    }
}

fn pell(d: &Int, count: u64, format: Format) -> Result<Outcome, CliError> {
    if count < 1 {
        return Err(CliError::Invalid("count must be at least 1".into()));
    }
    let cf = cf_sqrt(d)?;
    let sols: Vec<_> = solutions(d)?.take(usize::try_from(count).unwrap_or(usize::MAX)).collect();
    Ok(Outcome::ok(render::pell(&cf, &sols, format)?))
}

fn exc(args: &ExcArgs) -> Result<Outcome, CliError> {
    let config = args.filter.config(args.budget);
    config.validate()?;
    let sol = nth_solution(&args.d, &Int::from(args.pell_index))?;
    let report = run_pipeline(&args.d, &sol, &config)?;
    let listing = if args.pairs { Listing::Pairs } else { Listing::Values };
    let view = ExcView { report: &report, config: &config, listing, trace: args.trace };
    let stdout = render::exc(&view, args.format)?;
    let stderr = if args.format == Format::Csv { render::stage_summary(&report) } else { String::new() };
    Ok(Outcome { stdout, stderr, code: 0 })
}

fn scan(args: &ScanArgs) -> Result<Outcome, CliError> {
    let (lo, hi) = args.range;
    let config = args.filter.config(Some(args.budget));
    let rows = scan::scan(lo, hi, &config)?;
    let text = render::scan(&rows, args.format)?;
    let over: Vec<String> = rows.iter().filter(|r| r.over_budget()).map(|r| r.d.to_string()).collect();
    let mut stderr = String::new();
    if !over.is_empty() {
        stderr = format!("counts left blank (over budget {}): d = {}\n", args.budget, over.join(", "));
    }
    match &args.out {
        None => Ok(Outcome { stdout: text, stderr, code: 0 }),
        Some(path) => {
            fs::write(path, &text).map_err(|source| CliError::Write { path: path.clone(), source })?;
            stderr += &format!("wrote {} rows to {}\n", rows.len(), path.display());
            Ok(Outcome { stdout: String::new(), stderr, code: 0 })
        }
    }
}

fn verified(report: &VerificationReport, format: Format) -> Result<Outcome, CliError> {
    let stdout = render::verify(report, format)?;
    Ok(Outcome { stdout, stderr: String::new(), code: if report.passed() { 0 } else { 1 } })
}

fn verify(cmd: &VerifyCommand) -> Result<Outcome, CliError> {
    match cmd {
        VerifyCommand::Main { d, pell_index, window, format } => {
            let sol = nth_solution(d, &Int::from(*pell_index))?;
            verified(&verify_main_bqsq(d, sol.p(), sol.q(), *window)?, *format)
        }
        VerifyCommand::P0One { n_max, k_max, format } => verified(&verify_p0_1(*n_max, *k_max)?, *format),
        VerifyCommand::P0Two { n_max, l_max, format } => verified(&verify_p0_2(*n_max, *l_max)?, *format),
    }
}

/// `√d` rounded half-up to six places.
fn sqrt_decimal(d: &Int) -> Result<String, Error> {
    let scale = Int::from(10u64.pow(12));
    let n = d * &scale;
    let r = isqrt(&n)?;
    // round up iff n >= (r + 1/2)^2, i.e. n > r^2 + r
    let rounded = if n > &r * &r + &r { r + 1u32 } else { r };
    Ok(Rat::new(rounded, Int::from(1_000_000u32))?.to_decimal(6))
}

fn bound(d: &Int, format: Format) -> Result<Outcome, CliError> {
    let solution = fundamental_solution(d)?;
    let bound = conjecture_bound(d)?;
    let q2 = solution.q() * solution.q();
    let view = BoundView {
        d: d.clone(),
        sqrt_decimal: sqrt_decimal(d)?,
        gap: Rat::new(d.clone(), q2)?,
        bound,
        solution,
    };
    Ok(Outcome::ok(render::bound(&view, format)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_exits_one() {
        use seshadri_core::analysis::{Claim, Counterexample};
        let mut report = verify_p0_1(2, 2).unwrap();
        assert_eq!(verified(&report, Format::Table).unwrap().code, 0);
        report.counterexamples.push(Counterexample { params: vec![("n", Int::from(1))], margin: Int::from(0) });
        assert_eq!(report.claim, Claim::P0One);
        let out = verified(&report, Format::Table).unwrap();
        assert_eq!(out.code, 1);
        assert!(out.stdout.contains("result: fail"));
    }

    #[test]
    fn error_exit_codes() {
        assert_eq!(CliError::Invalid("x".into()).exit_code(), 2);
        assert_eq!(CliError::from(Error::ZeroDenominator).exit_code(), 2);
        let io = std::io::Error::other("x");
        assert_eq!(CliError::Write { path: "p".into(), source: io }.exit_code(), 3);
    }

    #[test]
    fn sqrt_rounding() {
        assert_eq!(sqrt_decimal(&Int::from(2)).unwrap(), "1.414214");
        assert_eq!(sqrt_decimal(&Int::from(7)).unwrap(), "2.645751");
        assert_eq!(sqrt_decimal(&Int::from(5)).unwrap(), "2.236068");
    }
}
