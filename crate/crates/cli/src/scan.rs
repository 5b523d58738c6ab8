//! Summary rows over a range of degrees, computed in parallel and returned
//! in ascending order of `d`.

use rayon::prelude::*;
use seshadri_core::arith::{is_square, isqrt};
use seshadri_core::excset::{pair_count, Detail};
use seshadri_core::pell::fundamental_solution;
use seshadri_core::{run_pipeline, ConjectureStatus, Error, Int, PipelineConfig, Rat};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub d: u64,
    pub p0: Option<Int>,
    pub q0: Option<Int>,
    pub bound: Option<Rat>,
    pub smooth_count: Option<usize>,
    /// Raw enumeration size, counted without enumerating.
    pub pair_count: Option<Int>,
    /// `None` when the square was skipped or the budget ran out.
    pub final_value_count: Option<usize>,
    pub status: ConjectureStatus,
}

impl ScanRow {
    pub fn skipped(&self) -> bool {
        self.status == ConjectureStatus::NotApplicableSquareD
    }

    /// Counts were not computed because enumeration exceeded the budget.
    pub fn over_budget(&self) -> bool {
        !self.skipped() && self.final_value_count.is_none()
    }
}

fn row(d: u64, config: &PipelineConfig) -> Result<ScanRow, CliError> {
    let di = Int::from(d);
    let status = ConjectureStatus::for_degree(&di);
    if is_square(&di) {
        return Ok(ScanRow {
            d,
            p0: None,
            q0: None,
            bound: None,
            smooth_count: None,
            pair_count: None,
            final_value_count: None,
            status,
        });
    }
    let sol = fundamental_solution(&di)?;
    let smooth = if config.rho1 && d > 1 { 0 } else { usize::try_from(isqrt(&di)?).expect("small degree") };
    let pair_count = pair_count(&di, sol.p(), sol.q(), config.strict_lower)?;
    let final_value_count = match run_pipeline(&di, &sol, config) {
        Ok(report) => Some(report.final_values.len()),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(ScanRow {
        d,
        bound: Some(sol.bound(&di)),
        p0: Some(sol.p().clone()),
        q0: Some(sol.q().clone()),
        smooth_count: Some(smooth),
        pair_count: Some(pair_count),
        final_value_count,
        status,
    })
}

pub fn scan(lo: u64, hi: u64, config: &PipelineConfig) -> Result<Vec<ScanRow>, CliError> {
    config.validate()?;
    let config = PipelineConfig { detail: Detail::Summary, ..config.clone() };
    (lo..=hi).into_par_iter().map(|d| row(d, &config)).collect()
}
