//! Table, CSV and JSON rendering. Every renderer returns the full text,
//! newline-terminated, so identical inputs give identical bytes.

use serde::Serialize;
use seshadri_core::analysis::VerificationReport;
use seshadri_core::pell::ContinuedFractionExpansion;
use seshadri_core::{CandidatePair, DegreeReport, Int, PellSolution, PipelineConfig, Rat};

use crate::args::Format;
use crate::dto::{report_to_json, RatDto};
use crate::error::CliError;
use crate::scan::ScanRow;

const DIGITS: usize = 6;

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(cell);
            s.extend(std::iter::repeat_n(' ', w - cell.chars().count()));
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields is UTF-8"))
}

fn json_text<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn value_cmp(x: &CandidatePair, y: &CandidatePair) -> std::cmp::Ordering {
    x.cmp_by_value(y)
}

#[derive(Serialize)]
struct PellJson {
    d: String,
    a0: String,
    period: Vec<String>,
    solutions: Vec<SolutionJson>,
}

#[derive(Serialize)]
struct SolutionJson {
    index: u64,
    p: String,
    q: String,
    residual: String,
}

pub fn pell(cf: &ContinuedFractionExpansion, sols: &[PellSolution], format: Format) -> Result<String, CliError> {
    let d = &cf.d;
    let rows: Vec<Vec<String>> = sols
        .iter()
        .map(|s| vec![s.index().to_string(), s.p().to_string(), s.q().to_string(), s.residual(d).to_string()])
        .collect();
    match format {
        Format::Table => {
            let period: Vec<String> = cf.period.iter().map(Int::to_string).collect();
            let mut out = format!("d: {d}\nsqrt(d) = [{}; ({})]\nperiod length: {}\n\n", cf.a0, period.join(", "), period.len());
            out.push_str(&table(&["index", "p", "q", "q^2-dp^2-1"], &rows));
            Ok(out)
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                rows.into_iter().map(|r| std::iter::once(d.to_string()).chain(r).collect()).collect();
            csv_text(&["d", "index", "p", "q", "residual"], &rows)
        }
        Format::Json => json_text(&PellJson {
            d: d.to_string(),
            a0: cf.a0.to_string(),
            period: cf.period.iter().map(Int::to_string).collect(),
            solutions: sols
                .iter()
                .map(|s| SolutionJson {
                    index: s.index(),
                    p: s.p().to_string(),
                    q: s.q().to_string(),
                    residual: s.residual(d).to_string(),
                })
                .collect(),
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Listing {
    Values,
    Pairs,
}

pub struct ExcView<'a> {
    pub report: &'a DegreeReport,
    pub config: &'a PipelineConfig,
    pub listing: Listing,
    pub trace: bool,
}

fn stage_rows(report: &DegreeReport) -> Vec<Vec<String>> {
    report
        .stages
        .iter()
        .enumerate()
        .map(|(i, s)| vec![i.to_string(), s.filter.name().to_string(), s.pair_count.to_string(), s.value_count.to_string()])
        .collect()
}

fn sorted_pairs(report: &DegreeReport) -> Vec<&CandidatePair> {
    let mut pairs: Vec<&CandidatePair> = report.final_pairs.iter().collect();
    pairs.sort_by(|x, y| value_cmp(x, y));
    pairs
}

/// Stage counts as plain lines, used on stderr alongside CSV output.
pub fn stage_summary(report: &DegreeReport) -> String {
    table(&["stage", "filter", "pairs", "values"], &stage_rows(report))
}

pub fn exc(view: &ExcView<'_>, format: Format) -> Result<String, CliError> {
    let r = view.report;
    let value_rows = || -> Vec<Vec<String>> {
        r.final_values.iter().map(|v| vec![v.to_string(), v.to_decimal(DIGITS)]).collect()
    };
    let pair_rows = || -> Vec<Vec<String>> {
        sorted_pairs(r)
            .into_iter()
            .map(|p| vec![p.a().to_string(), p.b().to_string(), p.value().to_string(), p.value().to_decimal(DIGITS)])
            .collect()
    };
    match format {
        Format::Json => report_to_json(r),
        Format::Csv => match view.listing {
            Listing::Values => {
                let rows: Vec<Vec<String>> = r
                    .final_values
                    .iter()
                    .map(|v| vec![v.to_string(), v.num().to_string(), v.den().to_string(), v.to_decimal(DIGITS)])
                    .collect();
                csv_text(&["value", "num", "den", "decimal"], &rows)
            }
            Listing::Pairs => csv_text(&["a", "b", "value", "decimal"], &pair_rows()),
        },
        Format::Table => {
            let c = view.config;
            let filters: Vec<&str> = c.filters.iter().map(|f| f.name()).collect();
            let mut out = format!("d: {}\n", r.d);
            if let (Some(s), Some(b)) = (&r.solution, &r.bound) {
                out += &format!("solution #{}: (p, q) = ({}, {})\n", s.index(), s.p(), s.q());
                out += &format!("bound: {b} ({} approx.)\n", b.to_decimal(DIGITS));
            }
            out += &format!("status: {}\n", r.conjecture_status);
            out += &format!(
                "filters: {} (rho1: {}, gon-min: {}, strict-lower: {}, include-conditional: {})\n\n",
                filters.join(", "),
                yes_no(c.rho1),
                c.gon_min,
                yes_no(c.strict_lower),
                yes_no(c.include_conditional),
            );
            out += &stage_summary(r);
            match view.listing {
                Listing::Values => {
                    out += &format!("\nfinal values ({}):\n", r.final_values.len());
                    if !r.final_values.is_empty() {
                        out += &table(&["value", "decimal"], &value_rows());
                    }
                }
                Listing::Pairs => {
                    out += &format!("\nfinal pairs ({}):\n", r.final_pairs.len());
                    if !r.final_pairs.is_empty() {
                        out += &table(&["a", "b", "value", "decimal"], &pair_rows());
                    }
                }
            }
            if !r.conditional_values.is_empty() {
                let cond: Vec<String> = r.conditional_values.iter().map(Rat::to_string).collect();
                let kept = if c.include_conditional { "kept" } else { "dropped" };
                out += &format!("\nconditional values ({kept}): {}\n", cond.join(", "));
            }
            if view.trace {
                out += &format!("\ntrace ({}):\n", r.trace.len());
                let rows: Vec<Vec<String>> = r
                    .trace
                    .iter()
                    .map(|t| {
                        let subject = match &t.subject {
                            seshadri_core::excset::Subject::Pair(p) => p.to_string(),
                            seshadri_core::excset::Subject::Value(v) => v.to_string(),
                        };
                        vec![subject, t.verdict.name().to_string(), t.reason()]
                    })
                    .collect();
                if !rows.is_empty() {
                    out += &table(&["subject", "verdict", "reason"], &rows);
                }
            }
            Ok(out)
        }
    }
}

pub const SCAN_COLUMNS: [&str; 10] = [
    "d",
    "p0",
    "q0",
    "bound_num",
    "bound_den",
    "bound_decimal",
    "smooth_count",
    "pair_count",
    "final_value_count",
    "status",
];

#[derive(Serialize)]
struct ScanJson {
    d: u64,
    p0: Option<String>,
    q0: Option<String>,
    bound_num: Option<String>,
    bound_den: Option<String>,
    bound_decimal: Option<String>,
    smooth_count: Option<usize>,
    pair_count: Option<String>,
    final_value_count: Option<usize>,
    status: String,
}

fn scan_cells(row: &ScanRow) -> Vec<Option<String>> {
    let s = |x: Option<&Int>| x.map(Int::to_string);
    let n = |x: Option<usize>| x.map(|n| n.to_string());
    vec![
        Some(row.d.to_string()),
        s(row.p0.as_ref()),
        s(row.q0.as_ref()),
        s(row.bound.as_ref().map(Rat::num)),
        s(row.bound.as_ref().map(Rat::den)),
        row.bound.as_ref().map(|b| b.to_decimal(DIGITS)),
        n(row.smooth_count),
        s(row.pair_count.as_ref()),
        n(row.final_value_count),
        Some(row.status.name().to_string()),
    ]
}

pub fn scan(rows: &[ScanRow], format: Format) -> Result<String, CliError> {
    match format {
        Format::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| scan_cells(r).into_iter().map(|c| c.unwrap_or_else(|| "-".into())).collect())
                .collect();
            Ok(table(&SCAN_COLUMNS, &cells))
        }
        Format::Csv => {
            let cells: Vec<Vec<String>> =
                rows.iter().map(|r| scan_cells(r).into_iter().map(Option::unwrap_or_default).collect()).collect();
            csv_text(&SCAN_COLUMNS, &cells)
        }
        Format::Json => {
            let out: Vec<ScanJson> = rows
                .iter()
                .map(|r| {
                    let c = scan_cells(r);
                    ScanJson {
                        d: r.d,
                        p0: c[1].clone(),
                        q0: c[2].clone(),
                        bound_num: c[3].clone(),
                        bound_den: c[4].clone(),
                        bound_decimal: c[5].clone(),
                        smooth_count: r.smooth_count,
                        pair_count: c[7].clone(),
                        final_value_count: r.final_value_count,
                        status: r.status.name().to_string(),
                    }
                })
                .collect();
            json_text(&out)
        }
    }
}

#[derive(Serialize)]
struct AxisJson {
    name: &'static str,
    lo: String,
    hi: String,
}

#[derive(Serialize)]
struct CounterexampleJson {
    params: Vec<(&'static str, String)>,
    margin: String,
}

#[derive(Serialize)]
struct VerifyJson {
    claim: &'static str,
    axes: Vec<AxisJson>,
    cells: u64,
    min_margin: Option<String>,
    counterexamples: Vec<CounterexampleJson>,
    passed: bool,
}

fn pass_fail(r: &VerificationReport) -> &'static str {
    if r.passed() {
        "pass"
    } else {
        "fail"
    }
}

pub fn verify(r: &VerificationReport, format: Format) -> Result<String, CliError> {
    let min_margin = r.min_margin.as_ref().map(Int::to_string);
    match format {
        Format::Table => {
            let axes: Vec<String> = r.axes.iter().map(|a| format!("{} in [{}, {}]", a.name, a.lo, a.hi)).collect();
            let mut out = format!(
                "claim: {}\ngrid: {}\ncells: {}\nmin margin: {}\ncounterexamples: {}\nresult: {}\n",
                r.claim.name(),
                axes.join(", "),
                r.cells,
                min_margin.as_deref().unwrap_or("-"),
                r.counterexamples.len(),
                pass_fail(r),
            );
            for c in &r.counterexamples {
                let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out += &format!("  {} margin={}\n", params.join(" "), c.margin);
            }
            Ok(out)
        }
        Format::Csv => csv_text(
            &["claim", "cells", "min_margin", "counterexamples", "result"],
            &[vec![
                r.claim.name().to_string(),
                r.cells.to_string(),
                min_margin.unwrap_or_default(),
                r.counterexamples.len().to_string(),
                pass_fail(r).to_string(),
            ]],
        ),
        Format::Json => json_text(&VerifyJson {
            claim: r.claim.name(),
            axes: r.axes.iter().map(|a| AxisJson { name: a.name, lo: a.lo.to_string(), hi: a.hi.to_string() }).collect(),
            cells: r.cells,
            min_margin,
            counterexamples: r
                .counterexamples
                .iter()
                .map(|c| CounterexampleJson {
                    params: c.params.iter().map(|(k, v)| (*k, v.to_string())).collect(),
                    margin: c.margin.to_string(),
                })
                .collect(),
            passed: r.passed(),
        }),
    }
}

/// Everything `bound` prints.
pub struct BoundView {
    pub d: Int,
    pub solution: PellSolution,
    pub bound: Rat,
    /// `√d` rounded half-up to six places.
    pub sqrt_decimal: String,
    /// `d - bound^2`, which equals `d / q0^2`.
    pub gap: Rat,
}

#[derive(Serialize)]
struct BoundJson {
    d: String,
    p0: String,
    q0: String,
    bound: RatDto,
    bound_decimal: String,
    sqrt_d_decimal: String,
    below_sqrt_d: bool,
    d_minus_bound_squared: RatDto,
}

pub fn bound(v: &BoundView, format: Format) -> Result<String, CliError> {
    let below = v.gap > Rat::from_int(Int::from(0u32));
    let decimal = v.bound.to_decimal(DIGITS);
    match format {
        Format::Table => Ok(format!(
            "d: {}\n(p0, q0): ({}, {})\nbound: {} ({decimal} approx.)\nsqrt(d): {} approx.\nbound < sqrt(d): {}\nd - bound^2: {}\n",
            v.d,
            v.solution.p(),
            v.solution.q(),
            v.bound,
            v.sqrt_decimal,
            yes_no(below),
            v.gap,
        )),
        Format::Csv => csv_text(
            &["d", "p0", "q0", "bound_num", "bound_den", "bound_decimal", "sqrt_d_decimal", "below_sqrt_d"],
            &[vec![
                v.d.to_string(),
                v.solution.p().to_string(),
                v.solution.q().to_string(),
                v.bound.num().to_string(),
                v.bound.den().to_string(),
                decimal,
                v.sqrt_decimal.clone(),
                below.to_string(),
            ]],
        ),
        Format::Json => json_text(&BoundJson {
            d: v.d.to_string(),
            p0: v.solution.p().to_string(),
            q0: v.solution.q().to_string(),
            bound: (&v.bound).into(),
            bound_decimal: decimal,
            sqrt_d_decimal: v.sqrt_decimal.clone(),
            below_sqrt_d: below,
            d_minus_bound_squared: (&v.gap).into(),
        }),
    }
}
