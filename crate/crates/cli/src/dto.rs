//! JSON shapes. Integers travel as decimal strings so they stay exact at any
//! size; rationals as `{"num": .., "den": ..}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use seshadri_core::excset::{Note, Stage, Subject};
use seshadri_core::{
    CandidatePair, ConjectureStatus, DegreeReport, FilterId, FilterTrace, Int, PellSolution, Rat, Verdict,
};

use crate::error::CliError;

fn bad(what: &str) -> CliError {
    CliError::Invalid(format!("malformed report: {what}"))
}

fn parse_int(s: &str) -> Result<Int, CliError> {
    s.parse::<Int>().map_err(|_| bad("integer"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatDto {
    pub num: String,
    pub den: String,
}

impl From<&Rat> for RatDto {
    fn from(r: &Rat) -> RatDto {
        RatDto { num: r.num().to_string(), den: r.den().to_string() }
    }
}

impl TryFrom<&RatDto> for Rat {
    type Error = CliError;

    fn try_from(r: &RatDto) -> Result<Rat, CliError> {
        Ok(Rat::new(parse_int(&r.num)?, parse_int(&r.den)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDto {
    pub a: String,
    pub b: String,
}

impl From<&CandidatePair> for PairDto {
    fn from(p: &CandidatePair) -> PairDto {
        PairDto { a: p.a().to_string(), b: p.b().to_string() }
    }
}

impl TryFrom<&PairDto> for CandidatePair {
    type Error = CliError;

    fn try_from(p: &PairDto) -> Result<CandidatePair, CliError> {
        Ok(CandidatePair::new(parse_int(&p.a)?, parse_int(&p.b)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDto {
    pub p: String,
    pub q: String,
    pub index: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageDto {
    pub filter: String,
    pub pair_count: usize,
    pub value_count: usize,
    pub pairs: Vec<PairDto>,
    pub values: Vec<RatDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubjectDto {
    Pair(PairDto),
    Value(RatDto),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoteDto {
    Quotient(String),
    MaxGonality(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDto {
    pub subject: SubjectDto,
    pub filter: String,
    pub verdict: String,
    pub note: Option<NoteDto>,
    pub reason: String,
}

/// Field names follow [`DegreeReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReportDto {
    pub d: String,
    pub solution: Option<SolutionDto>,
    pub bound: Option<RatDto>,
    pub smooth_values: Vec<String>,
    pub stages: Vec<StageDto>,
    pub final_values: Vec<RatDto>,
    pub final_pairs: Vec<PairDto>,
    pub conditional_values: Vec<RatDto>,
    pub trace: Vec<TraceDto>,
    pub conjecture_status: String,
}

fn rats<'a>(set: impl IntoIterator<Item = &'a Rat>) -> Vec<RatDto> {
    set.into_iter().map(RatDto::from).collect()
}

fn pairs<'a>(list: impl IntoIterator<Item = &'a CandidatePair>) -> Vec<PairDto> {
    list.into_iter().map(PairDto::from).collect()
}

impl From<&DegreeReport> for DegreeReportDto {
    fn from(r: &DegreeReport) -> DegreeReportDto {
        DegreeReportDto {
            d: r.d.to_string(),
            solution: r.solution.as_ref().map(|s| SolutionDto {
                p: s.p().to_string(),
                q: s.q().to_string(),
                index: s.index(),
            }),
            bound: r.bound.as_ref().map(RatDto::from),
            smooth_values: r.smooth_values.iter().map(Int::to_string).collect(),
            stages: r
                .stages
                .iter()
                .map(|s| StageDto {
                    filter: s.filter.name().to_string(),
                    pair_count: s.pair_count,
                    value_count: s.value_count,
                    pairs: pairs(&s.pairs),
                    values: rats(&s.values),
                })
                .collect(),
            final_values: rats(&r.final_values),
            final_pairs: pairs(&r.final_pairs),
            conditional_values: rats(&r.conditional_values),
            trace: r
                .trace
                .iter()
                .map(|t| TraceDto {
                    subject: match &t.subject {
                        Subject::Pair(p) => SubjectDto::Pair(p.into()),
                        Subject::Value(v) => SubjectDto::Value(v.into()),
                    },
                    filter: t.filter.name().to_string(),
                    verdict: t.verdict.name().to_string(),
                    note: t.note.as_ref().map(|n| match n {
                        Note::Quotient(k) => NoteDto::Quotient(k.to_string()),
                        Note::MaxGonality(g) => NoteDto::MaxGonality(g.to_string()),
                    }),
                    reason: t.reason(),
                })
                .collect(),
            conjecture_status: r.conjecture_status.name().to_string(),
        }
    }
}

fn filter_id(name: &str) -> Result<FilterId, CliError> {
    name.parse().map_err(|_| bad("filter"))
}

fn verdict(name: &str) -> Result<Verdict, CliError> {
    [Verdict::Eliminated, Verdict::Kept, Verdict::Conditional]
        .into_iter()
        .find(|v| v.name() == name)
        .ok_or_else(|| bad("verdict"))
}

fn rat_set(list: &[RatDto]) -> Result<BTreeSet<Rat>, CliError> {
    list.iter().map(Rat::try_from).collect()
}

fn pair_list(list: &[PairDto]) -> Result<Vec<CandidatePair>, CliError> {
    list.iter().map(CandidatePair::try_from).collect()
}

impl TryFrom<&DegreeReportDto> for DegreeReport {
    type Error = CliError;

    fn try_from(r: &DegreeReportDto) -> Result<DegreeReport, CliError> {
        let d = parse_int(&r.d)?;
        let solution = match &r.solution {
            Some(s) => Some(PellSolution::new(&d, parse_int(&s.p)?, parse_int(&s.q)?, s.index)?),
            None => None,
        };
        let stages = r
            .stages
            .iter()
            .map(|s| {
                Ok(Stage {
                    filter: filter_id(&s.filter)?,
                    pair_count: s.pair_count,
                    value_count: s.value_count,
                    pairs: pair_list(&s.pairs)?,
                    values: rat_set(&s.values)?,
                })
            })
            .collect::<Result<_, CliError>>()?;
        let trace = r
            .trace
            .iter()
            .map(|t| {
                Ok(FilterTrace {
                    subject: match &t.subject {
                        SubjectDto::Pair(p) => Subject::Pair(p.try_into()?),
                        SubjectDto::Value(v) => Subject::Value(v.try_into()?),
                    },
                    filter: filter_id(&t.filter)?,
                    verdict: verdict(&t.verdict)?,
                    note: match &t.note {
                        Some(NoteDto::Quotient(k)) => Some(Note::Quotient(parse_int(k)?)),
                        Some(NoteDto::MaxGonality(g)) => Some(Note::MaxGonality(parse_int(g)?)),
                        None => None,
                    },
                })
            })
            .collect::<Result<_, CliError>>()?;
        Ok(DegreeReport {
            d,
            solution,
            bound: r.bound.as_ref().map(Rat::try_from).transpose()?,
            smooth_values: r.smooth_values.iter().map(|s| parse_int(s)).collect::<Result<_, _>>()?,
            stages,
            final_values: rat_set(&r.final_values)?,
            final_pairs: pair_list(&r.final_pairs)?,
            conditional_values: rat_set(&r.conditional_values)?,
            trace,
            conjecture_status: ConjectureStatus::from_name(&r.conjecture_status)
                .ok_or_else(|| bad("conjecture_status"))?,
        })
    }
}

pub fn report_to_json(report: &DegreeReport) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(&DegreeReportDto::from(report))? + "\n")
}

pub fn report_from_json(text: &str) -> Result<DegreeReport, CliError> {
    let dto: DegreeReportDto = serde_json::from_str(text)?;
    DegreeReport::try_from(&dto)
}
