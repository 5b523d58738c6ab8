use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use super::filters::{
    filter_fibration, filter_gino, filter_hodge_xu, filter_rationality, filter_rho1_divisibility,
    filter_xu, FilterId, Note, Outcome, Verdict,
};
use super::{enumerate_pairs, enumeration_work, smooth_values, CandidatePair};
use crate::analysis::{classify_d, Pattern};
use crate::arith::{is_square, Int, Rat};
use crate::pell::PellSolution;
use crate::Error;

/// How much of each stage a report retains.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Detail {
    /// Every stage keeps its surviving pairs and values; every elimination
    /// is traced.
    #[default]
    Full,
    /// Only counts per stage, the final survivors and the value sets of the
    /// filtered stages. No trace. Memory stays proportional to the survivors
    /// of the first filter instead of the raw enumeration.
    Summary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    /// Applied in order after enumeration. `range` entries are no-ops: the
    /// enumeration itself is the range stage.
    pub filters: Vec<FilterId>,
    /// Picard number one.
    pub rho1: bool,
    pub gon_min: Int,
    /// Skip pairs with `a = b`.
    pub strict_lower: bool,
    /// Keep values that survive only through a fibration.
    pub include_conditional: bool,
    /// Abort once enumeration has visited this many rows plus pairs.
    pub budget: Option<u64>,
    pub detail: Detail,
}

impl Default for PipelineConfig {
    fn default() -> PipelineConfig {
        PipelineConfig {
            filters: alloc::vec![FilterId::Range],
            rho1: false,
            gon_min: Int::from(1u32),
            strict_lower: false,
            include_conditional: false,
            budget: None,
            detail: Detail::Full,
        }
    }
}

impl PipelineConfig {
    pub fn with_filters(filters: &[FilterId]) -> PipelineConfig {
        PipelineConfig { filters: filters.to_vec(), ..PipelineConfig::default() }
    }

    pub fn rho1(filters: &[FilterId]) -> PipelineConfig {
        PipelineConfig { rho1: true, ..PipelineConfig::with_filters(filters) }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.gon_min < Int::from(1u32) {
            return Err(Error::InvalidGonality(self.gon_min.clone()));
        }
        if !self.rho1 {
            if let Some(f) = self.filters.iter().find(|f| f.requires_rho1()) {
                return Err(Error::FilterRequiresRho1(f.name()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Subject {
    Pair(CandidatePair),
    Value(Rat),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Pair(p) => write!(f, "{p}"),
            Subject::Value(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterTrace {
    pub subject: Subject,
    pub filter: FilterId,
    pub verdict: Verdict,
    pub note: Option<Note>,
}

impl FilterTrace {
    pub fn reason(&self) -> String {
        match &self.note {
            Some(note) => alloc::format!("[{}] {}; {}", self.filter, self.filter.citation(), note),
            None => alloc::format!("[{}] {}", self.filter, self.filter.citation()),
        }
    }
}

/// Survivors after one filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub filter: FilterId,
    pub pair_count: usize,
    /// Distinct values among surviving pairs and smooth values.
    pub value_count: usize,
    /// Surviving pairs in enumeration order. With [`Detail::Summary`] only
    /// the last stage keeps them.
    pub pairs: Vec<CandidatePair>,
    /// Surviving values. With [`Detail::Summary`] empty for the range stage.
    pub values: BTreeSet<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConjectureStatus {
    HoldsByTheoremP0One,
    HoldsByTheoremP0Two,
    OpenWithExceptions,
    NotApplicableSquareD,
}

impl ConjectureStatus {
    pub const ALL: [ConjectureStatus; 4] = [
        ConjectureStatus::HoldsByTheoremP0One,
        ConjectureStatus::HoldsByTheoremP0Two,
        ConjectureStatus::OpenWithExceptions,
        ConjectureStatus::NotApplicableSquareD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConjectureStatus::HoldsByTheoremP0One => "holds-by-theorem-p0-1",
            ConjectureStatus::HoldsByTheoremP0Two => "holds-by-theorem-p0-2",
            ConjectureStatus::OpenWithExceptions => "open-with-exceptions",
            ConjectureStatus::NotApplicableSquareD => "not-applicable-square-d",
        }
    }

    pub fn from_name(s: &str) -> Option<ConjectureStatus> {
        ConjectureStatus::ALL.into_iter().find(|c| c.name() == s)
    }

    pub fn for_degree(d: &Int) -> ConjectureStatus {
        match classify_d(d) {
            Ok(class) if !class.square => match class.pattern {
                Pattern::NSquaredMinusOne(_) => ConjectureStatus::HoldsByTheoremP0One,
                Pattern::NSquaredPlusN(_) => ConjectureStatus::HoldsByTheoremP0Two,
                Pattern::Other => ConjectureStatus::OpenWithExceptions,
            },
            _ => ConjectureStatus::NotApplicableSquareD,
        }
    }
}

impl fmt::Display for ConjectureStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub d: Int,
    /// `None` only for square `d`.
    pub solution: Option<PellSolution>,
    /// `p d / q`; `None` only for square `d`.
    pub bound: Option<Rat>,
    /// Smooth values entering the pipeline (empty in Picard-number-one mode).
    pub smooth_values: BTreeSet<Int>,
    /// `stages[0]` is the raw enumeration.
    pub stages: Vec<Stage>,
    pub final_values: BTreeSet<Rat>,
    pub final_pairs: Vec<CandidatePair>,
    /// Values that received a conditional verdict, whether or not retained.
    pub conditional_values: BTreeSet<Rat>,
    /// Every elimination and every conditional verdict, in pipeline order.
    pub trace: Vec<FilterTrace>,
    pub conjecture_status: ConjectureStatus,
}

impl DegreeReport {
    fn square(d: &Int) -> DegreeReport {
        DegreeReport {
            d: d.clone(),
            solution: None,
            bound: None,
            smooth_values: BTreeSet::new(),
            stages: Vec::new(),
            final_values: BTreeSet::new(),
            final_pairs: Vec::new(),
            conditional_values: BTreeSet::new(),
            trace: Vec::new(),
            conjecture_status: ConjectureStatus::NotApplicableSquareD,
        }
    }

    /// Number of raw pairs produced by enumeration.
    pub fn pair_count(&self) -> usize {
        self.stages.first().map_or(0, |s| s.pair_count)
    }
}

struct StageAcc {
    filter: FilterId,
    keep_pairs: bool,
    keep_values: bool,
    pair_count: usize,
    pairs: Vec<CandidatePair>,
    values: BTreeSet<Rat>,
}

impl StageAcc {
    fn admit_pair(&mut self, pair: &CandidatePair, value: &Rat) {
        self.pair_count += 1;
        if self.keep_pairs {
            self.pairs.push(pair.clone());
        }
        if self.keep_values {
            self.values.insert(value.clone());
        }
    }

    fn admit_value(&mut self, value: &Rat) {
        if self.keep_values {
            self.values.insert(value.clone());
        }
    }
}

struct Run<'a> {
    d: &'a Int,
    config: &'a PipelineConfig,
    filters: Vec<FilterId>,
    stages: Vec<StageAcc>,
    conditional: BTreeSet<Rat>,
    /// Values already traced by a value-level filter, keyed by stage.
    traced: BTreeSet<(usize, Rat)>,
    trace: Vec<FilterTrace>,
}

enum Step {
    Pass,
    Stop(Option<FilterTrace>),
}

impl Run<'_> {
    fn full(&self) -> bool {
        self.config.detail == Detail::Full
    }

    fn value_step(&mut self, idx: usize, filter: FilterId, value: &Rat) -> Result<Step, Error> {
        let verdict = filter_fibration(value, self.d, self.config.rho1)?;
        let stop = match verdict {
            Verdict::Kept => return Ok(Step::Pass),
            Verdict::Eliminated => true,
            Verdict::Conditional => {
                self.conditional.insert(value.clone());
                !self.config.include_conditional
            }
        };
        let trace = (self.full() && self.traced.insert((idx, value.clone()))).then(|| FilterTrace {
            subject: Subject::Value(value.clone()),
            filter,
            verdict,
            note: None,
        });
        if stop {
            Ok(Step::Stop(trace))
        } else {
            self.trace.extend(trace);
            Ok(Step::Pass)
        }
    }

    fn pair_outcome(&self, filter: FilterId, pair: &CandidatePair) -> Result<Outcome, Error> {
        let d = self.d;
        let plain = |verdict| Outcome { verdict, note: None };
        match filter {
            FilterId::Range | FilterId::Fibration => Ok(plain(Verdict::Kept)),
            FilterId::Gino => filter_gino(pair, d).map(plain),
            FilterId::HodgeXu => filter_hodge_xu(pair, d).map(plain),
            FilterId::Rho1Divisibility => filter_rho1_divisibility(pair, d),
            // Not a curve in |kL| at all; same conclusion as the divisibility filter.
            FilterId::XuMovingCurve | FilterId::Rationality if !pair.a().is_multiple_of(d) => {
                Ok(plain(Verdict::Eliminated))
            }
            FilterId::XuMovingCurve => filter_xu(pair, d, &self.config.gon_min),
            FilterId::Rationality => filter_rationality(pair, d),
        }
    }

    fn smooth(&mut self, v: &Int) -> Result<(), Error> {
        let value = Rat::from_int(v.clone());
        self.stages[0].admit_value(&value);
        for idx in 0..self.filters.len() {
            let filter = self.filters[idx];
            if filter.is_value_level() {
                if let Step::Stop(trace) = self.value_step(idx, filter, &value)? {
                    self.trace.extend(trace);
                    return Ok(());
                }
            }
            self.stages[idx + 1].admit_value(&value);
        }
        Ok(())
    }

    fn pair(&mut self, pair: CandidatePair) -> Result<(), Error> {
        let value = pair.value();
        self.stages[0].admit_pair(&pair, &value);
        for idx in 0..self.filters.len() {
            let filter = self.filters[idx];
            let step = if filter.is_value_level() {
                self.value_step(idx, filter, &value)?
            } else {
                let outcome = self.pair_outcome(filter, &pair)?;
                if outcome.verdict == Verdict::Kept {
                    Step::Pass
                } else {
                    Step::Stop(self.full().then(|| FilterTrace {
                        subject: Subject::Pair(pair.clone()),
                        filter,
                        verdict: outcome.verdict,
                        note: outcome.note,
                    }))
                }
            };
            if let Step::Stop(trace) = step {
                self.trace.extend(trace);
                return Ok(());
            }
            self.stages[idx + 1].admit_pair(&pair, &value);
        }
        Ok(())
    }
}

/// Distinct values of the raw enumeration without storing it.
///
/// Every non-integer value has its reduced pair in range, and an integer
/// value `v` is present iff `(2v, 2)` is, so the distinct values are counted
/// by the coprime pairs plus the pairs `(2v, 2)`.
#[derive(Default)]
struct DistinctCounter {
    count: usize,
    integers: BTreeSet<Int>,
}

impl DistinctCounter {
    fn observe(&mut self, pair: &CandidatePair) {
        let two = Int::from(2u32);
        if pair.b() == &two && pair.a().is_even() {
            self.count += 1;
            self.integers.insert(pair.a() / &two);
        } else if pair.a().gcd(pair.b()) == Int::from(1u32) {
            self.count += 1;
        }
    }
}

/// Enumerates the exceptional pairs for `solution` and sharpens them with
/// the configured filters.
///
/// Each pair passes through the filters in configuration order and stops at
/// the first one that rejects it. Value-level filters act on `a / b` and on
/// the smooth values.
pub fn run_pipeline(
    d: &Int,
    solution: &PellSolution,
    config: &PipelineConfig,
) -> Result<DegreeReport, Error> {
    config.validate()?;
    if is_square(d) {
        return Ok(DegreeReport::square(d));
    }
    let mut iter = enumerate_pairs(d, solution.p(), solution.q(), config.strict_lower)?;
    if let Some(budget) = config.budget {
        let work = enumeration_work(d, solution.p(), solution.q(), config.strict_lower)?;
        if work > Int::from(budget) {
            return Err(Error::BudgetExceeded { budget });
        }
    }

    // Smooth Seshadri curves need d = 1 under Picard number one.
    let smooth = if config.rho1 && d > &Int::from(1u32) {
        BTreeSet::new()
    } else {
        smooth_values(d)?
    };

    let full = config.detail == Detail::Full;
    let filters: Vec<FilterId> =
        config.filters.iter().copied().filter(|f| *f != FilterId::Range).collect();
    let last = filters.len();
    let stages = core::iter::once(FilterId::Range)
        .chain(filters.iter().copied())
        .enumerate()
        .map(|(i, filter)| StageAcc {
            filter,
            keep_pairs: full || i == last,
            keep_values: full || i > 0 || last == 0,
            pair_count: 0,
            pairs: Vec::new(),
            values: BTreeSet::new(),
        })
        .collect();
    let mut run = Run {
        d,
        config,
        filters,
        stages,
        conditional: BTreeSet::new(),
        traced: BTreeSet::new(),
        trace: Vec::new(),
    };

    for v in &smooth {
        run.smooth(v)?;
    }
    let mut distinct = DistinctCounter::default();
    while let Some(pair) = iter.next() {
        if let Some(budget) = config.budget {
            if iter.work() > budget {
                return Err(Error::BudgetExceeded { budget });
            }
        }
        distinct.observe(&pair);
        run.pair(pair)?;
    }

    let raw_values = distinct.count + smooth.iter().filter(|v| !distinct.integers.contains(*v)).count();
    let mut stages: Vec<Stage> = run
        .stages
        .into_iter()
        .enumerate()
        .map(|(i, acc)| Stage {
            filter: acc.filter,
            pair_count: acc.pair_count,
            value_count: if i == 0 { raw_values } else { acc.values.len() },
            pairs: acc.pairs,
            values: acc.values,
        })
        .collect();
    let final_stage = stages.last_mut().expect("range stage is always present");
    let final_values = final_stage.values.clone();
    let final_pairs = if full { final_stage.pairs.clone() } else { core::mem::take(&mut final_stage.pairs) };

    Ok(DegreeReport {
        d: d.clone(),
        solution: Some(solution.clone()),
        bound: Some(solution.bound(d)),
        smooth_values: smooth,
        stages,
        final_values,
        final_pairs,
        conditional_values: run.conditional,
        trace: run.trace,
        conjecture_status: ConjectureStatus::for_degree(d),
    })
}
