//! Unconditional census over the grid `b in {l, 2l, ...} <= B`, `1 <= c <= C`.
//!
//! Each pair is tested twice: by the squarefree criterion, and by the full
//! monogenicity pipeline for both `f1` and `F`. The criterion is sufficient,
//! so every accepted pair must be monogenic; a contradiction is an error.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::DensityConfig;
use crate::dedekind::Aggregate;
use crate::error::{Error, Result};
use crate::families::{
    monogenicity_check_with, squarefree_criterion_check_with_budget, CheckOptions, CriterionOutcome, Family,
    FamilyParams, Mode,
};
use crate::intarith::FactorBudget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusOptions {
    /// Pairs beyond this many are not evaluated and the report is flagged.
    pub max_pairs: u64,
    pub budget: FactorBudget,
    pub mode: Mode,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { max_pairs: 100_000, budget: FactorBudget::default(), mode: Mode::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Monogenic,
    NotMonogenic,
    Unknown,
}

impl From<&Aggregate> for Verdict {
    fn from(a: &Aggregate) -> Self {
        match a {
            Aggregate::Monogenic => Verdict::Monogenic,
            Aggregate::NotMonogenic { .. } => Verdict::NotMonogenic,
            Aggregate::Unknown { .. } => Verdict::Unknown,
        }
    }
}

/// One evaluated pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub b: u64,
    pub c: u64,
    /// `satisfied`, `not_satisfied` or `unknown`.
    pub criterion: &'static str,
    pub base: Verdict,
    pub composed: Verdict,
    /// Discriminant of `F` as `p^e * q^f ...`, or empty when unavailable.
    pub disc_factors: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub config: DensityConfig,
    pub options: CensusOptions,
    pub pairs_total: u64,
    pub pairs_evaluated: u64,
    pub truncated: bool,
    pub criterion_satisfied: u64,
    pub criterion_unknown: u64,
    pub monogenic_both: u64,
    /// Pairs where either pipeline run was `Unknown`.
    pub pipeline_unknown: u64,
    /// Pairs counted by either tally.
    pub witnesses: Vec<CensusRow>,
}

impl CensusReport {
    /// Witness rows as CSV with a header line.
    pub fn witnesses_csv(&self) -> String {
        let mut out = String::from("b,c,criterion,base,composed,disc_factors\n");
        for r in &self.witnesses {
            let label = |v: Verdict| serde_json::to_value(v).ok().and_then(|j| j.as_str().map(str::to_owned)).unwrap_or_default();
            out.push_str(&format!("{},{},{},{},{},{}\n", r.b, r.c, r.criterion, label(r.base), label(r.composed), r.disc_factors));
        }
        out
    }
}

fn factor_summary(report: &crate::families::MonogenicityReport) -> String {
    report
        .disc_factors
        .as_ref()
        .map(|f| {
            let mut parts: Vec<String> = f.primes.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect();
            parts.extend(f.unfactored.iter().map(|(q, e)| format!("({q})^{e}")));
            parts.join("*")
        })
        .unwrap_or_default()
}

fn params(cfg: &DensityConfig, k: u32, b: u64, c: u64) -> Result<FamilyParams> {
    let to_i64 = |v: u64| i64::try_from(v).map_err(|_| Error::InvalidParams(format!("{v} exceeds i64")));
    FamilyParams::relaxed(Family::F1, cfg.n(), k, cfg.a(), to_i64(b)?, to_i64(c)?)
}

fn evaluate(cfg: &DensityConfig, opts: &CensusOptions, b: u64, c: u64, base: Verdict) -> Result<CensusRow> {
    let q = params(cfg, cfg.k(), b, c)?;
    let criterion = match squarefree_criterion_check_with_budget(&q, Some(cfg.ell()), &opts.budget)? {
        CriterionOutcome::Satisfied { .. } => "satisfied",
        CriterionOutcome::NotSatisfied { .. } => "not_satisfied",
        CriterionOutcome::Unknown { .. } => "unknown",
    };
    let check = CheckOptions { mode: opts.mode, budget: opts.budget };
    let report = monogenicity_check_with(&q, &check);
    let composed = Verdict::from(&report.aggregate);
    if criterion == "satisfied" && (composed == Verdict::NotMonogenic || base == Verdict::NotMonogenic) {
        return Err(Error::Internal(format!("criterion accepted {q} but the pipeline rejects it")));
    }
    Ok(CensusRow { b, c, criterion, base, composed, disc_factors: factor_summary(&report) })
}

/// Runs the census. Rows are produced in `(b, c)` order whatever the
/// degree of parallelism.
pub fn empirical_census(cfg: &DensityConfig, opts: &CensusOptions) -> Result<CensusReport> {
    let ell = cfg.ell();
    let bs: Vec<u64> = (1..=cfg.b_max() / ell).map(|m| m * ell).collect();
    let pairs_total = bs.len() as u64 * cfg.c_max();
    let limit = pairs_total.min(opts.max_pairs);
    let grid: Vec<(u64, u64)> =
        bs.iter().flat_map(|&b| (1..=cfg.c_max()).map(move |c| (b, c))).take(limit as usize).collect();

    // The base polynomial f1 depends on c only.
    let check = CheckOptions { mode: opts.mode, budget: opts.budget };
    let c_used = grid.iter().map(|&(_, c)| c).max().unwrap_or(0);
    let base: Vec<Verdict> = (1..=c_used)
        .into_par_iter()
        .map(|c| Ok(Verdict::from(&monogenicity_check_with(&params(cfg, 1, 0, c)?, &check).aggregate)))
        .collect::<Result<_>>()?;
    let rows: Vec<CensusRow> = grid
        .par_iter()
        .map(|&(b, c)| evaluate(cfg, opts, b, c, base[(c - 1) as usize]))
        .collect::<Result<_>>()?;

    let mut tally: BTreeMap<&str, u64> = BTreeMap::new();
    for r in &rows {
        *tally.entry(r.criterion).or_default() += 1;
    }
    let both = |r: &CensusRow| r.base == Verdict::Monogenic && r.composed == Verdict::Monogenic;
    let monogenic_both = rows.iter().filter(|r| both(r)).count() as u64;
    let pipeline_unknown =
        rows.iter().filter(|r| r.base == Verdict::Unknown || r.composed == Verdict::Unknown).count() as u64;
    let witnesses = rows.into_iter().filter(|r| both(r) || r.criterion == "satisfied").collect();
    Ok(CensusReport {
        config: *cfg,
        options: *opts,
        pairs_total,
        pairs_evaluated: limit,
        truncated: limit < pairs_total,
        criterion_satisfied: tally.get("satisfied").copied().unwrap_or(0),
        criterion_unknown: tally.get("unknown").copied().unwrap_or(0),
        monogenic_both,
        pipeline_unknown,
        witnesses,
    })
}
