mod args;
mod sweep;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use monogen::analytic::{density_lower_bound, empirical_census, CensusOptions, DensityConfig};
use monogen::dedekind::{dedekind_test, index_free_at_all_disc_primes, Aggregate};
use monogen::families::{
    build_composed, disc_closed, disc_of_composition, factor_disc_closed, monogenicity_check_with,
    squarefree_criterion_check_with_budget, CheckOptions, CriterionOutcome, FamilyParams, MonogenicityReport,
};
use monogen::intarith::{factor_bounded, FactorBudget};
use monogen::zx::discriminant;
use monogen::IntPoly;
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use args::{Cli, Command, Common, Instance, Output};

pub const SCHEMA: u32 = 1;

/// Exit statuses beyond the verdict codes 0, 1, 2.
pub const EXIT_TRUNCATED: u8 = 3;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_INTERNAL: u8 = 70;

/// A finished command: the JSON result, its text rendering and exit status.
pub struct Outcome {
    pub result: Value,
    pub text: String,
    pub code: u8,
}

/// A failure that aborts the command.
pub enum Failure {
    Usage(String),
    Internal(String),
}

impl From<monogen::Error> for Failure {
    fn from(e: monogen::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub fn budget(common: &Common) -> FactorBudget {
    FactorBudget { trial_bound: common.trial_bound, rho_budget: common.rho_budget }
}

pub fn check_options(common: &Common) -> CheckOptions {
    CheckOptions { mode: common.mode.into(), budget: budget(common) }
}

pub fn instance_params(i: &Instance) -> Result<FamilyParams, Failure> {
    let build = if i.relaxed { FamilyParams::relaxed } else { FamilyParams::new };
    Ok(build(i.family.into(), i.n, i.k, i.a, i.b, i.c)?)
}

pub fn aggregate_code(a: &Aggregate) -> u8 {
    match a {
        Aggregate::Monogenic => 0,
        Aggregate::NotMonogenic { .. } => 1,
        Aggregate::Unknown { .. } => 2,
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::Internal(e.to_string()))
}

pub fn aggregate_text(a: &Aggregate) -> String {
    match a {
        Aggregate::Monogenic => "monogenic".into(),
        Aggregate::NotMonogenic { prime } => format!("not monogenic ({prime} divides the index)"),
        Aggregate::Unknown { reason } => format!("unknown ({reason})"),
    }
}

pub fn report_text(r: &MonogenicityReport) -> String {
    let mut out = format!("{}\n  F = {}\n", r.params, r.polynomial);
    if let Some(d) = &r.disc_resultant {
        out.push_str(&format!("  disc = {d}\n"));
    }
    for p in &r.per_prime {
        let how = match (&p.case, p.decided_by) {
            (Some(c), monogen::families::DecidedBy::Case) => c.case_id.to_string(),
            (_, d) => serde_json::to_value(d).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default(),
        };
        out.push_str(&format!("  p = {} (v = {}): {:?} via {how}\n", p.prime, p.disc_valuation, p.verdict));
    }
    for e in &r.errors {
        out.push_str(&format!("  error: {e}\n"));
    }
    out.push_str(&format!("  verdict: {}\n", aggregate_text(&r.aggregate)));
    out
}

fn cmd_check(i: &Instance, common: &Common) -> Result<Outcome, Failure> {
    let params = instance_params(i)?;
    let report = monogenicity_check_with(&params, &check_options(common));
    Ok(Outcome { result: to_value(&report)?, text: report_text(&report), code: aggregate_code(&report.aggregate) })
}

fn cmd_disc(i: &Instance, common: &Common) -> Result<Outcome, Failure> {
    let params = instance_params(i)?;
    let f = build_composed(&params);
    let by_resultant = discriminant(&f)?;
    let inner = IntPoly::binomial(params.k() as usize, BigInt::from(params.b()));
    let by_composition = disc_of_composition(&params.outer(), &inner)?;
    let closed = disc_closed(&params);
    let factors = factor_bounded(&by_resultant, &budget(common))?;
    let closed_factors = closed.as_ref().ok().and_then(|_| factor_disc_closed(&params, &budget(common)).ok());
    let result = json!({
        "params": params,
        "polynomial": f.to_string(),
        "closed_form": closed.as_ref().ok().map(ToString::to_string),
        "closed_form_error": closed.as_ref().err().map(ToString::to_string),
        "resultant": by_resultant.to_string(),
        "composition": by_composition.to_string(),
        "factors": factors,
        "closed_form_factors": closed_factors,
    });
    let agree = closed.as_ref().map_or(true, |c| *c == by_resultant) && by_composition == by_resultant;
    let text = format!(
        "{params}\n  F = {f}\n  closed form: {}\n  resultant: {by_resultant}\n  composition: {by_composition}\n",
        closed.as_ref().map_or_else(|e| format!("unavailable ({e})"), ToString::to_string)
    );
    Ok(Outcome { result, text, code: if agree { 0 } else { EXIT_INTERNAL } })
}

fn cmd_dedekind(d: &args::DedekindArgs, common: &Common) -> Result<Outcome, Failure> {
    let f = match &d.poly {
        Some(s) => s.parse::<IntPoly>()?,
        None => {
            let missing = || Failure::Usage("give --poly or --n, --a and --c".into());
            let i = Instance {
                family: d.family,
                n: d.n.ok_or_else(missing)?,
                k: d.k,
                a: d.a.ok_or_else(missing)?,
                b: d.b,
                c: d.c.ok_or_else(missing)?,
                relaxed: d.relaxed,
            };
            build_composed(&instance_params(&i)?)
        }
    };
    if !d.primes.is_empty() {
        let traces = d.primes.iter().map(|&p| dedekind_test(&f, p)).collect::<Result<Vec<_>, _>>()?;
        let text = traces.iter().map(|t| format!("p = {}: {:?}\n", t.prime, t.verdict)).collect::<String>();
        return Ok(Outcome { result: json!({ "polynomial": f.to_string(), "traces": traces }), text, code: 0 });
    }
    let disc = discriminant(&f)?;
    let factors = factor_bounded(&disc, &budget(common))?;
    let primes: Vec<u64> = factors.word_primes().unwrap_or_default();
    if !factors.is_complete() || primes.len() != factors.primes.len() {
        let traces = factors
            .primes
            .iter()
            .filter(|(_, e)| *e >= 2)
            .filter_map(|(p, _)| u64::try_from(p).ok())
            .map(|p| dedekind_test(&f, p))
            .collect::<Result<Vec<_>, _>>()?;
        let aggregate = Aggregate::Unknown { reason: "discriminant not completely factored".into() };
        let text = format!("{f}\n  verdict: {}\n", aggregate_text(&aggregate));
        let result = json!({ "polynomial": f.to_string(), "factors": factors, "traces": traces, "aggregate": aggregate });
        return Ok(Outcome { result, text, code: 2 });
    }
    let report = index_free_at_all_disc_primes(&f, &primes)?;
    let mut text = format!("{f}\n  disc = {}\n", report.discriminant);
    for r in &report.per_prime {
        text.push_str(&format!("  p = {} (v = {}): {:?}\n", r.prime, r.disc_valuation, r.verdict));
    }
    text.push_str(&format!("  verdict: {}\n", aggregate_text(&report.aggregate)));
    let code = aggregate_code(&report.aggregate);
    Ok(Outcome { result: json!({ "polynomial": f.to_string(), "report": report }), text, code })
}

fn cmd_corollary(c: &args::CorollaryArgs, common: &Common) -> Result<Outcome, Failure> {
    let params = instance_params(&c.instance)?;
    let outcome = squarefree_criterion_check_with_budget(&params, c.ell, &budget(common))?;
    let (code, text) = match &outcome {
        CriterionOutcome::Satisfied { witness } => (
            0,
            format!(
                "satisfied: Eisenstein at {}, f(b) = {}, bracket = {} (reduced {})\n",
                witness.eisenstein_prime, witness.f_at_b, witness.bracket, witness.reduced_bracket
            ),
        ),
        CriterionOutcome::NotSatisfied { clause, detail } => (1, format!("not satisfied: {clause:?}: {detail}\n")),
        CriterionOutcome::Unknown { clause, .. } => (2, format!("unknown: {clause:?} undecided within budget\n")),
    };
    Ok(Outcome { result: json!({ "params": params, "outcome": outcome }), text: format!("{params}\n  {text}"), code })
}

fn cmd_census(c: &args::CensusArgs, common: &Common) -> Result<Outcome, Failure> {
    let build = if c.relaxed { DensityConfig::relaxed } else { DensityConfig::new };
    let cfg = build(c.n, c.k, c.a, c.ell, c.b_max, c.c_max, c.prime_cut)?;
    let opts = CensusOptions { max_pairs: c.max_pairs, budget: budget(common), mode: common.mode.into() };
    let bound = density_lower_bound(&cfg)?;
    let census = empirical_census(&cfg, &opts).map_err(|e| Failure::Internal(e.to_string()))?;
    if let Some(path) = &c.csv {
        std::fs::write(path, census.witnesses_csv()).map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))?;
    }
    let text = format!(
        "pairs: {} of {} evaluated{}\n  criterion satisfied: {} (unknown {})\n  monogenic (f1 and F): {} (unknown {})\n  lower bound: {} (truncation interval from {})\n",
        census.pairs_evaluated,
        census.pairs_total,
        if census.truncated { ", truncated" } else { "" },
        census.criterion_satisfied,
        census.criterion_unknown,
        census.monogenic_both,
        census.pipeline_unknown,
        bound.value,
        bound.value_lower,
    );
    let code = if census.truncated { EXIT_TRUNCATED } else { 0 };
    Ok(Outcome { result: json!({ "census": census, "bound": bound }), text, code })
}

fn cmd_selftest(common: &Common) -> Result<Outcome, Failure> {
    use monogen::families::Family;
    let opts = check_options(common);
    let monogenic = |fam, n, k, a, b, c| {
        FamilyParams::relaxed(fam, n, k, a, b, c)
            .map(|p| monogenicity_check_with(&p, &opts).aggregate == Aggregate::Monogenic)
            .unwrap_or(false)
    };
    let disc_is = |fam, n, k, a, b, c, want: i64| {
        FamilyParams::new(fam, n, k, a, b, c)
            .and_then(|p| discriminant(&build_composed(&p)))
            .is_ok_and(|d| d == BigInt::from(want))
    };
    let divides = |s: &str, p| {
        s.parse::<IntPoly>().and_then(|f| dedekind_test(&f, p)).is_ok_and(|t| t.offending_factors.len() == 1)
    };
    let checks: Vec<(&str, bool)> = vec![
        ("f1 (3,2,1,2,2) monogenic", monogenic(Family::F1, 3, 2, 1, 2, 2)),
        ("f2 (3,2,1,1,2) monogenic", monogenic(Family::F2, 3, 2, 1, 1, 2)),
        ("f1 (2,2,1,30,30) monogenic", monogenic(Family::F1, 2, 2, 1, 30, 30)),
        ("f1 (3,2,1,2,2) discriminant", disc_is(Family::F1, 3, 2, 1, 2, 2, -2_725_888)),
        ("f2 (3,2,1,1,2) discriminant", disc_is(Family::F2, 3, 2, 1, 1, 2, -867_328)),
        ("x^2 - 5 at 2 divides the index", divides("x^2 - 5", 2)),
        ("x^2 + 1 at 2 is index-free", !divides("x^2 + 1", 2)),
    ];
    let passed = checks.iter().all(|(_, ok)| *ok);
    let text = checks.iter().map(|(name, ok)| format!("{} {name}\n", if *ok { "PASS" } else { "FAIL" })).collect();
    let result = json!({
        "checks": checks.iter().map(|(name, ok)| json!({ "name": name, "pass": ok })).collect::<Vec<_>>(),
        "passed": passed,
    });
    Ok(Outcome { result, text, code: if passed { 0 } else { 1 } })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check(_) => "check",
        Command::Disc(_) => "disc",
        Command::Dedekind(_) => "dedekind",
        Command::Corollary(_) => "corollary",
        Command::Sweep(_) => "sweep",
        Command::Census(_) => "census",
        Command::Selftest => "selftest",
    }
}

fn command_config(c: &Command) -> Value {
    let v = match c {
        Command::Check(i) | Command::Disc(i) => serde_json::to_value(i),
        Command::Dedekind(d) => serde_json::to_value(d),
        Command::Corollary(x) => serde_json::to_value(x),
        Command::Sweep(s) => serde_json::to_value(s),
        Command::Census(x) => serde_json::to_value(x),
        Command::Selftest => Ok(json!({})),
    };
    v.unwrap_or(Value::Null)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let common = &cli.common;
    let outcome = match &cli.command {
        Command::Check(i) => cmd_check(i, common),
        Command::Disc(i) => cmd_disc(i, common),
        Command::Dedekind(d) => cmd_dedekind(d, common),
        Command::Corollary(c) => cmd_corollary(c, common),
        Command::Sweep(s) => sweep::run(s, common),
        Command::Census(c) => cmd_census(c, common),
        Command::Selftest => cmd_selftest(common),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `monogen {} --help` for usage", command_name(&cli.command));
            return ExitCode::from(EXIT_USAGE);
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    };
    let mut stdout = std::io::stdout().lock();
    let written = match common.output {
        Output::Json => {
            let doc = json!({
                "schema": SCHEMA,
                "command": command_name(&cli.command),
                "config": { "common": common, "args": command_config(&cli.command) },
                "result": outcome.result,
            });
            serde_json::to_writer_pretty(&mut stdout, &doc).map_err(std::io::Error::from).and_then(|_| writeln!(stdout))
        }
        Output::Text => stdout.write_all(outcome.text.as_bytes()),
    };
    if written.is_err() {
        return ExitCode::from(EXIT_INTERNAL);
    }
    ExitCode::from(outcome.code)
}
