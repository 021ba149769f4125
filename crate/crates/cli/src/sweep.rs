//! Parameter sweeps with a resumable checkpoint.
//!
//! Instances are visited in lexicographic order of `(n, k, a, b, c)`. After
//! every chunk the last completed tuple is written to the checkpoint file, so
//! an interrupted sweep restarts after it. Tuples that fail validation
//! (`a = 0`, `c = 0`, degree out of range) are counted but not checked.

use std::path::Path;

use monogen::dedekind::Aggregate;
use monogen::families::{monogenicity_check_with, FamilyParams, MonogenicityReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::args::{Common, SweepArgs};
use crate::{check_options, report_text, Failure, Outcome, SCHEMA};

const CHUNK: usize = 256;

type Tuple = [i64; 5];

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    schema: u32,
    last_completed: Tuple,
}

#[derive(Default, Serialize)]
struct Summary {
    total: u64,
    monogenic: u64,
    not_monogenic: u64,
    unknown: u64,
    invalid: u64,
    resumed_after: Option<Tuple>,
}

fn tuples(s: &SweepArgs) -> Vec<Tuple> {
    let mut out = Vec::new();
    for n in s.n.0.clone() {
        for k in s.k.0.clone() {
            for a in s.a.0.clone() {
                for b in s.b.0.clone() {
                    for c in s.c.0.clone() {
                        out.push([n, k, a, b, c]);
                    }
                }
            }
        }
    }
    out
}

fn params(s: &SweepArgs, t: &Tuple) -> Option<FamilyParams> {
    let n = u32::try_from(t[0]).ok()?;
    let k = u32::try_from(t[1]).ok()?;
    let build = if s.relaxed { FamilyParams::relaxed } else { FamilyParams::new };
    build(s.family.into(), n, k, t[2], t[3], t[4]).ok()
}

fn read_checkpoint(path: &Path) -> Result<Option<Tuple>, Failure> {
    match std::fs::read_to_string(path) {
        Ok(text) => {
            let cp: Checkpoint = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("checkpoint {}: {e}", path.display())))?;
            if cp.schema != SCHEMA {
                return Err(Failure::Usage(format!("checkpoint schema {} unsupported", cp.schema)));
            }
            Ok(Some(cp.last_completed))
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(Failure::Internal(format!("{}: {e}", path.display()))),
    }
}

fn write_checkpoint(path: &Path, last: Tuple) -> Result<(), Failure> {
    let cp = Checkpoint { schema: SCHEMA, last_completed: last };
    let text = serde_json::to_string(&cp).map_err(|e| Failure::Internal(e.to_string()))?;
    // Write then rename, so an interrupted write never corrupts the cursor.
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, text)
        .and_then(|_| std::fs::rename(&tmp, path))
        .map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))
}

pub fn run(s: &SweepArgs, common: &Common) -> Result<Outcome, Failure> {
    let resumed_after = match &s.resume {
        Some(path) => read_checkpoint(path)?,
        None => None,
    };
    let pending: Vec<Tuple> = tuples(s).into_iter().filter(|t| resumed_after.is_none_or(|last| *t > last)).collect();
    let opts = check_options(common);
    let mut summary = Summary { resumed_after, ..Summary::default() };
    let mut reports: Vec<MonogenicityReport> = Vec::new();
    for chunk in pending.chunks(CHUNK) {
        let done: Vec<Option<MonogenicityReport>> = chunk
            .par_iter()
            .map(|t| params(s, t).map(|p| monogenicity_check_with(&p, &opts)))
            .collect();
        for r in done {
            match r {
                None => summary.invalid += 1,
                Some(r) => {
                    summary.total += 1;
                    match r.aggregate {
                        Aggregate::Monogenic => summary.monogenic += 1,
                        Aggregate::NotMonogenic { .. } => summary.not_monogenic += 1,
                        Aggregate::Unknown { .. } => summary.unknown += 1,
                    }
                    reports.push(r);
                }
            }
        }
        if let (Some(path), Some(last)) = (&s.resume, chunk.last()) {
            write_checkpoint(path, *last)?;
        }
        eprintln!("sweep: {} of {} instances done", summary.total + summary.invalid, pending.len());
    }
    let mut text: String = reports.iter().map(report_text).collect();
    text.push_str(&format!(
        "total {}: monogenic {}, not monogenic {}, unknown {}, invalid {}\n",
        summary.total, summary.monogenic, summary.not_monogenic, summary.unknown, summary.invalid
    ));
    let result = json!({ "reports": reports, "summary": summary });
    Ok(Outcome { result, text, code: 0 })
}
