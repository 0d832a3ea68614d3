//! JSON and text reports. Taxon indices are 1-based here.

use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use decisive::bounds::BoundReport;
use decisive::emit::cnf::CnfFormula;
use decisive::emit::ilp::IlpModel;
use decisive::pipeline::{SubsetFailure, SubsetTrace};
use decisive::reduce::ReductionSummary;
use decisive::{Coloring, CoveragePattern, Error, Verdict};
use serde_json::{json, Map, Value};

use crate::Command;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

pub struct Outcome {
    pub exit_code: u8,
    pub body: Map<String, Value>,
    pub text: String,
}

pub struct Report<'a> {
    command: &'static str,
    outcome: &'a Outcome,
}

impl<'a> Report<'a> {
    pub fn new(command: &Command, outcome: &'a Outcome) -> Self {
        Report { command: command.name(), outcome }
    }
}

impl serde::Serialize for Report<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = Map::new();
        m.insert("tool".into(), json!("decisive"));
        m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        m.insert("command".into(), json!(self.command));
        m.insert("exit_code".into(), json!(self.outcome.exit_code));
        m.extend(self.outcome.body.clone());
        Value::Object(m).serialize(s)
    }
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("report bodies are objects"),
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn names(taxa: &[String], v: &[usize]) -> Vec<String> {
    v.iter().map(|&i| taxa[i].clone()).collect()
}

fn block_text(taxa: &[String], blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| format!("{{{}}}", names(taxa, b).join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn check(p: &CoveragePattern, v: &Verdict) -> Outcome {
    let witness = v.witness.as_ref();
    let body = json!({
        "n": p.n(),
        "k": p.k(),
        "decisive": v.decisive,
        "decided_by": v.decided_by.as_str(),
        "witness": witness.map(|w| w.iter().map(|b| one_based(b)).collect::<Vec<_>>()),
        "witness_names": witness.map(|w| w.iter().map(|b| names(p.taxa(), b)).collect::<Vec<_>>()),
        "timings": { "elapsed_ms": v.stats.elapsed.as_secs_f64() * 1e3 },
        "explored": v.stats.explored,
        "quadruple_bound_hit": v.stats.quadruple_bound_hit,
    });
    let mut text = format!(
        "{} (decided by {}, n={}, k={})\n",
        if v.decisive { "decisive" } else { "not decisive" },
        v.decided_by,
        p.n(),
        p.k()
    );
    if let Some(w) = witness {
        let _ = writeln!(text, "witness partition: {}", block_text(p.taxa(), w));
    }
    Outcome { exit_code: u8::from(!v.decisive), body: object(body), text }
}

pub fn coloring(
    kind: &str,
    taxa: &[String],
    r: u8,
    witness: Option<&Coloring>,
    rule: Option<&str>,
    explored: u64,
) -> Outcome {
    let classes = witness.map(|c| c.classes());
    let body = json!({
        "r": r,
        "found": witness.is_some(),
        "coloring": witness.map(|c| c.colors().to_vec()),
        "classes": classes.as_ref().map(|cs| cs.iter().map(|b| one_based(b)).collect::<Vec<_>>()),
        "class_names": classes.as_ref().map(|cs| cs.iter().map(|b| names(taxa, b)).collect::<Vec<_>>()),
        "rule": rule,
        "explored": explored,
    });
    let mut text = match witness {
        Some(_) => format!("{kind}: no-rainbow {r}-coloring found"),
        None => format!("{kind}: no no-rainbow {r}-coloring"),
    };
    if let Some(rule) = rule {
        let _ = write!(text, " ({rule})");
    }
    text.push('\n');
    if let Some(cs) = &classes {
        let _ = writeln!(text, "color classes: {}", block_text(taxa, cs));
    }
    Outcome { exit_code: u8::from(witness.is_some()), body: object(body), text }
}

pub fn reduce(s: &ReductionSummary) -> Outcome {
    let body = json!({
        "n": s.n,
        "k": s.k,
        "reduced_n": s.reduced_n,
        "spares": s.spares,
        "row_count_screen": s.row_count_screen,
        "zero_and_set": s.zero_and_set.as_ref().map(|z| one_based(z)),
        "rows": s.rows,
        "copies": s.copies.iter().map(|c| one_based(c)).collect::<Vec<_>>(),
    });
    let mut text = format!(
        "n={} k={} reduced_n={} spares={} row_count_screen={}\n",
        s.n, s.k, s.reduced_n, s.spares, s.row_count_screen
    );
    if let Some(z) = &s.zero_and_set {
        let _ = writeln!(text, "zero AND on taxa {:?}", one_based(z));
    }
    for (row, copies) in s.rows.iter().zip(&s.copies) {
        let _ = writeln!(text, "{row}  {:?}", one_based(copies));
    }
    Outcome { exit_code: 0, body: object(body), text }
}

pub fn bound(b: &BoundReport) -> Outcome {
    let body = json!({
        "n": b.n,
        "k": b.k,
        "quadruple_count": b.quadruple_count,
        "threshold": b.threshold,
        "below_threshold": b.below_threshold,
        "triple_coverage_ok": b.triple_coverage_ok,
        "first_uncovered_triple": b.first_uncovered_triple.map(|t| one_based(&t)),
        "rooted": b.rooted,
        "common_taxon": b.common_taxon.map(|t| t + 1),
    });
    let mut text = format!(
        "covered quadruples: {} (threshold {})\n",
        b.quadruple_count.as_deref().unwrap_or("not counted"),
        b.threshold
    );
    let _ = writeln!(text, "triple coverage: {}", if b.triple_coverage_ok { "complete" } else { "incomplete" });
    if let Some(t) = b.first_uncovered_triple {
        let _ = writeln!(text, "first uncovered triple: {:?}", one_based(&t));
    }
    if let Some(t) = b.common_taxon {
        let _ = writeln!(text, "rooted at taxon {}", t + 1);
    }
    Outcome { exit_code: 0, body: object(body), text }
}

pub fn ilp(model: &IlpModel, out: Option<&Path>) -> Outcome {
    let body = json!({
        "rows": model.row_count(),
        "columns": model.column_count(),
        "nonzeros": model.nonzero_count(),
        "output": out.map(|p| p.display().to_string()),
    });
    let text = format!(
        "ILP: {} rows, {} columns, {} nonzeros\n",
        model.row_count(),
        model.column_count(),
        model.nonzero_count()
    );
    Outcome { exit_code: 0, body: object(body), text }
}

pub fn cnf(formulas: &[CnfFormula], out: Option<&Path>) -> Outcome {
    let first = &formulas[0];
    let body = json!({
        "formulas": formulas.len(),
        "variables": first.variable_count(),
        "clauses": first.clauses.len(),
        "output": out.map(|p| p.display().to_string()),
    });
    let text = format!(
        "CNF: {} formula(s), {} variables, {} clauses each\n",
        formulas.len(),
        first.variable_count(),
        first.clauses.len()
    );
    Outcome { exit_code: 0, body: object(body), text }
}

fn removals(p: &CoveragePattern, removed: &[decisive::pipeline::Removal]) -> (Value, String) {
    let json = removed
        .iter()
        .map(|r| json!({ "taxon": r.taxon + 1, "name": r.name, "coverage": r.coverage }))
        .collect();
    let mut text = String::new();
    for (step, r) in removed.iter().enumerate() {
        let _ = writeln!(text, "step {}: removed {} (taxon {}, {} loci)", step + 1, r.name, r.taxon + 1, r.coverage);
    }
    let _ = p;
    (Value::Array(json), text)
}

pub fn subset(p: &CoveragePattern, t: &SubsetTrace) -> Outcome {
    let (removed, mut text) = removals(p, &t.removed);
    let body = json!({
        "complete": true,
        "removed": removed,
        "kept": one_based(&t.kept),
        "kept_names": names(p.taxa(), &t.kept),
        "decided_by": t.verdict.decided_by.as_str(),
    });
    let _ = writeln!(
        text,
        "decisive subset of {} taxa (decided by {}): {}",
        t.kept.len(),
        t.verdict.decided_by,
        names(p.taxa(), &t.kept).join(", ")
    );
    Outcome { exit_code: 0, body: object(body), text }
}

pub fn subset_failure(p: &CoveragePattern, f: &SubsetFailure) -> Outcome {
    let mut out = error(&f.error);
    let (removed, text) = removals(p, &f.removed);
    out.body.insert("complete".into(), json!(false));
    out.body.insert("removed".into(), removed);
    out.text = text + &out.text;
    out
}

pub fn error(e: &Error) -> Outcome {
    let (kind, exit_code) = match e {
        Error::SizeLimit { .. } => ("size-limit", 3),
        Error::Parse { .. } => ("parse", 2),
        Error::Io(_) => ("io", 2),
        Error::InvalidPattern(_) | Error::InvalidInstance(_) => ("invalid-input", 2),
        Error::Domain(_) | Error::Precondition(_) | Error::Assignment(_) => ("domain", 2),
        Error::Internal(_) => ("internal", 2),
    };
    let mut detail = json!({ "kind": kind, "message": e.to_string() });
    match e {
        Error::SizeLimit { engine, size, cap } => {
            detail["engine"] = json!(engine);
            detail["size"] = json!(size);
            detail["cap"] = json!(cap);
        }
        Error::Parse { line, .. } => detail["line"] = json!(line),
        _ => {}
    }
    Outcome {
        exit_code,
        body: object(json!({ "error": detail })),
        text: format!("error: {e}\n"),
    }
}
