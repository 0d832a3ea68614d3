//! Text formats for coverage patterns and raw hypergraphs.
//!
//! `matrix-csv`: a header row whose first cell is ignored and whose other
//! cells name the loci, then one row per taxon: its name followed by 0/1
//! cells. Lines starting with `#` are comments.
//!
//! `locus-list`: one line per locus, `name: taxon taxon ...`. An optional
//! `@taxa a b c ...` line fixes the taxon order and may list taxa covered
//! by no locus; otherwise taxa are numbered by first appearance.
//!
//! `edge-list` (hypergraphs only): a line `n <count>`, then one edge per
//! line as 0-based node indices.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{CoveragePattern, Error, Hypergraph, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternFormat {
    MatrixCsv,
    LocusList,
}

impl PatternFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            PatternFormat::MatrixCsv => "matrix-csv",
            PatternFormat::LocusList => "locus-list",
        }
    }

    /// Guesses the format from a file extension: `.csv` is a matrix,
    /// anything else a locus list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => PatternFormat::MatrixCsv,
            _ => PatternFormat::LocusList,
        }
    }
}

impl std::str::FromStr for PatternFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matrix-csv" => Ok(PatternFormat::MatrixCsv),
            "locus-list" => Ok(PatternFormat::LocusList),
            other => Err(Error::Domain(format!("unknown pattern format '{other}'"))),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Pattern construction errors are reported against `line`.
fn build(taxa: Vec<String>, loci: Vec<(String, Vec<usize>)>, line: usize) -> Result<CoveragePattern> {
    CoveragePattern::new(taxa, loci).map_err(|e| match e {
        Error::InvalidPattern(msg) => parse_err(line, msg),
        other => other,
    })
}

pub fn parse_pattern_str(text: &str, format: PatternFormat) -> Result<CoveragePattern> {
    match format {
        PatternFormat::MatrixCsv => parse_matrix_csv(text),
        PatternFormat::LocusList => parse_locus_list(text),
    }
}

pub fn parse_pattern_file(path: &Path, format: PatternFormat) -> Result<CoveragePattern> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_pattern_str(&text, format)
}

fn parse_matrix_csv(text: &str) -> Result<CoveragePattern> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = match records.next() {
        Some(r) => r.map_err(|e| csv_err(&e))?,
        None => return Err(parse_err(1, "missing header row")),
    };
    let header_line = line_of(&header);
    let locus_names: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    if let Some(j) = locus_names.iter().position(String::is_empty) {
        return Err(parse_err(header_line, format!("locus name in column {} is empty", j + 2)));
    }
    for (j, name) in locus_names.iter().enumerate() {
        if locus_names[..j].contains(name) {
            return Err(parse_err(header_line, format!("duplicate locus name '{name}'")));
        }
    }
    let mut taxa = Vec::new();
    let mut loci: Vec<Vec<usize>> = vec![Vec::new(); locus_names.len()];
    for record in records {
        let record = record.map_err(|e| csv_err(&e))?;
        let line = line_of(&record);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != locus_names.len() + 1 {
            return Err(parse_err(
                line,
                format!("expected {} cells, found {}", locus_names.len() + 1, record.len()),
            ));
        }
        let name = &record[0];
        if name.is_empty() {
            return Err(parse_err(line, "empty taxon name"));
        }
        if taxa.iter().any(|t: &String| t == name) {
            return Err(parse_err(line, format!("duplicate taxon name '{name}'")));
        }
        let t = taxa.len();
        for (j, cell) in record.iter().skip(1).enumerate() {
            match cell {
                "1" => loci[j].push(t),
                "0" => {}
                other => {
                    return Err(parse_err(
                        line,
                        format!("cell for locus '{}' must be 0 or 1, found '{other}'", locus_names[j]),
                    ))
                }
            }
        }
        taxa.push(name.to_string());
    }
    if let Some(j) = loci.iter().position(Vec::is_empty) {
        return Err(parse_err(header_line, format!("locus '{}' covers no taxa", locus_names[j])));
    }
    let last = reader.position().line() as usize;
    build(taxa, locus_names.into_iter().zip(loci).collect(), last.max(1))
}

fn line_of(r: &csv::StringRecord) -> usize {
    r.position().map_or(0, |p| p.line() as usize)
}

fn csv_err(e: &csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    parse_err(line, e.to_string())
}

fn parse_locus_list(text: &str) -> Result<CoveragePattern> {
    let mut taxa: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut declared = false;
    let mut loci: Vec<(String, Vec<usize>)> = Vec::new();
    let mut seen_loci: HashMap<String, usize> = HashMap::new();
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        last_line = line;
        if let Some(rest) = content.strip_prefix("@taxa") {
            if declared || !loci.is_empty() {
                return Err(parse_err(line, "@taxa must appear once, before any locus"));
            }
            declared = true;
            for name in rest.split_whitespace() {
                if index.insert(name.to_string(), taxa.len()).is_some() {
                    return Err(parse_err(line, format!("duplicate taxon name '{name}'")));
                }
                taxa.push(name.to_string());
            }
            continue;
        }
        let (name, members) = content
            .split_once(':')
            .ok_or_else(|| parse_err(line, "expected 'locus: taxon taxon ...'"))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(parse_err(line, "empty locus name"));
        }
        if let Some(prev) = seen_loci.insert(name.to_string(), line) {
            return Err(parse_err(line, format!("locus '{name}' already defined on line {prev}")));
        }
        let mut set = Vec::new();
        for t in members.split_whitespace() {
            let id = match index.get(t) {
                Some(&id) => id,
                None if declared => {
                    return Err(parse_err(line, format!("taxon '{t}' not listed in @taxa")))
                }
                None => {
                    index.insert(t.to_string(), taxa.len());
                    taxa.push(t.to_string());
                    taxa.len() - 1
                }
            };
            set.push(id);
        }
        if set.is_empty() {
            return Err(parse_err(line, format!("locus '{name}' covers no taxa")));
        }
        loci.push((name.to_string(), set));
    }
    if taxa.is_empty() {
        return Err(parse_err(last_line, "no taxa"));
    }
    build(taxa, loci, last_line)
}

pub fn write_pattern(pattern: &CoveragePattern, format: PatternFormat) -> String {
    match format {
        PatternFormat::MatrixCsv => write_matrix_csv(pattern),
        PatternFormat::LocusList => write_locus_list(pattern),
    }
}

fn write_matrix_csv(pattern: &CoveragePattern) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let mut header = vec!["taxon".to_string()];
    header.extend(pattern.loci().iter().map(|l| l.name.clone()));
    w.write_record(&header).expect("writing to memory");
    let mut rows = vec![vec!["0"; pattern.k()]; pattern.n()];
    for (j, l) in pattern.loci().iter().enumerate() {
        for &t in &l.taxa {
            rows[t][j] = "1";
        }
    }
    for (name, row) in pattern.taxa().iter().zip(rows) {
        let mut rec = vec![name.as_str()];
        rec.extend(row);
        w.write_record(&rec).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("input was UTF-8")
}

fn write_locus_list(pattern: &CoveragePattern) -> String {
    let mut out = String::from("@taxa");
    for t in pattern.taxa() {
        out.push(' ');
        out.push_str(t);
    }
    out.push('\n');
    for l in pattern.loci() {
        out.push_str(&l.name);
        out.push(':');
        for &t in &l.taxa {
            out.push(' ');
            out.push_str(&pattern.taxa()[t]);
        }
        out.push('\n');
    }
    out
}

pub fn parse_hypergraph_str(text: &str) -> Result<Hypergraph> {
    let mut node_count = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        match node_count {
            None => {
                let n = content
                    .strip_prefix('n')
                    .map(str::trim)
                    .and_then(|v| v.parse::<usize>().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| parse_err(line, "expected 'n <node count>'"))?;
                node_count = Some(n);
            }
            Some(n) => {
                let edge = content
                    .split_whitespace()
                    .map(|tok| {
                        let v: usize = tok.parse().map_err(|_| parse_err(line, format!("bad node '{tok}'")))?;
                        if v >= n {
                            return Err(parse_err(line, format!("node {v} out of range for n = {n}")));
                        }
                        Ok(v)
                    })
                    .collect::<Result<Vec<_>>>()?;
                edges.push(edge);
            }
        }
    }
    let n = node_count.ok_or_else(|| parse_err(1, "missing 'n <node count>' line"))?;
    Hypergraph::new(n, edges)
}

pub fn parse_hypergraph_file(path: &Path) -> Result<Hypergraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_hypergraph_str(&text)
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("n {}\n", h.node_count());
    for e in h.edges() {
        let parts: Vec<String> = e.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", parts.join(" "));
    }
    out
}
