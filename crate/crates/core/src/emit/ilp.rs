//! 0-1 feasibility program whose solutions are no-rainbow 4-colorings.
//!
//! Variables: `x_i_q` (taxon `i` has color `q`) and `z_j_q` (locus `j` has
//! no taxon of color `q`). Rows, in emission order:
//!
//! 1. each taxon has exactly one color (`n` rows);
//! 2. each color is used (`4` rows);
//! 3. `z_j_q` is 1 iff color `q` is absent from locus `j`, as the pair
//!    `sum x + z >= 1` and `sum x + n z <= n` (`8k` rows);
//! 4. each locus misses some color (`k` rows).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::{CoveragePattern, Error, Result};

pub const COLORS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Eq,
    Ge,
    Le,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Eq => "=",
            Sense::Ge => ">=",
            Sense::Le => "<=",
        }
    }

    fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Sense::Eq => lhs == rhs,
            Sense::Ge => lhs >= rhs,
            Sense::Le => lhs <= rhs,
        }
    }
}

/// Constraint family a row belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Block {
    OneColorPerTaxon,
    EveryColorUsed,
    AbsenceIndicator,
    LocusMissesColor,
}

impl Block {
    pub fn number(self) -> usize {
        match self {
            Block::OneColorPerTaxon => 1,
            Block::EveryColorUsed => 2,
            Block::AbsenceIndicator => 3,
            Block::LocusMissesColor => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub block: Block,
    /// Position within its block, 0-based.
    pub index: usize,
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IlpModel {
    pub n: usize,
    pub k: usize,
    pub variables: Vec<String>,
    pub rows: Vec<Row>,
}

impl IlpModel {
    pub fn x(&self, taxon: usize, color: usize) -> usize {
        taxon * COLORS + color
    }

    pub fn z(&self, locus: usize, color: usize) -> usize {
        self.n * COLORS + locus * COLORS + color
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.variables.len()
    }

    pub fn nonzero_count(&self) -> usize {
        self.rows.iter().map(|r| r.terms.len()).sum()
    }

    /// The model in textual LP format.
    pub fn to_lp(&self) -> String {
        let mut out = String::new();
        out.push_str("\\ no-rainbow 4-coloring feasibility model\n");
        let _ = writeln!(out, "\\ taxa: {}, loci: {}", self.n, self.k);
        out.push_str("Minimize\n obj: 0\nSubject To\n");
        for (i, row) in self.rows.iter().enumerate() {
            let _ = write!(out, " c{}:", i + 1);
            for (t, &(var, coef)) in row.terms.iter().enumerate() {
                let name = &self.variables[var];
                match (t, coef) {
                    (0, 1) => write!(out, " {name}"),
                    (0, c) => write!(out, " {c} {name}"),
                    (_, 1) => write!(out, " + {name}"),
                    (_, c) if c < 0 => write!(out, " - {} {name}", -c),
                    (_, c) => write!(out, " + {c} {name}"),
                }
                .expect("writing to a String cannot fail");
            }
            let _ = writeln!(out, " {} {}", row.sense.symbol(), row.rhs);
        }
        out.push_str("Binary\n");
        for v in &self.variables {
            let _ = writeln!(out, " {v}");
        }
        out.push_str("End\n");
        out
    }
}

pub fn emit_ilp(pattern: &CoveragePattern) -> Result<IlpModel> {
    let (n, k) = (pattern.n(), pattern.k());
    if n < 4 {
        return Err(Error::Domain(format!("ILP model needs at least 4 taxa, got {n}")));
    }
    let mut variables = Vec::with_capacity(COLORS * (n + k));
    for i in 0..n {
        for q in 0..COLORS {
            variables.push(format!("x_{}_{}", i + 1, q + 1));
        }
    }
    for j in 0..k {
        for q in 0..COLORS {
            variables.push(format!("z_{}_{}", j + 1, q + 1));
        }
    }
    let mut model = IlpModel { n, k, variables, rows: Vec::with_capacity(n + 4 + 9 * k) };
    let x = |i: usize, q: usize| i * COLORS + q;
    let z = |j: usize, q: usize| n * COLORS + j * COLORS + q;

    for i in 0..n {
        let terms = (0..COLORS).map(|q| (x(i, q), 1)).collect();
        model.rows.push(Row { block: Block::OneColorPerTaxon, index: i, terms, sense: Sense::Eq, rhs: 1 });
    }
    for q in 0..COLORS {
        let terms = (0..n).map(|i| (x(i, q), 1)).collect();
        model.rows.push(Row { block: Block::EveryColorUsed, index: q, terms, sense: Sense::Ge, rhs: 1 });
    }
    for (j, locus) in pattern.loci().iter().enumerate() {
        for q in 0..COLORS {
            let sum: Vec<(usize, i64)> = locus.taxa.iter().map(|&i| (x(i, q), 1)).collect();
            let mut lower = sum.clone();
            lower.push((z(j, q), 1));
            let mut upper = sum;
            upper.push((z(j, q), n as i64));
            let index = 2 * (j * COLORS + q);
            model.rows.push(Row { block: Block::AbsenceIndicator, index, terms: lower, sense: Sense::Ge, rhs: 1 });
            model.rows.push(Row {
                block: Block::AbsenceIndicator,
                index: index + 1,
                terms: upper,
                sense: Sense::Le,
                rhs: n as i64,
            });
        }
    }
    for j in 0..k {
        let terms = (0..COLORS).map(|q| (z(j, q), 1)).collect();
        model.rows.push(Row { block: Block::LocusMissesColor, index: j, terms, sense: Sense::Ge, rhs: 1 });
    }
    Ok(model)
}

/// The 0-1 assignment a 4-coloring induces: `x` from the colors, `z` from
/// which colors each locus misses.
pub fn ilp_assignment_from_coloring(pattern: &CoveragePattern, coloring: &Coloring) -> Result<Vec<u8>> {
    if coloring.r() != COLORS as u8 || coloring.len() != pattern.n() {
        return Err(Error::Precondition(format!(
            "need a 4-coloring of {} taxa, got r={} on {} nodes",
            pattern.n(),
            coloring.r(),
            coloring.len()
        )));
    }
    let n = pattern.n();
    let mut values = vec![0u8; COLORS * (n + pattern.k())];
    for (i, &c) in coloring.colors().iter().enumerate() {
        values[i * COLORS + c as usize - 1] = 1;
    }
    for (j, locus) in pattern.loci().iter().enumerate() {
        let mut present = [false; COLORS];
        for &i in &locus.taxa {
            present[coloring.colors()[i] as usize - 1] = true;
        }
        for q in 0..COLORS {
            values[n * COLORS + j * COLORS + q] = u8::from(!present[q]);
        }
    }
    Ok(values)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IlpCheck {
    Feasible,
    Violated { row: usize, block: usize, index: usize },
}

/// Evaluates every row; reports the first violated one.
pub fn evaluate_ilp(model: &IlpModel, assignment: &[u8]) -> Result<IlpCheck> {
    if assignment.len() != model.column_count() {
        return Err(Error::Assignment(format!(
            "expected values for {} variables, got {}",
            model.column_count(),
            assignment.len()
        )));
    }
    if let Some(pos) = assignment.iter().position(|&v| v > 1) {
        return Err(Error::Assignment(format!("variable {} is not binary", model.variables[pos])));
    }
    for (r, row) in model.rows.iter().enumerate() {
        let lhs: i64 = row.terms.iter().map(|&(v, c)| c * assignment[v] as i64).sum();
        if !row.sense.holds(lhs, row.rhs) {
            return Ok(IlpCheck::Violated { row: r, block: row.block.number(), index: row.index });
        }
    }
    Ok(IlpCheck::Feasible)
}
