//! CNF encoding of no-rainbow 4-colorability, written as DIMACS.
//!
//! Each node gets two bit variables `x, y`; color `c` is coded as
//! `c - 1 = 2x + y` (00, 01, 10, 11 for colors 1..4). Edges with four nodes
//! say "some pair of nodes is equal" through six pair-equality auxiliaries.
//! Larger edges say "some color is absent" through four absence
//! auxiliaries, which keeps the formula polynomial in the edge size.
//! Surjectivity is either encoded with per-(node, color) indicators, or
//! handled by emitting one formula per way of pinning representatives of
//! all four colors.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::{Error, Hypergraph, Result};

/// Largest node count for which per-triple formulas are generated.
pub const ENUMERATE_NODE_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurjectivityMode {
    Aux,
    Enumerate,
}

/// What a CNF variable stands for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarMeaning {
    /// High bit of a node's color code.
    HighBit { node: usize },
    /// Low bit of a node's color code.
    LowBit { node: usize },
    /// Implies nodes `u` and `v` of a 4-node edge have the same color.
    PairEqual { edge: usize, u: usize, v: usize },
    /// Implies no node of a larger edge has `color`.
    ColorAbsent { edge: usize, color: u8 },
    /// Implies `node` has `color`.
    HasColor { node: usize, color: u8 },
}

impl std::fmt::Display for VarMeaning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VarMeaning::HighBit { node } => write!(f, "high color bit of node {node}"),
            VarMeaning::LowBit { node } => write!(f, "low color bit of node {node}"),
            VarMeaning::PairEqual { edge, u, v } => write!(f, "edge {edge}: color({u}) = color({v})"),
            VarMeaning::ColorAbsent { edge, color } => write!(f, "edge {edge}: color {color} absent"),
            VarMeaning::HasColor { node, color } => write!(f, "node {node} has color {color}"),
        }
    }
}

pub type Clause = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub node_count: usize,
    /// `legend[v - 1]` describes variable `v`.
    pub legend: Vec<VarMeaning>,
    pub clauses: Vec<Clause>,
    /// Nodes pinned to colors 1..4 in enumerate mode.
    pub pinned: Option<[usize; 4]>,
}

pub fn high_bit(node: usize) -> i32 {
    2 * node as i32 + 1
}

pub fn low_bit(node: usize) -> i32 {
    2 * node as i32 + 2
}

fn code(color: u8) -> (bool, bool) {
    let c = color - 1;
    (c & 2 != 0, c & 1 != 0)
}

/// Literal that is true iff variable `var` has value `value`.
fn lit(var: i32, value: bool) -> i32 {
    if value {
        var
    } else {
        -var
    }
}

impl CnfFormula {
    pub fn variable_count(&self) -> usize {
        self.legend.len()
    }

    fn add_var(&mut self, meaning: VarMeaning) -> i32 {
        self.legend.push(meaning);
        self.legend.len() as i32
    }

    /// True iff `assignment` (indexed by variable - 1) satisfies every clause.
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|cl| {
            cl.iter().any(|&l| {
                let v = assignment[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }

    /// Extends color bits (the first `2n` variables) to a full assignment,
    /// setting each auxiliary to the truth of what it stands for. `h` must be
    /// the hypergraph the formula was built from.
    pub fn complete_assignment(&self, h: &Hypergraph, bits: &[bool]) -> Vec<bool> {
        let color = |v: usize| 1 + 2 * u8::from(bits[2 * v]) + u8::from(bits[2 * v + 1]);
        self.legend
            .iter()
            .enumerate()
            .map(|(i, m)| match m {
                VarMeaning::HighBit { .. } | VarMeaning::LowBit { .. } => bits[i],
                VarMeaning::PairEqual { u, v, .. } => color(*u) == color(*v),
                VarMeaning::HasColor { node, color: c } => color(*node) == *c,
                VarMeaning::ColorAbsent { edge, color: c } => {
                    h.edges()[*edge].iter().all(|&v| color(v) != *c)
                }
            })
            .collect()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        if let Some(p) = self.pinned {
            let _ = writeln!(out, "c pinned nodes for colors 1..4: {} {} {} {}", p[0], p[1], p[2], p[3]);
        }
        for (i, m) in self.legend.iter().enumerate() {
            let _ = writeln!(out, "c var {} = {}", i + 1, m);
        }
        let _ = writeln!(out, "p cnf {} {}", self.variable_count(), self.clauses.len());
        for cl in &self.clauses {
            for l in cl {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Clauses shared by both modes: bit variables and edge constraints.
fn base_formula(h: &Hypergraph) -> CnfFormula {
    let n = h.node_count();
    let mut f = CnfFormula { node_count: n, legend: Vec::new(), clauses: Vec::new(), pinned: None };
    for node in 0..n {
        f.add_var(VarMeaning::HighBit { node });
        f.add_var(VarMeaning::LowBit { node });
    }
    for (j, e) in h.edges().iter().enumerate() {
        match e.len() {
            0..=3 => {}
            4 => {
                let mut edge_clause = Vec::with_capacity(6);
                for a in 0..4 {
                    for b in a + 1..4 {
                        let (u, v) = (e[a], e[b]);
                        let p = f.add_var(VarMeaning::PairEqual { edge: j, u, v });
                        for (bu, bv) in [(high_bit(u), high_bit(v)), (low_bit(u), low_bit(v))] {
                            f.clauses.push(vec![-p, -bu, bv]);
                            f.clauses.push(vec![-p, bu, -bv]);
                        }
                        edge_clause.push(p);
                    }
                }
                f.clauses.push(edge_clause);
            }
            _ => {
                let mut edge_clause = Vec::with_capacity(4);
                for color in 1..=4u8 {
                    let (hx, lx) = code(color);
                    let a = f.add_var(VarMeaning::ColorAbsent { edge: j, color });
                    for &v in e {
                        f.clauses.push(vec![-a, lit(high_bit(v), !hx), lit(low_bit(v), !lx)]);
                    }
                    edge_clause.push(a);
                }
                f.clauses.push(edge_clause);
            }
        }
    }
    f
}

fn require_four(h: &Hypergraph) -> Result<()> {
    if h.node_count() < 4 {
        return Err(Error::Domain(format!(
            "CNF encoding needs at least 4 nodes, got {}",
            h.node_count()
        )));
    }
    Ok(())
}

/// Single formula with surjectivity indicators.
pub fn emit_cnf_aux(h: &Hypergraph) -> Result<CnfFormula> {
    require_four(h)?;
    let mut f = base_formula(h);
    let n = h.node_count();
    let mut at_least: Vec<Clause> = (0..4).map(|_| Vec::with_capacity(n)).collect();
    for node in 0..n {
        for color in 1..=4u8 {
            let (hx, lx) = code(color);
            let s = f.add_var(VarMeaning::HasColor { node, color });
            f.clauses.push(vec![-s, lit(high_bit(node), hx)]);
            f.clauses.push(vec![-s, lit(low_bit(node), lx)]);
            f.clauses.push(vec![s, lit(high_bit(node), !hx), lit(low_bit(node), !lx)]);
            at_least[color as usize - 1].push(s);
        }
    }
    f.clauses.extend(at_least);
    Ok(f)
}

/// One formula per ordered triple of nodes other than node 0, with node 0
/// pinned to color 1 and the triple to colors 2, 3, 4.
pub fn emit_cnf_enumerate(h: &Hypergraph) -> Result<Vec<CnfFormula>> {
    require_four(h)?;
    let n = h.node_count();
    if n > ENUMERATE_NODE_CAP {
        return Err(Error::SizeLimit { engine: "cnf enumerate", size: n, cap: ENUMERATE_NODE_CAP });
    }
    let base = base_formula(h);
    let mut out = Vec::with_capacity((n - 1) * (n - 2) * (n - 3));
    for u in 1..n {
        for w in 1..n {
            for x in 1..n {
                if u == w || u == x || w == x {
                    continue;
                }
                let mut f = base.clone();
                for (node, color) in [(0, 1u8), (u, 2), (w, 3), (x, 4)] {
                    let (hx, lx) = code(color);
                    f.clauses.push(vec![lit(high_bit(node), hx)]);
                    f.clauses.push(vec![lit(low_bit(node), lx)]);
                }
                f.pinned = Some([0, u, w, x]);
                out.push(f);
            }
        }
    }
    Ok(out)
}

pub fn emit_cnf(h: &Hypergraph, mode: SurjectivityMode) -> Result<Vec<CnfFormula>> {
    match mode {
        SurjectivityMode::Aux => Ok(vec![emit_cnf_aux(h)?]),
        SurjectivityMode::Enumerate => emit_cnf_enumerate(h),
    }
}

/// Color bits for a coloring, in variable order.
pub fn encode_coloring(coloring: &Coloring) -> Vec<bool> {
    coloring
        .colors()
        .iter()
        .flat_map(|&c| {
            let (hx, lx) = code(c);
            [hx, lx]
        })
        .collect()
}

/// Reads node colors off the first `2 * node_count` variables.
pub fn decode_cnf(assignment: &[bool], node_count: usize) -> Result<Coloring> {
    if assignment.len() < 2 * node_count {
        return Err(Error::Assignment(format!(
            "need {} bit values, got {}",
            2 * node_count,
            assignment.len()
        )));
    }
    let colors = (0..node_count)
        .map(|v| 1 + 2 * u8::from(assignment[2 * v]) + u8::from(assignment[2 * v + 1]))
        .collect();
    Coloring::from_assignment(4, colors)
}
