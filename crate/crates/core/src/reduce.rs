//! Kernelization over the taxon-by-locus incidence matrix.
//!
//! Taxa with identical rows are interchangeable, so the instance collapses to
//! one node per distinct row (at most `2^k` of them). A no-rainbow 4-coloring
//! of the full hypergraph exists iff the collapsed hypergraph has a
//! no-rainbow `r`-coloring for an `r` that the number of spare copies can
//! make up for; [`lift_coloring`] performs that completion.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::NodeSet;
use crate::coloring::{verify_no_rainbow, Coloring};
use crate::nrc::{self, nonneighbor_coloring, NrcConfig, NrcOutcome, NrcRule};
use crate::{CoveragePattern, Error, Hypergraph, Result};

/// `n x k` bit matrix; row `i` holds the loci covering taxon `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    k: usize,
    rows: Vec<NodeSet>,
}

impl IncidenceMatrix {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].contains(col)
    }

    pub fn row(&self, i: usize) -> &NodeSet {
        &self.rows[i]
    }

    /// Row `i` as a `0`/`1` string in column order.
    pub fn row_string(&self, i: usize) -> String {
        (0..self.k).map(|j| if self.get(i, j) { '1' } else { '0' }).collect()
    }

    /// Rows whose bit `col` is set.
    pub fn column(&self, col: usize) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.get(i, col)).collect()
    }
}

pub fn incidence_matrix(pattern: &CoveragePattern) -> IncidenceMatrix {
    let k = pattern.k();
    let mut rows = vec![NodeSet::new(k); pattern.n()];
    for (j, locus) in pattern.loci().iter().enumerate() {
        for &t in &locus.taxa {
            rows[t].insert(j);
        }
    }
    IncidenceMatrix { k, rows }
}

/// The matrix with duplicate rows struck out, and the bookkeeping to map
/// between the reduced and the original taxa.
#[derive(Clone, Debug)]
pub struct ReducedInstance {
    pub matrix: IncidenceMatrix,
    /// Source row of each reduced row (the smallest index in its class).
    pub representatives: Vec<usize>,
    /// Source rows identical to each reduced row, ascending; aligned with
    /// `representatives`.
    pub copies: Vec<Vec<usize>>,
    /// Reduced row of each source row.
    pub class_of: Vec<usize>,
    /// Hypergraph on reduced rows with one edge per (distinct) column.
    pub hypergraph: Hypergraph,
}

impl ReducedInstance {
    pub fn source_n(&self) -> usize {
        self.class_of.len()
    }

    pub fn reduced_n(&self) -> usize {
        self.representatives.len()
    }

    pub fn spares(&self) -> usize {
        self.source_n() - self.reduced_n()
    }
}

pub fn dedup(m: &IncidenceMatrix) -> ReducedInstance {
    let mut index: HashMap<&NodeSet, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let mut copies: Vec<Vec<usize>> = Vec::new();
    let mut class_of = Vec::with_capacity(m.n());
    for (i, row) in m.rows.iter().enumerate() {
        let id = *index.entry(row).or_insert_with(|| {
            representatives.push(i);
            copies.push(Vec::new());
            representatives.len() - 1
        });
        copies[id].push(i);
        class_of.push(id);
    }
    let rows: Vec<NodeSet> = representatives.iter().map(|&i| m.rows[i].clone()).collect();
    let matrix = IncidenceMatrix { k: m.k, rows };
    let edges = (0..m.k).map(|j| matrix.column(j)).filter(|c| !c.is_empty()).collect();
    let hypergraph = Hypergraph::new(representatives.len(), edges)
        .expect("reduced instance has at least one row");
    ReducedInstance { matrix, representatives, copies, class_of, hypergraph }
}

fn and_is_zero(sets: &[&NodeSet]) -> bool {
    let mut acc = sets[0].clone();
    for s in &sets[1..] {
        acc.intersect_with(s);
    }
    acc.is_empty()
}

/// Source taxa of the first pair, then triple, of reduced rows whose bitwise
/// AND is zero. A zero row with at least two copies counts as a pair.
pub fn find_zero_and(ri: &ReducedInstance) -> Option<Vec<usize>> {
    let m = &ri.matrix;
    let nr = ri.reduced_n();
    for a in 0..nr {
        if m.row(a).is_empty() && ri.copies[a].len() >= 2 {
            return Some(vec![ri.copies[a][0], ri.copies[a][1]]);
        }
        for b in a + 1..nr {
            if and_is_zero(&[m.row(a), m.row(b)]) {
                return Some(sorted(vec![ri.representatives[a], ri.representatives[b]]));
            }
        }
    }
    for a in 0..nr {
        for b in a + 1..nr {
            let mut ab = m.row(a).clone();
            ab.intersect_with(m.row(b));
            for c in b + 1..nr {
                if and_is_zero(&[&ab, m.row(c)]) {
                    let reps = &ri.representatives;
                    return Some(sorted(vec![reps[a], reps[b], reps[c]]));
                }
            }
        }
    }
    None
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// No-rainbow 4-coloring of the original hypergraph from rows that AND to zero.
pub fn zero_and_screen(ri: &ReducedInstance) -> Option<Coloring> {
    if ri.source_n() < 4 {
        return None;
    }
    let set = find_zero_and(ri)?;
    Some(nonneighbor_coloring(ri.source_n(), &set, 4).expect("set of size 2 or 3 with n >= 4"))
}

/// True iff there are more than `2^(k-1)` distinct rows, which forces a
/// complementary pair of rows.
pub fn row_count_screen(ri: &ReducedInstance) -> bool {
    let k = ri.matrix.k() as u32;
    let doubled = 2u128.saturating_mul(ri.reduced_n() as u128);
    match 1u128.checked_shl(k) {
        Some(limit) if k < 128 => doubled > limit,
        _ => false,
    }
}

/// Spare copies a reduced `r`-coloring needs before it can be lifted.
pub fn spares_needed(r: u8) -> usize {
    4 - r as usize
}

/// Broadcasts a reduced coloring to every copy, then recolors spare copies so
/// that all four colors are used.
pub fn lift_coloring(ri: &ReducedInstance, reduced: &Coloring) -> Result<Coloring> {
    let r = reduced.r();
    if !(2..=4).contains(&r) {
        return Err(Error::Precondition(format!("can only lift 2-, 3- or 4-colorings, got r={r}")));
    }
    if reduced.len() != ri.reduced_n() {
        return Err(Error::Precondition(format!(
            "coloring has {} nodes, reduced instance has {}",
            reduced.len(),
            ri.reduced_n()
        )));
    }
    let need = spares_needed(r);
    if ri.spares() < need {
        return Err(Error::Precondition(format!(
            "lifting a {r}-coloring needs {need} spare copies, only {} available",
            ri.spares()
        )));
    }
    let mut colors: Vec<u8> = ri.class_of.iter().map(|&c| reduced.colors()[c]).collect();
    let extras: Vec<usize> = match r {
        4 => vec![],
        3 => {
            let class = ri.copies.iter().find(|c| c.len() >= 2).expect("a spare exists");
            vec![class[1]]
        }
        _ => match ri.copies.iter().find(|c| c.len() >= 3) {
            Some(class) => vec![class[1], class[2]],
            None => {
                let mut two = ri.copies.iter().filter(|c| c.len() >= 2).map(|c| c[1]);
                vec![two.next().expect("two spares"), two.next().expect("two spares")]
            }
        },
    };
    for (i, v) in extras.into_iter().enumerate() {
        colors[v] = r + 1 + i as u8;
    }
    Ok(Coloring::from_solver(4, colors))
}

/// Color counts worth testing on the reduced hypergraph, given the spares.
pub fn candidate_color_counts(ri: &ReducedInstance) -> Vec<u8> {
    [2u8, 3, 4]
        .into_iter()
        .filter(|&r| ri.spares() >= spares_needed(r) && ri.reduced_n() >= r as usize)
        .collect()
}

/// Decides no-rainbow 4-colorability of the pattern's hypergraph through the
/// reduced instance.
pub fn fpt_nrc4(pattern: &CoveragePattern, cfg: &NrcConfig) -> Result<NrcOutcome> {
    if pattern.n() < 4 {
        return Err(Error::InvalidInstance(format!(
            "4-coloring needs at least 4 taxa, got {}",
            pattern.n()
        )));
    }
    let ri = dedup(&incidence_matrix(pattern));
    log::debug!(
        "reduced {} taxa to {} distinct rows over {} loci",
        ri.source_n(),
        ri.reduced_n(),
        ri.matrix.k()
    );
    if let Some(c) = zero_and_screen(&ri) {
        return Ok(NrcOutcome { witness: Some(c), rule: NrcRule::NonNeighbor, explored: 0 });
    }
    debug_assert!(!row_count_screen(&ri), "row count screen implies a zero AND");
    let mut explored = 0;
    for r in candidate_color_counts(&ri) {
        let out = nrc::nrc(&ri.hypergraph, r, cfg)?;
        explored += out.explored;
        if let Some(c) = out.witness {
            let lifted = lift_coloring(&ri, &c)?;
            debug_assert!(verify_no_rainbow(&pattern.hypergraph(), &lifted));
            return Ok(NrcOutcome { witness: Some(lifted), rule: out.rule, explored });
        }
    }
    Ok(NrcOutcome { witness: None, rule: NrcRule::Exhausted, explored })
}

/// Kernel statistics for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionSummary {
    pub n: usize,
    pub k: usize,
    pub reduced_n: usize,
    pub spares: usize,
    pub row_count_screen: bool,
    pub zero_and_set: Option<Vec<usize>>,
    pub rows: Vec<String>,
    pub copies: Vec<Vec<usize>>,
}

pub fn summarize(pattern: &CoveragePattern) -> ReductionSummary {
    let ri = dedup(&incidence_matrix(pattern));
    ReductionSummary {
        n: ri.source_n(),
        k: ri.matrix.k(),
        reduced_n: ri.reduced_n(),
        spares: ri.spares(),
        row_count_screen: row_count_screen(&ri),
        zero_and_set: find_zero_and(&ri),
        rows: (0..ri.reduced_n()).map(|i| ri.matrix.row_string(i)).collect(),
        copies: ri.copies.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern(n: usize, sets: &[&[usize]]) -> CoveragePattern {
        CoveragePattern::from_sets(n, &sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Pattern whose incidence rows are the given bit strings.
    fn from_rows(rows: &[&str]) -> CoveragePattern {
        let k = rows[0].len();
        let sets: Vec<Vec<usize>> = (0..k)
            .map(|j| (0..rows.len()).filter(|&i| rows[i].as_bytes()[j] == b'1').collect())
            .collect();
        CoveragePattern::from_sets(rows.len(), &sets).unwrap()
    }

    #[test]
    fn incidence_rows() {
        let m = incidence_matrix(&pattern(3, &[&[0, 1], &[1, 2]]));
        let rows: Vec<String> = (0..3).map(|i| m.row_string(i)).collect();
        assert_eq!(rows, ["10", "11", "01"]);
        let m = incidence_matrix(&pattern(3, &[&[0, 1]]));
        assert_eq!(m.row_string(2), "0");
        let m = incidence_matrix(&pattern(3, &[&[0, 1, 2]]));
        assert_eq!(m.column(0), vec![0, 1, 2]);
    }

    #[test]
    fn dedup_classes() {
        let ri = dedup(&incidence_matrix(&from_rows(&["101", "101", "011"])));
        assert_eq!(ri.reduced_n(), 2);
        assert_eq!(ri.representatives, vec![0, 2]);
        assert_eq!(ri.copies, vec![vec![0, 1], vec![2]]);

        let ri = dedup(&incidence_matrix(&from_rows(&["10", "01", "11"])));
        assert_eq!(ri.reduced_n(), 3);

        let big = CoveragePattern::from_sets(1000, &[(0..1000).collect()]).unwrap();
        let ri = dedup(&incidence_matrix(&big));
        assert_eq!(ri.reduced_n(), 1);
        assert_eq!(ri.spares(), 999);
    }

    #[test]
    fn zero_and_rules() {
        let ri = dedup(&incidence_matrix(&from_rows(&["10", "01", "11", "11"])));
        let c = zero_and_screen(&ri).unwrap();
        let p = from_rows(&["10", "01", "11", "11"]);
        assert!(verify_no_rainbow(&p.hypergraph(), &c));

        let p = from_rows(&["110", "101", "011", "111"]);
        let ri = dedup(&incidence_matrix(&p));
        assert_eq!(find_zero_and(&ri), Some(vec![0, 1, 2]));
        assert!(verify_no_rainbow(&p.hypergraph(), &zero_and_screen(&ri).unwrap()));

        let p = from_rows(&["110", "101", "111", "100"]);
        assert!(zero_and_screen(&dedup(&incidence_matrix(&p))).is_none());
    }

    #[test]
    fn row_count_thresholds() {
        let ri = dedup(&incidence_matrix(&from_rows(&["10", "01", "11"])));
        assert!(row_count_screen(&ri));
        let ri = dedup(&incidence_matrix(&from_rows(&["100", "010", "001", "111"])));
        assert!(!row_count_screen(&ri));
        let ri = dedup(&incidence_matrix(&from_rows(&["1", "0"])));
        assert!(row_count_screen(&ri));
    }

    #[test]
    fn lifting() {
        // rows: a, a, b, c, d (one duplicated row)
        let p = from_rows(&["1100", "1100", "1010", "0110", "0011"]);
        let ri = dedup(&incidence_matrix(&p));
        assert_eq!(ri.spares(), 1);
        let four = Coloring::try_new(4, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(lift_coloring(&ri, &four).unwrap().colors(), &[1, 1, 2, 3, 4]);
        let three = Coloring::try_new(3, vec![1, 2, 3, 3]).unwrap();
        assert_eq!(lift_coloring(&ri, &three).unwrap().colors(), &[1, 4, 2, 3, 3]);
        let two = Coloring::try_new(2, vec![1, 2, 2, 2]).unwrap();
        assert!(matches!(lift_coloring(&ri, &two), Err(Error::Precondition(_))));

        // two duplicated rows: the extra copies become 3 and 4
        let p = from_rows(&["1100", "1100", "0011", "0011"]);
        let ri = dedup(&incidence_matrix(&p));
        let two = Coloring::try_new(2, vec![1, 2]).unwrap();
        let lifted = lift_coloring(&ri, &two).unwrap();
        assert_eq!(lifted.colors(), &[1, 3, 2, 4]);
        assert!(verify_no_rainbow(&p.hypergraph(), &lifted));
    }

    #[test]
    fn lifting_three_coloring_verifies() {
        // five taxa, one duplicated row; H_red has a no-rainbow 3-coloring
        let p = pattern(5, &[&[0, 1, 2], &[2, 3, 4]]);
        let ri = dedup(&incidence_matrix(&p));
        assert_eq!(ri.spares(), 2);
        let out = nrc::nrc3(&ri.hypergraph, &NrcConfig::default()).unwrap();
        let lifted = lift_coloring(&ri, &out.witness.unwrap()).unwrap();
        assert!(verify_no_rainbow(&p.hypergraph(), &lifted));
    }

    #[test]
    fn fpt_cases() {
        let full = pattern(6, &[&[0, 1, 2, 3, 4, 5]]);
        assert!(fpt_nrc4(&full, &NrcConfig::default()).unwrap().witness.is_none());
        let star = pattern(5, &[&[0, 1, 2, 3], &[0, 1, 2, 4], &[0, 1, 3, 4], &[0, 2, 3, 4]]);
        assert!(fpt_nrc4(&star, &NrcConfig::default()).unwrap().witness.is_none());
        let split = pattern(6, &[&[0, 1, 2], &[3, 4, 5], &[0, 1, 2, 3, 4]]);
        let out = fpt_nrc4(&split, &NrcConfig::default()).unwrap();
        assert!(verify_no_rainbow(&split.hypergraph(), &out.witness.unwrap()));
        assert!(fpt_nrc4(&pattern(3, &[&[0, 1, 2]]), &NrcConfig::default()).is_err());
    }
}
