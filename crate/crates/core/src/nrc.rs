//! Exact no-rainbow coloring solvers for 2, 3 and 4 colors.
//!
//! The 3- and 4-color searches guess the smallest color classes by subset
//! enumeration and then decide the last two classes in polynomial time:
//! every edge that already sees all guessed colors must be monochrome on its
//! still-uncolored nodes, so the uncolored nodes split into equivalence
//! classes and a valid completion exists iff there are at least two.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::iter::{ParallelBridge, ParallelIterator};
use serde::{Deserialize, Serialize};

use crate::bitset::{mask_nodes, scatter, Combinations, NodeSet};
use crate::coloring::Coloring;
use crate::{Error, Hypergraph, Result};

/// Default node limit for the exponential searches.
pub const DEFAULT_SEARCH_CAP: usize = 34;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NrcConfig {
    /// Largest node count the 3/4-color searches accept (at most 64).
    pub search_cap: usize,
    /// Split the candidate space across threads; the verdict is unchanged,
    /// the witness may differ from the sequential one.
    pub parallel: bool,
}

impl Default for NrcConfig {
    fn default() -> Self {
        NrcConfig { search_cap: DEFAULT_SEARCH_CAP, parallel: false }
    }
}

/// Which procedure produced an [`NrcOutcome`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NrcRule {
    ComponentSplit,
    NonNeighbor,
    Search3,
    Search4,
    Exhausted,
}

impl NrcRule {
    pub fn as_str(self) -> &'static str {
        match self {
            NrcRule::ComponentSplit => "component-split",
            NrcRule::NonNeighbor => "non-neighbor",
            NrcRule::Search3 => "search-3",
            NrcRule::Search4 => "search-4",
            NrcRule::Exhausted => "exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NrcOutcome {
    pub witness: Option<Coloring>,
    pub rule: NrcRule,
    /// Candidate color classes examined by the search (0 for direct rules).
    pub explored: u64,
}

impl NrcOutcome {
    fn found(witness: Coloring, rule: NrcRule, explored: u64) -> Self {
        NrcOutcome { witness: Some(witness), rule, explored }
    }

    fn exhausted(explored: u64) -> Self {
        NrcOutcome { witness: None, rule: NrcRule::Exhausted, explored }
    }

    pub fn has_witness(&self) -> bool {
        self.witness.is_some()
    }
}

fn require_nodes(h: &Hypergraph, min: usize, what: &str) -> Result<()> {
    if h.node_count() < min {
        return Err(Error::InvalidInstance(format!(
            "{what} needs at least {min} nodes, got {}",
            h.node_count()
        )));
    }
    Ok(())
}

fn require_searchable(h: &Hypergraph, cfg: &NrcConfig, engine: &'static str) -> Result<Vec<u64>> {
    let cap = cfg.search_cap.min(64);
    if h.node_count() > cap {
        return Err(Error::SizeLimit { engine, size: h.node_count(), cap });
    }
    Ok(h.edge_masks().expect("node count checked against 64"))
}

/// No-rainbow 2-coloring: exists iff the hypergraph is disconnected.
pub fn nrc2(h: &Hypergraph) -> Result<NrcOutcome> {
    require_nodes(h, 2, "2-coloring")?;
    let parts = h.connected_components();
    if parts.count < 2 {
        return Ok(NrcOutcome::exhausted(0));
    }
    let colors = parts.component.iter().map(|&c| if c == 0 { 1 } else { 2 }).collect();
    Ok(NrcOutcome::found(Coloring::from_solver(2, colors), NrcRule::ComponentSplit, 0))
}

/// Colors the nodes of `set` with `1..=|set|` in order and cycles the other
/// nodes through the remaining colors. No-rainbow whenever `set` lies in no edge.
pub fn nonneighbor_coloring(n: usize, set: &[usize], r: u8) -> Result<Coloring> {
    let a = set.len();
    if a == 0 || a >= r as usize || n < r as usize {
        return Err(Error::Precondition(format!(
            "non-neighbor coloring needs 1 <= |A| < r <= n (|A|={a}, r={r}, n={n})"
        )));
    }
    let mut colors = vec![0u8; n];
    for (i, &v) in set.iter().enumerate() {
        colors[v] = i as u8 + 1;
    }
    let spare = r as usize - a;
    let mut next = 0;
    for c in colors.iter_mut().filter(|c| **c == 0) {
        *c = (a + 1 + next % spare) as u8;
        next += 1;
    }
    Ok(Coloring::from_solver(r, colors))
}

/// Finds the first node set of size 2..r (pairs, then triples) contained in
/// no edge, and returns the coloring built on it.
pub fn non_neighbor_witness(h: &Hypergraph, r: u8) -> Result<Option<Coloring>> {
    let n = h.node_count();
    if r < 2 {
        return Err(Error::InvalidInstance(format!("non-neighbor rule needs r >= 2, got {r}")));
    }
    if n < r as usize {
        return Err(Error::InvalidInstance(format!("need n >= r, got n={n}, r={r}")));
    }
    Ok(find_uncovered_set(h, r as usize - 1)
        .map(|set| nonneighbor_coloring(n, &set, r).expect("sizes checked")))
}

/// Lexicographically first set of 2..=max_size nodes (smaller sizes first)
/// that no edge contains.
fn find_uncovered_set(h: &Hypergraph, max_size: usize) -> Option<Vec<usize>> {
    let n = h.node_count();
    let k = h.edge_count();
    // incidence[v] = edges containing v
    let mut incidence = vec![NodeSet::new(k); n];
    for (j, e) in h.edges().iter().enumerate() {
        for &v in e {
            incidence[v].insert(j);
        }
    }
    if max_size >= 2 {
        for u in 0..n {
            for v in u + 1..n {
                let mut common = incidence[u].clone();
                common.intersect_with(&incidence[v]);
                if common.is_empty() {
                    return Some(vec![u, v]);
                }
            }
        }
    }
    if max_size >= 3 {
        for u in 0..n {
            for v in u + 1..n {
                let mut uv = incidence[u].clone();
                uv.intersect_with(&incidence[v]);
                for w in v + 1..n {
                    let mut uvw = uv.clone();
                    uvw.intersect_with(&incidence[w]);
                    if uvw.is_empty() {
                        return Some(vec![u, v, w]);
                    }
                }
            }
        }
    }
    None
}

/// Grows `class` to the closure under the active edges: any active edge that
/// meets `class` pulls its free nodes in.
fn close_class(active: &[u64], free: u64, mut class: u64) -> u64 {
    loop {
        let before = class;
        for &e in active {
            let fe = e & free;
            if fe & class != 0 && fe & !class != 0 {
                class |= fe;
            }
        }
        if class == before {
            return class;
        }
    }
}

/// Completes a guess: `active` edges must be monochrome on `free`. Returns the
/// node set for the first of the two remaining colors, or `None` if the free
/// nodes cannot be split.
fn split_free(active: &[u64], free: u64) -> Option<u64> {
    match active.iter().find(|&&e| (e & free).count_ones() >= 2) {
        None => Some(free & free.wrapping_neg()),
        Some(&e) => {
            let class = close_class(active, free, e & free);
            (class != free).then_some(class)
        }
    }
}

fn assemble(n: usize, classes: &[u64]) -> Coloring {
    let mut colors = vec![0u8; n];
    for (q, &mask) in classes.iter().enumerate() {
        for v in mask_nodes(mask) {
            colors[v] = q as u8 + 1;
        }
    }
    Coloring::from_solver(classes.len() as u8, colors)
}

fn all_nodes(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Candidate smallest classes: all subsets of size 1..=max_size in order.
fn class_candidates(n: usize, max_size: usize) -> impl Iterator<Item = u64> + Send {
    (1..=max_size).flat_map(move |i| Combinations::new(n, i))
}

/// Exact no-rainbow 3-coloring search.
pub fn nrc3(h: &Hypergraph, cfg: &NrcConfig) -> Result<NrcOutcome> {
    require_nodes(h, 3, "3-coloring")?;
    let masks = require_searchable(h, cfg, "nrc3")?;
    let n = h.node_count();
    let full = all_nodes(n);
    let masks: Vec<u64> = masks.into_iter().filter(|e| e.count_ones() >= 3).collect();
    let explored = AtomicU64::new(0);

    let try_class = |a: u64| -> Option<Coloring> {
        explored.fetch_add(1, Ordering::Relaxed);
        let free = full & !a;
        let active: Vec<u64> = masks.iter().copied().filter(|&e| e & a != 0).collect();
        let second = split_free(&active, free)?;
        Some(assemble(n, &[a, second, free & !second]))
    };

    let witness = if cfg.parallel {
        class_candidates(n, n / 3).par_bridge().find_map_any(try_class)
    } else {
        class_candidates(n, n / 3).find_map(try_class)
    };
    let explored = explored.into_inner();
    Ok(match witness {
        Some(c) => NrcOutcome::found(c, NrcRule::Search3, explored),
        None => NrcOutcome::exhausted(explored),
    })
}

/// Exact no-rainbow 4-coloring search over guesses of the two smallest
/// color classes.
pub fn nrc4(h: &Hypergraph, cfg: &NrcConfig) -> Result<NrcOutcome> {
    require_nodes(h, 4, "4-coloring")?;
    let masks = require_searchable(h, cfg, "nrc4")?;
    let n = h.node_count();
    let full = all_nodes(n);
    let masks: Vec<u64> = masks.into_iter().filter(|e| e.count_ones() >= 4).collect();
    let explored = AtomicU64::new(0);

    let try_first = |a: u64| -> Option<Coloring> {
        let rest = full & !a;
        // Only edges through A with room for B and two free nodes matter.
        let through_a: Vec<u64> =
            masks.iter().copied().filter(|&e| e & a != 0 && (e & rest).count_ones() >= 3).collect();
        let positions = mask_nodes(rest);
        let max_j = positions.len() / 3;
        let mut active = Vec::with_capacity(through_a.len());
        let mut count = 0u64;
        let found = (1..=max_j).flat_map(|j| Combinations::new(positions.len(), j)).find_map(|cb| {
            count += 1;
            let b = scatter(cb, &positions);
            let free = rest & !b;
            active.clear();
            active.extend(through_a.iter().copied().filter(|&e| e & b != 0));
            let third = split_free(&active, free)?;
            Some(assemble(n, &[a, b, third, free & !third]))
        });
        explored.fetch_add(count, Ordering::Relaxed);
        found
    };

    let witness = if cfg.parallel {
        class_candidates(n, n / 4).par_bridge().find_map_any(try_first)
    } else {
        class_candidates(n, n / 4).find_map(try_first)
    };
    let explored = explored.into_inner();
    Ok(match witness {
        Some(c) => NrcOutcome::found(c, NrcRule::Search4, explored),
        None => NrcOutcome::exhausted(explored),
    })
}

/// Dispatches on `r`, trying the non-neighbor rule before the 3/4-color searches.
pub fn nrc(h: &Hypergraph, r: u8, cfg: &NrcConfig) -> Result<NrcOutcome> {
    if !(2..=4).contains(&r) {
        return Err(Error::InvalidInstance(format!("r must be 2, 3 or 4, got {r}")));
    }
    if h.node_count() < r as usize {
        return Err(Error::InvalidInstance(format!(
            "need at least {r} nodes for a surjective {r}-coloring, got {}",
            h.node_count()
        )));
    }
    if r == 2 {
        return nrc2(h);
    }
    if let Some(c) = non_neighbor_witness(h, r)? {
        return Ok(NrcOutcome::found(c, NrcRule::NonNeighbor, 0));
    }
    if r == 3 {
        nrc3(h, cfg)
    } else {
        nrc4(h, cfg)
    }
}
