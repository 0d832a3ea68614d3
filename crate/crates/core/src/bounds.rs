//! Counting bounds on coverage and the polynomial special cases.
//!
//! `A(n, r)` is the fewest edges an `n`-node `r`-uniform hypergraph needs to
//! rule out every no-rainbow `r`-coloring; it equals `C(n-1, r-1)`. With
//! `r = 4` this bounds the number of covered quadruples of a decisive
//! pattern from below.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bitset::NodeSet;
use crate::{CoveragePattern, Error, Hypergraph, Result};

/// Loci count up to which quadruples are counted by inclusion-exclusion.
pub const DEFAULT_INCLUSION_EXCLUSION_MAX_K: usize = 20;
/// Containment tests allowed for direct quadruple enumeration.
pub const DEFAULT_ENUMERATION_WORK_CAP: u128 = 2_000_000_000;

fn check_domain(n: u64, r: u64) -> Result<()> {
    if r < 1 || n < r {
        return Err(Error::Domain(format!("A(n, r) needs n >= r >= 1, got n={n}, r={r}")));
    }
    Ok(())
}

/// `A(n, r)` evaluated by its recurrence, memoized.
pub fn a_recurrence(n: u64, r: u64) -> Result<BigUint> {
    check_domain(n, r)?;
    fn go(n: u64, r: u64, memo: &mut HashMap<(u64, u64), BigUint>) -> BigUint {
        if r == 1 || n == r {
            return BigUint::from(1u32);
        }
        if let Some(v) = memo.get(&(n, r)) {
            return v.clone();
        }
        let v = go(n - 1, r - 1, memo) + go(n - 1, r, memo);
        memo.insert((n, r), v.clone());
        v
    }
    Ok(go(n, r, &mut HashMap::new()))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `A(n, r)` in closed form, `C(n-1, r-1)`.
pub fn a_closed(n: u64, r: u64) -> Result<BigUint> {
    check_domain(n, r)?;
    Ok(binomial(n - 1, r - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountConfig {
    pub inclusion_exclusion_max_k: usize,
    pub enumeration_work_cap: u128,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            inclusion_exclusion_max_k: DEFAULT_INCLUSION_EXCLUSION_MAX_K,
            enumeration_work_cap: DEFAULT_ENUMERATION_WORK_CAP,
        }
    }
}

/// Number of 4-taxon sets contained in at least one locus.
pub fn count_quadruples(pattern: &CoveragePattern, cfg: &CountConfig) -> Result<u128> {
    if pattern.n() < 4 {
        return Err(Error::Domain(format!("quadruple count needs n >= 4, got {}", pattern.n())));
    }
    if pattern.k() <= cfg.inclusion_exclusion_max_k {
        Ok(count_quadruples_inclusion_exclusion(pattern))
    } else {
        count_quadruples_enumeration(pattern, cfg.enumeration_work_cap)
    }
}

/// Sum over nonempty locus subsets `T` of `(-1)^(|T|+1) C(|cap T|, 4)`.
/// Subsets are grown depth-first and pruned once the intersection is below 4.
pub fn count_quadruples_inclusion_exclusion(pattern: &CoveragePattern) -> u128 {
    let n = pattern.n();
    let sets: Vec<NodeSet> =
        pattern.loci().iter().map(|l| NodeSet::from_indices(n, &l.taxa)).collect();

    fn go(sets: &[NodeSet], start: usize, acc: &NodeSet, depth: usize, total: &mut i128) {
        for j in start..sets.len() {
            let mut next = acc.clone();
            next.intersect_with(&sets[j]);
            let size = next.len() as u64;
            if size < 4 {
                continue;
            }
            let term = binomial_u128(size, 4) as i128;
            if depth.is_multiple_of(2) {
                *total += term;
            } else {
                *total -= term;
            }
            go(sets, j + 1, &next, depth + 1, total);
        }
    }

    let mut all = NodeSet::new(n);
    for v in 0..n {
        all.insert(v);
    }
    let mut total = 0i128;
    go(&sets, 0, &all, 0, &mut total);
    total as u128
}

/// Checks every 4-subset of taxa against every locus.
pub fn count_quadruples_enumeration(pattern: &CoveragePattern, work_cap: u128) -> Result<u128> {
    let n = pattern.n();
    let work = binomial_u128(n as u64, 4) * pattern.k().max(1) as u128;
    if work > work_cap {
        return Err(Error::SizeLimit {
            engine: "quadruple enumeration",
            size: n,
            cap: work_cap.min(usize::MAX as u128) as usize,
        });
    }
    let sets: Vec<NodeSet> =
        pattern.loci().iter().map(|l| NodeSet::from_indices(n, &l.taxa)).collect();
    let mut count = 0u128;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    if sets.iter().any(|s| s.contains_all(&q)) {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// `C(n-1, 3)`: the fewest covered quadruples a decisive pattern can have.
pub fn quadruple_threshold(n: usize) -> u128 {
    binomial_u128(n as u64 - 1, 3)
}

/// `Some(count)` when the quadruple count falls below the threshold, which
/// proves non-decisiveness; `None` when the screen is inconclusive.
pub fn lower_bound_screen(pattern: &CoveragePattern, cfg: &CountConfig) -> Result<Option<u128>> {
    let count = count_quadruples(pattern, cfg)?;
    Ok((count < quadruple_threshold(pattern.n())).then_some(count))
}

/// `Ok(())` if every 3-set of taxa lies inside some locus, otherwise the
/// lexicographically first uncovered triple.
pub fn triple_coverage(pattern: &CoveragePattern) -> std::result::Result<(), [usize; 3]> {
    let n = pattern.n();
    let k = pattern.k();
    let mut incidence = vec![NodeSet::new(k); n];
    for (j, l) in pattern.loci().iter().enumerate() {
        for &t in &l.taxa {
            incidence[t].insert(j);
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let mut ab = incidence[a].clone();
            ab.intersect_with(&incidence[b]);
            for c in b + 1..n {
                let mut abc = ab.clone();
                abc.intersect_with(&incidence[c]);
                if abc.is_empty() {
                    return Err([a, b, c]);
                }
            }
        }
    }
    Ok(())
}

/// First taxon covered by every locus, if any.
pub fn common_taxon(pattern: &CoveragePattern) -> Option<usize> {
    let (first, rest) = pattern.loci().split_first()?;
    first.taxa.iter().copied().find(|t| rest.iter().all(|l| l.taxa.binary_search(t).is_ok()))
}

/// Exact verdict for patterns whose loci share a taxon: decisive iff every
/// triple is covered. `None` when no taxon is shared.
pub fn rooted_decide(pattern: &CoveragePattern) -> Option<bool> {
    common_taxon(pattern)?;
    Some(triple_coverage(pattern).is_ok())
}

/// `r`-uniform hypergraph on `n` nodes with exactly `A(n, r)` edges and no
/// no-rainbow `r`-coloring, built along the recurrence: the distinguished
/// last node joined to the `(n-1, r-1)` instance, plus the `(n-1, r)`
/// instance on the other nodes. The result is every `r`-set through node 0.
pub fn star_hypergraph(n: usize, r: usize) -> Result<Hypergraph> {
    if r < 2 || n <= r {
        return Err(Error::Domain(format!("star hypergraph needs n > r >= 2, got n={n}, r={r}")));
    }
    fn build(n: usize, r: usize) -> Vec<Vec<usize>> {
        if r == 1 {
            return vec![vec![0]];
        }
        if n == r {
            return vec![(0..n).collect()];
        }
        let last = n - 1;
        let mut edges: Vec<Vec<usize>> = build(n - 1, r - 1)
            .into_iter()
            .map(|mut e| {
                e.push(last);
                e
            })
            .collect();
        edges.extend(build(n - 1, r));
        edges
    }
    let mut edges = build(n, r);
    edges.sort();
    let h = Hypergraph::new(n, edges)?;
    debug_assert_eq!(BigUint::from(h.edge_count()), a_closed(n as u64, r as u64)?);
    Ok(h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    /// Covered quadruples; absent when counting was refused by a cap.
    pub quadruple_count: Option<String>,
    pub threshold: String,
    pub below_threshold: Option<bool>,
    pub triple_coverage_ok: bool,
    pub first_uncovered_triple: Option<[usize; 3]>,
    pub rooted: bool,
    pub common_taxon: Option<usize>,
}

pub fn bound_report(pattern: &CoveragePattern, cfg: &CountConfig) -> Result<BoundReport> {
    let n = pattern.n();
    if n < 4 {
        return Err(Error::Domain(format!("bound report needs n >= 4, got {n}")));
    }
    let count = match count_quadruples(pattern, cfg) {
        Ok(c) => Some(c),
        Err(e) if e.is_size_limit() => None,
        Err(e) => return Err(e),
    };
    let threshold = quadruple_threshold(n);
    let triples = triple_coverage(pattern);
    let common = common_taxon(pattern);
    Ok(BoundReport {
        n,
        k: pattern.k(),
        quadruple_count: count.map(|c| c.to_string()),
        threshold: threshold.to_string(),
        below_threshold: count.map(|c| c < threshold),
        triple_coverage_ok: triples.is_ok(),
        first_uncovered_triple: triples.err(),
        rooted: common.is_some(),
        common_taxon: common,
    })
}
