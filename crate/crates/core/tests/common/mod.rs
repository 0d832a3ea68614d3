#![allow(dead_code)]

use decisive::{CoveragePattern, Hypergraph};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random edge list on `n` nodes: `m` edges with sizes in `sizes`.
pub fn random_edges<R: Rng>(rng: &mut R, n: usize, m: usize, sizes: (usize, usize)) -> Vec<Vec<usize>> {
    let nodes: Vec<usize> = (0..n).collect();
    (0..m)
        .map(|_| {
            let size = rng.gen_range(sizes.0..=sizes.1.min(n));
            let mut e: Vec<usize> = nodes.choose_multiple(rng, size).copied().collect();
            e.sort_unstable();
            e
        })
        .collect()
}

pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize, m: usize, sizes: (usize, usize)) -> Hypergraph {
    Hypergraph::new(n, random_edges(rng, n, m, sizes)).unwrap()
}

pub fn random_pattern<R: Rng>(rng: &mut R, n: usize, k: usize, sizes: (usize, usize)) -> CoveragePattern {
    CoveragePattern::from_sets(n, &random_edges(rng, n, k, sizes)).unwrap()
}

/// Pattern whose taxa are the hypergraph's nodes and whose loci are its edges.
pub fn pattern_of(h: &Hypergraph) -> CoveragePattern {
    CoveragePattern::from_sets(h.node_count(), h.edges()).unwrap()
}

/// Pattern built from incidence rows given as bitmasks over `k` loci.
pub fn pattern_from_rows(rows: &[u32], k: usize) -> CoveragePattern {
    let sets: Vec<Vec<usize>> = (0..k)
        .map(|j| (0..rows.len()).filter(|&i| rows[i] >> j & 1 == 1).collect())
        .filter(|s: &Vec<usize>| !s.is_empty())
        .collect();
    CoveragePattern::from_sets(rows.len(), &sets).unwrap()
}

/// Component count by repeated graph search over edges, independent of the
/// library's union-find.
pub fn component_count(h: &Hypergraph) -> usize {
    let n = h.node_count();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for e in h.edges().iter().filter(|e| e.contains(&v)) {
                for &u in e {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
    }
    count
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every coloring of `n` nodes with colors `1..=4`, surjective or not.
pub fn all_colorings(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u64..4u64.pow(n as u32)).map(move |mut m| {
        let mut c = vec![0u8; n];
        for v in (0..n).rev() {
            c[v] = (m % 4) as u8 + 1;
            m /= 4;
        }
        c
    })
}
