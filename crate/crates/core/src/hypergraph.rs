use std::collections::HashSet;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::bitset::NodeSet;
use crate::{Error, Result};

/// Nodes `0..node_count` and a deduplicated list of nonempty edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    node_count: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Sorts each edge, rejects empty or out-of-range edges, and drops
    /// duplicate edges keeping the first occurrence.
    pub fn new(node_count: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidInstance("hypergraph needs at least one node".into()));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (j, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(Error::InvalidInstance(format!("edge {j} is empty")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= node_count) {
                return Err(Error::InvalidInstance(format!(
                    "edge {j} contains node {v} outside 0..{node_count}"
                )));
            }
            if seen.insert(e.clone()) {
                out.push(e);
            }
        }
        Ok(Hypergraph { node_count, edges: out })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as bitsets, in edge order.
    pub fn edge_sets(&self) -> Vec<NodeSet> {
        self.edges.iter().map(|e| NodeSet::from_indices(self.node_count, e)).collect()
    }

    /// Edges as single-word masks; `None` when nodes do not fit in 64 bits.
    pub fn edge_masks(&self) -> Option<Vec<u64>> {
        (self.node_count <= 64).then(|| {
            self.edges.iter().map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v)).collect()
        })
    }

    /// Copy without edges of fewer than `min_size` nodes.
    pub fn without_small_edges(&self, min_size: usize) -> Hypergraph {
        Hypergraph {
            node_count: self.node_count,
            edges: self.edges.iter().filter(|e| e.len() >= min_size).cloned().collect(),
        }
    }

    /// True iff some edge contains every node of `set`.
    pub fn covers(&self, set: &[usize]) -> bool {
        self.edges.iter().any(|e| set.iter().all(|v| e.binary_search(v).is_ok()))
    }

    pub fn connected_components(&self) -> ComponentPartition {
        let mut uf = UnionFind::<usize>::new(self.node_count);
        for e in &self.edges {
            for w in e.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let labels = uf.into_labeling();
        let mut remap = vec![usize::MAX; self.node_count];
        let mut component = Vec::with_capacity(self.node_count);
        let mut count = 0;
        for root in labels {
            if remap[root] == usize::MAX {
                remap[root] = count;
                count += 1;
            }
            component.push(remap[root]);
        }
        ComponentPartition { component, count }
    }
}

/// Component id per node, numbered by first appearance in node order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPartition {
    pub component: Vec<usize>,
    pub count: usize,
}

impl ComponentPartition {
    pub fn members(&self, id: usize) -> Vec<usize> {
        (0..self.component.len()).filter(|&v| self.component[v] == id).collect()
    }
}
