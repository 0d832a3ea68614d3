use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Hypergraph, Result};

/// One locus: its name and the sorted indices of the taxa it covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Locus {
    pub name: String,
    pub taxa: Vec<usize>,
}

/// A taxon set together with the taxon subsets covered by each locus.
///
/// Taxa are identified by position in `taxa`; names are for presentation.
/// Every locus is nonempty, in range, and stored sorted without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveragePattern {
    taxa: Vec<String>,
    loci: Vec<Locus>,
}

impl CoveragePattern {
    pub fn new(taxa: Vec<String>, loci: Vec<(String, Vec<usize>)>) -> Result<Self> {
        if taxa.is_empty() {
            return Err(Error::InvalidPattern("taxon set is empty".into()));
        }
        let mut seen = HashSet::new();
        for t in &taxa {
            if !seen.insert(t.as_str()) {
                return Err(Error::InvalidPattern(format!("duplicate taxon name '{t}'")));
            }
        }
        let mut names = HashSet::new();
        let mut out = Vec::with_capacity(loci.len());
        for (name, mut members) in loci {
            if !names.insert(name.clone()) {
                return Err(Error::InvalidPattern(format!("duplicate locus name '{name}'")));
            }
            members.sort_unstable();
            members.dedup();
            if members.is_empty() {
                return Err(Error::InvalidPattern(format!("locus '{name}' covers no taxa")));
            }
            if let Some(&bad) = members.iter().find(|&&i| i >= taxa.len()) {
                return Err(Error::InvalidPattern(format!(
                    "locus '{name}' references taxon index {bad} but only {} taxa exist",
                    taxa.len()
                )));
            }
            out.push(Locus { name, taxa: members });
        }
        Ok(CoveragePattern { taxa, loci: out })
    }

    /// Builds a pattern with generated names `t1..tn` and `L1..Lk`.
    pub fn from_sets(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let taxa = (1..=n).map(|i| format!("t{i}")).collect();
        let loci = sets
            .iter()
            .enumerate()
            .map(|(j, s)| (format!("L{}", j + 1), s.clone()))
            .collect();
        Self::new(taxa, loci)
    }

    pub fn taxa(&self) -> &[String] {
        &self.taxa
    }

    pub fn loci(&self) -> &[Locus] {
        &self.loci
    }

    pub fn n(&self) -> usize {
        self.taxa.len()
    }

    pub fn k(&self) -> usize {
        self.loci.len()
    }

    pub fn taxon_index(&self, name: &str) -> Option<usize> {
        self.taxa.iter().position(|t| t == name)
    }

    /// Number of loci covering each taxon.
    pub fn coverage_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n()];
        for locus in &self.loci {
            for &t in &locus.taxa {
                counts[t] += 1;
            }
        }
        counts
    }

    /// Whether some locus covers every taxon.
    pub fn has_full_locus(&self) -> bool {
        self.loci.iter().any(|l| l.taxa.len() == self.n())
    }

    /// The coverage hypergraph: taxon i is node i, each locus an edge.
    pub fn hypergraph(&self) -> Hypergraph {
        let edges = self.loci.iter().map(|l| l.taxa.clone()).collect();
        Hypergraph::new(self.n(), edges).expect("pattern invariants imply a valid hypergraph")
    }

    /// Drops one taxon, reindexing the rest and deleting loci left empty.
    pub fn without_taxon(&self, taxon: usize) -> CoveragePattern {
        let taxa = self
            .taxa
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != taxon)
            .map(|(_, t)| t.clone())
            .collect();
        let loci = self
            .loci
            .iter()
            .filter_map(|l| {
                let taxa: Vec<usize> = l
                    .taxa
                    .iter()
                    .filter(|&&t| t != taxon)
                    .map(|&t| if t > taxon { t - 1 } else { t })
                    .collect();
                (!taxa.is_empty()).then(|| Locus { name: l.name.clone(), taxa })
            })
            .collect();
        CoveragePattern { taxa, loci }
    }

    /// Applies a taxon permutation (`perm[old] = new`) and a locus order.
    pub fn permuted(&self, perm: &[usize], locus_order: &[usize]) -> Result<CoveragePattern> {
        let mut taxa = vec![String::new(); self.n()];
        for (old, name) in self.taxa.iter().enumerate() {
            taxa[perm[old]] = name.clone();
        }
        let loci = locus_order
            .iter()
            .map(|&j| {
                let l = &self.loci[j];
                (l.name.clone(), l.taxa.iter().map(|&t| perm[t]).collect())
            })
            .collect();
        CoveragePattern::new(taxa, loci)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert!(CoveragePattern::new(names(&["a", "a"]), vec![]).is_err());
        assert!(CoveragePattern::new(names(&["a", "b"]), vec![("L".into(), vec![])]).is_err());
        assert!(CoveragePattern::new(names(&["a", "b"]), vec![("L".into(), vec![2])]).is_err());
        assert!(CoveragePattern::new(
            names(&["a", "b"]),
            vec![("L".into(), vec![0]), ("L".into(), vec![1])]
        )
        .is_err());
    }

    #[test]
    fn loci_sorted_and_deduped() {
        let p = CoveragePattern::from_sets(4, &[vec![3, 1, 1, 0]]).unwrap();
        assert_eq!(p.loci()[0].taxa, vec![0, 1, 3]);
    }

    #[test]
    fn removing_a_taxon_reindexes() {
        let p = CoveragePattern::from_sets(4, &[vec![0, 1, 2], vec![1, 2, 3], vec![0]]).unwrap();
        let q = p.without_taxon(0);
        assert_eq!(q.taxa(), &["t2", "t3", "t4"]);
        assert_eq!(q.k(), 2);
        assert_eq!(q.loci()[0].taxa, vec![0, 1]);
        assert_eq!(q.loci()[1].taxa, vec![0, 1, 2]);
        assert_eq!(p.coverage_counts(), vec![2, 2, 2, 1]);
    }
}
