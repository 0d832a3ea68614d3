use serde::{Deserialize, Serialize};

use crate::{Error, Hypergraph, Result};

/// Anything that can report a node's color (1-based) or `None` if uncolored.
pub trait ColorLookup {
    fn color_of(&self, node: usize) -> Option<u8>;
}

/// A total assignment of colors `1..=r` to nodes.
///
/// [`Coloring::try_new`] also demands surjectivity; [`Coloring::from_assignment`]
/// only checks range, so untrusted colorings can still be run through
/// [`check_no_rainbow`] and rejected with a precise reason.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    r: u8,
    colors: Vec<u8>,
}

impl Coloring {
    pub fn try_new(r: u8, colors: Vec<u8>) -> Result<Self> {
        let c = Self::from_assignment(r, colors)?;
        if let Some(missing) = c.missing_color() {
            return Err(Error::InvalidInstance(format!("coloring does not use color {missing}")));
        }
        Ok(c)
    }

    pub fn from_assignment(r: u8, colors: Vec<u8>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInstance("color count must be positive".into()));
        }
        if let Some((v, &c)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > r) {
            return Err(Error::InvalidInstance(format!("node {v} has color {c} outside 1..={r}")));
        }
        Ok(Coloring { r, colors })
    }

    /// Constructor for the solvers, whose outputs are surjective by construction.
    pub(crate) fn from_solver(r: u8, colors: Vec<u8>) -> Self {
        debug_assert!(colors.iter().all(|&c| (1..=r).contains(&c)));
        Coloring { r, colors }
    }

    pub fn r(&self) -> u8 {
        self.r
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn into_colors(self) -> Vec<u8> {
        self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Smallest color in `1..=r` that no node uses.
    pub fn missing_color(&self) -> Option<u8> {
        let mut used = vec![false; self.r as usize + 1];
        for &c in &self.colors {
            used[c as usize] = true;
        }
        (1..=self.r).find(|&c| !used[c as usize])
    }

    pub fn is_surjective(&self) -> bool {
        self.missing_color().is_none()
    }

    /// Color classes in color order: `classes()[q - 1]` holds the nodes of color `q`.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.r as usize];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c as usize - 1].push(v);
        }
        out
    }
}

impl ColorLookup for Coloring {
    fn color_of(&self, node: usize) -> Option<u8> {
        self.colors.get(node).copied()
    }
}

/// A per-node assignment where some nodes may still be uncolored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialColoring {
    r: u8,
    colors: Vec<Option<u8>>,
}

impl PartialColoring {
    pub fn uncolored(r: u8, n: usize) -> Self {
        PartialColoring { r, colors: vec![None; n] }
    }

    pub fn set(&mut self, node: usize, color: Option<u8>) -> Result<()> {
        if let Some(c) = color {
            if c == 0 || c > self.r {
                return Err(Error::InvalidInstance(format!("color {c} outside 1..={}", self.r)));
            }
        }
        self.colors[node] = color;
        Ok(())
    }

    pub fn r(&self) -> u8 {
        self.r
    }

    /// Counts of each color on `edge`; index 0 holds the uncolored count.
    pub fn edge_counts(&self, edge: &[usize]) -> Vec<usize> {
        let mut m = vec![0; self.r as usize + 1];
        for &v in edge {
            m[self.colors[v].map_or(0, usize::from)] += 1;
        }
        m
    }

    /// The total coloring, if every node is colored.
    pub fn complete(&self) -> Option<Coloring> {
        let colors = self.colors.iter().copied().collect::<Option<Vec<u8>>>()?;
        Some(Coloring { r: self.r, colors })
    }
}

impl ColorLookup for PartialColoring {
    fn color_of(&self, node: usize) -> Option<u8> {
        self.colors.get(node).copied().flatten()
    }
}

/// True iff every color in `1..=r` appears on some node of `edge`.
pub fn is_rainbow(edge: &[usize], coloring: &impl ColorLookup, r: u8) -> bool {
    if edge.len() < r as usize {
        return false;
    }
    let mut seen = vec![false; r as usize + 1];
    let mut distinct = 0;
    for &v in edge {
        if let Some(c) = coloring.color_of(v) {
            if (1..=r).contains(&c) && !seen[c as usize] {
                seen[c as usize] = true;
                distinct += 1;
            }
        }
    }
    distinct == r as usize
}

/// Why a coloring fails to certify a no-rainbow coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    WrongLength { expected: usize, found: usize },
    NotSurjective { missing: u8 },
    RainbowEdge { edge: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::WrongLength { expected, found } => {
                write!(f, "coloring covers {found} nodes, hypergraph has {expected}")
            }
            Violation::NotSurjective { missing } => write!(f, "color {missing} is unused"),
            Violation::RainbowEdge { edge } => write!(f, "edge {edge} is rainbow"),
        }
    }
}

/// Certificate check: `coloring` is surjective and leaves no edge rainbow.
pub fn check_no_rainbow(h: &Hypergraph, coloring: &Coloring) -> std::result::Result<(), Violation> {
    if coloring.len() != h.node_count() {
        return Err(Violation::WrongLength { expected: h.node_count(), found: coloring.len() });
    }
    if let Some(missing) = coloring.missing_color() {
        return Err(Violation::NotSurjective { missing });
    }
    match h.edges().iter().position(|e| is_rainbow(e, coloring, coloring.r())) {
        Some(edge) => Err(Violation::RainbowEdge { edge }),
        None => Ok(()),
    }
}

pub fn verify_no_rainbow(h: &Hypergraph, coloring: &Coloring) -> bool {
    check_no_rainbow(h, coloring).is_ok()
}
