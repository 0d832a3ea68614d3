//! The decisiveness decision procedure and the greedy decisive-subset loop.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bounds::{self, CountConfig};
use crate::coloring::{check_no_rainbow, Coloring};
use crate::nrc::{self, NrcConfig};
use crate::reduce::{self, dedup, incidence_matrix};
use crate::{oracle, CoveragePattern, Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Polynomial screens first, then the kernel or direct search.
    #[default]
    Auto,
    /// The 4-color search on the full hypergraph.
    Direct,
    /// The 4-color search through the reduced instance.
    Fpt,
    /// Exhaustive enumeration, capped.
    Oracle,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "direct" => Ok(Strategy::Direct),
            "fpt" => Ok(Strategy::Fpt),
            "oracle" => Ok(Strategy::Oracle),
            other => Err(Error::Domain(format!("unknown strategy '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideOptions {
    pub strategy: Strategy,
    pub nrc: NrcConfig,
    pub oracle_cap: usize,
    pub count: CountConfig,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            strategy: Strategy::Auto,
            nrc: NrcConfig::default(),
            oracle_cap: oracle::DEFAULT_NODE_CAP,
            count: CountConfig::default(),
        }
    }
}

impl DecideOptions {
    pub fn with_strategy(strategy: Strategy) -> Self {
        DecideOptions { strategy, ..Self::default() }
    }
}

/// The rule or engine that settled a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecidedBy {
    #[serde(rename = "trivial-small-n")]
    TrivialSmallN,
    #[serde(rename = "full-locus")]
    FullLocus,
    #[serde(rename = "triple-gap")]
    TripleGap,
    #[serde(rename = "quadruple-bound+search")]
    QuadrupleBoundSearch,
    #[serde(rename = "zero-and")]
    ZeroAnd,
    #[serde(rename = "fpt")]
    Fpt,
    #[serde(rename = "direct-search")]
    DirectSearch,
    #[serde(rename = "rooted")]
    Rooted,
    #[serde(rename = "oracle")]
    Oracle,
}

impl DecidedBy {
    pub fn as_str(self) -> &'static str {
        match self {
            DecidedBy::TrivialSmallN => "trivial-small-n",
            DecidedBy::FullLocus => "full-locus",
            DecidedBy::TripleGap => "triple-gap",
            DecidedBy::QuadrupleBoundSearch => "quadruple-bound+search",
            DecidedBy::ZeroAnd => "zero-and",
            DecidedBy::Fpt => "fpt",
            DecidedBy::DirectSearch => "direct-search",
            DecidedBy::Rooted => "rooted",
            DecidedBy::Oracle => "oracle",
        }
    }
}

impl std::fmt::Display for DecidedBy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DecideStats {
    #[serde(with = "duration_ms")]
    pub elapsed: Duration,
    /// Candidate color classes examined by the searches.
    pub explored: u64,
    /// Whether the covered-quadruple count fell below its threshold;
    /// `None` when the count was not computed.
    pub quadruple_bound_hit: Option<bool>,
}

mod duration_ms {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64() * 1e3)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let ms = f64::deserialize(d)?;
        Ok(Duration::from_secs_f64(ms.max(0.0) / 1e3))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub decisive: bool,
    /// Four nonempty blocks of taxon indices, ordered by smallest member,
    /// no locus meeting all four. Present iff not decisive.
    pub witness: Option<Vec<Vec<usize>>>,
    pub decided_by: DecidedBy,
    pub stats: DecideStats,
}

impl Verdict {
    /// The witness as a 4-coloring: block `q` gets color `q + 1`.
    pub fn witness_coloring(&self) -> Option<Coloring> {
        let blocks = self.witness.as_ref()?;
        let n = blocks.iter().map(Vec::len).sum();
        let mut colors = vec![0u8; n];
        for (q, block) in blocks.iter().enumerate() {
            for &v in block {
                colors[v] = q as u8 + 1;
            }
        }
        Coloring::try_new(4, colors).ok()
    }
}

/// Color classes of a witness as blocks ordered by smallest member.
pub fn canonical_partition(c: &Coloring) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = c.classes().into_iter().filter(|b| !b.is_empty()).collect();
    blocks.sort_by_key(|b| b[0]);
    blocks
}

struct Found {
    witness: Option<Coloring>,
    decided_by: DecidedBy,
    explored: u64,
}

impl Found {
    fn decisive(decided_by: DecidedBy) -> Self {
        Found { witness: None, decided_by, explored: 0 }
    }

    fn witness(c: Coloring, decided_by: DecidedBy) -> Self {
        Found { witness: Some(c), decided_by, explored: 0 }
    }
}

/// Decides whether `pattern` is decisive.
pub fn decide(pattern: &CoveragePattern, opts: &DecideOptions) -> Result<Verdict> {
    let start = Instant::now();
    let mut bound_hit = None;
    let found = if pattern.n() <= 3 {
        Found::decisive(DecidedBy::TrivialSmallN)
    } else {
        match opts.strategy {
            Strategy::Auto => decide_auto(pattern, opts, &mut bound_hit)?,
            Strategy::Direct => direct(pattern, opts)?,
            Strategy::Fpt => fpt(pattern, opts)?,
            Strategy::Oracle => Found {
                witness: oracle::brute_force_nrc(&pattern.hypergraph(), 4, opts.oracle_cap)?,
                decided_by: DecidedBy::Oracle,
                explored: 0,
            },
        }
    };
    let witness = match &found.witness {
        Some(c) => {
            check_no_rainbow(&pattern.hypergraph(), c)
                .map_err(|v| Error::Internal(format!("witness failed verification: {v}")))?;
            Some(canonical_partition(c))
        }
        None => None,
    };
    let verdict = Verdict {
        decisive: witness.is_none(),
        witness,
        decided_by: found.decided_by,
        stats: DecideStats {
            elapsed: start.elapsed(),
            explored: found.explored,
            quadruple_bound_hit: bound_hit,
        },
    };
    log::info!(
        "n={} k={}: {} by {}",
        pattern.n(),
        pattern.k(),
        if verdict.decisive { "decisive" } else { "not decisive" },
        verdict.decided_by
    );
    Ok(verdict)
}

fn direct(pattern: &CoveragePattern, opts: &DecideOptions) -> Result<Found> {
    let out = nrc::nrc4(&pattern.hypergraph(), &opts.nrc)?;
    Ok(Found { witness: out.witness, decided_by: DecidedBy::DirectSearch, explored: out.explored })
}

fn fpt(pattern: &CoveragePattern, opts: &DecideOptions) -> Result<Found> {
    let out = reduce::fpt_nrc4(pattern, &opts.nrc)?;
    Ok(Found { witness: out.witness, decided_by: DecidedBy::Fpt, explored: out.explored })
}

fn decide_auto(
    pattern: &CoveragePattern,
    opts: &DecideOptions,
    bound_hit: &mut Option<bool>,
) -> Result<Found> {
    let n = pattern.n();
    if pattern.has_full_locus() {
        return Ok(Found::decisive(DecidedBy::FullLocus));
    }
    // Two taxa sharing no locus leave every triple through them uncovered,
    // so the pair form of the zero-AND screen runs ahead of the triple scan.
    let ri = dedup(&incidence_matrix(pattern));
    if let Some(pair) = reduce::find_zero_and(&ri).filter(|s| s.len() == 2) {
        let c = nrc::nonneighbor_coloring(n, &pair, 4)?;
        return Ok(Found::witness(c, DecidedBy::ZeroAnd));
    }
    if let Err(triple) = bounds::triple_coverage(pattern) {
        let c = nrc::nonneighbor_coloring(n, &triple, 4)?;
        return Ok(Found::witness(c, DecidedBy::TripleGap));
    }
    // With triples covered, a shared taxon makes the pattern decisive.
    if bounds::rooted_decide(pattern) == Some(true) {
        return Ok(Found::decisive(DecidedBy::Rooted));
    }
    debug_assert!(reduce::zero_and_screen(&ri).is_none(), "triple coverage rules out zero ANDs");
    match bounds::lower_bound_screen(pattern, &opts.count) {
        Ok(hit) => *bound_hit = Some(hit.is_some()),
        Err(e) if e.is_size_limit() => log::debug!("quadruple count skipped: {e}"),
        Err(e) => return Err(e),
    }
    let mut found = if ri.reduced_n() < n { fpt(pattern, opts)? } else { direct(pattern, opts)? };
    if *bound_hit == Some(true) {
        if found.witness.is_none() {
            return Err(Error::Internal(
                "quadruple count below threshold but the search found no witness".into(),
            ));
        }
        found.decided_by = DecidedBy::QuadrupleBoundSearch;
    }
    Ok(found)
}

/// One step of the decisive-subset loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Removal {
    /// Index of the taxon in the original pattern.
    pub taxon: usize,
    pub name: String,
    /// Loci covering the taxon when it was removed.
    pub coverage: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsetTrace {
    pub removed: Vec<Removal>,
    /// Original indices of the taxa kept, ascending.
    pub kept: Vec<usize>,
    pub pattern: CoveragePattern,
    pub verdict: Verdict,
}

/// A failed decisive-subset run: the removals made before `error`.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("{error} (after {} removals)", removed.len())]
pub struct SubsetFailure {
    pub removed: Vec<Removal>,
    pub error: Error,
}

/// Greedily removes least-covered taxa (ties to the earliest) until the
/// remaining pattern is decisive.
pub fn decisive_subset(
    pattern: &CoveragePattern,
    opts: &DecideOptions,
) -> std::result::Result<SubsetTrace, SubsetFailure> {
    let mut current = pattern.clone();
    let mut kept: Vec<usize> = (0..pattern.n()).collect();
    let mut removed = Vec::new();
    loop {
        let verdict = match decide(&current, opts) {
            Ok(v) => v,
            Err(error) => return Err(SubsetFailure { removed, error }),
        };
        if verdict.decisive {
            return Ok(SubsetTrace { removed, kept, pattern: current, verdict });
        }
        let counts = current.coverage_counts();
        let (pos, &coverage) = counts
            .iter()
            .enumerate()
            .min_by_key(|&(i, &c)| (c, i))
            .expect("a non-decisive pattern has at least 4 taxa");
        log::debug!("removing taxon {} covered by {coverage} loci", current.taxa()[pos]);
        removed.push(Removal { taxon: kept[pos], name: current.taxa()[pos].clone(), coverage });
        kept.remove(pos);
        current = current.without_taxon(pos);
    }
}
