//! The chain-membership query game.
//!
//! A hidden set A ⊆ P̄ may only be probed with "is y in A?". A certificate
//! compiles into a decision tree that settles whether A is a chain; its depth
//! is at most |P̄| − 1.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certifier::Certificate;
use crate::lattice::{Lattice, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Strategy {
    Answer {
        #[serde(rename = "chain")]
        is_chain: bool,
    },
    Query {
        vertex: String,
        yes: Box<Strategy>,
        no: Box<Strategy>,
    },
}

impl Strategy {
    fn answer(is_chain: bool) -> Self {
        Strategy::Answer { is_chain }
    }

    fn query(vertex: &str, yes: Strategy, no: Strategy) -> Self {
        Strategy::Query {
            vertex: vertex.to_string(),
            yes: Box::new(yes),
            no: Box::new(no),
        }
    }

    /// Worst-case number of queries.
    pub fn depth(&self) -> usize {
        match self {
            Strategy::Answer { .. } => 0,
            Strategy::Query { yes, no, .. } => 1 + yes.depth().max(no.depth()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("certificate covers {certified:?} but the ground set is {ground:?}")]
    GroundMismatch {
        certified: Vec<String>,
        ground: Vec<String>,
    },
    #[error("ground set has {actual} elements, above the cap of {cap}")]
    CapExceeded { actual: usize, cap: usize },
    #[error("strategy queries {0}, which is not in the ground set")]
    UnknownVertex(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type Result<T, E = GameError> = std::result::Result<T, E>;

/// Compiles a certificate for Δ(ground) into a query strategy.
///
/// On a split at `y` the "no" branch follows the deletion. On "yes", every
/// remaining vertex outside the link is asked about first (any hit means A
/// holds two incomparable elements), then the link's own strategy runs.
pub fn compile_strategy(cert: &Certificate, ground: &[String]) -> Result<Strategy> {
    let certified = cert.vertex_set();
    let given: BTreeSet<String> = ground.iter().cloned().collect();
    if certified != given || given.len() != ground.len() {
        return Err(GameError::GroundMismatch {
            certified: certified.into_iter().collect(),
            ground: ground.to_vec(),
        });
    }
    match cert {
        Certificate::Leaf { .. } => Ok(Strategy::answer(true)),
        Certificate::Prune { child, .. } => compile_strategy(child, ground),
        Certificate::Split { vertex, dl, lk, .. } => {
            let rest: Vec<String> = ground.iter().filter(|v| *v != vertex).cloned().collect();
            let link_vertices = lk.vertex_set();
            let (link_ground, dead): (Vec<String>, Vec<String>) = rest
                .iter()
                .cloned()
                .partition(|v| link_vertices.contains(v));
            let no = compile_strategy(dl, &rest)?;
            let yes = dead
                .iter()
                .rev()
                .try_fold(compile_strategy(lk, &link_ground)?, |acc, d| {
                    Ok::<_, GameError>(Strategy::query(d, Strategy::answer(false), acc))
                })?;
            Ok(Strategy::query(vertex, yes, no))
        }
    }
}

/// One answered question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(String, u8)", into = "(String, u8)")]
pub struct QueryStep {
    pub vertex: String,
    pub answer: bool,
}

impl From<(String, u8)> for QueryStep {
    fn from((vertex, answer): (String, u8)) -> Self {
        QueryStep {
            vertex,
            answer: answer != 0,
        }
    }
}

impl From<QueryStep> for (String, u8) {
    fn from(q: QueryStep) -> Self {
        (q.vertex, q.answer as u8)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub queries: Vec<QueryStep>,
    pub verdict: bool,
}

/// Walks `strategy`, answering every question truthfully for `hidden`.
pub fn play(strategy: &Strategy, hidden: &HashSet<String>) -> (bool, Transcript) {
    let mut queries = Vec::new();
    let mut node = strategy;
    loop {
        match node {
            Strategy::Answer { is_chain } => {
                return (
                    *is_chain,
                    Transcript {
                        queries,
                        verdict: *is_chain,
                    },
                )
            }
            Strategy::Query { vertex, yes, no } => {
                let answer = hidden.contains(vertex);
                queries.push(QueryStep {
                    vertex: vertex.clone(),
                    answer,
                });
                node = if answer { yes } else { no };
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameReport {
    pub ground_size: usize,
    pub subsets_tested: u64,
    /// Wrong verdicts plus plays that asked the same element twice.
    pub mismatches: u64,
    /// Subsets that are chains.
    pub chains: u64,
    pub max_queries: usize,
    /// `histogram[k]` counts plays that used exactly `k` queries.
    pub histogram: Vec<u64>,
}

impl GameReport {
    fn merge(mut self, other: GameReport) -> GameReport {
        self.subsets_tested += other.subsets_tested;
        self.mismatches += other.mismatches;
        self.chains += other.chains;
        self.max_queries = self.max_queries.max(other.max_queries);
        if self.histogram.len() < other.histogram.len() {
            self.histogram.resize(other.histogram.len(), 0);
        }
        for (k, c) in other.histogram.into_iter().enumerate() {
            self.histogram[k] += c;
        }
        self
    }
}

/// Index-based tree for fast bitmask plays.
enum Node {
    Answer(bool),
    Query(usize, usize, usize),
}

fn flatten(strategy: &Strategy, ground: &[String], nodes: &mut Vec<Node>) -> Result<usize> {
    let id = nodes.len();
    match strategy {
        Strategy::Answer { is_chain } => nodes.push(Node::Answer(*is_chain)),
        Strategy::Query { vertex, yes, no } => {
            let v = ground
                .iter()
                .position(|g| g == vertex)
                .ok_or_else(|| GameError::UnknownVertex(vertex.clone()))?;
            nodes.push(Node::Query(v, 0, 0));
            let y = flatten(yes, ground, nodes)?;
            let n = flatten(no, ground, nodes)?;
            nodes[id] = Node::Query(v, y, n);
        }
    }
    Ok(id)
}

/// Plays every subset of `ground` and compares each verdict with the direct
/// pairwise-comparability test in `lattice`.
pub fn exhaustive_check(
    strategy: &Strategy,
    ground: &[String],
    lattice: &Lattice,
    cap: usize,
) -> Result<GameReport> {
    let k = ground.len();
    if k > cap || k >= 64 {
        return Err(GameError::CapExceeded {
            actual: k,
            cap: cap.min(63),
        });
    }
    let mut nodes = Vec::new();
    flatten(strategy, ground, &mut nodes)?;
    let idx = ground
        .iter()
        .map(|g| lattice.index_of(g))
        .collect::<Result<Vec<_>, _>>()?;
    // comparable[i]: ground elements comparable to i, including i.
    let comparable: Vec<u64> = idx
        .iter()
        .map(|&a| {
            idx.iter()
                .enumerate()
                .filter(|&(_, &b)| lattice.poset().comparable(a, b))
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect();
    let is_chain = |set: u64| (0..k).all(|i| set >> i & 1 == 0 || set & !comparable[i] == 0);

    let report = (0..1u64 << k)
        .into_par_iter()
        .fold(GameReport::default, |mut acc, hidden| {
            let mut asked = 0u64;
            let mut count = 0usize;
            let mut repeated = false;
            let mut node = 0;
            let verdict = loop {
                match nodes[node] {
                    Node::Answer(b) => break b,
                    Node::Query(v, yes, no) => {
                        repeated |= asked >> v & 1 == 1;
                        asked |= 1 << v;
                        count += 1;
                        node = if hidden >> v & 1 == 1 { yes } else { no };
                    }
                }
            };
            let truth = is_chain(hidden);
            acc.subsets_tested += 1;
            acc.chains += truth as u64;
            acc.mismatches += (verdict != truth || repeated) as u64;
            acc.max_queries = acc.max_queries.max(count);
            if acc.histogram.len() <= count {
                acc.histogram.resize(count + 1, 0);
            }
            acc.histogram[count] += 1;
            acc
        })
        .reduce(GameReport::default, GameReport::merge);
    Ok(GameReport {
        ground_size: k,
        ..report
    })
}
