//! Cluster transition networks: clusters become nodes, successions between
//! consecutive segments become directed weighted edges, and infrequent
//! edges are pruned.

use std::collections::BTreeMap;

use crate::cluster::{ClusterLabeling, NOISE};
use crate::error::{Error, Result};
use crate::quantal;
use crate::segment::{successor_pairs, PatternDuration, Segment};

/// Edges with fewer transitions than this are pruned by default.
pub const DEFAULT_PRUNE_THRESHOLD: usize = 15;

/// One cluster as a network node, placed at its medoid.
#[derive(Debug, Clone)]
pub struct NetworkNode {
    pub id: i32,
    pub size: usize,
    pub medoid: PatternDuration,
    /// Rounded quantum multiples of the medoid, when a quantum is known
    /// and the medoid sits close enough to the quantum grid.
    pub multiples: Option<Vec<u64>>,
    /// Integer-ratio label text, e.g. "2:3"; not reduced to lowest terms.
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkEdge {
    pub from: i32,
    pub to: i32,
    pub count: usize,
}

/// Directed weighted graph of cluster-to-cluster successions. Isolated
/// nodes are retained; noise never appears.
#[derive(Debug, Clone, Default)]
pub struct TransitionNetwork {
    pub nodes: Vec<NetworkNode>,
    pub edges: Vec<NetworkEdge>,
    pub prune_threshold: usize,
}

impl TransitionNetwork {
    pub fn node(&self, id: i32) -> Option<&NetworkNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn edge(&self, from: i32, to: i32) -> Option<&NetworkEdge> {
        self.edges.iter().find(|e| e.from == from && e.to == to)
    }
}

/// Count successions between clusters of consecutive segments and keep
/// edges with at least `prune_threshold` transitions.
///
/// A pair touching a noise segment contributes nothing, and the noise
/// segment is never bridged over. Self-loops count like any other edge.
pub fn build_network(
    labeling: &ClusterLabeling,
    segments: &[Segment],
    quantum: Option<f64>,
    prune_threshold: usize,
) -> Result<TransitionNetwork> {
    if prune_threshold < 1 {
        return Err(Error::invalid("prune threshold must be at least 1"));
    }
    if labeling.labels.len() != segments.len() {
        return Err(Error::invalid(format!(
            "labeling covers {} segments but {} were given",
            labeling.labels.len(),
            segments.len()
        )));
    }
    if let Some(missing) = segments.iter().position(|s| s.origin().is_none()) {
        return Err(Error::invalid(format!(
            "segment {missing} has no origin; successions cannot be established"
        )));
    }
    let mut counts: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for (i, j) in successor_pairs(segments) {
        let (a, b) = (labeling.labels[i], labeling.labels[j]);
        if a != NOISE && b != NOISE {
            *counts.entry((a, b)).or_insert(0) += 1;
        }
    }
    let nodes = labeling
        .clusters
        .iter()
        .map(|c| {
            let multiples = match quantum {
                Some(q) => {
                    quantal::integer_multiples(c.medoid.values(), q, quantal::DEFAULT_THETA)?
                }
                None => None,
            };
            let label = multiples
                .as_ref()
                .map(|ms| ms.iter().map(u64::to_string).collect::<Vec<_>>().join(":"));
            Ok(NetworkNode {
                id: c.id,
                size: c.size,
                medoid: c.medoid_pd.clone(),
                multiples,
                label,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = counts
        .into_iter()
        .filter(|&(_, count)| count >= prune_threshold)
        .map(|((from, to), count)| NetworkEdge { from, to, count })
        .collect();
    Ok(TransitionNetwork {
        nodes,
        edges,
        prune_threshold,
    })
}

/// The rhythm spelled out by a path through the network: the first node
/// contributes all its multiples, every later node its last multiple.
/// Every node on the path must carry an integer-ratio label, and
/// consecutive nodes must be connected by an edge.
pub fn path_rhythm(network: &TransitionNetwork, node_path: &[i32]) -> Result<Vec<u64>> {
    if node_path.is_empty() {
        return Err(Error::invalid("path through the network is empty"));
    }
    let multiples_of = |id: i32| -> Result<&Vec<u64>> {
        let node = network
            .node(id)
            .ok_or_else(|| Error::invalid(format!("no node with id {id}")))?;
        node.multiples
            .as_ref()
            .filter(|ms| !ms.is_empty())
            .ok_or_else(|| Error::invalid(format!("node {id} carries no integer-ratio label")))
    };
    for pair in node_path.windows(2) {
        if network.edge(pair[0], pair[1]).is_none() {
            return Err(Error::invalid(format!(
                "no edge from {} to {} on the path",
                pair[0], pair[1]
            )));
        }
    }
    let mut rhythm = multiples_of(node_path[0])?.clone();
    for &id in &node_path[1..] {
        let ms = multiples_of(id)?;
        rhythm.push(*ms.last().expect("empty labels rejected above"));
    }
    Ok(rhythm)
}
