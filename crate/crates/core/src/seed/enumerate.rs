use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::{CanonicalSeed, Seed, SeedError};
use crate::laurent::{fraction, LaurentPoly, Var};

/// Budgets for [`Seed::enumerate_class`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_seeds: usize,
    pub max_depth: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_seeds: 10_000,
            max_depth: 16,
        }
    }
}

impl EnumerationLimits {
    pub fn new(max_seeds: usize, max_depth: usize) -> Self {
        EnumerationLimits {
            max_seeds,
            max_depth,
        }
    }
}

/// Mutating seed `from` at slot `slot` gives seed `to`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ExchangeEdge {
    pub from: usize,
    pub slot: Var,
    pub to: usize,
}

/// Seeds reachable from a root, deduplicated by canonical form and sorted in
/// canonical order, with the exchange graph between them.
#[derive(Debug, Clone)]
pub struct MutationClass {
    root: Seed,
    root_index: usize,
    seeds: Vec<Seed>,
    depths: Vec<usize>,
    index: HashMap<CanonicalSeed, usize>,
    edges: Vec<ExchangeEdge>,
    complete: bool,
}

impl MutationClass {
    pub fn root(&self) -> &Seed {
        &self.root
    }

    pub fn root_index(&self) -> usize {
        self.root_index
    }

    /// Seeds as reached by the search (slot names follow the first path found).
    pub fn seeds(&self) -> &[Seed] {
        &self.seeds
    }

    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    /// Distance from the root in the exchange graph.
    pub fn depth(&self, i: usize) -> usize {
        self.depths[i]
    }

    pub fn depth_reached(&self) -> usize {
        self.depths.iter().copied().max().unwrap_or(0)
    }

    pub fn edges(&self) -> &[ExchangeEdge] {
        &self.edges
    }

    /// True when the set is closed under every single mutation.
    pub fn complete(&self) -> bool {
        self.complete
    }

    pub fn index_of(&self, seed: &Seed) -> Option<usize> {
        self.index.get(&seed.canonical()).copied()
    }

    /// The exchange graph with every undirected edge listed once.
    pub fn graph(&self) -> ExchangeGraph {
        let nodes = self
            .seeds
            .iter()
            .zip(&self.depths)
            .map(|(seed, &depth)| GraphNode {
                depth,
                cluster: seed.exchangeable_values().iter().map(|p| p.to_fraction_string()).collect(),
                seed: seed.clone(),
            })
            .collect();
        ExchangeGraph {
            root: self.root_index,
            complete: self.complete,
            depth_reached: self.depth_reached(),
            nodes,
            edges: self.edges.iter().filter(|e| e.from < e.to).cloned().collect(),
        }
    }

    /// Undirected DOT rendering; nodes are labelled by their clusters.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for (i, seed) in self.seeds.iter().enumerate() {
            let cluster: Vec<String> = seed.exchangeable_values().iter().map(|p| p.to_fraction_string()).collect();
            let shape = if i == self.root_index { ", shape=box" } else { "" };
            writeln!(out, "  s{i} [label=\"{}\"{shape}];", cluster.join(", ")).unwrap();
        }
        for e in self.edges.iter().filter(|e| e.from < e.to) {
            writeln!(out, "  s{} -- s{} [label=\"{}\"];", e.from, e.to, e.slot).unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn cluster_variables(&self) -> ClusterVariables {
        let mut exchangeable = BTreeSet::new();
        let mut frozen = BTreeSet::new();
        for s in &self.seeds {
            exchangeable.extend(s.exchangeable_values().iter().cloned());
            frozen.extend(s.frozen_values().iter().cloned());
        }
        ClusterVariables {
            exchangeable: exchangeable.into_iter().collect(),
            frozen: frozen.into_iter().collect(),
        }
    }
}

/// All cluster variables of a class, each list sorted in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterVariables {
    #[serde(serialize_with = "fraction::seq::serialize")]
    pub exchangeable: Vec<LaurentPoly>,
    #[serde(serialize_with = "fraction::seq::serialize")]
    pub frozen: Vec<LaurentPoly>,
}

impl ClusterVariables {
    pub fn all(&self) -> impl Iterator<Item = &LaurentPoly> {
        self.exchangeable.iter().chain(&self.frozen)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphNode {
    pub depth: usize,
    pub cluster: Vec<String>,
    pub seed: Seed,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExchangeGraph {
    pub root: usize,
    pub complete: bool,
    pub depth_reached: usize,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<ExchangeEdge>,
}

type Neighbours = Vec<(Var, Seed, CanonicalSeed)>;

pub(super) fn enumerate_class(
    root: &Seed,
    limits: EnumerationLimits,
) -> Result<MutationClass, SeedError> {
    let mut seeds = vec![root.clone()];
    let mut keys = vec![root.canonical()];
    let mut depths = vec![0usize];
    let mut index: HashMap<CanonicalSeed, usize> = HashMap::new();
    index.insert(keys[0].clone(), 0);
    let mut edges: Vec<(usize, Var, usize)> = Vec::new();
    let mut complete = true;
    let mut frontier = vec![0usize];
    let mut depth = 0;

    while !frontier.is_empty() {
        let expanded: Vec<Neighbours> = frontier
            .par_iter()
            .map(|&i| {
                let s = &seeds[i];
                s.ex()
                    .iter()
                    .map(|x| {
                        let t = s.mutate(x)?;
                        let key = t.canonical();
                        Ok((x.clone(), t, key))
                    })
                    .collect::<Result<Neighbours, SeedError>>()
            })
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for (&i, neighbours) in frontier.iter().zip(expanded) {
            for (x, t, key) in neighbours {
                if let Some(&j) = index.get(&key) {
                    edges.push((i, x, j));
                } else if depth + 1 > limits.max_depth || seeds.len() >= limits.max_seeds {
                    complete = false;
                } else {
                    let j = seeds.len();
                    index.insert(key.clone(), j);
                    seeds.push(t);
                    keys.push(key);
                    depths.push(depth + 1);
                    edges.push((i, x, j));
                    next.push(j);
                }
            }
        }
        frontier = next;
        depth += 1;
    }

    let mut order: Vec<usize> = (0..seeds.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut position = vec![0; seeds.len()];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let mut edges: Vec<ExchangeEdge> = edges
        .into_iter()
        .map(|(a, slot, b)| ExchangeEdge {
            from: position[a],
            slot,
            to: position[b],
        })
        .collect();
    edges.sort();
    let index = index.into_iter().map(|(k, i)| (k, position[i])).collect();
    let sorted_seeds = order.iter().map(|&i| seeds[i].clone()).collect();
    let sorted_depths = order.iter().map(|&i| depths[i]).collect();
    Ok(MutationClass {
        root: root.clone(),
        root_index: position[0],
        seeds: sorted_seeds,
        depths: sorted_depths,
        index,
        edges,
        complete,
    })
}
