use std::collections::{HashMap, HashSet, VecDeque};

use super::{ClusterError, ExchangeRelation, Seed, VariableRegistry};
use crate::algebra::VarId;

#[derive(Clone, Debug)]
pub struct ExploreOptions {
    pub max_seeds: usize,
    pub max_variables: usize,
    /// Re-run the exact Laurent division on every mutation, not only on discovery.
    pub exact_every_mutation: bool,
    /// Compare matrices whenever a mutation lands on an already known cluster.
    pub check_collisions: bool,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            max_seeds: 100_000,
            max_variables: 10_000,
            exact_every_mutation: false,
            check_collisions: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeedRecord {
    pub seed: Seed,
    pub depth: u32,
}

/// Seeds keyed by sorted cluster, with mutation adjacency per cluster position.
#[derive(Clone, Debug, Default)]
pub struct ExchangeGraph {
    pub seeds: Vec<SeedRecord>,
    pub index: HashMap<Vec<VarId>, usize>,
    /// `edges[s][p]`: seed reached by mutating seed `s` at position `p`.
    pub edges: Vec<Vec<Option<usize>>>,
}

impl ExchangeGraph {
    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    pub fn find(&self, key: &[VarId]) -> Option<usize> {
        let mut k = key.to_vec();
        k.sort();
        self.index.get(&k).copied()
    }

    /// Every seed has all of its N neighbors, and they are pairwise distinct.
    pub fn is_regular(&self) -> bool {
        self.edges.iter().enumerate().all(|(s, e)| {
            let set: HashSet<usize> = e.iter().flatten().copied().collect();
            e.iter().all(|x| x.is_some()) && set.len() == e.len() && !set.contains(&s)
        })
    }

    /// Distinct exchange relations over all edges, keyed by the unordered
    /// variable pair and the unordered monomial pair.
    pub fn exchange_relations(&self) -> Vec<(VarId, VarId, ExchangeRelation)> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (s, rec) in self.seeds.iter().enumerate() {
            for p in 0..rec.seed.rank() {
                let Some(t) = self.edges[s][p] else { continue };
                let z = rec.seed.cluster()[p];
                let here = rec.seed.cluster();
                let other = *self.seeds[t]
                    .seed
                    .cluster()
                    .iter()
                    .find(|v| !here.contains(v))
                    .expect("adjacent clusters differ in one variable");
                let rel = rec.seed.exchange_relation(p);
                let (a, b) = if z <= other { (z, other) } else { (other, z) };
                let key = (a, b, rel.monomial_pair());
                if seen.insert(key) {
                    out.push((z, other, rel));
                }
            }
        }
        out
    }

    /// Variables that occur in some cluster.
    pub fn cluster_variables(&self) -> Vec<VarId> {
        let mut v: Vec<VarId> = self
            .seeds
            .iter()
            .flat_map(|r| r.seed.cluster().iter().copied())
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExploreStats {
    pub mutations: u64,
    pub collisions_checked: u64,
}

#[derive(Clone, Debug)]
pub struct Exploration {
    pub graph: ExchangeGraph,
    pub closed: bool,
    pub stats: ExploreStats,
}

impl Exploration {
    pub fn seed_count(&self) -> usize {
        self.graph.len()
    }
}

/// Breadth-first closure of `s0` under mutation, deterministic in cluster-position order.
pub fn explore(
    s0: &Seed,
    registry: &mut VariableRegistry,
    opts: &ExploreOptions,
) -> Result<Exploration, ClusterError> {
    registry.exact_every_mutation = opts.exact_every_mutation;
    let n = s0.rank();
    let mut graph = ExchangeGraph::default();
    let mut stats = ExploreStats::default();
    let mut closed = true;
    graph.index.insert(s0.key(), 0);
    graph.seeds.push(SeedRecord {
        seed: s0.clone(),
        depth: 0,
    });
    graph.edges.push(vec![None; n]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for p in 0..n {
            if graph.edges[i][p].is_some() {
                continue;
            }
            let cur = &graph.seeds[i];
            let depth = cur.depth;
            let mu = cur.seed.mutate_at(p, registry)?;
            stats.mutations += 1;
            if !mu.seed.matrix.is_principal_skew_symmetric() {
                return Err(ClusterError::NotSkewSymmetric);
            }
            let key = mu.seed.key();
            let back_var = mu.new_var;
            let j = match graph.index.get(&key) {
                Some(&j) => {
                    if opts.check_collisions {
                        stats.collisions_checked += 1;
                        if !graph.seeds[j].seed.matrix.same_up_to_relabeling(&mu.seed.matrix) {
                            return Err(ClusterError::SeedMismatch(format!("{key:?}")));
                        }
                    }
                    j
                }
                None => {
                    if graph.len() >= opts.max_seeds || registry.len() > opts.max_variables {
                        closed = false;
                        continue;
                    }
                    let j = graph.len();
                    graph.index.insert(key, j);
                    graph.seeds.push(SeedRecord {
                        seed: mu.seed,
                        depth: depth + 1,
                    });
                    graph.edges.push(vec![None; n]);
                    queue.push_back(j);
                    j
                }
            };
            graph.edges[i][p] = Some(j);
            // a stored seed may list its cluster in another order
            let q = graph.seeds[j]
                .seed
                .cluster()
                .iter()
                .position(|&v| v == back_var)
                .expect("new variable lies in the target cluster");
            graph.edges[j][q] = Some(i);
        }
    }
    Ok(Exploration {
        graph,
        closed,
        stats,
    })
}
