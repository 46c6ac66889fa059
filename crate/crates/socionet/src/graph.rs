//! Static-graph representation and the interpretable descriptors: node /
//! edge / component counts, clustering, degree and shortest-path
//! distributions, and the network portrait. Also holds the weighted
//! friendship matrix and its binarization into a simple graph.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Node identifier as it appears in edge lists and snapshots.
pub type NodeId = u32;

/// Undirected, unweighted simple graph over an explicit node set.
///
/// Nodes are kept sorted by id; adjacency is stored as sorted lists of
/// *positions* into the node vector, so position order coincides with id
/// order. Values are immutable after construction and all descriptor
/// methods are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    nodes: Vec<NodeId>,
    adjacency: Vec<Vec<u32>>,
}

impl Graph {
    /// Build a graph from a node set and an edge list. Node ids referenced
    /// by edges are added implicitly; duplicate edges collapse; self-loops
    /// are rejected.
    pub fn from_edges<N, E>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = NodeId>,
        E: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut ids: Vec<NodeId> = nodes.into_iter().collect();
        let edges: Vec<(NodeId, NodeId)> = edges.into_iter().collect();
        for &(u, v) in &edges {
            if u == v {
                return Err(Error::InvalidConfig(format!("self-loop at node {u}")));
            }
            ids.push(u);
            ids.push(v);
        }
        ids.sort_unstable();
        ids.dedup();

        let index: HashMap<NodeId, u32> = ids
            .iter()
            .enumerate()
            .map(|(pos, &id)| (id, pos as u32))
            .collect();
        let mut adjacency = vec![Vec::new(); ids.len()];
        for &(u, v) in &edges {
            let (pu, pv) = (index[&u], index[&v]);
            adjacency[pu as usize].push(pv);
            adjacency[pv as usize].push(pu);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph {
            nodes: ids,
            adjacency,
        })
    }

    pub fn empty() -> Self {
        Graph {
            nodes: Vec::new(),
            adjacency: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn node_id(&self, pos: usize) -> NodeId {
        self.nodes[pos]
    }

    pub fn position(&self, id: NodeId) -> Option<usize> {
        self.nodes.binary_search(&id).ok()
    }

    /// Neighbor positions of the node at `pos`, ascending.
    pub fn neighbors(&self, pos: usize) -> &[u32] {
        &self.adjacency[pos]
    }

    pub fn degree(&self, pos: usize) -> usize {
        self.adjacency[pos].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge_at(&self, pos_a: usize, pos_b: usize) -> bool {
        self.adjacency[pos_a].binary_search(&(pos_b as u32)).is_ok()
    }

    /// Edges as id pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (pos, list) in self.adjacency.iter().enumerate() {
            for &q in list {
                if (pos as u32) < q {
                    out.push((self.nodes[pos], self.nodes[q as usize]));
                }
            }
        }
        out
    }

    /// Connected components over *all* nodes (isolated nodes form their own
    /// components), as sorted position lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    let v = v as usize;
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Nodes with at least one edge, number of edges, and number of
    /// components among those active nodes (isolated nodes count nowhere).
    pub fn basic_stats(&self) -> BasicStats {
        let active_nodes = (0..self.nodes.len())
            .filter(|&p| !self.adjacency[p].is_empty())
            .count();
        let components = self
            .components()
            .into_iter()
            .filter(|c| c.len() >= 2)
            .count();
        BasicStats {
            active_nodes,
            edges: self.edge_count(),
            components,
        }
    }

    /// Degree histogram over all nodes, isolated nodes included at `d = 0`.
    pub fn degree_distribution(&self) -> Distribution {
        let mut dist = Distribution::new();
        for list in &self.adjacency {
            dist.add(list.len() as u64, 1);
        }
        dist
    }

    /// Local clustering coefficients: realized edges among a node's
    /// neighbors over the possible `deg (deg - 1) / 2`. Nodes of degree
    /// below 2 get 0; the average runs over active nodes only.
    pub fn clustering_stats(&self) -> ClusteringStats {
        let mut per_node = BTreeMap::new();
        let mut sum = 0.0;
        let mut active = 0usize;
        let mut nonzero = 0usize;
        for pos in 0..self.nodes.len() {
            let neigh = &self.adjacency[pos];
            let deg = neigh.len();
            let coeff = if deg < 2 {
                0.0
            } else {
                let mut links = 0usize;
                for (i, &a) in neigh.iter().enumerate() {
                    for &b in &neigh[i + 1..] {
                        if self.has_edge_at(a as usize, b as usize) {
                            links += 1;
                        }
                    }
                }
                links as f64 / (deg * (deg - 1) / 2) as f64
            };
            if deg >= 1 {
                active += 1;
                sum += coeff;
            }
            if coeff > 0.0 {
                nonzero += 1;
            }
            per_node.insert(self.nodes[pos], coeff);
        }
        ClusteringStats {
            per_node,
            average: if active == 0 { 0.0 } else { sum / active as f64 },
            nonzero_count: nonzero,
        }
    }

    /// Shell sizes from a BFS at `start`: entry `l` is the number of nodes
    /// at distance exactly `l` (entry 0 is always 1).
    fn bfs_shell_sizes(&self, start: usize) -> Vec<u64> {
        let mut dist = vec![u32::MAX; self.nodes.len()];
        dist[start] = 0;
        let mut shells = vec![1u64];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                let v = v as usize;
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    let l = dist[v] as usize;
                    if shells.len() <= l {
                        shells.resize(l + 1, 0);
                    }
                    shells[l] += 1;
                    queue.push_back(v);
                }
            }
        }
        shells
    }

    /// Histogram of finite shortest-path lengths over unordered node pairs;
    /// pairs in different components have no bin.
    pub fn shortest_path_distribution(&self) -> Distribution {
        let mut ordered: BTreeMap<u64, u64> = BTreeMap::new();
        for start in 0..self.nodes.len() {
            for (l, &count) in self.bfs_shell_sizes(start).iter().enumerate().skip(1) {
                if count > 0 {
                    *ordered.entry(l as u64).or_insert(0) += count;
                }
            }
        }
        let mut dist = Distribution::new();
        for (l, c) in ordered {
            debug_assert_eq!(c % 2, 0);
            dist.add(l, c / 2);
        }
        dist
    }

    /// Network portrait `B[l][k]`: the number of nodes having exactly `k`
    /// nodes at distance `l`. Rows run from 0 to the graph diameter (the
    /// largest finite eccentricity); a node whose eccentricity is below a
    /// row index contributes to that row's `k = 0` cell, which keeps every
    /// row summing to the node count.
    pub fn portrait(&self) -> Portrait {
        let n = self.nodes.len();
        let shells: Vec<Vec<u64>> = (0..n).map(|p| self.bfs_shell_sizes(p)).collect();
        let num_rows = shells.iter().map(Vec::len).max().unwrap_or(1);
        let num_cols = shells
            .iter()
            .flat_map(|s| s.iter().copied())
            .max()
            .map_or(0, |k| k as usize + 1);
        let mut rows = vec![vec![0u64; num_cols]; num_rows];
        for shell in &shells {
            for l in 0..num_rows {
                let k = shell.get(l).copied().unwrap_or(0) as usize;
                rows[l][k] += 1;
            }
        }
        Portrait { rows }
    }
}

/// Output of [`Graph::basic_stats`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasicStats {
    pub active_nodes: usize,
    pub edges: usize,
    pub components: usize,
}

/// Output of [`Graph::clustering_stats`].
#[derive(Debug, Clone)]
pub struct ClusteringStats {
    pub per_node: BTreeMap<NodeId, f64>,
    pub average: f64,
    pub nonzero_count: usize,
}

/// Histogram over nonnegative integer values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Distribution {
    bins: BTreeMap<u64, u64>,
    total: u64,
}

impl Distribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Self {
        let mut d = Self::new();
        for (v, c) in pairs {
            d.add(v, c);
        }
        d
    }

    pub fn add(&mut self, value: u64, count: u64) {
        if count > 0 {
            *self.bins.entry(value).or_insert(0) += count;
            self.total += count;
        }
    }

    pub fn count(&self, value: u64) -> u64 {
        self.bins.get(&value).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// `(value, count)` pairs, ascending by value.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.bins.iter().map(|(&v, &c)| (v, c))
    }

    /// Mean of the value under the normalized histogram.
    pub fn mean(&self) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        let s: f64 = self.iter().map(|(v, c)| v as f64 * c as f64).sum();
        s / self.total as f64
    }

    /// Population variance of the value under the normalized histogram.
    pub fn variance(&self) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        let m = self.mean();
        let s: f64 = self
            .iter()
            .map(|(v, c)| (v as f64 - m).powi(2) * c as f64)
            .sum();
        s / self.total as f64
    }
}

/// Network portrait matrix; `rows[l][k]` counts nodes with `k` nodes at
/// distance `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Portrait {
    rows: Vec<Vec<u64>>,
}

impl Portrait {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn row(&self, l: usize) -> &[u64] {
        &self.rows[l]
    }

    pub fn get(&self, l: usize, k: usize) -> u64 {
        self.rows
            .get(l)
            .and_then(|row| row.get(k))
            .copied()
            .unwrap_or(0)
    }

    pub fn row_sum(&self, l: usize) -> u64 {
        self.rows[l].iter().sum()
    }

    /// Row `l = 1` as a histogram; equals the degree distribution.
    pub fn degree_row(&self) -> Distribution {
        let mut d = Distribution::new();
        if self.rows.len() > 1 {
            for (k, &c) in self.rows[1].iter().enumerate() {
                d.add(k as u64, c);
            }
        } else if !self.rows.is_empty() {
            // Edgeless graph: diameter 0, every node has 0 nodes at distance 1.
            d.add(0, self.row_sum(0));
        }
        d
    }
}

/// Directed friendship strengths `alpha[i][j]` in `[0, 1]` over a dense
/// agent universe `0..num_agents`; absent pairs mean strength 0. May be
/// asymmetric (one-sided friendships).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSocialGraph {
    num_agents: u32,
    entries: BTreeMap<(u32, u32), f64>,
}

impl WeightedSocialGraph {
    pub fn new(num_agents: u32) -> Self {
        WeightedSocialGraph {
            num_agents,
            entries: BTreeMap::new(),
        }
    }

    pub fn num_agents(&self) -> u32 {
        self.num_agents
    }

    pub fn set(&mut self, from: u32, to: u32, strength: f64) {
        assert!(from != to, "self-friendship");
        assert!(from < self.num_agents && to < self.num_agents);
        assert!((0.0..=1.0).contains(&strength));
        self.entries.insert((from, to), strength);
    }

    pub fn remove(&mut self, from: u32, to: u32) -> Option<f64> {
        self.entries.remove(&(from, to))
    }

    pub fn get(&self, from: u32, to: u32) -> f64 {
        self.entries.get(&(from, to)).copied().unwrap_or(0.0)
    }

    pub fn contains(&self, from: u32, to: u32) -> bool {
        self.entries.contains_key(&(from, to))
    }

    /// Stored `(from, to, strength)` triples, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        self.entries.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Outgoing friendship targets of `from`, ascending.
    pub fn outgoing(&self, from: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.entries
            .range((from, 0)..=(from, u32::MAX))
            .map(|(&(_, j), &w)| (j, w))
    }

    pub fn out_count(&self, from: u32) -> usize {
        self.entries.range((from, 0)..=(from, u32::MAX)).count()
    }

    /// Threshold into an undirected simple graph: the edge `{i, j}` exists
    /// iff `max(alpha[i][j], alpha[j][i]) >= threshold`, so every
    /// above-threshold one-sided friendship survives. The result carries
    /// the whole agent universe, isolated nodes included.
    pub fn binarize(&self, threshold: f64) -> Graph {
        assert!((0.0..=1.0).contains(&threshold));
        let edges = self.entries.iter().filter_map(|(&(i, j), &w)| {
            if w >= threshold && (i < j || self.get(j, i) < threshold) {
                Some((i.min(j), i.max(j)))
            } else {
                None
            }
        });
        Graph::from_edges(0..self.num_agents, edges).expect("no self-loops by construction")
    }
}

// ---------------------------------------------------------------------------
// Edge-list text format: one `u v` pair per line, `#` starts a comment.
// A `# nodes N` comment declares the dense universe 0..N-1 so isolated
// nodes survive a round trip.
// ---------------------------------------------------------------------------

pub fn parse_edge_list(text: &str, origin: &str) -> Result<Graph> {
    let mut nodes: Vec<NodeId> = Vec::new();
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some("nodes") {
                if let Some(n) = words.next().and_then(|w| w.parse::<u32>().ok()) {
                    nodes.extend(0..n);
                }
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => {
                let parse = |s: &str| {
                    s.parse::<NodeId>().map_err(|_| Error::Parse {
                        path: origin.to_string(),
                        line: lineno + 1,
                        msg: format!("bad node id {s:?}"),
                    })
                };
                (parse(a)?, parse(b)?)
            }
            _ => {
                return Err(Error::Parse {
                    path: origin.to_string(),
                    line: lineno + 1,
                    msg: "expected two node ids".to_string(),
                })
            }
        };
        edges.push((u, v));
    }
    Graph::from_edges(nodes, edges)
}

pub fn read_edge_list(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text, &path.display().to_string())
}

pub fn edge_list_string(g: &Graph, dense_universe: Option<u32>) -> String {
    let mut out = String::new();
    if let Some(n) = dense_universe {
        let _ = writeln!(out, "# nodes {n}");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_edge_list(g: &Graph, dense_universe: Option<u32>, path: &Path) -> Result<()> {
    std::fs::write(path, edge_list_string(g, dense_universe))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges([], [(1, 2), (2, 3)]).unwrap()
    }

    fn triangle() -> Graph {
        Graph::from_edges([], [(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn basic_stats_cases() {
        assert_eq!(
            Graph::empty().basic_stats(),
            BasicStats {
                active_nodes: 0,
                edges: 0,
                components: 0
            }
        );
        assert_eq!(
            path3().basic_stats(),
            BasicStats {
                active_nodes: 3,
                edges: 2,
                components: 1
            }
        );
        let two = Graph::from_edges([], [(1, 2), (3, 4)]).unwrap();
        assert_eq!(
            two.basic_stats(),
            BasicStats {
                active_nodes: 4,
                edges: 2,
                components: 2
            }
        );
        // Isolated nodes inflate neither active count nor components.
        let iso = Graph::from_edges([9, 10], [(1, 2)]).unwrap();
        assert_eq!(
            iso.basic_stats(),
            BasicStats {
                active_nodes: 2,
                edges: 1,
                components: 1
            }
        );
    }

    #[test]
    fn degree_distribution_cases() {
        assert_eq!(
            path3().degree_distribution(),
            Distribution::from_pairs([(1, 2), (2, 1)])
        );
        assert_eq!(
            triangle().degree_distribution(),
            Distribution::from_pairs([(2, 3)])
        );
        let g = Graph::from_edges([7], [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(
            g.degree_distribution(),
            Distribution::from_pairs([(0, 1), (2, 3)])
        );
    }

    #[test]
    fn clustering_cases() {
        let t = triangle().clustering_stats();
        assert_eq!(t.average, 1.0);
        assert_eq!(t.nonzero_count, 3);
        assert!(t.per_node.values().all(|&c| c == 1.0));

        let p = path3().clustering_stats();
        assert_eq!(p.average, 0.0);
        assert_eq!(p.nonzero_count, 0);

        // Triangle {1,2,3} plus pendant edge {3,4}: node 3 sees one edge
        // among its three neighbors.
        let g = Graph::from_edges([], [(1, 2), (2, 3), (1, 3), (3, 4)]).unwrap();
        let c = g.clustering_stats();
        assert!((c.per_node[&3] - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(c.per_node[&4], 0.0);
        assert_eq!(c.nonzero_count, 3);
        assert_eq!(Graph::empty().clustering_stats().average, 0.0);
    }

    #[test]
    fn shortest_path_cases() {
        assert_eq!(
            path3().shortest_path_distribution(),
            Distribution::from_pairs([(1, 2), (2, 1)])
        );
        assert_eq!(
            triangle().shortest_path_distribution(),
            Distribution::from_pairs([(1, 3)])
        );
        let two = Graph::from_edges([], [(1, 2), (3, 4)]).unwrap();
        // Cross-component pairs are excluded.
        assert_eq!(
            two.shortest_path_distribution(),
            Distribution::from_pairs([(1, 2)])
        );
    }

    #[test]
    fn portrait_cases() {
        let b = path3().portrait();
        assert_eq!(b.get(0, 1), 3);
        assert_eq!(b.get(1, 1), 2);
        assert_eq!(b.get(1, 2), 1);
        assert_eq!(b.get(2, 0), 1);
        assert_eq!(b.get(2, 1), 2);
        for l in 0..b.num_rows() {
            assert_eq!(b.row_sum(l), 3);
        }

        let t = triangle().portrait();
        assert_eq!(t.get(0, 1), 3);
        assert_eq!(t.get(1, 2), 3);
        assert_eq!(t.num_rows(), 2);
    }

    #[test]
    fn portrait_row1_is_degree_distribution() {
        let g = Graph::from_edges([9], [(1, 2), (2, 3), (1, 3), (3, 4)]).unwrap();
        assert_eq!(g.portrait().degree_row(), g.degree_distribution());
        // Edgeless graph: single row, degree row is all-isolated.
        let e = Graph::from_edges([1, 2], []).unwrap();
        assert_eq!(e.portrait().num_rows(), 1);
        assert_eq!(e.portrait().degree_row(), e.degree_distribution());
    }

    #[test]
    fn binarize_cases() {
        let mut w = WeightedSocialGraph::new(3);
        w.set(1, 2, 0.30);
        let g = w.binarize(0.3);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.node_count(), 3); // whole universe retained
        assert!(g.has_edge_at(g.position(1).unwrap(), g.position(2).unwrap()));

        let mut w = WeightedSocialGraph::new(3);
        w.set(1, 2, 0.29);
        w.set(2, 1, 0.29);
        assert_eq!(w.binarize(0.3).edge_count(), 0);

        // One-sided strength above threshold still makes the edge.
        let mut w = WeightedSocialGraph::new(3);
        w.set(1, 2, 0.50);
        w.set(2, 1, 0.00);
        assert_eq!(w.binarize(0.3).edge_count(), 1);

        assert_eq!(WeightedSocialGraph::new(0).binarize(0.3).node_count(), 0);
    }

    #[test]
    fn binarize_counts_mutual_edges_once() {
        let mut w = WeightedSocialGraph::new(2);
        w.set(0, 1, 0.9);
        w.set(1, 0, 0.8);
        assert_eq!(w.binarize(0.3).edge_count(), 1);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(0..5, [(0, 2), (2, 4)]).unwrap();
        let text = edge_list_string(&g, Some(5));
        let back = parse_edge_list(&text, "test").unwrap();
        assert_eq!(back, g);

        let parsed = parse_edge_list("# a comment\n1 2\n\n2 3\n", "test").unwrap();
        assert_eq!(parsed, path3());
        assert!(parse_edge_list("1 2 3\n", "test").is_err());
        assert!(parse_edge_list("1 x\n", "test").is_err());
    }
}
