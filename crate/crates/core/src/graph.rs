//! Multigraph representation, the line-oriented file format, contraction-order
//! keys, the spanning tree under key order, and prefix contraction.
//!
//! Contraction order is carried by a unique integer key per edge in
//! `[1, n^3]`; contracting edges in ascending key order is the random
//! contraction process, and only spanning-tree edges change the partition.

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::seeds;
use rand::Rng;

/// Undirected edge with a positive integer capacity. Parallel edges allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub cap: u64,
}

/// Undirected multigraph on vertices `0..n`. No self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.iter().all(|e| e.u != e.v && e.u < n && e.v < n && e.cap >= 1));
        Graph { n, edges }
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).count == 1
    }

    /// Total capacity of edges with exactly one endpoint in the side.
    pub fn crossing_capacity(&self, in_side: &[bool]) -> u64 {
        debug_assert_eq!(in_side.len(), self.n);
        self.edges
            .iter()
            .filter(|e| in_side[e.u] != in_side[e.v])
            .map(|e| e.cap)
            .sum()
    }

    pub fn side_mask(&self, side: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        for &v in side {
            mask[v] = true;
        }
        mask
    }
}

/// Per-vertex component ids; two vertices share an id iff connected.
/// Ids are assigned in order of each component's smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabels {
    pub label: Vec<usize>,
    pub count: usize,
}

pub fn connected_components(g: &Graph) -> ComponentLabels {
    let mut dsu = Dsu::new(g.n);
    for e in &g.edges {
        dsu.union(e.u, e.v);
    }
    let mut label = vec![usize::MAX; g.n];
    let mut count = 0;
    for v in 0..g.n {
        let r = dsu.find(v);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        label[v] = label[r];
    }
    ComponentLabels { label, count }
}

// ---------------------------------------------------------------------------
// File format: `p <n> <m>` header, then `e <u> <v> [capacity]` lines,
// `#` starts a comment. Vertex ids are 0-based, capacity defaults to 1.
// ---------------------------------------------------------------------------

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let mut tok = s.split_whitespace();
        match tok.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(Error::Malformed { line, what: "duplicate header".into() });
                }
                let n: usize = parse_tok(tok.next(), line)?;
                let m: usize = parse_tok(tok.next(), line)?;
                if tok.next().is_some() {
                    return Err(Error::Malformed { line, what: "trailing tokens".into() });
                }
                if n == 0 {
                    return Err(Error::EmptyGraph { line });
                }
                header = Some((n, m, line));
            }
            Some("e") => {
                let (n, _, _) = header
                    .ok_or_else(|| Error::Malformed { line, what: "edge before header".into() })?;
                let u: usize = parse_tok(tok.next(), line)?;
                let v: usize = parse_tok(tok.next(), line)?;
                let cap: u64 = match tok.next() {
                    Some(c) => c
                        .parse()
                        .map_err(|_| Error::Malformed { line, what: "bad capacity".into() })?,
                    None => 1,
                };
                if tok.next().is_some() {
                    return Err(Error::Malformed { line, what: "trailing tokens".into() });
                }
                if u >= n || v >= n {
                    return Err(Error::VertexRange { line });
                }
                if u == v {
                    return Err(Error::SelfLoop { line });
                }
                if cap == 0 {
                    return Err(Error::BadCapacity { line });
                }
                edges.push(Edge { u, v, cap });
            }
            Some(other) => {
                return Err(Error::Malformed { line, what: format!("unknown record '{other}'") })
            }
            None => unreachable!(),
        }
    }
    let (n, m, hline) =
        header.ok_or(Error::Malformed { line: last_line.max(1), what: "missing header".into() })?;
    if edges.len() != m {
        return Err(Error::Malformed {
            line: hline,
            what: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Ok(Graph { n, edges })
}

fn parse_tok<T: std::str::FromStr>(tok: Option<&str>, line: usize) -> Result<T> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Malformed { line, what: "expected integer field".into() })
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n, g.m());
    for e in &g.edges {
        if e.cap == 1 {
            out.push_str(&format!("e {} {}\n", e.u, e.v));
        } else {
            out.push_str(&format!("e {} {} {}\n", e.u, e.v, e.cap));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Contraction-order keys
// ---------------------------------------------------------------------------

/// How per-edge contraction keys are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KeyMode {
    /// Keys are a uniformly random permutation rank over edges.
    Uniform,
    /// Each edge draws an exponential variate with rate equal to its
    /// capacity; keys are the ascending ranks of the variates, so contracting
    /// in key order realizes capacity-proportional contraction.
    CapacityBiased,
}

/// Graph plus an injective contraction-order key per edge, in `[1, n^3]`.
#[derive(Clone, Debug)]
pub struct OrderedGraph {
    pub graph: Graph,
    /// `keys[i]` orders `graph.edges[i]`; injective.
    pub keys: Vec<u64>,
}

impl OrderedGraph {
    pub fn n(&self) -> usize {
        self.graph.n
    }
}

/// Keys are realized as ranks `1..=m`: downstream computations are purely
/// order-based, and ranks stay within the `[1, n^3]` bound whenever `m` does.
pub fn assign_contraction_order(g: &Graph, seed: u64, mode: KeyMode) -> Result<OrderedGraph> {
    if g.n == 0 {
        return Err(Error::InvalidParam("empty graph".into()));
    }
    let m = g.m();
    let cap = (g.n as u64).saturating_pow(3);
    if m as u64 > cap {
        return Err(Error::KeyRange { m, cap });
    }
    let mut rng = seeds::rng(seed, &[0x6b65]);
    let mut order: Vec<usize> = (0..m).collect();
    match mode {
        KeyMode::Uniform => {
            // Fisher-Yates
            for i in (1..m).rev() {
                let j = rng.gen_range(0..=i);
                order.swap(i, j);
            }
        }
        KeyMode::CapacityBiased => {
            let race: Vec<f64> = g
                .edges
                .iter()
                .map(|e| {
                    let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                    -u.ln() / e.cap as f64
                })
                .collect();
            order.sort_by(|&a, &b| race[a].partial_cmp(&race[b]).unwrap().then(a.cmp(&b)));
        }
    }
    let mut keys = vec![0u64; m];
    for (rank, &e) in order.iter().enumerate() {
        keys[e] = rank as u64 + 1;
    }
    Ok(OrderedGraph { graph: g.clone(), keys })
}

/// Uniform keys for unit capacities, capacity-biased otherwise.
pub fn auto_contraction_order(g: &Graph, seed: u64) -> Result<OrderedGraph> {
    let mode = if g.edges.iter().all(|e| e.cap == 1) {
        KeyMode::Uniform
    } else {
        KeyMode::CapacityBiased
    };
    assign_contraction_order(g, seed, mode)
}

// ---------------------------------------------------------------------------
// Spanning tree under key order
// ---------------------------------------------------------------------------

/// Rooted, oriented minimum spanning tree under key order.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    pub root: usize,
    /// Parent per vertex, `None` for the root.
    pub parent: Vec<Option<usize>>,
    /// Key of the edge to the parent, 0 for the root.
    pub parent_key: Vec<u64>,
    pub children: Vec<Vec<usize>>,
    pub subtree_size: Vec<usize>,
    pub depth: Vec<usize>,
    /// Indices into the source graph's edge list.
    pub tree_edges: Vec<usize>,
}

impl SpanningTree {
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Largest tree-edge key; 0 for a single vertex.
    pub fn max_key(&self) -> u64 {
        self.parent_key.iter().copied().max().unwrap_or(0)
    }
}

pub fn kruskal_mst(og: &OrderedGraph) -> Result<SpanningTree> {
    let n = og.n();
    let mut by_key: Vec<usize> = (0..og.graph.m()).collect();
    by_key.sort_by_key(|&i| og.keys[i]);

    let mut dsu = Dsu::new(n);
    let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    let mut tree_edges = Vec::with_capacity(n.saturating_sub(1));
    for &i in &by_key {
        let e = og.graph.edges[i];
        if dsu.union(e.u, e.v) {
            adj[e.u].push((e.v, og.keys[i]));
            adj[e.v].push((e.u, og.keys[i]));
            tree_edges.push(i);
        }
    }
    if dsu.components() != 1 {
        return Err(Error::Disconnected);
    }

    let root = 0;
    let mut parent = vec![None; n];
    let mut parent_key = vec![0u64; n];
    let mut depth = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[root] = true;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &(w, key) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                parent_key[w] = key;
                depth[w] = depth[v] + 1;
                order.push(w);
            }
        }
    }

    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(p) = parent[v] {
            children[p].push(v);
        }
    }
    for c in &mut children {
        c.sort_unstable();
    }
    let mut subtree_size = vec![1usize; n];
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            subtree_size[p] += subtree_size[v];
        }
    }
    Ok(SpanningTree { root, parent, parent_key, children, subtree_size, depth, tree_edges })
}

// ---------------------------------------------------------------------------
// Prefix contraction
// ---------------------------------------------------------------------------

/// Result of contracting a key-order prefix: the quotient multigraph with
/// surviving keys, plus the vertex -> supervertex map. Supervertex ids are
/// assigned in order of each supervertex's smallest original member.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: OrderedGraph,
    pub map: Vec<usize>,
}

/// Contract edges in ascending key order until exactly `target` supervertices
/// remain. Self-loops are dropped; parallel edges are kept with their
/// capacities and keys.
pub fn contract_prefix(og: &OrderedGraph, target: usize) -> Result<Contraction> {
    let n = og.n();
    if target < 2 || target > n {
        return Err(Error::TargetRange { target, n });
    }
    let mut by_key: Vec<usize> = (0..og.graph.m()).collect();
    by_key.sort_by_key(|&i| og.keys[i]);
    let mut dsu = Dsu::new(n);
    for &i in &by_key {
        if dsu.components() == target {
            break;
        }
        let e = og.graph.edges[i];
        dsu.union(e.u, e.v);
    }
    if dsu.components() != target {
        return Err(Error::Disconnected);
    }
    let mut map = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        let r = dsu.find(v);
        if map[r] == usize::MAX {
            map[r] = next;
            next += 1;
        }
        map[v] = map[r];
    }
    let mut edges = Vec::new();
    let mut keys = Vec::new();
    for (i, e) in og.graph.edges.iter().enumerate() {
        let (su, sv) = (map[e.u], map[e.v]);
        if su != sv {
            edges.push(Edge { u: su, v: sv, cap: e.cap });
            keys.push(og.keys[i]);
        }
    }
    Ok(Contraction { graph: OrderedGraph { graph: Graph { n: target, edges }, keys }, map })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, vec![
            Edge { u: 0, v: 1, cap: 1 },
            Edge { u: 1, v: 2, cap: 1 },
            Edge { u: 0, v: 2, cap: 1 },
        ])
    }

    fn keyed(g: &Graph, keys: &[u64]) -> OrderedGraph {
        OrderedGraph { graph: g.clone(), keys: keys.to_vec() }
    }

    #[test]
    fn parse_triangle() {
        let g = parse_graph("p 3 3\ne 0 1\ne 1 2\ne 0 2\n").unwrap();
        assert_eq!(g.n, 3);
        assert_eq!(g.m(), 3);
        assert!(g.edges.iter().all(|e| e.cap == 1));
    }

    #[test]
    fn parse_capacity_and_comments() {
        let g = parse_graph("# weighted pair\np 2 1\ne 0 1 5\n").unwrap();
        assert_eq!(g.edges, vec![Edge { u: 0, v: 1, cap: 5 }]);
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert_eq!(parse_graph("p 2 1\ne 0 0\n"), Err(Error::SelfLoop { line: 2 }));
        assert_eq!(parse_graph("p 0 0\n"), Err(Error::EmptyGraph { line: 1 }));
        assert_eq!(parse_graph("p 2 1\ne 0 5\n"), Err(Error::VertexRange { line: 2 }));
        assert_eq!(parse_graph("p 2 1\ne 0 1 0\n"), Err(Error::BadCapacity { line: 2 }));
        assert!(matches!(parse_graph("p 2 2\ne 0 1\n"), Err(Error::Malformed { line: 1, .. })));
    }

    #[test]
    fn roundtrip_format() {
        let g = parse_graph("p 3 2\ne 0 1 4\ne 1 2\n").unwrap();
        assert_eq!(write_graph(&g), "p 3 2\ne 0 1 4\ne 1 2\n");
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn keys_are_injective_ranks() {
        let g = triangle();
        let og = assign_contraction_order(&g, 11, KeyMode::Uniform).unwrap();
        let mut ks = og.keys.clone();
        ks.sort_unstable();
        assert_eq!(ks, vec![1, 2, 3]);
        // determinism
        let og2 = assign_contraction_order(&g, 11, KeyMode::Uniform).unwrap();
        assert_eq!(og.keys, og2.keys);
        let og3 = assign_contraction_order(&g, 12, KeyMode::CapacityBiased).unwrap();
        let mut ks3 = og3.keys.clone();
        ks3.sort_unstable();
        assert_eq!(ks3, vec![1, 2, 3]);
    }

    #[test]
    fn capacity_biased_prefers_heavy_edge() {
        let g = Graph::new(2, vec![
            Edge { u: 0, v: 1, cap: 1000 },
            Edge { u: 0, v: 1, cap: 1 },
        ]);
        let mut wins = 0;
        for seed in 0..10_000 {
            let og = assign_contraction_order(&g, seed, KeyMode::CapacityBiased).unwrap();
            if og.keys[0] < og.keys[1] {
                wins += 1;
            }
        }
        // exponential race: P(heavy first) = 1000/1001
        assert!(wins >= 9900, "heavy edge won only {wins}/10000 races");
    }

    #[test]
    fn kruskal_triangle() {
        let og = keyed(&triangle(), &[1, 2, 3]);
        let t = kruskal_mst(&og).unwrap();
        assert_eq!(t.tree_edges, vec![0, 1]);
        assert_eq!(t.root, 0);
        assert_eq!(t.subtree_size[0], 3);
        assert_eq!(t.parent[1], Some(0));
        assert_eq!(t.parent[2], Some(1));
    }

    #[test]
    fn kruskal_rejects_disconnected() {
        let g = Graph::new(3, vec![Edge { u: 0, v: 1, cap: 1 }]);
        let og = keyed(&g, &[1]);
        assert_eq!(kruskal_mst(&og).err(), Some(Error::Disconnected));
    }

    #[test]
    fn contract_triangle_to_two() {
        let og = keyed(&triangle(), &[1, 2, 3]);
        let c = contract_prefix(&og, 2).unwrap();
        assert_eq!(c.map, vec![0, 0, 1]);
        assert_eq!(c.graph.graph.n, 2);
        let total: u64 = c.graph.graph.edges.iter().map(|e| e.cap).sum();
        assert_eq!(total, 2);
    }

    #[test]
    fn contract_identity_and_range() {
        let og = keyed(&triangle(), &[1, 2, 3]);
        let c = contract_prefix(&og, 3).unwrap();
        assert_eq!(c.map, vec![0, 1, 2]);
        assert_eq!(c.graph.graph.m(), 3);
        assert!(contract_prefix(&og, 1).is_err());
        assert!(contract_prefix(&og, 4).is_err());
    }

    #[test]
    fn components_split() {
        let g = triangle();
        assert_eq!(connected_components(&g).count, 1);
        let empty = Graph::new(3, vec![]);
        let c = connected_components(&empty);
        assert_eq!(c.count, 3);
        assert_eq!(c.label, vec![0, 1, 2]);
    }
}
