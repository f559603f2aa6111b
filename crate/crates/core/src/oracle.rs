//! Brute-force ground truth: subset-enumeration cuts, a full union-find sweep
//! of the contraction process, set-partition k-cuts, and naive counterparts
//! of the path and sweep queries. Correctness anchors only; every cap is
//! asserted so a misuse fails loudly instead of running forever.

use crate::decomp::LevelLabeling;
use crate::error::{Error, Result};
use crate::graph::{Graph, OrderedGraph, SpanningTree};
use crate::pathquery::TimeInterval;

pub const BRUTE_CUT_CAP: usize = 20;
pub const TRACE_CAP: usize = 500;
pub const KCUT_CAP: usize = 10;

/// Cut value with a witness side (lexicographically smallest among minima).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteCut {
    pub value: u64,
    pub side: Vec<usize>,
}

/// Enumerates every proper side containing vertex 0.
pub fn brute_min_cut(g: &Graph) -> Result<BruteCut> {
    if g.n > BRUTE_CUT_CAP {
        return Err(Error::OracleScale { n: g.n, cap: BRUTE_CUT_CAP });
    }
    if g.n < 2 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut best: Option<BruteCut> = None;
    for mask in 0..(1u32 << (g.n - 1)) - 1 {
        let side_bits = (mask << 1) | 1; // vertex 0 always inside
        let mut value = 0;
        for e in &g.edges {
            if (side_bits >> e.u) & 1 != (side_bits >> e.v) & 1 {
                value += e.cap;
            }
        }
        let better = match &best {
            None => true,
            Some(b) if value < b.value => true,
            Some(b) if value == b.value => {
                let side = mask_to_side(side_bits, g.n);
                side < b.side
            }
            _ => false,
        };
        if better {
            best = Some(BruteCut { value, side: mask_to_side(side_bits, g.n) });
        }
    }
    Ok(best.expect("n >= 2 yields at least one proper side"))
}

fn mask_to_side(bits: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| (bits >> v) & 1 == 1).collect()
}

// ---------------------------------------------------------------------------
// Contraction sweep
// ---------------------------------------------------------------------------

/// Full trace of the contraction process: the partition after every
/// topology-changing merge, in merge order.
pub struct ContractionTrace {
    pub graph: Graph,
    /// Ascending keys of the merging (tree) edges.
    pub tree_keys: Vec<u64>,
    /// `snapshots[s][v]` = smallest member of v's supervertex after the first
    /// `s` merges. Snapshot `s` is in force for times
    /// `[tree_keys[s-1], tree_keys[s] - 1]` (starting at 0 for `s = 0`).
    pub snapshots: Vec<Vec<usize>>,
}

pub fn simulate_contraction(og: &OrderedGraph) -> Result<ContractionTrace> {
    let n = og.n();
    if n > TRACE_CAP {
        return Err(Error::OracleScale { n, cap: TRACE_CAP });
    }
    let mut by_key: Vec<usize> = (0..og.graph.m()).collect();
    by_key.sort_by_key(|&i| og.keys[i]);
    let mut label: Vec<usize> = (0..n).collect();
    let mut snapshots = vec![label.clone()];
    let mut tree_keys = Vec::new();
    for &i in &by_key {
        let e = og.graph.edges[i];
        let (a, b) = (label[e.u], label[e.v]);
        if a == b {
            continue;
        }
        let keep = a.min(b);
        let drop = a.max(b);
        for l in label.iter_mut() {
            if *l == drop {
                *l = keep;
            }
        }
        tree_keys.push(og.keys[i]);
        snapshots.push(label.clone());
    }
    Ok(ContractionTrace { graph: og.graph.clone(), tree_keys, snapshots })
}

impl ContractionTrace {
    pub fn n(&self) -> usize {
        self.graph.n
    }

    /// Index of the snapshot in force at time `t`.
    pub fn snapshot_at(&self, t: u64) -> usize {
        self.tree_keys.partition_point(|&k| k <= t)
    }

    pub fn bag(&self, v: usize, t: u64) -> Vec<usize> {
        let snap = &self.snapshots[self.snapshot_at(t)];
        (0..self.n()).filter(|&w| snap[w] == snap[v]).collect()
    }

    /// Total capacity crossing v's supervertex at time `t`.
    pub fn bag_degree(&self, v: usize, t: u64) -> u64 {
        let snap = &self.snapshots[self.snapshot_at(t)];
        self.graph
            .edges
            .iter()
            .filter(|e| (snap[e.u] == snap[v]) != (snap[e.v] == snap[v]))
            .map(|e| e.cap)
            .sum()
    }

    /// Minimum over all proper supervertices at all times: value, witness
    /// side, witness time (earliest, then smallest representative).
    pub fn min_singleton(&self) -> (u64, Vec<usize>, u64) {
        let n = self.n();
        assert!(n >= 2, "no proper supervertex in a single-vertex graph");
        let mut best: Option<(u64, Vec<usize>, u64)> = None;
        for (s, snap) in self.snapshots.iter().enumerate() {
            let reps: Vec<usize> = (0..n).filter(|&v| snap[v] == v).collect();
            if reps.len() < 2 {
                continue;
            }
            let start = if s == 0 { 0 } else { self.tree_keys[s - 1] };
            let mut degree = vec![0u64; n];
            for e in &self.graph.edges {
                if snap[e.u] != snap[e.v] {
                    degree[snap[e.u]] += e.cap;
                    degree[snap[e.v]] += e.cap;
                }
            }
            for &r in &reps {
                if best.as_ref().map_or(true, |(b, _, _)| degree[r] < *b) {
                    let side = (0..n).filter(|&v| snap[v] == r).collect();
                    best = Some((degree[r], side, start));
                }
            }
        }
        best.expect("connected graph with n >= 2 has a proper snapshot")
    }

    /// Last time each vertex is the unique smallest-label member of its own
    /// bag. The vertex whose bag becomes the whole graph is capped at
    /// (max tree key) - 1 so the improper full side is never reported.
    pub fn leader_times(&self, lab: &LevelLabeling) -> Vec<u64> {
        let n = self.n();
        let cap = self.tree_keys.last().map_or(0, |&k| k - 1);
        (0..n)
            .map(|v| {
                let mut last_led: Option<usize> = None;
                for (s, snap) in self.snapshots.iter().enumerate() {
                    let bag: Vec<usize> = (0..n).filter(|&w| snap[w] == snap[v]).collect();
                    let min_lvl = bag.iter().map(|&w| lab.level[w]).min().unwrap();
                    let leaders: Vec<usize> =
                        bag.iter().copied().filter(|&w| lab.level[w] == min_lvl).collect();
                    assert_eq!(leaders.len(), 1, "bag leader must be unique");
                    if leaders[0] == v {
                        assert_eq!(last_led, if s == 0 { None } else { Some(s - 1) },
                            "leadership must be a prefix of the sweep");
                        last_led = Some(s);
                    }
                }
                match last_led {
                    Some(s) if s + 1 == self.snapshots.len() => cap,
                    Some(s) => self.tree_keys[s] - 1,
                    None => unreachable!("bag(v, 0) = {{v}} always leads"),
                }
            })
            .collect()
    }

    /// Times within `[0, ldr]` at which the edge crosses v's bag, merged into
    /// one closed range. Panics if the set is not consecutive.
    pub fn crossing_interval(&self, v: usize, edge: usize, ldr: u64) -> Option<(u64, u64)> {
        let e = self.graph.edges[edge];
        let mut runs: Vec<(u64, u64)> = Vec::new();
        for (s, snap) in self.snapshots.iter().enumerate() {
            let start = if s == 0 { 0 } else { self.tree_keys[s - 1] };
            if start > ldr {
                break;
            }
            let end = if s + 1 == self.snapshots.len() {
                ldr
            } else {
                (self.tree_keys[s] - 1).min(ldr)
            };
            if start > end {
                continue;
            }
            let crossing = (snap[e.u] == snap[v]) != (snap[e.v] == snap[v]);
            if crossing {
                match runs.last_mut() {
                    Some(last) if last.1 + 1 == start => last.1 = end,
                    _ => runs.push((start, end)),
                }
            }
        }
        assert!(runs.len() <= 1, "crossing times must form one interval, got {runs:?}");
        runs.pop()
    }
}

// ---------------------------------------------------------------------------
// k-cut enumeration
// ---------------------------------------------------------------------------

/// Optimal k-cut value by enumerating set partitions into exactly k blocks.
/// Cut value counts each crossing edge once.
pub fn brute_k_cut(g: &Graph, k: usize) -> Result<u64> {
    if g.n > KCUT_CAP {
        return Err(Error::OracleScale { n: g.n, cap: KCUT_CAP });
    }
    if k < 1 || k > g.n {
        return Err(Error::InvalidParam(format!("k={k} out of range 1..={}", g.n)));
    }
    let mut assign = vec![0usize; g.n];
    let mut best = u64::MAX;
    fn rec(g: &Graph, k: usize, i: usize, used: usize, assign: &mut [usize], best: &mut u64) {
        if g.n - i < k - used {
            return; // not enough vertices left to open the remaining blocks
        }
        if i == g.n {
            if used == k {
                let value: u64 = g
                    .edges
                    .iter()
                    .filter(|e| assign[e.u] != assign[e.v])
                    .map(|e| e.cap)
                    .sum();
                *best = (*best).min(value);
            }
            return;
        }
        for b in 0..=used.min(k - 1) {
            assign[i] = b;
            let next_used = used.max(b + 1);
            rec(g, k, i + 1, next_used, assign, best);
        }
    }
    rec(g, k, 0, 0, &mut assign, &mut best);
    Ok(best)
}

// ---------------------------------------------------------------------------
// Naive counterparts
// ---------------------------------------------------------------------------

/// Max edge key on the tree path between u and a, by explicit climbing.
pub fn naive_path_scan(t: &SpanningTree, u: usize, a: usize) -> u64 {
    let (mut x, mut y) = (u, a);
    let mut best = 0;
    while t.depth[x] > t.depth[y] {
        best = best.max(t.parent_key[x]);
        x = t.parent[x].unwrap();
    }
    while t.depth[y] > t.depth[x] {
        best = best.max(t.parent_key[y]);
        y = t.parent[y].unwrap();
    }
    while x != y {
        best = best.max(t.parent_key[x]).max(t.parent_key[y]);
        x = t.parent[x].unwrap();
        y = t.parent[y].unwrap();
    }
    best
}

/// Per-point coverage count over `[0, range]`.
pub fn naive_coverage(intervals: &[TimeInterval], range: u64) -> (u64, u64) {
    let mut best = u64::MAX;
    let mut at = 0;
    for t in 0..=range {
        let c: u64 = intervals
            .iter()
            .filter(|iv| iv.a <= t && t <= iv.b)
            .map(|iv| iv.multiplicity)
            .sum();
        if c < best {
            best = c;
            at = t;
        }
    }
    (best, at)
}

/// Independent re-check of the decomposition property by per-level BFS.
pub fn naive_decomp_validate(t: &SpanningTree, lab: &LevelLabeling) -> bool {
    let n = t.n();
    if lab.height > crate::decomp::height_bound(n) {
        return false;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(p) = t.parent[v] {
            adj[v].push(p);
            adj[p].push(v);
        }
    }
    for i in 1..=lab.height {
        let mut seen = vec![false; n];
        for s in 0..n {
            if lab.level[s] < i || seen[s] {
                continue;
            }
            let mut at_level = 0;
            let mut queue = vec![s];
            seen[s] = true;
            while let Some(v) = queue.pop() {
                if lab.level[v] == i {
                    at_level += 1;
                }
                for &w in &adj[v] {
                    if lab.level[w] >= i && !seen[w] {
                        seen[w] = true;
                        queue.push(w);
                    }
                }
            }
            if at_level > 1 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp;
    use crate::generate::{generate, GenModel};
    use crate::graph::{kruskal_mst, Edge};

    #[test]
    fn brute_cut_basics() {
        let tri = generate(GenModel::Cycle { n: 3 }, 0).unwrap();
        assert_eq!(brute_min_cut(&tri).unwrap().value, 2);
        let star = generate(GenModel::Star { n: 5 }, 0).unwrap();
        assert_eq!(brute_min_cut(&star).unwrap().value, 1);
        let k4 = generate(GenModel::Clique { n: 4 }, 0).unwrap();
        assert_eq!(brute_min_cut(&k4).unwrap().value, 3);
    }

    #[test]
    fn brute_cut_complete_graphs() {
        for n in 2..=7 {
            let g = generate(GenModel::Clique { n }, 0).unwrap();
            assert_eq!(brute_min_cut(&g).unwrap().value, (n - 1) as u64);
        }
    }

    fn triangle_trace() -> ContractionTrace {
        let g = generate(GenModel::Cycle { n: 3 }, 0).unwrap();
        // edges (0,1), (1,2), (2,0) with keys 1, 2, 3
        let og = OrderedGraph { graph: g, keys: vec![1, 2, 3] };
        simulate_contraction(&og).unwrap()
    }

    #[test]
    fn triangle_sweep() {
        let trace = triangle_trace();
        assert_eq!(trace.tree_keys, vec![1, 2]);
        let (value, side, t) = trace.min_singleton();
        assert_eq!(value, 2);
        assert_eq!(t, 0);
        assert!(side.len() == 1);

        let og = OrderedGraph { graph: trace.graph.clone(), keys: vec![1, 2, 3] };
        let tree = kruskal_mst(&og).unwrap();
        let lab = decomp::decompose(&tree);
        assert_eq!(lab.level, vec![3, 2, 1]);
        assert_eq!(trace.leader_times(&lab), vec![0, 1, 1]);
    }

    #[test]
    fn path_sweep_min_is_endpoint_degree() {
        let g = Graph::new(3, vec![
            Edge { u: 0, v: 1, cap: 1 },
            Edge { u: 1, v: 2, cap: 1 },
        ]);
        let og = OrderedGraph { graph: g, keys: vec![1, 2] };
        let trace = simulate_contraction(&og).unwrap();
        assert_eq!(trace.min_singleton().0, 1);
    }

    #[test]
    fn k_cut_enumeration() {
        let tri = generate(GenModel::Clique { n: 3 }, 0).unwrap();
        assert_eq!(brute_k_cut(&tri, 2).unwrap(), 2);
        let bridge = generate(GenModel::TwoCliquesBridge { size: 3 }, 0).unwrap();
        assert_eq!(brute_k_cut(&bridge, 2).unwrap(), 1);
        assert_eq!(brute_k_cut(&bridge, 3).unwrap(), 3);
    }

    #[test]
    fn k_cut_at_2_matches_min_cut() {
        for seed in 0..10 {
            let g = generate(GenModel::Gnp { n: 7, p: 0.5 }, seed).unwrap();
            assert_eq!(brute_k_cut(&g, 2).unwrap(), brute_min_cut(&g).unwrap().value);
        }
    }

    #[test]
    fn naive_counterparts_on_small_inputs() {
        let g = Graph::new(3, vec![
            Edge { u: 0, v: 1, cap: 1 },
            Edge { u: 1, v: 2, cap: 1 },
        ]);
        let og = OrderedGraph { graph: g, keys: vec![1, 2] };
        let t = kruskal_mst(&og).unwrap();
        assert_eq!(naive_path_scan(&t, 0, 2), 2);
        assert_eq!(naive_path_scan(&t, 2, 2), 0);

        let iv = |a, b| TimeInterval::new(a, b, 0, 0, 1);
        assert_eq!(naive_coverage(&[iv(0, 1), iv(0, 1)], 1), (2, 0));

        let lab = decomp::decompose(&t);
        assert!(naive_decomp_validate(&t, &lab));
        let bad = LevelLabeling { level: vec![1, 1, 1], height: 1 };
        assert!(!naive_decomp_validate(&t, &bad));
    }
}
