//! Smallest singleton cut over the whole contraction process.
//!
//! A bag `bag(v, t)` is the set of vertices reachable from `v` through tree
//! edges with key at most `t`; its degree is the capacity crossing it. Every
//! bag has a unique leader (its minimum-level vertex under the low depth
//! decomposition), so the global minimum factors into one subproblem per
//! decomposition level: for each level-`i` vertex `v`, every edge crosses
//! `v`-led bags during one consecutive time interval, and the minimum bag
//! degree is the minimum interval coverage over `[0, ldr_time(v)]`.

use crate::ampc::{AmpcConfig, AmpcRuntime, AmpcStats, Key, Task, TaskCtx};
use crate::decomp::{self, LevelLabeling};
use crate::error::{Error, Result};
use crate::graph::{kruskal_mst, OrderedGraph, SpanningTree};
use crate::pathquery::{build_index, min_coverage, PathExtremumIndex, TimeInterval};
use std::cell::RefCell;
use std::collections::BTreeMap;

/// Last time each vertex leads its own bag. `cap` is the horizon
/// `(max tree key) - 1`: at the next step the final merge would make the one
/// remaining bag improper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeaderTimes {
    pub ldr_time: Vec<u64>,
    pub cap: u64,
}

/// The minimizing singleton cut with a reproducible side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingletonWitness {
    pub leader: usize,
    pub time: u64,
    pub value: u64,
    pub side: Vec<usize>,
}

/// Per-level view of the induced forest: components of `{v: level(v) >= i}`
/// and, per vertex, the unique level-`i` vertex of its component (`None` for
/// vertices below the level or in components with no level-`i` vertex; the
/// latter are handled at their own minimum level).
struct LevelView {
    comps: Vec<Vec<usize>>,
    root_of: Vec<Option<usize>>,
}

fn level_view(t: &SpanningTree, lab: &LevelLabeling, i: usize) -> LevelView {
    let comps = decomp::level_components(t, lab, i);
    let mut root_of = vec![None; t.n()];
    for comp in &comps {
        let mut root = None;
        for &v in comp {
            if lab.level[v] == i {
                debug_assert!(root.is_none(), "two level-{i} vertices in one component");
                root = Some(v);
            }
        }
        if root.is_some() {
            for &v in comp {
                root_of[v] = root;
            }
        }
    }
    LevelView { comps, root_of }
}

fn tree_edge_key(t: &SpanningTree, p: usize, q: usize) -> u64 {
    if t.parent[p] == Some(q) {
        t.parent_key[p]
    } else {
        debug_assert_eq!(t.parent[q], Some(p));
        t.parent_key[q]
    }
}

/// Last leadership time per vertex: the first boundary edge of the vertex's
/// component to complete a path to a lower level ends the leadership one step
/// earlier. Components with no boundary get the global cap.
pub fn leader_times(
    t: &SpanningTree,
    lab: &LevelLabeling,
    idx: &PathExtremumIndex,
) -> LeaderTimes {
    let mut cost = 0;
    leader_times_costed(t, lab, idx, &mut cost)
}

fn leader_times_costed(
    t: &SpanningTree,
    lab: &LevelLabeling,
    idx: &PathExtremumIndex,
    cost: &mut usize,
) -> LeaderTimes {
    let n = t.n();
    let cap = t.max_key().saturating_sub(1);
    let mut ldr_time = vec![u64::MAX; n];
    for i in 1..=lab.height {
        let view = level_view(t, lab, i);
        for comp in &view.comps {
            let Some(root) = comp.iter().copied().find(|&v| lab.level[v] == i) else {
                continue;
            };
            let boundary = decomp::boundary_edges(t, lab, i, comp);
            *cost += comp.len();
            let mut first_exit = None;
            for (p, q) in boundary {
                let (to_p, hops) = idx.path_max_costed(root, p);
                *cost += hops;
                let exit = to_p.max(tree_edge_key(t, p, q));
                first_exit = Some(first_exit.map_or(exit, |f: u64| f.min(exit)));
            }
            ldr_time[root] = match first_exit {
                // bag(v, 0) = {v}, so the exit key (>= 1) leaves time >= 0
                Some(exit) => exit - 1,
                None => cap,
            };
        }
    }
    debug_assert!(ldr_time.iter().all(|&x| x != u64::MAX));
    LeaderTimes { ldr_time, cap }
}

/// Case analysis for one edge at one level. `rx`/`ry` are the component
/// roots of the endpoints (`None` when the endpoint does not resolve at this
/// level), `mw_*` the max path key from the endpoint to its root.
pub fn edge_intervals(
    rx: Option<usize>,
    ry: Option<usize>,
    mw_x: u64,
    mw_y: u64,
    lt: &LeaderTimes,
    edge: usize,
    cap: u64,
) -> Vec<TimeInterval> {
    let one_side = |r: usize, mw: u64| -> Option<TimeInterval> {
        // the other endpoint joins only after the leadership ends
        if mw <= lt.ldr_time[r] {
            Some(TimeInterval::new(mw, lt.ldr_time[r], r, edge, cap))
        } else {
            None
        }
    };
    match (rx, ry) {
        (None, None) => Vec::new(),
        (Some(r), None) => one_side(r, mw_x).into_iter().collect(),
        (None, Some(r)) => one_side(r, mw_y).into_iter().collect(),
        (Some(ra), Some(rb)) if ra != rb => {
            one_side(ra, mw_x).into_iter().chain(one_side(rb, mw_y)).collect()
        }
        (Some(r), Some(_)) => {
            // same root: the edge crosses between the endpoints' join times
            let lo = mw_x.min(mw_y);
            let hi_join = mw_x.max(mw_y);
            debug_assert!(hi_join >= 1, "distinct endpoints cannot both sit at the root");
            let hi = (hi_join - 1).min(lt.ldr_time[r]);
            if lo <= hi {
                vec![TimeInterval::new(lo, hi, r, edge, cap)]
            } else {
                Vec::new()
            }
        }
    }
}

/// All non-empty time intervals of level `i`.
pub fn level_intervals(
    og: &OrderedGraph,
    t: &SpanningTree,
    lab: &LevelLabeling,
    idx: &PathExtremumIndex,
    lt: &LeaderTimes,
    i: usize,
) -> Vec<TimeInterval> {
    let mut cost = 0;
    let view = level_view(t, lab, i);
    level_intervals_costed(og, idx, lt, &view, &mut cost)
}

fn level_intervals_costed(
    og: &OrderedGraph,
    idx: &PathExtremumIndex,
    lt: &LeaderTimes,
    view: &LevelView,
    cost: &mut usize,
) -> Vec<TimeInterval> {
    let mut out = Vec::new();
    for (ei, e) in og.graph.edges.iter().enumerate() {
        let rx = view.root_of[e.u];
        let ry = view.root_of[e.v];
        let mut mw = |x: usize, r: Option<usize>| -> u64 {
            match r {
                Some(root) => {
                    let (v, hops) = idx.path_max_costed(x, root);
                    *cost += hops;
                    v
                }
                None => 0,
            }
        };
        let mw_x = mw(e.u, rx);
        let mw_y = mw(e.v, ry);
        out.extend(edge_intervals(rx, ry, mw_x, mw_y, lt, ei, e.cap));
    }
    out
}

/// Minimum bag degree among this level's leaders: per owner, the minimum
/// interval coverage over `[0, ldr_time(owner)]`. Ties resolve to the
/// smallest owner id, then the earliest time.
pub fn level_min(
    intervals: &[TimeInterval],
    lt: &LeaderTimes,
) -> Option<(u64, usize, u64)> {
    let mut by_owner: BTreeMap<usize, Vec<TimeInterval>> = BTreeMap::new();
    for iv in intervals {
        by_owner.entry(iv.owner).or_default().push(*iv);
    }
    let mut best: Option<(u64, usize, u64)> = None;
    for (owner, ivs) in by_owner {
        let (value, at) = min_coverage(&ivs, lt.ldr_time[owner])
            .expect("intervals are clipped to the owner horizon");
        if best.map_or(true, |(b, _, _)| value < b) {
            best = Some((value, owner, at));
        }
    }
    best
}

/// The bag of `leader` at `time`: flood along tree edges with key <= time.
pub fn bag_flood(t: &SpanningTree, leader: usize, time: u64) -> Vec<usize> {
    let mut side = vec![leader];
    let mut seen = vec![false; t.n()];
    seen[leader] = true;
    let mut head = 0;
    while head < side.len() {
        let v = side[head];
        head += 1;
        let try_edge = |w: usize, key: u64, seen: &mut Vec<bool>, side: &mut Vec<usize>| {
            if key <= time && !seen[w] {
                seen[w] = true;
                side.push(w);
            }
        };
        if let Some(p) = t.parent[v] {
            try_edge(p, t.parent_key[v], &mut seen, &mut side);
        }
        for &c in &t.children[v] {
            try_edge(c, t.parent_key[c], &mut seen, &mut side);
        }
    }
    side.sort_unstable();
    side
}

struct Pipeline {
    tree: SpanningTree,
    best: (u64, usize, u64),
}

fn run_pipeline(og: &OrderedGraph, cost: &mut usize) -> Result<Pipeline> {
    if og.n() < 2 {
        return Err(Error::InvalidParam("singleton cuts need at least 2 vertices".into()));
    }
    let tree = kruskal_mst(og)?;
    let lab = decomp::decompose(&tree);
    let idx = build_index(&tree);
    let lt = leader_times_costed(&tree, &lab, &idx, cost);
    let mut best: Option<(u64, usize, u64)> = None;
    for i in 1..=lab.height {
        let view = level_view(&tree, &lab, i);
        let intervals = level_intervals_costed(og, &idx, &lt, &view, cost);
        if let Some((value, owner, at)) = level_min(&intervals, &lt) {
            if best.map_or(true, |(b, _, _)| value < b) {
                best = Some((value, owner, at));
            }
        }
    }
    let best = best.expect("every vertex leads its own level");
    Ok(Pipeline { tree, best })
}

fn witness_of(og: &OrderedGraph, p: &Pipeline) -> SingletonWitness {
    let (value, leader, time) = p.best;
    let side = bag_flood(&p.tree, leader, time);
    debug_assert_eq!(
        og.graph.crossing_capacity(&og.graph.side_mask(&side)),
        value,
        "witness must reproduce the reported value"
    );
    SingletonWitness { leader, time, value, side }
}

/// Minimum over all levels; the witness side is rebuilt by a key-bounded
/// flood from the leader and reproduces the value.
pub fn smallest_singleton_cut(og: &OrderedGraph) -> Result<SingletonWitness> {
    let mut cost = 0;
    let p = run_pipeline(og, &mut cost)?;
    Ok(witness_of(og, &p))
}

/// Same, also reporting the adaptive-query count for callers that embed the
/// pipeline in their own accounting.
pub(crate) fn smallest_singleton_cut_costed(
    og: &OrderedGraph,
) -> Result<(SingletonWitness, usize)> {
    let mut cost = 0;
    let p = run_pipeline(og, &mut cost)?;
    Ok((witness_of(og, &p), cost))
}

/// Runtime-driven variant: ten rounds regardless of graph size (spanning
/// tree, five decomposition rounds, extremum index, leader times, per-level
/// interval sweeps, final reduction).
pub fn smallest_singleton_cut_ampc(
    og: &OrderedGraph,
    cfg: &AmpcConfig,
) -> Result<(SingletonWitness, AmpcStats)> {
    if og.n() < 2 {
        return Err(Error::InvalidParam("singleton cuts need at least 2 vertices".into()));
    }
    let mut rt = AmpcRuntime::new(*cfg);
    let n = og.n();
    let m = og.graph.m();

    let tree_cell: RefCell<Option<Result<SpanningTree>>> = RefCell::new(None);
    rt.run_round(vec![Box::new(|ctx: &mut TaskCtx| {
        ctx.charge_queries(m);
        ctx.note_scratch(2 * m + n);
        ctx.write_word(Key::new("mst", 0, 0), n as i64);
        *tree_cell.borrow_mut() = Some(kruskal_mst(og));
    }) as Task])?;
    let tree = tree_cell.into_inner().unwrap()?;

    let lab = decomp::decomp_rounds(&mut rt, &tree)?;

    let idx_cell: RefCell<Option<PathExtremumIndex>> = RefCell::new(None);
    rt.run_round(vec![Box::new(|ctx: &mut TaskCtx| {
        let log = (usize::BITS - n.leading_zeros()) as usize;
        ctx.charge_queries(n);
        ctx.note_scratch(2 * n * log);
        ctx.write_word(Key::new("rmq", 0, 0), n as i64);
        *idx_cell.borrow_mut() = Some(build_index(&tree));
    }) as Task])?;
    let idx = idx_cell.into_inner().unwrap();

    // leader times, one task per level
    let ldr_cell = RefCell::new(vec![u64::MAX; n]);
    let cap = tree.max_key().saturating_sub(1);
    let tasks: Vec<Task> = (1..=lab.height)
        .map(|i| {
            let ldr = &ldr_cell;
            let tree = &tree;
            let lab = &lab;
            let idx = &idx;
            Box::new(move |ctx: &mut TaskCtx| {
                let view = level_view(tree, lab, i);
                let mut cost = 0;
                for comp in &view.comps {
                    let Some(root) = comp.iter().copied().find(|&v| lab.level[v] == i) else {
                        continue;
                    };
                    let boundary = decomp::boundary_edges(tree, lab, i, comp);
                    cost += comp.len();
                    let mut first_exit: Option<u64> = None;
                    for (p, q) in boundary {
                        let (to_p, hops) = idx.path_max_costed(root, p);
                        cost += hops;
                        let exit = to_p.max(tree_edge_key(tree, p, q));
                        first_exit = Some(first_exit.map_or(exit, |f| f.min(exit)));
                    }
                    let t0 = first_exit.map_or(cap, |exit| exit - 1);
                    ldr.borrow_mut()[root] = t0;
                    ctx.write_word(Key::new("ldr", root as u64, 0), t0 as i64);
                }
                ctx.charge_queries(cost);
            }) as Task
        })
        .collect();
    rt.run_round(tasks)?;
    let lt = LeaderTimes { ldr_time: ldr_cell.into_inner(), cap };

    // intervals and per-owner sweeps, one task per level
    let level_best = RefCell::new(vec![None; lab.height + 1]);
    let tasks: Vec<Task> = (1..=lab.height)
        .map(|i| {
            let best = &level_best;
            let tree = &tree;
            let lab = &lab;
            let idx = &idx;
            let lt = &lt;
            Box::new(move |ctx: &mut TaskCtx| {
                let view = level_view(tree, lab, i);
                let mut cost = 0;
                let intervals = level_intervals_costed(og, idx, lt, &view, &mut cost);
                ctx.charge_queries(cost + intervals.len());
                ctx.note_scratch(4 * intervals.len());
                let min = level_min(&intervals, lt);
                if let Some((value, owner, at)) = min {
                    ctx.write(Key::new("lmin", i as u64, 0), vec![
                        value as i64,
                        owner as i64,
                        at as i64,
                    ]);
                }
                best.borrow_mut()[i] = min;
            }) as Task
        })
        .collect();
    rt.run_round(tasks)?;
    let level_best = level_best.into_inner();

    let witness_cell: RefCell<Option<SingletonWitness>> = RefCell::new(None);
    rt.run_round(vec![Box::new(|ctx: &mut TaskCtx| {
        ctx.charge_queries(lab.height);
        let mut best: Option<(u64, usize, u64)> = None;
        for min in level_best.iter().flatten() {
            if best.map_or(true, |(b, _, _)| min.0 < b) {
                best = Some(*min);
            }
        }
        let (value, leader, time) = best.expect("some level owns the minimum");
        let side = bag_flood(&tree, leader, time);
        ctx.charge_queries(side.len());
        ctx.write(
            Key::new("scut", 0, 0),
            vec![value as i64, leader as i64, time as i64, side.len() as i64],
        );
        *witness_cell.borrow_mut() = Some(SingletonWitness { leader, time, value, side });
    }) as Task])?;
    let witness = witness_cell.into_inner().unwrap();
    debug_assert_eq!(
        og.graph.crossing_capacity(&og.graph.side_mask(&witness.side)),
        witness.value
    );
    Ok((witness, rt.stats()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GenModel};
    use crate::graph::{assign_contraction_order, Graph, KeyMode};
    use crate::oracle;

    fn triangle_keyed() -> OrderedGraph {
        let g = generate(GenModel::Cycle { n: 3 }, 0).unwrap();
        // edges (0,1), (1,2), (2,0) with keys 1, 2, 3
        OrderedGraph { graph: g, keys: vec![1, 2, 3] }
    }

    #[test]
    fn triangle_leader_times() {
        let og = triangle_keyed();
        let t = kruskal_mst(&og).unwrap();
        let lab = decomp::decompose(&t);
        let idx = build_index(&t);
        let lt = leader_times(&t, &lab, &idx);
        assert_eq!(lt.ldr_time, vec![0, 1, 1]);
        assert_eq!(lt.cap, 1);
    }

    #[test]
    fn triangle_level_intervals() {
        let og = triangle_keyed();
        let t = kruskal_mst(&og).unwrap();
        let lab = decomp::decompose(&t);
        let idx = build_index(&t);
        let lt = leader_times(&t, &lab, &idx);

        // level 1: root is vertex 2; edge (2,0) crosses during [0,1]
        let ivs = level_intervals(&og, &t, &lab, &idx, &lt, 1);
        assert!(ivs.contains(&TimeInterval::new(0, 1, 2, 2, 1)));
        assert!(ivs.contains(&TimeInterval::new(0, 1, 2, 1, 1)));
        assert_eq!(ivs.len(), 2, "edge (0,1) joins both endpoints at once: {ivs:?}");
        assert_eq!(level_min(&ivs, &lt), Some((2, 2, 0)));

        // level 2: component {0,1} rooted at 1
        let ivs = level_intervals(&og, &t, &lab, &idx, &lt, 2);
        assert!(ivs.contains(&TimeInterval::new(0, 1, 1, 1, 1)));
        assert!(ivs.contains(&TimeInterval::new(0, 0, 1, 0, 1)));
        assert_eq!(level_min(&ivs, &lt), Some((2, 1, 0)));
    }

    #[test]
    fn triangle_witness() {
        let og = triangle_keyed();
        let w = smallest_singleton_cut(&og).unwrap();
        assert_eq!(w.value, 2);
        assert_eq!(w.side, vec![2]);
        assert_eq!(w.time, 0);
    }

    #[test]
    fn star_min_is_a_leaf() {
        for seed in 0..10 {
            let g = generate(GenModel::Star { n: 6 }, 0).unwrap();
            let og = assign_contraction_order(&g, seed, KeyMode::Uniform).unwrap();
            let w = smallest_singleton_cut(&og).unwrap();
            assert_eq!(w.value, 1);
            assert_eq!(w.side.len(), 1);
            assert_ne!(w.side[0], 0);
        }
    }

    #[test]
    fn path_min_is_one() {
        let g = Graph::new(3, vec![
            crate::graph::Edge { u: 0, v: 1, cap: 1 },
            crate::graph::Edge { u: 1, v: 2, cap: 1 },
        ]);
        let og = OrderedGraph { graph: g, keys: vec![1, 2] };
        assert_eq!(smallest_singleton_cut(&og).unwrap().value, 1);
    }

    #[test]
    fn matches_oracle_on_random_graphs() {
        for seed in 0..40u64 {
            let n = 4 + (seed as usize) % 9;
            let g = generate(GenModel::Gnp { n, p: 0.45 }, seed).unwrap();
            for ks in 0..5u64 {
                let og = assign_contraction_order(&g, ks * 131 + seed, KeyMode::Uniform).unwrap();
                let got = smallest_singleton_cut(&og).unwrap();
                let trace = oracle::simulate_contraction(&og).unwrap();
                let (want, _, _) = trace.min_singleton();
                assert_eq!(got.value, want, "n={n} seed={seed} ks={ks}");
                let mask = og.graph.side_mask(&got.side);
                assert_eq!(og.graph.crossing_capacity(&mask), got.value);
            }
        }
    }

    #[test]
    fn ampc_variant_matches_and_rounds_are_size_free() {
        let mut rounds = Vec::new();
        for n in [16usize, 96] {
            let g = generate(GenModel::Gnp { n, p: 0.3 }, 5).unwrap();
            let og = assign_contraction_order(&g, 9, KeyMode::Uniform).unwrap();
            let cfg = AmpcConfig::new(n, 0.5).unwrap();
            let (w, stats) = smallest_singleton_cut_ampc(&og, &cfg).unwrap();
            assert_eq!(w, smallest_singleton_cut(&og).unwrap());
            rounds.push(stats.rounds);
        }
        assert_eq!(rounds[0], rounds[1]);
    }
}
