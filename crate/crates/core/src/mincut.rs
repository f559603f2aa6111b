//! Recursive approximate minimum cut over random contraction, with singleton
//! tracking at every recursion level and an exact base case.
//!
//! Each recursion node draws fresh contraction keys, records the smallest
//! singleton cut seen under those keys, and hands a contracted copy to the
//! next level. Instances at every level are materialized independently by
//! composing the contraction maps down the branch, so the whole tree runs in
//! four simulated rounds no matter the input size; instance counts follow the
//! boosted schedule.

use crate::ampc::{AmpcConfig, AmpcRuntime, AmpcStats, Key, Task, TaskCtx};
use crate::error::{Error, Result};
use crate::graph::{auto_contraction_order, contract_prefix, Graph};
use crate::seeds;
use crate::singleton;
use std::cell::RefCell;

pub const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Where a cut candidate came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutSource {
    /// Singleton tracking at the given recursion level (1-based).
    Singleton { level: usize },
    BaseExact,
}

impl std::fmt::Display for CutSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CutSource::Singleton { level } => write!(f, "singleton@{level}"),
            CutSource::BaseExact => write!(f, "base_exact"),
        }
    }
}

/// Cut value plus a witness side in original vertex ids; recomputing the
/// crossing capacity of the side reproduces the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    pub value: u64,
    pub side: Vec<usize>,
    pub source: CutSource,
    pub trials_used: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScheduleMode {
    /// Shrink by sqrt(2) with branching 2 at every level.
    KargerStein,
    /// Shrink accelerates as the recursion deepens; instance counts track
    /// t^(1 - eps/3).
    Boosted,
}

/// One recursion level. `shrink` and `branching` describe the step from this
/// level to the next (1 at the terminal level).
#[derive(Clone, Copy, Debug)]
pub struct ScheduleLevel {
    pub size: usize,
    /// Cumulative shrink factor n / size.
    pub t: f64,
    pub shrink: f64,
    pub branching: usize,
    pub instances: usize,
}

#[derive(Clone, Debug)]
pub struct Schedule {
    pub n: usize,
    pub epsilon: f64,
    pub mode: ScheduleMode,
    /// Instances at or below this size are solved exactly on one machine.
    pub base_threshold: usize,
    pub levels: Vec<ScheduleLevel>,
}

impl Schedule {
    /// Number of contraction levels actually executed before the base case.
    pub fn depth(&self) -> usize {
        self.levels.iter().position(|l| l.size <= self.base_threshold).unwrap_or(0)
    }
}

pub fn base_threshold(n: usize, epsilon: f64) -> usize {
    ((n as f64).powf(epsilon).ceil() as usize).clamp(16, 64)
}

/// The level plan down to 2-vertex instances. Execution stops earlier, at
/// `base_threshold`.
pub fn make_schedule(n: usize, epsilon: f64, mode: ScheduleMode) -> Result<Schedule> {
    if n < 2 {
        return Err(Error::InvalidParam("schedule needs n >= 2".into()));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParam(format!("epsilon {epsilon} not in (0, 1)")));
    }
    let grow = (epsilon / 3.0) / (1.0 - epsilon / 3.0);
    let count_exp = 1.0 - epsilon / 3.0;
    let mut levels = Vec::new();
    let mut size = n;
    let mut instances = 1usize;
    while size > 2 {
        let t = n as f64 / size as f64;
        let x = match mode {
            ScheduleMode::KargerStein => SQRT_2,
            ScheduleMode::Boosted => SQRT_2.max(t.powf(grow)),
        };
        let next_size = ((size as f64 / x).ceil() as usize).clamp(2, size - 1);
        let next_instances = match mode {
            ScheduleMode::KargerStein => instances * 2,
            ScheduleMode::Boosted => {
                let target = (n as f64 / next_size as f64).powf(count_exp).ceil() as usize;
                // never exceed the per-level branching allowance
                target.min(instances * (x.powf(count_exp).ceil() as usize)).max(instances)
            }
        };
        let branching = next_instances.div_ceil(instances);
        levels.push(ScheduleLevel { size, t, shrink: x, branching, instances });
        size = next_size;
        instances = next_instances;
    }
    levels.push(ScheduleLevel {
        size,
        t: n as f64 / size as f64,
        shrink: 1.0,
        branching: 1,
        instances,
    });
    Ok(Schedule { n, epsilon, mode, base_threshold: base_threshold(n, epsilon), levels })
}

/// Default trial count.
pub fn default_trials(n: usize) -> u32 {
    let log = (n.max(2) as f64).log2();
    (4.0 * log * log).ceil() as u32
}

// ---------------------------------------------------------------------------
// Exact base case
// ---------------------------------------------------------------------------

/// Deterministic Stoer-Wagner minimum cut on the capacity multigraph.
pub fn exact_min_cut(g: &Graph) -> Result<CutResult> {
    let n = g.n;
    if n < 2 {
        return Err(Error::InvalidParam("min cut needs at least 2 vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut w = vec![vec![0u64; n]; n];
    for e in &g.edges {
        w[e.u][e.v] += e.cap;
        w[e.v][e.u] += e.cap;
    }
    let mut merged: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best: Option<(u64, Vec<usize>)> = None;
    while active.len() > 1 {
        // maximum adjacency order; ties to the smallest id
        let mut weight = vec![0u64; n];
        let mut added = vec![false; n];
        let mut order = Vec::with_capacity(active.len());
        for _ in 0..active.len() {
            let mut pick = None;
            for &v in &active {
                if !added[v] && pick.map_or(true, |p: usize| weight[v] > weight[p]) {
                    pick = Some(v);
                }
            }
            let v = pick.unwrap();
            added[v] = true;
            order.push(v);
            for &u in &active {
                if !added[u] {
                    weight[u] += w[v][u];
                }
            }
        }
        let t = *order.last().unwrap();
        let s = order[order.len() - 2];
        let cut_of_phase = weight[t];
        if best.as_ref().map_or(true, |(b, _)| cut_of_phase < *b) {
            best = Some((cut_of_phase, merged[t].clone()));
        }
        for &u in &active {
            if u != t && u != s {
                w[s][u] += w[t][u];
                w[u][s] = w[s][u];
            }
        }
        let absorbed = std::mem::take(&mut merged[t]);
        merged[s].extend(absorbed);
        active.retain(|&u| u != t);
    }
    let (value, mut side) = best.unwrap();
    side.sort_unstable();
    Ok(CutResult { value, side, source: CutSource::BaseExact, trials_used: 0 })
}

// ---------------------------------------------------------------------------
// The recursion
// ---------------------------------------------------------------------------

struct Candidate {
    value: u64,
    side: Vec<usize>,
    source: CutSource,
}

/// Instance at one recursion node: the contracted graph and the composed
/// original-vertex -> supervertex map.
struct Instance {
    graph: Graph,
    map: Vec<usize>,
}

/// Materialize the instance feeding level `k` of the branch that ends at
/// instance index `j` (i.e. the parent instance of node `(k, j)`), by
/// composing the contractions of the ancestor copies.
fn materialize_parent(
    g: &Graph,
    schedule: &Schedule,
    seed: u64,
    trial: u32,
    k: usize,
    j: usize,
    queries: &mut usize,
) -> Result<Instance> {
    // ancestor copy indices at levels k-1, k-2, ..., 1
    let mut chain = Vec::with_capacity(k - 1);
    let mut idx = j;
    for l in (1..k).rev() {
        idx %= schedule.levels[l].instances;
        chain.push((l, idx));
    }
    chain.reverse();
    let mut inst = Instance { graph: g.clone(), map: (0..g.n).collect() };
    for (l, jl) in chain {
        let keys = auto_contraction_order(
            &inst.graph,
            seeds::fold(seed, &[trial as u64, l as u64, jl as u64]),
        )?;
        *queries += inst.graph.m();
        let c = contract_prefix(&keys, schedule.levels[l].size)?;
        inst.map = inst.map.iter().map(|&s| c.map[s]).collect();
        inst.graph = c.graph.graph;
    }
    Ok(inst)
}

/// Recursive approximate min cut. Per trial, every recursion node tracks the
/// smallest singleton cut of its parent instance under fresh keys and leaf
/// instances are solved exactly; the result is the minimum over all
/// candidates of all trials, with the witness mapped back to original
/// vertices. Deterministic for a fixed `(seed, trials)`.
pub fn ampc_min_cut(
    g: &Graph,
    epsilon: f64,
    seed: u64,
    trials: u32,
    mode: ScheduleMode,
) -> Result<(CutResult, AmpcStats)> {
    if g.n < 2 {
        return Err(Error::InvalidParam("min cut needs at least 2 vertices".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidParam("trials must be at least 1".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let schedule = make_schedule(g.n, epsilon, mode)?;
    let depth = schedule.depth();
    let cfg = AmpcConfig::new(g.n, epsilon)?;
    let mut rt = AmpcRuntime::new(cfg);

    rt.run_round(vec![Box::new(|ctx: &mut TaskCtx| {
        ctx.note_scratch(schedule.levels.len() * 5);
        ctx.write_word(Key::new("sched", 0, 0), schedule.levels.len() as i64);
    }) as Task])?;

    let candidates: RefCell<Vec<Candidate>> = RefCell::new(Vec::new());
    let leaf_count = if depth == 0 { 1 } else { schedule.levels[depth].instances };
    let leaves: RefCell<Vec<Option<Instance>>> =
        RefCell::new((0..trials as usize * leaf_count).map(|_| None).collect());

    // contraction + singleton tracking: one task per recursion node
    let mut tasks: Vec<Task> = Vec::new();
    for trial in 0..trials {
        if depth == 0 {
            let leaves = &leaves;
            tasks.push(Box::new(move |ctx: &mut TaskCtx| {
                ctx.charge_queries(g.m());
                leaves.borrow_mut()[trial as usize] =
                    Some(Instance { graph: g.clone(), map: (0..g.n).collect() });
            }));
            continue;
        }
        for k in 1..=depth {
            for j in 0..schedule.levels[k].instances {
                let candidates = &candidates;
                let leaves = &leaves;
                let schedule = &schedule;
                tasks.push(Box::new(move |ctx: &mut TaskCtx| {
                    let mut queries = 0;
                    let parent =
                        materialize_parent(g, schedule, seed, trial, k, j, &mut queries)
                            .expect("scheduled contraction stays connected");
                    let keys = auto_contraction_order(
                        &parent.graph,
                        seeds::fold(seed, &[trial as u64, k as u64, j as u64]),
                    )
                    .expect("contracted instances stay within the key range");
                    let (witness, cost) = singleton::smallest_singleton_cut_costed(&keys)
                        .expect("instances stay connected");
                    queries += cost;
                    let in_side = parent.graph.side_mask(&witness.side);
                    let side: Vec<usize> =
                        (0..g.n).filter(|&v| in_side[parent.map[v]]).collect();
                    debug_assert_eq!(g.crossing_capacity(&g.side_mask(&side)), witness.value);
                    ctx.write(
                        Key::new("cand", trial as u64, (k * schedule.n + j) as u64),
                        vec![witness.value as i64, side.len() as i64],
                    );
                    candidates
                        .borrow_mut()
                        .push(Candidate { value: witness.value, side, source: CutSource::Singleton { level: k } });
                    if k == depth {
                        let c = contract_prefix(&keys, schedule.levels[k].size)
                            .expect("target below instance size");
                        let map = parent.map.iter().map(|&s| c.map[s]).collect();
                        queries += parent.graph.m();
                        leaves.borrow_mut()[trial as usize * leaf_count + j] =
                            Some(Instance { graph: c.graph.graph, map });
                    }
                    ctx.note_scratch(2 * parent.graph.m() + parent.graph.n);
                    ctx.charge_queries(queries);
                }));
            }
        }
    }
    rt.run_round(tasks)?;

    // exact base case on every leaf instance
    let leaves = leaves.into_inner();
    let tasks: Vec<Task> = leaves
        .iter()
        .enumerate()
        .filter_map(|(i, inst)| inst.as_ref().map(|inst| (i, inst)))
        .map(|(i, inst)| {
            let candidates = &candidates;
            Box::new(move |ctx: &mut TaskCtx| {
                let base = exact_min_cut(&inst.graph).expect("leaf instances stay connected");
                let in_side = inst.graph.side_mask(&base.side);
                let side: Vec<usize> = (0..g.n).filter(|&v| in_side[inst.map[v]]).collect();
                debug_assert_eq!(g.crossing_capacity(&g.side_mask(&side)), base.value);
                ctx.note_scratch(inst.graph.n * inst.graph.n);
                ctx.charge_queries(inst.graph.n * inst.graph.n);
                ctx.write(
                    Key::new("base", i as u64, 0),
                    vec![base.value as i64, side.len() as i64],
                );
                candidates
                    .borrow_mut()
                    .push(Candidate { value: base.value, side, source: CutSource::BaseExact });
            }) as Task
        })
        .collect();
    rt.run_round(tasks)?;

    // reduction
    let candidates = candidates.into_inner();
    let result: RefCell<Option<CutResult>> = RefCell::new(None);
    rt.run_round(vec![Box::new(|ctx: &mut TaskCtx| {
        ctx.charge_queries(candidates.len());
        let best = candidates
            .iter()
            .min_by_key(|c| c.value)
            .expect("at least one base candidate exists");
        ctx.write(Key::new("mincut", 0, 0), vec![best.value as i64, best.side.len() as i64]);
        *result.borrow_mut() = Some(CutResult {
            value: best.value,
            side: best.side.clone(),
            source: best.source.clone(),
            trials_used: trials,
        });
    }) as Task])?;
    let result = result.into_inner().unwrap();
    assert_eq!(
        g.crossing_capacity(&g.side_mask(&result.side)),
        result.value,
        "returned witness must reproduce the cut value"
    );
    Ok((result, rt.stats()))
}
