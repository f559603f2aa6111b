//! JSON-in/JSON-out bindings for the browser demo. All functions are plain
//! computations, so they compile and test on native targets too.

use ampc_cuts::ampc::AmpcConfig;
use ampc_cuts::generate::{generate, GenModel};
use ampc_cuts::graph::{auto_contraction_order, kruskal_mst, Edge, Graph};
use ampc_cuts::mincut::{ampc_min_cut, default_trials, ScheduleMode};
use ampc_cuts::{decomp, singleton};
use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::wasm_bindgen;

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
}

impl GraphJson {
    fn to_graph(&self) -> Graph {
        Graph::new(
            self.n,
            self.edges.iter().map(|&(u, v, cap)| Edge { u, v, cap }).collect(),
        )
    }

    fn from_graph(g: &Graph) -> Self {
        GraphJson { n: g.n, edges: g.edges.iter().map(|e| (e.u, e.v, e.cap)).collect() }
    }
}

fn err(msg: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": msg.to_string() }).to_string()
}

fn parse(graph_json: &str) -> Result<Graph, String> {
    let gj: GraphJson = serde_json::from_str(graph_json).map_err(|e| err(e))?;
    if gj.edges.iter().any(|&(u, v, cap)| u >= gj.n || v >= gj.n || u == v || cap == 0) {
        return Err(err("invalid edge list"));
    }
    Ok(gj.to_graph())
}

/// Generate a graph. `model` is one of `path`, `star`, `cycle`, `clique`,
/// `gnp`, `two_cliques_bridge` (`n` is the clique size there; `p` only
/// matters for `gnp`).
#[wasm_bindgen]
pub fn gen_graph(model: &str, n: usize, p: f64, seed: u64) -> String {
    let spec = match model {
        "path" => GenModel::Path { n },
        "star" => GenModel::Star { n },
        "cycle" => GenModel::Cycle { n },
        "clique" => GenModel::Clique { n },
        "gnp" => GenModel::Gnp { n, p },
        "two_cliques_bridge" => GenModel::TwoCliquesBridge { size: n },
        other => return err(format!("unknown model '{other}'")),
    };
    match generate(spec, seed) {
        Ok(g) => serde_json::to_string(&GraphJson::from_graph(&g)).unwrap(),
        Err(e) => err(e),
    }
}

#[derive(Serialize)]
struct MinCutJson {
    value: u64,
    side: Vec<usize>,
    source: String,
    trials: u32,
    rounds: usize,
    adaptive_queries: usize,
    peak_task_words: usize,
    total_table_words: usize,
}

/// Approximate min cut; `trials = 0` picks the default count.
#[wasm_bindgen]
pub fn min_cut(graph_json: &str, epsilon: f64, trials: u32, seed: u64) -> String {
    let g = match parse(graph_json) {
        Ok(g) => g,
        Err(e) => return e,
    };
    let trials = if trials == 0 { default_trials(g.n) } else { trials };
    match ampc_min_cut(&g, epsilon, seed, trials, ScheduleMode::Boosted) {
        Ok((cut, stats)) => serde_json::to_string(&MinCutJson {
            value: cut.value,
            side: cut.side,
            source: cut.source.to_string(),
            trials,
            rounds: stats.rounds,
            adaptive_queries: stats.adaptive_queries,
            peak_task_words: stats.peak_task_words,
            total_table_words: stats.total_table_words,
        })
        .unwrap(),
        Err(e) => err(e),
    }
}

#[derive(Serialize)]
struct DecompJson {
    levels: Vec<usize>,
    height: usize,
    tree_parent: Vec<i64>,
    mst_edges: Vec<(usize, usize)>,
    valid: bool,
    rounds: usize,
}

/// Key-order spanning tree plus its low depth decomposition.
#[wasm_bindgen]
pub fn decomposition(graph_json: &str, seed: u64) -> String {
    let g = match parse(graph_json) {
        Ok(g) => g,
        Err(e) => return e,
    };
    let run = || -> Result<DecompJson, ampc_cuts::Error> {
        let og = auto_contraction_order(&g, seed)?;
        let tree = kruskal_mst(&og)?;
        let cfg = AmpcConfig::new(g.n, 0.5)?;
        let (lab, stats) = decomp::low_depth_decomp(&tree, &cfg)?;
        let valid = decomp::validate_decomposition(&tree, &lab).is_empty();
        Ok(DecompJson {
            levels: lab.level.clone(),
            height: lab.height,
            tree_parent: tree.parent.iter().map(|p| p.map_or(-1, |v| v as i64)).collect(),
            mst_edges: tree
                .tree_edges
                .iter()
                .map(|&i| (og.graph.edges[i].u, og.graph.edges[i].v))
                .collect(),
            valid,
            rounds: stats.rounds,
        })
    };
    match run() {
        Ok(d) => serde_json::to_string(&d).unwrap(),
        Err(e) => err(e),
    }
}

#[derive(Serialize)]
struct SingletonJson {
    value: u64,
    leader: usize,
    time: u64,
    side: Vec<usize>,
    mst_edges: Vec<(usize, usize)>,
    rounds: usize,
    adaptive_queries: usize,
}

/// Smallest singleton cut of the contraction process under seeded keys.
#[wasm_bindgen]
pub fn singleton_cut(graph_json: &str, seed: u64) -> String {
    let g = match parse(graph_json) {
        Ok(g) => g,
        Err(e) => return e,
    };
    let run = || -> Result<SingletonJson, ampc_cuts::Error> {
        let og = auto_contraction_order(&g, seed)?;
        let tree = kruskal_mst(&og)?;
        let cfg = AmpcConfig::new(g.n, 0.5)?;
        let (w, stats) = singleton::smallest_singleton_cut_ampc(&og, &cfg)?;
        Ok(SingletonJson {
            value: w.value,
            leader: w.leader,
            time: w.time,
            side: w.side,
            mst_edges: tree
                .tree_edges
                .iter()
                .map(|&i| (og.graph.edges[i].u, og.graph.edges[i].v))
                .collect(),
            rounds: stats.rounds,
            adaptive_queries: stats.adaptive_queries,
        })
    };
    match run() {
        Ok(s) => serde_json::to_string(&s).unwrap(),
        Err(e) => err(e),
    }
}
