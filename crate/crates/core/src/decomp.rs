//! Generalized low depth tree decomposition.
//!
//! The spanning tree is decomposed into heavy paths; contracting them gives
//! the meta tree; each heavy path is replaced by a binarized path (an almost
//! complete binary tree over the path's vertices as leaves, preserving path
//! order in pre-order). Every original vertex is labeled with the depth, in
//! that expanded meta tree, of the highest node whose right child has the
//! vertex as leftmost leaf descendant. The resulting labeling `level: V ->
//! [1..h]` has `h <= (floor(log2 n) + 2)^2` and every connected component
//! induced on `{v: level(v) >= i}` contains at most one vertex labeled `i`.

use crate::ampc::{AmpcConfig, AmpcRuntime, AmpcStats, Key, Task};
use crate::dsu::Dsu;
use crate::error::Result;
use crate::graph::SpanningTree;
use std::cell::RefCell;

/// Heavy/light classification plus the maximal heavy chains.
///
/// Every vertex belongs to exactly one chain; a leaf that is on no heavy
/// path forms a single-vertex chain.
#[derive(Clone, Debug)]
pub struct HeavyLightInfo {
    pub heavy_child: Vec<Option<usize>>,
    /// Per vertex: is the edge to the parent heavy (false for the root).
    pub heavy_parent: Vec<bool>,
    /// Maximal heavy chains, root-side vertex first.
    pub paths: Vec<Vec<usize>>,
    pub path_of: Vec<usize>,
    pub pos_in_path: Vec<usize>,
}

/// Child with the largest subtree; ties broken by smallest vertex id.
fn heavy_child_of(t: &SpanningTree, v: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for &c in &t.children[v] {
        match best {
            Some(b) if t.subtree_size[c] <= t.subtree_size[b] => {}
            _ => best = Some(c),
        }
    }
    best
}

fn chain_from(heavy_child: &[Option<usize>], top: usize) -> Vec<usize> {
    let mut chain = vec![top];
    let mut v = top;
    while let Some(c) = heavy_child[v] {
        chain.push(c);
        v = c;
    }
    chain
}

pub fn heavy_light(t: &SpanningTree) -> HeavyLightInfo {
    let n = t.n();
    let heavy_child: Vec<Option<usize>> = (0..n).map(|v| heavy_child_of(t, v)).collect();
    let mut heavy_parent = vec![false; n];
    for v in 0..n {
        if let Some(c) = heavy_child[v] {
            heavy_parent[c] = true;
        }
    }
    let mut paths = Vec::new();
    let mut path_of = vec![0; n];
    let mut pos_in_path = vec![0; n];
    for top in 0..n {
        if top == t.root || !heavy_parent[top] {
            let chain = chain_from(&heavy_child, top);
            for (pos, &v) in chain.iter().enumerate() {
                path_of[v] = paths.len();
                pos_in_path[v] = pos;
            }
            paths.push(chain);
        }
    }
    HeavyLightInfo { heavy_child, heavy_parent, paths, path_of, pos_in_path }
}

/// Meta tree: one vertex per heavy chain, edges are the light edges of the
/// spanning tree.
#[derive(Clone, Debug)]
pub struct MetaTree {
    pub parent: Vec<Option<usize>>,
    /// Original parent vertex of the chain's top (`None` for the root chain).
    pub attach: Vec<Option<usize>>,
    pub root: usize,
}

fn meta_links(t: &SpanningTree, hl: &HeavyLightInfo, path: usize) -> (Option<usize>, Option<usize>) {
    let top = hl.paths[path][0];
    match t.parent[top] {
        Some(p) => (Some(p), Some(hl.path_of[p])),
        None => (None, None),
    }
}

pub fn build_meta_tree(t: &SpanningTree, hl: &HeavyLightInfo) -> MetaTree {
    let mut parent = Vec::with_capacity(hl.paths.len());
    let mut attach = Vec::with_capacity(hl.paths.len());
    for path in 0..hl.paths.len() {
        let (a, p) = meta_links(t, hl, path);
        attach.push(a);
        parent.push(p);
    }
    MetaTree { parent, attach, root: hl.path_of[t.root] }
}

/// Almost complete binary tree over a path's vertices as leaves.
///
/// Nodes are heap-indexed `1..=2L-1` with `parent(i) = i/2`; nodes `L..=2L-1`
/// are the leaves. Path positions map to leaves so that the pre-order
/// traversal restricted to leaves lists the path in order.
#[derive(Clone, Debug)]
pub struct BinarizedPath {
    pub leaves: usize,
    /// Path position (0-based) -> heap node index.
    pub leaf_node: Vec<usize>,
}

impl BinarizedPath {
    pub fn node_count(&self) -> usize {
        2 * self.leaves - 1
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        node >= self.leaves
    }

    /// Depth of a heap node, root = 1.
    pub fn depth(node: usize) -> usize {
        (usize::BITS - node.leading_zeros()) as usize
    }

    pub fn leftmost_leaf(&self, mut node: usize) -> usize {
        while !self.is_leaf(node) {
            node *= 2;
        }
        node
    }

    /// The node whose depth becomes the leaf's label: the highest ancestor
    /// whose right child has this leaf as leftmost leaf descendant, or the
    /// leaf itself when there is none.
    pub fn anchor(&self, leaf: usize) -> usize {
        debug_assert!(self.is_leaf(leaf));
        let mut i = leaf;
        // while a left child, the leaf stays leftmost in the subtree above
        while i > 1 && i % 2 == 0 {
            i /= 2;
        }
        if i > 1 {
            i / 2
        } else {
            leaf
        }
    }
}

pub fn binarize_path(len: usize) -> BinarizedPath {
    assert!(len >= 1);
    let total = 2 * len - 1;
    let mut leaf_node = Vec::with_capacity(len);
    let mut stack = vec![1usize];
    while let Some(i) = stack.pop() {
        if i >= len {
            leaf_node.push(i);
            continue;
        }
        // total is odd, so every internal node has both children
        debug_assert!(2 * i + 1 <= total);
        stack.push(2 * i + 1);
        stack.push(2 * i);
    }
    BinarizedPath { leaves: len, leaf_node }
}

/// Depth offset of a chain's binarized-path root in the expanded meta tree:
/// the expanded depth of the original parent of the chain's top (0 for the
/// root chain). Crossing a light edge continues depth counting at parent
/// depth + 1.
fn meta_base(path: usize, hl: &HeavyLightInfo, mt: &MetaTree, bps: &[BinarizedPath]) -> usize {
    let mut base = 0;
    let mut cur = path;
    while let Some(p) = mt.attach[cur] {
        let pm = hl.path_of[p];
        base += BinarizedPath::depth(bps[pm].leaf_node[hl.pos_in_path[p]]);
        cur = pm;
    }
    base
}

/// The decomposition map `level: V -> [1..h]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelLabeling {
    pub level: Vec<usize>,
    pub height: usize,
}

fn label_of(v: usize, hl: &HeavyLightInfo, bps: &[BinarizedPath], bases: &[usize]) -> usize {
    let path = hl.path_of[v];
    let bp = &bps[path];
    let leaf = bp.leaf_node[hl.pos_in_path[v]];
    bases[path] + BinarizedPath::depth(bp.anchor(leaf))
}

pub fn label_vertices(hl: &HeavyLightInfo, mt: &MetaTree, bps: &[BinarizedPath]) -> LevelLabeling {
    let bases: Vec<usize> =
        (0..hl.paths.len()).map(|path| meta_base(path, hl, mt, bps)).collect();
    let n = hl.path_of.len();
    let level: Vec<usize> = (0..n).map(|v| label_of(v, hl, bps, &bases)).collect();
    let height = level.iter().copied().max().unwrap_or(0);
    LevelLabeling { level, height }
}

/// Full decomposition, no runtime accounting.
pub fn decompose(t: &SpanningTree) -> LevelLabeling {
    let hl = heavy_light(t);
    let mt = build_meta_tree(t, &hl);
    let bps: Vec<BinarizedPath> = hl.paths.iter().map(|p| binarize_path(p.len())).collect();
    label_vertices(&hl, &mt, &bps)
}

/// Decomposition driven through the runtime: five rounds regardless of tree
/// size (classify, assemble chains, link meta tree, binarize, label).
pub fn low_depth_decomp(
    t: &SpanningTree,
    cfg: &AmpcConfig,
) -> Result<(LevelLabeling, AmpcStats)> {
    let mut rt = AmpcRuntime::new(*cfg);
    let lab = decomp_rounds(&mut rt, t)?;
    Ok((lab, rt.stats()))
}

pub(crate) fn decomp_rounds(rt: &mut AmpcRuntime, t: &SpanningTree) -> Result<LevelLabeling> {
    let n = t.n();

    let heavy_cell = RefCell::new(vec![None; n]);
    let tasks: Vec<Task> = (0..n)
        .map(|v| {
            let heavy = &heavy_cell;
            Box::new(move |ctx: &mut crate::ampc::TaskCtx| {
                ctx.charge_queries(1 + t.children[v].len());
                let hc = heavy_child_of(t, v);
                heavy.borrow_mut()[v] = hc;
                if let Some(c) = hc {
                    ctx.write_word(Key::new("heavy", v as u64, 0), c as i64);
                }
            }) as Task
        })
        .collect();
    rt.run_round(tasks)?;
    let heavy_child = heavy_cell.into_inner();

    let mut heavy_parent = vec![false; n];
    for v in 0..n {
        if let Some(c) = heavy_child[v] {
            heavy_parent[c] = true;
        }
    }
    let tops: Vec<usize> =
        (0..n).filter(|&v| v == t.root || !heavy_parent[v]).collect();
    let chains_cell = RefCell::new(vec![Vec::new(); tops.len()]);
    let tasks: Vec<Task> = tops
        .iter()
        .enumerate()
        .map(|(k, &top)| {
            let chains = &chains_cell;
            let heavy_child = &heavy_child;
            Box::new(move |ctx: &mut crate::ampc::TaskCtx| {
                let chain = chain_from(heavy_child, top);
                ctx.charge_queries(chain.len());
                ctx.write_word(Key::new("chain", top as u64, 0), chain.len() as i64);
                chains.borrow_mut()[k] = chain;
            }) as Task
        })
        .collect();
    rt.run_round(tasks)?;
    let paths = chains_cell.into_inner();

    let mut path_of = vec![0; n];
    let mut pos_in_path = vec![0; n];
    for (i, chain) in paths.iter().enumerate() {
        for (pos, &v) in chain.iter().enumerate() {
            path_of[v] = i;
            pos_in_path[v] = pos;
        }
    }
    let hl = HeavyLightInfo { heavy_child, heavy_parent, paths, path_of, pos_in_path };

    let links_cell = RefCell::new(vec![(None, None); hl.paths.len()]);
    let tasks: Vec<Task> = (0..hl.paths.len())
        .map(|path| {
            let links = &links_cell;
            let hl = &hl;
            Box::new(move |ctx: &mut crate::ampc::TaskCtx| {
                ctx.charge_queries(2);
                let lk = meta_links(t, hl, path);
                if let Some(p) = lk.1 {
                    ctx.write_word(Key::new("meta", path as u64, 0), p as i64);
                }
                links.borrow_mut()[path] = lk;
            }) as Task
        })
        .collect();
    rt.run_round(tasks)?;
    let links = links_cell.into_inner();
    let mt = MetaTree {
        attach: links.iter().map(|l| l.0).collect(),
        parent: links.iter().map(|l| l.1).collect(),
        root: hl.path_of[t.root],
    };

    // binarized paths are pure functions of chain lengths, so bases for every
    // chain can be derived in the same round by walking the meta ancestors
    let bps: Vec<BinarizedPath> =
        hl.paths.iter().map(|p| binarize_path(p.len())).collect();
    let bases_cell = RefCell::new(vec![0usize; hl.paths.len()]);
    let tasks: Vec<Task> = (0..hl.paths.len())
        .map(|path| {
            let bases = &bases_cell;
            let hl = &hl;
            let mt = &mt;
            let bps = &bps;
            Box::new(move |ctx: &mut crate::ampc::TaskCtx| {
                ctx.note_scratch(bps[path].node_count());
                let mut hops = 0;
                let mut cur = path;
                while let Some(p) = mt.parent[cur] {
                    hops += 1;
                    cur = p;
                }
                ctx.charge_queries(hops + 1);
                bases.borrow_mut()[path] = meta_base(path, hl, mt, bps);
            }) as Task
        })
        .collect();
    rt.run_round(tasks)?;
    let bases = bases_cell.into_inner();

    let level_cell = RefCell::new(vec![0usize; n]);
    let tasks: Vec<Task> = (0..n)
        .map(|v| {
            let level = &level_cell;
            let hl = &hl;
            let bps = &bps;
            let bases = &bases;
            Box::new(move |ctx: &mut crate::ampc::TaskCtx| {
                let bp = &bps[hl.path_of[v]];
                ctx.charge_queries(1 + BinarizedPath::depth(bp.leaf_node[hl.pos_in_path[v]]));
                let l = label_of(v, hl, bps, bases);
                level.borrow_mut()[v] = l;
                ctx.write_word(Key::new("lvl", v as u64, 0), l as i64);
            }) as Task
        })
        .collect();
    rt.run_round(tasks)?;
    let level = level_cell.into_inner();
    let height = level.iter().copied().max().unwrap_or(0);
    Ok(LevelLabeling { level, height })
}

/// `h` may not exceed `(floor(log2 n) + 2)^2`.
pub fn height_bound(n: usize) -> usize {
    let l = (usize::BITS - 1 - n.max(1).leading_zeros()) as usize;
    (l + 2) * (l + 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompViolation {
    /// A component of the forest induced on levels >= `level` holds more than
    /// one vertex labeled `level`.
    MultipleAtLevel { level: usize, count: usize, witness: usize },
    HeightExceeded { height: usize, bound: usize },
}

impl std::fmt::Display for DecompViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DecompViolation::MultipleAtLevel { level, count, witness } => {
                write!(f, "level {level}: component of vertex {witness} has {count} vertices at that level")
            }
            DecompViolation::HeightExceeded { height, bound } => {
                write!(f, "height {height} exceeds bound {bound}")
            }
        }
    }
}

/// Checks the defining property level by level, plus the height bound.
/// Empty result means the labeling is a valid decomposition.
pub fn validate_decomposition(t: &SpanningTree, lab: &LevelLabeling) -> Vec<DecompViolation> {
    let n = t.n();
    let mut violations = Vec::new();
    let bound = height_bound(n);
    if lab.height > bound {
        violations.push(DecompViolation::HeightExceeded { height: lab.height, bound });
    }
    for i in 1..=lab.height {
        let mut dsu = Dsu::new(n);
        for v in 0..n {
            if lab.level[v] < i {
                continue;
            }
            if let Some(p) = t.parent[v] {
                if lab.level[p] >= i {
                    dsu.union(v, p);
                }
            }
        }
        let mut count = vec![0usize; n];
        for v in 0..n {
            if lab.level[v] == i {
                let r = dsu.find(v);
                count[r] += 1;
                if count[r] == 2 {
                    violations.push(DecompViolation::MultipleAtLevel {
                        level: i,
                        count: 2,
                        witness: v,
                    });
                }
            }
        }
    }
    violations
}

/// Connected components of the forest induced on `{v: level(v) >= i}`.
pub fn level_components(t: &SpanningTree, lab: &LevelLabeling, i: usize) -> Vec<Vec<usize>> {
    let n = t.n();
    let mut dsu = Dsu::new(n);
    for v in 0..n {
        if lab.level[v] < i {
            continue;
        }
        if let Some(p) = t.parent[v] {
            if lab.level[p] >= i {
                dsu.union(v, p);
            }
        }
    }
    let mut idx = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if lab.level[v] < i {
            continue;
        }
        let r = dsu.find(v);
        if idx[r] == usize::MAX {
            idx[r] = comps.len();
            comps.push(Vec::new());
        }
        comps[idx[r]].push(v);
    }
    comps
}

/// Tree edges from a component of the level-`i` forest to vertices labeled
/// below `i`. The construction guarantees at most two exist.
pub fn boundary_edges(
    t: &SpanningTree,
    lab: &LevelLabeling,
    i: usize,
    component: &[usize],
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &v in component {
        debug_assert!(lab.level[v] >= i);
        if let Some(p) = t.parent[v] {
            if lab.level[p] < i {
                out.push((v, p));
            }
        }
        for &c in &t.children[v] {
            if lab.level[c] < i {
                out.push((v, c));
            }
        }
    }
    assert!(
        out.len() <= 2,
        "component at level {i} has {} boundary edges, expected at most 2",
        out.len()
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{assign_contraction_order, kruskal_mst, KeyMode, OrderedGraph};
    use crate::{generate, graph};

    fn tree_of(g: &graph::Graph, seed: u64) -> SpanningTree {
        let og = assign_contraction_order(g, seed, KeyMode::Uniform).unwrap();
        kruskal_mst(&og).unwrap()
    }

    fn path3() -> SpanningTree {
        let g = graph::Graph::new(3, vec![
            graph::Edge { u: 0, v: 1, cap: 1 },
            graph::Edge { u: 1, v: 2, cap: 1 },
        ]);
        let og = OrderedGraph { graph: g, keys: vec![1, 2] };
        kruskal_mst(&og).unwrap()
    }

    #[test]
    fn heavy_light_on_path_is_one_chain() {
        let t = path3();
        let hl = heavy_light(&t);
        assert_eq!(hl.paths, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn heavy_light_star_tie_break() {
        let g = generate::generate(generate::GenModel::Star { n: 4 }, 0).unwrap();
        let og = OrderedGraph { graph: g, keys: vec![1, 2, 3] };
        let t = kruskal_mst(&og).unwrap();
        let hl = heavy_light(&t);
        assert_eq!(hl.heavy_child[0], Some(1));
        let light = (1..4).filter(|&v| !hl.heavy_parent[v]).count();
        assert_eq!(light, 2);
        // chains: [0,1] plus singleton leaves 2 and 3
        assert_eq!(hl.paths.len(), 3);
        assert_eq!(hl.paths[0], vec![0, 1]);
    }

    #[test]
    fn meta_tree_of_path_is_single_vertex() {
        let t = path3();
        let hl = heavy_light(&t);
        let mt = build_meta_tree(&t, &hl);
        assert_eq!(mt.parent, vec![None]);
        assert_eq!(mt.root, 0);
    }

    #[test]
    fn meta_tree_of_star() {
        let g = generate::generate(generate::GenModel::Star { n: 4 }, 0).unwrap();
        let og = OrderedGraph { graph: g, keys: vec![1, 2, 3] };
        let t = kruskal_mst(&og).unwrap();
        let hl = heavy_light(&t);
        let mt = build_meta_tree(&t, &hl);
        assert_eq!(mt.root, 0);
        assert_eq!(mt.parent[1], Some(0));
        assert_eq!(mt.parent[2], Some(0));
        assert_eq!(mt.attach[1], Some(0));
    }

    #[test]
    fn binarize_small_paths() {
        let bp = binarize_path(1);
        assert_eq!(bp.node_count(), 1);
        assert_eq!(bp.leaf_node, vec![1]);

        let bp = binarize_path(3);
        assert_eq!(bp.node_count(), 5);
        // pre-order restricted to leaves: 4, 5, 3
        assert_eq!(bp.leaf_node, vec![4, 5, 3]);

        let bp = binarize_path(5);
        assert_eq!(bp.node_count(), 9);
        let deepest = 2 * 5 - (1usize << (5f64.log2().floor() as u32 + 1));
        assert_eq!(deepest, 2);
        let at_last_layer =
            (1..=9).filter(|&i| BinarizedPath::depth(i) == 4).count();
        assert_eq!(at_last_layer, deepest);
    }

    #[test]
    fn path3_labels() {
        let t = path3();
        let lab = decompose(&t);
        assert_eq!(lab.level, vec![3, 2, 1]);
        assert_eq!(lab.height, 3);
        assert!(validate_decomposition(&t, &lab).is_empty());
    }

    #[test]
    fn single_vertex_tree() {
        let g = graph::Graph::new(1, vec![]);
        let og = OrderedGraph { graph: g, keys: vec![] };
        let t = kruskal_mst(&og).unwrap();
        let lab = decompose(&t);
        assert_eq!(lab.level, vec![1]);
        assert_eq!(lab.height, 1);
    }

    #[test]
    fn star4_validates_with_low_height() {
        let g = generate::generate(generate::GenModel::Star { n: 4 }, 0).unwrap();
        let og = OrderedGraph { graph: g, keys: vec![1, 2, 3] };
        let t = kruskal_mst(&og).unwrap();
        let lab = decompose(&t);
        assert!(lab.height <= 4);
        assert!(validate_decomposition(&t, &lab).is_empty());
    }

    #[test]
    fn complete_binary_tree_meta_depth() {
        // 15-vertex complete binary tree: meta-tree depth stays within 4
        let mut edges = Vec::new();
        for v in 1..15usize {
            edges.push(graph::Edge { u: (v - 1) / 2, v, cap: 1 });
        }
        let g = graph::Graph::new(15, edges);
        let og = OrderedGraph { graph: g, keys: (1..=14).collect() };
        let t = kruskal_mst(&og).unwrap();
        let hl = heavy_light(&t);
        let mt = build_meta_tree(&t, &hl);
        let mut max_depth = 0;
        for path in 0..hl.paths.len() {
            let mut d = 1;
            let mut cur = path;
            while let Some(p) = mt.parent[cur] {
                d += 1;
                cur = p;
            }
            max_depth = max_depth.max(d);
        }
        assert!(max_depth <= 4, "meta depth {max_depth}");
    }

    #[test]
    fn all_ones_labeling_is_rejected() {
        let t = path3();
        let bad = LevelLabeling { level: vec![1, 1, 1], height: 1 };
        let violations = validate_decomposition(&t, &bad);
        assert!(violations
            .iter()
            .any(|v| matches!(v, DecompViolation::MultipleAtLevel { level: 1, .. })));
    }

    #[test]
    fn height_violation_detected() {
        let t = path3();
        let bound = height_bound(3);
        let bad = LevelLabeling { level: vec![bound + 1, 2, 1], height: bound + 1 };
        let violations = validate_decomposition(&t, &bad);
        assert!(violations
            .iter()
            .any(|v| matches!(v, DecompViolation::HeightExceeded { .. })));
    }

    #[test]
    fn boundary_edges_on_path() {
        let t = path3();
        let lab = decompose(&t);
        // level 2 component {0, 1}: single boundary edge (1, 2)
        let comps = level_components(&t, &lab, 2);
        assert_eq!(comps, vec![vec![0, 1]]);
        assert_eq!(boundary_edges(&t, &lab, 2, &comps[0]), vec![(1, 2)]);
        // level 1: whole tree, nothing below
        let comps = level_components(&t, &lab, 1);
        assert!(boundary_edges(&t, &lab, 1, &comps[0]).is_empty());
    }

    #[test]
    fn runtime_rounds_independent_of_size() {
        let mut rounds = Vec::new();
        for n in [64usize, 4096] {
            let g = generate::random_tree(n, 9);
            let t = tree_of(&g, 5);
            let cfg = AmpcConfig::new(n, 0.5).unwrap();
            let (lab, stats) = low_depth_decomp(&t, &cfg).unwrap();
            assert_eq!(lab, decompose(&t));
            assert!(validate_decomposition(&t, &lab).is_empty());
            rounds.push(stats.rounds);
        }
        assert_eq!(rounds[0], rounds[1]);
    }

    #[test]
    fn random_trees_validate() {
        for seed in 0..60 {
            let n = 2 + (seed as usize * 17) % 255;
            let g = generate::random_tree(n, seed);
            let t = tree_of(&g, seed ^ 0xabc);
            let lab = decompose(&t);
            assert!(lab.height <= height_bound(n));
            assert!(validate_decomposition(&t, &lab).is_empty(), "n={n} seed={seed}");
        }
    }

    #[test]
    fn light_edge_bound_on_random_trees() {
        for seed in 0..20 {
            let n = 2 + (seed as usize * 13) % 255;
            let g = generate::random_tree(n, seed);
            let t = tree_of(&g, seed);
            let hl = heavy_light(&t);
            let log = (usize::BITS - 1 - n.leading_zeros()) as usize;
            for v in 0..n {
                let mut light = 0;
                let mut chains = std::collections::HashSet::new();
                let mut cur = v;
                chains.insert(hl.path_of[cur]);
                while let Some(p) = t.parent[cur] {
                    if !hl.heavy_parent[cur] {
                        light += 1;
                    }
                    chains.insert(hl.path_of[p]);
                    cur = p;
                }
                assert!(light <= log + 1, "n={n} v={v} light={light}");
                assert!(chains.len() <= log + 1, "n={n} v={v} chains={}", chains.len());
            }
        }
    }
}
