//! Deterministic graph generators for the test corpus and the CLI.

use crate::error::{Error, Result};
use crate::graph::{connected_components, Edge, Graph};
use crate::seeds;
use rand::Rng;

/// Generator models. All outputs are connected and deterministic per seed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GenModel {
    Path { n: usize },
    Star { n: usize },
    Cycle { n: usize },
    Clique { n: usize },
    Gnp { n: usize, p: f64 },
    /// Two cliques of `size` vertices joined by a single bridge edge;
    /// the bridge is the minimum cut for `size >= 3`.
    TwoCliquesBridge { size: usize },
}

pub fn generate(model: GenModel, seed: u64) -> Result<Graph> {
    match model {
        GenModel::Path { n } => {
            require(n >= 2, "path needs n >= 2")?;
            Ok(Graph::new(n, (0..n - 1).map(|i| Edge { u: i, v: i + 1, cap: 1 }).collect()))
        }
        GenModel::Star { n } => {
            require(n >= 2, "star needs n >= 2")?;
            Ok(Graph::new(n, (1..n).map(|v| Edge { u: 0, v, cap: 1 }).collect()))
        }
        GenModel::Cycle { n } => {
            require(n >= 3, "cycle needs n >= 3")?;
            Ok(Graph::new(n, (0..n).map(|i| Edge { u: i, v: (i + 1) % n, cap: 1 }).collect()))
        }
        GenModel::Clique { n } => {
            require(n >= 2, "clique needs n >= 2")?;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push(Edge { u, v, cap: 1 });
                }
            }
            Ok(Graph::new(n, edges))
        }
        GenModel::Gnp { n, p } => {
            require(n >= 2, "gnp needs n >= 2")?;
            require(p > 0.0 && p <= 1.0, "gnp needs p in (0, 1]")?;
            Ok(gnp(n, p, seed))
        }
        GenModel::TwoCliquesBridge { size } => {
            require(size >= 2, "two_cliques_bridge needs size >= 2")?;
            let mut edges = Vec::new();
            for base in [0, size] {
                for u in 0..size {
                    for v in u + 1..size {
                        edges.push(Edge { u: base + u, v: base + v, cap: 1 });
                    }
                }
            }
            edges.push(Edge { u: 0, v: size, cap: 1 });
            Ok(Graph::new(2 * size, edges))
        }
    }
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParam(msg.into()))
    }
}

/// G(n, p), resampled until connected; after 64 attempts the components of
/// the last sample are stitched with extra edges instead.
fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    for attempt in 0..64u64 {
        let mut rng = seeds::rng(seed, &[0x676e_7000, attempt]);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_range(0.0..1.0) < p {
                    edges.push(Edge { u, v, cap: 1 });
                }
            }
        }
        let g = Graph::new(n, edges);
        if g.is_connected() {
            return g;
        }
        if attempt == 63 {
            return stitch(g, seed);
        }
    }
    unreachable!()
}

fn stitch(mut g: Graph, seed: u64) -> Graph {
    let mut rng = seeds::rng(seed, &[0x7374_6974]);
    loop {
        let c = connected_components(&g);
        if c.count == 1 {
            return g;
        }
        let mut reps = vec![usize::MAX; c.count];
        for v in (0..g.n).rev() {
            reps[c.label[v]] = v;
        }
        let a = rng.gen_range(0..c.count);
        let b = (a + 1 + rng.gen_range(0..c.count - 1)) % c.count;
        g.edges.push(Edge { u: reps[a], v: reps[b], cap: 1 });
    }
}

/// Uniform random attachment tree; handy as decomposition input.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    assert!(n >= 1);
    let mut rng = seeds::rng(seed, &[0x7472_6565]);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push(Edge { u, v, cap: 1 });
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_shape() {
        let g = generate(GenModel::Star { n: 4 }, 0).unwrap();
        assert_eq!(g.n, 4);
        assert_eq!(g.m(), 3);
        assert!(g.edges.iter().all(|e| e.u == 0));
    }

    #[test]
    fn clique_counts() {
        let g = generate(GenModel::Clique { n: 4 }, 0).unwrap();
        assert_eq!(g.m(), 6);
        assert!(generate(GenModel::Clique { n: 1 }, 0).is_err());
    }

    #[test]
    fn bridge_is_a_cut() {
        let g = generate(GenModel::TwoCliquesBridge { size: 3 }, 0).unwrap();
        assert_eq!(g.n, 6);
        assert_eq!(g.m(), 7);
        let mut side = vec![false; 6];
        for v in 0..3 {
            side[v] = true;
        }
        assert_eq!(g.crossing_capacity(&side), 1);
    }

    #[test]
    fn gnp_connected_and_deterministic() {
        for seed in 0..20 {
            let g = generate(GenModel::Gnp { n: 20, p: 0.15 }, seed).unwrap();
            assert!(g.is_connected());
            assert_eq!(g, generate(GenModel::Gnp { n: 20, p: 0.15 }, seed).unwrap());
        }
        // p low enough that stitching kicks in
        let g = generate(GenModel::Gnp { n: 30, p: 0.005 }, 3).unwrap();
        assert!(g.is_connected());
    }

    #[test]
    fn random_tree_is_a_tree() {
        for seed in 0..10 {
            let g = random_tree(50, seed);
            assert_eq!(g.m(), 49);
            assert!(g.is_connected());
        }
    }
}
