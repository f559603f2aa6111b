//! Path-extremum queries over tree-edge keys (heavy-path decomposition with
//! sparse tables) and the interval-coverage sweep.

use crate::decomp;
use crate::error::{Error, Result};
use crate::graph::SpanningTree;

/// Immutable index answering min/max edge-key queries on tree paths.
///
/// Charged cost of a query is the number of heavy-path segments inspected,
/// which is O(log n).
pub struct PathExtremumIndex {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    /// Chain top per vertex.
    head: Vec<usize>,
    /// Position of each vertex in the concatenated base array; the slot
    /// holds the key of the edge to the parent.
    pos: Vec<usize>,
    max_table: SparseTable,
    min_table: SparseTable,
}

struct SparseTable {
    rows: Vec<Vec<u64>>,
    combine_max: bool,
}

impl SparseTable {
    fn build(base: &[u64], combine_max: bool) -> Self {
        let n = base.len();
        let mut rows = vec![base.to_vec()];
        let mut span = 1;
        while span * 2 <= n {
            let prev = rows.last().unwrap();
            let mut row = Vec::with_capacity(n - span * 2 + 1);
            for i in 0..=n - span * 2 {
                let (a, b) = (prev[i], prev[i + span]);
                row.push(if combine_max { a.max(b) } else { a.min(b) });
            }
            rows.push(row);
            span *= 2;
        }
        SparseTable { rows, combine_max }
    }

    /// Extremum over `base[lo..=hi]`.
    fn query(&self, lo: usize, hi: usize) -> u64 {
        debug_assert!(lo <= hi);
        let len = hi - lo + 1;
        let k = (usize::BITS - 1 - len.leading_zeros()) as usize;
        let (a, b) = (self.rows[k][lo], self.rows[k][hi + 1 - (1 << k)]);
        if self.combine_max {
            a.max(b)
        } else {
            a.min(b)
        }
    }
}

/// Sentinel returned by max queries on an empty path.
pub const EMPTY_PATH_MAX: u64 = 0;
/// Sentinel returned by min queries on an empty path.
pub const EMPTY_PATH_MIN: u64 = u64::MAX;

pub fn build_index(t: &SpanningTree) -> PathExtremumIndex {
    let n = t.n();
    let hl = decomp::heavy_light(t);
    let mut head = vec![0; n];
    let mut pos = vec![0; n];
    let mut base = vec![0u64; n];
    let mut next = 0;
    for chain in &hl.paths {
        for &v in chain {
            head[v] = chain[0];
            pos[v] = next;
            base[next] = t.parent_key[v];
            next += 1;
        }
    }
    PathExtremumIndex {
        parent: t.parent.clone(),
        depth: t.depth.clone(),
        head,
        pos,
        max_table: SparseTable::build(&base, true),
        min_table: SparseTable::build(&base, false),
    }
}

impl PathExtremumIndex {
    /// Max edge key on the tree path between `u` and `a`, plus the charged
    /// query count. Returns the empty-path sentinel when `u == a`.
    pub fn path_max_costed(&self, u: usize, a: usize) -> (u64, usize) {
        self.fold(u, a, true)
    }

    pub fn path_max(&self, u: usize, a: usize) -> u64 {
        self.fold(u, a, true).0
    }

    pub fn path_min(&self, u: usize, a: usize) -> u64 {
        self.fold(u, a, false).0
    }

    fn fold(&self, mut u: usize, mut v: usize, max: bool) -> (u64, usize) {
        let mut acc = if max { EMPTY_PATH_MAX } else { EMPTY_PATH_MIN };
        let mut cost = 0;
        let take = |val: u64, acc: &mut u64| {
            if max {
                *acc = (*acc).max(val);
            } else {
                *acc = (*acc).min(val);
            }
        };
        while self.head[u] != self.head[v] {
            cost += 1;
            if self.depth[self.head[u]] < self.depth[self.head[v]] {
                std::mem::swap(&mut u, &mut v);
            }
            let h = self.head[u];
            let seg = if max {
                self.max_table.query(self.pos[h], self.pos[u])
            } else {
                self.min_table.query(self.pos[h], self.pos[u])
            };
            take(seg, &mut acc);
            u = self.parent[h].expect("non-root head on a lower chain");
        }
        cost += 1;
        if u != v {
            if self.depth[u] < self.depth[v] {
                std::mem::swap(&mut u, &mut v);
            }
            // v is the ancestor; skip its own parent-edge slot
            let seg = if max {
                self.max_table.query(self.pos[v] + 1, self.pos[u])
            } else {
                self.min_table.query(self.pos[v] + 1, self.pos[u])
            };
            take(seg, &mut acc);
        }
        (acc, cost)
    }
}

// ---------------------------------------------------------------------------
// Prefix-sum minimum and interval coverage
// ---------------------------------------------------------------------------

/// Minimum over the non-empty prefixes, with the earliest index (the number
/// of elements in the prefix). Empty input yields `(0, 0)`.
pub fn min_prefix_sum(seq: &[i64]) -> (i64, usize) {
    let mut best = 0;
    let mut best_at = 0;
    let mut sum = 0;
    for (i, &x) in seq.iter().enumerate() {
        sum += x;
        if i == 0 || sum < best {
            best = sum;
            best_at = i + 1;
        }
    }
    (best, best_at)
}

/// Closed integer interval `[a, b]` during which one edge crosses one
/// leader's bag; `multiplicity` carries the edge capacity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TimeInterval {
    pub a: u64,
    pub b: u64,
    pub owner: usize,
    pub edge: usize,
    pub multiplicity: u64,
}

impl TimeInterval {
    pub fn new(a: u64, b: u64, owner: usize, edge: usize, multiplicity: u64) -> Self {
        debug_assert!(a <= b);
        TimeInterval { a, b, owner, edge, multiplicity }
    }
}

/// Minimum total multiplicity covering any integer point of `[0, range]`,
/// with the earliest witness point. Points covered by no interval count as
/// coverage zero, so the sweep evaluates the gaps between events too.
pub fn min_coverage(intervals: &[TimeInterval], range: u64) -> Result<(u64, u64)> {
    for iv in intervals {
        if iv.b > range {
            return Err(Error::IntervalRange { a: iv.a, b: iv.b, range });
        }
    }
    // events at a (+mult) and b+1 (-mult); both endpoints clip into [0, range+1]
    let mut events: Vec<(u64, i64)> = Vec::with_capacity(intervals.len() * 2);
    for iv in intervals {
        events.push((iv.a, iv.multiplicity as i64));
        events.push((iv.b + 1, -(iv.multiplicity as i64)));
    }
    events.sort_unstable_by_key(|&(t, d)| (t, -d));

    let mut best: Option<(u64, u64)> = None;
    let mut consider = |value: i64, at: u64| {
        debug_assert!(value >= 0);
        if best.map_or(true, |(b, _)| (value as u64) < b) {
            best = Some((value as u64, at));
        }
    };

    let mut cur: i64 = 0;
    let mut cursor: u64 = 0; // first point not yet classified
    let mut i = 0;
    while i < events.len() {
        let t = events[i].0;
        if cursor < t && cursor <= range {
            // gap or plateau [cursor, t-1] at the current sum
            consider(cur, cursor);
        }
        while i < events.len() && events[i].0 == t {
            cur += events[i].1;
            i += 1;
        }
        cursor = cursor.max(t);
    }
    if cursor <= range {
        consider(cur, cursor);
    }
    debug_assert_eq!(cur, 0);
    Ok(best.expect("range is never empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{kruskal_mst, Edge, Graph, OrderedGraph};

    fn path_tree(keys: &[u64]) -> SpanningTree {
        let n = keys.len() + 1;
        let edges = (0..n - 1).map(|i| Edge { u: i, v: i + 1, cap: 1 }).collect();
        let og = OrderedGraph { graph: Graph::new(n, edges), keys: keys.to_vec() };
        kruskal_mst(&og).unwrap()
    }

    #[test]
    fn path_extrema() {
        let t = path_tree(&[1, 2]);
        let idx = build_index(&t);
        assert_eq!(idx.path_max(0, 2), 2);
        assert_eq!(idx.path_max(2, 0), 2);
        assert_eq!(idx.path_min(0, 2), 1);
        assert_eq!(idx.path_max(2, 2), EMPTY_PATH_MAX);
        assert_eq!(idx.path_max(0, 1), 1);
    }

    #[test]
    fn prefix_sums() {
        assert_eq!(min_prefix_sum(&[1, -1, 1, 1, -1]), (0, 2));
        assert_eq!(min_prefix_sum(&[]), (0, 0));
        assert_eq!(min_prefix_sum(&[2, 1]), (2, 1));
        assert_eq!(min_prefix_sum(&[-1, -1, 3]), (-2, 2));
    }

    fn iv(a: u64, b: u64) -> TimeInterval {
        TimeInterval::new(a, b, 0, 0, 1)
    }

    #[test]
    fn coverage_with_gap_at_zero() {
        let ivs = [iv(1, 3), iv(2, 5), iv(4, 6)];
        assert_eq!(min_coverage(&ivs, 6).unwrap(), (0, 0));
    }

    #[test]
    fn coverage_stacked_unit_intervals() {
        let ivs = [iv(0, 1), iv(0, 1)];
        assert_eq!(min_coverage(&ivs, 1).unwrap(), (2, 0));
    }

    #[test]
    fn coverage_empty_and_out_of_range() {
        assert_eq!(min_coverage(&[], 5).unwrap(), (0, 0));
        assert!(min_coverage(&[iv(2, 9)], 5).is_err());
    }

    #[test]
    fn coverage_interior_gap() {
        // covered [0,1] and [4,5], gap at 2..3
        let ivs = [iv(0, 1), iv(4, 5)];
        assert_eq!(min_coverage(&ivs, 5).unwrap(), (0, 2));
    }

    #[test]
    fn coverage_closed_interval_touch() {
        // [2,3] and [3,4] both cover 3
        let ivs = [iv(2, 3), iv(3, 4)];
        let (v, t) = min_coverage(&ivs, 4).unwrap();
        assert_eq!((v, t), (0, 0));
        let ivs = [iv(0, 3), iv(3, 4)];
        assert_eq!(min_coverage(&ivs, 4).unwrap(), (1, 0));
    }
}
