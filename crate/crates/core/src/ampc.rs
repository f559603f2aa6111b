//! Adaptive massively parallel execution model, simulated with full
//! accounting.
//!
//! Computation proceeds in rounds. Within a round every task may adaptively
//! read the shared table as it was at the start of the round; writes are
//! buffered and become visible only in the next round. The simulation runs
//! tasks sequentially in a deterministic order; the accounting (rounds,
//! adaptive queries, peak per-task words, table size) is order-insensitive,
//! which is what the model's cost claims are about.

use crate::error::{Error, Result};
use std::collections::HashMap;

/// Shared-table key: a namespace tag plus two indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Key {
    pub tag: &'static str,
    pub a: u64,
    pub b: u64,
}

impl Key {
    pub fn new(tag: &'static str, a: u64, b: u64) -> Self {
        Key { tag, a, b }
    }
}

impl std::fmt::Display for Key {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}[{},{}]", self.tag, self.a, self.b)
    }
}

/// Round-indexed shared read-only table. Values are word vectors.
#[derive(Default, Clone, Debug)]
pub struct Table {
    map: HashMap<Key, Vec<i64>>,
    words: usize,
}

impl Table {
    pub fn get(&self, k: &Key) -> Option<&[i64]> {
        self.map.get(k).map(|v| v.as_slice())
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn insert(&mut self, k: Key, v: Vec<i64>) {
        if let Some(old) = self.map.insert(k, v) {
            self.words -= old.len();
        }
        self.words += self.map[&k].len();
    }
}

/// Memory regime: `local_budget = ceil(C * n^epsilon)` words per task with
/// C = 8. Budget checks are advisory unless `strict` is set.
#[derive(Clone, Copy, Debug)]
pub struct AmpcConfig {
    pub n: usize,
    pub epsilon: f64,
    pub local_budget: usize,
    pub total_budget: usize,
    pub strict: bool,
}

pub const BUDGET_CONSTANT: f64 = 8.0;

impl AmpcConfig {
    pub fn new(n: usize, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParam(format!("epsilon {epsilon} not in (0, 1)")));
        }
        if n == 0 {
            return Err(Error::InvalidParam("n must be positive".into()));
        }
        let nf = n as f64;
        let log = nf.log2().max(1.0);
        let local_budget = (BUDGET_CONSTANT * nf.powf(epsilon)).ceil() as usize;
        let total_budget = (BUDGET_CONSTANT * nf * (log + 2.0) * (log + 2.0)).ceil() as usize;
        Ok(AmpcConfig { n, epsilon, local_budget, total_budget, strict: false })
    }

    pub fn strict(mut self) -> Self {
        self.strict = true;
        self
    }
}

/// Counters for a finished (or in-progress) run. All monotone.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AmpcStats {
    pub rounds: usize,
    /// max over tasks of adaptive reads + written words + scratch words
    pub peak_task_words: usize,
    /// max shared-table size (words) across rounds
    pub total_table_words: usize,
    pub adaptive_queries: usize,
    pub budget_violations: usize,
}

/// Per-task view: adaptive reads against the previous round's table, buffered
/// writes, and scratch accounting.
pub struct TaskCtx<'t> {
    table: &'t Table,
    local_budget: usize,
    reads: usize,
    scratch_peak: usize,
    writes: Vec<(Key, Vec<i64>)>,
    write_words: usize,
}

impl<'t> TaskCtx<'t> {
    /// Adaptive query; counts whether or not the key is present.
    pub fn read(&mut self, k: &Key) -> Option<&'t [i64]> {
        self.reads += 1;
        self.table.get(k)
    }

    /// Charge `n` adaptive queries for a traversal of globally held state.
    pub fn charge_queries(&mut self, n: usize) {
        self.reads += n;
    }

    /// Record transient local memory use, in words.
    pub fn note_scratch(&mut self, words: usize) {
        self.scratch_peak = self.scratch_peak.max(words);
    }

    pub fn write(&mut self, k: Key, v: Vec<i64>) {
        self.write_words += v.len();
        self.writes.push((k, v));
    }

    pub fn write_word(&mut self, k: Key, w: i64) {
        self.write(k, vec![w]);
    }

    fn words_used(&self) -> usize {
        self.reads + self.write_words + self.scratch_peak
    }
}

pub type Task<'a> = Box<dyn FnOnce(&mut TaskCtx) + 'a>;

/// Per-round accounting, returned by `run_round`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RoundAccount {
    pub tasks: usize,
    pub reads: usize,
    pub written_words: usize,
    pub budget_violations: usize,
}

pub struct AmpcRuntime {
    config: AmpcConfig,
    table: Table,
    stats: AmpcStats,
}

impl AmpcRuntime {
    pub fn new(config: AmpcConfig) -> Self {
        AmpcRuntime { config, table: Table::default(), stats: AmpcStats::default() }
    }

    /// Initial input distribution into the shared table; not charged as a
    /// round.
    pub fn load(&mut self, entries: impl IntoIterator<Item = (Key, Vec<i64>)>) {
        for (k, v) in entries {
            self.table.insert(k, v);
        }
        self.stats.total_table_words = self.stats.total_table_words.max(self.table.words());
    }

    /// Execute one synchronous round. Tasks observe the table as of the start
    /// of the round; their writes are merged at the barrier. Two tasks writing
    /// different values to one key is a nondeterminism error.
    pub fn run_round(&mut self, tasks: Vec<Task<'_>>) -> Result<RoundAccount> {
        let table = std::mem::take(&mut self.table);
        let mut account = RoundAccount { tasks: tasks.len(), ..Default::default() };
        let mut staged: HashMap<Key, Vec<i64>> = HashMap::new();
        let mut outcome = Ok(());
        for task in tasks {
            let mut ctx = TaskCtx {
                table: &table,
                local_budget: self.config.local_budget,
                reads: 0,
                scratch_peak: 0,
                writes: Vec::new(),
                write_words: 0,
            };
            task(&mut ctx);
            let used = ctx.words_used();
            account.reads += ctx.reads;
            account.written_words += ctx.write_words;
            self.stats.adaptive_queries += ctx.reads;
            self.stats.peak_task_words = self.stats.peak_task_words.max(used);
            if used > ctx.local_budget {
                account.budget_violations += 1;
                self.stats.budget_violations += 1;
                if self.config.strict && outcome.is_ok() {
                    outcome = Err(Error::BudgetExceeded { used, budget: ctx.local_budget });
                }
            }
            for (k, v) in ctx.writes {
                match staged.get(&k) {
                    Some(existing) if *existing != v => {
                        if outcome.is_ok() {
                            outcome = Err(Error::WriteConflict(k.to_string()));
                        }
                    }
                    _ => {
                        staged.insert(k, v);
                    }
                }
            }
        }
        self.table = table;
        outcome?;
        for (k, v) in staged {
            self.table.insert(k, v);
        }
        self.stats.rounds += 1;
        self.stats.total_table_words = self.stats.total_table_words.max(self.table.words());
        Ok(account)
    }

    pub fn stats(&self) -> AmpcStats {
        self.stats
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn config(&self) -> &AmpcConfig {
        &self.config
    }
}
