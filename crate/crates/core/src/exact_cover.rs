//! Exact cover by Algorithm X over dancing links.
//!
//! The search is iterative, so cover depth is bounded only by memory. Both
//! serial and parallel runs split on the same top-level column and visit its
//! rows in the same order, so verdicts, counts and first solutions agree.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};

const NO_ROW: usize = usize::MAX;

/// How the next column to branch on is picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColumnRule {
    /// Fewest remaining candidate rows; ties go to the lowest column.
    #[default]
    MinBranching,
    /// Lowest uncovered column. The first cover found is then the
    /// lexicographically least one when its rows are listed in order of the
    /// smallest column each covers.
    FirstUncovered,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverSearch {
    Found(Vec<usize>),
    NotFound,
    Inconclusive { nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverCount {
    Exact(u64),
    /// The cap was reached; there are at least this many covers.
    AtLeast(u64),
    Inconclusive {
        partial: u64,
        nodes: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub rule: ColumnRule,
    /// Maximum number of row selections across all workers.
    pub node_budget: Option<u64>,
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            rule: ColumnRule::MinBranching,
            node_budget: None,
            jobs: 1,
        }
    }
}

struct Control {
    budget: Option<u64>,
    used: AtomicU64,
}

impl Control {
    fn new(budget: Option<u64>) -> Self {
        Self {
            budget,
            used: AtomicU64::new(0),
        }
    }

    /// Counts one node; false once the budget is spent.
    fn tick(&self) -> bool {
        let used = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        self.budget.is_none_or(|b| used <= b)
    }

    fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

#[derive(Debug, Default)]
struct Outcome {
    solutions: u64,
    first: Option<Vec<usize>>,
    exhausted: bool,
}

#[derive(Debug, Clone, Copy)]
enum Mode {
    First,
    Count { cap: u64 },
}

/// A dancing-links matrix. Node 0 is the root, nodes `1..=columns` are column
/// headers, the rest are row entries.
#[derive(Debug, Clone)]
pub struct ExactCover {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    col: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
    columns: usize,
    rows: usize,
}

impl ExactCover {
    /// `rows[r]` lists the columns row `r` covers. Columns must be below
    /// `columns`; duplicates within a row are rejected.
    pub fn new(columns: usize, rows: &[Vec<usize>]) -> Result<Self> {
        let header_count = columns + 1;
        let total: usize = header_count + rows.iter().map(Vec::len).sum::<usize>();
        let mut m = Self {
            left: Vec::with_capacity(total),
            right: Vec::with_capacity(total),
            up: Vec::with_capacity(total),
            down: Vec::with_capacity(total),
            col: Vec::with_capacity(total),
            row: Vec::with_capacity(total),
            size: vec![0; header_count],
            columns,
            rows: rows.len(),
        };
        for h in 0..header_count {
            m.left.push(if h == 0 { columns } else { h - 1 });
            m.right.push(if h == columns { 0 } else { h + 1 });
            m.up.push(h);
            m.down.push(h);
            m.col.push(h);
            m.row.push(NO_ROW);
        }
        for (r, cols) in rows.iter().enumerate() {
            let mut sorted = cols.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!("row {r} repeats a column")));
            }
            if let Some(&c) = sorted.last().filter(|&&c| c >= columns) {
                return Err(Error::InvalidArgument(format!(
                    "row {r} names column {c}, but there are only {columns}"
                )));
            }
            let first = m.col.len();
            for (i, &c) in cols.iter().enumerate() {
                let h = c + 1;
                let x = m.col.len();
                let last_in_col = m.up[h];
                m.up.push(last_in_col);
                m.down.push(h);
                m.down[last_in_col] = x;
                m.up[h] = x;
                m.col.push(h);
                m.row.push(r);
                m.size[h] += 1;
                if i == 0 {
                    m.left.push(x);
                    m.right.push(x);
                } else {
                    let prev = x - 1;
                    m.left.push(prev);
                    m.right.push(first);
                    m.right[prev] = x;
                    m.left[first] = x;
                }
            }
        }
        Ok(m)
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.col[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.col[j]] += 1;
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }

    /// Covers the other columns of the row containing node `x`.
    fn select(&mut self, x: usize) {
        let mut j = self.right[x];
        while j != x {
            self.cover(self.col[j]);
            j = self.right[j];
        }
    }

    fn deselect(&mut self, x: usize) {
        let mut j = self.left[x];
        while j != x {
            self.uncover(self.col[j]);
            j = self.left[j];
        }
    }

    fn pick_column(&self, rule: ColumnRule) -> Option<usize> {
        let first = self.right[0];
        if first == 0 {
            return None;
        }
        match rule {
            ColumnRule::FirstUncovered => Some(first),
            ColumnRule::MinBranching => {
                let mut best = first;
                let mut c = self.right[first];
                // a column with at most one row cannot be beaten
                while c != 0 && self.size[best] > 1 {
                    if self.size[c] < self.size[best] {
                        best = c;
                    }
                    c = self.right[c];
                }
                Some(best)
            }
        }
    }

    /// Iterative Algorithm X from the current state. `prefix` holds rows
    /// already chosen by the caller and is reported with each solution.
    fn search(&mut self, rule: ColumnRule, mode: Mode, ctl: &Control, prefix: &[usize]) -> Outcome {
        let mut out = Outcome::default();
        let mut stack: Vec<usize> = Vec::new();
        let mut descend = true;
        loop {
            if descend {
                match self.pick_column(rule) {
                    None => {
                        out.solutions += 1;
                        if out.first.is_none() {
                            let mut rows = prefix.to_vec();
                            rows.extend(stack.iter().map(|&x| self.row[x]));
                            out.first = Some(rows);
                        }
                        let done = match mode {
                            Mode::First => true,
                            Mode::Count { cap } => out.solutions >= cap,
                        };
                        if done {
                            self.unwind(&mut stack);
                            return out;
                        }
                    }
                    Some(c) if self.size[c] > 0 => {
                        if !ctl.tick() {
                            out.exhausted = true;
                            self.unwind(&mut stack);
                            return out;
                        }
                        self.cover(c);
                        let x = self.down[c];
                        self.select(x);
                        stack.push(x);
                        continue;
                    }
                    Some(_) => {}
                }
            }
            // backtrack to the next untried row
            descend = false;
            while let Some(x) = stack.pop() {
                self.deselect(x);
                let c = self.col[x];
                let next = self.down[x];
                if next != c {
                    if !ctl.tick() {
                        self.uncover(c);
                        out.exhausted = true;
                        self.unwind(&mut stack);
                        return out;
                    }
                    self.select(next);
                    stack.push(next);
                    descend = true;
                    break;
                }
                self.uncover(c);
            }
            if !descend {
                return out;
            }
        }
    }

    fn unwind(&mut self, stack: &mut Vec<usize>) {
        while let Some(x) = stack.pop() {
            self.deselect(x);
            self.uncover(self.col[x]);
        }
    }

    /// The top-level branch: a column and the nodes of its rows, in order.
    fn branches(&self, rule: ColumnRule) -> Option<(usize, Vec<usize>)> {
        let c = self.pick_column(rule)?;
        let mut nodes = Vec::with_capacity(self.size[c]);
        let mut x = self.down[c];
        while x != c {
            nodes.push(x);
            x = self.down[x];
        }
        Some((c, nodes))
    }

    fn run_branch(
        &self,
        c: usize,
        x: usize,
        rule: ColumnRule,
        mode: Mode,
        ctl: &Control,
    ) -> Outcome {
        let mut m = self.clone();
        if !ctl.tick() {
            return Outcome {
                exhausted: true,
                ..Outcome::default()
            };
        }
        m.cover(c);
        m.select(x);
        m.search(rule, mode, ctl, &[self.row[x]])
    }

    fn run_all(&self, opts: &SearchOptions, mode: Mode, ctl: &Control) -> Vec<Outcome> {
        let Some((c, nodes)) = self.branches(opts.rule) else {
            // nothing to cover: the empty family is the one cover
            return vec![Outcome {
                solutions: 1,
                first: Some(Vec::new()),
                exhausted: false,
            }];
        };
        if opts.jobs <= 1 {
            let mut outs = Vec::with_capacity(nodes.len());
            let mut total = 0;
            for x in nodes {
                let o = self.run_branch(c, x, opts.rule, mode, ctl);
                total += o.solutions;
                let stop = o.exhausted
                    || match mode {
                        Mode::First => o.first.is_some(),
                        Mode::Count { cap } => total >= cap,
                    };
                outs.push(o);
                if stop {
                    break;
                }
            }
            return outs;
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            nodes
                .par_iter()
                .map(|&x| self.run_branch(c, x, opts.rule, mode, ctl))
                .collect()
        })
    }

    /// First cover in search order, as row indices in selection order.
    pub fn find_first(&self, opts: &SearchOptions) -> CoverSearch {
        let ctl = Control::new(opts.node_budget);
        let outs = self.run_all(opts, Mode::First, &ctl);
        for o in &outs {
            if let Some(rows) = &o.first {
                return CoverSearch::Found(rows.clone());
            }
        }
        if outs.iter().any(|o| o.exhausted) {
            CoverSearch::Inconclusive { nodes: ctl.used() }
        } else {
            CoverSearch::NotFound
        }
    }

    /// Number of covers, counted up to `cap`.
    pub fn count(&self, cap: u64, opts: &SearchOptions) -> CoverCount {
        if cap == 0 {
            return CoverCount::AtLeast(0);
        }
        let ctl = Control::new(opts.node_budget);
        let outs = self.run_all(opts, Mode::Count { cap }, &ctl);
        let total: u64 = outs.iter().map(|o| o.solutions).sum();
        if total >= cap {
            CoverCount::AtLeast(cap)
        } else if outs.iter().any(|o| o.exhausted) {
            CoverCount::Inconclusive {
                partial: total,
                nodes: ctl.used(),
            }
        } else {
            CoverCount::Exact(total)
        }
    }
}
