//! Partitioning a layer `<Phi_k -> Phi_n>` into max-disjoint copies of
//! `P_m`, `m = n - k`.
//!
//! The layer is taken as its set of saturated chains `v_k < v_(k+1) < ... < v_n`.
//! A block rooted at `r` in level `k` picks a subset `A_i` of level `k + i` for
//! each `i = 1..=m` with `|A_i| = s_i`, where `s` is a permutation of
//! `(F_1, ..., F_m)`, and contains the chains `{r} x A_1 x ... x A_m`. Every
//! block therefore holds `m_F!` chains. A partition of the layer is an exact
//! cover of its chains by blocks.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_cover::{ColumnRule, CoverCount, CoverSearch, ExactCover, SearchOptions};
use crate::sequence::AdmissibleSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaPolicy {
    /// Only `s = (F_1, ..., F_m)`.
    Identity,
    /// Every distinct permutation of `(F_1, ..., F_m)`.
    #[default]
    All,
}

impl fmt::Display for SigmaPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SigmaPolicy::Identity => "identity",
            SigmaPolicy::All => "all",
        })
    }
}

impl FromStr for SigmaPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(SigmaPolicy::Identity),
            "all" => Ok(SigmaPolicy::All),
            _ => Err(Error::InvalidArgument(format!(
                "sigma policy `{s}` is not one of all, identity"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TilingBudget {
    pub max_universe: u64,
    pub max_blocks: u64,
    pub max_nodes: Option<u64>,
}

impl Default for TilingBudget {
    fn default() -> Self {
        Self {
            max_universe: 100_000,
            max_blocks: 1_000_000,
            max_nodes: Some(100_000_000),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Index (from 1) of the root vertex in level `k`.
    pub root: usize,
    /// For levels `k+1..=n`, the chosen vertex indices in increasing order.
    pub level_subsets: Vec<Vec<usize>>,
    /// Indices into [`TilingInstance::chains`], increasing.
    pub chains: Vec<usize>,
}

impl Block {
    pub fn shape(&self) -> Vec<usize> {
        self.level_subsets.iter().map(Vec::len).collect()
    }
}

#[derive(Debug, Clone)]
pub struct TilingInstance {
    seq: AdmissibleSequence,
    k: usize,
    n: usize,
    sigma: SigmaPolicy,
    level_sizes: Vec<usize>,
    block_chain_count: usize,
    chains: Vec<Vec<usize>>,
    blocks: Vec<Block>,
}

/// Distinct permutations of `base` in lexicographic order.
fn distinct_permutations(base: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = base.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// All `size`-subsets of `1..=n` in lexicographic order.
fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=size).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..size).rev().find(|&i| cur[i] < n - size + i + 1) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..size {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn too_many(what: &'static str, predicted: BigUint, budget: u64) -> Error {
    Error::BudgetExceeded {
        what,
        predicted,
        budget,
    }
}

impl TilingInstance {
    pub fn build(
        seq: AdmissibleSequence,
        k: usize,
        n: usize,
        sigma: SigmaPolicy,
        budget: &TilingBudget,
    ) -> Result<Self> {
        if n <= k {
            return Err(Error::InvalidArgument(format!(
                "a layer needs k < n, got k = {k}, n = {n}"
            )));
        }
        let m = n - k;
        let values = seq.values_through(n)?;
        if let Some(p) = (1..=n).find(|&p| values[p].is_zero()) {
            return Err(Error::ZeroValue { index: p });
        }

        let universe: BigUint = (k..=n)
            .map(|p| {
                if p == 0 {
                    BigUint::from(1u32)
                } else {
                    values[p].clone()
                }
            })
            .product();
        if universe > BigUint::from(budget.max_universe) {
            return Err(too_many("chains", universe, budget.max_universe));
        }
        // every level size divides into the universe, so all fit in usize now
        let level_sizes: Vec<usize> = (k..=n)
            .map(|p| {
                if p == 0 {
                    1
                } else {
                    values[p].to_usize().unwrap()
                }
            })
            .collect();
        let base: Vec<usize> = (1..=m)
            .map(|i| values[i].to_usize().unwrap_or(usize::MAX))
            .collect();

        let shapes: Vec<Vec<usize>> = match sigma {
            SigmaPolicy::Identity => vec![base.clone()],
            SigmaPolicy::All => distinct_permutations(&base),
        }
        .into_iter()
        .filter(|s| s.iter().zip(&level_sizes[1..]).all(|(a, size)| a <= size))
        .collect();

        let predicted_blocks: BigUint = shapes
            .iter()
            .map(|s| {
                s.iter()
                    .zip(&level_sizes[1..])
                    .map(|(&a, &size)| binomial(size, a))
                    .product::<BigUint>()
            })
            .sum::<BigUint>()
            * BigUint::from(level_sizes[0]);
        if predicted_blocks > BigUint::from(budget.max_blocks) {
            return Err(too_many("blocks", predicted_blocks, budget.max_blocks));
        }

        // mixed-radix chain numbering, level k most significant
        let mut strides = vec![1usize; m + 1];
        for i in (0..m).rev() {
            strides[i] = strides[i + 1] * level_sizes[i + 1];
        }
        let universe = universe.to_usize().unwrap();
        let chains: Vec<Vec<usize>> = (0..universe)
            .map(|idx| {
                (0..=m)
                    .map(|i| (idx / strides[i]) % level_sizes[i] + 1)
                    .collect()
            })
            .collect();

        let block_chain_count: usize = base.iter().product();
        let mut seen = HashSet::new();
        let mut blocks = Vec::new();
        for shape in &shapes {
            let per_level: Vec<Vec<Vec<usize>>> = shape
                .iter()
                .zip(&level_sizes[1..])
                .map(|(&a, &size)| combinations(size, a))
                .collect();
            for root in 1..=level_sizes[0] {
                let mut pick = vec![0usize; m];
                loop {
                    let level_subsets: Vec<Vec<usize>> =
                        (0..m).map(|i| per_level[i][pick[i]].clone()).collect();
                    let chain_ids = product_chain_ids(root, &level_subsets, &strides);
                    if seen.insert(chain_ids.clone()) {
                        blocks.push(Block {
                            root,
                            level_subsets,
                            chains: chain_ids,
                        });
                    }
                    // odometer over per-level choices, last level fastest
                    let Some(i) = (0..m).rev().find(|&i| pick[i] + 1 < per_level[i].len()) else {
                        break;
                    };
                    pick[i] += 1;
                    pick[i + 1..].iter_mut().for_each(|p| *p = 0);
                }
            }
        }

        Ok(Self {
            seq,
            k,
            n,
            sigma,
            level_sizes,
            block_chain_count,
            chains,
            blocks,
        })
    }

    pub fn sequence(&self) -> &AdmissibleSequence {
        &self.seq
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> SigmaPolicy {
        self.sigma
    }

    /// Sizes of levels `k..=n`, with the root level counted as 1.
    pub fn level_sizes(&self) -> &[usize] {
        &self.level_sizes
    }

    /// Chains per block, `m_F!`.
    pub fn block_chain_count(&self) -> usize {
        self.block_chain_count
    }

    /// The universe: each chain as its per-level vertex indices (from 1).
    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Blocks in any exact cover, when the universe divides evenly.
    pub fn cover_size(&self) -> Option<usize> {
        let (q, r) = self.chains.len().div_rem(&self.block_chain_count);
        (r == 0).then_some(q)
    }

    fn cover_matrix(&self) -> ExactCover {
        let rows: Vec<Vec<usize>> = self.blocks.iter().map(|b| b.chains.clone()).collect();
        ExactCover::new(self.chains.len(), &rows).expect("block chains index the universe")
    }

    /// Searches for one partition. With [`ColumnRule::FirstUncovered`] the
    /// witness is canonical and identical for any number of workers.
    pub fn exists_partition(&self, opts: &SearchOptions) -> TilingVerdict {
        if self.cover_size().is_none() {
            return TilingVerdict::No;
        }
        match self.cover_matrix().find_first(opts) {
            CoverSearch::Found(mut rows) => {
                rows.sort_unstable();
                TilingVerdict::Yes(rows)
            }
            CoverSearch::NotFound => TilingVerdict::No,
            CoverSearch::Inconclusive { nodes } => TilingVerdict::Inconclusive { nodes },
        }
    }

    /// Number of partitions (unordered sets of blocks), up to `cap`.
    pub fn count_partitions(&self, cap: u64, opts: &SearchOptions) -> CoverCount {
        if self.cover_size().is_none() {
            return CoverCount::Exact(0);
        }
        self.cover_matrix().count(cap, opts)
    }

    /// True iff the blocks are pairwise chain-disjoint and cover every chain.
    pub fn verify_partition(&self, blocks: &[usize]) -> Result<bool> {
        let mut covered = vec![false; self.chains.len()];
        for &b in blocks {
            let block = self.blocks.get(b).ok_or(Error::ForeignBlock {
                index: b,
                count: self.blocks.len(),
            })?;
            for &c in &block.chains {
                if std::mem::replace(&mut covered[c], true) {
                    return Ok(false);
                }
            }
        }
        Ok(covered.into_iter().all(|c| c))
    }

    pub fn to_doc(&self) -> InstanceDoc {
        InstanceDoc {
            sequence: self.seq.to_string(),
            k: self.k,
            n: self.n,
            sigma: self.sigma,
            level_sizes: self.level_sizes.clone(),
            block_chain_count: self.block_chain_count,
            chains: self.chains.clone(),
            blocks: self.blocks.iter().map(|b| b.chains.clone()).collect(),
        }
    }
}

fn product_chain_ids(root: usize, subsets: &[Vec<usize>], strides: &[usize]) -> Vec<usize> {
    let mut ids = vec![(root - 1) * strides[0]];
    for (i, subset) in subsets.iter().enumerate() {
        let stride = strides[i + 1];
        ids = ids
            .iter()
            .flat_map(|&base| subset.iter().map(move |&j| base + (j - 1) * stride))
            .collect();
    }
    ids.sort_unstable();
    ids
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TilingVerdict {
    /// A partition exists; the witness lists block indices in increasing order.
    Yes(Vec<usize>),
    /// The search was exhaustive and found none.
    No,
    /// The node budget ran out first.
    Inconclusive { nodes: u64 },
}

impl TilingVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            TilingVerdict::Yes(_) => "yes",
            TilingVerdict::No => "no",
            TilingVerdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// JSON form of an instance: chains as per-level vertex indices, blocks as
/// chain indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub sequence: String,
    pub k: usize,
    pub n: usize,
    pub sigma: SigmaPolicy,
    pub level_sizes: Vec<usize>,
    pub block_chain_count: usize,
    pub chains: Vec<Vec<usize>>,
    pub blocks: Vec<Vec<usize>>,
}

/// Search options for a deterministic witness.
pub fn canonical_options(jobs: usize, node_budget: Option<u64>) -> SearchOptions {
    SearchOptions {
        rule: ColumnRule::FirstUncovered,
        node_budget,
        jobs,
    }
}
