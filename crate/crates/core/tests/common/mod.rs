//! Brute-force oracles shared by the integration tests. None of these call
//! the counting or solving routines they are used to check.
#![allow(dead_code)]

use std::collections::HashMap;

use cobweb::layer_grid::Layer;
use cobweb::{CobwebPoset, Vertex};

/// Chains with exactly `t` elements, by DFS over the `leq` predicate.
pub fn dfs_chains_of_length(poset: &CobwebPoset, t: usize) -> u64 {
    let vs = poset.vertices().unwrap();
    fn go(poset: &CobwebPoset, vs: &[Vertex], last: Vertex, left: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        vs.iter()
            .filter(|&&v| v != last && poset.leq(last, v).unwrap())
            .map(|&v| go(poset, vs, v, left - 1))
            .sum()
    }
    if t == 0 {
        return 0;
    }
    vs.iter().map(|&v| go(poset, &vs, v, t - 1)).sum()
}

/// Saturated chains from any vertex of level `from` to level `to`, following
/// covers found by scanning all vertex pairs.
pub fn dfs_saturated_chains(poset: &CobwebPoset, from: usize, to: usize) -> u64 {
    let vs = poset.vertices().unwrap();
    fn go(poset: &CobwebPoset, vs: &[Vertex], v: Vertex, to: usize) -> u64 {
        if v.level == to {
            return 1;
        }
        vs.iter()
            .filter(|&&w| poset.covers(v, w).unwrap())
            .map(|&w| go(poset, vs, w, to))
            .sum()
    }
    vs.iter()
        .filter(|v| v.level == from)
        .map(|&v| go(poset, &vs, v, to))
        .sum()
}

/// Elements of `P_{k,n}` straight from the defining inequalities.
pub fn grid_elements(k: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for l in 0..=k {
        for m in 0..=n {
            if l < m {
                out.push((l, m));
            }
        }
    }
    out
}

/// Maximal chains of `P_{k,n}` by DFS, with covers derived from the product
/// order (no intermediate element strictly between). Returns chain lengths.
pub fn grid_max_chain_lengths(k: usize, n: usize) -> Vec<usize> {
    let els = grid_elements(k, n);
    let le = |a: (usize, usize), b: (usize, usize)| a.0 <= b.0 && a.1 <= b.1;
    let lt = |a, b| a != b && le(a, b);
    let covers = |a: (usize, usize)| -> Vec<(usize, usize)> {
        els.iter()
            .copied()
            .filter(|&b| lt(a, b) && !els.iter().any(|&c| lt(a, c) && lt(c, b)))
            .collect()
    };
    let minimal: Vec<_> = els
        .iter()
        .copied()
        .filter(|&a| !els.iter().any(|&b| lt(b, a)))
        .collect();
    let mut lengths = Vec::new();
    let mut stack: Vec<((usize, usize), usize)> = minimal.into_iter().map(|a| (a, 1)).collect();
    while let Some((a, len)) = stack.pop() {
        let up = covers(a);
        if up.is_empty() {
            lengths.push(len);
        }
        stack.extend(up.into_iter().map(|b| (b, len + 1)));
    }
    lengths
}

/// Binary strings with `ones` ones and `zeros` zeros whose every prefix has
/// at least as many zeros as ones.
pub fn zero_dominated_strings(ones: usize, zeros: usize) -> u64 {
    let len = ones + zeros;
    (0u64..1 << len)
        .filter(|s| s.count_ones() as usize == ones)
        .filter(|s| {
            let mut balance = 0i64;
            (0..len).all(|i| {
                balance += if s >> i & 1 == 1 { -1 } else { 1 };
                balance >= 0
            })
        })
        .count() as u64
}

/// Möbius function of a finite poset from the recursive definition,
/// memoized on pairs.
pub fn mobius_recursive(
    els: &[Layer],
    x: Layer,
    y: Layer,
    memo: &mut HashMap<(Layer, Layer), i64>,
) -> i64 {
    if x == y {
        return 1;
    }
    if !x.leq(y) {
        return 0;
    }
    if let Some(&v) = memo.get(&(x, y)) {
        return v;
    }
    let mut sum = 0;
    for &z in els {
        if x.leq(z) && z.leq(y) && z != y {
            sum += mobius_recursive(els, x, z, memo);
        }
    }
    memo.insert((x, y), -sum);
    -sum
}

/// Exact covers of `0..universe` by the given sets, by plain backtracking on
/// the lowest uncovered element.
pub fn count_exact_covers(universe: usize, sets: &[Vec<usize>]) -> u64 {
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); universe];
    for (i, s) in sets.iter().enumerate() {
        for &e in s {
            containing[e].push(i);
        }
    }
    fn go(covered: &mut Vec<bool>, sets: &[Vec<usize>], containing: &[Vec<usize>]) -> u64 {
        let Some(e) = covered.iter().position(|c| !c) else {
            return 1;
        };
        let mut total = 0;
        for &i in &containing[e] {
            if sets[i].iter().all(|&x| !covered[x]) {
                for &x in &sets[i] {
                    covered[x] = true;
                }
                total += go(covered, sets, containing);
                for &x in &sets[i] {
                    covered[x] = false;
                }
            }
        }
        total
    }
    go(&mut vec![false; universe], sets, &containing)
}

/// Exact covers by checking every subset of the sets. Only for a handful
/// of sets.
pub fn count_exact_covers_by_subsets(universe: usize, sets: &[Vec<usize>]) -> u64 {
    assert!(sets.len() <= 20);
    (0u32..1 << sets.len())
        .filter(|mask| {
            let mut hits = vec![0u32; universe];
            for (i, s) in sets.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for &e in s {
                        hits[e] += 1;
                    }
                }
            }
            hits.iter().all(|&h| h == 1)
        })
        .count() as u64
}
