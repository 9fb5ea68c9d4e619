//! The poset of layers `p_{l,m}` under the product order
//! `(l, m) <= (l', m')  iff  l <= l' and m <= m'`.
//!
//! `P_{k,n}` holds the pairs `0 <= l <= k`, `l < m <= n`. It is graded by
//! `rank(l, m) = l + m - 1` with bottom `(0, 1)`. Its top is `(k, n)` when
//! `k < n`; on the diagonal `k = n` no pair has `l = n`, so the top is
//! `(n - 1, n)` and `P_{n,n}` coincides with `P_{n-1,n}`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::incidence::IncidenceMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layer {
    pub l: usize,
    pub m: usize,
}

impl Layer {
    pub fn rank(self) -> usize {
        self.l + self.m - 1
    }

    pub fn leq(self, other: Layer) -> bool {
        self.l <= other.l && self.m <= other.m
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerGridPoset {
    k: usize,
    n: usize,
    // sorted by (rank, l): a linear extension
    elements: Vec<Layer>,
}

fn check(k: usize, n: usize) -> Result<()> {
    if k > n {
        Err(Error::KExceedsN { n, k })
    } else {
        Ok(())
    }
}

impl LayerGridPoset {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        check(k, n)?;
        let mut elements: Vec<Layer> = (0..=k)
            .flat_map(|l| (l + 1..=n).map(move |m| Layer { l, m }))
            .collect();
        elements.sort_by_key(|e| (e.rank(), e.l));
        Ok(Self { k, n, elements })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Layer] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: Layer) -> bool {
        e.l <= self.k && e.l < e.m && e.m <= self.n
    }

    pub fn bottom(&self) -> Option<Layer> {
        self.elements.first().copied()
    }

    pub fn top(&self) -> Option<Layer> {
        (self.n >= 1).then(|| Layer {
            l: self.k.min(self.n - 1),
            m: self.n,
        })
    }

    /// Rank of the whole poset; `k + n - 1` off the diagonal.
    pub fn rank(&self) -> Option<usize> {
        self.top().map(Layer::rank)
    }

    /// Elements covering `e` inside the poset.
    pub fn upper_covers(&self, e: Layer) -> Vec<Layer> {
        [Layer { l: e.l + 1, m: e.m }, Layer { l: e.l, m: e.m + 1 }]
            .into_iter()
            .filter(|&c| self.contains(c))
            .collect()
    }

    pub fn zeta_matrix(&self) -> IncidenceMatrix {
        let labels = self
            .elements
            .iter()
            .map(|e| format!("({},{})", e.l, e.m))
            .collect();
        IncidenceMatrix::zeta_from_relation(labels, |i, j| self.elements[i].leq(self.elements[j]))
    }

    /// `mu(bottom, e)` for every element, in the order of [`elements`](Self::elements).
    pub fn mobius_from_bottom(&self) -> Vec<BigInt> {
        if self.is_empty() {
            return Vec::new();
        }
        self.zeta_matrix().inverse_row(0)
    }
}

/// `|P_{k,n}| = (n - k)(k + 1) + k(k + 1)/2`.
pub fn grid_size(k: usize, n: usize) -> Result<u128> {
    check(k, n)?;
    let (k, n) = (k as u128, n as u128);
    Ok((n - k) * (k + 1) + k * (k + 1) / 2)
}

/// Number of maximal chains of `P_{k,n}`: monotone unit-step lattice paths from
/// `(0, 1)` to the top that stay in `l < m`. Counted by dynamic programming
/// over the grid.
pub fn count_grid_max_chains(k: usize, n: usize) -> Result<BigUint> {
    check(k, n)?;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "P_{k,0} is empty; maximal chains need n >= 1".into(),
        ));
    }
    let top_l = k.min(n - 1);
    // paths[l][m] for m in 1..=n
    // row l = 0: one path to each (0, m)
    let mut prev: Vec<BigUint> = vec![BigUint::one(); n + 1];
    prev[0] = BigUint::zero();
    for l in 1..=top_l {
        let mut row = vec![BigUint::zero(); n + 1];
        for m in l + 1..=n {
            row[m] = &prev[m] + &row[m - 1];
        }
        prev = row;
    }
    Ok(prev[n].clone())
}

/// Ballot number: binary strings with `ones` ones and `zeros` zeros in which
/// every prefix has at least as many zeros as ones,
/// `(zeros + 1 - ones) / (zeros + 1) * C(zeros + ones, ones)`.
pub fn ballot(ones: usize, zeros: usize) -> BigUint {
    if ones > zeros {
        return BigUint::zero();
    }
    let c = binomial(zeros + ones, ones);
    c * BigUint::from(zeros + 1 - ones) / BigUint::from(zeros + 1)
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Closed form for [`count_grid_max_chains`]: shifting `m` down by one turns
/// the paths into 0-dominated strings, so the count is
/// `ballot(min(k, n - 1), n - 1)`. On the diagonal this is the Catalan
/// number `C_(n-1)`.
pub fn grid_max_chains_closed_form(k: usize, n: usize) -> Result<BigUint> {
    check(k, n)?;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "P_{k,0} is empty; maximal chains need n >= 1".into(),
        ));
    }
    Ok(ballot(k.min(n - 1), n - 1))
}

/// Whitney number of the second kind `S(r, <k,n>)`: elements of rank `r`.
/// Ranks outside the poset give 0.
pub fn whitney_second(k: usize, n: usize, r: usize) -> Result<u128> {
    check(k, n)?;
    // l + m - 1 = r with 0 <= l <= k, l < m <= n
    let count = (0..=k.min(r + 1))
        .filter(|&l| {
            let m = r + 1 - l;
            l < m && m <= n
        })
        .count();
    Ok(count as u128)
}

/// Whitney numbers of the second kind for ranks `0..=k+n-1`.
pub fn whitney_second_row(k: usize, n: usize) -> Result<Vec<u128>> {
    check(k, n)?;
    (0..(k + n).max(1))
        .map(|r| whitney_second(k, n, r))
        .collect()
}

/// Whitney number of the first kind `s(r, <k,n>)`: the sum of
/// `mu(bottom, e)` over elements of rank `r`.
pub fn whitney_first(k: usize, n: usize, r: usize) -> Result<BigInt> {
    let grid = LayerGridPoset::new(k, n)?;
    let mu = grid.mobius_from_bottom();
    Ok(grid
        .elements()
        .iter()
        .zip(mu)
        .filter(|(e, _)| e.rank() == r)
        .map(|(_, v)| v)
        .sum())
}

/// Whitney numbers of the first kind for ranks `0..=k+n-1`.
pub fn whitney_first_row(k: usize, n: usize) -> Result<Vec<BigInt>> {
    let grid = LayerGridPoset::new(k, n)?;
    let mu = grid.mobius_from_bottom();
    let mut row = vec![BigInt::zero(); (k + n).max(1)];
    for (e, v) in grid.elements().iter().zip(mu) {
        row[e.rank()] += v;
    }
    Ok(row)
}

/// Bell-like number `B(<k,n>)`, the sum of all second-kind Whitney numbers.
pub fn bell_like(k: usize, n: usize) -> Result<u128> {
    check(k, n)?;
    (0..=k + n).map(|r| whitney_second(k, n, r)).sum()
}
