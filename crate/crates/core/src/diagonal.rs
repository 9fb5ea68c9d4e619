//! The F-dependent poset `P(n, F)`: one ranked item per layer
//! `<Phi_l -> Phi_(n-l)>`, ordered by `l`. Its rank-`k` Whitney number is the
//! diagonal F-nomial `(n-k k)_F`, and the Bell-like numbers `B_n(F)` are the
//! diagonal sums of the F-nomial triangle. For `F = nat` these are the
//! Fibonacci numbers.
//!
//! Terms are kept while `2k <= n`, so `B_4(nat) = C(4,0) + C(3,1) + C(2,2)`.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::Result;
use crate::fnomial::FNomialTable;
use crate::sequence::AdmissibleSequence;

#[derive(Debug, Clone)]
pub struct DiagonalPoset {
    n: usize,
    table: FNomialTable,
}

impl DiagonalPoset {
    pub fn new(seq: AdmissibleSequence, n: usize) -> Result<Self> {
        Ok(Self {
            n,
            table: FNomialTable::new(seq, n)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Ranks carrying a nonempty layer: `0..=n/2`.
    pub fn ranks(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.n / 2
    }

    pub fn whitney(&self, k: usize) -> Result<BigUint> {
        diagonal_term(&self.table, self.n, k)
    }

    pub fn bell(&self) -> Result<BigUint> {
        self.ranks().map(|k| self.whitney(k)).sum()
    }
}

fn diagonal_term(table: &FNomialTable, n: usize, k: usize) -> Result<BigUint> {
    if 2 * k > n {
        return Ok(BigUint::zero());
    }
    table.fnomial(n - k, k)
}

/// `S(n, k, F) = (n-k k)_F` for `2k <= n`, else 0.
pub fn whitney(n: usize, k: usize, seq: &AdmissibleSequence) -> Result<BigUint> {
    let table = FNomialTable::new(seq.clone(), n)?;
    diagonal_term(&table, n, k)
}

/// `B_n(F) = sum_k S(n, k, F)`.
pub fn bell(n: usize, seq: &AdmissibleSequence) -> Result<BigUint> {
    DiagonalPoset::new(seq.clone(), n)?.bell()
}

/// `[B_0(F), ..., B_max(F)]`.
pub fn bell_sequence(seq: &AdmissibleSequence, max: usize) -> Result<Vec<BigUint>> {
    let table = FNomialTable::new(seq.clone(), max)?;
    (0..=max)
        .map(|n| (0..=n / 2).map(|k| diagonal_term(&table, n, k)).sum())
        .collect()
}

/// Rows `n = 0..=max` of `S(n, k, F)` for `k = 0..=n/2`.
pub fn whitney_triangle(seq: &AdmissibleSequence, max: usize) -> Result<Vec<Vec<BigUint>>> {
    let table = FNomialTable::new(seq.clone(), max)?;
    (0..=max)
        .map(|n| (0..=n / 2).map(|k| diagonal_term(&table, n, k)).collect())
        .collect()
}
