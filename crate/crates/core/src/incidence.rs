//! Dense exact-integer incidence matrices over a linearly extended finite
//! poset. Entry `(i, j)` is the value of an incidence-algebra element on the
//! interval between the `i`-th and `j`-th elements of the extension.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    labels: Vec<String>,
    entries: Vec<Vec<BigInt>>,
}

impl IncidenceMatrix {
    /// The zeta matrix of a relation given on indices of a linear extension.
    /// `leq(i, j)` must be false whenever `j < i`.
    pub fn zeta_from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if leq(i, j) {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self { labels, entries }
    }

    pub fn identity(labels: Vec<String>) -> Self {
        Self::zeta_from_relation(labels, |i, j| i == j)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn is_unit_upper_triangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, x)| match j.cmp(&i) {
                std::cmp::Ordering::Less => x.is_zero(),
                std::cmp::Ordering::Equal => x.is_one(),
                std::cmp::Ordering::Greater => true,
            })
        })
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
    }

    /// One row of the inverse: `mu(i, .)` by forward substitution on
    /// `sum_{i <= z <= j} mu(i, z) zeta(z, j) = delta(i, j)`.
    ///
    /// Requires `self` to be unit upper-triangular.
    pub fn inverse_row(&self, i: usize) -> Vec<BigInt> {
        let n = self.len();
        let mut row = vec![BigInt::zero(); n];
        row[i] = BigInt::one();
        for j in i + 1..n {
            let mut acc = BigInt::zero();
            for (z, a) in row.iter().enumerate().take(j).skip(i) {
                if a.is_zero() {
                    continue;
                }
                let b = &self.entries[z][j];
                if b.is_zero() {
                    continue;
                }
                if b.is_one() {
                    acc += a;
                } else {
                    acc += a * b;
                }
            }
            row[j] = -acc;
        }
        row
    }

    /// Exact inverse of a unit upper-triangular matrix; for a zeta matrix this
    /// is the Möbius matrix.
    pub fn inverse_unit_upper(&self) -> Self {
        debug_assert!(self.is_unit_upper_triangular());
        let entries = (0..self.len()).map(|i| self.inverse_row(i)).collect();
        Self {
            labels: self.labels.clone(),
            entries,
        }
    }

    /// `self * other`, skipping zero entries.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "dimension mismatch");
        let n = self.len();
        let entries = (0..n)
            .map(|i| {
                let mut out = vec![BigInt::zero(); n];
                for (z, a) in self.entries[i].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in other.entries[z].iter().enumerate() {
                        if !b.is_zero() {
                            out[j] += a * b;
                        }
                    }
                }
                out
            })
            .collect();
        Self {
            labels: self.labels.clone(),
            entries,
        }
    }

    /// Sum of all entries of `(self - I)^steps`, computed as repeated
    /// vector-matrix products from the all-ones row.
    pub fn strict_power_total(&self, steps: usize) -> BigInt {
        let n = self.len();
        let mut v = vec![BigInt::one(); n];
        for _ in 0..steps {
            let mut next = vec![BigInt::zero(); n];
            for (z, a) in v.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in self.entries[z].iter().enumerate() {
                    if j != z && !b.is_zero() {
                        next[j] += a * b;
                    }
                }
            }
            v = next;
        }
        v.into_iter().sum()
    }

    /// Leading `size x size` block.
    pub fn truncated(&self, size: usize) -> Self {
        let size = size.min(self.len());
        Self {
            labels: self.labels[..size].to_vec(),
            entries: self.entries[..size]
                .iter()
                .map(|row| row[..size].to_vec())
                .collect(),
        }
    }

    /// Maximum absolute entry, handy when reporting Möbius growth.
    pub fn max_abs(&self) -> BigInt {
        self.entries
            .iter()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or_default()
    }
}

/// Text dump: a `# order: ...` header followed by one space-separated row per
/// line.
impl fmt::Display for IncidenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# order: {}", self.labels.join(" "))?;
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
