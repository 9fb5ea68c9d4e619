//! Stirling numbers of the second kind, Bell numbers, and Dobinski's series
//! `B_n = e^-1 sum_k k^n / k!` as a numeric cross-check.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`bell_dobinski`].
pub const DOBINSKI_MAX_N: usize = 20;

/// Series terms [`bell_dobinski`] may sum before giving up.
pub const DOBINSKI_TERM_BUDGET: usize = 10_000;

/// Rows `0..=max_n` of `S(n, k)`, filled by `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = vec![BigUint::zero(); n + 1];
            for k in 1..=n {
                let stay = prev
                    .get(k)
                    .map_or_else(BigUint::zero, |s| s * BigUint::from(k));
                row[k] = stay + &prev[k - 1];
            }
            rows.push(row);
        }
        Self { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Result<&BigUint> {
        if n > self.max_n() {
            return Err(Error::BoundExceeded {
                n,
                max: self.max_n(),
            });
        }
        if k > n {
            return Err(Error::KExceedsN { n, k });
        }
        Ok(&self.rows[n][k])
    }

    pub fn row(&self, n: usize) -> Result<&[BigUint]> {
        self.rows
            .get(n)
            .map(Vec::as_slice)
            .ok_or(Error::BoundExceeded {
                n,
                max: self.max_n(),
            })
    }

    pub fn bell(&self, n: usize) -> Result<BigUint> {
        Ok(self.row(n)?.iter().sum())
    }
}

pub fn stirling2(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::KExceedsN { n, k });
    }
    StirlingTable::new(n).get(n, k).cloned()
}

pub fn bell_exact(n: usize) -> BigUint {
    StirlingTable::new(n).bell(n).expect("row n exists")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DobinskiApprox {
    pub value: f64,
    /// Number of series terms summed (`k = 0..terms`).
    pub terms: usize,
    /// Upper bound on the relative size of the dropped tail.
    pub tail_bound: f64,
}

/// Truncated Dobinski series for the `n`-th Bell number.
///
/// The partial sum and `e^-1` are accumulated as exact rationals and only
/// rounded at the end. Summation stops once the geometric bound on the tail
/// falls below `rel_tol / 16` of the partial sum; the term ratio
/// `(1 + 1/k)^n / (k + 1)` is decreasing, which makes that bound valid.
pub fn bell_dobinski(n: usize, rel_tol: f64) -> Result<DobinskiApprox> {
    if n > DOBINSKI_MAX_N {
        return Err(Error::BoundExceeded {
            n,
            max: DOBINSKI_MAX_N,
        });
    }
    if rel_tol.is_nan() || rel_tol < 4.0 * f64::EPSILON {
        return Err(Error::ToleranceUnachievable {
            rel_tol,
            terms: DOBINSKI_TERM_BUDGET,
        });
    }
    let target = rel_tol / 16.0;

    let term = |k: usize| -> BigRational {
        let numer = BigInt::from(k).pow(n as u32);
        let denom: BigInt = (1..=k).map(BigInt::from).product();
        BigRational::new(numer, denom)
    };
    let ratio = |k: usize| -> f64 { (1.0 + 1.0 / k as f64).powi(n as i32) / (k as f64 + 1.0) };

    let mut partial = BigRational::zero();
    let mut terms = 0;
    let mut tail_bound = f64::INFINITY;
    for k in 0..DOBINSKI_TERM_BUDGET {
        partial += term(k);
        terms = k + 1;
        // tail is sum_{j > k} t_j <= t_{k+1} / (1 - r_{k+1})
        let r = ratio(k + 1);
        if k >= 1 && r < 1.0 {
            let next = term(k + 1).to_f64().unwrap_or(f64::INFINITY);
            let sum = partial.to_f64().unwrap_or(f64::INFINITY);
            tail_bound = next / (1.0 - r) / sum;
            if tail_bound <= target {
                break;
            }
        }
    }
    if tail_bound > target {
        return Err(Error::ToleranceUnachievable {
            rel_tol,
            terms: DOBINSKI_TERM_BUDGET,
        });
    }

    // e^-1 = sum_j (-1)^j / j!, alternating with error below the first dropped term
    let mut inv_e = BigRational::zero();
    let mut fact = BigInt::one();
    for j in 0..40usize {
        if j > 0 {
            fact *= BigInt::from(j);
        }
        let t = BigRational::new(BigInt::one(), fact.clone());
        if j % 2 == 0 {
            inv_e += t;
        } else {
            inv_e -= t;
        }
    }
    let value = (partial * inv_e)
        .to_f64()
        .expect("Bell numbers up to n = 20 fit in f64");
    Ok(DobinskiApprox {
        value,
        terms,
        tail_bound,
    })
}
