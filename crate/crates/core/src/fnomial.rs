//! F-factorials, falling F-factorials and F-nomial coefficients over an
//! arbitrary positive sequence.
//!
//! ```text
//! n_F!          = F_n F_(n-1) ... F_1,      0_F! = 1
//! falling(n, k) = F_n F_(n-1) ... F_(n-k+1)
//! (n k)_F       = n_F! / (k_F! (n-k)_F!)
//! ```

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::sequence::AdmissibleSequence;

/// Precomputed F-factorials `0_F!, ..., max_n_F!` for one sequence.
///
/// The table is filled on construction and never mutated afterwards.
#[derive(Debug, Clone)]
pub struct FNomialTable {
    seq: AdmissibleSequence,
    values: Vec<BigUint>,
    factorials: Vec<BigUint>,
}

impl FNomialTable {
    pub fn new(seq: AdmissibleSequence, max_n: usize) -> Result<Self> {
        let values = seq.values_through(max_n)?;
        let mut factorials = Vec::with_capacity(max_n + 1);
        factorials.push(BigUint::one());
        for n in 1..=max_n {
            if values[n].is_zero() {
                return Err(Error::ZeroValue { index: n });
            }
            let next = &factorials[n - 1] * &values[n];
            factorials.push(next);
        }
        Ok(Self {
            seq,
            values,
            factorials,
        })
    }

    pub fn sequence(&self) -> &AdmissibleSequence {
        &self.seq
    }

    pub fn max_n(&self) -> usize {
        self.factorials.len() - 1
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_n() {
            Err(Error::BoundExceeded {
                n,
                max: self.max_n(),
            })
        } else {
            Ok(())
        }
    }

    pub fn value(&self, n: usize) -> Result<&BigUint> {
        self.check(n)?;
        Ok(&self.values[n])
    }

    pub fn f_factorial(&self, n: usize) -> Result<&BigUint> {
        self.check(n)?;
        Ok(&self.factorials[n])
    }

    /// `F_n F_(n-1) ... F_(n-k+1)`, computed as a product.
    pub fn falling(&self, n: usize, k: usize) -> Result<BigUint> {
        self.check(n)?;
        if k > n {
            return Err(Error::KExceedsN { n, k });
        }
        Ok(self.values[n - k + 1..=n].iter().product())
    }

    /// `(n k)_F`, or [`Error::NonIntegral`] with the reduced fraction when
    /// the quotient is not an integer.
    pub fn fnomial(&self, n: usize, k: usize) -> Result<BigUint> {
        self.check(n)?;
        if k > n {
            return Err(Error::KExceedsN { n, k });
        }
        let numer = &self.factorials[n];
        let denom = &self.factorials[k] * &self.factorials[n - k];
        let (q, r) = numer.div_rem(&denom);
        if r.is_zero() {
            return Ok(q);
        }
        let g = numer.gcd(&denom);
        Err(Error::NonIntegral {
            n,
            k,
            numer: numer / &g,
            denom: denom / &g,
        })
    }
}
