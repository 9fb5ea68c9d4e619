//! Admissible integer sequences `F = (F_n)`, the generators of every cobweb
//! structure in this crate.
//!
//! A sequence always has `F_0 = 0`; values for `n >= 1` must be positive.
//! Sequences are described by a small spec language:
//!
//! | spec            | F_1, F_2, ...                     |
//! |-----------------|-----------------------------------|
//! | `nat`           | 1, 2, 3, 4, ...                   |
//! | `fib`           | 1, 1, 2, 3, 5, ...                |
//! | `const:<c>`     | c, c, c, ...                      |
//! | `gauss:<q>`     | 1, 1+q, 1+q+q^2, ...              |
//! | `even1`         | 1, 2, 4, 6, 8, ...                |
//! | `odd`           | 1, 3, 5, 7, ...                   |
//! | `div3`          | 1, 3, 6, 9, ...                   |
//! | `list:[a,b,..]` | a, b, ... (finite)                |

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fnomial::FNomialTable;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Family {
    Nat,
    Fib,
    Const(BigUint),
    Gauss(BigUint),
    Even1,
    Odd,
    Div3,
    List(Vec<BigUint>),
}

/// A positive integer sequence with the convention `F_0 = 0`.
///
/// Values are a pure function of the index; there is no interior cache, so a
/// sequence can be shared freely between threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleSequence {
    family: Family,
}

impl AdmissibleSequence {
    pub fn nat() -> Self {
        Self {
            family: Family::Nat,
        }
    }

    pub fn fib() -> Self {
        Self {
            family: Family::Fib,
        }
    }

    pub fn constant(c: u64) -> Result<Self> {
        if c == 0 {
            return Err(Error::ZeroValue { index: 1 });
        }
        Ok(Self {
            family: Family::Const(BigUint::from(c)),
        })
    }

    /// `F_n = 1 + q + ... + q^(n-1)`, the q-integers at an integer `q >= 1`.
    pub fn gauss(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("gauss:q needs q >= 1".into()));
        }
        Ok(Self {
            family: Family::Gauss(BigUint::from(q)),
        })
    }

    pub fn even1() -> Self {
        Self {
            family: Family::Even1,
        }
    }

    pub fn odd() -> Self {
        Self {
            family: Family::Odd,
        }
    }

    pub fn div3() -> Self {
        Self {
            family: Family::Div3,
        }
    }

    /// An explicit list, indexed from `n = 1`. Every entry must be positive.
    pub fn from_list<I, T>(values: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        let values: Vec<BigUint> = values.into_iter().map(Into::into).collect();
        if let Some(pos) = values.iter().position(Zero::is_zero) {
            return Err(Error::ZeroValue { index: pos + 1 });
        }
        Ok(Self {
            family: Family::List(values),
        })
    }

    /// Largest valid index for explicit lists, `None` for infinite families.
    pub fn max_index(&self) -> Option<usize> {
        match &self.family {
            Family::List(v) => Some(v.len()),
            _ => None,
        }
    }

    /// `F_n`. `F_0` is always zero.
    pub fn value(&self, n: usize) -> Result<BigUint> {
        if n == 0 {
            return Ok(BigUint::zero());
        }
        let v = match &self.family {
            Family::Nat => BigUint::from(n),
            Family::Fib => fibonacci(n),
            Family::Const(c) => c.clone(),
            Family::Gauss(q) => {
                let mut acc = BigUint::zero();
                let mut pow = BigUint::one();
                for _ in 0..n {
                    acc += &pow;
                    pow *= q;
                }
                acc
            }
            Family::Even1 => leading_one_then_step(n, 2u32),
            Family::Odd => BigUint::from(2 * n - 1),
            Family::Div3 => leading_one_then_step(n, 3u32),
            Family::List(v) => v.get(n - 1).cloned().ok_or(Error::IndexOutOfRange {
                index: n,
                len: v.len(),
            })?,
        };
        Ok(v)
    }

    /// `[F_0, F_1, ..., F_n]`.
    pub fn values_through(&self, n: usize) -> Result<Vec<BigUint>> {
        if let Family::Fib = self.family {
            let mut out = Vec::with_capacity(n + 1);
            let (mut a, mut b) = (BigUint::zero(), BigUint::one());
            for _ in 0..=n {
                out.push(a.clone());
                let next = &a + &b;
                a = std::mem::replace(&mut b, next);
            }
            return Ok(out);
        }
        (0..=n).map(|i| self.value(i)).collect()
    }

    /// Like [`value`](Self::value) but narrowed to `usize`, for level sizes
    /// that have to be materialized.
    pub fn value_usize(&self, n: usize) -> Result<usize> {
        let v = self.value(n)?;
        usize::try_from(&v).map_err(|_| Error::BudgetExceeded {
            what: "vertices per level",
            predicted: v,
            budget: usize::MAX as u64,
        })
    }
}

fn leading_one_then_step(n: usize, step: u32) -> BigUint {
    if n == 1 {
        BigUint::one()
    } else {
        BigUint::from(step) * BigUint::from(n - 1)
    }
}

fn fibonacci(n: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

impl fmt::Display for AdmissibleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Nat => f.write_str("nat"),
            Family::Fib => f.write_str("fib"),
            Family::Const(c) => write!(f, "const:{c}"),
            Family::Gauss(q) => write!(f, "gauss:{q}"),
            Family::Even1 => f.write_str("even1"),
            Family::Odd => f.write_str("odd"),
            Family::Div3 => f.write_str("div3"),
            Family::List(v) => {
                f.write_str("list:[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl FromStr for AdmissibleSequence {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = |reason: &str| Error::ParseSequence {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let parse_param = |s: &str| -> Result<u64> {
            s.parse::<u64>()
                .map_err(|_| bad("expected a nonnegative integer parameter"))
        };
        match spec {
            "nat" => return Ok(Self::nat()),
            "fib" => return Ok(Self::fib()),
            "even1" => return Ok(Self::even1()),
            "odd" => return Ok(Self::odd()),
            "div3" => return Ok(Self::div3()),
            _ => {}
        }
        if let Some(c) = spec.strip_prefix("const:") {
            let c = parse_param(c)?;
            return Self::constant(c).map_err(|_| bad("const:c needs c >= 1"));
        }
        if let Some(q) = spec.strip_prefix("gauss:") {
            let q = parse_param(q)?;
            return Self::gauss(q).map_err(|_| bad("gauss:q needs q >= 1"));
        }
        if let Some(body) = spec.strip_prefix("list:") {
            let body: String = body.chars().filter(|c| !c.is_whitespace()).collect();
            let inner = body
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| bad("expected list:[v1,v2,...]"))?;
            if inner.is_empty() {
                return Ok(Self {
                    family: Family::List(Vec::new()),
                });
            }
            let values = inner
                .split(',')
                .map(|tok| {
                    tok.parse::<BigUint>()
                        .map_err(|_| bad(&format!("`{tok}` is not a nonnegative integer")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Self::from_list(values);
        }
        Err(bad(
            "expected one of nat, fib, const:<c>, gauss:<q>, even1, odd, div3, list:[...]",
        ))
    }
}

/// A non-integral F-nomial quotient in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonIntegralQuotient {
    pub n: usize,
    pub k: usize,
    pub numer: BigUint,
    pub denom: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityVerdict {
    /// The bound that was asked for.
    pub requested: usize,
    /// Largest `N` such that every `(n k)_F` with `n <= N` is an integer.
    pub admissible_up_to: usize,
    pub first_failure: Option<NonIntegralQuotient>,
}

impl AdmissibilityVerdict {
    pub fn is_admissible(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks that `(n k)_F` is an integer for all `0 <= k <= n <= bound`, scanning
/// `n` then `k` in increasing order and stopping at the first failure.
pub fn is_cobweb_admissible(
    seq: &AdmissibleSequence,
    bound: usize,
) -> Result<AdmissibilityVerdict> {
    let table = FNomialTable::new(seq.clone(), bound)?;
    for n in 0..=bound {
        for k in 0..=n {
            match table.fnomial(n, k) {
                Ok(_) => {}
                Err(Error::NonIntegral { n, k, numer, denom }) => {
                    return Ok(AdmissibilityVerdict {
                        requested: bound,
                        admissible_up_to: n - 1,
                        first_failure: Some(NonIntegralQuotient { n, k, numer, denom }),
                    });
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(AdmissibilityVerdict {
        requested: bound,
        admissible_up_to: bound,
        first_failure: None,
    })
}

/// A pair with `gcd(F_n, F_m) != F_gcd(n, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdFailure {
    pub n: usize,
    pub m: usize,
    pub gcd: BigUint,
    pub expected: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdMorphismVerdict {
    pub requested: usize,
    /// Largest `N` such that every pair with `m <= n <= N` passes.
    pub morphic_up_to: usize,
    /// Every failing pair within the bound, ordered by `n` then `m`.
    pub failures: Vec<GcdFailure>,
}

impl GcdMorphismVerdict {
    pub fn is_gcd_morphic(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&GcdFailure> {
        self.failures.first()
    }

    pub fn fails_at(&self, n: usize, m: usize) -> bool {
        self.failures.iter().any(|f| f.n == n && f.m == m)
    }
}

/// Checks `gcd(F_n, F_m) = F_gcd(n,m)` for all `1 <= m <= n <= bound`.
pub fn is_gcd_morphic(seq: &AdmissibleSequence, bound: usize) -> Result<GcdMorphismVerdict> {
    if bound == 0 {
        return Err(Error::InvalidArgument(
            "GCD-morphism bound must be >= 1".into(),
        ));
    }
    let values = seq.values_through(bound)?;
    let mut failures = Vec::new();
    for n in 1..=bound {
        for m in 1..=n {
            let gcd = values[n].gcd(&values[m]);
            let expected = &values[n.gcd(&m)];
            if &gcd != expected {
                failures.push(GcdFailure {
                    n,
                    m,
                    gcd,
                    expected: expected.clone(),
                });
            }
        }
    }
    let morphic_up_to = failures.first().map_or(bound, |f| f.n - 1);
    Ok(GcdMorphismVerdict {
        requested: bound,
        morphic_up_to,
        failures,
    })
}
