//! Finite cobweb posets.
//!
//! Level `p >= 1` holds `F_p` vertices `<1,p>, ..., <F_p,p>`; level 0 is the
//! single root `<1,0>`. Every vertex of level `p` is covered by every vertex of
//! level `p + 1`, so two vertices are comparable exactly when they sit on
//! different levels. Edges are never stored; the cover relation is read off
//! the level sizes.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::incidence::IncidenceMatrix;
use crate::sequence::AdmissibleSequence;

/// Largest poset for which dense incidence matrices are built.
pub const MAX_MATRIX_VERTICES: usize = 4096;

/// Default cap on the number of chains [`CobwebPoset::enumerate_max_chains`]
/// will walk.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// Vertex `<index, level>`, with `index` counted from 1.
///
/// The derived ordering is level-major, then index, which is the linear
/// extension used for all matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub level: usize,
    pub index: usize,
}

impl Vertex {
    /// `<j, p>`: the `j`-th vertex of level `p`.
    pub fn new(index: usize, level: usize) -> Self {
        Self { level, index }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.index, self.level)
    }
}

/// The prime cobweb poset `P_m`: levels `0..=max_level` of the cobweb poset
/// generated by a sequence.
#[derive(Debug, Clone)]
pub struct CobwebPoset {
    seq: AdmissibleSequence,
    level_sizes: Vec<BigUint>,
}

impl CobwebPoset {
    pub fn build(seq: AdmissibleSequence, max_level: usize) -> Result<Self> {
        let mut level_sizes = seq.values_through(max_level)?;
        level_sizes[0] = BigUint::one();
        Ok(Self { seq, level_sizes })
    }

    pub fn sequence(&self) -> &AdmissibleSequence {
        &self.seq
    }

    pub fn max_level(&self) -> usize {
        self.level_sizes.len() - 1
    }

    /// `[1, F_1, ..., F_max_level]`.
    pub fn level_sizes(&self) -> &[BigUint] {
        &self.level_sizes
    }

    pub fn level_size(&self, level: usize) -> Option<&BigUint> {
        self.level_sizes.get(level)
    }

    pub fn vertex_count(&self) -> BigUint {
        self.level_sizes.iter().sum()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.index >= 1
            && self
                .level_sizes
                .get(v.level)
                .is_some_and(|size| BigUint::from(v.index) <= *size)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                index: v.index,
                level: v.level,
            })
        }
    }

    fn check_levels(&self, from: usize, to: usize) -> Result<()> {
        if from > to || to > self.max_level() {
            Err(Error::LevelRange {
                from,
                to,
                max: self.max_level(),
            })
        } else {
            Ok(())
        }
    }

    fn level_len(&self, level: usize) -> Result<usize> {
        let size = &self.level_sizes[level];
        size.to_usize().ok_or_else(|| Error::BudgetExceeded {
            what: "vertices per level",
            predicted: size.clone(),
            budget: usize::MAX as u64,
        })
    }

    /// Vertices of one level in index order.
    pub fn level_vertices(&self, level: usize) -> Result<impl Iterator<Item = Vertex>> {
        if level > self.max_level() {
            return Err(Error::LevelRange {
                from: level,
                to: level,
                max: self.max_level(),
            });
        }
        let len = self.level_len(level)?;
        Ok((1..=len).map(move |j| Vertex::new(j, level)))
    }

    /// All vertices in the level-major linear extension.
    pub fn vertices(&self) -> Result<Vec<Vertex>> {
        let mut out = Vec::new();
        for p in 0..=self.max_level() {
            out.extend(self.level_vertices(p)?);
        }
        Ok(out)
    }

    /// Covering relation: `u` is covered by `v` iff `v` is one level above.
    pub fn covers(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(v.level == u.level + 1)
    }

    /// The upper covers of `v`: the whole next level.
    pub fn upper_covers(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        if v.level == self.max_level() {
            return Ok(Vec::new());
        }
        Ok(self.level_vertices(v.level + 1)?.collect())
    }

    pub fn leq(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(u == v || u.level < v.level)
    }

    fn matrix_vertices(&self) -> Result<Vec<Vertex>> {
        let total = self.vertex_count();
        if total > BigUint::from(MAX_MATRIX_VERTICES) {
            return Err(Error::BudgetExceeded {
                what: "matrix vertices",
                predicted: total,
                budget: MAX_MATRIX_VERTICES as u64,
            });
        }
        self.vertices()
    }

    /// The zeta matrix in level-major order.
    pub fn zeta_matrix(&self) -> Result<IncidenceMatrix> {
        let order = self.matrix_vertices()?;
        let labels = order.iter().map(ToString::to_string).collect();
        Ok(IncidenceMatrix::zeta_from_relation(labels, |i, j| {
            let (u, v) = (order[i], order[j]);
            u == v || u.level < v.level
        }))
    }

    /// The Möbius matrix `zeta^-1`, by exact substitution.
    pub fn mobius_matrix(&self) -> Result<IncidenceMatrix> {
        Ok(self.zeta_matrix()?.inverse_unit_upper())
    }

    /// Number of chains with exactly `t` elements: the entry sum of
    /// `(zeta - I)^(t-1)`.
    pub fn count_chains_of_length(&self, t: usize) -> Result<BigUint> {
        if t == 0 {
            return Err(Error::InvalidArgument("chain length must be >= 1".into()));
        }
        let total = self.zeta_matrix()?.strict_power_total(t - 1);
        Ok(total.to_biguint().expect("chain counts are nonnegative"))
    }

    /// Saturated chains hitting each level `from..=to` once:
    /// the product of those level sizes.
    pub fn count_max_chains(&self, from: usize, to: usize) -> Result<BigUint> {
        self.check_levels(from, to)?;
        Ok(self.level_sizes[from..=to].iter().product())
    }

    /// Depth-first enumeration of the saturated chains between two levels,
    /// walking the cover relation. Chains come out in lexicographic order of
    /// their vertex indices.
    pub fn enumerate_max_chains(
        &self,
        from: usize,
        to: usize,
        budget: u64,
    ) -> Result<MaxChains<'_>> {
        let predicted = self.count_max_chains(from, to)?;
        if predicted > BigUint::from(budget) {
            return Err(Error::BudgetExceeded {
                what: "chains",
                predicted,
                budget,
            });
        }
        let first: Vec<Vertex> = self.level_vertices(from)?.collect();
        Ok(MaxChains {
            poset: self,
            to,
            stack: vec![first.into_iter()],
            path: Vec::new(),
        })
    }

    /// Möbius value `mu(u, v)` computed from the zeta matrix, for spot checks.
    pub fn mobius(&self, u: Vertex, v: Vertex) -> Result<BigInt> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let order = self.matrix_vertices()?;
        let zeta = self.zeta_matrix()?;
        let i = order.binary_search(&u).expect("vertex checked");
        let j = order.binary_search(&v).expect("vertex checked");
        Ok(zeta.inverse_row(i).swap_remove(j))
    }
}

/// Iterator returned by [`CobwebPoset::enumerate_max_chains`].
pub struct MaxChains<'a> {
    poset: &'a CobwebPoset,
    to: usize,
    // pending alternatives for each depth of the current path
    stack: Vec<std::vec::IntoIter<Vertex>>,
    path: Vec<Vertex>,
}

impl Iterator for MaxChains<'_> {
    type Item = Vec<Vertex>;

    fn next(&mut self) -> Option<Vec<Vertex>> {
        loop {
            let top = self.stack.last_mut()?;
            match top.next() {
                None => {
                    self.stack.pop();
                    self.path.pop();
                }
                Some(v) => {
                    self.path.push(v);
                    if v.level == self.to {
                        let chain = self.path.clone();
                        self.path.pop();
                        return Some(chain);
                    }
                    let above = self
                        .poset
                        .upper_covers(v)
                        .expect("vertices come from the poset");
                    self.stack.push(above.into_iter());
                }
            }
        }
    }
}
