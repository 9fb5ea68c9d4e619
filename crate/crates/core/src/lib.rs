//! Exact combinatorics of cobweb posets.
//!
//! A positive integer sequence `F` generates a leveled poset whose level `p`
//! has `F_p` vertices, with every vertex of one level below every vertex of
//! the next. This crate computes, with exact big-integer arithmetic:
//!
//! * F-factorials and F-nomial coefficients `(n k)_F` ([`fnomial`]),
//!   with bounded admissibility and GCD-morphism checks ([`sequence`]);
//! * the zeta and Möbius matrices and chain counts of finite cobweb posets
//!   ([`cobweb`], [`incidence`]);
//! * Whitney and Bell-like numbers of the poset of layers under the product
//!   order ([`layer_grid`]) and of the F-dependent diagonal poset
//!   ([`diagonal`]);
//! * partitions of a layer into copies of `P_m` by exact cover ([`tiling`],
//!   [`exact_cover`]);
//! * classical Stirling and Bell numbers with a Dobinski cross-check
//!   ([`dobinski`]).
//!
//! ```
//! use cobweb::{AdmissibleSequence, FNomialTable};
//!
//! let fib: AdmissibleSequence = "fib".parse().unwrap();
//! let table = FNomialTable::new(fib, 10).unwrap();
//! assert_eq!(table.fnomial(5, 2).unwrap(), 15u32.into());
//! ```

pub mod cobweb;
pub mod diagonal;
pub mod dobinski;
pub mod error;
pub mod exact_cover;
pub mod fnomial;
pub mod incidence;
pub mod layer_grid;
pub mod sequence;
pub mod tiling;

pub use crate::cobweb::{CobwebPoset, Vertex};
pub use crate::error::{Error, Result};
pub use crate::fnomial::FNomialTable;
pub use crate::incidence::IncidenceMatrix;
pub use crate::layer_grid::LayerGridPoset;
pub use crate::sequence::AdmissibleSequence;
pub use crate::tiling::{SigmaPolicy, TilingBudget, TilingInstance, TilingVerdict};

// Code blocks in the guide run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/fnomials.md")]
    mod fnomials {}
    #[doc = include_str!("../../../book/src/cobweb.md")]
    mod cobweb {}
    #[doc = include_str!("../../../book/src/layer_grid.md")]
    mod layer_grid {}
    #[doc = include_str!("../../../book/src/diagonal.md")]
    mod diagonal {}
    #[doc = include_str!("../../../book/src/tiling.md")]
    mod tiling {}
    #[doc = include_str!("../../../book/src/classical.md")]
    mod classical {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
