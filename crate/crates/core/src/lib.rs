//! Exact symbolic computation for the cyclic chain complex of the Cuntz
//! semigroup algebra and of free tensor algebras.
//!
//! Everything here is computed over the rationals with zero tolerance: an
//! identity either holds on the nose or the operation reports the offending
//! term. The building blocks are
//!
//! * [`semigroup`]: normal-form words `p_alpha q_beta` and their product,
//!   plus free words under concatenation;
//! * [`algebra`]: sparse rational linear combinations, the multiplication
//!   map `pi`, and the textual syntax for elements;
//! * [`chains`]: elementary tensors, face maps, the cyclic shift `t` and
//!   norm `N`, and transition profiles;
//! * [`homotopy`]: splitting maps `rho`, the insertion operators `s`/`r`,
//!   the commuting products `P` and `Phi`, and the assembled contracting
//!   homotopy;
//! * [`cochains`]: rule-based cochains, the coboundary, traces, and the
//!   constructive cobounding pipeline;
//! * [`testkit`]: seeded generators and the registry of machine checks.

pub mod algebra;
pub mod chains;
pub mod cochains;
mod error;
pub mod homotopy;
pub mod semigroup;
pub mod testkit;

pub use algebra::{parse, Basis, LinComb, Scalar};
pub use chains::{Chain, ElementaryTensor, TransitionProfile};
pub use cochains::{Cochain, TracePair, WordTrace};
pub use error::{Error, ParseError, Result};
pub use homotopy::{PTermLabel, PhiHomotopy, SplitSpec};
pub use semigroup::{CuntzMonomial, FreeWord, Index, Word};
pub use testkit::{CheckReport, GenParams, Mutation};
