//! Exact-arithmetic tooling for Dehn surgery on cable knots.
//!
//! The crate is split along the lines of the computation:
//!
//! - [`slope`]: reduced rational slopes on a torus, including `∞`.
//! - [`laurent`]: integer Laurent polynomials, derivatives at `t = 1`, and
//!   Alexander normalization.
//! - [`diagram`]: PD codes and braid words, the Kauffman-bracket Jones
//!   polynomial, the Fox-calculus Alexander polynomial, and braid cabling.
//! - [`manifold`]: symbolic descriptors of surgered manifolds and sound
//!   distinguishability verdicts.
//! - [`classifier`]: knot expressions, the three-case classification of
//!   surgeries on cables, and JSJ bookkeeping.
//! - [`pipeline`]: cosmetic-surgery obstruction reports, the cabling-constant
//!   fit for order 2 and 3 invariants, and knot-table scans.

pub mod classifier;
pub mod diagram;
pub mod error;
pub mod laurent;
pub mod manifold;
pub mod pipeline;
pub mod slope;
mod serde_str;

pub use classifier::{CableParams, CaseTag, KnotExpr, LeafClass};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use manifold::{DistinguishVerdict, ManifoldDescriptor, Reason};
pub use slope::Slope;
