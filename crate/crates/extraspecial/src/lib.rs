//! Exact mod-p invariant theory for extraspecial p-groups.
//!
//! Everything here computes over F_p for p in {2, 3, 5, 7} with exact
//! arithmetic: Dickson and Mui invariants, Steenrod operations and the
//! norm from index-p subgroups, restriction tuples over Lagrangian
//! subspaces of a symplectic F_p-space, membership tests against the
//! image of restriction, and the invariant ring of the symplectic group
//! acting on a graded quotient.

pub mod config;
pub mod dickson;
pub mod error;
pub mod fp;
pub mod matrix;
pub mod monomial;
pub mod par;
pub mod poly;
pub mod steenrod;
pub mod subst;
pub mod symplectic;
pub mod vars;

pub use config::GlobalConfig;
pub use error::{Error, Result};
pub use fp::{Fp, PrimeField};
pub use poly::MultiPoly;
pub use vars::VariableContext;
