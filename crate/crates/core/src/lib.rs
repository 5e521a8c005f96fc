//! Exact representation theory of `GL_n(F_q)` for odd `q` at small rank.
//!
//! The crate enumerates conjugacy classes through rational canonical forms,
//! builds exact character tables, implements parabolic induction and
//! Jacquet restriction at the level of class functions, and uses these to
//! verify exhaustively that every irreducible representation distinguished
//! by the centralizer of an involution `A` (`A^2 = I`) is self-dual. A
//! combinatorial model of the PSH-algebra `⊕_n R(GL_n(F_q))` built on
//! Littlewood–Richardson coefficients is cross-checked against the
//! character-level computations.

pub mod algebra;
pub mod chartable;
pub mod distinction;
pub mod error;
pub mod group;
pub mod partition;
pub mod psh;

pub use error::{Error, Result};
