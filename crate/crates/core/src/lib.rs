//! Bound functions, order screening and inequality checks for counting
//! subgroups of finite groups against `c(2)·r^{log₂(r)/4}`.
//!
//! * [`arith`] evaluates `c(p)`, `S(p,a)`, Gaussian binomials and the
//!   goodness functions `f` and `𝚏`.
//! * [`screening`] runs the two-step elimination of candidate orders.
//! * [`inequality`] checks the standalone inequalities (exception lists,
//!   technical bounds, solvable recursion, weighted class bounds).
//! * [`report`] renders results as CSV, JSON or Markdown.

pub mod arith;
pub mod data;
pub mod inequality;
pub mod report;
pub mod screening;

pub use arith::bound::{BoundValue, Boundary};
pub use arith::factored::FactoredInteger;
