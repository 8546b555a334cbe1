//! Exact arithmetic for the dual-number Markov equation
//! `A² + B² + C² = (3 − σε)·ABC` with `ε² = 0`.
//!
//! - [`dual`]: dual integers over `BigInt`.
//! - [`markov`]: mutations, residuals, descent and the HPZ comparison.
//! - [`tree`]: the planar tree of solutions grown from a seed.
//! - [`uniqueness`]: bounded-degree certification that only `P = c·ABC` deforms invariantly.
//! - [`init_space`]: seeds, shadow linearity and the positivity search.
//! - [`cli`]: the `shadow-markov` command line.

pub mod cli;
pub mod dual;
pub mod error;
pub mod init_space;
pub mod linalg;
pub mod markov;
pub mod poly;
pub mod render;
pub mod tree;
pub mod uniqueness;

pub use dual::DualInt;
pub use error::{Error, Result};
pub use init_space::InitialTriple;
pub use markov::{DualTriple, Slot};
pub use poly::TriPoly;
pub use tree::{Direction, TreeNode, TreePath};
