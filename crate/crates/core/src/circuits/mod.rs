//! A small textual language for circuits built from `;`, `(+)` and `(x)`,
//! at the pure (isometry) level and the channel level.
//!
//! ```text
//! # controlled-T
//! let ct = id[2] (+) T
//! H (x) id[2] ; ct ; measure[1,1] (x) id[2]
//! ```

mod ast;
mod eval;
mod lexer;
mod parser;
mod types;

pub use ast::{Angle, Expr, Gate};
pub use eval::{compile, evaluate, Value};
pub use parser::parse;
pub use types::{typecheck, typecheck_pure, CircuitType};
