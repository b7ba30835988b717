//! Exact rational arithmetic, polynomials and differential-rational expressions.

pub mod expr;
pub mod mpoly;
pub mod parse;
pub mod ratfunc;
pub mod rational;
pub mod render;
pub mod symbol;
pub mod theta;
pub mod upoly;

pub use expr::{expr_equal, DiffExpr};
pub use mpoly::{MPoly, Mono};
pub use parse::{parse_expr, parse_ratfunc};
pub use ratfunc::RatFunc;
pub use rational::Q;
pub use symbol::Symbol;
pub use theta::{jet_derive, Theta};
pub use upoly::UPoly;
