//! Existence of limits of quotients of bivariate polynomials.
//!
//! Given `f, g` in `Q[x, y]` with `g` having an isolated zero at the origin,
//! [`limits::decide_limit`] decides whether `f/g` has a limit at `(0, 0)`.
//! The extremes of `f/g` on small circles lie on the critical curve
//! `y (g f_x - f g_x) - x (g f_y - f g_y) = 0`; the real branches of that
//! curve through the origin are computed with a Newton-Puiseux engine and
//! the quotient is evaluated along each of them.

pub mod cli;
pub mod error;
pub mod hensel;
pub mod limits;
pub mod polyq;
pub mod puiseux;
pub mod roots;
pub mod series;

pub use error::{EngineError, Result};
