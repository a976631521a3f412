//! Exact obstructions to free periodicity and periodicity of knots, read off
//! the Alexander polynomial.

pub mod arith;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod factor;
pub mod hartley;
pub mod lspace;
pub mod mahler;
pub mod modp;
pub mod murasugi;
pub mod poly;
mod serde_bigint;

pub use error::{Error, Result};
pub use factor::{factor_over_z, factor_over_z_seeded};
pub use poly::{parse_poly, FactoredPoly, IntPoly};
