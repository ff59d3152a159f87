//! Standard bases in localized polynomial rings: minimal standard bases of
//! ideal powers, tangent cones, ideal arithmetic in the local ring, a
//! linear-algebra oracle, and experiments on the growth of standard-basis
//! orders and Artin–Rees exponents.

pub mod basis;
pub mod error;
pub mod experiments;
pub mod ideal;
pub mod oracle;
pub mod parser;
pub mod poly;

pub use error::{Error, Result};
