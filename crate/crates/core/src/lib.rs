//! Exact computations on the Jacobian rings and infinitesimal variation of
//! Hodge structure of the plane curves `Y^d = f(X0, X1)`.

pub mod cli;
pub mod error;
pub mod exactla;
pub mod ikeda;
pub mod ivhs;
pub mod koszul;
pub mod par;
pub mod polyring;

pub use error::{Error, Result};
