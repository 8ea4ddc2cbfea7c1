//! Approximations, resolutions, Ext, the AR translate and (co)generation conditions.

mod approx;
mod cogen;
mod resolve;

pub use approx::*;
pub use cogen::*;
pub use resolve::*;
