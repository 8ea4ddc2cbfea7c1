//! Modules over finite-dimensional algebras: representations, homs, decomposition, endomorphism algebras.

mod canonical;
mod decompose;
mod endalg;
mod hom;
mod rep;

pub use canonical::*;
pub use decompose::*;
pub use endalg::*;
pub use hom::*;
pub use rep::*;
