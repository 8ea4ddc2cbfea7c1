pub mod algebra;
pub mod linalg;
pub mod module;
pub mod homological;
pub mod knit;
pub mod relative;
pub mod correspondences;
pub mod io;
