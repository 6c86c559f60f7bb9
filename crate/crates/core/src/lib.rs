pub mod algebra;
pub mod bracket;
pub mod config;
pub mod diagram;
pub mod homology;
pub mod moves;
pub(crate) mod par;
pub mod refined;
pub mod spin;
pub mod twist;

pub use algebra::{BiLaurent, IntMatrix, Laurent, RatFunc};
pub use diagram::{Diagram, DiagramError, Port};
pub use par::with_threads;
