//! Conway polynomial and finite type invariants of links.

pub mod cn_move;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod finite_type;
pub mod morse;
pub mod poly;
pub mod reduced;
pub mod sampler;
pub mod skein;

pub use diagram::{parse_pd, Crossing, CrossingKind, Resolution, SingularLinkDiagram, Strand};
pub use error::{Error, Result};
pub use poly::{IntPolynomial, TruncatedSeries};
