//! Constructions and checkers for hypergraph Ramsey lower bounds: the
//! highest-differing-bit calculus, stepping-up colorings, strong colorings,
//! trimmed random graphs, path hypergraphs and exhaustive small-case search.

pub mod bitcore;
pub mod expander;
pub mod hypergraph;
pub mod pathhyper;
pub mod search;
pub mod stepup;
pub mod strongcolor;

pub use bitcore::Label;
pub use hypergraph::{Graph, Hypergraph};
pub use stepup::{BaseColoring, Color, EdgeColoring};
