//! Knot diagrams, exact invariants and density spectra.

pub mod census;
pub mod diagram;
pub mod error;
pub mod graphs;
pub mod kashaev;
pub mod khovanov;
pub mod polynomials;
pub mod spectra;

pub use diagram::{Arc, BraidWord, Crossing, Diagram, Tangle};
pub use error::{KnotError, Result};
pub use graphs::PlanarMultigraph;
pub use polynomials::{JonesSummary, LaurentPolynomial};
