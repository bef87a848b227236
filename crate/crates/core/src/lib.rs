//! Vertex-weighted simplicial complexes: weighted chain complexes, homology
//! with the induced (possibly degenerate) form, weighted Hodge–Laplace
//! spectra, analytic torsion and Reidemeister torsion.
//!
//! All structural quantities are exact rationals. Floating point enters only
//! through eigenvalues, and zero eigenvalues are always counted by exact rank.

pub mod chain;
pub mod cli;
pub mod complex;
pub mod exact;
pub mod homology;
pub mod io;
pub mod quotient;
pub mod rtorsion;
pub mod spectral;

pub use chain::{VertexWeights, WeightPair};
pub use complex::{Simplex, SimplicialComplex, Vertex};
pub use exact::{Rational, RationalMatrix};
pub use io::{parse_wsc, serialize_wsc};
pub use rtorsion::r_torsion;
pub use spectral::{analytic_torsion, TorsionResult};
