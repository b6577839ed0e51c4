//! Exact computations with finite-dimensional Hopf algebras: duals, Drinfeld
//! doubles, quasitriangular structures, transmutation, double cross
//! (co)products and their factorisation.
//!
//! Multi-indices flatten left-factor-major. All equality is exact.

pub mod catalog;
pub mod cross;
pub mod error;
pub mod expr;
pub mod factor;
pub mod hopf;
pub mod linmap;
pub mod qt;
pub mod repro;
pub mod report;
pub mod scalar;
pub mod solve;
pub mod space;
pub mod tensor;

pub use error::{Error, Result};
pub use hopf::HopfData;
pub use linmap::LinMap;
pub use report::Report;
pub use scalar::{Field, Scalar};
pub use space::{Shape, Space};
pub use tensor::SparseTensor;
