//! Fuzzy soft sets, fuzzy soft real numbers, fuzzy soft norms and
//! contraction fixed points.
//!
//! Every numeric type is generic over [`Scalar`] (`f32` or `f64`). The
//! aliases at the crate root fix the scalar to `f64`.

pub mod decide;
pub mod error;
pub mod expr;
pub mod extension;
pub mod fuzzy;
pub mod io;
pub mod laws;
pub mod normed;
pub mod real;
pub mod report;
pub mod scalar;
pub mod soft;
pub mod soft_real;
pub mod topology;

pub use error::{Error, Result};
pub use fuzzy::{ObjectSet, Universe};
pub use scalar::Scalar;
pub use soft::{ParameterSet, SoftMapping};
pub use topology::{CrispTopology, Verdict};

pub type Grade = fuzzy::Grade<f64>;
pub type FuzzySet = fuzzy::FuzzySet<f64>;
pub type FuzzySoftSet = soft::FuzzySoftSet<f64>;
pub type FuzzySoftPoint = soft::FuzzySoftPoint<f64>;
pub type AlphaGrid = real::AlphaGrid<f64>;
pub type FuzzyReal = real::FuzzyReal<f64>;
pub type FuzzySoftReal = soft_real::FuzzySoftReal<f64>;
pub type FsTopology = topology::FsTopology<f64>;
pub type FuzzyTopology = topology::FuzzyTopology<f64>;
pub type VectorPoint = normed::VectorPoint<f64>;
pub type FSVectorPoint = normed::FSVectorPoint<f64>;
pub type FSNorm = normed::FSNorm<f64>;
pub type FSSequence = normed::FSSequence<f64>;
pub type ContractionSpec = normed::ContractionSpec<f64>;
