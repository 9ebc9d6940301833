//! Fuzzy soft norms over `ℝ^d`, sequences, operators and the contraction
//! fixed-point solver.

mod fixpoint;
mod norm;
mod operator;
mod point;
mod sequence;

pub use fixpoint::{
    fixpoint_solve, fixpoint_uniqueness_probe, FixpointResult, FixpointStatus, FixpointStep, UniquenessReport,
};
pub use norm::{
    fsnorm_axiom_check, fsnorm_eval, hausdorff_separate, Axiom, AxiomReport, AxiomTolerance, AxiomViolation, Ball,
    FSNorm, Separation, SeparationCheck, SoftNorm,
};
pub use operator::{
    continuity_check, contraction_inequality, op_apply, Affine, ContinuityOptions, ContinuityVerdict, ContractionSpec,
    FnMap, VectorMap,
};
pub use point::{fs_scalar_mul, fs_vec_add, fs_vec_sub, FSVectorPoint, FiniteFsSet, PNorm, VecSum, VectorPoint};
pub use sequence::{
    seq_converges, seq_is_cauchy, subsequence, CauchyVerdict, ConvergenceVerdict, FSSequence, DEFAULT_MIN_TAIL,
};
