//! Fixed points of contractions by Picard iteration.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::norm::SoftNorm;
use super::operator::{op_apply, ContractionSpec};
use super::point::{FSVectorPoint, VectorPoint};
use super::sequence::FSSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixpointStatus {
    Converged,
    MaxIterExceeded,
}

impl FixpointStatus {
    pub fn name(self) -> &'static str {
        match self {
            FixpointStatus::Converged => "converged",
            FixpointStatus::MaxIterExceeded => "max_iter_exceeded",
        }
    }
}

impl fmt::Display for FixpointStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One Picard step `x_n = T(x_{n−1})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixpointStep<T> {
    pub n: usize,
    /// `‖x_n − x_{n−1}‖`.
    pub delta: T,
    /// `k^n ‖x_1 − x_0‖ / (1 − k)`.
    pub apriori: T,
    /// `k ‖x_n − x_{n−1}‖ / (1 − k)`.
    pub aposteriori: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixpointResult<T> {
    pub fixed_point: FSVectorPoint<T>,
    /// `x_0 = z, x_1, …, x_N`.
    pub iterates: FSSequence<T>,
    pub steps: Vec<FixpointStep<T>>,
    pub status: FixpointStatus,
}

impl<T: Scalar> FixpointResult<T> {
    pub fn apriori_bounds(&self) -> Vec<T> {
        self.steps.iter().map(|s| s.apriori).collect()
    }

    pub fn aposteriori_bounds(&self) -> Vec<T> {
        self.steps.iter().map(|s| s.aposteriori).collect()
    }

    pub fn iterations(&self) -> usize {
        self.steps.len()
    }
}

/// Iterates `x_{n+1} = T(x_n)` from `start` until `k/(1−k)·‖x_{n+1} − x_n‖ ≤ tol`
/// or `max_iter` steps. Distances use `n.magnitude`, i.e. `max_{e,α,i} ‖·‖^i_{e,α}`.
///
/// Each step also checks `‖x_{n+1} − x_n‖ ≤ k ‖x_n − x_{n−1}‖` up to rounding
/// and fails with [`Error::ContractionViolated`] otherwise.
pub fn fixpoint_solve<T: Scalar>(
    n: &impl SoftNorm<T>,
    spec: &ContractionSpec<T>,
    start: &FSVectorPoint<T>,
    tol: T,
    max_iter: usize,
) -> Result<FixpointResult<T>> {
    let k = spec.k();
    if !(k > T::zero() && k < T::one()) {
        return Err(Error::InvalidContraction(format!("k = {k} is not in (0, 1)")));
    }
    if !(tol > T::zero() && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol.to_string()));
    }
    if start.params() != n.params() {
        return Err(Error::ParameterMismatch);
    }
    let dist = |a: &VectorPoint<T>, b: &VectorPoint<T>| a.sub(b).map(|d| n.magnitude(&d));
    let slack = T::lit(64.0) * T::epsilon();
    let gain = k / (T::one() - k);

    let mut iterates = vec![start.clone()];
    let mut steps: Vec<FixpointStep<T>> = Vec::new();
    let mut status = FixpointStatus::MaxIterExceeded;
    let mut first = T::zero();
    for step in 1..=max_iter {
        let prev = iterates.last().expect("non-empty");
        let next = op_apply(spec.map(), prev)?;
        let delta = dist(next.vector(), prev.vector())?;
        if step == 1 {
            first = delta;
        } else {
            let before = steps[step - 2].delta;
            let scale =
                n.magnitude(next.vector()) + n.magnitude(prev.vector()) + n.magnitude(iterates[step - 2].vector());
            if delta > k * before + slack * scale {
                let ratio = if before > T::zero() {
                    delta / before
                } else {
                    T::infinity()
                };
                return Err(Error::ContractionViolated {
                    step,
                    ratio: ratio.to_string(),
                    k: k.to_string(),
                });
            }
        }
        let exponent = i32::try_from(step).unwrap_or(i32::MAX);
        steps.push(FixpointStep {
            n: step,
            delta,
            apriori: k.powi(exponent) * first / (T::one() - k),
            aposteriori: gain * delta,
        });
        iterates.push(next);
        if gain * delta <= tol {
            status = FixpointStatus::Converged;
            break;
        }
    }
    let fixed_point = iterates.last().expect("non-empty").clone();
    Ok(FixpointResult {
        fixed_point,
        iterates: FSSequence::new(iterates)?,
        steps,
        status,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessReport<T> {
    pub results: Vec<FixpointResult<T>>,
    /// Largest pairwise distance between returned supports.
    pub spread: T,
    pub supports_agree: bool,
    /// Every returned point carries its own start's grades.
    pub grades_follow_starts: bool,
}

impl<T: Scalar> UniquenessReport<T> {
    pub fn is_ok(&self) -> bool {
        self.supports_agree && self.grades_follow_starts
    }
}

/// Solves from every start with tolerance `tol/2`, so that converged supports
/// lie within `tol` of each other.
pub fn fixpoint_uniqueness_probe<T: Scalar>(
    n: &impl SoftNorm<T>,
    spec: &ContractionSpec<T>,
    starts: &[FSVectorPoint<T>],
    tol: T,
    max_iter: usize,
) -> Result<UniquenessReport<T>> {
    if starts.is_empty() {
        return Err(Error::DimensionMismatch("no starting points".into()));
    }
    let results = starts
        .iter()
        .map(|z| fixpoint_solve(n, spec, z, tol / T::lit(2.0), max_iter))
        .collect::<Result<Vec<_>>>()?;
    let mut spread = T::zero();
    for (i, a) in results.iter().enumerate() {
        for b in &results[i + 1..] {
            let d = a.fixed_point.vector().sub(b.fixed_point.vector())?;
            spread = spread.max(n.magnitude(&d));
        }
    }
    let grades_follow_starts = results
        .iter()
        .zip(starts)
        .all(|(r, z)| r.fixed_point.lambda() == z.lambda());
    let converged = results.iter().all(|r| r.status == FixpointStatus::Converged);
    Ok(UniquenessReport {
        supports_agree: converged && spread <= tol,
        results,
        spread,
        grades_follow_starts,
    })
}
