//! Maps on `ℝ^d`, their action on fuzzy soft points, contraction specs and
//! the sequential continuity probe.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::soft_real::FuzzySoftReal;

use super::norm::SoftNorm;
use super::point::{fs_vec_sub, FSVectorPoint, PNorm, VectorPoint};
use super::sequence::{seq_converges, ConvergenceVerdict, FSSequence};

/// Total map `ℝ^d → ℝ^d`.
pub trait VectorMap<T>: Send + Sync {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[T]) -> Result<Vec<T>>;
}

/// `x ↦ A·x + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Affine<T> {
    a: Vec<Vec<T>>,
    b: Vec<T>,
}

impl<T: Scalar> Affine<T> {
    pub fn new(a: Vec<Vec<T>>, b: Vec<T>) -> Result<Self> {
        let d = b.len();
        if d == 0 || a.len() != d || a.iter().any(|row| row.len() != d) {
            return Err(Error::DimensionMismatch(format!("affine map needs a {d}x{d} matrix")));
        }
        if a.iter().flatten().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::DimensionMismatch("affine map has non-finite entries".into()));
        }
        Ok(Affine { a, b })
    }

    pub fn matrix(&self) -> &[Vec<T>] {
        &self.a
    }

    pub fn offset(&self) -> &[T] {
        &self.b
    }

    /// Operator norm of `A` induced by the base `p`-norm.
    pub fn operator_norm(&self, p: PNorm) -> T {
        let d = self.b.len();
        match p {
            PNorm::Inf => self
                .a
                .iter()
                .map(|row| row.iter().fold(T::zero(), |s, v| s + v.abs()))
                .fold(T::zero(), T::max),
            PNorm::One => (0..d)
                .map(|j| self.a.iter().fold(T::zero(), |s, row| s + row[j].abs()))
                .fold(T::zero(), T::max),
            PNorm::Two => {
                let m = DMatrix::from_fn(d, d, |i, j| self.a[i][j].to_f64_lossy());
                T::lit(m.singular_values().max())
            }
        }
    }
}

impl<T: Scalar> VectorMap<T> for Affine<T> {
    fn dim(&self) -> usize {
        self.b.len()
    }

    fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.b.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} coordinates",
                x.len(),
                self.b.len()
            )));
        }
        Ok(self
            .a
            .iter()
            .zip(&self.b)
            .map(|(row, &b)| row.iter().zip(x).fold(T::zero(), |s, (&a, &v)| s + a * v) + b)
            .collect())
    }
}

/// Map given by a closure.
pub struct FnMap<F> {
    dim: usize,
    f: F,
}

impl<F> FnMap<F> {
    pub fn new(dim: usize, f: F) -> Self {
        FnMap { dim, f }
    }
}

impl<T, F> VectorMap<T> for FnMap<F>
where
    F: Fn(&[T]) -> Vec<T> + Send + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        Ok((self.f)(x))
    }
}

/// A map together with its claimed Lipschitz constant `k ∈ (0, 1)`.
#[derive(Clone)]
pub struct ContractionSpec<T> {
    map: Arc<dyn VectorMap<T>>,
    k: T,
}

impl<T: Scalar> ContractionSpec<T> {
    pub fn new(map: Arc<dyn VectorMap<T>>, k: T) -> Result<Self> {
        if !(k > T::zero() && k < T::one()) {
            return Err(Error::InvalidContraction(format!("k = {k} is not in (0, 1)")));
        }
        Ok(ContractionSpec { map, k })
    }

    /// Affine contraction; `‖A‖_p ≤ k` is checked up to a relative `1e-12`.
    pub fn affine(a: Affine<T>, k: T, p: PNorm) -> Result<Self> {
        let norm = a.operator_norm(p);
        if norm > k * (T::one() + T::lit(1e-12)) {
            return Err(Error::InvalidContraction(format!(
                "operator {}-norm {norm} exceeds k = {k}",
                p.name()
            )));
        }
        Self::new(Arc::new(a), k)
    }

    pub fn map(&self) -> &dyn VectorMap<T> {
        self.map.as_ref()
    }

    pub fn k(&self) -> T {
        self.k
    }
}

impl<T: Scalar> fmt::Debug for ContractionSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContractionSpec")
            .field("dim", &self.map.dim())
            .field("k", &self.k)
            .finish()
    }
}

/// `T x̃_E`: support `T(x)`, grades unchanged.
pub fn op_apply<T: Scalar>(map: &dyn VectorMap<T>, x: &FSVectorPoint<T>) -> Result<FSVectorPoint<T>> {
    if map.dim() != x.dim() {
        return Err(Error::DimensionMismatch(format!(
            "map on {} coordinates, point has {}",
            map.dim(),
            x.dim()
        )));
    }
    let y = map.apply(x.coords())?;
    if y.len() != x.dim() {
        return Err(Error::DimensionMismatch(format!(
            "map returned {} coordinates",
            y.len()
        )));
    }
    Ok(x.with_vector(VectorPoint::new(y)?))
}

/// `‖T x̃ ⊖̃ T ỹ‖ ⪯̃ k̄_E ⊗̃ ‖x̃ ⊖̃ ỹ‖`.
pub fn contraction_inequality<T: Scalar>(
    n: &impl SoftNorm<T>,
    spec: &ContractionSpec<T>,
    x: &FSVectorPoint<T>,
    y: &FSVectorPoint<T>,
) -> Result<bool> {
    let lhs = n.eval(&fs_vec_sub(&op_apply(spec.map(), x)?, &op_apply(spec.map(), y)?)?)?;
    let k = FuzzySoftReal::crisp(spec.k(), n.params().clone(), n.grid().clone()).into_inner();
    lhs.leq(&k.mul(&n.eval(&fs_vec_sub(x, y)?)?)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuityOptions<T> {
    /// Initial probe offset `r_0`.
    pub radius: T,
    /// Probes sit at `x ± r_0 / 2^j` for `j = 1..=halvings`.
    pub halvings: usize,
    /// Convergence radius for the image sequence.
    pub delta: T,
    /// Grade tolerance.
    pub eps: T,
}

impl<T: Scalar> Default for ContinuityOptions<T> {
    fn default() -> Self {
        ContinuityOptions {
            radius: T::one(),
            halvings: 10,
            delta: T::lit(1.0 / 32.0),
            eps: T::lit(1e-9),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContinuityVerdict {
    Continuous,
    /// The images of the probes along `axis` on side `sign` do not approach `T x`.
    Counterexample {
        axis: usize,
        sign: i8,
        probe: usize,
    },
}

impl ContinuityVerdict {
    pub fn is_ok(self) -> bool {
        self == ContinuityVerdict::Continuous
    }
}

impl fmt::Display for ContinuityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContinuityVerdict::Continuous => write!(f, "continuous"),
            ContinuityVerdict::Counterexample { axis, sign, probe } => {
                let side = if *sign < 0 { '-' } else { '+' };
                write!(f, "discontinuous along axis {axis} ({side} side), probe {probe}")
            }
        }
    }
}

/// Sequential continuity at `x̃`: probe points approach `x` along every axis
/// from both sides with the grades of `x̃`, and their images must converge
/// to `T x̃` under `target`.
pub fn continuity_check<T: Scalar>(
    source: &impl SoftNorm<T>,
    target: &impl SoftNorm<T>,
    map: &dyn VectorMap<T>,
    x: &FSVectorPoint<T>,
    opts: &ContinuityOptions<T>,
) -> Result<ContinuityVerdict> {
    let tx = op_apply(map, x)?;
    let two = T::lit(2.0);
    for axis in 0..x.dim() {
        for sign in [-1i8, 1] {
            let mut probes = Vec::with_capacity(opts.halvings);
            let mut step = opts.radius;
            for _ in 0..opts.halvings {
                step = step / two;
                let mut c = x.coords().to_vec();
                c[axis] = c[axis] + T::lit(f64::from(sign)) * step;
                probes.push(x.with_vector(VectorPoint::new(c)?));
            }
            let probes = FSSequence::new(probes)?;
            // the probes approach x by construction; confirm under the source norm
            debug_assert!(seq_converges(source, &probes, x, opts.eps, opts.radius)?.is_ok());
            let images = FSSequence::new(
                probes
                    .points()
                    .iter()
                    .map(|z| op_apply(map, z))
                    .collect::<Result<_>>()?,
            )?;
            if let ConvergenceVerdict::Counterexample { index } =
                seq_converges(target, &images, &tx, opts.eps, opts.delta)?
            {
                return Ok(ContinuityVerdict::Counterexample {
                    axis,
                    sign,
                    probe: index,
                });
            }
        }
    }
    Ok(ContinuityVerdict::Continuous)
}
