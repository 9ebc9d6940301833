//! Vectors in `ℝ^d`, fuzzy soft points over them, and finitely supported
//! fuzzy soft sets for the sup-min vector operations.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fuzzy::Grade;
use crate::scalar::Scalar;
use crate::soft::ParameterSet;

/// Base `p`-norm on `ℝ^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PNorm {
    One,
    Two,
    Inf,
}

impl PNorm {
    pub fn eval<T: Scalar>(self, x: &[T]) -> T {
        match self {
            PNorm::One => x.iter().fold(T::zero(), |acc, v| acc + v.abs()),
            PNorm::Two => x.iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt(),
            PNorm::Inf => x.iter().fold(T::zero(), |acc, v| acc.max(v.abs())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PNorm::One => "1",
            PNorm::Two => "2",
            PNorm::Inf => "inf",
        }
    }
}

impl std::str::FromStr for PNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(PNorm::One),
            "2" => Ok(PNorm::Two),
            "inf" | "infinity" => Ok(PNorm::Inf),
            _ => Err(Error::UnknownNorm(s.to_string())),
        }
    }
}

/// Finite vector `x ∈ ℝ^d`, `d ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorPoint<T> {
    coords: Vec<T>,
}

impl<T: Scalar> VectorPoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch("vectors need at least one coordinate".into()));
        }
        if let Some(i) = coords.iter().position(|v| !v.is_finite()) {
            return Err(Error::DimensionMismatch(format!("coordinate {i} is not finite")));
        }
        // fold -0 so equal vectors compare and hash alike
        Ok(VectorPoint {
            coords: coords.into_iter().map(|v| v + T::zero()).collect(),
        })
    }

    pub fn zero(d: usize) -> Self {
        VectorPoint {
            coords: vec![T::zero(); d.max(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, r: T) -> Result<Self> {
        Self::new(self.coords.iter().map(|&v| r * v).collect())
    }

    pub fn norm(&self, p: PNorm) -> T {
        p.eval(&self.coords)
    }

    fn zip(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} coordinates",
                self.dim(),
                other.dim()
            )));
        }
        Self::new(self.coords.iter().zip(&other.coords).map(|(&a, &b)| f(a, b)).collect())
    }

    fn key(&self) -> Vec<(u64, i16, i8)> {
        self.coords.iter().map(|v| v.key()).collect()
    }
}

/// Fuzzy soft point `x̃_E` over `ℝ^d`: support `x` with grade `λ_e ∈ (0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FSVectorPoint<T> {
    vector: VectorPoint<T>,
    params: ParameterSet,
    lambda: Vec<Grade<T>>,
}

impl<T: Scalar> FSVectorPoint<T> {
    pub fn new(vector: VectorPoint<T>, params: ParameterSet, lambda: &[T]) -> Result<Self> {
        if lambda.len() != params.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} grades for {} parameters",
                lambda.len(),
                params.len()
            )));
        }
        let lambda = lambda.iter().map(|&v| Grade::positive(v)).collect::<Result<_>>()?;
        Ok(FSVectorPoint { vector, params, lambda })
    }

    /// Crisp point `x̄_E`.
    pub fn crisp(vector: VectorPoint<T>, params: ParameterSet) -> Self {
        let lambda = vec![Grade::one(); params.len()];
        FSVectorPoint { vector, params, lambda }
    }

    pub fn vector(&self) -> &VectorPoint<T> {
        &self.vector
    }

    pub fn coords(&self) -> &[T] {
        self.vector.coords()
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn lambda(&self) -> &[Grade<T>] {
        &self.lambda
    }

    /// Same grades, new support.
    pub fn with_vector(&self, vector: VectorPoint<T>) -> Self {
        FSVectorPoint {
            vector,
            params: self.params.clone(),
            lambda: self.lambda.clone(),
        }
    }

    pub fn is_distinct(&self, other: &Self) -> bool {
        self.vector != other.vector
    }

    pub(crate) fn check_space(&self, other: &Self) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParameterMismatch);
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} coordinates",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    fn to_set(&self) -> FiniteFsSet<T> {
        FiniteFsSet {
            params: self.params.clone(),
            dim: self.dim(),
            entries: vec![(self.vector.clone(), self.lambda.clone())],
        }
    }
}

/// Fuzzy soft set over `ℝ^d` with finite support. Vectors not listed have
/// grade 0 at every parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteFsSet<T> {
    params: ParameterSet,
    dim: usize,
    entries: Vec<(VectorPoint<T>, Vec<Grade<T>>)>,
}

impl<T: Scalar> FiniteFsSet<T> {
    /// Entries with equal vectors are merged by `max`; all-zero entries are dropped.
    pub fn new(params: ParameterSet, dim: usize, entries: Vec<(VectorPoint<T>, Vec<Grade<T>>)>) -> Result<Self> {
        for (v, g) in &entries {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch(format!("{} vs {} coordinates", v.dim(), dim)));
            }
            if g.len() != params.len() {
                return Err(Error::DimensionMismatch(format!(
                    "{} grades for {} parameters",
                    g.len(),
                    params.len()
                )));
            }
        }
        Ok(FiniteFsSet {
            params,
            dim,
            entries: merge(entries),
        })
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn entries(&self) -> &[(VectorPoint<T>, Vec<Grade<T>>)] {
        &self.entries
    }

    /// `f_e(z)`.
    pub fn grade(&self, e: usize, z: &VectorPoint<T>) -> Grade<T> {
        self.entries
            .iter()
            .find(|(v, _)| v == z)
            .map_or(Grade::zero(), |(_, g)| g[e])
    }

    /// `(f ⊕̃ g)_e(z) = sup_{x1 + x2 = z} min(f_e(x1), g_e(x2))`.
    pub fn sup_min_add(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(Error::ParameterMismatch);
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} coordinates",
                self.dim, other.dim
            )));
        }
        let mut out = Vec::with_capacity(self.entries.len() * other.entries.len());
        for (x1, f) in &self.entries {
            for (x2, g) in &other.entries {
                let grades = f.iter().zip(g).map(|(&a, &b)| a.min(b)).collect();
                out.push((x1.add(x2)?, grades));
            }
        }
        Ok(FiniteFsSet {
            params: self.params.clone(),
            dim: self.dim,
            entries: merge(out),
        })
    }

    /// `(r̄ ⊗̃ f)_e(z)`: `f_e(z/r)` for `r ≠ 0`; for `r = 0` the whole mass
    /// `sup_x f_e(x)` sits at the origin.
    pub fn crisp_scale(&self, r: T) -> Result<Self> {
        let entries = if r.is_zero() {
            let sup = (0..self.params.len())
                .map(|e| self.entries.iter().fold(Grade::zero(), |acc, (_, g)| acc.max(g[e])))
                .collect();
            vec![(VectorPoint::zero(self.dim), sup)]
        } else {
            self.entries
                .iter()
                .map(|(v, g)| Ok((v.scale(r)?, g.clone())))
                .collect::<Result<_>>()?
        };
        Ok(FiniteFsSet {
            params: self.params.clone(),
            dim: self.dim,
            entries: merge(entries),
        })
    }

    /// The fuzzy soft point this set equals, if its support is one vector
    /// with every grade positive.
    pub fn as_point(&self) -> Option<FSVectorPoint<T>> {
        match self.entries.as_slice() {
            [(v, g)] if g.iter().all(|g| !g.is_zero()) => Some(FSVectorPoint {
                vector: v.clone(),
                params: self.params.clone(),
                lambda: g.clone(),
            }),
            _ => None,
        }
    }
}

fn merge<T: Scalar>(entries: Vec<(VectorPoint<T>, Vec<Grade<T>>)>) -> Vec<(VectorPoint<T>, Vec<Grade<T>>)> {
    let mut slot: HashMap<Vec<(u64, i16, i8)>, usize> = HashMap::new();
    let mut out: Vec<(VectorPoint<T>, Vec<Grade<T>>)> = Vec::new();
    for (v, g) in entries {
        match slot.get(&v.key()) {
            Some(&i) => {
                for (a, b) in out[i].1.iter_mut().zip(g) {
                    *a = a.max(b);
                }
            }
            None => {
                slot.insert(v.key(), out.len());
                out.push((v, g));
            }
        }
    }
    out.retain(|(_, g)| g.iter().any(|g| !g.is_zero()));
    out
}

/// Sup-min sum of two points together with its reduction to a point.
#[derive(Debug, Clone, PartialEq)]
pub struct VecSum<T> {
    pub set: FiniteFsSet<T>,
    pub point: FSVectorPoint<T>,
}

/// `x̃ ⊕̃ ỹ`: support `x + y`, grades `min(λ_e, γ_e)`.
pub fn fs_vec_add<T: Scalar>(x: &FSVectorPoint<T>, y: &FSVectorPoint<T>) -> Result<VecSum<T>> {
    x.check_space(y)?;
    let set = x.to_set().sup_min_add(&y.to_set())?;
    let point = set.as_point().expect("sum of two points is a point");
    Ok(VecSum { set, point })
}

/// `x̃ ⊖̃ ỹ`: support `x − y`, grades `min(λ_e, γ_e)`.
pub fn fs_vec_sub<T: Scalar>(x: &FSVectorPoint<T>, y: &FSVectorPoint<T>) -> Result<FSVectorPoint<T>> {
    x.check_space(y)?;
    let lambda = x.lambda.iter().zip(&y.lambda).map(|(&a, &b)| a.min(b)).collect();
    Ok(FSVectorPoint {
        vector: x.vector.sub(&y.vector)?,
        params: x.params.clone(),
        lambda,
    })
}

/// `r̄_E ⊗̃ x̃`: support `r·x`, grades unchanged.
pub fn fs_scalar_mul<T: Scalar>(r: T, x: &FSVectorPoint<T>) -> Result<FSVectorPoint<T>> {
    Ok(x.to_set().crisp_scale(r)?.as_point().expect("scaled point is a point"))
}
