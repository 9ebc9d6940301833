//! Finite prefixes of fuzzy soft sequences and their convergence and Cauchy
//! verdicts. Indices in verdicts are 1-based, matching `x_1, x_2, …`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::soft::ParameterSet;

use super::norm::SoftNorm;
use super::point::FSVectorPoint;

/// Smallest tail accepted by [`seq_is_cauchy`] when no length is given.
pub const DEFAULT_MIN_TAIL: usize = 2;

/// Non-empty list of points sharing dimension and parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct FSSequence<T> {
    points: Vec<FSVectorPoint<T>>,
}

impl<T: Scalar> FSSequence<T> {
    pub fn new(points: Vec<FSVectorPoint<T>>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::DimensionMismatch("a sequence needs at least one point".into()))?;
        for p in &points[1..] {
            first.check_space(p)?;
        }
        Ok(FSSequence { points })
    }

    pub fn points(&self) -> &[FSVectorPoint<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn params(&self) -> &ParameterSet {
        self.points[0].params()
    }

    /// `x_n`, 1-based.
    pub fn get(&self, n: usize) -> Option<&FSVectorPoint<T>> {
        n.checked_sub(1).and_then(|i| self.points.get(i))
    }

    /// Points at the given 0-based positions, which must be strictly increasing.
    pub fn subsequence(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidSubsequence("no indices".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSubsequence(format!(
                "{indices:?} is not strictly increasing"
            )));
        }
        if let Some(&i) = indices.iter().find(|&&i| i >= self.len()) {
            return Err(Error::InvalidSubsequence(format!(
                "index {i} out of range for length {}",
                self.len()
            )));
        }
        Ok(FSSequence {
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        })
    }
}

/// `subsequence(seq, indices)`.
pub fn subsequence<T: Scalar>(seq: &FSSequence<T>, indices: &[usize]) -> Result<FSSequence<T>> {
    seq.subsequence(indices)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceVerdict {
    /// Every `x_n` with `n ≥ n_0` is within the probe radius.
    Converges { n: usize },
    /// The last element fails; `index` is the last failing position.
    Counterexample { index: usize },
}

impl ConvergenceVerdict {
    pub fn is_ok(self) -> bool {
        matches!(self, ConvergenceVerdict::Converges { .. })
    }
}

impl fmt::Display for ConvergenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvergenceVerdict::Converges { n } => write!(f, "converges from N = {n}"),
            ConvergenceVerdict::Counterexample { index } => write!(f, "counterexample at n = {index}"),
        }
    }
}

/// Finite-prefix convergence to `limit`: the smallest `N` such that for all
/// `n ≥ N`, `‖x_n − x‖^i_{e,α} < delta` and `|λ_{e,n} − γ_e| < eps` for every
/// `(e, α, i)`.
pub fn seq_converges<T: Scalar>(
    n: &impl SoftNorm<T>,
    seq: &FSSequence<T>,
    limit: &FSVectorPoint<T>,
    eps: T,
    delta: T,
) -> Result<ConvergenceVerdict> {
    seq.points[0].check_space(limit)?;
    let mut last_bad = 0;
    for (i, x) in seq.points.iter().enumerate() {
        let dist = n.magnitude(&x.vector().sub(limit.vector())?);
        let grades_close = x
            .lambda()
            .iter()
            .zip(limit.lambda())
            .all(|(a, b)| (a.value() - b.value()).abs() < eps);
        if !(dist < delta && grades_close) {
            last_bad = i + 1;
        }
    }
    Ok(if last_bad == seq.len() {
        ConvergenceVerdict::Counterexample { index: last_bad }
    } else {
        ConvergenceVerdict::Converges { n: last_bad + 1 }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CauchyVerdict {
    Cauchy {
        n: usize,
    },
    /// `(n, m)` with `n < m` violating the bound, `n` as large as possible.
    Counterexample {
        n: usize,
        m: usize,
    },
    /// The prefix is shorter than the minimum tail.
    TooShort {
        len: usize,
        min_tail: usize,
    },
}

impl CauchyVerdict {
    pub fn is_ok(self) -> bool {
        matches!(self, CauchyVerdict::Cauchy { .. })
    }
}

impl fmt::Display for CauchyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CauchyVerdict::Cauchy { n } => write!(f, "Cauchy from N = {n}"),
            CauchyVerdict::Counterexample { n, m } => write!(f, "counterexample at (n, m) = ({n}, {m})"),
            CauchyVerdict::TooShort { len, min_tail } => {
                write!(f, "prefix of length {len} is shorter than the minimum tail {min_tail}")
            }
        }
    }
}

/// Finite-prefix Cauchy check: the smallest `N` with `‖x_n − x_m‖^i_{e,α} ≤ eps`
/// and `|λ_{e,n} − λ_{e,m}| ≤ eps` for all `n, m ≥ N`. The tail from `N` must
/// hold at least `min_tail` points.
pub fn seq_is_cauchy<T: Scalar>(
    n: &impl SoftNorm<T>,
    seq: &FSSequence<T>,
    eps: T,
    min_tail: usize,
) -> Result<CauchyVerdict> {
    let len = seq.len();
    if len < min_tail.max(1) {
        return Ok(CauchyVerdict::TooShort { len, min_tail });
    }
    let mut worst: Option<(usize, usize)> = None;
    'outer: for i in (0..len).rev() {
        for j in i + 1..len {
            let (a, b) = (&seq.points[i], &seq.points[j]);
            let dist = n.magnitude(&a.vector().sub(b.vector())?);
            let grades_close = a
                .lambda()
                .iter()
                .zip(b.lambda())
                .all(|(x, y)| (x.value() - y.value()).abs() <= eps);
            if !(dist <= eps && grades_close) {
                worst = Some((i + 1, j + 1));
                break 'outer;
            }
        }
    }
    let start = worst.map_or(1, |(i, _)| i + 1);
    Ok(match worst {
        Some((i, j)) if len + 1 - start < min_tail.max(1) => CauchyVerdict::Counterexample { n: i, m: j },
        _ => CauchyVerdict::Cauchy { n: start },
    })
}
