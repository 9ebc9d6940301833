//! Fuzzy real numbers as nested families of α-cut intervals on a fixed grid
//! of levels, with level-wise arithmetic.

use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default number of α levels.
pub const DEFAULT_LEVELS: usize = 101;

/// Strictly increasing levels `0 < α_1 < … < α_m = 1`, `m ≥ 2`.
#[derive(Debug, Clone)]
pub struct AlphaGrid<T> {
    levels: Arc<[T]>,
}

impl<T: Scalar> AlphaGrid<T> {
    pub fn new(levels: Vec<T>) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::InvalidGrid("need at least two levels".into()));
        }
        if levels[0] <= T::zero() {
            return Err(Error::InvalidGrid("levels must be positive".into()));
        }
        if levels
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        {
            return Err(Error::InvalidGrid("levels must be strictly increasing".into()));
        }
        if *levels.last().unwrap() != T::one() {
            return Err(Error::InvalidGrid("last level must be exactly 1".into()));
        }
        Ok(AlphaGrid { levels: levels.into() })
    }

    /// `α_j = j/m` for `j = 1..=m`.
    pub fn uniform(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidGrid("need at least two levels".into()));
        }
        let mf = T::from_usize(m).expect("level count representable");
        let mut levels: Vec<T> = (1..=m).map(|j| T::from_usize(j).expect("representable") / mf).collect();
        levels[m - 1] = T::one();
        Self::new(levels)
    }

    pub fn levels(&self) -> &[T] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn lowest(&self) -> T {
        self.levels[0]
    }

    /// Index of `alpha` when it is exactly one of the levels.
    pub fn position(&self, alpha: T) -> Option<usize> {
        self.levels.iter().position(|&a| a == alpha)
    }
}

impl<T: Scalar> Default for AlphaGrid<T> {
    fn default() -> Self {
        Self::uniform(DEFAULT_LEVELS).expect("default grid is valid")
    }
}

impl<T: PartialEq> PartialEq for AlphaGrid<T> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.levels, &other.levels) || self.levels == other.levels
    }
}

/// Closed interval `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cut<T> {
    pub lower: T,
    pub upper: T,
}

impl<T: Scalar> Cut<T> {
    pub fn contains(&self, t: T) -> bool {
        self.lower <= t && t <= self.upper
    }

    pub fn width(&self) -> T {
        self.upper - self.lower
    }
}

/// Level-wise binary operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl ArithOp {
    pub fn name(self) -> &'static str {
        match self {
            ArithOp::Add => "add",
            ArithOp::Sub => "sub",
            ArithOp::Mul => "mul",
            ArithOp::Div => "div",
        }
    }
}

/// Result of an operation together with how far the raw level-wise
/// intervals had to move to become nested again.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalized<T> {
    pub value: FuzzyReal<T>,
    /// Largest endpoint displacement. Zero when the raw family was nested.
    pub delta: T,
}

/// Fuzzy real number given by its cuts `[L(α_j), R(α_j)]`.
///
/// Invariants: `L ≤ R` at every level, `L` non-decreasing and `R`
/// non-increasing in `α`. The top cut is non-empty, so the number is normal.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyReal<T> {
    grid: AlphaGrid<T>,
    lower: Vec<T>,
    upper: Vec<T>,
}

impl<T: Scalar> FuzzyReal<T> {
    pub fn new(grid: AlphaGrid<T>, lower: Vec<T>, upper: Vec<T>) -> Result<Self> {
        if lower.len() != grid.len() || upper.len() != grid.len() {
            return Err(Error::InvalidFuzzyReal(format!(
                "{} levels but {} lower and {} upper endpoints",
                grid.len(),
                lower.len(),
                upper.len()
            )));
        }
        for j in 0..grid.len() {
            if !lower[j].is_finite() || !upper[j].is_finite() {
                return Err(Error::InvalidFuzzyReal(format!("non-finite endpoint at level {j}")));
            }
            if lower[j] > upper[j] {
                return Err(Error::InvalidFuzzyReal(format!(
                    "empty cut at alpha {}: [{}, {}]",
                    grid.levels()[j],
                    lower[j],
                    upper[j]
                )));
            }
            if j > 0 && (lower[j] < lower[j - 1] || upper[j] > upper[j - 1]) {
                return Err(Error::InvalidFuzzyReal(format!(
                    "cuts not nested at alpha {}",
                    grid.levels()[j]
                )));
            }
        }
        Ok(FuzzyReal { grid, lower, upper })
    }

    /// Builds from raw level-wise intervals, restoring nestedness with the
    /// smallest nested family containing every raw cut.
    pub fn from_raw_cuts(grid: AlphaGrid<T>, mut lower: Vec<T>, mut upper: Vec<T>) -> Result<Normalized<T>> {
        let m = grid.len();
        if lower.len() != m || upper.len() != m {
            return Err(Error::InvalidFuzzyReal("endpoint count differs from grid".into()));
        }
        let mut delta = T::zero();
        for j in (0..m.saturating_sub(1)).rev() {
            if lower[j + 1] < lower[j] {
                delta = delta.max(lower[j] - lower[j + 1]);
                lower[j] = lower[j + 1];
            }
            if upper[j + 1] > upper[j] {
                delta = delta.max(upper[j + 1] - upper[j]);
                upper[j] = upper[j + 1];
            }
        }
        let value = Self::new(grid, lower, upper)?;
        Ok(Normalized { value, delta })
    }

    /// Characteristic function of `r`: every cut is `[r, r]`.
    pub fn crisp(r: T, grid: AlphaGrid<T>) -> Self {
        let m = grid.len();
        FuzzyReal {
            grid,
            lower: vec![r; m],
            upper: vec![r; m],
        }
    }

    /// Triangular number with support `[a, c]` and apex `b`.
    pub fn triangular(a: T, b: T, c: T, grid: AlphaGrid<T>) -> Result<Self> {
        if !(a <= b && b <= c) {
            return Err(Error::InvalidTriangle(a.to_string(), b.to_string(), c.to_string()));
        }
        // clamp against the apex so rounding never crosses the endpoints
        let lower = grid.levels().iter().map(|&al| (a + al * (b - a)).min(b)).collect();
        let upper = grid.levels().iter().map(|&al| (c - al * (c - b)).max(b)).collect();
        Self::new(grid, lower, upper)
    }

    pub fn grid(&self) -> &AlphaGrid<T> {
        &self.grid
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn cut(&self, level: usize) -> Cut<T> {
        Cut {
            lower: self.lower[level],
            upper: self.upper[level],
        }
    }

    /// Cut at `alpha`, which must be a grid level.
    pub fn cut_at(&self, alpha: T) -> Result<Cut<T>> {
        let j = self
            .grid
            .position(alpha)
            .ok_or_else(|| Error::OffGridAlpha(alpha.to_string()))?;
        Ok(self.cut(j))
    }

    /// Lowest cut, taken as the support.
    pub fn support(&self) -> Cut<T> {
        self.cut(0)
    }

    pub fn is_crisp(&self) -> bool {
        let r = self.lower[0];
        self.lower.iter().chain(&self.upper).all(|&v| v == r)
    }

    pub fn is_non_negative(&self) -> bool {
        self.lower[0] >= T::zero()
    }

    /// Membership grade recovered from the cuts: the largest level whose cut
    /// contains `t`, or 0.
    pub fn membership(&self, t: T) -> T {
        if !self.cut(0).contains(t) {
            return T::zero();
        }
        // cuts shrink with j, so "t in cut j" holds on a prefix
        let (mut lo, mut hi) = (0usize, self.grid.len() - 1);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.cut(mid).contains(t) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        self.grid.levels()[lo]
    }

    /// Level-wise arithmetic; see [`ArithOp`].
    pub fn apply(&self, op: ArithOp, other: &Self) -> Result<Normalized<T>> {
        self.check_grid(other)?;
        let m = self.grid.len();
        let mut lower = Vec::with_capacity(m);
        let mut upper = Vec::with_capacity(m);
        for j in 0..m {
            let (a1, a2) = (self.lower[j], self.upper[j]);
            let (b1, b2) = (other.lower[j], other.upper[j]);
            let (l, r) = match op {
                ArithOp::Add => (a1 + b1, a2 + b2),
                ArithOp::Sub => {
                    let (x, y) = (a1 - b1, a2 - b2);
                    (x.min(y), x.max(y))
                }
                ArithOp::Mul => min_max([a1 * b1, a2 * b2, a1 * b2, a2 * b1]),
                ArithOp::Div => {
                    if b1 <= T::zero() && b2 >= T::zero() {
                        return Err(Error::DivisionByIntervalContainingZero {
                            alpha: self.grid.levels()[j].to_string(),
                            lower: b1.to_string(),
                            upper: b2.to_string(),
                        });
                    }
                    min_max([a1 / b1, a2 / b2, a1 / b2, a2 / b1])
                }
            };
            lower.push(l);
            upper.push(r);
        }
        Self::from_raw_cuts(self.grid.clone(), lower, upper)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.apply(ArithOp::Add, other).map(|n| n.value)
    }

    /// `[min{a¹−b¹, a²−b²}, max{a¹−b¹, a²−b²}]` per level, then normalized.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.apply(ArithOp::Sub, other).map(|n| n.value)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.apply(ArithOp::Mul, other).map(|n| n.value)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.apply(ArithOp::Div, other).map(|n| n.value)
    }

    /// `[max{0, a¹, −a²}, max{|a¹|, |a²|}]` per level.
    pub fn abs(&self) -> NonNegFuzzyReal<T> {
        let m = self.grid.len();
        let mut lower = Vec::with_capacity(m);
        let mut upper = Vec::with_capacity(m);
        for j in 0..m {
            let (a1, a2) = (self.lower[j], self.upper[j]);
            lower.push(T::zero().max(a1).max(-a2));
            upper.push(a1.abs().max(a2.abs()));
        }
        let value =
            FuzzyReal::new(self.grid.clone(), lower, upper).expect("absolute value of a nested family is nested");
        NonNegFuzzyReal(value)
    }

    /// `self ⪯ other`: both endpoints ordered at every level.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_grid(other)?;
        Ok((0..self.grid.len()).all(|j| self.lower[j] <= other.lower[j] && self.upper[j] <= other.upper[j]))
    }

    /// Cut-wise equality with endpoint tolerance `tol`.
    pub fn approx_eq(&self, other: &Self, tol: T) -> Result<bool> {
        Ok(self.max_deviation(other)? <= tol)
    }

    /// Largest endpoint difference over all levels.
    pub fn max_deviation(&self, other: &Self) -> Result<T> {
        self.check_grid(other)?;
        Ok((0..self.grid.len()).fold(T::zero(), |acc, j| {
            acc.max((self.lower[j] - other.lower[j]).abs())
                .max((self.upper[j] - other.upper[j]).abs())
        }))
    }

    pub fn scale(&self, r: T) -> Self {
        let crisp = FuzzyReal::crisp(r, self.grid.clone());
        self.mul(&crisp).expect("same grid")
    }

    fn check_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }
}

fn min_max<T: Scalar>(v: [T; 4]) -> (T, T) {
    let lo = v.iter().copied().fold(T::infinity(), T::min);
    let hi = v.iter().copied().fold(T::neg_infinity(), T::max);
    (lo, hi)
}

/// Fuzzy real with `L(α_1) ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonNegFuzzyReal<T>(FuzzyReal<T>);

impl<T: Scalar> NonNegFuzzyReal<T> {
    pub fn into_inner(self) -> FuzzyReal<T> {
        self.0
    }
}

impl<T: Scalar> TryFrom<FuzzyReal<T>> for NonNegFuzzyReal<T> {
    type Error = Error;

    fn try_from(value: FuzzyReal<T>) -> Result<Self> {
        if !value.is_non_negative() {
            return Err(Error::InvalidFuzzyReal(format!(
                "lowest cut starts at {} < 0",
                value.lower[0]
            )));
        }
        Ok(NonNegFuzzyReal(value))
    }
}

impl<T> Deref for NonNegFuzzyReal<T> {
    type Target = FuzzyReal<T>;

    fn deref(&self) -> &FuzzyReal<T> {
        &self.0
    }
}
