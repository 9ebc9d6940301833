//! Fuzzy soft real numbers: one fuzzy real per parameter, all on one grid.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::real::{AlphaGrid, ArithOp, Cut, FuzzyReal};
use crate::scalar::Scalar;
use crate::soft::ParameterSet;

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySoftReal<T> {
    params: ParameterSet,
    grid: AlphaGrid<T>,
    values: Vec<FuzzyReal<T>>,
}

impl<T: Scalar> FuzzySoftReal<T> {
    pub fn new(params: ParameterSet, values: Vec<FuzzyReal<T>>) -> Result<Self> {
        if values.len() != params.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} parameters",
                values.len(),
                params.len()
            )));
        }
        let grid = values[0].grid().clone();
        if values.iter().any(|v| *v.grid() != grid) {
            return Err(Error::GridMismatch);
        }
        Ok(FuzzySoftReal { params, grid, values })
    }

    /// `r̄_E`: the crisp number `r` at every parameter.
    pub fn crisp(r: T, params: ParameterSet, grid: AlphaGrid<T>) -> CrispFSReal<T> {
        let values = vec![FuzzyReal::crisp(r, grid.clone()); params.len()];
        CrispFSReal {
            value: r,
            inner: FuzzySoftReal { params, grid, values },
        }
    }

    /// Parameter-wise triangular numbers `(a, b, c)`, sampled on `grid`.
    pub fn triangular(params: ParameterSet, grid: AlphaGrid<T>, abc: &[(T, T, T)]) -> Result<Self> {
        let values = abc
            .iter()
            .map(|&(a, b, c)| FuzzyReal::triangular(a, b, c, grid.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(params, values)
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn grid(&self) -> &AlphaGrid<T> {
        &self.grid
    }

    pub fn values(&self) -> &[FuzzyReal<T>] {
        &self.values
    }

    pub fn value(&self, param: &str) -> Result<&FuzzyReal<T>> {
        self.params
            .index_of(param)
            .map(|i| &self.values[i])
            .ok_or_else(|| Error::UnknownParameter(param.to_string()))
    }

    /// `[r̃_E]_{e,α}`. `alpha` must be a grid level.
    pub fn level(&self, param: &str, alpha: T) -> Result<Cut<T>> {
        self.value(param)?.cut_at(alpha)
    }

    pub fn is_non_negative(&self) -> bool {
        self.values.iter().all(FuzzyReal::is_non_negative)
    }

    /// The common value `r` if every cut is `[r, r]`.
    pub fn crisp_value(&self) -> Option<T> {
        let r = self.values[0].lower()[0];
        self.values
            .iter()
            .all(|v| v.is_crisp() && v.lower()[0] == r)
            .then_some(r)
    }

    pub fn apply(&self, op: ArithOp, other: &Self) -> Result<Self> {
        self.check(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.apply(op, b).map(|n| n.value))
            .collect::<Result<Vec<_>>>()?;
        Ok(FuzzySoftReal {
            params: self.params.clone(),
            grid: self.grid.clone(),
            values,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.apply(ArithOp::Add, other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.apply(ArithOp::Sub, other)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.apply(ArithOp::Mul, other)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.apply(ArithOp::Div, other)
    }

    pub fn abs(&self) -> Self {
        FuzzySoftReal {
            params: self.params.clone(),
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v.abs().into_inner()).collect(),
        }
    }

    /// `r̃ ⪯̃ r̃′`: parameter-wise fuzzy real order.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        for (a, b) in self.values.iter().zip(&other.values) {
            if !a.leq(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First parameter at which `self ⪯̃ other` fails.
    pub fn leq_witness(&self, other: &Self) -> Result<Option<String>> {
        self.check(other)?;
        for (i, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            if !a.leq(b)? {
                return Ok(Some(self.params.label(i).to_string()));
            }
        }
        Ok(None)
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> Result<bool> {
        Ok(self.max_deviation(other)? <= tol)
    }

    pub fn max_deviation(&self, other: &Self) -> Result<T> {
        self.check(other)?;
        self.values
            .iter()
            .zip(&other.values)
            .try_fold(T::zero(), |acc, (a, b)| Ok(acc.max(a.max_deviation(b)?)))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParameterMismatch);
        }
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }
}

/// Fuzzy soft real whose every cut is the degenerate `[r, r]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrispFSReal<T> {
    value: T,
    inner: FuzzySoftReal<T>,
}

impl<T: Scalar> CrispFSReal<T> {
    pub fn value(&self) -> T {
        self.value
    }

    pub fn into_inner(self) -> FuzzySoftReal<T> {
        self.inner
    }
}

impl<T: Scalar> TryFrom<FuzzySoftReal<T>> for CrispFSReal<T> {
    type Error = Error;

    fn try_from(inner: FuzzySoftReal<T>) -> Result<Self> {
        let value = inner
            .crisp_value()
            .ok_or_else(|| Error::InvalidFuzzyReal("not a crisp fuzzy soft real".into()))?;
        Ok(CrispFSReal { value, inner })
    }
}

impl<T> Deref for CrispFSReal<T> {
    type Target = FuzzySoftReal<T>;

    fn deref(&self) -> &FuzzySoftReal<T> {
        &self.inner
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params() -> ParameterSet {
        ParameterSet::new(["e1", "e2", "e3"]).unwrap()
    }

    fn grid() -> AlphaGrid<f64> {
        AlphaGrid::default()
    }

    fn crisp(r: f64) -> FuzzySoftReal<f64> {
        FuzzySoftReal::crisp(r, params(), grid()).into_inner()
    }

    fn sample() -> FuzzySoftReal<f64> {
        FuzzySoftReal::triangular(params(), grid(), &[(0.0, 1.0, 2.0), (-3.0, -2.0, 5.0), (4.0, 4.0, 4.5)]).unwrap()
    }

    #[test]
    fn crisp_numbers() {
        let zero = FuzzySoftReal::crisp(0.0, params(), grid());
        assert_eq!(zero.value(), 0.0);
        assert!(zero.values().iter().all(|v| v.is_crisp() && v.lower()[0] == 0.0));
        let five = crisp(5.0);
        assert_eq!(
            five.level("e2", grid().levels()[40]).unwrap(),
            Cut { lower: 5.0, upper: 5.0 }
        );
        assert!(five.is_non_negative());
        assert!(!crisp(-0.5).is_non_negative());
        assert!(CrispFSReal::try_from(sample()).is_err());
        assert_eq!(CrispFSReal::try_from(crisp(2.0)).unwrap().value(), 2.0);
    }

    #[test]
    fn levels() {
        let s = sample();
        assert_eq!(
            s.level("e2", 1.0).unwrap(),
            Cut {
                lower: -2.0,
                upper: -2.0
            }
        );
        assert_eq!(
            s.level("e1", grid().levels()[10]).unwrap(),
            s.value("e1").unwrap().cut(10)
        );
        assert!(matches!(s.level("e9", 1.0), Err(Error::UnknownParameter(_))));
        assert!(matches!(s.level("e1", 0.123456), Err(Error::OffGridAlpha(_))));
    }

    #[test]
    fn order() {
        let s = sample();
        assert!(s.leq(&s).unwrap());
        assert!(crisp(1.0).leq(&crisp(2.0)).unwrap());
        // cross e3 only: tri(4,4,4.5) vs crisp 4.2 → lower 4 ≤ 4.2 but upper 4.5 > 4.2 at low α
        let mut vals = s.values().to_vec();
        let shifted = s.add(&crisp(10.0)).unwrap();
        assert!(s.leq(&shifted).unwrap());
        vals[2] = FuzzyReal::crisp(4.2, grid());
        let crossed = FuzzySoftReal::new(params(), vals).unwrap();
        assert!(!s.leq(&crossed).unwrap());
        assert_eq!(s.leq_witness(&crossed).unwrap().as_deref(), Some("e3"));
    }

    #[test]
    fn arithmetic_identities() {
        let s = sample();
        assert_eq!(s.add(&crisp(0.0)).unwrap(), s);
        assert_eq!(s.mul(&crisp(1.0)).unwrap(), s);
        assert_eq!(crisp(2.0).add(&crisp(3.0)).unwrap(), crisp(5.0));
        let other = FuzzySoftReal::crisp(1.0, ParameterSet::new(["x"]).unwrap(), grid()).into_inner();
        assert_eq!(s.add(&other), Err(Error::ParameterMismatch));
    }

    #[test]
    fn absolute_value() {
        assert_eq!(crisp(-3.0).abs(), crisp(3.0));
        assert_eq!(crisp(0.0).abs(), crisp(0.0));
        assert!(sample().abs().is_non_negative());
    }

    #[test]
    fn division_error_propagates() {
        let err = sample().div(&sample()).unwrap_err();
        assert!(matches!(err, Error::DivisionByIntervalContainingZero { .. }));
    }

    proptest! {
        #[test]
        fn crisp_lemmas(r in -1e6..1e6f64, x in -1e6..1e6f64) {
            prop_assert_eq!(crisp(r).abs(), crisp(r.abs()));
            prop_assert_eq!(crisp(r).mul(&crisp(x)).unwrap(), crisp(r * x));
        }
    }
}
