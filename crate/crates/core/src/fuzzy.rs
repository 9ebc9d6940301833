//! Grades, finite universes and plain fuzzy sets.
//!
//! Grades are stored as plain floats and compared exactly. `max` and `min`
//! are exact, so the lattice laws hold bit for bit. `1 - x` is exact for
//! `x ≥ 1/2` and for any `x` on the `2^-53` dyadic lattice (every grade the
//! seeded generators produce); elsewhere a double complement can move a
//! grade by half an ulp of 1.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Membership degree in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Grade<T>(T);

impl<T: Scalar> Grade<T> {
    pub fn new(value: T) -> Result<Self> {
        if value.is_nan() || value < T::zero() || value > T::one() {
            return Err(Error::GradeOutOfRange(value.to_string()));
        }
        // fold -0 into +0 so equal grades share one bit pattern
        Ok(Grade(value + T::zero()))
    }

    /// Grade in `(0, 1]`, as carried by fuzzy soft points.
    pub fn positive(value: T) -> Result<Self> {
        let g = Self::new(value)?;
        if g.0 <= T::zero() {
            return Err(Error::NonPositiveGrade(value.to_string()));
        }
        Ok(g)
    }

    pub fn zero() -> Self {
        Grade(T::zero())
    }

    pub fn one() -> Self {
        Grade(T::one())
    }

    pub fn value(self) -> T {
        self.0
    }

    pub fn complement(self) -> Self {
        Grade(T::one() - self.0)
    }

    pub fn max(self, other: Self) -> Self {
        if other.0 > self.0 {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }

    pub fn is_zero(self) -> bool {
        self.0 == T::zero()
    }
}

impl<T: Scalar> fmt::Display for Grade<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Set of objects, as indices into a [`Universe`].
pub type ObjectSet = BTreeSet<usize>;

/// Finite, ordered, non-empty collection of distinct object labels.
#[derive(Debug, Clone)]
pub struct Universe {
    objects: Arc<[String]>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let objects: Vec<String> = labels.into_iter().map(Into::into).collect();
        if objects.is_empty() {
            return Err(Error::InvalidUniverse("universe is empty".into()));
        }
        let mut seen = BTreeSet::new();
        for label in &objects {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidUniverse(format!("duplicate object `{label}`")));
            }
        }
        Ok(Universe {
            objects: objects.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.objects
    }

    pub fn label(&self, index: usize) -> &str {
        &self.objects[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn full(&self) -> ObjectSet {
        (0..self.len()).collect()
    }

    /// Labels of `set`, in universe order.
    pub fn names(&self, set: &ObjectSet) -> Vec<String> {
        set.iter().map(|&i| self.objects[i].clone()).collect()
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.objects, &other.objects) || self.objects == other.objects
    }
}

impl Eq for Universe {}

/// Fuzzy subset of a finite universe: one grade per object.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet<T> {
    universe: Universe,
    grades: Vec<Grade<T>>,
}

impl<T: Scalar> FuzzySet<T> {
    pub fn new(universe: Universe, grades: Vec<Grade<T>>) -> Result<Self> {
        if grades.len() != universe.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} grades for a universe of {} objects",
                grades.len(),
                universe.len()
            )));
        }
        Ok(FuzzySet { universe, grades })
    }

    pub fn from_values(universe: Universe, values: &[T]) -> Result<Self> {
        let grades = values.iter().map(|&v| Grade::new(v)).collect::<Result<_>>()?;
        Self::new(universe, grades)
    }

    pub fn constant(universe: Universe, grade: Grade<T>) -> Self {
        let grades = vec![grade; universe.len()];
        FuzzySet { universe, grades }
    }

    /// The empty fuzzy set `0`.
    pub fn empty(universe: Universe) -> Self {
        Self::constant(universe, Grade::zero())
    }

    /// The whole universe `1`.
    pub fn whole(universe: Universe) -> Self {
        Self::constant(universe, Grade::one())
    }

    /// Characteristic function of a crisp subset.
    pub fn characteristic(universe: Universe, set: &ObjectSet) -> Self {
        let grades = (0..universe.len())
            .map(|i| if set.contains(&i) { Grade::one() } else { Grade::zero() })
            .collect();
        FuzzySet { universe, grades }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn grades(&self) -> &[Grade<T>] {
        &self.grades
    }

    pub fn grade(&self, object: usize) -> Grade<T> {
        self.grades[object]
    }

    pub fn complement(&self) -> Self {
        FuzzySet {
            universe: self.universe.clone(),
            grades: self.grades.iter().map(|g| g.complement()).collect(),
        }
    }

    pub fn max(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, Grade::max)
    }

    pub fn min(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, Grade::min)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Grade<T>, Grade<T>) -> Grade<T>) -> Result<Self> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        Ok(FuzzySet {
            universe: self.universe.clone(),
            grades: self.grades.iter().zip(&other.grades).map(|(&a, &b)| op(a, b)).collect(),
        })
    }

    /// `{x : grade(x) >= alpha}` for `alpha` in `(0, 1]`.
    pub fn alpha_cut(&self, alpha: T) -> Result<ObjectSet> {
        if !(alpha > T::zero() && alpha <= T::one()) {
            return Err(Error::InvalidAlpha(alpha.to_string()));
        }
        Ok(self.indices_where(|g| g >= alpha))
    }

    /// `{x : grade(x) > 0}`.
    pub fn support(&self) -> ObjectSet {
        self.indices_where(|g| g > T::zero())
    }

    /// Strict superlevel set `{x : grade(x) > t}`.
    pub fn superlevel(&self, t: T) -> ObjectSet {
        self.indices_where(|g| g > t)
    }

    /// Pointwise `self <= other`.
    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        Ok(self.grades.iter().zip(&other.grades).all(|(a, b)| a <= b))
    }

    fn indices_where(&self, pred: impl Fn(T) -> bool) -> ObjectSet {
        self.grades
            .iter()
            .enumerate()
            .filter(|(_, g)| pred(g.value()))
            .map(|(i, _)| i)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> Universe {
        Universe::new(["A", "B", "C"]).unwrap()
    }

    fn set(values: &[f64]) -> FuzzySet<f64> {
        FuzzySet::from_values(abc(), values).unwrap()
    }

    #[test]
    fn grade_rejects_out_of_range() {
        assert!(Grade::new(1.2).is_err());
        assert!(Grade::new(-0.1).is_err());
        assert!(Grade::new(f64::NAN).is_err());
        assert!(Grade::positive(0.0).is_err());
        assert_eq!(Grade::new(-0.0f64).unwrap().value().to_bits(), 0.0f64.to_bits());
    }

    #[test]
    fn universe_rejects_empty_and_duplicates() {
        assert!(Universe::new(Vec::<String>::new()).is_err());
        assert!(Universe::new(["A", "A"]).is_err());
    }

    #[test]
    fn complement_of_forest_row() {
        let c = set(&[0.8, 0.3, 0.5]).complement();
        let got: Vec<f64> = c.grades().iter().map(|g| g.value()).collect();
        assert_eq!(got, vec![1.0 - 0.8, 0.7, 0.5]);
        assert!((got[0] - 0.2).abs() < 1e-15);
        assert_eq!(FuzzySet::<f64>::empty(abc()).complement(), FuzzySet::whole(abc()));
    }

    #[test]
    fn max_min_of_forest_rows() {
        let e1 = set(&[0.8, 0.3, 0.5]);
        let e2 = set(&[0.1, 0.5, 0.7]);
        assert_eq!(e1.max(&e2).unwrap(), set(&[0.8, 0.5, 0.7]));
        assert_eq!(e1.min(&FuzzySet::whole(abc())).unwrap(), e1);
        assert_eq!(e1.max(&e1).unwrap(), e1);
        let other = FuzzySet::<f64>::whole(Universe::new(["A", "B", "D"]).unwrap());
        assert_eq!(e1.max(&other), Err(Error::UniverseMismatch));
    }

    #[test]
    fn alpha_cuts_and_support() {
        let e1 = set(&[0.8, 0.3, 0.5]);
        assert_eq!(abc().names(&e1.alpha_cut(0.5).unwrap()), vec!["A", "C"]);
        assert_eq!(FuzzySet::<f64>::whole(abc()).alpha_cut(1.0).unwrap(), abc().full());
        assert!(e1.alpha_cut(0.8 + 1e-12).unwrap().is_empty());
        assert!(e1.alpha_cut(0.0).is_err());
        assert_eq!(abc().names(&set(&[0.8, 0.0, 0.5]).support()), vec!["A", "C"]);
        assert!(FuzzySet::<f64>::empty(abc()).support().is_empty());
    }

    #[test]
    fn generic_over_f32() {
        let a = FuzzySet::<f32>::from_values(abc(), &[0.25, 0.5, 1.0]).unwrap();
        assert_eq!(a.complement().complement(), a);
        assert_eq!(a.alpha_cut(0.5).unwrap().len(), 2);
    }

    fn arb_set() -> impl Strategy<Value = FuzzySet<f64>> {
        prop::collection::vec(0.0..=1.0f64, 3).prop_map(|v| set(&v))
    }

    proptest! {
        #[test]
        fn complement_is_involution_on_dyadic_grades(k in prop::collection::vec(0u64..=(1u64 << 53), 3)) {
            let values: Vec<f64> = k.iter().map(|&k| k as f64 / (1u64 << 53) as f64).collect();
            let a = set(&values);
            prop_assert_eq!(a.complement().complement(), a);
        }

        #[test]
        fn complement_is_involution_within_half_ulp(a in arb_set()) {
            let back = a.complement().complement();
            for (x, y) in a.grades().iter().zip(back.grades()) {
                prop_assert!((x.value() - y.value()).abs() <= f64::EPSILON / 2.0);
            }
        }

        #[test]
        fn lattice_laws(a in arb_set(), b in arb_set(), c in arb_set()) {
            prop_assert_eq!(a.max(&b).unwrap(), b.max(&a).unwrap());
            prop_assert_eq!(a.min(&b).unwrap(), b.min(&a).unwrap());
            prop_assert_eq!(a.max(&b).unwrap().max(&c).unwrap(), a.max(&b.max(&c).unwrap()).unwrap());
            prop_assert_eq!(a.min(&b).unwrap().min(&c).unwrap(), a.min(&b.min(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.max(&b.min(&c).unwrap()).unwrap(),
                a.max(&b).unwrap().min(&a.max(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.min(&b.max(&c).unwrap()).unwrap(),
                a.min(&b).unwrap().max(&a.min(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn alpha_cuts_are_monotone(a in arb_set(), x in 0.001..=1.0f64, y in 0.001..=1.0f64) {
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            let big = a.alpha_cut(lo).unwrap();
            let small = a.alpha_cut(hi).unwrap();
            prop_assert!(small.is_subset(&big));
            prop_assert!(big.is_subset(&a.support()));
        }
    }
}
