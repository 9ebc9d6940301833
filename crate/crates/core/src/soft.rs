//! Fuzzy soft sets and their algebra, fuzzy soft points, quasi-coincidence
//! and fuzzy soft mappings.
//!
//! A fuzzy soft set over `A ⊆ E` is stored as a row-major grade matrix with
//! one row per parameter of `A` and one column per object of the universe.
//! Rows are addressed by parameter label, so two sets over the same
//! parameters in different orders compare equal.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySet, Grade, Universe};
use crate::scalar::Scalar;

/// Finite ordered set of distinct parameter labels, optionally re-indexed
/// into `(0, 1]`.
///
/// The re-indexing is label metadata only. It never takes part in the
/// algebra and is ignored by equality.
#[derive(Debug, Clone)]
pub struct ParameterSet {
    labels: Arc<[String]>,
    reindex: Option<Arc<[f64]>>,
}

impl ParameterSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidParameters("parameter set is empty".into()));
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidParameters(format!("duplicate parameter `{label}`")));
            }
        }
        Ok(ParameterSet {
            labels: labels.into(),
            reindex: None,
        })
    }

    /// Attaches the canonical re-indexing `e_i ↦ i/k` for a `k`-element set.
    pub fn with_auto_reindex(mut self) -> Self {
        let k = self.len() as f64;
        self.reindex = Some((1..=self.len()).map(|i| i as f64 / k).collect());
        self
    }

    pub fn with_reindex(mut self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.len() {
            return Err(Error::InvalidParameters(format!(
                "{} reindex values for {} parameters",
                values.len(),
                self.len()
            )));
        }
        let mut sorted = values.clone();
        sorted.sort_by(|a, b| a.total_cmp(b));
        if values.iter().any(|&v| !(v > 0.0 && v <= 1.0)) {
            return Err(Error::InvalidParameters("reindex values must lie in (0, 1]".into()));
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameters("reindex values must be distinct".into()));
        }
        self.reindex = Some(values.into());
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn reindex(&self) -> Option<&[f64]> {
        self.reindex.as_deref()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }

    /// Same labels, ignoring order.
    pub fn same_members(&self, other: &Self) -> bool {
        self.len() == other.len() && self.is_subset(other)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.labels.iter().all(|l| other.contains(l))
    }

    /// Sub-list of this set keeping the given positions, reindex included.
    pub fn select(&self, positions: &[usize]) -> Result<Self> {
        let labels: Vec<String> = positions.iter().map(|&i| self.labels[i].clone()).collect();
        let mut out = ParameterSet::new(labels)?;
        if let Some(r) = &self.reindex {
            out.reindex = Some(positions.iter().map(|&i| r[i]).collect());
        }
        Ok(out)
    }

    fn union_labels(&self, other: &Self) -> Vec<String> {
        let mut out: Vec<String> = self.labels.to_vec();
        out.extend(other.labels.iter().filter(|l| !self.contains(l)).cloned());
        out
    }

    fn intersection_labels(&self, other: &Self) -> Vec<String> {
        self.labels.iter().filter(|l| other.contains(l)).cloned().collect()
    }
}

impl PartialEq for ParameterSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for ParameterSet {}

/// Fuzzy soft set `f_A`: a grade for every `(e, x)` with `e ∈ A`, `x ∈ X`.
#[derive(Debug, Clone)]
pub struct FuzzySoftSet<T> {
    params: ParameterSet,
    universe: Universe,
    grades: Vec<Grade<T>>,
}

impl<T: Scalar> FuzzySoftSet<T> {
    /// Builds a set from one row of grades per parameter.
    pub fn new(params: ParameterSet, universe: Universe, rows: Vec<Vec<Grade<T>>>) -> Result<Self> {
        if rows.len() != params.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows for {} parameters",
                rows.len(),
                params.len()
            )));
        }
        let mut grades = Vec::with_capacity(params.len() * universe.len());
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != universe.len() {
                return Err(Error::DimensionMismatch(format!(
                    "row `{}` has {} grades for {} objects",
                    params.label(i),
                    row.len(),
                    universe.len()
                )));
            }
            grades.extend(row);
        }
        Ok(FuzzySoftSet {
            params,
            universe,
            grades,
        })
    }

    pub fn from_values(params: ParameterSet, universe: Universe, rows: &[Vec<T>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Grade::new(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(params, universe, rows)
    }

    fn filled(params: ParameterSet, universe: Universe, grade: Grade<T>) -> Self {
        let grades = vec![grade; params.len() * universe.len()];
        FuzzySoftSet {
            params,
            universe,
            grades,
        }
    }

    /// Null set `Φ_A`.
    pub fn null(params: ParameterSet, universe: Universe) -> Self {
        Self::filled(params, universe, Grade::zero())
    }

    /// Absolute set `X̃_A`.
    pub fn absolute(params: ParameterSet, universe: Universe) -> Self {
        Self::filled(params, universe, Grade::one())
    }

    /// Set whose every row is `row`.
    pub fn from_row(params: ParameterSet, row: &FuzzySet<T>) -> Self {
        let universe = row.universe().clone();
        let mut grades = Vec::with_capacity(params.len() * universe.len());
        for _ in 0..params.len() {
            grades.extend_from_slice(row.grades());
        }
        FuzzySoftSet {
            params,
            universe,
            grades,
        }
    }

    /// Build from a closure over `(parameter index, object index)`.
    pub fn from_fn(params: ParameterSet, universe: Universe, mut f: impl FnMut(usize, usize) -> Grade<T>) -> Self {
        let mut grades = Vec::with_capacity(params.len() * universe.len());
        for e in 0..params.len() {
            for x in 0..universe.len() {
                grades.push(f(e, x));
            }
        }
        FuzzySoftSet {
            params,
            universe,
            grades,
        }
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn row(&self, param: usize) -> &[Grade<T>] {
        let n = self.universe.len();
        &self.grades[param * n..(param + 1) * n]
    }

    pub fn row_of(&self, label: &str) -> Option<&[Grade<T>]> {
        self.params.index_of(label).map(|i| self.row(i))
    }

    pub fn row_set(&self, param: usize) -> FuzzySet<T> {
        FuzzySet::new(self.universe.clone(), self.row(param).to_vec()).expect("row length matches universe")
    }

    pub fn grade(&self, param: usize, object: usize) -> Grade<T> {
        self.grades[param * self.universe.len() + object]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Grade<T>]> {
        self.grades.chunks(self.universe.len())
    }

    /// All grades, row-major.
    pub fn grades(&self) -> &[Grade<T>] {
        &self.grades
    }

    pub fn is_null(&self) -> bool {
        self.grades.iter().all(|g| g.is_zero())
    }

    /// `self ≤̃ other`: `A ⊆ B` and `f_e(x) ≤ g_e(x)` on every `e ∈ A`.
    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.check_universe(other)?;
        for (i, label) in self.params.labels().iter().enumerate() {
            let Some(theirs) = other.row_of(label) else {
                return Ok(false);
            };
            if self.row(i).iter().zip(theirs).any(|(a, b)| a > b) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn soft_eq(&self, other: &Self) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    pub fn complement(&self) -> Self {
        FuzzySoftSet {
            params: self.params.clone(),
            universe: self.universe.clone(),
            grades: self.grades.iter().map(|g| g.complement()).collect(),
        }
    }

    /// `f_A ∨̃ g_B` over `A ∪ B`.
    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_universe(other)?;
        let params = if self.params == other.params {
            self.params.clone()
        } else {
            ParameterSet::new(self.params.union_labels(&other.params))?
        };
        let n = self.universe.len();
        let mut grades = Vec::with_capacity(params.len() * n);
        for label in params.labels() {
            match (self.row_of(label), other.row_of(label)) {
                (Some(a), Some(b)) => grades.extend(a.iter().zip(b).map(|(&x, &y)| x.max(y))),
                (Some(a), None) => grades.extend_from_slice(a),
                (None, Some(b)) => grades.extend_from_slice(b),
                (None, None) => unreachable!("label comes from one of the operands"),
            }
        }
        Ok(FuzzySoftSet {
            params,
            universe: self.universe.clone(),
            grades,
        })
    }

    /// `f_A ∧̃ g_B` over `A ∩ B`; the intersection of parameters must be non-empty.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_universe(other)?;
        let labels = self.params.intersection_labels(&other.params);
        if labels.is_empty() {
            return Err(Error::EmptyParameterIntersection);
        }
        let params = if self.params == other.params {
            self.params.clone()
        } else {
            ParameterSet::new(labels)?
        };
        let n = self.universe.len();
        let mut grades = Vec::with_capacity(params.len() * n);
        for label in params.labels() {
            let a = self.row_of(label).expect("shared label");
            let b = other.row_of(label).expect("shared label");
            grades.extend(a.iter().zip(b).map(|(&x, &y)| x.min(y)));
        }
        Ok(FuzzySoftSet {
            params,
            universe: self.universe.clone(),
            grades,
        })
    }

    /// `g q̃ f` at object `x`: some `e` has `g_e(x) + f_e(x) > 1`.
    pub fn quasi_coincident_at(&self, other: &Self, object: usize) -> Result<bool> {
        self.check_universe(other)?;
        Ok(self.params.labels().iter().enumerate().any(|(i, label)| {
            other
                .row_of(label)
                .is_some_and(|row| self.row(i)[object].value() + row[object].value() > T::one())
        }))
    }

    /// `g q̃ f` at some object.
    pub fn quasi_coincident(&self, other: &Self) -> Result<bool> {
        for x in 0..self.universe.len() {
            if self.quasi_coincident_at(other, x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Same rows re-laid out in the parameter order of `params`.
    /// `params` must have the same members as `self.params()`.
    pub fn reordered(&self, params: &ParameterSet) -> Result<Self> {
        if !self.params.same_members(params) {
            return Err(Error::ParameterMismatch);
        }
        let mut grades = Vec::with_capacity(self.grades.len());
        for label in params.labels() {
            grades.extend_from_slice(self.row_of(label).expect("same members"));
        }
        Ok(FuzzySoftSet {
            params: params.clone(),
            universe: self.universe.clone(),
            grades,
        })
    }

    fn check_universe(&self, other: &Self) -> Result<()> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        Ok(())
    }
}

/// Exact structural equality: same parameter order, universe and grades.
/// Use [`FuzzySoftSet::soft_eq`] for order-independent equality.
impl<T: Scalar> PartialEq for FuzzySoftSet<T> {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.universe == other.universe && self.grades == other.grades
    }
}

/// Fuzzy soft point `x̃_E`: object `x` with grade `λ_e ∈ (0, 1]` at every `e ∈ E`.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySoftPoint<T> {
    params: ParameterSet,
    universe: Universe,
    support: usize,
    lambda: Vec<Grade<T>>,
}

impl<T: Scalar> FuzzySoftPoint<T> {
    pub fn new(params: ParameterSet, universe: Universe, support: &str, lambda: &[T]) -> Result<Self> {
        let support = universe
            .index_of(support)
            .ok_or_else(|| Error::UnknownObject(support.to_string()))?;
        Self::at(params, universe, support, lambda)
    }

    pub fn at(params: ParameterSet, universe: Universe, support: usize, lambda: &[T]) -> Result<Self> {
        if lambda.len() != params.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} grades for {} parameters",
                lambda.len(),
                params.len()
            )));
        }
        if support >= universe.len() {
            return Err(Error::UnknownObject(format!("#{support}")));
        }
        let lambda = lambda.iter().map(|&v| Grade::positive(v)).collect::<Result<_>>()?;
        Ok(FuzzySoftPoint {
            params,
            universe,
            support,
            lambda,
        })
    }

    /// Crisp point `x̄_E` (every grade 1).
    pub fn crisp(params: ParameterSet, universe: Universe, support: usize) -> Self {
        let lambda = vec![Grade::one(); params.len()];
        FuzzySoftPoint {
            params,
            universe,
            support,
            lambda,
        }
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn support(&self) -> usize {
        self.support
    }

    pub fn lambda(&self) -> &[Grade<T>] {
        &self.lambda
    }

    /// The point viewed as a fuzzy soft set over `E`.
    pub fn to_set(&self) -> FuzzySoftSet<T> {
        FuzzySoftSet::from_fn(self.params.clone(), self.universe.clone(), |e, x| {
            if x == self.support {
                self.lambda[e]
            } else {
                Grade::zero()
            }
        })
    }

    /// Restriction to one parameter.
    pub fn single(&self, param: &str) -> Result<FuzzySoftSinglePoint<T>> {
        let e = self
            .params
            .index_of(param)
            .ok_or_else(|| Error::UnknownParameter(param.to_string()))?;
        Ok(FuzzySoftSinglePoint {
            support: self.support,
            parameter: param.to_string(),
            lambda: self.lambda[e],
        })
    }

    /// `x̃_E ∈̃ f`: `λ_e ≤ f_e(x)` for every `e ∈ E`. Rows missing from `f` count as 0.
    pub fn is_member_of(&self, f: &FuzzySoftSet<T>) -> Result<bool> {
        if self.universe != *f.universe() {
            return Err(Error::UniverseMismatch);
        }
        Ok(self
            .params
            .labels()
            .iter()
            .zip(&self.lambda)
            .all(|(label, &l)| f.row_of(label).is_some_and(|row| l <= row[self.support])))
    }

    /// `x̃_E q̃ f`: `λ_e + f_e(x) > 1` for some `e`.
    pub fn is_quasi_coincident(&self, f: &FuzzySoftSet<T>) -> Result<bool> {
        if self.universe != *f.universe() {
            return Err(Error::UniverseMismatch);
        }
        Ok(self.params.labels().iter().zip(&self.lambda).any(|(label, &l)| {
            f.row_of(label)
                .is_some_and(|row| l.value() + row[self.support].value() > T::one())
        }))
    }

    /// Different supports, or equal supports with some grade differing.
    pub fn is_different(&self, other: &Self) -> bool {
        self.support != other.support
            || self
                .params
                .labels()
                .iter()
                .zip(&self.lambda)
                .any(|(label, l)| other.params.index_of(label).map(|j| other.lambda[j]) != Some(*l))
    }

    /// `x̃_E ∧̃ ỹ_E = Φ`. Grades are strictly positive, so this reduces to
    /// different supports.
    pub fn is_distinct(&self, other: &Self) -> bool {
        self.support != other.support
    }
}

/// Fuzzy soft single point `x̃_e`.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySoftSinglePoint<T> {
    pub support: usize,
    pub parameter: String,
    pub lambda: Grade<T>,
}

impl<T: Scalar> FuzzySoftSinglePoint<T> {
    pub fn is_member_of(&self, f: &FuzzySoftSet<T>) -> bool {
        f.row_of(&self.parameter)
            .is_some_and(|row| self.lambda <= row[self.support])
    }

    pub fn is_quasi_coincident(&self, f: &FuzzySoftSet<T>) -> bool {
        f.row_of(&self.parameter)
            .is_some_and(|row| self.lambda.value() + row[self.support].value() > T::one())
    }
}

/// Fuzzy soft map `h_up` induced by `u: X → Y` and `p: E → E'`.
#[derive(Debug, Clone)]
pub struct SoftMapping {
    source_universe: Universe,
    target_universe: Universe,
    source_params: ParameterSet,
    target_params: ParameterSet,
    u: Vec<usize>,
    p: Vec<usize>,
}

impl SoftMapping {
    /// `u[i]` is the target object index of source object `i`; likewise `p`.
    pub fn new(
        source_universe: Universe,
        target_universe: Universe,
        source_params: ParameterSet,
        target_params: ParameterSet,
        u: Vec<usize>,
        p: Vec<usize>,
    ) -> Result<Self> {
        if u.len() != source_universe.len() || u.iter().any(|&y| y >= target_universe.len()) {
            return Err(Error::InvalidMapping(
                "object map must send every source object to a target object".into(),
            ));
        }
        if p.len() != source_params.len() || p.iter().any(|&e| e >= target_params.len()) {
            return Err(Error::InvalidMapping(
                "parameter map must send every source parameter to a target parameter".into(),
            ));
        }
        Ok(SoftMapping {
            source_universe,
            target_universe,
            source_params,
            target_params,
            u,
            p,
        })
    }

    /// Builds the maps from label tables.
    pub fn from_labels(
        source_universe: Universe,
        target_universe: Universe,
        source_params: ParameterSet,
        target_params: ParameterSet,
        u: &BTreeMap<String, String>,
        p: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let lookup = |labels: &[String], table: &BTreeMap<String, String>, find: &dyn Fn(&str) -> Option<usize>| {
            labels
                .iter()
                .map(|l| {
                    let target = table
                        .get(l)
                        .ok_or_else(|| Error::InvalidMapping(format!("`{l}` is not mapped")))?;
                    find(target).ok_or_else(|| Error::InvalidMapping(format!("unknown target `{target}`")))
                })
                .collect::<Result<Vec<_>>>()
        };
        let u = lookup(source_universe.labels(), u, &|l| target_universe.index_of(l))?;
        let p = lookup(source_params.labels(), p, &|l| target_params.index_of(l))?;
        Self::new(source_universe, target_universe, source_params, target_params, u, p)
    }

    pub fn source_universe(&self) -> &Universe {
        &self.source_universe
    }

    pub fn target_universe(&self) -> &Universe {
        &self.target_universe
    }

    pub fn source_params(&self) -> &ParameterSet {
        &self.source_params
    }

    pub fn target_params(&self) -> &ParameterSet {
        &self.target_params
    }

    pub fn u(&self) -> &[usize] {
        &self.u
    }

    pub fn p(&self) -> &[usize] {
        &self.p
    }

    /// `p(E)` as positions in the target parameter set, in target order.
    pub fn image_params(&self) -> Vec<usize> {
        let hit: BTreeSet<usize> = self.p.iter().copied().collect();
        hit.into_iter().collect()
    }

    pub fn is_onto_objects(&self) -> bool {
        let hit: BTreeSet<usize> = self.u.iter().copied().collect();
        hit.len() == self.target_universe.len()
    }

    /// `h_up(f_A)` over `p(E)`.
    pub fn image<T: Scalar>(&self, f: &FuzzySoftSet<T>) -> Result<FuzzySoftSet<T>> {
        if *f.universe() != self.source_universe || !f.params().is_subset(&self.source_params) {
            return Err(Error::InvalidMapping(
                "set does not live on the mapping's source".into(),
            ));
        }
        let image_params = self.image_params();
        let params = self.target_params.select(&image_params)?;
        // row of f (if any) for each source parameter
        let rows: Vec<Option<usize>> = self
            .source_params
            .labels()
            .iter()
            .map(|l| f.params().index_of(l))
            .collect();
        let out = FuzzySoftSet::from_fn(params, self.target_universe.clone(), |ei, y| {
            let target_e = image_params[ei];
            let mut best = Grade::zero();
            for (e, &pe) in self.p.iter().enumerate() {
                let Some(row) = rows[e] else { continue };
                if pe != target_e {
                    continue;
                }
                for (x, &ux) in self.u.iter().enumerate() {
                    if ux == y {
                        best = best.max(f.grade(row, x));
                    }
                }
            }
            best
        });
        Ok(out)
    }

    /// `h⁻¹_up(g_B)` over `E`.
    pub fn preimage<T: Scalar>(&self, g: &FuzzySoftSet<T>) -> Result<FuzzySoftSet<T>> {
        if *g.universe() != self.target_universe || !g.params().is_subset(&self.target_params) {
            return Err(Error::InvalidMapping(
                "set does not live on the mapping's target".into(),
            ));
        }
        let rows: Vec<Option<usize>> = self
            .p
            .iter()
            .map(|&pe| g.params().index_of(self.target_params.label(pe)))
            .collect();
        Ok(FuzzySoftSet::from_fn(
            self.source_params.clone(),
            self.source_universe.clone(),
            |e, x| match rows[e] {
                Some(row) => g.grade(row, self.u[x]),
                None => Grade::zero(),
            },
        ))
    }
}
