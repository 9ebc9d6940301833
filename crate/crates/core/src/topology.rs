//! Finite fuzzy soft topologies and the constructions linking them to fuzzy
//! and point-set topologies.
//!
//! Collections are finite, so closure under arbitrary unions is the same as
//! closure under pairwise unions. All checks below are therefore exact and
//! exhaustive, with the offending pair reported as a witness.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySet, Grade, ObjectSet, Universe};
use crate::scalar::Scalar;
use crate::soft::{FuzzySoftPoint, FuzzySoftSet, ParameterSet};

/// Outcome of checking the topology axioms on a finite collection.
/// Indices refer to the collection as it was passed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    MissingNull,
    MissingAbsolute,
    UnionViolation {
        first: usize,
        second: usize,
    },
    IntersectionViolation {
        first: usize,
        second: usize,
    },
    /// Member `index` does not live on the declared parameters/universe.
    Malformed {
        index: usize,
    },
}

impl Verdict {
    pub fn is_ok(self) -> bool {
        self == Verdict::Ok
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Ok => write!(f, "ok"),
            Verdict::MissingNull => write!(f, "missing_null"),
            Verdict::MissingAbsolute => write!(f, "missing_absolute"),
            Verdict::UnionViolation { first, second } => {
                write!(f, "union_violation({first}, {second})")
            }
            Verdict::IntersectionViolation { first, second } => {
                write!(f, "intersection_violation({first}, {second})")
            }
            Verdict::Malformed { index } => write!(f, "malformed({index})"),
        }
    }
}

type Key = Vec<(u64, i16, i8)>;

fn key_of<T: Scalar>(grades: &[Grade<T>]) -> Key {
    grades.iter().map(|g| g.value().key()).collect()
}

/// Shared closure check over any finite lattice of sets.
fn check_closure<S>(
    members: &[S],
    key: impl Fn(&S) -> Key,
    bottom: &S,
    top: &S,
    join: impl Fn(&S, &S) -> S,
    meet: impl Fn(&S, &S) -> S,
) -> Verdict {
    let keys: HashSet<Key> = members.iter().map(&key).collect();
    if !keys.contains(&key(bottom)) {
        return Verdict::MissingNull;
    }
    if !keys.contains(&key(top)) {
        return Verdict::MissingAbsolute;
    }
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if !keys.contains(&key(&join(&members[i], &members[j]))) {
                return Verdict::UnionViolation { first: i, second: j };
            }
        }
    }
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if !keys.contains(&key(&meet(&members[i], &members[j]))) {
                return Verdict::IntersectionViolation { first: i, second: j };
            }
        }
    }
    Verdict::Ok
}

/// Closes `seed ∪ {bottom, top}` under pairwise join and meet.
fn close_up<S: Clone>(
    seed: Vec<S>,
    key: impl Fn(&S) -> Key,
    bottom: S,
    top: S,
    join: impl Fn(&S, &S) -> S,
    meet: impl Fn(&S, &S) -> S,
) -> Vec<S> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in [bottom, top].into_iter().chain(seed) {
        if seen.insert(key(&s)) {
            out.push(s);
        }
    }
    let mut frontier = 0;
    while frontier < out.len() {
        let end = out.len();
        for i in 0..end {
            for j in frontier.max(i + 1)..end {
                for s in [join(&out[i], &out[j]), meet(&out[i], &out[j])] {
                    if seen.insert(key(&s)) {
                        out.push(s);
                    }
                }
            }
        }
        frontier = end;
    }
    out
}

/// Finite lattice of admissible grades.
#[derive(Debug, Clone, PartialEq)]
pub struct GradeLattice<T> {
    values: Vec<Grade<T>>,
}

impl<T: Scalar> GradeLattice<T> {
    pub fn new(values: &[T]) -> Result<Self> {
        let mut grades = values.iter().map(|&v| Grade::new(v)).collect::<Result<Vec<_>>>()?;
        grades.sort_by(|a, b| a.partial_cmp(b).expect("grades are not NaN"));
        grades.dedup();
        if grades.first() != Some(&Grade::zero()) || grades.last() != Some(&Grade::one()) {
            return Err(Error::InvalidTopology("grade lattice must contain 0 and 1".into()));
        }
        Ok(GradeLattice { values: grades })
    }

    /// `{0, 1/n, …, 1}`.
    pub fn uniform(n: usize) -> Self {
        let nf = T::from_usize(n.max(1)).unwrap();
        let values: Vec<T> = (0..=n.max(1)).map(|i| T::from_usize(i).unwrap() / nf).collect();
        Self::new(&values).expect("uniform lattice is valid")
    }

    pub fn values(&self) -> &[Grade<T>] {
        &self.values
    }

    pub fn contains(&self, g: Grade<T>) -> bool {
        self.values.contains(&g)
    }

    /// Thresholds `t < 1` of the lattice, used for superlevel sets.
    pub fn thresholds(&self) -> Vec<T> {
        self.values
            .iter()
            .map(|g| g.value())
            .filter(|&t| t < T::one())
            .collect()
    }

    /// Every lattice-valued fuzzy soft set over `(params, universe)`.
    pub fn all_sets(&self, params: &ParameterSet, universe: &Universe) -> Vec<FuzzySoftSet<T>> {
        let cells = params.len() * universe.len();
        let base = self.values.len();
        let total = base.checked_pow(cells as u32).expect("enumeration size overflows");
        (0..total)
            .map(|mut code| {
                FuzzySoftSet::from_fn(params.clone(), universe.clone(), |_, _| {
                    let g = self.values[code % base];
                    code /= base;
                    g
                })
            })
            .collect()
    }
}

impl<T: Scalar> Default for GradeLattice<T> {
    fn default() -> Self {
        Self::uniform(4)
    }
}

fn fss_key<T: Scalar>(s: &FuzzySoftSet<T>) -> Key {
    key_of(s.grades())
}

/// Checks the fuzzy soft topology axioms on `sets` over `(params, universe)`.
pub fn fst_check<T: Scalar>(params: &ParameterSet, universe: &Universe, sets: &[FuzzySoftSet<T>]) -> Verdict {
    let mut members = Vec::with_capacity(sets.len());
    for (index, s) in sets.iter().enumerate() {
        if s.universe() != universe {
            return Verdict::Malformed { index };
        }
        match s.reordered(params) {
            Ok(r) => members.push(r),
            Err(_) => return Verdict::Malformed { index },
        }
    }
    check_closure(
        &members,
        fss_key,
        &FuzzySoftSet::null(params.clone(), universe.clone()),
        &FuzzySoftSet::absolute(params.clone(), universe.clone()),
        |a, b| a.union(b).expect("same shape"),
        |a, b| a.intersection(b).expect("same shape"),
    )
}

/// Fuzzy soft topology: a finite collection of fuzzy soft sets over `E`
/// containing `Φ`, `X̃` and closed under `∨̃`, `∧̃`.
#[derive(Debug, Clone)]
pub struct FsTopology<T> {
    params: ParameterSet,
    universe: Universe,
    opens: Vec<FuzzySoftSet<T>>,
}

impl<T: Scalar> FsTopology<T> {
    /// Validates `sets` (duplicates dropped) as a topology.
    pub fn new(params: ParameterSet, universe: Universe, sets: Vec<FuzzySoftSet<T>>) -> Result<Self> {
        let verdict = fst_check(&params, &universe, &sets);
        if !verdict.is_ok() {
            return Err(Error::InvalidTopology(verdict.to_string()));
        }
        let mut seen = HashSet::new();
        let opens = sets
            .into_iter()
            .map(|s| s.reordered(&params).expect("checked"))
            .filter(|s| seen.insert(fss_key(s)))
            .collect();
        Ok(FsTopology {
            params,
            universe,
            opens,
        })
    }

    /// Smallest topology containing `generators`.
    pub fn generated_by(params: ParameterSet, universe: Universe, generators: Vec<FuzzySoftSet<T>>) -> Result<Self> {
        let seed = generators
            .into_iter()
            .map(|g| {
                if *g.universe() != universe {
                    return Err(Error::UniverseMismatch);
                }
                g.reordered(&params)
            })
            .collect::<Result<Vec<_>>>()?;
        let opens = close_up(
            seed,
            fss_key,
            FuzzySoftSet::null(params.clone(), universe.clone()),
            FuzzySoftSet::absolute(params.clone(), universe.clone()),
            |a, b| a.union(b).expect("same shape"),
            |a, b| a.intersection(b).expect("same shape"),
        );
        Ok(FsTopology {
            params,
            universe,
            opens,
        })
    }

    /// `{Φ, X̃}`.
    pub fn indiscrete(params: ParameterSet, universe: Universe) -> Self {
        let opens = vec![
            FuzzySoftSet::null(params.clone(), universe.clone()),
            FuzzySoftSet::absolute(params.clone(), universe.clone()),
        ];
        FsTopology {
            params,
            universe,
            opens,
        }
    }

    /// Every lattice-valued fuzzy soft set.
    pub fn discrete(params: ParameterSet, universe: Universe, lattice: &GradeLattice<T>) -> Self {
        let opens = lattice.all_sets(&params, &universe);
        FsTopology {
            params,
            universe,
            opens,
        }
    }

    /// Characteristic lift of a crisp topology: `V ↦ V_E` with every row `χ_V`.
    pub fn lift_crisp(t: &CrispTopology, params: ParameterSet) -> Self {
        let opens = t
            .opens()
            .iter()
            .map(|v| FuzzySoftSet::from_row(params.clone(), &FuzzySet::characteristic(t.universe().clone(), v)))
            .collect();
        FsTopology {
            params,
            universe: t.universe().clone(),
            opens,
        }
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn opens(&self) -> &[FuzzySoftSet<T>] {
        &self.opens
    }

    pub fn contains(&self, f: &FuzzySoftSet<T>) -> bool {
        f.reordered(&self.params)
            .map(|f| self.opens.contains(&f))
            .unwrap_or(false)
    }

    pub fn verdict(&self) -> Verdict {
        fst_check(&self.params, &self.universe, &self.opens)
    }

    /// `τ_e = {f(e) : f ∈ τ}`.
    pub fn slice(&self, param: &str) -> Result<FuzzyTopology<T>> {
        let e = self
            .params
            .index_of(param)
            .ok_or_else(|| Error::UnknownParameter(param.to_string()))?;
        let mut seen = HashSet::new();
        let rows: Vec<FuzzySet<T>> = self
            .opens
            .iter()
            .map(|f| f.row_set(e))
            .filter(|r| seen.insert(key_of(r.grades())))
            .collect();
        FuzzyTopology::new(self.universe.clone(), rows)
    }

    /// Some open `f` with `x̃_E ∈̃ f ≤̃ g`; returns its index.
    pub fn neighborhood_witness(&self, g: &FuzzySoftSet<T>, pt: &FuzzySoftPoint<T>) -> Result<Option<usize>> {
        self.search(g, |f| pt.is_member_of(f))
    }

    /// Some open `f` with `x̃_E q̃ f ≤̃ g`; returns its index.
    pub fn q_neighborhood_witness(&self, g: &FuzzySoftSet<T>, pt: &FuzzySoftPoint<T>) -> Result<Option<usize>> {
        self.search(g, |f| pt.is_quasi_coincident(f))
    }

    pub fn is_neighborhood(&self, g: &FuzzySoftSet<T>, pt: &FuzzySoftPoint<T>) -> Result<bool> {
        Ok(self.neighborhood_witness(g, pt)?.is_some())
    }

    pub fn is_q_neighborhood(&self, g: &FuzzySoftSet<T>, pt: &FuzzySoftPoint<T>) -> Result<bool> {
        Ok(self.q_neighborhood_witness(g, pt)?.is_some())
    }

    fn search(&self, g: &FuzzySoftSet<T>, touches: impl Fn(&FuzzySoftSet<T>) -> Result<bool>) -> Result<Option<usize>> {
        for (i, f) in self.opens.iter().enumerate() {
            if touches(f)? && f.is_subset(g)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Separation axioms T0, T1, T2 over a sample of distinct point pairs.
    pub fn separation(&self, pairs: &[(FuzzySoftPoint<T>, FuzzySoftPoint<T>)]) -> Result<SeparationReport> {
        let mut report = SeparationReport::default();
        for (index, (x, y)) in pairs.iter().enumerate() {
            if !x.is_distinct(y) {
                return Err(Error::NotDistinct);
            }
            let mut x_opens = Vec::new();
            let mut y_opens = Vec::new();
            for (i, f) in self.opens.iter().enumerate() {
                if x.is_member_of(f)? {
                    x_opens.push(i);
                }
                if y.is_member_of(f)? {
                    y_opens.push(i);
                }
            }
            // an open misses a point iff it vanishes at the point's support
            let misses = |i: usize, p: &FuzzySoftPoint<T>| self.opens[i].rows().all(|row| row[p.support()].is_zero());
            let x_sep = x_opens.iter().copied().find(|&i| misses(i, y));
            let y_sep = y_opens.iter().copied().find(|&i| misses(i, x));
            let t2 = x_opens.iter().find_map(|&i| {
                y_opens.iter().copied().find_map(|j| {
                    let meet = self.opens[i].intersection(&self.opens[j]).expect("same shape");
                    meet.is_null().then_some((i, j))
                })
            });
            let sep = PairSeparation {
                index,
                t0: x_sep.map(|i| (Side::First, i)).or(y_sep.map(|i| (Side::Second, i))),
                t1: x_sep.zip(y_sep),
                t2,
            };
            report.record(sep);
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

/// Witnesses found for one pair; `None` means the axiom fails on this pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSeparation {
    pub index: usize,
    /// Open neighborhood of one point missing the other.
    pub t0: Option<(Side, usize)>,
    /// Open neighborhoods of each point missing the other.
    pub t1: Option<(usize, usize)>,
    /// Disjoint open neighborhoods.
    pub t2: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeparationReport {
    pub pairs: Vec<PairSeparation>,
    /// First pair index failing each axiom.
    pub t0_counterexample: Option<usize>,
    pub t1_counterexample: Option<usize>,
    pub t2_counterexample: Option<usize>,
}

impl SeparationReport {
    fn record(&mut self, sep: PairSeparation) {
        if sep.t0.is_none() {
            self.t0_counterexample.get_or_insert(sep.index);
        }
        if sep.t1.is_none() {
            self.t1_counterexample.get_or_insert(sep.index);
        }
        if sep.t2.is_none() {
            self.t2_counterexample.get_or_insert(sep.index);
        }
        self.pairs.push(sep);
    }

    pub fn t0(&self) -> bool {
        self.t0_counterexample.is_none()
    }

    pub fn t1(&self) -> bool {
        self.t1_counterexample.is_none()
    }

    pub fn t2(&self) -> bool {
        self.t2_counterexample.is_none()
    }
}

/// Finite fuzzy topology on a universe.
#[derive(Debug, Clone)]
pub struct FuzzyTopology<T> {
    universe: Universe,
    opens: Vec<FuzzySet<T>>,
}

/// Checks the fuzzy topology axioms.
pub fn ft_check<T: Scalar>(universe: &Universe, sets: &[FuzzySet<T>]) -> Verdict {
    if let Some(index) = sets.iter().position(|s| s.universe() != universe) {
        return Verdict::Malformed { index };
    }
    check_closure(
        sets,
        |s| key_of(s.grades()),
        &FuzzySet::empty(universe.clone()),
        &FuzzySet::whole(universe.clone()),
        |a, b| a.max(b).expect("same universe"),
        |a, b| a.min(b).expect("same universe"),
    )
}

impl<T: Scalar> FuzzyTopology<T> {
    pub fn new(universe: Universe, opens: Vec<FuzzySet<T>>) -> Result<Self> {
        let verdict = ft_check(&universe, &opens);
        if !verdict.is_ok() {
            return Err(Error::InvalidTopology(verdict.to_string()));
        }
        Ok(FuzzyTopology { universe, opens })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn opens(&self) -> &[FuzzySet<T>] {
        &self.opens
    }

    pub fn verdict(&self) -> Verdict {
        ft_check(&self.universe, &self.opens)
    }

    pub fn contains(&self, s: &FuzzySet<T>) -> bool {
        self.opens.iter().any(|o| o == s)
    }

    /// Point-set topology generated by the strict superlevel sets
    /// `{x : μ(x) > t}` of every open `μ` and threshold `t`.
    pub fn superlevel_topology(&self, thresholds: &[T]) -> Result<CrispTopology> {
        let sets: Vec<ObjectSet> = self
            .opens
            .iter()
            .flat_map(|mu| thresholds.iter().map(move |&t| mu.superlevel(t)))
            .collect();
        let closed = CrispTopology::generated_by(self.universe.clone(), sets);
        let verdict = closed.verdict();
        if !verdict.is_ok() {
            return Err(Error::InvalidTopology(verdict.to_string()));
        }
        Ok(closed)
    }
}

fn subset_key(s: &ObjectSet) -> Key {
    s.iter().map(|&i| (i as u64, 0, 0)).collect()
}

/// Finite point-set topology, opens stored as object index sets.
#[derive(Debug, Clone)]
pub struct CrispTopology {
    universe: Universe,
    opens: Vec<ObjectSet>,
}

/// Checks the point-set topology axioms.
pub fn crisp_check(universe: &Universe, sets: &[ObjectSet]) -> Verdict {
    if let Some(index) = sets.iter().position(|s| s.iter().any(|&i| i >= universe.len())) {
        return Verdict::Malformed { index };
    }
    check_closure(
        sets,
        subset_key,
        &BTreeSet::new(),
        &universe.full(),
        |a, b| a | b,
        |a, b| a & b,
    )
}

impl CrispTopology {
    pub fn new(universe: Universe, opens: Vec<ObjectSet>) -> Result<Self> {
        let verdict = crisp_check(&universe, &opens);
        if !verdict.is_ok() {
            return Err(Error::InvalidTopology(verdict.to_string()));
        }
        let mut seen = HashSet::new();
        let opens = opens.into_iter().filter(|s| seen.insert(subset_key(s))).collect();
        Ok(CrispTopology { universe, opens })
    }

    /// Builds from label lists.
    pub fn from_labels(universe: Universe, opens: &[Vec<&str>]) -> Result<Self> {
        let sets = opens
            .iter()
            .map(|labels| {
                labels
                    .iter()
                    .map(|l| universe.index_of(l).ok_or_else(|| Error::UnknownObject(l.to_string())))
                    .collect::<Result<ObjectSet>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(universe, sets)
    }

    /// Smallest topology containing `generators`.
    pub fn generated_by(universe: Universe, generators: Vec<ObjectSet>) -> Self {
        let full = universe.full();
        let opens = close_up(
            generators,
            subset_key,
            BTreeSet::new(),
            full,
            |a, b| a | b,
            |a, b| a & b,
        );
        CrispTopology { universe, opens }
    }

    pub fn discrete(universe: Universe) -> Self {
        let n = universe.len();
        assert!(n < 20, "discrete topology enumeration limited to small universes");
        let opens = (0u32..(1 << n))
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
        CrispTopology { universe, opens }
    }

    pub fn indiscrete(universe: Universe) -> Self {
        let opens = vec![BTreeSet::new(), universe.full()];
        CrispTopology { universe, opens }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn opens(&self) -> &[ObjectSet] {
        &self.opens
    }

    pub fn contains(&self, s: &ObjectSet) -> bool {
        self.opens.iter().any(|o| o == s)
    }

    pub fn verdict(&self) -> Verdict {
        crisp_check(&self.universe, &self.opens)
    }

    /// Same opens, ignoring order.
    pub fn same_opens(&self, other: &CrispTopology) -> bool {
        let a: BTreeSet<&ObjectSet> = self.opens.iter().collect();
        let b: BTreeSet<&ObjectSet> = other.opens.iter().collect();
        a == b
    }

    /// Membership of `f` in `w′(w(τ))`: every strict superlevel set of every
    /// row, at every threshold in `thresholds ∪ {0}`, is open.
    pub fn admits<T: Scalar>(&self, f: &FuzzySoftSet<T>, thresholds: &[T]) -> Result<bool> {
        if *f.universe() != self.universe {
            return Err(Error::UniverseMismatch);
        }
        let mut ts: Vec<T> = thresholds.iter().copied().filter(|&t| t < T::one()).collect();
        ts.push(T::zero());
        for e in 0..f.params().len() {
            let row = f.row_set(e);
            if ts.iter().any(|&t| !self.contains(&row.superlevel(t))) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The α-cut family `α ↦ χ_{μ_α}` over re-indexed parameters, together
/// with `Φ` and `X̃`, and the verdict of the topology check on it.
pub fn lift_alpha_cuts<T: Scalar>(mu: &FuzzySet<T>, params: &ParameterSet) -> Result<(Vec<FuzzySoftSet<T>>, Verdict)> {
    let levels = params
        .reindex()
        .ok_or_else(|| Error::InvalidParameters("parameters must be re-indexed into (0, 1]".into()))?;
    let universe = mu.universe().clone();
    let cuts = levels
        .iter()
        .map(|&a| mu.alpha_cut(T::lit(a)))
        .collect::<Result<Vec<_>>>()?;
    let lifted = FuzzySoftSet::from_fn(params.clone(), universe.clone(), |e, x| {
        if cuts[e].contains(&x) {
            Grade::one()
        } else {
            Grade::zero()
        }
    });
    let mut seen = HashSet::new();
    let collection: Vec<FuzzySoftSet<T>> = [
        FuzzySoftSet::null(params.clone(), universe.clone()),
        FuzzySoftSet::absolute(params.clone(), universe),
        lifted,
    ]
    .into_iter()
    .filter(|s| seen.insert(fss_key(s)))
    .collect();
    let verdict = fst_check(params, mu.universe(), &collection);
    Ok((collection, verdict))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(n: usize) -> Universe {
        Universe::new((0..n).map(|i| format!("x{i}"))).unwrap()
    }

    fn params(k: usize) -> ParameterSet {
        ParameterSet::new((0..k).map(|i| format!("e{i}"))).unwrap()
    }

    fn fss(k: usize, rows: &[Vec<f64>]) -> FuzzySoftSet<f64> {
        FuzzySoftSet::from_values(params(k), uni(rows[0].len()), rows).unwrap()
    }

    /// Independent check: every subfamily's union, every pair's intersection.
    fn exhaustive_ok(params: &ParameterSet, universe: &Universe, sets: &[FuzzySoftSet<f64>]) -> bool {
        assert!(sets.len() <= 12);
        let has = |s: &FuzzySoftSet<f64>| sets.iter().any(|o| o.soft_eq(s).unwrap());
        if !has(&FuzzySoftSet::null(params.clone(), universe.clone()))
            || !has(&FuzzySoftSet::absolute(params.clone(), universe.clone()))
        {
            return false;
        }
        for mask in 1u32..(1 << sets.len()) {
            let mut acc = FuzzySoftSet::null(params.clone(), universe.clone());
            for (i, s) in sets.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = acc.union(s).unwrap();
                }
            }
            if !has(&acc) {
                return false;
            }
        }
        sets.iter()
            .all(|a| sets.iter().all(|b| has(&a.intersection(b).unwrap())))
    }

    #[test]
    fn indiscrete_is_ok() {
        let t = FsTopology::<f64>::indiscrete(params(2), uni(3));
        assert_eq!(t.verdict(), Verdict::Ok);
        assert!(exhaustive_ok(t.params(), t.universe(), t.opens()));
    }

    #[test]
    fn discrete_three_value_lattice() {
        let lattice = GradeLattice::new(&[0.0, 0.5, 1.0]).unwrap();
        let t = FsTopology::<f64>::discrete(params(1), uni(1), &lattice);
        assert_eq!(t.opens().len(), 3);
        assert_eq!(t.verdict(), Verdict::Ok);
        assert!(exhaustive_ok(t.params(), t.universe(), t.opens()));
    }

    #[test]
    fn missing_union_is_reported() {
        let (e, x) = (params(1), uni(2));
        let f = fss(1, &[vec![0.3, 0.8]]);
        let sets = vec![
            FuzzySoftSet::null(e.clone(), x.clone()),
            FuzzySoftSet::absolute(e.clone(), x.clone()),
            f.clone(),
            f.complement(),
        ];
        // f ∨ f^c = (0.7, 0.8) ≠ X̃
        let verdict = fst_check(&e, &x, &sets);
        assert_eq!(verdict, Verdict::UnionViolation { first: 2, second: 3 });
        assert!(!exhaustive_ok(&e, &x, &sets));
        assert_eq!(fst_check(&e, &x, &sets[1..]), Verdict::MissingNull);
        assert_eq!(fst_check(&e, &x, &[sets[0].clone()]), Verdict::MissingAbsolute);
        assert!(FsTopology::new(e, x, sets).is_err());
    }

    #[test]
    fn missing_intersection_is_reported() {
        let (e, x) = (params(1), uni(2));
        let sets = vec![
            FuzzySoftSet::null(e.clone(), x.clone()),
            FuzzySoftSet::absolute(e.clone(), x.clone()),
            fss(1, &[vec![1.0, 0.5]]),
            fss(1, &[vec![0.5, 1.0]]),
            fss(1, &[vec![1.0, 1.0]]),
        ];
        assert_eq!(
            fst_check(&e, &x, &sets),
            Verdict::IntersectionViolation { first: 2, second: 3 }
        );
    }

    #[test]
    fn generated_topologies_agree_with_exhaustive_oracle() {
        let e = params(2);
        let x = uni(2);
        let lattice = GradeLattice::new(&[0.0, 0.5, 1.0]).unwrap();
        let all = lattice.all_sets(&e, &x);
        for (i, a) in all.iter().enumerate().step_by(7) {
            let b = &all[(i * 13 + 5) % all.len()];
            let t = FsTopology::generated_by(e.clone(), x.clone(), vec![a.clone(), b.clone()]).unwrap();
            assert!(t.verdict().is_ok());
            if t.opens().len() <= 12 {
                assert!(exhaustive_ok(&e, &x, t.opens()));
            }
        }
    }

    #[test]
    fn slices_are_fuzzy_topologies() {
        let t = FsTopology::<f64>::indiscrete(params(2), uni(2));
        let s = t.slice("e0").unwrap();
        assert_eq!(s.opens().len(), 2);
        assert!(s.contains(&FuzzySet::empty(uni(2))) && s.contains(&FuzzySet::whole(uni(2))));
        let g = FsTopology::generated_by(params(2), uni(2), vec![fss(2, &[vec![0.5, 0.0], vec![1.0, 0.5]])]).unwrap();
        for e in ["e0", "e1"] {
            assert!(g.slice(e).unwrap().verdict().is_ok());
        }
        assert!(matches!(g.slice("zz"), Err(Error::UnknownParameter(_))));
    }

    fn sierpinski() -> CrispTopology {
        let x = Universe::new(["a", "b"]).unwrap();
        CrispTopology::from_labels(x, &[vec![], vec!["a"], vec!["a", "b"]]).unwrap()
    }

    #[test]
    fn crisp_lift() {
        let x = uni(3);
        let lifted = FsTopology::<f64>::lift_crisp(&CrispTopology::indiscrete(x.clone()), params(2));
        assert_eq!(lifted.opens().len(), 2);
        assert!(lifted.contains(&FuzzySoftSet::null(params(2), x.clone())));
        assert!(lifted.contains(&FuzzySoftSet::absolute(params(2), x)));

        // four opens: ∅, {a}, {b}, {a,b} on two points
        let two = Universe::new(["a", "b"]).unwrap();
        let t = CrispTopology::from_labels(two.clone(), &[vec![], vec!["a"], vec!["b"], vec!["a", "b"]]).unwrap();
        let lifted = FsTopology::<f64>::lift_crisp(&t, params(3));
        assert_eq!(lifted.opens().len(), 4);
        assert_eq!(lifted.verdict(), Verdict::Ok);
        let s0 = lifted.slice("e0").unwrap();
        let s2 = lifted.slice("e2").unwrap();
        assert_eq!(s0.opens(), s2.opens());
        for v in t.opens() {
            assert!(s0.contains(&FuzzySet::characteristic(two.clone(), v)));
        }
    }

    #[test]
    fn wprime_membership() {
        let t = sierpinski();
        let x = t.universe().clone();
        let lattice = GradeLattice::<f64>::default();
        for v in t.opens() {
            let f = FuzzySoftSet::from_row(params(2), &FuzzySet::characteristic(x.clone(), v));
            assert!(t.admits(&f, &lattice.thresholds()).unwrap());
        }
        // superlevel {b} is not open
        let f = FuzzySoftSet::from_values(params(1), x.clone(), &[vec![0.25, 0.75]]).unwrap();
        assert!(!t.admits(&f, &lattice.thresholds()).unwrap());
        // a graded set whose superlevels are ∅, {a}, {a,b}
        let g = FuzzySoftSet::from_values(params(1), x, &[vec![0.75, 0.25]]).unwrap();
        assert!(t.admits(&g, &lattice.thresholds()).unwrap());
    }

    #[test]
    fn superlevel_topologies() {
        let x = uni(2);
        let trivial =
            FuzzyTopology::<f64>::new(x.clone(), vec![FuzzySet::empty(x.clone()), FuzzySet::whole(x.clone())]).unwrap();
        let c = trivial.superlevel_topology(&[0.0, 0.5]).unwrap();
        assert!(c.same_opens(&CrispTopology::indiscrete(x)));

        let t = sierpinski();
        let lifted = FsTopology::<f64>::lift_crisp(&t, params(2));
        let back = lifted.slice("e1").unwrap().superlevel_topology(&[0.0]).unwrap();
        assert!(back.same_opens(&t));
        // thresholds {0} on {0,1}-valued opens give the supports
        for mu in lifted.slice("e0").unwrap().opens() {
            assert!(back.contains(&mu.support()));
        }
    }

    #[test]
    fn superlevel_monotonicity() {
        let mu = FuzzySet::from_values(uni(4), &[0.1, 0.4, 0.7, 1.0]).unwrap();
        let ts = [0.0, 0.1, 0.3, 0.5, 0.9];
        for w in ts.windows(2) {
            assert!(mu.superlevel(w[1]).is_subset(&mu.superlevel(w[0])));
        }
    }

    #[test]
    fn alpha_cut_lift() {
        let x = uni(3);
        let e = params(4).with_auto_reindex();
        let (sets, verdict) = lift_alpha_cuts(&FuzzySet::<f64>::whole(x.clone()), &e).unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(verdict, Verdict::Ok);

        let mu = FuzzySet::from_values(x, &[0.3, 0.8, 0.0]).unwrap();
        let (sets, verdict) = lift_alpha_cuts(&mu, &e).unwrap();
        assert_eq!(verdict, Verdict::Ok);
        let f = &sets[2];
        // α = 0.25: {x0, x1}; α = 0.5, 0.75: {x1}; α = 1: ∅
        let rows: Vec<Vec<f64>> = f.rows().map(|r| r.iter().map(|g| g.value()).collect()).collect();
        assert_eq!(
            rows,
            vec![
                vec![1.0, 1.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 0.0]
            ]
        );
        assert!(lift_alpha_cuts(&mu, &params(4)).is_err());
    }

    #[test]
    fn neighborhoods() {
        let (e, x) = (params(2), uni(2));
        let abs = FuzzySoftSet::absolute(e.clone(), x.clone());
        let ind = FsTopology::<f64>::indiscrete(e.clone(), x.clone());
        let pt = FuzzySoftPoint::at(e.clone(), x.clone(), 0, &[0.4, 0.9]).unwrap();
        assert!(ind.is_neighborhood(&abs, &pt).unwrap());
        assert!(ind.is_q_neighborhood(&abs, &pt).unwrap());
        let g = fss(2, &[vec![1.0, 0.5], vec![1.0, 1.0]]);
        assert!(!ind.is_neighborhood(&g, &pt).unwrap());

        let t = sierpinski();
        let lifted = FsTopology::lift_crisp(&t, e.clone());
        let v = FuzzySoftSet::from_row(e.clone(), &FuzzySet::characteristic(t.universe().clone(), &[0].into()));
        let pa = FuzzySoftPoint::at(e.clone(), t.universe().clone(), 0, &[0.3, 1.0]).unwrap();
        assert!(lifted.is_neighborhood(&v, &pa).unwrap());
        let pb = FuzzySoftPoint::at(e, t.universe().clone(), 1, &[0.3, 1.0]).unwrap();
        assert!(!lifted.is_neighborhood(&v, &pb).unwrap());
    }

    fn crisp_pairs(e: &ParameterSet, x: &Universe) -> Vec<(FuzzySoftPoint<f64>, FuzzySoftPoint<f64>)> {
        let mut out = Vec::new();
        for a in 0..x.len() {
            for b in 0..x.len() {
                if a != b {
                    out.push((
                        FuzzySoftPoint::crisp(e.clone(), x.clone(), a),
                        FuzzySoftPoint::crisp(e.clone(), x.clone(), b),
                    ));
                }
            }
        }
        out
    }

    #[test]
    fn separation_axioms() {
        let (e, x) = (params(2), uni(3));
        let pairs = crisp_pairs(&e, &x);

        let ind = FsTopology::<f64>::indiscrete(e.clone(), x.clone());
        let r = ind.separation(&pairs).unwrap();
        assert!(!r.t0() && !r.t1() && !r.t2());
        assert_eq!(r.t0_counterexample, Some(0));

        let lattice = GradeLattice::new(&[0.0, 0.5, 1.0]).unwrap();
        let disc = FsTopology::discrete(params(1), uni(2), &lattice);
        let r = disc.separation(&crisp_pairs(&params(1), &uni(2))).unwrap();
        assert!(r.t0() && r.t1() && r.t2());

        let lifted = FsTopology::<f64>::lift_crisp(&CrispTopology::discrete(x.clone()), e.clone());
        let r = lifted.separation(&pairs).unwrap();
        assert!(r.t2());
        let (i, j) = r.pairs[0].t2.unwrap();
        assert!(lifted.opens()[i].intersection(&lifted.opens()[j]).unwrap().is_null());

        // Sierpiński lift is T0 but not T1
        let s = FsTopology::<f64>::lift_crisp(&sierpinski(), e.clone());
        let sx = sierpinski().universe().clone();
        let r = s.separation(&crisp_pairs(&e, &sx)).unwrap();
        assert!(r.t0() && !r.t1() && !r.t2());

        let same = FuzzySoftPoint::crisp(e.clone(), x.clone(), 0);
        assert_eq!(ind.separation(&[(same.clone(), same)]), Err(Error::NotDistinct));
    }
}
