//! Fuzzy soft norms lifted from weighted `p`-norms, axiom checks and
//! constructive Hausdorff separation.

use crate::error::{Error, Result};
use crate::fuzzy::Grade;
use crate::real::{AlphaGrid, Cut, FuzzyReal};
use crate::scalar::Scalar;
use crate::soft::ParameterSet;
use crate::soft_real::FuzzySoftReal;

use super::point::{fs_scalar_mul, fs_vec_add, FSVectorPoint, PNorm, VectorPoint};

/// A fuzzy soft norm given by its crisp slices `‖x‖^i_{e,α}`.
///
/// `cut(e, j, x)` returns `[‖x‖^1_{e,α_j}, ‖x‖^2_{e,α_j}]`. The cuts must be
/// nested in `j`.
pub trait SoftNorm<T: Scalar> {
    fn params(&self) -> &ParameterSet;
    fn grid(&self) -> &AlphaGrid<T>;
    fn cut(&self, e: usize, level: usize, x: &VectorPoint<T>) -> Cut<T>;

    /// `‖x̃_E‖` as a fuzzy soft real.
    fn eval(&self, pt: &FSVectorPoint<T>) -> Result<FuzzySoftReal<T>> {
        if pt.params() != self.params() {
            return Err(Error::ParameterMismatch);
        }
        let m = self.grid().len();
        let values = (0..self.params().len())
            .map(|e| {
                let (lower, upper) = (0..m)
                    .map(|j| {
                        let c = self.cut(e, j, pt.vector());
                        (c.lower, c.upper)
                    })
                    .unzip();
                FuzzyReal::new(self.grid().clone(), lower, upper)
            })
            .collect::<Result<Vec<_>>>()?;
        FuzzySoftReal::new(self.params().clone(), values)
    }

    /// Largest slice value `max_{e,α,i} ‖x‖^i_{e,α}`, attained at the lowest level.
    fn magnitude(&self, x: &VectorPoint<T>) -> T {
        (0..self.params().len()).fold(T::zero(), |acc, e| acc.max(self.cut(e, 0, x).upper))
    }
}

/// Characteristic lift of `w_e·‖·‖_p`: every cut is the degenerate
/// `[w_e‖x‖_p, w_e‖x‖_p]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FSNorm<T> {
    params: ParameterSet,
    grid: AlphaGrid<T>,
    p: PNorm,
    weights: Vec<T>,
}

impl<T: Scalar> FSNorm<T> {
    pub fn new(params: ParameterSet, grid: AlphaGrid<T>, p: PNorm, weights: Vec<T>) -> Result<Self> {
        if weights.len() != params.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} parameters",
                weights.len(),
                params.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > T::zero())) {
            return Err(Error::InvalidWeight(w.to_string()));
        }
        Ok(FSNorm {
            params,
            grid,
            p,
            weights,
        })
    }

    /// All weights 1.
    pub fn uniform(params: ParameterSet, grid: AlphaGrid<T>, p: PNorm) -> Self {
        let weights = vec![T::one(); params.len()];
        FSNorm {
            params,
            grid,
            p,
            weights,
        }
    }

    pub fn p(&self) -> PNorm {
        self.p
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// The slice `‖x‖_e = w_e‖x‖_p`.
    pub fn slice(&self, e: usize, x: &VectorPoint<T>) -> T {
        self.weights[e] * x.norm(self.p)
    }
}

impl<T: Scalar> SoftNorm<T> for FSNorm<T> {
    fn params(&self) -> &ParameterSet {
        &self.params
    }

    fn grid(&self) -> &AlphaGrid<T> {
        &self.grid
    }

    fn cut(&self, e: usize, _level: usize, x: &VectorPoint<T>) -> Cut<T> {
        let v = self.slice(e, x);
        Cut { lower: v, upper: v }
    }

    fn eval(&self, pt: &FSVectorPoint<T>) -> Result<FuzzySoftReal<T>> {
        if pt.params() != &self.params {
            return Err(Error::ParameterMismatch);
        }
        let values = (0..self.params.len())
            .map(|e| FuzzyReal::crisp(self.slice(e, pt.vector()), self.grid.clone()))
            .collect();
        FuzzySoftReal::new(self.params.clone(), values)
    }
}

/// `‖x̃_E‖`.
pub fn fsnorm_eval<T: Scalar>(n: &impl SoftNorm<T>, pt: &FSVectorPoint<T>) -> Result<FuzzySoftReal<T>> {
    n.eval(pt)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// `‖x̃‖ = 0̄ ⇔ x̃ = 0̄`.
    ZeroIffZero,
    /// `‖r x̃‖ = |r̄| ⊗̃ ‖x̃‖`.
    Homogeneity,
    /// `‖x̃ ⊕̃ ỹ‖ ⪯̃ ‖x̃‖ ⊕̃ ‖ỹ‖`.
    Triangle,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::ZeroIffZero => "zero-iff-zero",
            Axiom::Homogeneity => "homogeneity",
            Axiom::Triangle => "triangle",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomViolation {
    pub sample: usize,
    pub axiom: Axiom,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AxiomReport {
    pub checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Tolerances for [`fsnorm_axiom_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxiomTolerance<T> {
    /// Relative deviation allowed in `‖r x̃‖ = |r̄| ⊗̃ ‖x̃‖`.
    pub homogeneity: T,
    /// Relative slack on the right of the triangle inequality. Zero is exact.
    pub triangle: T,
}

impl<T: Scalar> Default for AxiomTolerance<T> {
    fn default() -> Self {
        AxiomTolerance {
            homogeneity: T::lit(1e-12),
            triangle: T::zero(),
        }
    }
}

/// Checks the three norm axioms on every `(x̃, ỹ, r)`. Zero-iff-zero is
/// checked on every parameter slice.
pub fn fsnorm_axiom_check<T: Scalar>(
    n: &impl SoftNorm<T>,
    samples: &[(FSVectorPoint<T>, FSVectorPoint<T>, T)],
    tol: AxiomTolerance<T>,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    let stretch = FuzzySoftReal::crisp(T::one() + tol.triangle, n.params().clone(), n.grid().clone()).into_inner();
    for (i, (x, y, r)) in samples.iter().enumerate() {
        report.checked += 1;
        let mut fail = |axiom, detail: String| {
            report.violations.push(AxiomViolation {
                sample: i,
                axiom,
                detail,
            });
        };
        let nx = n.eval(x)?;
        let ny = n.eval(y)?;

        for (pt, val) in [(x, &nx), (y, &ny)] {
            for (e, v) in val.values().iter().enumerate() {
                let zero_norm = v.is_crisp() && v.lower()[0].is_zero();
                if zero_norm != pt.vector().is_zero() {
                    fail(
                        Axiom::ZeroIffZero,
                        format!(
                            "support {:?} at parameter {}: zero norm is {zero_norm}",
                            pt.coords(),
                            n.params().label(e)
                        ),
                    );
                }
            }
        }

        let lhs = n.eval(&fs_scalar_mul(*r, x)?)?;
        let abs_r = FuzzySoftReal::crisp(r.abs(), n.params().clone(), n.grid().clone()).into_inner();
        let rhs = abs_r.mul(&nx)?;
        let dev = lhs.max_deviation(&rhs)?;
        let scale = rhs
            .values()
            .iter()
            .fold(T::zero(), |acc, v| acc.max(v.support().upper.abs()));
        if dev > tol.homogeneity * scale {
            fail(
                Axiom::Homogeneity,
                format!("r = {r}: deviation {dev} exceeds {} relative", tol.homogeneity),
            );
        }

        let sum = n.eval(&fs_vec_add(x, y)?.point)?;
        let bound = nx.add(&ny)?.mul(&stretch)?;
        if let Some(e) = sum.leq_witness(&bound)? {
            fail(Axiom::Triangle, format!("order fails at parameter {e}"));
        }
    }
    Ok(report)
}

/// Open ball `{z : ‖z − c‖_p < r}` lifted to the characteristic fuzzy soft set.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball<T> {
    pub center: VectorPoint<T>,
    pub radius: T,
    pub p: PNorm,
}

impl<T: Scalar> Ball<T> {
    pub fn contains(&self, z: &VectorPoint<T>) -> Result<bool> {
        Ok(z.sub(&self.center)?.norm(self.p) < self.radius)
    }

    /// Grade of `z` at any parameter: 1 inside, 0 outside.
    pub fn grade(&self, z: &VectorPoint<T>) -> Result<Grade<T>> {
        Ok(if self.contains(z)? { Grade::one() } else { Grade::zero() })
    }

    /// `x̃ ∈̃ B_E`: `λ_e ≤ B_E(e)(x)` for every `e`.
    pub fn has_member(&self, pt: &FSVectorPoint<T>) -> Result<bool> {
        let g = self.grade(pt.vector())?;
        Ok(pt.lambda().iter().all(|&l| l <= g))
    }

    /// Lattice of spacing `step` over the bounding box `[c − r, c + r]^d`.
    pub fn covering_grid(&self, step: T) -> Vec<VectorPoint<T>> {
        let n = (self.radius * T::lit(2.0) / step).ceil().to_usize().unwrap_or(0);
        let d = self.center.dim();
        let mut out = Vec::new();
        let mut idx = vec![0usize; d];
        loop {
            let coords = idx
                .iter()
                .zip(self.center.coords())
                .map(|(&k, &c)| c - self.radius + T::from_usize(k).expect("index") * step)
                .collect();
            out.push(VectorPoint::new(coords).expect("finite lattice point"));
            let mut axis = 0;
            while axis < d && idx[axis] == n {
                idx[axis] = 0;
                axis += 1;
            }
            if axis == d {
                return out;
            }
            idx[axis] += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Separation<T> {
    pub u: Ball<T>,
    pub v: Ball<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationCheck<T> {
    pub samples: usize,
    /// Grid vectors where `min(U_E, V_E)` is not zero.
    pub overlaps: Vec<VectorPoint<T>>,
}

impl<T: Scalar> Separation<T> {
    /// `min(U_E(e)(z), V_E(e)(z))` at a sample vector.
    pub fn intersection_grade(&self, z: &VectorPoint<T>) -> Result<Grade<T>> {
        Ok(self.u.grade(z)?.min(self.v.grade(z)?))
    }

    /// Evaluates the pointwise min on lattices of spacing `r/10` covering both balls.
    pub fn validate(&self) -> Result<SeparationCheck<T>> {
        let step = self.u.radius / T::lit(10.0);
        let mut check = SeparationCheck {
            samples: 0,
            overlaps: Vec::new(),
        };
        for ball in [&self.u, &self.v] {
            for z in ball.covering_grid(step) {
                check.samples += 1;
                if !self.intersection_grade(&z)?.is_zero() {
                    check.overlaps.push(z);
                }
            }
        }
        Ok(check)
    }
}

/// Disjoint open neighborhoods of two points with distinct supports: balls
/// of radius `‖x − y‖_p / 3` in the base norm.
pub fn hausdorff_separate<T: Scalar>(
    n: &FSNorm<T>,
    x: &FSVectorPoint<T>,
    y: &FSVectorPoint<T>,
) -> Result<Separation<T>> {
    x.check_space(y)?;
    if !x.is_distinct(y) {
        return Err(Error::NotDistinct);
    }
    let radius = x.vector().sub(y.vector())?.norm(n.p()) / T::lit(3.0);
    let ball = |c: &FSVectorPoint<T>| Ball {
        center: c.vector().clone(),
        radius,
        p: n.p(),
    };
    Ok(Separation { u: ball(x), v: ball(y) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params() -> ParameterSet {
        ParameterSet::new(["e1", "e2", "e3"]).unwrap()
    }

    fn norm(p: PNorm) -> FSNorm<f64> {
        FSNorm::new(params(), AlphaGrid::default(), p, vec![1.0, 2.0, 0.5]).unwrap()
    }

    fn pt(c: &[f64]) -> FSVectorPoint<f64> {
        FSVectorPoint::new(VectorPoint::new(c.to_vec()).unwrap(), params(), &[0.5, 1.0, 0.2]).unwrap()
    }

    struct ZeroWeight<'a>(&'a FSNorm<f64>);

    impl SoftNorm<f64> for ZeroWeight<'_> {
        fn params(&self) -> &ParameterSet {
            self.0.params()
        }

        fn grid(&self) -> &AlphaGrid<f64> {
            self.0.grid()
        }

        fn cut(&self, e: usize, level: usize, x: &VectorPoint<f64>) -> Cut<f64> {
            if e == 1 {
                Cut { lower: 0.0, upper: 0.0 }
            } else {
                self.0.cut(e, level, x)
            }
        }
    }

    #[test]
    fn evaluation() {
        let n = FSNorm::uniform(params(), AlphaGrid::default(), PNorm::Two);
        let v = n.eval(&pt(&[3.0, 4.0])).unwrap();
        for e in ["e1", "e2", "e3"] {
            let r = v.value(e).unwrap();
            assert!((0..r.grid().len()).all(|j| r.cut(j) == Cut { lower: 5.0, upper: 5.0 }));
        }
        let zero = FuzzySoftReal::crisp(0.0, params(), AlphaGrid::default()).into_inner();
        assert_eq!(n.eval(&pt(&[0.0, 0.0])).unwrap(), zero);

        let scaled = n.eval(&fs_scalar_mul(-2.0, &pt(&[3.0, 4.0])).unwrap()).unwrap();
        assert_eq!(scaled.crisp_value(), Some(10.0));

        let weighted = norm(PNorm::One).eval(&pt(&[1.0, -2.0])).unwrap();
        assert_eq!(weighted.value("e2").unwrap().cut(50).lower, 6.0);
        assert_eq!(norm(PNorm::One).magnitude(pt(&[1.0, -2.0]).vector()), 6.0);
    }

    #[test]
    fn generic_eval_matches_lift() {
        struct Generic<'a>(&'a FSNorm<f64>);
        impl SoftNorm<f64> for Generic<'_> {
            fn params(&self) -> &ParameterSet {
                self.0.params()
            }
            fn grid(&self) -> &AlphaGrid<f64> {
                self.0.grid()
            }
            fn cut(&self, e: usize, level: usize, x: &VectorPoint<f64>) -> Cut<f64> {
                self.0.cut(e, level, x)
            }
        }
        let n = norm(PNorm::Two);
        let x = pt(&[0.3, -7.0]);
        assert_eq!(Generic(&n).eval(&x).unwrap(), n.eval(&x).unwrap());
    }

    #[test]
    fn weights_and_params_are_checked() {
        let g = AlphaGrid::default();
        assert!(matches!(
            FSNorm::new(params(), g.clone(), PNorm::Two, vec![1.0, 0.0, 1.0]),
            Err(Error::InvalidWeight(_))
        ));
        assert!(FSNorm::new(params(), g.clone(), PNorm::Two, vec![1.0]).is_err());
        let other = FSVectorPoint::crisp(VectorPoint::zero(2), ParameterSet::new(["a"]).unwrap());
        assert_eq!(norm(PNorm::Two).eval(&other), Err(Error::ParameterMismatch));
    }

    #[test]
    fn axioms_hold_and_fault_is_caught() {
        let n = norm(PNorm::Two);
        let samples = vec![
            (pt(&[0.0, 0.0]), pt(&[0.0, 0.0]), 0.0),
            (pt(&[1.0, 2.0]), pt(&[-3.0, 0.5]), -1.5),
            (pt(&[1e3, -2e-3]), pt(&[7.0, 7.0]), 3.25),
        ];
        let report = fsnorm_axiom_check(&n, &samples, AxiomTolerance::default()).unwrap();
        assert_eq!(report.checked, 3);
        assert!(report.is_ok(), "{:?}", report.violations);

        let bad = fsnorm_axiom_check(&ZeroWeight(&n), &samples, AxiomTolerance::default()).unwrap();
        assert!(!bad.is_ok());
        assert!(bad
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::ZeroIffZero && v.sample == 1));
        assert!(bad.violations.iter().all(|v| v.sample != 0));
    }

    #[test]
    fn separation() {
        let n = FSNorm::uniform(params(), AlphaGrid::default(), PNorm::Two);
        let x = pt(&[0.0, 0.0]);
        let y = pt(&[3.0, 0.0]);
        let s = hausdorff_separate(&n, &x, &y).unwrap();
        assert_eq!(s.u.radius, 1.0);
        assert!(s.u.has_member(&x).unwrap());
        assert!(s.v.has_member(&y).unwrap());
        assert!(!s.u.has_member(&y).unwrap());
        // step 0.1 grid over both unit balls
        let check = s.validate().unwrap();
        assert_eq!(check.samples, 2 * 21 * 21);
        assert!(check.overlaps.is_empty());
        assert_eq!(hausdorff_separate(&n, &x, &x), Err(Error::NotDistinct));
    }

    #[test]
    fn covering_grid_reaches_both_corners() {
        let b = Ball {
            center: VectorPoint::new(vec![1.0, -1.0]).unwrap(),
            radius: 0.5,
            p: PNorm::Inf,
        };
        let g = b.covering_grid(0.25);
        assert_eq!(g.len(), 25);
        assert_eq!(g[0].coords(), &[0.5, -1.5]);
        assert_eq!(g[24].coords(), &[1.5, -0.5]);
    }

    proptest! {
        #[test]
        fn slices_are_crisp_norms(
            x in prop::collection::vec(-1e3..1e3f64, 3),
            y in prop::collection::vec(-1e3..1e3f64, 3),
            r in -1e3..1e3f64,
        ) {
            for p in [PNorm::One, PNorm::Two, PNorm::Inf] {
                let n = norm(p);
                let (px, py) = (pt(&x), pt(&y));
                // 1 and inf attain equality on open cones, where rounding can tip either way
                let tol = AxiomTolerance { triangle: if p == PNorm::Two { 0.0 } else { 1e-12 }, ..Default::default() };
                let report = fsnorm_axiom_check(&n, &[(px.clone(), py.clone(), r)], tol).unwrap();
                prop_assert!(report.is_ok(), "{:?}", report.violations);
                let v = n.eval(&px).unwrap();
                for (e, w) in n.weights().iter().enumerate() {
                    let want = w * px.vector().norm(p);
                    let fr = &v.values()[e];
                    let flat = Cut { lower: want, upper: want };
                    prop_assert!((0..fr.grid().len()).all(|j| fr.cut(j) == flat));
                }
            }
        }

        #[test]
        fn separated_balls_are_disjoint(
            x in prop::collection::vec(-10.0..10.0f64, 2),
            y in prop::collection::vec(-10.0..10.0f64, 2),
        ) {
            prop_assume!(x != y);
            let n = FSNorm::uniform(params(), AlphaGrid::default(), PNorm::Two);
            let s = hausdorff_separate(&n, &pt(&x), &pt(&y)).unwrap();
            prop_assert!(s.validate().unwrap().overlaps.is_empty());
        }
    }
}
