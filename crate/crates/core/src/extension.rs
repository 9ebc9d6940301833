//! Brute-force sup-min (extension principle) arithmetic on a regular grid.
//!
//! This is the reference the level-wise arithmetic in [`crate::real`] is
//! measured against. Membership of each operand is recovered from its cuts,
//! sampled at nodes `k·step`, and combined by exhaustive search over `s`.

use crate::error::{Error, Result};
use crate::real::{ArithOp, Cut, FuzzyReal};
use crate::scalar::Scalar;

/// Membership function sampled at `t_k = (offset + k)·step`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMembership<T> {
    pub offset: i64,
    pub step: T,
    pub values: Vec<T>,
}

impl<T: Scalar> DiscreteMembership<T> {
    pub fn node(&self, k: usize) -> T {
        T::from_i64(self.offset + k as i64).expect("node index representable") * self.step
    }

    /// `{t_k : μ(t_k) ≥ α}` as its extreme nodes.
    pub fn cut(&self, alpha: T) -> Option<Cut<T>> {
        let first = self.values.iter().position(|&v| v >= alpha)?;
        let last = self.values.iter().rposition(|&v| v >= alpha)?;
        Some(Cut {
            lower: self.node(first),
            upper: self.node(last),
        })
    }

    pub fn peak(&self) -> T {
        self.values.iter().copied().fold(T::zero(), T::max)
    }

    /// Membership at the node nearest to `t`.
    pub fn at(&self, t: T) -> T {
        let k = (t / self.step).round().to_i64().unwrap_or(i64::MAX) - self.offset;
        if k < 0 || k as usize >= self.values.len() {
            return T::zero();
        }
        self.values[k as usize]
    }
}

struct Sampled<T> {
    first: i64,
    values: Vec<T>,
}

fn sample<T: Scalar>(a: &FuzzyReal<T>, step: T) -> Sampled<T> {
    let s = a.support();
    let first = (s.lower / step).floor().to_i64().expect("finite support");
    let last = (s.upper / step).ceil().to_i64().expect("finite support");
    let values = (first..=last)
        .map(|k| a.membership(T::from_i64(k).unwrap() * step))
        .collect();
    Sampled { first, values }
}

fn check_step<T: Scalar>(step: T) -> Result<()> {
    if !(step > T::zero() && step.is_finite()) {
        return Err(Error::InvalidGrid(format!("support step must be positive, got {step}")));
    }
    Ok(())
}

/// `(μ ⊕ δ)(t) = sup_s min{μ(s), δ(t − s)}`.
pub fn ext_add<T: Scalar>(a: &FuzzyReal<T>, b: &FuzzyReal<T>, step: T) -> Result<DiscreteMembership<T>> {
    check_step(step)?;
    let (sa, sb) = (sample(a, step), sample(b, step));
    let n = sa.values.len() + sb.values.len() - 1;
    let mut out = vec![T::zero(); n];
    for (i, &mu) in sa.values.iter().enumerate() {
        if mu == T::zero() {
            continue;
        }
        for (j, &de) in sb.values.iter().enumerate() {
            let v = mu.min(de);
            if v > out[i + j] {
                out[i + j] = v;
            }
        }
    }
    Ok(DiscreteMembership {
        offset: sa.first + sb.first,
        step,
        values: out,
    })
}

/// `(μ ⊖ δ)(t) = sup_s min{μ(s), δ(s − t)}`.
pub fn ext_sub<T: Scalar>(a: &FuzzyReal<T>, b: &FuzzyReal<T>, step: T) -> Result<DiscreteMembership<T>> {
    check_step(step)?;
    let (sa, sb) = (sample(a, step), sample(b, step));
    // t = s − (s − t): node index i − j, shifted so the smallest is 0
    let nb = sb.values.len();
    let n = sa.values.len() + nb - 1;
    let mut out = vec![T::zero(); n];
    for (i, &mu) in sa.values.iter().enumerate() {
        if mu == T::zero() {
            continue;
        }
        for (j, &de) in sb.values.iter().enumerate() {
            let k = i + (nb - 1 - j);
            let v = mu.min(de);
            if v > out[k] {
                out[k] = v;
            }
        }
    }
    Ok(DiscreteMembership {
        offset: sa.first - (sb.first + nb as i64 - 1),
        step,
        values: out,
    })
}

/// `(μ ⊗ δ)(t) = sup_{s ≠ 0} min{μ(s), δ(t/s)}`.
pub fn ext_mul<T: Scalar>(a: &FuzzyReal<T>, b: &FuzzyReal<T>, step: T) -> Result<DiscreteMembership<T>> {
    check_step(step)?;
    let (ca, cb) = (a.support(), b.support());
    let products = [
        ca.lower * cb.lower,
        ca.lower * cb.upper,
        ca.upper * cb.lower,
        ca.upper * cb.upper,
    ];
    let lo = products.iter().copied().fold(T::infinity(), T::min);
    let hi = products.iter().copied().fold(T::neg_infinity(), T::max);
    let sa = sample(a, step);
    let out = scan(lo, hi, step, |t| {
        let mut best = T::zero();
        for (i, &mu) in sa.values.iter().enumerate() {
            let s = T::from_i64(sa.first + i as i64).unwrap() * step;
            if mu <= best || s == T::zero() {
                continue;
            }
            best = best.max(mu.min(b.membership(t / s)));
        }
        best
    });
    Ok(out)
}

/// `(μ ⊘ δ)(t) = sup_s min{μ(st), δ(s)}`.
pub fn ext_div<T: Scalar>(a: &FuzzyReal<T>, b: &FuzzyReal<T>, step: T) -> Result<DiscreteMembership<T>> {
    check_step(step)?;
    let (ca, cb) = (a.support(), b.support());
    if cb.lower <= T::zero() && cb.upper >= T::zero() {
        return Err(Error::DivisionByIntervalContainingZero {
            alpha: b.grid().lowest().to_string(),
            lower: cb.lower.to_string(),
            upper: cb.upper.to_string(),
        });
    }
    let quotients = [
        ca.lower / cb.lower,
        ca.lower / cb.upper,
        ca.upper / cb.lower,
        ca.upper / cb.upper,
    ];
    let lo = quotients.iter().copied().fold(T::infinity(), T::min);
    let hi = quotients.iter().copied().fold(T::neg_infinity(), T::max);
    let sb = sample(b, step);
    let out = scan(lo, hi, step, |t| {
        let mut best = T::zero();
        for (j, &de) in sb.values.iter().enumerate() {
            if de <= best {
                continue;
            }
            let s = T::from_i64(sb.first + j as i64).unwrap() * step;
            best = best.max(de.min(a.membership(s * t)));
        }
        best
    });
    Ok(out)
}

/// Sup-min counterpart of [`ArithOp`].
pub fn ext_apply<T: Scalar>(op: ArithOp, a: &FuzzyReal<T>, b: &FuzzyReal<T>, step: T) -> Result<DiscreteMembership<T>> {
    match op {
        ArithOp::Add => ext_add(a, b, step),
        ArithOp::Sub => ext_sub(a, b, step),
        ArithOp::Mul => ext_mul(a, b, step),
        ArithOp::Div => ext_div(a, b, step),
    }
}

fn scan<T: Scalar>(lo: T, hi: T, step: T, f: impl Fn(T) -> T) -> DiscreteMembership<T> {
    let first = (lo / step).floor().to_i64().expect("finite bound");
    let last = (hi / step).ceil().to_i64().expect("finite bound");
    let values = (first..=last).map(|k| f(T::from_i64(k).unwrap() * step)).collect();
    DiscreteMembership {
        offset: first,
        step,
        values,
    }
}

/// Level-by-level comparison of a level-wise result with an oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleComparison<T> {
    /// `(α, |ΔL|, |ΔR|)` per level; infinite when the oracle cut is empty.
    pub levels: Vec<(T, T, T)>,
    pub max_deviation: T,
}

pub fn compare_with_oracle<T: Scalar>(value: &FuzzyReal<T>, oracle: &DiscreteMembership<T>) -> OracleComparison<T> {
    let mut levels = Vec::with_capacity(value.grid().len());
    let mut max_deviation = T::zero();
    for (j, &alpha) in value.grid().levels().iter().enumerate() {
        let c = value.cut(j);
        let (dl, dr) = match oracle.cut(alpha) {
            Some(o) => ((c.lower - o.lower).abs(), (c.upper - o.upper).abs()),
            None => (T::infinity(), T::infinity()),
        };
        max_deviation = max_deviation.max(dl).max(dr);
        levels.push((alpha, dl, dr));
    }
    OracleComparison { levels, max_deviation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::AlphaGrid;

    fn grid() -> AlphaGrid<f64> {
        AlphaGrid::default()
    }

    fn tri(a: f64, b: f64, c: f64) -> FuzzyReal<f64> {
        FuzzyReal::triangular(a, b, c, grid()).unwrap()
    }

    #[test]
    fn crisp_sum_peaks_at_five() {
        let m = ext_add(&FuzzyReal::crisp(2.0, grid()), &FuzzyReal::crisp(3.0, grid()), 1e-3).unwrap();
        assert_eq!(m.at(5.0), 1.0);
        assert_eq!(m.at(5.1), 0.0);
        let c = m.cut(1.0).unwrap();
        assert!((c.lower - 5.0).abs() < 1e-9 && (c.upper - 5.0).abs() < 1e-9);
    }

    #[test]
    fn triangle_sum_apex() {
        let m = ext_add(&tri(1.0, 2.0, 3.0), &tri(2.0, 3.0, 4.0), 1e-3).unwrap();
        assert!(m.at(5.0) >= 1.0 - 1e-12);
        assert!(m.peak() == 1.0);
        let levelwise = tri(1.0, 2.0, 3.0).add(&tri(2.0, 3.0, 4.0)).unwrap();
        let cmp = compare_with_oracle(&levelwise, &m);
        assert!(cmp.max_deviation <= 2e-3, "{}", cmp.max_deviation);
    }

    #[test]
    fn subtraction_formulas_disagree() {
        let a = tri(1.0, 2.0, 3.0);
        let oracle = ext_sub(&a, &a, 1e-3).unwrap();
        // extension principle: a ⊖ a has support [-2, 2] at the lowest level
        let low = oracle.cut(grid().lowest()).unwrap();
        assert!((low.lower + 2.0).abs() < 0.05 && (low.upper - 2.0).abs() < 0.05);
        let levelwise = a.sub(&a).unwrap();
        let cmp = compare_with_oracle(&levelwise, &oracle);
        assert!(cmp.max_deviation > 1.0);
    }

    #[test]
    fn product_of_positive_triangles() {
        let (a, b) = (tri(1.0, 2.0, 3.0), tri(2.0, 3.0, 4.0));
        let oracle = ext_mul(&a, &b, 5e-3).unwrap();
        let cmp = compare_with_oracle(&a.mul(&b).unwrap(), &oracle);
        assert!(cmp.max_deviation <= 0.05, "{}", cmp.max_deviation);
    }

    #[test]
    fn quotient_of_positive_triangles() {
        let (a, b) = (tri(2.0, 4.0, 6.0), tri(1.0, 2.0, 3.0));
        let oracle = ext_div(&a, &b, 5e-3).unwrap();
        let cmp = compare_with_oracle(&a.div(&b).unwrap(), &oracle);
        assert!(cmp.max_deviation <= 0.05, "{}", cmp.max_deviation);
        assert!(ext_div(&a, &tri(-1.0, 0.0, 1.0), 1e-2).is_err());
    }

    #[test]
    fn rejects_bad_step() {
        assert!(ext_add(&tri(0.0, 1.0, 2.0), &tri(0.0, 1.0, 2.0), 0.0).is_err());
    }
}
