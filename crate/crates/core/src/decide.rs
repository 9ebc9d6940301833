//! Ranking objects by aggregating their grades across parameters.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::soft::FuzzySoftSet;

#[derive(Debug, Clone, PartialEq)]
pub enum Strategy<T> {
    /// Score is the smallest grade of the object over all parameters.
    MaxMin,
    /// Score is `Σ_e w_e · f(e)(x)`; `None` means weight 1 on every parameter.
    WeightedSum(Option<Vec<T>>),
}

impl<T> Strategy<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::MaxMin => "max-min",
            Strategy::WeightedSum(_) => "weighted-sum",
        }
    }
}

impl<T> fmt::Display for Strategy<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl<T> FromStr for Strategy<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max-min" | "maxmin" => Ok(Strategy::MaxMin),
            "weighted-sum" | "sum" => Ok(Strategy::WeightedSum(None)),
            other => Err(Error::UnknownStrategy(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ranked<T> {
    pub rank: usize,
    pub object: String,
    pub score: T,
}

/// Scores every object and sorts by descending score. Equal scores keep
/// the lexicographic order of the object labels.
pub fn rank<T: Scalar>(f: &FuzzySoftSet<T>, strategy: &Strategy<T>) -> Result<Vec<Ranked<T>>> {
    let n = f.params().len();
    let universe = f.universe();
    let scores: Vec<T> = match strategy {
        Strategy::MaxMin => (0..universe.len())
            .map(|x| (0..n).map(|e| f.grade(e, x).value()).fold(T::one(), T::min))
            .collect(),
        Strategy::WeightedSum(weights) => {
            let w = match weights {
                Some(w) if w.len() != n => {
                    return Err(Error::DimensionMismatch(format!(
                        "{} weights for {n} parameters",
                        w.len()
                    )))
                }
                Some(w) => {
                    if let Some(bad) = w.iter().find(|v| !v.is_finite() || **v < T::zero()) {
                        return Err(Error::InvalidWeight(format!("{bad:?}")));
                    }
                    w.clone()
                }
                None => vec![T::one(); n],
            };
            (0..universe.len())
                .map(|x| (0..n).fold(T::zero(), |acc, e| acc + w[e] * f.grade(e, x).value()))
                .collect()
        }
    };
    let mut order: Vec<usize> = (0..universe.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .unwrap_or(Ordering::Equal)
            .then_with(|| universe.label(a).cmp(universe.label(b)))
    });
    Ok(order
        .into_iter()
        .enumerate()
        .map(|(i, x)| Ranked {
            rank: i + 1,
            object: universe.label(x).to_string(),
            score: scores[x],
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::Universe;
    use crate::soft::ParameterSet;

    fn forest() -> FuzzySoftSet<f64> {
        FuzzySoftSet::from_values(
            ParameterSet::new(["e1", "e2", "e3", "e4"]).unwrap(),
            Universe::new(["A", "B", "C"]).unwrap(),
            &[
                vec![0.8, 0.3, 0.5],
                vec![0.1, 0.5, 0.7],
                vec![0.2, 0.3, 0.8],
                vec![0.1, 0.3, 0.5],
            ],
        )
        .unwrap()
    }

    fn scores(r: &[Ranked<f64>]) -> Vec<(&str, f64)> {
        r.iter().map(|x| (x.object.as_str(), x.score)).collect()
    }

    #[test]
    fn forest_max_min() {
        let r = rank(&forest(), &Strategy::MaxMin).unwrap();
        assert_eq!(scores(&r), vec![("C", 0.5), ("B", 0.3), ("A", 0.1)]);
        assert_eq!(r[0].rank, 1);
    }

    #[test]
    fn forest_equal_weights() {
        let r = rank(&forest(), &Strategy::WeightedSum(None)).unwrap();
        let got: Vec<_> = r.iter().map(|x| x.object.as_str()).collect();
        assert_eq!(got, ["C", "B", "A"]);
        for (x, want) in r.iter().zip([2.5, 1.4, 1.2]) {
            assert!((x.score - want).abs() < 1e-12, "{} {}", x.object, x.score);
        }
    }

    #[test]
    fn weights_change_the_winner() {
        let w = Strategy::WeightedSum(Some(vec![10.0, 0.0, 0.0, 0.0]));
        assert_eq!(rank(&forest(), &w).unwrap()[0].object, "A");
    }

    #[test]
    fn weight_count_mismatch() {
        let w = Strategy::WeightedSum(Some(vec![1.0, 1.0]));
        assert!(matches!(rank(&forest(), &w), Err(Error::DimensionMismatch(_))));
        let w = Strategy::WeightedSum(Some(vec![1.0, -1.0, 1.0, 1.0]));
        assert!(matches!(rank(&forest(), &w), Err(Error::InvalidWeight(_))));
    }

    #[test]
    fn ties_follow_label_order() {
        let f = FuzzySoftSet::from_values(
            ParameterSet::new(["e"]).unwrap(),
            Universe::new(["z", "b", "m"]).unwrap(),
            &[vec![0.4, 0.4, 0.9]],
        )
        .unwrap();
        let r = rank(&f, &Strategy::MaxMin).unwrap();
        let got: Vec<_> = r.iter().map(|x| x.object.as_str()).collect();
        assert_eq!(got, ["m", "b", "z"]);
    }

    #[test]
    fn single_object() {
        let f = FuzzySoftSet::from_values(
            ParameterSet::new(["e1", "e2"]).unwrap(),
            Universe::new(["only"]).unwrap(),
            &[vec![0.2], vec![0.6]],
        )
        .unwrap();
        assert_eq!(rank(&f, &Strategy::<f64>::MaxMin).unwrap().len(), 1);
    }

    #[test]
    fn strategy_names() {
        assert_eq!("max-min".parse::<Strategy<f64>>().unwrap(), Strategy::MaxMin);
        assert!(matches!(
            "median".parse::<Strategy<f64>>(),
            Err(Error::UnknownStrategy(_))
        ));
    }
}
