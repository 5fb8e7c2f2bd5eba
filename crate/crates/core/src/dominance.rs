//! Measure-based dominance between cumulative measures, the Choquet
//! surrogate used when dominance is incomplete, and OWA aggregation of
//! ordered measures.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Exec;
use crate::fuzzy::{rank_centroid, Tfn};
use crate::lattice::{rank_lattice_ini, LatticeError, LatticeOptions, LatticeRelation};
use crate::measures::{CumulativeMeasure, LinguisticScale, MeasureError};
use crate::owa::WeightVector;

/// Cumulative values closer than this are treated as equal.
pub const DOMINANCE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DominanceError {
    #[error("measures have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("nothing to order")]
    Empty,
    #[error("{measures} measures but {weights} weights")]
    CountMismatch { measures: usize, weights: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DominanceRelation {
    FirstDominates,
    SecondDominates,
    Equal,
    Incomparable,
}

impl DominanceRelation {
    pub fn reverse(self) -> Self {
        match self {
            Self::FirstDominates => Self::SecondDominates,
            Self::SecondDominates => Self::FirstDominates,
            other => other,
        }
    }
}

/// How a set of fuzzy surrogates is put in order.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
#[serde(rename_all = "snake_case", tag = "method")]
pub enum RankingMethod {
    #[default]
    Centroid,
    LatticeIni(LatticeOptions),
}

impl RankingMethod {
    pub fn name(&self) -> &'static str {
        match self {
            RankingMethod::Centroid => "centroid",
            RankingMethod::LatticeIni(_) => "lattice-ini",
        }
    }
}

/// Which comparison produced an ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingMethod {
    Dominance,
    Surrogate,
}

/// Criterion permutation `ρ`, largest satisfaction first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionOrdering {
    pub order: Vec<usize>,
    pub method: OrderingMethod,
    pub surrogates: Option<Vec<Tfn>>,
}

/// Dominance of `first` over `second`: `≥` on every prefix and `>` on at
/// least one.
pub fn dominates(
    first: &CumulativeMeasure,
    second: &CumulativeMeasure,
) -> Result<DominanceRelation, DominanceError> {
    if first.len() != second.len() {
        return Err(DominanceError::LengthMismatch(first.len(), second.len()));
    }
    let (mut above, mut below) = (false, false);
    for (x, y) in first.values().iter().zip(second.values()) {
        if x - y > DOMINANCE_TOL {
            above = true;
        } else if y - x > DOMINANCE_TOL {
            below = true;
        }
    }
    Ok(match (above, below) {
        (false, false) => DominanceRelation::Equal,
        (true, false) => DominanceRelation::FirstDominates,
        (false, true) => DominanceRelation::SecondDominates,
        (true, true) => DominanceRelation::Incomparable,
    })
}

/// `V_j = μ(H_j) − μ(H_{j−1})` with `μ(H_0) = 0`.
pub fn delta_weights(mu: &CumulativeMeasure) -> Vec<f64> {
    let mut prev = 0.0;
    mu.values()
        .iter()
        .map(|&v| {
            let d = (v - prev).max(0.0);
            prev = v;
            d
        })
        .collect()
}

/// Choquet surrogate `M(μ) = Σ_j V_j · y_j`.
pub fn surrogate(mu: &CumulativeMeasure, scale: &LinguisticScale) -> Result<Tfn, DominanceError> {
    if mu.len() != scale.len() {
        return Err(DominanceError::LengthMismatch(mu.len(), scale.len()));
    }
    delta_weights(mu)
        .iter()
        .zip(scale.values())
        .try_fold(Tfn::zero(), |acc, (&v, y)| {
            Ok(acc + y.scale(v).expect("deltas are nonnegative"))
        })
}

/// Orders triangular numbers largest first; ties keep input order.
///
/// The lattice method is pairwise and need not be transitive, so items are
/// ranked by how many others they beat (a win counts 2, an equivalence 1).
pub fn rank_fuzzy(
    items: &[Tfn],
    method: RankingMethod,
    exec: Exec,
) -> Result<Vec<usize>, DominanceError> {
    match method {
        RankingMethod::Centroid => Ok(rank_centroid(items).iter().map(|r| r.index).collect()),
        RankingMethod::LatticeIni(opts) => {
            let n = items.len();
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            let relations = exec.map(&pairs, |&(i, j)| {
                rank_lattice_ini(&items[i], &items[j], opts)
            });
            let mut score = vec![0u64; n];
            for (&(i, j), rel) in pairs.iter().zip(relations) {
                match rel? {
                    LatticeRelation::Succeeds => score[i] += 2,
                    LatticeRelation::Precedes => score[j] += 2,
                    LatticeRelation::Equivalent => {
                        score[i] += 1;
                        score[j] += 1;
                    }
                }
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&i, &j| score[j].cmp(&score[i]).then(i.cmp(&j)));
            Ok(order)
        }
    }
}

/// Pairwise dominance relations, `rel[i][j]` of measure `i` against `j`.
pub fn dominance_matrix(
    measures: &[CumulativeMeasure],
    exec: Exec,
) -> Result<Vec<Vec<DominanceRelation>>, DominanceError> {
    let n = measures.len();
    let rows = exec.map_range(n, |i| {
        measures
            .iter()
            .map(|m| dominates(&measures[i], m))
            .collect::<Result<Vec<_>, _>>()
    });
    rows.into_iter().collect()
}

/// Permutation by dominance when every pair is comparable.
fn dominance_order(rel: &[Vec<DominanceRelation>]) -> Option<Vec<usize>> {
    if rel
        .iter()
        .flatten()
        .any(|r| *r == DominanceRelation::Incomparable)
    {
        return None;
    }
    let wins: Vec<usize> = rel
        .iter()
        .map(|row| {
            row.iter()
                .filter(|r| **r == DominanceRelation::FirstDominates)
                .count()
        })
        .collect();
    let mut order: Vec<usize> = (0..rel.len()).collect();
    order.sort_by(|&i, &j| wins[j].cmp(&wins[i]).then(i.cmp(&j)));
    Some(order)
}

/// Orders criteria by dominance, falling back to surrogates for all of them
/// as soon as one pair is incomparable.
pub fn order_criteria(
    measures: &[CumulativeMeasure],
    scale: &LinguisticScale,
    ranking: RankingMethod,
    exec: Exec,
) -> Result<CriterionOrdering, DominanceError> {
    if measures.is_empty() {
        return Err(DominanceError::Empty);
    }
    if let Some(m) = measures.iter().find(|m| m.len() != scale.len()) {
        return Err(DominanceError::LengthMismatch(m.len(), scale.len()));
    }
    let rel = dominance_matrix(measures, exec)?;
    if let Some(order) = dominance_order(&rel) {
        return Ok(CriterionOrdering {
            order,
            method: OrderingMethod::Dominance,
            surrogates: None,
        });
    }
    let surrogates = exec
        .map(measures, |m| surrogate(m, scale))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CriterionOrdering {
        order: rank_fuzzy(&surrogates, ranking, exec)?,
        method: OrderingMethod::Surrogate,
        surrogates: Some(surrogates),
    })
}

/// `μ(H_j) = Σ_i w_i · μ_ρ(i)(H_j)` for measures already in rank order.
pub fn aggregate_measure(
    measures_in_rank_order: &[&CumulativeMeasure],
    weights: &WeightVector,
) -> Result<CumulativeMeasure, DominanceError> {
    let Some(first) = measures_in_rank_order.first() else {
        return Err(DominanceError::Empty);
    };
    if measures_in_rank_order.len() != weights.len() {
        return Err(DominanceError::CountMismatch {
            measures: measures_in_rank_order.len(),
            weights: weights.len(),
        });
    }
    let n = first.len();
    if let Some(m) = measures_in_rank_order.iter().find(|m| m.len() != n) {
        return Err(DominanceError::LengthMismatch(n, m.len()));
    }
    let values = (0..n)
        .map(|j| {
            measures_in_rank_order
                .iter()
                .zip(weights.as_slice())
                .map(|(m, w)| w * m.values()[j])
                .sum::<f64>()
        })
        .collect();
    Ok(CumulativeMeasure::new(values)?)
}
