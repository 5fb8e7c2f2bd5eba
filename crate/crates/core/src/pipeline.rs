//! Per-alternative scoring and cross-alternative ranking.
//!
//! Each alternative goes through: cumulative measures per criterion →
//! criterion ordering (dominance, else surrogates) → OWA weights from the
//! quantifier → aggregated measure `μₓ`. Alternatives are then compared the
//! same way on their aggregated measures.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::diag::{self, Diagnostic};
use crate::dominance::{
    aggregate_measure, delta_weights, dominance_matrix, order_criteria, rank_fuzzy, surrogate,
    CriterionOrdering, DominanceError, DominanceRelation, OrderingMethod, RankingMethod,
};
use crate::exec::Exec;
use crate::fmt::sig6_list;
use crate::fuzzy::{compare_centroid, Tfn};
use crate::lattice::{rank_lattice_ini, LatticeRelation};
use crate::measures::{CumulativeMeasure, LinguisticScale, MeasureError, UncertainSatisfaction};
use crate::owa::{importance_weights, quantifier_weights, ImportanceVector, OwaError, Quantifier};

/// Largest tolerated gap between a reference aggregate and the computed one.
pub const REFERENCE_TOL: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("invalid decision problem: {}", diag::join(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("unknown alternative '{0}'")]
    UnknownAlternative(String),
    #[error(transparent)]
    Dominance(#[from] DominanceError),
    #[error(transparent)]
    Owa(#[from] OwaError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Alternative {
    pub name: String,
    /// One satisfaction per criterion, in criterion declaration order.
    pub satisfactions: Vec<UncertainSatisfaction>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionProblem {
    pub scale: LinguisticScale,
    pub criteria: Vec<String>,
    pub quantifier: Quantifier,
    /// Per criterion, in declaration order.
    pub importances: Option<ImportanceVector>,
    pub alternatives: Vec<Alternative>,
    pub ranking: RankingMethod,
    /// Externally reported aggregates to cross-check, by alternative name.
    pub references: Vec<(String, Vec<f64>)>,
}

impl DecisionProblem {
    /// Structural and per-satisfaction checks; empty when the problem is valid.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let n = self.scale.len();
        if self.criteria.is_empty() {
            out.push(Diagnostic::new(
                "criteria",
                "at least one criterion is required",
            ));
        }
        let mut seen = HashSet::new();
        for c in &self.criteria {
            if !seen.insert(c) {
                out.push(Diagnostic::new(
                    "criteria",
                    format!("duplicate criterion '{c}'"),
                ));
            }
        }
        if let Err(e) = self.quantifier.validate() {
            out.push(Diagnostic::new("quantifier", e.to_string()));
        }
        if let Some(imp) = &self.importances {
            if imp.len() != self.criteria.len() {
                out.push(Diagnostic::new(
                    "importances",
                    format!(
                        "{} importances for {} criteria",
                        imp.len(),
                        self.criteria.len()
                    ),
                ));
            }
        }
        if self.alternatives.is_empty() {
            out.push(Diagnostic::new(
                "alternatives",
                "at least one alternative is required",
            ));
        }
        let mut seen = HashSet::new();
        for alt in &self.alternatives {
            let at = format!("alternatives.{}", alt.name);
            if !seen.insert(&alt.name) {
                out.push(Diagnostic::new(&at, "duplicate alternative"));
            }
            if alt.satisfactions.len() != self.criteria.len() {
                out.push(Diagnostic::new(
                    &at,
                    format!(
                        "{} satisfactions for {} criteria",
                        alt.satisfactions.len(),
                        self.criteria.len()
                    ),
                ));
                continue;
            }
            for (crit, sat) in self.criteria.iter().zip(&alt.satisfactions) {
                if let Err(issues) = sat.validate(n) {
                    for issue in issues {
                        out.push(Diagnostic::new(format!("{at}.{crit}"), issue.to_string()));
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let d = self.diagnostics();
        if d.is_empty() {
            Ok(())
        } else {
            Err(PipelineError::Invalid(d))
        }
    }

    fn alternative(&self, name: &str) -> Result<&Alternative, PipelineError> {
        self.alternatives
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| PipelineError::UnknownAlternative(name.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionTrace {
    pub criterion: String,
    /// `μ_k(H_1..H_n)`.
    pub cumulative: Vec<f64>,
    /// `V_kj`.
    pub deltas: Vec<f64>,
}

/// Intermediate tables behind one alternative's score.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreTrace {
    pub criteria: Vec<CriterionTrace>,
    /// Criterion names, most satisfied first.
    pub order: Vec<String>,
    /// OWA weights by rank position.
    pub weights: Vec<f64>,
    /// `V_j` of the aggregated measure.
    pub aggregate_deltas: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlternativeScore {
    pub name: String,
    pub aggregate: CumulativeMeasure,
    pub surrogate: Tfn,
    pub centroid: f64,
    pub criterion_ordering: CriterionOrdering,
    pub trace: ScoreTrace,
}

fn score(
    problem: &DecisionProblem,
    alt: &Alternative,
    exec: Exec,
) -> Result<AlternativeScore, PipelineError> {
    let n = problem.scale.len();
    let cumulative = alt
        .satisfactions
        .iter()
        .map(|s| s.cumulative(n))
        .collect::<Result<Vec<_>, _>>()?;
    let ordering = order_criteria(&cumulative, &problem.scale, problem.ranking, exec)?;
    let weights = match &problem.importances {
        Some(imp) => importance_weights(&problem.quantifier, &imp.permuted(&ordering.order))?,
        None => quantifier_weights(&problem.quantifier, cumulative.len())?,
    };
    let ordered: Vec<&CumulativeMeasure> = ordering.order.iter().map(|&k| &cumulative[k]).collect();
    let aggregate = aggregate_measure(&ordered, &weights)?;
    let sur = surrogate(&aggregate, &problem.scale)?;

    let trace = ScoreTrace {
        criteria: problem
            .criteria
            .iter()
            .zip(&cumulative)
            .map(|(c, m)| CriterionTrace {
                criterion: c.clone(),
                cumulative: m.values().to_vec(),
                deltas: delta_weights(m),
            })
            .collect(),
        order: ordering
            .order
            .iter()
            .map(|&k| problem.criteria[k].clone())
            .collect(),
        weights: weights.as_slice().to_vec(),
        aggregate_deltas: delta_weights(&aggregate),
    };
    Ok(AlternativeScore {
        name: alt.name.clone(),
        centroid: sur.centroid().x0,
        surrogate: sur,
        aggregate,
        criterion_ordering: ordering,
        trace,
    })
}

/// Scores one alternative with its full trace.
pub fn score_alternative(
    problem: &DecisionProblem,
    name: &str,
) -> Result<AlternativeScore, PipelineError> {
    problem.validate()?;
    score(problem, problem.alternative(name)?, Exec::default())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedAlternative {
    pub rank: usize,
    pub name: String,
    /// Whether this position was settled by dominance or by surrogates.
    pub decided_by: OrderingMethod,
    /// Indistinguishable from the entry above under the surrogate ranking.
    pub tied: bool,
    pub score: AlternativeScore,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankingReport {
    pub comparison_method: OrderingMethod,
    pub ranking_method: &'static str,
    pub alternatives: Vec<RankedAlternative>,
    pub warnings: Vec<String>,
}

impl RankingReport {
    pub fn winner(&self) -> &RankedAlternative {
        &self.alternatives[0]
    }
}

pub fn rank_alternatives(problem: &DecisionProblem) -> Result<RankingReport, PipelineError> {
    rank_alternatives_with(problem, Exec::default())
}

/// Ranks all alternatives, best first.
///
/// An alternative whose aggregate dominates every other one is placed first.
/// Everything else is ordered by surrogate, with name order breaking ties.
pub fn rank_alternatives_with(
    problem: &DecisionProblem,
    exec: Exec,
) -> Result<RankingReport, PipelineError> {
    problem.validate()?;
    let mut alts: Vec<&Alternative> = problem.alternatives.iter().collect();
    alts.sort_by(|a, b| a.name.cmp(&b.name));

    let scores = exec
        .map(&alts, |a| score(problem, a, Exec::Sequential))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let measures: Vec<CumulativeMeasure> = scores.iter().map(|s| s.aggregate.clone()).collect();
    let rel = dominance_matrix(&measures, exec)?;

    let mut placed: Vec<(usize, OrderingMethod, bool)> = Vec::with_capacity(scores.len());
    let mut remaining: Vec<usize> = (0..scores.len()).collect();
    let n = remaining.len();
    if let Some(w) = (0..n).find(|&i| {
        rel[i]
            .iter()
            .enumerate()
            .all(|(j, r)| j == i || *r == DominanceRelation::FirstDominates)
    }) {
        remaining.remove(w);
        placed.push((w, OrderingMethod::Dominance, false));
    }
    let comparison_method = if placed.is_empty() {
        OrderingMethod::Surrogate
    } else {
        OrderingMethod::Dominance
    };

    let rest: Vec<Tfn> = remaining.iter().map(|&i| scores[i].surrogate).collect();
    let order = rank_fuzzy(&rest, problem.ranking, exec)?;
    for (k, &local) in order.iter().enumerate() {
        let tied = k > 0 && {
            let (p, q) = (&rest[order[k - 1]], &rest[local]);
            match problem.ranking {
                RankingMethod::Centroid => compare_centroid(p, q).is_eq(),
                RankingMethod::LatticeIni(opts) => {
                    rank_lattice_ini(p, q, opts).map_err(DominanceError::from)?
                        == LatticeRelation::Equivalent
                }
            }
        };
        placed.push((remaining[local], OrderingMethod::Surrogate, tied));
    }

    let warnings = reference_warnings(problem, &scores);
    let mut scores: Vec<Option<AlternativeScore>> = scores.into_iter().map(Some).collect();
    let alternatives = placed
        .into_iter()
        .enumerate()
        .map(|(k, (i, decided_by, tied))| {
            let score = scores[i].take().expect("each alternative is placed once");
            RankedAlternative {
                rank: k + 1,
                name: score.name.clone(),
                decided_by,
                tied,
                score,
            }
        })
        .collect();
    Ok(RankingReport {
        comparison_method,
        ranking_method: problem.ranking.name(),
        alternatives,
        warnings,
    })
}

fn reference_warnings(problem: &DecisionProblem, scores: &[AlternativeScore]) -> Vec<String> {
    let mut out = Vec::new();
    for (name, reference) in &problem.references {
        let Some(s) = scores.iter().find(|s| &s.name == name) else {
            out.push(format!(
                "reference aggregate given for unknown alternative '{name}'"
            ));
            continue;
        };
        let computed = s.aggregate.values();
        let shown = sig6_list(reference);
        if let Some(defect) = CumulativeMeasure::defect(reference) {
            out.push(format!(
                "reference aggregate {shown} for '{name}' is not a valid cumulative measure ({defect}); \
                 the computed aggregate {} is the convex combination of the ordered criterion measures",
                sig6_list(computed)
            ));
        } else if reference.len() != computed.len() {
            out.push(format!(
                "reference aggregate for '{name}' has {} entries, scale has {}",
                reference.len(),
                computed.len()
            ));
        } else {
            let gap = reference
                .iter()
                .zip(computed)
                .map(|(r, c)| (r - c).abs())
                .fold(0.0, f64::max);
            if gap > REFERENCE_TOL {
                out.push(format!(
                    "reference aggregate {shown} for '{name}' differs from the computed {} by up to {}",
                    sig6_list(computed),
                    crate::fmt::sig6(gap)
                ));
            }
        }
    }
    out
}
