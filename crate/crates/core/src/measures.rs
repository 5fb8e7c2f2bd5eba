//! Uncertain knowledge of a criterion's satisfaction, realized as monotonic
//! set measures over a linguistic scale.
//!
//! Scale positions are 0-based here and best-first: position 0 is the most
//! satisfactory grade, and the prefix `H_j` is positions `0..j`. The
//! problem-file format and all user-facing diagnostics use 1-based positions.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fmt::sig6;
use crate::fuzzy::{compare_centroid, Tfn};

/// Tolerance on probability mass and on the final cumulative value.
pub const MASS_TOL: f64 = 1e-9;

/// Slack allowed for float noise when checking monotonicity.
pub const MONOTONE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScaleError {
    #[error("scale needs at least 2 grades, got {0}")]
    TooSmall(usize),
    #[error("scale has {labels} labels but {values} values")]
    LengthMismatch { labels: usize, values: usize },
    #[error("scale grade {position} ('{label}') is not strictly below grade {prev} under centroid ranking")]
    NotDescending {
        position: usize,
        prev: usize,
        label: String,
    },
}

/// Ordered satisfaction vocabulary, best grade first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinguisticScale {
    labels: Vec<String>,
    values: Vec<Tfn>,
}

impl LinguisticScale {
    pub fn new(labels: Vec<String>, values: Vec<Tfn>) -> Result<Self, ScaleError> {
        if labels.len() != values.len() {
            return Err(ScaleError::LengthMismatch {
                labels: labels.len(),
                values: values.len(),
            });
        }
        if values.len() < 2 {
            return Err(ScaleError::TooSmall(values.len()));
        }
        if let Some(j) = (1..values.len())
            .find(|&j| compare_centroid(&values[j - 1], &values[j]) != Ordering::Greater)
        {
            return Err(ScaleError::NotDescending {
                position: j + 1,
                prev: j,
                label: labels[j].clone(),
            });
        }
        Ok(Self { labels, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[Tfn] {
        &self.values
    }
}

/// One violated condition of an [`UncertainSatisfaction`].
#[derive(Debug, Clone, PartialEq)]
pub enum SatisfactionIssue {
    Length { expected: usize, got: usize },
    OutOfUnit { position: usize, value: f64 },
    ProbabilityMass(f64),
    PossibilityMax(f64),
    IntervalBounds { lo: usize, hi: usize, n: usize },
    CertainOutOfRange { position: usize, n: usize },
}

impl fmt::Display for SatisfactionIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SatisfactionIssue::Length { expected, got } => {
                write!(f, "distribution has {got} entries, scale has {expected}")
            }
            SatisfactionIssue::OutOfUnit { position, value } => {
                write!(
                    f,
                    "entry {} is {} (must lie in [0, 1])",
                    position + 1,
                    sig6(*value)
                )
            }
            SatisfactionIssue::ProbabilityMass(m) => write!(f, "probability mass {} ≠ 1", sig6(*m)),
            SatisfactionIssue::PossibilityMax(m) => write!(f, "possibility max {} ≠ 1", sig6(*m)),
            SatisfactionIssue::IntervalBounds { lo, hi, n } => write!(
                f,
                "interval [{}, {}] must satisfy 1 <= lo <= hi <= {n}",
                lo + 1,
                hi + 1
            ),
            SatisfactionIssue::CertainOutOfRange { position, n } => {
                write!(f, "certain grade {} outside 1..={n}", position + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("invalid satisfaction: {}", join_issues(.0))]
    Invalid(Vec<SatisfactionIssue>),
    #[error("subset position {position} outside scale of size {n}")]
    OutOfRange { position: usize, n: usize },
    #[error("no scale grade has its mode inside [{lo}, {hi}]")]
    EmptyInterval { lo: f64, hi: f64 },
    #[error("grades with modes inside [{lo}, {hi}] are not contiguous on the scale")]
    GappedInterval { lo: f64, hi: f64 },
    #[error("cumulative measure is invalid: {0}")]
    Cumulative(String),
}

fn join_issues(issues: &[SatisfactionIssue]) -> String {
    issues
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// What is known about `C_k(x)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UncertainSatisfaction {
    Probability(Vec<f64>),
    Possibility(Vec<f64>),
    /// Inclusive range of scale positions.
    Interval {
        lo: usize,
        hi: usize,
    },
    Certain(usize),
}

impl UncertainSatisfaction {
    /// Interval from numeric bounds: the grades whose modes fall in
    /// `[lo, hi]`, which must form one contiguous run of positions.
    pub fn interval_from_bounds(
        lo: f64,
        hi: f64,
        scale: &LinguisticScale,
    ) -> Result<Self, MeasureError> {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let inside: Vec<usize> = scale
            .values()
            .iter()
            .enumerate()
            .filter(|(_, y)| (lo..=hi).contains(&y.b()))
            .map(|(j, _)| j)
            .collect();
        let (&first, &last) = match (inside.first(), inside.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(MeasureError::EmptyInterval { lo, hi }),
        };
        if last - first + 1 != inside.len() {
            return Err(MeasureError::GappedInterval { lo, hi });
        }
        Ok(Self::Interval {
            lo: first,
            hi: last,
        })
    }

    /// Checks the normalization conditions against a scale of `n` grades.
    pub fn validate(&self, n: usize) -> Result<(), Vec<SatisfactionIssue>> {
        let mut issues = Vec::new();
        match self {
            Self::Probability(p) | Self::Possibility(p) => {
                if p.len() != n {
                    issues.push(SatisfactionIssue::Length {
                        expected: n,
                        got: p.len(),
                    });
                }
                for (position, &value) in p.iter().enumerate() {
                    if !(0.0..=1.0).contains(&value) {
                        issues.push(SatisfactionIssue::OutOfUnit { position, value });
                    }
                }
                if let Self::Probability(_) = self {
                    let mass: f64 = p.iter().sum();
                    if mass.is_nan() || (mass - 1.0).abs() > MASS_TOL {
                        issues.push(SatisfactionIssue::ProbabilityMass(mass));
                    }
                } else {
                    let max = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    if max != 1.0 {
                        issues.push(SatisfactionIssue::PossibilityMax(max.max(0.0)));
                    }
                }
            }
            &Self::Interval { lo, hi } => {
                if lo > hi || hi >= n {
                    issues.push(SatisfactionIssue::IntervalBounds { lo, hi, n });
                }
            }
            &Self::Certain(position) => {
                if position >= n {
                    issues.push(SatisfactionIssue::CertainOutOfRange { position, n });
                }
            }
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(issues)
        }
    }

    /// Measure of the grades at `subset` positions on a scale of `n` grades.
    pub fn measure_of_subset(&self, n: usize, subset: &[usize]) -> Result<f64, MeasureError> {
        self.validate(n).map_err(MeasureError::Invalid)?;
        if let Some(&position) = subset.iter().find(|&&j| j >= n) {
            return Err(MeasureError::OutOfRange { position, n });
        }
        let value = match self {
            Self::Probability(p) => subset.iter().map(|&j| p[j]).sum(),
            Self::Possibility(t) => subset.iter().map(|&j| t[j]).fold(0.0, f64::max),
            &Self::Interval { lo, hi } => {
                if subset.iter().any(|j| (lo..=hi).contains(j)) {
                    1.0
                } else {
                    0.0
                }
            }
            &Self::Certain(k) => {
                if subset.contains(&k) {
                    1.0
                } else {
                    0.0
                }
            }
        };
        Ok(value)
    }

    /// The cumulative measure `(μ(H_1), …, μ(H_n))`.
    pub fn cumulative(&self, n: usize) -> Result<CumulativeMeasure, MeasureError> {
        self.validate(n).map_err(MeasureError::Invalid)?;
        let values = match self {
            Self::Probability(p) => p
                .iter()
                .scan(0.0, |acc, &x| {
                    *acc += x;
                    Some(*acc)
                })
                .collect(),
            Self::Possibility(t) => t
                .iter()
                .scan(0.0_f64, |acc, &x| {
                    *acc = acc.max(x);
                    Some(*acc)
                })
                .collect(),
            &Self::Interval { lo, .. } => (0..n).map(|j| if j >= lo { 1.0 } else { 0.0 }).collect(),
            &Self::Certain(k) => (0..n).map(|j| if j >= k { 1.0 } else { 0.0 }).collect(),
        };
        CumulativeMeasure::new(values)
    }
}

/// The vector `(μ(H_1), …, μ(H_n))` of a monotonic measure on the prefixes of
/// the scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct CumulativeMeasure(Vec<f64>);

impl CumulativeMeasure {
    pub fn new(values: Vec<f64>) -> Result<Self, MeasureError> {
        if let Some(reason) = Self::defect(&values) {
            return Err(MeasureError::Cumulative(reason));
        }
        Ok(Self(values))
    }

    /// Why `values` is not a cumulative measure, if it isn't.
    pub fn defect(values: &[f64]) -> Option<String> {
        let Some(&last) = values.last() else {
            return Some("empty".into());
        };
        if let Some(j) = values
            .iter()
            .position(|v| !(-MONOTONE_TOL..=1.0 + MONOTONE_TOL).contains(v))
        {
            return Some(format!(
                "μ(H{}) = {} outside [0, 1]",
                j + 1,
                sig6(values[j])
            ));
        }
        if let Some(j) = (1..values.len()).find(|&j| values[j] < values[j - 1] - MONOTONE_TOL) {
            return Some(format!(
                "μ(H{}) = {} < μ(H{}) = {}",
                j + 1,
                sig6(values[j]),
                j,
                sig6(values[j - 1])
            ));
        }
        if (last - 1.0).abs() > MASS_TOL {
            return Some(format!("μ(H{}) = {} ≠ 1", values.len(), sig6(last)));
        }
        None
    }

    /// Cumulative measure concentrated on grade `k` of an `n`-grade scale.
    pub fn unit_step(k: usize, n: usize) -> Self {
        Self((0..n).map(|j| if j >= k { 1.0 } else { 0.0 }).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<f64>> for CumulativeMeasure {
    type Error = MeasureError;

    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<CumulativeMeasure> for Vec<f64> {
    fn from(m: CumulativeMeasure) -> Self {
        m.0
    }
}
