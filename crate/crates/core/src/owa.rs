//! Ordered weighted averaging and quantifier-generated weights.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Tolerance on `Σ w = 1`.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OwaError {
    #[error("{values} values but {weights} weights")]
    LengthMismatch { values: usize, weights: usize },
    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),
    #[error("argument count must be at least 1")]
    NoArguments,
    #[error("invalid quantifier: {0}")]
    InvalidQuantifier(String),
    #[error("importances must be finite and nonnegative, got {0}")]
    NegativeImportance(f64),
    #[error("importances sum to zero")]
    ZeroImportance,
}

/// OWA weights attached to rank positions, largest argument first.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self, OwaError> {
        if weights.is_empty() {
            return Err(OwaError::NoArguments);
        }
        if let Some((j, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(0.0..=1.0).contains(*w))
        {
            return Err(OwaError::InvalidWeights(format!(
                "w{} = {w} outside [0, 1]",
                j + 1
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(OwaError::InvalidWeights(format!("weights sum to {sum}")));
        }
        Ok(Self(weights))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Regular monotone quantifier `Q: [0, 1] → [0, 1]` with `Q(0) = 0`,
/// `Q(1) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum Quantifier {
    /// `Q(z) = z^α`.
    Power(f64),
    /// Linear interpolation between `(z, Q(z))` knots.
    PiecewiseLinear(Vec<(f64, f64)>),
}

impl Quantifier {
    pub fn power(alpha: f64) -> Result<Self, OwaError> {
        let q = Quantifier::Power(alpha);
        q.validate()?;
        Ok(q)
    }

    pub fn piecewise_linear(knots: Vec<(f64, f64)>) -> Result<Self, OwaError> {
        let q = Quantifier::PiecewiseLinear(knots);
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<(), OwaError> {
        let bad = |m: String| Err(OwaError::InvalidQuantifier(m));
        match self {
            Quantifier::Power(alpha) => {
                if !(alpha.is_finite() && *alpha > 0.0) {
                    return bad(format!("power exponent must be positive, got {alpha}"));
                }
            }
            Quantifier::PiecewiseLinear(knots) => {
                if knots.len() < 2 {
                    return bad("at least two knots are required".into());
                }
                if knots[0] != (0.0, 0.0) || knots[knots.len() - 1] != (1.0, 1.0) {
                    return bad("knots must start at (0, 0) and end at (1, 1)".into());
                }
                if knots.iter().any(|(z, q)| !(z.is_finite() && q.is_finite())) {
                    return bad("knots must be finite".into());
                }
                if let Some(w) = knots.windows(2).find(|w| w[1].0 <= w[0].0) {
                    return bad(format!(
                        "knot abscissae must increase ({} then {})",
                        w[0].0, w[1].0
                    ));
                }
                if let Some(w) = knots.windows(2).find(|w| w[1].1 < w[0].1) {
                    return bad(format!(
                        "quantifier decreases between z = {} and z = {}",
                        w[0].0, w[1].0
                    ));
                }
            }
        }
        Ok(())
    }

    /// `Q(z)`, with `z` clamped to `[0, 1]`.
    pub fn eval(&self, z: f64) -> f64 {
        let z = z.clamp(0.0, 1.0);
        match self {
            Quantifier::Power(alpha) => z.powf(*alpha),
            Quantifier::PiecewiseLinear(knots) => {
                let k = knots
                    .partition_point(|&(x, _)| x <= z)
                    .clamp(1, knots.len() - 1);
                let ((z0, q0), (z1, q1)) = (knots[k - 1], knots[k]);
                // clamping keeps rounding from overshooting the next knot
                (q0 + (q1 - q0) * (z - z0) / (z1 - z0)).clamp(q0, q1)
            }
        }
    }

    /// Integer exponent, when the weights can be formed from exact integers.
    fn integer_exponent(&self) -> Option<u32> {
        match self {
            Quantifier::Power(alpha) if alpha.fract() == 0.0 && *alpha <= 64.0 => {
                Some(*alpha as u32)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantifier::Power(alpha) => write!(f, "power:{alpha}"),
            Quantifier::PiecewiseLinear(knots) => {
                let parts: Vec<_> = knots.iter().map(|(z, q)| format!("{z},{q}")).collect();
                write!(f, "knots:{}", parts.join(";"))
            }
        }
    }
}

impl FromStr for Quantifier {
    type Err = OwaError;

    /// Parses `power:<α>` or `knots:<z>,<q>;<z>,<q>;…`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || {
            OwaError::InvalidQuantifier(format!(
                "cannot parse '{s}' (expected power:<α> or knots:z,q;z,q;…)"
            ))
        };
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind.trim() {
            "power" => Quantifier::power(rest.trim().parse().map_err(|_| bad())?),
            "knots" => {
                let knots = rest
                    .split(';')
                    .map(|pair| {
                        let (z, q) = pair.split_once(',')?;
                        Some((z.trim().parse().ok()?, q.trim().parse().ok()?))
                    })
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(bad)?;
                Quantifier::piecewise_linear(knots)
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum QuantifierRepr {
    Text(String),
    Knots(Vec<(f64, f64)>),
}

impl Serialize for Quantifier {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Quantifier::Power(_) => QuantifierRepr::Text(self.to_string()),
            Quantifier::PiecewiseLinear(k) => QuantifierRepr::Knots(k.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quantifier {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match QuantifierRepr::deserialize(d)? {
            QuantifierRepr::Text(t) => t.parse(),
            QuantifierRepr::Knots(k) => Quantifier::piecewise_linear(k),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// Importance of each argument, normalized to sum 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ImportanceVector(Vec<f64>);

impl ImportanceVector {
    pub fn new(lambdas: Vec<f64>) -> Result<Self, OwaError> {
        if lambdas.is_empty() {
            return Err(OwaError::NoArguments);
        }
        if let Some(&l) = lambdas.iter().find(|l| !(l.is_finite() && **l >= 0.0)) {
            return Err(OwaError::NegativeImportance(l));
        }
        let total: f64 = lambdas.iter().sum();
        if total <= 0.0 {
            return Err(OwaError::ZeroImportance);
        }
        Ok(Self(lambdas.into_iter().map(|l| l / total).collect()))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Importances rearranged so entry `i` belongs to argument `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self(order.iter().map(|&k| self.0[k]).collect())
    }

    fn is_uniform(&self) -> bool {
        self.0.iter().all(|&l| l == self.0[0])
    }
}

/// `OWA(values) = Σ w_j · b_j` where `b_j` is the `j`-th largest value.
pub fn owa_aggregate(values: &[f64], weights: &WeightVector) -> Result<f64, OwaError> {
    if values.len() != weights.len() {
        return Err(OwaError::LengthMismatch {
            values: values.len(),
            weights: weights.len(),
        });
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|x, y| y.total_cmp(x));
    Ok(sorted
        .iter()
        .zip(weights.as_slice())
        .map(|(b, w)| w * b)
        .sum())
}

/// `w_j = Q(j/q) − Q((j−1)/q)` for `j = 1..=q`.
///
/// Integer power quantifiers are differenced in exact integer arithmetic,
/// `(j^α − (j−1)^α) / q^α`, and rounded once.
pub fn quantifier_weights(quantifier: &Quantifier, q: usize) -> Result<WeightVector, OwaError> {
    quantifier.validate()?;
    if q == 0 {
        return Err(OwaError::NoArguments);
    }
    if let Some(w) = quantifier
        .integer_exponent()
        .and_then(|alpha| exact_power_weights(alpha, q))
    {
        return WeightVector::new(w);
    }
    let qf = q as f64;
    let w = (1..=q)
        .map(|j| (quantifier.eval(j as f64 / qf) - quantifier.eval((j - 1) as f64 / qf)).max(0.0))
        .collect();
    WeightVector::new(w)
}

fn exact_power_weights(alpha: u32, q: usize) -> Option<Vec<f64>> {
    const EXACT: u128 = 1 << 53;
    let q = u128::try_from(q).ok()?;
    let den = q.checked_pow(alpha).filter(|&d| d <= EXACT)?;
    (1..=q)
        .map(|j| {
            let num = j.pow(alpha) - (j - 1).pow(alpha);
            Some(num as f64 / den as f64)
        })
        .collect()
}

/// `w_j = Q(S_j) − Q(S_{j−1})` with `S_j` the running sum of normalized
/// importances, already permuted into argument rank order.
pub fn importance_weights(
    quantifier: &Quantifier,
    lambdas_in_rank_order: &ImportanceVector,
) -> Result<WeightVector, OwaError> {
    quantifier.validate()?;
    if lambdas_in_rank_order.is_uniform() {
        // equal importances give S_j = j/q exactly
        return quantifier_weights(quantifier, lambdas_in_rank_order.len());
    }
    let lambdas = lambdas_in_rank_order.as_slice();
    let mut prefix = 0.0;
    let mut prev_q = 0.0;
    let mut weights = Vec::with_capacity(lambdas.len());
    for (j, l) in lambdas.iter().enumerate() {
        prefix += l;
        let s = if j + 1 == lambdas.len() {
            1.0
        } else {
            prefix.min(1.0)
        };
        let qs = quantifier.eval(s);
        weights.push((qs - prev_q).max(0.0));
        prev_q = qs;
    }
    WeightVector::new(weights)
}
