//! Fuzzy lattice operations `MIN`/`MAX`, the inclusion index, and the ranking
//! relation built on them.
//!
//! Both lattice operations are evaluated on a uniform grid through the
//! crossing-point construction for triangular numbers: to the left of the
//! crossing `x_m` of the two inner legs `MIN` is the standard union and at or
//! right of it the standard intersection (`MAX` swaps the two). `x_m` is the
//! first grid point between the modes where the descending leg of the
//! lower-mode operand no longer exceeds the ascending leg of the other, so a
//! non-unique crossing resolves to its smallest grid point.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuzzy::Tfn;

pub const DEFAULT_GRID_POINTS: usize = 1001;

/// Two sampled memberships are the same set when no grid point differs by
/// more than this.
pub const SAMPLE_EQ_TOL: f64 = 1e-9;

/// Inclusion indices closer than this compare as equal.
pub const INDEX_EQ_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),
    #[error("grid must be strictly increasing and finite")]
    GridNotIncreasing,
    #[error("grid and degree lengths differ ({grid} vs {degrees})")]
    LengthMismatch { grid: usize, degrees: usize },
    #[error("membership degree {value} at grid point {index} is outside [0, 1]")]
    DegreeOutOfRange { index: usize, value: f64 },
    #[error("memberships are sampled on different grids")]
    GridMismatch,
    #[error("empty-antecedent: inclusion index of an identically-zero set")]
    EmptyAntecedent,
}

/// Triangular norm used as the intersection inside the inclusion index.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TNorm {
    #[default]
    Minimum,
    Product,
}

impl TNorm {
    pub fn apply(self, x: f64, y: f64) -> f64 {
        match self {
            TNorm::Minimum => x.min(y),
            TNorm::Product => x * y,
        }
    }
}

impl std::str::FromStr for TNorm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minimum" | "min" => Ok(TNorm::Minimum),
            "product" | "prod" => Ok(TNorm::Product),
            other => Err(format!(
                "unknown t-norm '{other}' (expected minimum or product)"
            )),
        }
    }
}

/// A membership function sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledMembership {
    grid: Vec<f64>,
    degrees: Vec<f64>,
}

impl SampledMembership {
    pub fn new(grid: Vec<f64>, degrees: Vec<f64>) -> Result<Self, LatticeError> {
        if grid.len() < 2 {
            return Err(LatticeError::GridTooSmall(grid.len()));
        }
        if grid.len() != degrees.len() {
            return Err(LatticeError::LengthMismatch {
                grid: grid.len(),
                degrees: degrees.len(),
            });
        }
        if !grid.iter().all(|x| x.is_finite()) || grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LatticeError::GridNotIncreasing);
        }
        if let Some((index, &value)) = degrees
            .iter()
            .enumerate()
            .find(|(_, d)| !(0.0..=1.0).contains(*d))
        {
            return Err(LatticeError::DegreeOutOfRange { index, value });
        }
        Ok(Self { grid, degrees })
    }

    /// Samples `t` on `grid`.
    pub fn sample(t: &Tfn, grid: &[f64]) -> Result<Self, LatticeError> {
        Self::new(
            grid.to_vec(),
            grid.iter().map(|&x| t.membership(x)).collect(),
        )
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// Largest pointwise difference in degree; infinite on different grids.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.grid != other.grid {
            return f64::INFINITY;
        }
        self.degrees
            .iter()
            .zip(&other.degrees)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.max_abs_diff(other) <= SAMPLE_EQ_TOL
    }
}

/// Uniform grid of `points` spanning the union of both supports.
///
/// A support union of zero width (two equal crisp numbers) is widened by 0.5
/// on each side so the grid stays strictly increasing.
pub fn union_grid(p: &Tfn, q: &Tfn, points: usize) -> Result<Vec<f64>, LatticeError> {
    if points < 2 {
        return Err(LatticeError::GridTooSmall(points));
    }
    let (mut lo, mut hi) = (p.a().min(q.a()), p.c().max(q.c()));
    if lo == hi {
        lo -= 0.5;
        hi += 0.5;
    }
    let step = (hi - lo) / (points - 1) as f64;
    let mut grid: Vec<f64> = (0..points).map(|i| lo + step * i as f64).collect();
    grid[points - 1] = hi;
    Ok(grid)
}

/// Index of the crossing point `x_m` on `grid`.
fn crossing_index(grid: &[f64], p: &Tfn, q: &Tfn) -> usize {
    let (lower, upper) = if p.b() <= q.b() { (p, q) } else { (q, p) };
    let start = grid.partition_point(|&x| x < lower.b());
    grid[start..]
        .iter()
        .take_while(|&&x| x <= upper.b())
        .position(|&x| lower.membership(x) <= upper.membership(x))
        .map_or(start.max(grid.partition_point(|&x| x <= upper.b())), |k| {
            start + k
        })
}

fn split_join(
    p: &Tfn,
    q: &Tfn,
    points: usize,
    below: fn(f64, f64) -> f64,
    above: fn(f64, f64) -> f64,
) -> Result<SampledMembership, LatticeError> {
    let grid = union_grid(p, q, points)?;
    let xm = crossing_index(&grid, p, q);
    let degrees = grid
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let join = if i < xm { below } else { above };
            join(p.membership(x), q.membership(x))
        })
        .collect();
    SampledMembership::new(grid, degrees)
}

/// Fuzzy lattice minimum of two triangular numbers, sampled on
/// [`union_grid`].
pub fn lattice_min(p: &Tfn, q: &Tfn, points: usize) -> Result<SampledMembership, LatticeError> {
    split_join(p, q, points, f64::max, f64::min)
}

/// Fuzzy lattice maximum; intersection left of the crossing, union right of it.
pub fn lattice_max(p: &Tfn, q: &Tfn, points: usize) -> Result<SampledMembership, LatticeError> {
    split_join(p, q, points, f64::min, f64::max)
}

/// Degree to which `e` is contained in `f`: `Σ T(μ_E, μ_F) / Σ μ_E` over the
/// shared grid. The uniform step cancels, so the grid sum is the integral
/// ratio.
pub fn inclusion_index(
    e: &SampledMembership,
    f: &SampledMembership,
    tnorm: TNorm,
) -> Result<f64, LatticeError> {
    if e.grid != f.grid {
        return Err(LatticeError::GridMismatch);
    }
    let card: f64 = e.degrees.iter().sum();
    if card <= 0.0 {
        return Err(LatticeError::EmptyAntecedent);
    }
    let meet: f64 = e
        .degrees
        .iter()
        .zip(&f.degrees)
        .map(|(&x, &y)| tnorm.apply(x, y))
        .sum();
    Ok((meet / card).clamp(0.0, 1.0))
}

/// Outcome of comparing two fuzzy numbers through `MIN` and inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeRelation {
    /// First operand is the smaller one.
    Precedes,
    /// First operand is the larger one.
    Succeeds,
    Equivalent,
}

impl LatticeRelation {
    pub fn reverse(self) -> Self {
        match self {
            LatticeRelation::Precedes => LatticeRelation::Succeeds,
            LatticeRelation::Succeeds => LatticeRelation::Precedes,
            LatticeRelation::Equivalent => LatticeRelation::Equivalent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeOptions {
    pub grid_points: usize,
    pub tnorm: TNorm,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        Self {
            grid_points: DEFAULT_GRID_POINTS,
            tnorm: TNorm::Minimum,
        }
    }
}

/// Ranks `p` against `q`.
///
/// When `MIN(p, q)` coincides with an operand that operand is the smaller
/// one (both: equivalent). Otherwise the operand that better contains `MIN`
/// is the smaller one.
pub fn rank_lattice_ini(
    p: &Tfn,
    q: &Tfn,
    opts: LatticeOptions,
) -> Result<LatticeRelation, LatticeError> {
    let min = lattice_min(p, q, opts.grid_points)?;
    let sp = SampledMembership::sample(p, min.grid())?;
    let sq = SampledMembership::sample(q, min.grid())?;
    match (min.approx_eq(&sp), min.approx_eq(&sq)) {
        (true, true) => return Ok(LatticeRelation::Equivalent),
        (true, false) => return Ok(LatticeRelation::Precedes),
        (false, true) => return Ok(LatticeRelation::Succeeds),
        (false, false) => {}
    }
    let in_p = inclusion_index(&min, &sp, opts.tnorm)?;
    let in_q = inclusion_index(&min, &sq, opts.tnorm)?;
    Ok(if (in_p - in_q).abs() <= INDEX_EQ_TOL {
        LatticeRelation::Equivalent
    } else if in_p > in_q {
        LatticeRelation::Precedes
    } else {
        LatticeRelation::Succeeds
    })
}
