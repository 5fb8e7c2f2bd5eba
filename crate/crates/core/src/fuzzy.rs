//! Triangular and trapezoidal fuzzy numbers on the satisfaction axis.
//!
//! Only the arithmetic the surrogate needs is provided: nonnegative scaling
//! and addition, both exact for triangular shapes under the extension
//! principle. Centroids come in two flavours, the closed form for triangles
//! and a quadrature route for general piecewise-linear numbers of height `ω`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("fuzzy number bounds must satisfy a <= b <= c (got {a}, {b}, {c})")]
    Unordered { a: f64, b: f64, c: f64 },
    #[error("fuzzy number bounds must satisfy a <= b <= c <= d (got {a}, {b}, {c}, {d})")]
    UnorderedTrapezoid { a: f64, b: f64, c: f64, d: f64 },
    #[error("height must lie in (0, 1], got {0}")]
    Height(f64),
    #[error("non-finite bound in fuzzy number")]
    NonFinite,
    #[error("scale factor must be nonnegative, got {0}")]
    NegativeScale(f64),
    #[error("quadrature needs at least 2 points, got {0}")]
    Quadrature(usize),
}

/// A triangular fuzzy number `(a, b, c)`: zero outside `[a, c]`, peak 1 at `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct Tfn {
    a: f64,
    b: f64,
    c: f64,
}

impl Tfn {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, FuzzyError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(FuzzyError::NonFinite);
        }
        if a > b || b > c {
            return Err(FuzzyError::Unordered { a, b, c });
        }
        Ok(Self { a, b, c })
    }

    /// The crisp number `v` as the degenerate triangle `(v, v, v)`.
    pub fn crisp(v: f64) -> Self {
        Self { a: v, b: v, c: v }
    }

    pub fn zero() -> Self {
        Self::crisp(0.0)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// Membership degree at `x`. A degenerate leg (`a == b` or `b == c`) is
    /// vertical, so the shared point still evaluates to 1.
    pub fn membership(&self, x: f64) -> f64 {
        if x == self.b {
            1.0
        } else if x < self.b {
            if x <= self.a {
                0.0
            } else {
                (x - self.a) / (self.b - self.a)
            }
        } else if x >= self.c {
            0.0
        } else {
            (x - self.c) / (self.b - self.c)
        }
    }

    pub fn scale(&self, k: f64) -> Result<Self, FuzzyError> {
        if k.is_nan() || k < 0.0 {
            return Err(FuzzyError::NegativeScale(k));
        }
        Ok(Self {
            a: k * self.a,
            b: k * self.b,
            c: k * self.c,
        })
    }

    pub fn centroid(&self) -> Centroid {
        Centroid {
            x0: (self.a + self.b + self.c) / 3.0,
            y0: 1.0 / 3.0,
        }
    }

    /// Largest slope magnitude of the two legs; 0 for vertical legs.
    pub fn max_slope(&self) -> f64 {
        let left = if self.b > self.a {
            1.0 / (self.b - self.a)
        } else {
            0.0
        };
        let right = if self.c > self.b {
            1.0 / (self.c - self.b)
        } else {
            0.0
        };
        left.max(right)
    }
}

impl Add for Tfn {
    type Output = Tfn;

    fn add(self, rhs: Tfn) -> Tfn {
        Tfn {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            c: self.c + rhs.c,
        }
    }
}

impl TryFrom<[f64; 3]> for Tfn {
    type Error = FuzzyError;

    fn try_from(v: [f64; 3]) -> Result<Self, Self::Error> {
        Tfn::new(v[0], v[1], v[2])
    }
}

impl From<Tfn> for [f64; 3] {
    fn from(t: Tfn) -> Self {
        t.as_array()
    }
}

impl fmt::Display for Tfn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            crate::fmt::sig6(self.a),
            crate::fmt::sig6(self.b),
            crate::fmt::sig6(self.c)
        )
    }
}

/// Centroid point of a fuzzy number's membership region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Centroid {
    pub x0: f64,
    pub y0: f64,
}

/// Trapezoidal fuzzy number `(a, b, c, d; ω)` with linear legs and plateau
/// height `ω` on `[b, c]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gfn {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    height: f64,
}

impl Gfn {
    pub fn new(a: f64, b: f64, c: f64, d: f64, height: f64) -> Result<Self, FuzzyError> {
        if ![a, b, c, d, height].iter().all(|v| v.is_finite()) {
            return Err(FuzzyError::NonFinite);
        }
        if a > b || b > c || c > d {
            return Err(FuzzyError::UnorderedTrapezoid { a, b, c, d });
        }
        if !(height > 0.0 && height <= 1.0) {
            return Err(FuzzyError::Height(height));
        }
        Ok(Self { a, b, c, d, height })
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    fn left_shape(&self, x: f64) -> f64 {
        self.height * (x - self.a) / (self.b - self.a)
    }

    fn right_shape(&self, x: f64) -> f64 {
        self.height * (self.d - x) / (self.d - self.c)
    }

    /// Inverse of the left leg, `[0, ω] -> [a, b]`.
    fn left_inverse(&self, y: f64) -> f64 {
        self.a + (self.b - self.a) * y / self.height
    }

    /// Inverse of the right leg, `[0, ω] -> [c, d]`.
    fn right_inverse(&self, y: f64) -> f64 {
        self.d - (self.d - self.c) * y / self.height
    }

    pub fn membership(&self, x: f64) -> f64 {
        if x < self.a || x > self.d {
            0.0
        } else if x < self.b {
            self.left_shape(x)
        } else if x <= self.c {
            self.height
        } else {
            self.right_shape(x)
        }
    }

    /// Centroid by composite Simpson quadrature of the moment integrals.
    ///
    /// `x0` integrates `x·f(x)` over the three pieces of the support, using the
    /// left shape on `[a, b]`. `y0` integrates over the height with the exact
    /// linear inverses of both legs. A crisp point `(a, a, a, a; ω)` has no
    /// area and maps to `(a, ω/2)`.
    pub fn centroid(&self, quadrature_points: usize) -> Result<Centroid, FuzzyError> {
        if quadrature_points < 2 {
            return Err(FuzzyError::Quadrature(quadrature_points));
        }
        if self.a == self.d {
            return Ok(Centroid {
                x0: self.a,
                y0: self.height / 2.0,
            });
        }

        let mut num = 0.0;
        let mut den = 0.0;
        if self.b > self.a {
            num += simpson(
                |x| x * self.left_shape(x),
                self.a,
                self.b,
                quadrature_points,
            );
            den += simpson(|x| self.left_shape(x), self.a, self.b, quadrature_points);
        }
        if self.c > self.b {
            num += simpson(|x| x * self.height, self.b, self.c, quadrature_points);
            den += simpson(|_| self.height, self.b, self.c, quadrature_points);
        }
        if self.d > self.c {
            num += simpson(
                |x| x * self.right_shape(x),
                self.c,
                self.d,
                quadrature_points,
            );
            den += simpson(|x| self.right_shape(x), self.c, self.d, quadrature_points);
        }

        let width = |y: f64| self.right_inverse(y) - self.left_inverse(y);
        let y_num = simpson(|y| y * width(y), 0.0, self.height, quadrature_points);
        let y_den = simpson(width, 0.0, self.height, quadrature_points);

        Ok(Centroid {
            x0: num / den,
            y0: y_num / y_den,
        })
    }
}

impl From<Tfn> for Gfn {
    fn from(t: Tfn) -> Self {
        Gfn {
            a: t.a,
            b: t.b,
            c: t.b,
            d: t.c,
            height: 1.0,
        }
    }
}

/// Composite Simpson rule on `points` samples (rounded up to an odd count).
fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, points: usize) -> f64 {
    let mut intervals = points.saturating_sub(1).max(2);
    if intervals % 2 == 1 {
        intervals += 1;
    }
    let h = (hi - lo) / intervals as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..intervals {
        let x = lo + h * i as f64;
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    acc * h / 3.0
}

/// One entry of a centroid ranking.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CentroidRank {
    /// Position of the item in the input list.
    pub index: usize,
    pub x0: f64,
    /// Same `(x0, b, a)` key as the entry ranked just above.
    pub tied: bool,
}

// Keys are compared on a 1e-12 lattice so float noise in `(a+b+c)/3` cannot
// split genuine ties, while the order stays a strict total order.
fn rank_key(t: &Tfn) -> (i64, i64, i64) {
    let q = |v: f64| (v * 1e12).round() as i64;
    (q(t.centroid().x0), q(t.b), q(t.a))
}

/// Sorts fuzzy numbers by centroid abscissa, largest first.
///
/// Ties fall back to the larger mode, then the larger left bound, then input
/// order.
pub fn rank_centroid(items: &[Tfn]) -> Vec<CentroidRank> {
    let keys: Vec<_> = items.iter().map(rank_key).collect();
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&i, &j| keys[j].cmp(&keys[i]).then(i.cmp(&j)));
    order
        .iter()
        .enumerate()
        .map(|(pos, &index)| CentroidRank {
            index,
            x0: items[index].centroid().x0,
            tied: pos > 0 && keys[order[pos - 1]] == keys[index],
        })
        .collect()
}

/// Comparison of two triangles under the centroid ranking.
pub fn compare_centroid(p: &Tfn, q: &Tfn) -> Ordering {
    rank_key(p).cmp(&rank_key(q))
}
