//! Exact orientation and segment-intersection predicates.
//!
//! Two coordinate kinds share the [`Scalar`] abstraction: bounded `i64`
//! integers (cross products evaluated in `i128`) and arbitrary-precision
//! [`BigRational`]s. Nothing in here ever rounds.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest absolute integer coordinate accepted in a [`crate::Drawing`].
///
/// Differences stay below 2^31 and products below 2^62, far inside `i128`.
/// The `i64` kernel itself stays exact for coordinates below 2^61 in magnitude.
pub const MAX_INT_COORD: i64 = 1 << 30;

/// Sign of a turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    #[inline]
    pub fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Greater => Orientation::CounterClockwise,
        }
    }

    /// -1, 0 or +1.
    #[inline]
    pub fn signum(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    #[inline]
    pub fn reverse(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }
}

/// A coordinate type with an exact cross-product sign.
pub trait Scalar: Signed + Clone + Ord + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Sign of `ux * vy - uy * vx`.
    fn cross_sign(ux: &Self, uy: &Self, vx: &Self, vy: &Self) -> Ordering;

    /// Lossy conversion used only for heuristics and display.
    fn to_f64(&self) -> f64;

    fn to_rational(&self) -> BigRational;
}

impl Scalar for i64 {
    #[inline]
    fn cross_sign(ux: &i64, uy: &i64, vx: &i64, vy: &i64) -> Ordering {
        let lhs = *ux as i128 * *vy as i128;
        let rhs = *uy as i128 * *vx as i128;
        lhs.cmp(&rhs)
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }
}

impl Scalar for BigRational {
    fn cross_sign(ux: &Self, uy: &Self, vx: &Self, vy: &Self) -> Ordering {
        (ux * vy).cmp(&(uy * vx))
    }

    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

/// A point in the plane with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S> Point<S> {
    pub const fn new(x: S, y: S) -> Self {
        Point { x, y }
    }
}

impl<S: fmt::Display> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<S: Scalar> Point<S> {
    pub fn to_rational(&self) -> Point<BigRational> {
        Point::new(self.x.to_rational(), self.y.to_rational())
    }
}

/// Integer point.
pub type IntPoint = Point<i64>;
/// Rational point.
pub type RatPoint = Point<BigRational>;

/// Orientation of `c` relative to the directed line `a -> b`.
///
/// `CounterClockwise` means `c` lies strictly to the left.
#[inline]
pub fn orient<S: Scalar>(a: &Point<S>, b: &Point<S>, c: &Point<S>) -> Orientation {
    let ux = b.x.clone() - a.x.clone();
    let uy = b.y.clone() - a.y.clone();
    let vx = c.x.clone() - a.x.clone();
    let vy = c.y.clone() - a.y.clone();
    Orientation::from_ordering(S::cross_sign(&ux, &uy, &vx, &vy))
}

/// Integer fast path without the generic clones.
#[inline]
pub fn orient_i64(a: &IntPoint, b: &IntPoint, c: &IntPoint) -> Orientation {
    let ux = b.x as i128 - a.x as i128;
    let uy = b.y as i128 - a.y as i128;
    let vx = c.x as i128 - a.x as i128;
    let vy = c.y as i128 - a.y as i128;
    Orientation::from_ordering((ux * vy).cmp(&(uy * vx)))
}

/// Proper crossing test for two segments whose endpoints are in general position.
///
/// Returns `DegenerateConfiguration` if any three of the four endpoints are
/// collinear, which includes an endpoint touching the other segment.
pub fn segments_cross<S: Scalar>(
    p1: &Point<S>,
    p2: &Point<S>,
    q1: &Point<S>,
    q2: &Point<S>,
) -> Result<bool> {
    let a = orient(p1, p2, q1);
    let b = orient(p1, p2, q2);
    let c = orient(q1, q2, p1);
    let d = orient(q1, q2, p2);
    if [a, b, c, d].contains(&Orientation::Collinear) {
        return Err(Error::DegenerateConfiguration(format!(
            "segments {p1}-{p2} and {q1}-{q2} have collinear endpoints"
        )));
    }
    Ok(a != b && c != d)
}

/// Crossing test from four precomputed orientations; `false` on any collinearity.
#[inline]
pub(crate) fn crosses_from_signs(a: i8, b: i8, c: i8, d: i8) -> bool {
    a * b < 0 && c * d < 0
}

/// Angular comparator for vectors, starting at the positive x-axis and
/// sweeping counterclockwise. Zero vectors are not allowed.
pub(crate) fn angular_cmp<S: Scalar>(ux: &S, uy: &S, vx: &S, vy: &S) -> Ordering {
    let half = |x: &S, y: &S| -> u8 {
        if y.is_positive() || (y.is_zero() && x.is_positive()) {
            0
        } else {
            1
        }
    };
    half(ux, uy)
        .cmp(&half(vx, vy))
        .then_with(|| S::cross_sign(ux, uy, vx, vy).reverse())
}

/// True iff all points are distinct and no three are collinear.
///
/// Runs in O(n² log n): around each point the other points are sorted by
/// direction folded onto a half-turn, and equal neighbours in that order
/// reveal a collinear triple (or a duplicate point).
pub fn in_general_position<S: Scalar>(points: &[Point<S>]) -> bool {
    find_collinear_triple(points).is_none()
}

/// Returns indices of a witness triple (or a duplicated pair, repeated) if
/// `points` is not in general position.
pub fn find_collinear_triple<S: Scalar>(points: &[Point<S>]) -> Option<[usize; 3]> {
    let n = points.len();
    for (i, p) in points.iter().enumerate() {
        let mut dirs: Vec<(S, S, usize)> = Vec::with_capacity(n.saturating_sub(1));
        for (j, q) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut dx = q.x.clone() - p.x.clone();
            let mut dy = q.y.clone() - p.y.clone();
            if dx.is_zero() && dy.is_zero() {
                return Some([i, j, j]);
            }
            if dy.is_negative() || (dy.is_zero() && dx.is_negative()) {
                dx = -dx;
                dy = -dy;
            }
            dirs.push((dx, dy, j));
        }
        dirs.sort_by(|a, b| angular_cmp(&a.0, &a.1, &b.0, &b.1));
        for w in dirs.windows(2) {
            if S::cross_sign(&w[0].0, &w[0].1, &w[1].0, &w[1].1) == Ordering::Equal {
                return Some([i, w[0].2, w[1].2]);
            }
        }
    }
    None
}

/// Dense table of orientations for every ordered triple of a point set.
///
/// Indexing is `(i * n + j) * n + k`. Built once in O(n³/6) exact
/// evaluations and then queried with plain loads.
pub(crate) struct OrientTable {
    n: usize,
    signs: Vec<i8>,
}

impl OrientTable {
    /// Refuses sets larger than this to bound memory at a few megabytes.
    pub(crate) const MAX_POINTS: usize = 192;

    pub(crate) fn build<S: Scalar>(points: &[Point<S>]) -> Self {
        let n = points.len();
        assert!(n <= Self::MAX_POINTS, "orientation table limited to {} points", Self::MAX_POINTS);
        let mut signs = vec![0i8; n * n * n];
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let s = orient(&points[i], &points[j], &points[k]).signum();
                    // even permutations keep the sign, odd ones flip it
                    signs[idx(i, j, k)] = s;
                    signs[idx(j, k, i)] = s;
                    signs[idx(k, i, j)] = s;
                    signs[idx(j, i, k)] = -s;
                    signs[idx(i, k, j)] = -s;
                    signs[idx(k, j, i)] = -s;
                }
            }
        }
        OrientTable { n, signs }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize, k: usize) -> i8 {
        self.signs[(i * self.n + j) * self.n + k]
    }
}

/// Build a rational from a numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
