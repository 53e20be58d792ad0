//! Exact crossing counters and k-edge machinery.
//!
//! A j-edge of a point set is an ordered pair `(p, q)` with exactly `j` points
//! strictly left of the directed line `p -> q`. For a drawing of K_n the
//! crossing count is recovered from the prefix sums `E_k` by
//!
//! ```text
//! cr = sum_{k < (n-2)/2} (n - 2k - 3) E_k  -  (3/4) C(n,3)  +  c_n
//! c_n = E_{(n-3)/2} / 4 for odd n, 0 for even n
//! ```
//!
//! and lower bounds on `E_k` turn into lower bounds on the rectilinear
//! crossing number of K_n. All of it is evaluated as integers scaled by 4.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::hill_number;
use crate::error::{Error, Result};
use crate::exact_geom::{angular_cmp, crosses_from_signs, segments_cross, OrientTable, Point, Scalar};
use crate::graph_model::Edge;

/// Below this many edges the pair loop runs on one thread.
const PARALLEL_EDGE_THRESHOLD: usize = 512;

fn independent(a: Edge, b: Edge) -> bool {
    a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
}

fn degenerate(a: Edge, b: Edge) -> Error {
    Error::DegenerateConfiguration(format!("edges {a:?} and {b:?} have collinear endpoints"))
}

/// Crossing pairs `(i, j)`, `i < j`, as indices into `edges`. O(||G||²).
pub fn crossing_pairs<S: Scalar>(points: &[Point<S>], edges: &[Edge]) -> Result<Vec<(usize, usize)>> {
    let row = |i: usize, table: Option<&OrientTable>| -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        let a = edges[i];
        for (j, &b) in edges.iter().enumerate().skip(i + 1) {
            if !independent(a, b) {
                continue;
            }
            let hit = match table {
                Some(t) => {
                    let s = [t.get(a.0, a.1, b.0), t.get(a.0, a.1, b.1), t.get(b.0, b.1, a.0), t.get(b.0, b.1, a.1)];
                    if s.contains(&0) {
                        return Err(degenerate(a, b));
                    }
                    crosses_from_signs(s[0], s[1], s[2], s[3])
                }
                None => segments_cross(&points[a.0], &points[a.1], &points[b.0], &points[b.1])?,
            };
            if hit {
                out.push((i, j));
            }
        }
        Ok(out)
    };
    let table = (points.len() <= OrientTable::MAX_POINTS).then(|| OrientTable::build(points));
    let rows: Vec<Vec<(usize, usize)>> = if edges.len() >= PARALLEL_EDGE_THRESHOLD {
        (0..edges.len()).into_par_iter().map(|i| row(i, table.as_ref())).collect::<Result<_>>()?
    } else {
        (0..edges.len()).map(|i| row(i, table.as_ref())).collect::<Result<_>>()?
    };
    Ok(rows.into_iter().flatten().collect())
}

/// Number of independent edge pairs whose segments properly cross.
pub fn count_crossings<S: Scalar>(points: &[Point<S>], edges: &[Edge]) -> Result<u64> {
    Ok(crossing_pairs(points, edges)?.len() as u64)
}

/// Pairwise crossing relation among the edges of a drawing of K_n,
/// stored as a dense bitset over ordered edge-index pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingMatrix {
    n: usize,
    edges: usize,
    bits: Vec<u64>,
}

impl CrossingMatrix {
    pub fn empty(n: usize) -> Self {
        let edges = n * n.saturating_sub(1) / 2;
        CrossingMatrix { n, edges, bits: vec![0; (edges * edges).div_ceil(64)] }
    }

    /// Index of `{u, v}` in the lexicographic edge order of K_n.
    #[inline]
    pub fn edge_index(&self, u: usize, v: usize) -> usize {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        u * (2 * self.n - u - 1) / 2 + (v - u - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub(crate) fn set(&mut self, e1: usize, e2: usize) {
        for k in [e1 * self.edges + e2, e2 * self.edges + e1] {
            self.bits[k / 64] |= 1 << (k % 64);
        }
    }

    #[inline]
    pub fn crosses_index(&self, e1: usize, e2: usize) -> bool {
        let k = e1 * self.edges + e2;
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn crosses(&self, e1: Edge, e2: Edge) -> bool {
        self.crosses_index(self.edge_index(e1.0, e1.1), self.edge_index(e2.0, e2.1))
    }

    /// Number of unordered crossing pairs.
    pub fn total(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum::<u64>() / 2
    }

    /// Crossing relation of a rectilinear drawing of K_n given by its points.
    pub fn from_points<S: Scalar>(points: &[Point<S>]) -> Result<Self> {
        let n = points.len();
        let mut m = CrossingMatrix::empty(n);
        let edges: Vec<Edge> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        for (i, j) in crossing_pairs(points, &edges)? {
            m.set(i, j);
        }
        Ok(m)
    }
}

/// Counts `e_j` of ordered j-edges of a point set, `j = 0..=n-2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KEdgeVector {
    n: usize,
    e: Vec<u64>,
}

impl KEdgeVector {
    pub fn from_counts(n: usize, e: Vec<u64>) -> Result<Self> {
        if n < 2 || e.len() != n - 1 {
            return Err(Error::IdentityViolation(format!("expected {} counts for n = {n}", n.saturating_sub(1))));
        }
        Ok(KEdgeVector { n, e })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[u64] {
        &self.e
    }

    /// `E_k = e_0 + ... + e_k`.
    pub fn prefix(&self, k: usize) -> u64 {
        self.e[..=k].iter().sum()
    }

    pub fn prefix_sums(&self) -> Vec<u64> {
        self.e
            .iter()
            .scan(0u64, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }
}

/// j-edge counts by a rotational sweep around every point, O(n² log n).
///
/// Around each `p` the other points are sorted by angle; for the ray to `q`
/// the points strictly left of `p -> q` form the contiguous block of the
/// cyclic order within the next half-turn, tracked by a second pointer.
pub fn k_edge_vector<S: Scalar>(points: &[Point<S>]) -> Result<KEdgeVector> {
    let n = points.len();
    if n < 3 {
        return Err(Error::DegenerateConfiguration(format!("k-edges need at least 3 points, got {n}")));
    }
    let mut e = vec![0u64; n - 1];
    let m = n - 1;
    for (pi, p) in points.iter().enumerate() {
        let mut dirs: Vec<(S, S)> = Vec::with_capacity(m);
        for (qi, q) in points.iter().enumerate() {
            if qi == pi {
                continue;
            }
            let d = (q.x.clone() - p.x.clone(), q.y.clone() - p.y.clone());
            if d.0.is_zero() && d.1.is_zero() {
                return Err(Error::DegenerateConfiguration(format!("points {pi} and {qi} coincide")));
            }
            dirs.push(d);
        }
        dirs.sort_by(|a, b| angular_cmp(&a.0, &a.1, &b.0, &b.1));
        let mut j = 0usize;
        for i in 0..m {
            j = j.max(i + 1);
            let (ux, uy) = &dirs[i];
            loop {
                if j >= i + m {
                    break;
                }
                let (vx, vy) = &dirs[j % m];
                match S::cross_sign(ux, uy, vx, vy) {
                    Ordering::Greater => j += 1,
                    Ordering::Equal => {
                        return Err(Error::DegenerateConfiguration(format!(
                            "point {pi} is collinear with two other points"
                        )))
                    }
                    Ordering::Less => break,
                }
            }
            e[j - i - 1] += 1;
        }
    }
    Ok(KEdgeVector { n, e })
}

fn choose3(n: i128) -> i128 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// 4 × the identity's right-hand side for prefix sums given by `prefix`.
fn identity_times4(n: usize, prefix: impl Fn(usize) -> i128) -> i128 {
    let ni = n as i128;
    let mut acc = 0i128;
    let mut k = 0usize;
    while 2 * k + 2 < n {
        acc += 4 * (ni - 2 * k as i128 - 3) * prefix(k);
        k += 1;
    }
    acc -= 3 * choose3(ni);
    if n % 2 == 1 && n >= 3 {
        acc += prefix((n - 3) / 2);
    }
    acc
}

/// Crossing number of a drawing of K_n recovered from its j-edge counts.
pub fn crossings_from_kedges(v: &KEdgeVector) -> Result<u64> {
    let four = identity_times4(v.n, |k| v.prefix(k) as i128);
    if four < 0 || four % 4 != 0 {
        return Err(Error::IdentityViolation(format!("identity evaluates to {four}/4 for n = {}", v.n)));
    }
    Ok((four / 4) as u64)
}

/// Crossings of the complete graph on `points` via k-edges, checked against
/// the brute-force counter.
pub fn crossings_from_kedges_checked<S: Scalar>(points: &[Point<S>]) -> Result<u64> {
    let via_identity = crossings_from_kedges(&k_edge_vector(points)?)?;
    let n = points.len();
    let edges: Vec<Edge> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    let direct = count_crossings(points, &edges)?;
    if via_identity != direct {
        return Err(Error::IdentityViolation(format!("identity gives {via_identity}, direct count {direct}")));
    }
    Ok(direct)
}

/// Lower bound on `E_k` for `n` points:
/// `3 C(k+2, 2) + sum_{j = floor(n/3)}^{k} (3j - n + 3)`.
pub fn e_k_lower_bound(n: usize, k: usize) -> i128 {
    let ki = k as i128;
    let ni = n as i128;
    let mut b = 3 * (ki + 2) * (ki + 1) / 2;
    for j in (n / 3)..=k {
        b += 3 * j as i128 - ni + 3;
    }
    b
}

/// Lower bound on the rectilinear crossing number of K_n: the `E_k` bound
/// plugged into the k-edge identity, rounded up.
pub fn lower_bound_crn(n: usize) -> u64 {
    let four = identity_times4(n, |k| e_k_lower_bound(n, k));
    if four <= 0 {
        0
    } else {
        ((four + 3) / 4) as u64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub n: usize,
    pub h: u64,
    pub lower_bound: u64,
}

/// Rows `(n, H(n), lower bound)` for `from..=to`, evaluated in parallel.
pub fn table1(from: usize, to: usize) -> Vec<Table1Row> {
    (from..=to)
        .into_par_iter()
        .map(|n| Table1Row { n, h: hill_number(n as u64), lower_bound: lower_bound_crn(n) })
        .collect()
}

pub fn table1_csv(rows: &[Table1Row]) -> String {
    let mut s = String::from("n,H,lower_bound\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{}", r.n, r.h, r.lower_bound);
    }
    s
}

/// Outcome of comparing H(n) with the k-edge lower bound.
#[derive(Clone, Debug)]
pub struct Prop1Report {
    pub rows_checked: usize,
    /// Rows where the lower bound fails to exceed H(n).
    pub violations: Vec<Table1Row>,
    /// Lower bound at n = 158 divided by 158·157·156·155.
    pub constant: BigRational,
    /// `constant - 1/64`.
    pub margin_over_one_64th: BigRational,
    /// Whether `constant >= 0.015625837`.
    pub meets_decimal_constant: bool,
}

impl Prop1Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.exceeds_one_64th()
    }

    pub fn exceeds_one_64th(&self) -> bool {
        self.margin_over_one_64th > BigRational::from_integer(0.into())
    }
}

/// Checks `lower_bound_crn(n) > H(n)` for 10 ≤ n ≤ 161 and the constant
/// that carries the induction beyond n = 161.
pub fn verify_proposition1() -> Prop1Report {
    let rows = table1(10, 161);
    let violations = rows.iter().copied().filter(|r| r.lower_bound <= r.h).collect();
    let lb158 = rows.iter().find(|r| r.n == 158).map(|r| r.lower_bound).unwrap_or(0);
    let constant = BigRational::new(BigInt::from(lb158), BigInt::from(158u64 * 157 * 156 * 155));
    let margin = &constant - BigRational::new(1.into(), 64.into());
    let meets = constant >= BigRational::new(15_625_837.into(), 1_000_000_000u64.into());
    Prop1Report {
        rows_checked: rows.len(),
        violations,
        constant,
        margin_over_one_64th: margin,
        meets_decimal_constant: meets,
    }
}
