//! Planted drawings.
//!
//! Each seed vertex `v` of degree `d` gets a directed splitting line through
//! it with `⌊d/2⌋` neighbours strictly on its left and `⌈d/2⌉` strictly on its
//! right, avoiding every other seed vertex. Vertex `v` is then replaced by
//! the cluster
//!
//! ```text
//! c_k = v + k·ε·dir + k²·δ·perp      k = 1..s
//! ```
//!
//! where `perp` is `dir` turned a quarter left. The quadratic term keeps each
//! cluster strictly convex, so the output is in general position. `ε` starts
//! at an eighth of the cluster's share of the nearest-vertex distance and is
//! halved, together with `δ/ε`, until the recount agrees with the closed form.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::closed_forms::{planted_terms, PlantedTerms};
use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::exact_geom::{angular_cmp, Point, RatPoint, Scalar};

pub const MAX_ATTEMPTS: usize = 20;

type Vector = Point<BigRational>;

fn sub(a: &Vector, b: &Vector) -> Vector {
    Point::new(&a.x - &b.x, &a.y - &b.y)
}

fn cross(a: &Vector, b: &Vector) -> Ordering {
    BigRational::cross_sign(&a.x, &a.y, &b.x, &b.y)
}

fn linf(a: &Vector) -> BigRational {
    a.x.abs().max(a.y.abs())
}

fn normalized(a: Vector) -> Vector {
    let m = linf(&a);
    Point::new(&a.x / &m, &a.y / &m)
}

fn angle(a: &Vector) -> f64 {
    a.y.to_f64().atan2(a.x.to_f64())
}

/// Neighbours of `v` strictly left of, strictly right of, and on the directed
/// line through `v` with direction `dir`; the last also counts non-neighbours.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Split {
    pub left: usize,
    pub right: usize,
    pub on_line: usize,
}

pub fn split_counts(d: &Drawing, v: usize, dir: &Vector) -> Split {
    let pts = d.rational_points();
    let nbrs = neighbours(d, v);
    let mut s = Split { left: 0, right: 0, on_line: 0 };
    for (w, p) in pts.iter().enumerate() {
        if w == v {
            continue;
        }
        match cross(dir, &sub(p, &pts[v])) {
            Ordering::Equal => s.on_line += 1,
            Ordering::Greater if nbrs.contains(&w) => s.left += 1,
            Ordering::Less if nbrs.contains(&w) => s.right += 1,
            _ => {}
        }
    }
    s
}

fn neighbours(d: &Drawing, v: usize) -> Vec<usize> {
    d.graph()
        .edges()
        .into_iter()
        .filter_map(|(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
        .collect()
}

/// Direction of a splitting line at `v`, normalized to unit L∞ length.
///
/// The directions toward and away from every other vertex cut the circle
/// into open sectors; any direction inside a sector avoids all vertices and
/// has a constant left/right split. Among sectors with the required split
/// the widest is used, and the returned direction is the sum of its two
/// boundary directions (a quarter turn from the first boundary when the
/// sector is a half-turn).
pub fn splitting_direction(d: &Drawing, v: usize) -> Result<Vector> {
    let pts = d.rational_points();
    let mut crit: Vec<Vector> = Vec::new();
    for (w, p) in pts.iter().enumerate() {
        if w != v {
            let r = normalized(sub(p, &pts[v]));
            crit.push(Point::new(-&r.x, -&r.y));
            crit.push(r);
        }
    }
    if crit.is_empty() {
        return Ok(Point::new(BigRational::one(), BigRational::zero()));
    }
    crit.sort_by(|a, b| angular_cmp(&a.x, &a.y, &b.x, &b.y));
    crit.dedup();
    let want_left = neighbours(d, v).len() / 2;
    let mut best: Option<(f64, Vector)> = None;
    for i in 0..crit.len() {
        let (a, b) = (&crit[i], &crit[(i + 1) % crit.len()]);
        let candidate = if cross(a, b) == Ordering::Greater {
            normalized(Point::new(&a.x + &b.x, &a.y + &b.y))
        } else {
            Point::new(-&a.y, a.x.clone())
        };
        let split = split_counts(d, v, &candidate);
        if split.on_line != 0 || split.left != want_left {
            continue;
        }
        let mut width = angle(b) - angle(a);
        if width <= 0.0 {
            width += std::f64::consts::TAU;
        }
        if best.as_ref().is_none_or(|(w, _)| width > *w) {
            best = Some((width, candidate));
        }
    }
    best.map(|(_, c)| c).ok_or(Error::NoValidDirection(v))
}

/// Per-vertex geometry of a planted drawing.
#[derive(Clone, Debug, PartialEq)]
pub struct PlantedPlan {
    pub s: usize,
    pub directions: Vec<Vector>,
    pub steps: Vec<BigRational>,
    pub nudges: Vec<BigRational>,
}

impl PlantedPlan {
    pub fn new(seed: &Drawing, s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidGraph("cluster size must be at least 1".into()));
        }
        let pts = seed.rational_points();
        let n = pts.len();
        let directions = (0..n).map(|v| splitting_direction(seed, v)).collect::<Result<Vec<_>>>()?;
        let s_big = BigRational::from_integer(BigInt::from(s));
        let steps: Vec<BigRational> = (0..n)
            .map(|v| {
                let clearance = (0..n)
                    .filter(|&w| w != v)
                    .map(|w| linf(&sub(&pts[w], &pts[v])))
                    .min()
                    .unwrap_or_else(BigRational::one);
                clearance / (BigRational::from_integer(8.into()) * &s_big)
            })
            .collect();
        let rho = BigRational::one() / (BigRational::from_integer(64.into()) * &s_big);
        let nudges = steps.iter().map(|e| e * &rho).collect();
        Ok(PlantedPlan { s, directions, steps, nudges })
    }

    /// Halves every step and the nudge-to-step ratio.
    pub fn shrink(&mut self) {
        let half = BigRational::new(1.into(), 2.into());
        let quarter = BigRational::new(1.into(), 4.into());
        for e in &mut self.steps {
            *e *= &half;
        }
        for d in &mut self.nudges {
            *d *= &quarter;
        }
    }

    pub fn realize(&self, seed: &Drawing) -> Result<Drawing> {
        let pts = seed.rational_points();
        let mut out: Vec<RatPoint> = Vec::with_capacity(pts.len() * self.s);
        for (v, p) in pts.iter().enumerate() {
            let dir = &self.directions[v];
            for k in 1..=self.s {
                let k = BigRational::from_integer(BigInt::from(k));
                let a = &k * &self.steps[v];
                let b = &k * &k * &self.nudges[v];
                out.push(Point::new(&p.x + &a * &dir.x - &b * &dir.y, &p.y + &a * &dir.y + &b * &dir.x));
            }
        }
        Drawing::rational(seed.graph().blow_up(self.s)?, out)
    }
}

/// Outcome of checking a planted drawing against the closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlantedReport {
    pub s: usize,
    pub seed_crossings: u64,
    pub total: u64,
    pub expected: PlantedTerms,
    pub found: PlantedTerms,
}

impl PlantedReport {
    pub fn ok(&self) -> bool {
        self.expected == self.found
    }
}

/// Recounts `planted` and attributes every crossing to the number of
/// distinct clusters among its four endpoints.
pub fn classify(planted: &Drawing, seed: &Drawing, s: usize) -> Result<PlantedReport> {
    if planted.vertex_count() != seed.vertex_count() * s {
        return Err(Error::SizeMismatch { guest: planted.vertex_count(), host: seed.vertex_count() * s });
    }
    let seed_crossings = seed.crossings()?;
    let expected = planted_terms(seed_crossings, &seed.graph().degrees(), seed.graph().edge_count(), s as u64);
    let mut by_sig = [0u64; 5];
    for (e1, e2) in planted.crossing_edge_pairs()? {
        let mut c = [e1.0 / s, e1.1 / s, e2.0 / s, e2.1 / s];
        c.sort_unstable();
        let distinct = 1 + c.windows(2).filter(|w| w[0] != w[1]).count();
        by_sig[distinct] += 1;
    }
    let found = PlantedTerms { four_cluster: by_sig[4], three_cluster: by_sig[3], two_cluster: by_sig[2] };
    Ok(PlantedReport { s, seed_crossings, total: by_sig.iter().sum(), expected, found })
}

/// [`classify`], failing on the first signature that disagrees.
pub fn verify_planted(planted: &Drawing, seed: &Drawing, s: usize) -> Result<PlantedReport> {
    let r = classify(planted, seed, s)?;
    let pairs = [
        (4, r.found.four_cluster, r.expected.four_cluster),
        (3, r.found.three_cluster, r.expected.three_cluster),
        (2, r.found.two_cluster, r.expected.two_cluster),
    ];
    for (signature, found, expected) in pairs {
        if found != expected {
            return Err(Error::ClassificationMismatch { signature, found, expected });
        }
    }
    Ok(r)
}

/// Planted drawing of `G^s` from `seed`, verified against the closed form.
pub fn plant_verified(seed: &Drawing, s: usize) -> Result<(Drawing, PlantedReport)> {
    let mut plan = PlantedPlan::new(seed, s)?;
    let mut last = String::new();
    for _ in 0..MAX_ATTEMPTS {
        match plan.realize(seed).and_then(|d| verify_planted(&d, seed, s).map(|r| (d, r))) {
            Ok(ok) => return Ok(ok),
            Err(e @ (Error::GeneralPositionViolation(_) | Error::ClassificationMismatch { .. })) => {
                last = e.to_string();
            }
            Err(e) => return Err(e),
        }
        plan.shrink();
    }
    Err(Error::PlantingFailed { attempts: MAX_ATTEMPTS, reason: last })
}

pub fn plant(seed: &Drawing, s: usize) -> Result<Drawing> {
    plant_verified(seed, s).map(|(d, _)| d)
}
