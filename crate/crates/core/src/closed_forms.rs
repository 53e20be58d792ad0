//! Closed-form crossing formulas and bound evaluators.
//!
//! Everything is exact: integer formulas return integers, the rest return a
//! [`FormulaValue`] holding a `BigRational`. Leading-term evaluators drop the
//! unspecified lower-order remainders and say so in their names.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_model::GraphSpec;

/// An exact value with a display-only float.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FormulaValue {
    pub exact: BigRational,
}

impl FormulaValue {
    pub fn new(exact: BigRational) -> Self {
        FormulaValue { exact }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        FormulaValue { exact: BigRational::from_integer(v.into()) }
    }

    pub fn as_float(&self) -> f64 {
        self.exact.to_f64().unwrap_or(f64::NAN)
    }

    /// `p/q`, or just `p` when integral.
    pub fn exact_string(&self) -> String {
        if self.exact.is_integer() {
            self.exact.numer().to_string()
        } else {
            format!("{}/{}", self.exact.numer(), self.exact.denom())
        }
    }

    /// Decimal rendering with ten significant digits.
    pub fn decimal_string(&self) -> String {
        let x = self.as_float();
        if x == 0.0 {
            return "0".into();
        }
        let digits = (9 - x.abs().log10().floor() as i32).max(0) as usize;
        let s = format!("{x:.digits$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }
}

impl fmt::Display for FormulaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.exact_string(), self.decimal_string())
    }
}

fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Parses a plain decimal literal such as `0.379972` exactly.
pub fn decimal(s: &str) -> BigRational {
    let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: BigInt = format!("{whole}{frac}").parse().expect("decimal literal");
    BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32))
}

/// Published bounds on the rectilinear crossing constant
/// `lim cr̄(K_n) / C(n,4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QBar {
    Lower,
    Upper,
}

pub const QBAR_LOWER: &str = "0.379972";
pub const QBAR_UPPER: &str = "0.380445";

impl QBar {
    pub fn value(self) -> BigRational {
        match self {
            QBar::Lower => decimal(QBAR_LOWER),
            QBar::Upper => decimal(QBAR_UPPER),
        }
    }
}

fn c2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Hill's number `(1/4)⌊n/2⌋⌊(n-1)/2⌋⌊(n-2)/2⌋⌊(n-3)/2⌋`, the crossing count
/// of Hill's cylindrical drawing of K_n.
pub fn hill_number(n: u64) -> u64 {
    if n < 4 {
        return 0;
    }
    n / 2 * ((n - 1) / 2) * ((n - 2) / 2) * ((n - 3) / 2) / 4
}

/// Zarankiewicz's number `⌊n/2⌋⌊(n-1)/2⌋⌊m/2⌋⌊(m-1)/2⌋`.
pub fn zarankiewicz(m: u64, n: u64) -> u64 {
    let f = |x: u64| (x / 2) * (x.saturating_sub(1) / 2);
    f(m) * f(n)
}

pub fn zarankiewicz_square(n: u64) -> u64 {
    zarankiewicz(n, n)
}

fn divisible(n: u64, r: u64) -> Result<u64> {
    if r == 0 || !n.is_multiple_of(r) {
        return Err(Error::Divisibility { n, r });
    }
    Ok(n / r)
}

/// Harborth's three-term expression for K_n^r without its O(n²) remainder:
///
/// `(3/8) C(r,4) n⁴/r⁴ + r ⌊w/2⌋⌊(w-1)/2⌋⌊(n-w)/2⌋⌊(n-w-1)/2⌋ - C(r,2) ⌊w/2⌋² ⌊(w-1)/2⌋²`
/// with `w = n/r`. May be non-integral.
pub fn harborth_upper(n: u64, r: u64) -> Result<FormulaValue> {
    if r < 2 {
        return Err(Error::InvalidGraph(format!("harborth_upper needs r >= 2, got {r}")));
    }
    let w = divisible(n, r)?;
    let c4r = r * (r - 1) * (r - 2) * (r - 3) / 24;
    let a = rat(BigInt::from(3 * c4r) * BigInt::from(n).pow(4), BigInt::from(8) * BigInt::from(r).pow(4));
    let fl = |x: u64| x / 2;
    let b = r * fl(w) * fl(w.saturating_sub(1)) * fl(n - w) * fl((n - w).saturating_sub(1));
    let c = c2(r) * fl(w).pow(2) * fl(w.saturating_sub(1)).pow(2);
    Ok(FormulaValue::new(a + int(b) - int(c)))
}

/// Expected crossings of a uniformly random embedding of `g` into a host
/// drawing of K_n with `host_cr` crossings:
/// `host_cr / (3 C(n,4)) · independent_pairs(g)`.
pub fn expected_crossings_random_embedding(g: &GraphSpec, host_cr: u64, host_n: usize) -> Result<FormulaValue> {
    if g.vertex_count() != host_n {
        return Err(Error::SizeMismatch { guest: g.vertex_count(), host: host_n });
    }
    let n = host_n as u64;
    if n < 4 {
        return Ok(FormulaValue::from_int(0));
    }
    let quads = n * (n - 1) * (n - 2) * (n - 3) / 24;
    Ok(FormulaValue::new(rat(
        BigInt::from(host_cr) * BigInt::from(g.independent_pairs()),
        BigInt::from(3 * quads),
    )))
}

/// The three crossing classes of a planted drawing, by the number of
/// distinct clusters among the four endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PlantedTerms {
    pub four_cluster: u64,
    pub three_cluster: u64,
    pub two_cluster: u64,
}

impl PlantedTerms {
    pub fn total(&self) -> u64 {
        self.four_cluster + self.three_cluster + self.two_cluster
    }
}

/// Term-by-term crossing count of a planted drawing with clusters of size `s`.
pub fn planted_terms(seed_cr: u64, degrees: &[u64], edge_count: u64, s: u64) -> PlantedTerms {
    let split: u64 = degrees.iter().map(|&d| c2(d / 2) + c2(d.div_ceil(2))).sum();
    PlantedTerms {
        four_cluster: seed_cr * s.pow(4),
        three_cluster: split * s.pow(3) * (s - 1) / 2,
        two_cluster: edge_count * s * s * (s - 1) * (s - 1) / 4,
    }
}

/// `cr(D) s⁴ + Σ_v (C(⌊d/2⌋,2) + C(⌈d/2⌉,2)) s³(s-1)/2 + ||G|| s²(s-1)²/4`.
pub fn planted_crossings(seed_cr: u64, degrees: &[u64], edge_count: u64, s: u64) -> u64 {
    planted_terms(seed_cr, degrees, edge_count, s).total()
}

/// Leading n⁴ coefficient of the planted family grown from a drawing of
/// K_{tr}^r with `seed_cr` crossings.
pub fn planted_coefficient(seed_cr: u64, r: u64, t: u64) -> FormulaValue {
    let d = (r - 1) * t;
    let split = c2(d / 2) + c2(d.div_ceil(2));
    // cr + (rt/2)·split + r(r-1)t²/8, over (rt)^4, all times 8.
    let numer = 8 * seed_cr + 4 * r * t * split + r * (r - 1) * t * t;
    FormulaValue::new(rat(numer, 8 * (r * t).pow(4)))
}

/// Leading coefficient `(q̄/24)((r-1)/r)²` of a random embedding of K_n^r
/// into an optimal rectilinear drawing of K_n.
pub fn rectilinear_embedding_coefficient(r: u64, qbar: QBar) -> FormulaValue {
    FormulaValue::new(qbar.value() * rat((r - 1).pow(2), 24 * r * r))
}

/// `(r-1)² / (16 r⁴)`: random embedding of L_n^r into Hill's drawing.
pub fn layered_embedding_coefficient(r: u64) -> FormulaValue {
    FormulaValue::new(rat((r - 1).pow(2), 16 * r.pow(4)))
}

/// `(3r-5) / (16 r⁴)`: planted drawings of L_n^r from the planar layered seed.
pub fn layered_planted_coefficient(r: u64) -> FormulaValue {
    FormulaValue::new(rat(3 * r as i64 - 5, 16 * r.pow(4)))
}

/// `(2r-4) / (16 r⁴)`: the layered lower bound that holds if Zarankiewicz's
/// formula is the crossing number of K_{m,n}.
pub fn layered_conditional_coefficient(r: u64) -> FormulaValue {
    FormulaValue::new(rat(2 * r as i64 - 4, 16 * r.pow(4)))
}

/// Named leading-term evaluators for K_n^r and L_n^r at a concrete `(n, r)`.
///
/// `crk_r` is the caller's value of cr̄(K_r) for the class-transversal lower
/// bound; that entry is omitted when it is `None`.
pub fn bound_evaluators(n: u64, r: u64, qbar: QBar, crk_r: Option<u64>) -> Result<Vec<(&'static str, FormulaValue)>> {
    if r < 2 {
        return Err(Error::InvalidGraph(format!("bounds need r >= 2, got {r}")));
    }
    let w = divisible(n, r)?;
    let ni = int(n);
    let n3 = ni.pow(3);
    let n4 = ni.pow(4);
    let frac2 = rat((r - 1).pow(2), r * r);
    let sixteenth = rat(1, 16);
    let mut out = vec![
        (
            "hill_embedding_multipartite_leading",
            FormulaValue::new(&sixteenth * &frac2 * (&n4 / int(4) - int(3) * &n3 / int(2))),
        ),
        ("harborth_approx_leading", FormulaValue::new(&sixteenth * &frac2 * (&n4 / int(4) - int(2) * &n3))),
        (
            "rectilinear_embedding_multipartite_leading",
            FormulaValue::new(rectilinear_embedding_coefficient(r, qbar).exact * &n4),
        ),
    ];
    if let Some(c) = crk_r {
        out.push(("class_transversal_lower", FormulaValue::new(int(c) * int(w).pow(4))));
    }
    out.extend([
        ("hill_embedding_layered_leading", FormulaValue::new(layered_embedding_coefficient(r).exact * &n4)),
        ("planted_layered_leading", FormulaValue::new(layered_planted_coefficient(r).exact * &n4)),
        ("layered_conditional_lower_leading", FormulaValue::new(layered_conditional_coefficient(r).exact * &n4)),
        (
            "layered_conditional_lower",
            FormulaValue::new(rat(r as i64 - 2, 2) * int(zarankiewicz(w, 2 * w))),
        ),
    ]);
    Ok(out)
}

/// Exact check of `H(n) / (3 C(n,4)) <= (1/8)(1 - 2/n)`.
pub fn hill_ratio_bound_holds(n: u64) -> bool {
    if n < 4 {
        return true;
    }
    let quads = BigInt::from(n) * (n - 1) * (n - 2) * (n - 3) / 24u32;
    let lhs = rat(hill_number(n), quads * 3u32);
    let rhs = rat(n - 2, 8 * n);
    lhs <= rhs
}

pub fn is_integral(v: &FormulaValue) -> bool {
    v.exact.is_integer()
}
