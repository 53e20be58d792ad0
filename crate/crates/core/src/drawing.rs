//! Rectilinear drawings: a graph plus one point per vertex.
//!
//! Drawings are validated on construction (point count, coordinate range,
//! general position) and are immutable afterwards. The on-disk form is a
//! small JSON document, written one point per line so stored records diff
//! cleanly:
//!
//! ```text
//! {
//!   "format": "rcn-drawing/1",
//!   "coordinate_kind": "integer",
//!   "graph": {"family":"complete","params":{"n":4},"classes":[0,1,2,3]},
//!   "points": [
//!     [0, 0],
//!     ...
//!   ]
//! }
//! ```
//!
//! Rational points are written as `[[xn, xd], [yn, yd]]` in lowest terms.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::Value;

use crate::closed_forms::zarankiewicz;
use crate::crossing::{count_crossings, crossing_pairs, k_edge_vector, KEdgeVector};
use crate::error::{Error, Result};
use crate::exact_geom::{find_collinear_triple, IntPoint, Point, RatPoint, MAX_INT_COORD};
use crate::graph_model::{Edge, GraphSpec};
use crate::rng;

pub const FORMAT_TAG: &str = "rcn-drawing/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoordinateKind {
    Integer,
    Rational,
}

impl CoordinateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CoordinateKind::Integer => "integer",
            CoordinateKind::Rational => "rational",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coords {
    Integer(Vec<IntPoint>),
    Rational(Vec<RatPoint>),
}

impl Coords {
    pub fn len(&self) -> usize {
        match self {
            Coords::Integer(p) => p.len(),
            Coords::Rational(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> CoordinateKind {
        match self {
            Coords::Integer(_) => CoordinateKind::Integer,
            Coords::Rational(_) => CoordinateKind::Rational,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    graph: GraphSpec,
    coords: Coords,
}

impl Drawing {
    pub fn new(graph: GraphSpec, coords: Coords) -> Result<Self> {
        if coords.len() != graph.vertex_count() {
            return Err(Error::VertexCountMismatch { points: coords.len(), vertices: graph.vertex_count() });
        }
        let collinear = match &coords {
            Coords::Integer(pts) => {
                if let Some(c) = pts.iter().flat_map(|p| [p.x, p.y]).find(|c| c.abs() > MAX_INT_COORD) {
                    return Err(Error::CoordinateOutOfRange(c));
                }
                find_collinear_triple(pts)
            }
            Coords::Rational(pts) => find_collinear_triple(pts),
        };
        if let Some(t) = collinear {
            return Err(Error::GeneralPositionViolation(t));
        }
        Ok(Drawing { graph, coords })
    }

    pub fn integer(graph: GraphSpec, points: Vec<IntPoint>) -> Result<Self> {
        Self::new(graph, Coords::Integer(points))
    }

    pub fn rational(graph: GraphSpec, points: Vec<RatPoint>) -> Result<Self> {
        Self::new(graph, Coords::Rational(points))
    }

    pub fn graph(&self) -> &GraphSpec {
        &self.graph
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn coordinate_kind(&self) -> CoordinateKind {
        self.coords.kind()
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    /// Same points, different graph on the same vertex count.
    pub fn with_graph(&self, graph: GraphSpec) -> Result<Self> {
        Self::new(graph, self.coords.clone())
    }

    pub fn integer_points(&self) -> Option<&[IntPoint]> {
        match &self.coords {
            Coords::Integer(p) => Some(p),
            Coords::Rational(_) => None,
        }
    }

    pub fn rational_points(&self) -> Vec<RatPoint> {
        match &self.coords {
            Coords::Integer(p) => p.iter().map(Point::to_rational).collect(),
            Coords::Rational(p) => p.clone(),
        }
    }

    /// Brute-force crossing count over independent edge pairs.
    pub fn crossings(&self) -> Result<u64> {
        let edges = self.graph.edges();
        match &self.coords {
            Coords::Integer(p) => count_crossings(p, &edges),
            Coords::Rational(p) => count_crossings(p, &edges),
        }
    }

    /// Crossing edge pairs, as edges.
    pub fn crossing_edge_pairs(&self) -> Result<Vec<(Edge, Edge)>> {
        let edges = self.graph.edges();
        let pairs = match &self.coords {
            Coords::Integer(p) => crossing_pairs(p, &edges)?,
            Coords::Rational(p) => crossing_pairs(p, &edges)?,
        };
        Ok(pairs.into_iter().map(|(i, j)| (edges[i], edges[j])).collect())
    }

    /// k-edge vector of the underlying point set.
    pub fn k_edges(&self) -> Result<KEdgeVector> {
        match &self.coords {
            Coords::Integer(p) => k_edge_vector(p),
            Coords::Rational(p) => k_edge_vector(p),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n");
        let _ = writeln!(s, "  \"format\": \"{FORMAT_TAG}\",");
        let _ = writeln!(s, "  \"coordinate_kind\": \"{}\",", self.coordinate_kind().as_str());
        let _ = writeln!(s, "  \"graph\": {},", self.graph.to_json());
        s.push_str("  \"points\": [");
        let lines: Vec<String> = match &self.coords {
            Coords::Integer(p) => p.iter().map(|p| format!("[{}, {}]", p.x, p.y)).collect(),
            Coords::Rational(p) => p
                .iter()
                .map(|p| {
                    format!("[[{}, {}], [{}, {}]]", p.x.numer(), p.x.denom(), p.y.numer(), p.y.denom())
                })
                .collect(),
        };
        if lines.is_empty() {
            s.push_str("]\n");
        } else {
            s.push('\n');
            s.push_str(&lines.iter().map(|l| format!("    {l}")).collect::<Vec<_>>().join(",\n"));
            s.push_str("\n  ]\n");
        }
        s.push_str("}\n");
        s
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        match v.get("format").and_then(Value::as_str) {
            Some(FORMAT_TAG) => {}
            other => return Err(Error::Parse(format!("unsupported drawing format {other:?}"))),
        }
        let graph = GraphSpec::from_json(v.get("graph").ok_or_else(|| Error::Parse("graph missing".into()))?)?;
        let points = v
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("points missing".into()))?;
        let coords = match v.get("coordinate_kind").and_then(Value::as_str) {
            Some("integer") => Coords::Integer(points.iter().map(parse_int_point).collect::<Result<_>>()?),
            Some("rational") => Coords::Rational(points.iter().map(parse_rat_point).collect::<Result<_>>()?),
            other => return Err(Error::Parse(format!("unknown coordinate_kind {other:?}"))),
        };
        Drawing::new(graph, coords)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json_string())?;
        Ok(())
    }
}

fn pair(v: &Value) -> Result<[&Value; 2]> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok([a, b]),
        _ => Err(Error::Parse(format!("expected a pair, got {v}"))),
    }
}

fn parse_i64(v: &Value) -> Result<i64> {
    let n = v.as_number().ok_or_else(|| Error::Parse(format!("expected an integer, got {v}")))?;
    if let Some(x) = n.as_i64() {
        return Ok(x);
    }
    match n.to_string().parse::<BigInt>() {
        Ok(big) if big.is_negative() => Err(Error::CoordinateOutOfRange(i64::MIN)),
        Ok(_) => Err(Error::CoordinateOutOfRange(i64::MAX)),
        Err(_) => Err(Error::Parse(format!("expected an integer, got {v}"))),
    }
}

fn parse_bigint(v: &Value) -> Result<BigInt> {
    v.as_number()
        .and_then(|n| n.to_string().parse::<BigInt>().ok())
        .ok_or_else(|| Error::Parse(format!("expected an integer, got {v}")))
}

fn parse_int_point(v: &Value) -> Result<IntPoint> {
    let [x, y] = pair(v)?;
    Ok(Point::new(parse_i64(x)?, parse_i64(y)?))
}

fn parse_ratio(v: &Value) -> Result<BigRational> {
    let [n, d] = pair(v)?;
    let (n, d) = (parse_bigint(n)?, parse_bigint(d)?);
    if !d.is_positive() {
        return Err(Error::Parse(format!("denominator must be positive, got {d}")));
    }
    Ok(BigRational::new(n, d))
}

fn parse_rat_point(v: &Value) -> Result<RatPoint> {
    let [x, y] = pair(v)?;
    Ok(Point::new(parse_ratio(x)?, parse_ratio(y)?))
}

/// Scale applied before the general-position perturbation.
const SCALE: i64 = 1_000_000;
const PERTURB_ATTEMPTS: u64 = 12;

/// Scales `base` by [`SCALE`], adds small seeded offsets, and keeps the first
/// result that is in general position with exactly `target` crossings.
fn perturb(graph: GraphSpec, base: &[(i64, i64)], target: u64, seed: u64) -> Result<Drawing> {
    let mut bound = SCALE / 1000 - 1;
    for attempt in 0..PERTURB_ATTEMPTS {
        let mut r = rng::seeded(seed.wrapping_add(attempt));
        let pts: Vec<IntPoint> = base
            .iter()
            .map(|&(x, y)| Point::new(x * SCALE + rng::between(&mut r, -bound, bound), y * SCALE + rng::between(&mut r, -bound, bound)))
            .collect();
        if let Ok(d) = Drawing::integer(graph.clone(), pts) {
            if d.crossings()? == target {
                return Ok(d);
            }
        }
        bound = (bound / 2).max(1);
    }
    Err(Error::PerturbationFailed(format!("{graph}: no general-position perturbation with {target} crossings")))
}

/// The planar drawing D_r of L_{2r}^r: layer `i` (1-based) holds `u_i` at
/// `p_i` and `v_i` at `q_i = -p_i`, with `p_i = (i, 0)` for odd `i` and
/// `(0, i)` for even `i`; perturbed into general position.
pub fn generate_layered(r: usize) -> Result<Drawing> {
    if r < 2 {
        return Err(Error::InvalidGraph(format!("layered drawing needs r >= 2, got {r}")));
    }
    let graph = GraphSpec::layered(2 * r, r)?;
    let base: Vec<(i64, i64)> = (1..=r as i64)
        .flat_map(|i| {
            let p = if i % 2 == 1 { (i, 0) } else { (0, i) };
            [p, (-p.0, -p.1)]
        })
        .collect();
    perturb(graph, &base, 0, 0x1a7e_4ed0 + r as u64)
}

/// Zarankiewicz's drawing of K_{m,n}: the `m` side on the x-axis at
/// `1..=⌈m/2⌉` and `-1..=-⌊m/2⌋`, the `n` side likewise on the y-axis;
/// perturbed into general position with exactly Z(m,n) crossings.
pub fn generate_zarankiewicz(m: usize, n: usize) -> Result<Drawing> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidGraph(format!("K_{{{m},{n}}} needs both sides non-empty")));
    }
    let axis = |k: usize| -> Vec<i64> {
        let pos = k.div_ceil(2) as i64;
        (1..=pos).chain((1..=(k / 2) as i64).map(|x| -x)).collect()
    };
    let base: Vec<(i64, i64)> = axis(m).into_iter().map(|x| (x, 0)).chain(axis(n).into_iter().map(|y| (0, y))).collect();
    perturb(GraphSpec::complete_bipartite(m, n), &base, zarankiewicz(m as u64, n as u64), 0x2a4a_0000 + (m * 64 + n) as u64)
}

/// Coordinates of a rectilinear drawing of K_24^4 with 2033 crossings,
/// six points per class in class order.
pub const K24_4_POINTS: [(i64, i64, usize); 24] = [
    (-59260959, 44970123, 0),
    (261261347, -43693014, 0),
    (158829052, -28658158, 0),
    (-20273112, -23913465, 0),
    (20602644, -8343316, 0),
    (-8148611, -63519416, 0),
    (30209164, 4850528, 1),
    (12317574, -161508817, 1),
    (46649346, -344926319, 1),
    (-11015825, -47872739, 1),
    (-26347789, 22655563, 1),
    (-46729617, 35472331, 1),
    (-74136586, 66127255, 2),
    (-278900322, 316137789, 2),
    (14791528, -20163276, 2),
    (-140757971, 147565111, 2),
    (14081248, -20874215, 2),
    (9903931, -24183515, 2),
    (-38516867, 27953341, 3),
    (-60922797, 47350463, 3),
    (8267623, -135305393, 3),
    (-15043716, -39580158, 3),
    (41831995, 797354, 3),
    (181333931, -34086725, 3),
];

pub fn k24_4() -> Drawing {
    let graph = GraphSpec::balanced_multipartite(24, 4).expect("24 divisible by 4");
    debug_assert!(K24_4_POINTS.iter().map(|p| p.2).eq(graph.classes()));
    let pts = K24_4_POINTS.iter().map(|&(x, y, _)| Point::new(x, y)).collect();
    Drawing::integer(graph, pts).expect("K_24^4 coordinates are in general position")
}

/// K_8^4 with 8 crossings, found by the optimizer.
pub const K8_4_POINTS: [(i64, i64); 8] = [
    (793697, -163022),
    (195333, 179189),
    (145504, -123148),
    (586821, -50889),
    (15279, 828188),
    (636445, -109829),
    (204649, -8079),
    (94176, 679814),
];

/// K_{3,2,2,2} with 15 crossings, found by the optimizer.
pub const K9_4_POINTS: [(i64, i64); 9] = [
    (655312, 813699),
    (331351, -555792),
    (-715589, 823441),
    (563414, 317889),
    (-961090, 1016231),
    (325281, -382922),
    (735750, 961892),
    (328127, -1001818),
    (401046, 715141),
];

fn int_drawing(graph: GraphSpec, pts: &[(i64, i64)]) -> Drawing {
    Drawing::integer(graph, pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).expect("library drawing is valid")
}

/// Named drawings: planting seeds, layered drawings and optimizer records.
///
/// * `k2_edge`: a single edge.
/// * `k4_planar`: K_4 as a triangle with one interior point.
/// * `k22`: K_{2,2} with both sides on the axes, no crossings.
/// * `k222_planar`: the octahedron K_{2,2,2} as two nested triangles, the
///   inner one rotated by half a turn; class `i` is outer vertex `i` and the
///   inner vertex opposite it.
/// * `layered_3` .. `layered_6`: [`generate_layered`].
/// * `k8_4`, `k9_4`: K_8^4 with 8 and K_{3,2,2,2} with 15 crossings.
/// * `k24_4`: K_24^4 with 2033 crossings.
pub fn seed_library() -> BTreeMap<&'static str, Drawing> {
    let mut lib = BTreeMap::new();
    lib.insert("k2_edge", int_drawing(GraphSpec::complete(2), &[(0, 0), (1, 0)]));
    lib.insert("k4_planar", int_drawing(GraphSpec::complete(4), &[(0, 0), (6, 0), (3, 6), (3, 2)]));
    lib.insert("k22", int_drawing(GraphSpec::complete_bipartite(2, 2), &[(1, 0), (-1, 0), (0, 1), (0, -1)]));
    lib.insert(
        "k222_planar",
        int_drawing(
            GraphSpec::balanced_multipartite(6, 3).expect("6 divisible by 3"),
            &[(0, 6), (0, -2), (-6, -3), (2, 1), (6, -3), (-2, 1)],
        ),
    );
    for (name, r) in [("layered_3", 3), ("layered_4", 4), ("layered_5", 5), ("layered_6", 6)] {
        lib.insert(name, generate_layered(r).expect("layered drawing"));
    }
    lib.insert("k8_4", int_drawing(GraphSpec::balanced_multipartite(8, 4).expect("8 divisible by 4"), &K8_4_POINTS));
    lib.insert("k9_4", int_drawing(GraphSpec::multipartite(vec![3, 2, 2, 2]).expect("class sizes"), &K9_4_POINTS));
    lib.insert("k24_4", k24_4());
    lib
}

pub fn library_drawing(name: &str) -> Result<Drawing> {
    seed_library().remove(name).ok_or_else(|| Error::UnknownSeed(name.to_string()))
}
