//! Hill's cylindrical drawing of K_n as a crossing relation.
//!
//! The `a = ⌈n/2⌉` top vertices sit at turn fractions `i/a`, the `b = ⌊n/2⌋`
//! bottom vertices at `(j + 1/2)/b`. Positions are kept as integers in units
//! of `1/D` with `D = 2ab`, so top vertex `i` is at `2b·i` and bottom vertex
//! `j` at `a(2j + 1)`.
//!
//! Chords within a cap cross iff their endpoints interleave. A lateral edge
//! is unrolled to the segment from `(t, 1)` to `(u + kD, 0)` with `k` chosen
//! so the horizontal displacement is at most `D/2` (ties go to `+D/2`); two
//! lateral edges cross iff some copy of one, shifted by `-D`, `0` or `+D`,
//! meets the other. Cap chords never meet lateral edges or the other cap.
//!
//! Vertex labels: top `0..a`, bottom `a..n`.

use crate::closed_forms::hill_number;
use crate::crossing::CrossingMatrix;
use crate::error::{Error, Result};
use crate::graph_model::Edge;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Top,
    Bottom,
    Lateral,
}

#[derive(Clone, Debug)]
pub struct HillModel {
    n: usize,
    a: usize,
    b: usize,
    matrix: CrossingMatrix,
}

impl HillModel {
    /// Builds the crossing relation and checks its total against H(n).
    pub fn new(n: usize) -> Result<Self> {
        let model = Self::unchecked(n)?;
        let found = model.total();
        let expected = hill_number(n as u64);
        if found != expected {
            return Err(Error::ModelInconsistent { n, found, expected });
        }
        Ok(model)
    }

    fn unchecked(n: usize) -> Result<Self> {
        let (a, b) = (n.div_ceil(2), n / 2);
        let mut model = HillModel { n, a, b, matrix: CrossingMatrix::empty(n) };
        let edges: Vec<Edge> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        for (i, &e1) in edges.iter().enumerate() {
            for (j, &e2) in edges.iter().enumerate().skip(i + 1) {
                if model.geodesics_cross(e1, e2)? {
                    model.matrix.set(i, j);
                }
            }
        }
        Ok(model)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top_count(&self) -> usize {
        self.a
    }

    pub fn bottom_count(&self) -> usize {
        self.b
    }

    pub fn matrix(&self) -> &CrossingMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CrossingMatrix {
        self.matrix
    }

    /// Whether the drawn edges `e1` and `e2` cross. Adjacent edges never do.
    pub fn crosses(&self, e1: Edge, e2: Edge) -> bool {
        self.matrix.crosses(e1, e2)
    }

    pub fn total(&self) -> u64 {
        self.matrix.total()
    }

    fn kind(&self, (u, v): Edge) -> Kind {
        match (u < self.a, v < self.a) {
            (true, true) => Kind::Top,
            (false, false) => Kind::Bottom,
            _ => Kind::Lateral,
        }
    }

    /// Unrolled lateral edge as `(t, u)` with `|u - t| <= D/2`.
    fn lift(&self, (u, v): Edge) -> (i64, i64) {
        let (top, bottom) = if u < self.a { (u, v) } else { (v, u) };
        let d = (2 * self.a * self.b) as i64;
        let t = (2 * self.b * top) as i64;
        let mut w = (self.a * (2 * (bottom - self.a) + 1)) as i64;
        while w - t > d / 2 {
            w -= d;
        }
        while w - t <= -d / 2 {
            w += d;
        }
        (t, w)
    }

    fn geodesics_cross(&self, e1: Edge, e2: Edge) -> Result<bool> {
        if e1.0 == e2.0 || e1.0 == e2.1 || e1.1 == e2.0 || e1.1 == e2.1 {
            return Ok(false);
        }
        match (self.kind(e1), self.kind(e2)) {
            (Kind::Top, Kind::Top) | (Kind::Bottom, Kind::Bottom) => Ok(interleave(e1, e2)),
            (Kind::Lateral, Kind::Lateral) => {
                let d = (2 * self.a * self.b) as i64;
                let (t1, u1) = self.lift(e1);
                let (t2, u2) = self.lift(e2);
                let mut hits = 0;
                for m in [-d, 0, d] {
                    let p = (t1 - t2 - m).signum() * (u1 - u2 - m).signum();
                    if p == 0 {
                        return Err(Error::DegenerateGeodesic(e1, e2));
                    }
                    if p < 0 {
                        hits += 1;
                    }
                }
                if hits > 1 {
                    return Err(Error::DegenerateGeodesic(e1, e2));
                }
                Ok(hits == 1)
            }
            _ => Ok(false),
        }
    }
}

/// Chords `(p, q)` and `(r, s)` of one circle, vertices in circular label order.
fn interleave((p, q): Edge, (r, s): Edge) -> bool {
    let (p, q) = (p.min(q), p.max(q));
    let inside = |x: usize| p < x && x < q;
    inside(r) != inside(s)
}

/// Convenience wrapper: `HillModel::new(n)?.crosses(e1, e2)`.
pub fn hill_crosses(model: &HillModel, e1: Edge, e2: Edge) -> bool {
    model.crosses(e1, e2)
}

/// Total crossings of Hill's drawing of K_n, self-checked against H(n).
pub fn hill_total(n: usize) -> Result<u64> {
    Ok(HillModel::new(n)?.total())
}
