//! Symbolic graph families and their exact combinatorics.
//!
//! Vertices of partitioned families occupy contiguous index ranges in
//! declaration order: class 0 first, then class 1, and so on. Layers of a
//! layered graph follow the same rule.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// An unordered edge stored with `u < v`.
pub type Edge = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// K_n.
    Complete(usize),
    /// K_{m,n}.
    CompleteBipartite(usize, usize),
    /// K_n^r with `r | n`: r classes of n/r vertices.
    BalancedMultipartite { n: usize, r: usize },
    /// K_{n1,...,nr} with explicit class sizes.
    Multipartite(Vec<usize>),
    /// L_n^r with `r | n`: complete bipartite between consecutive layers.
    Layered { n: usize, r: usize },
    /// Arbitrary simple graph.
    Explicit { n: usize, edges: Vec<Edge> },
}

/// A validated graph family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphSpec {
    family: Family,
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

impl GraphSpec {
    pub fn complete(n: usize) -> Self {
        GraphSpec { family: Family::Complete(n) }
    }

    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        GraphSpec { family: Family::CompleteBipartite(m, n) }
    }

    /// K_{1,n-1}.
    pub fn star(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("a star needs at least one vertex".into()));
        }
        Ok(Self::complete_bipartite(1, n - 1))
    }

    pub fn balanced_multipartite(n: usize, r: usize) -> Result<Self> {
        check_divisible(n, r)?;
        Ok(GraphSpec { family: Family::BalancedMultipartite { n, r } })
    }

    pub fn multipartite(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidGraph(format!("class sizes must be positive, got {sizes:?}")));
        }
        Ok(GraphSpec { family: Family::Multipartite(sizes) })
    }

    pub fn layered(n: usize, r: usize) -> Result<Self> {
        check_divisible(n, r)?;
        Ok(GraphSpec { family: Family::Layered { n, r } })
    }

    /// Edges are normalized to `u < v` and sorted; loops, duplicates and
    /// out-of-range endpoints are rejected.
    pub fn explicit(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut norm: Vec<Edge> = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("bad edge ({u}, {v}) for {n} vertices")));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        let before = norm.len();
        norm.dedup();
        if norm.len() != before {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        Ok(GraphSpec { family: Family::Explicit { n, edges: norm } })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn vertex_count(&self) -> usize {
        match &self.family {
            Family::Complete(n) => *n,
            Family::CompleteBipartite(m, n) => m + n,
            Family::BalancedMultipartite { n, .. } => *n,
            Family::Multipartite(sizes) => sizes.iter().sum(),
            Family::Layered { n, .. } => *n,
            Family::Explicit { n, .. } => *n,
        }
    }

    /// Class (or layer) sizes in vertex order. `Complete` and `Explicit`
    /// report every vertex as its own class.
    pub fn class_sizes(&self) -> Vec<usize> {
        match &self.family {
            Family::Complete(n) | Family::Explicit { n, .. } => vec![1; *n],
            Family::CompleteBipartite(m, n) => vec![*m, *n],
            Family::BalancedMultipartite { n, r } | Family::Layered { n, r } => vec![n / r; *r],
            Family::Multipartite(sizes) => sizes.clone(),
        }
    }

    /// Class label of every vertex.
    pub fn classes(&self) -> Vec<usize> {
        self.class_sizes()
            .iter()
            .enumerate()
            .flat_map(|(c, &size)| std::iter::repeat_n(c, size))
            .collect()
    }

    /// Deterministic edge list, sorted lexicographically with `u < v`.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.vertex_count();
        match &self.family {
            Family::Explicit { edges, .. } => edges.clone(),
            Family::Layered { .. } => {
                let layer = self.classes();
                let mut out = Vec::new();
                for u in 0..n {
                    for v in (u + 1)..n {
                        if layer[v] == layer[u] + 1 {
                            out.push((u, v));
                        }
                    }
                }
                out
            }
            _ => {
                let class = self.classes();
                let mut out = Vec::with_capacity(self.edge_count() as usize);
                for u in 0..n {
                    for v in (u + 1)..n {
                        if class[u] != class[v] {
                            out.push((u, v));
                        }
                    }
                }
                out
            }
        }
    }

    pub fn edge_count(&self) -> u64 {
        match &self.family {
            Family::Explicit { edges, .. } => edges.len() as u64,
            _ => self.degrees().iter().sum::<u64>() / 2,
        }
    }

    /// Degree of every vertex, from the family's closed form.
    pub fn degrees(&self) -> Vec<u64> {
        let n = self.vertex_count() as u64;
        match &self.family {
            Family::Explicit { n, edges } => {
                let mut d = vec![0u64; *n];
                for &(u, v) in edges {
                    d[u] += 1;
                    d[v] += 1;
                }
                d
            }
            Family::Layered { r, .. } => {
                let w = n / *r as u64;
                (0..*r)
                    .flat_map(|layer| {
                        let d = if *r == 1 {
                            0
                        } else if layer == 0 || layer == r - 1 {
                            w
                        } else {
                            2 * w
                        };
                        std::iter::repeat_n(d, w as usize)
                    })
                    .collect()
            }
            _ => self
                .class_sizes()
                .iter()
                .flat_map(|&size| std::iter::repeat_n(n - size as u64, size))
                .collect(),
        }
    }

    /// Number of unordered pairs of edges sharing no endpoint:
    /// `C(||G||, 2) - sum_v C(d(v), 2)`.
    pub fn independent_pairs(&self) -> u64 {
        choose2(self.edge_count()) - self.degrees().into_iter().map(choose2).sum::<u64>()
    }

    /// G^s: every vertex becomes a cluster of `s` vertices, and clusters of
    /// adjacent vertices are joined completely. Cluster of seed vertex `v`
    /// occupies indices `v*s .. v*s + s`.
    pub fn blow_up(&self, s: usize) -> Result<GraphSpec> {
        if s == 0 {
            return Err(Error::InvalidGraph("cluster size must be at least 1".into()));
        }
        Ok(match &self.family {
            Family::Complete(n) => {
                if *n == 0 {
                    GraphSpec::complete(0)
                } else {
                    GraphSpec::balanced_multipartite(n * s, *n)?
                }
            }
            Family::CompleteBipartite(m, n) => GraphSpec::complete_bipartite(m * s, n * s),
            Family::BalancedMultipartite { n, r } => GraphSpec::balanced_multipartite(n * s, *r)?,
            Family::Multipartite(sizes) => GraphSpec::multipartite(sizes.iter().map(|c| c * s).collect())?,
            Family::Layered { n, r } => GraphSpec::layered(n * s, *r)?,
            Family::Explicit { n, edges } => {
                let mut out = Vec::with_capacity(edges.len() * s * s);
                for &(u, v) in edges {
                    for i in 0..s {
                        for j in 0..s {
                            out.push((u * s + i, v * s + j));
                        }
                    }
                }
                GraphSpec::explicit(n * s, out)?
            }
        })
    }

    /// Short filesystem-safe key, unique per graph.
    pub fn key(&self) -> String {
        self.to_string().replace([':', ','], "_")
    }

    /// `{"family": ..., "params": ..., "classes": [...]}` as stored in drawing files.
    pub fn to_json(&self) -> Value {
        let (family, params) = match &self.family {
            Family::Complete(n) => ("complete", json!({ "n": n })),
            Family::CompleteBipartite(m, n) => ("complete_bipartite", json!({ "m": m, "n": n })),
            Family::BalancedMultipartite { n, r } => ("multipartite", json!({ "n": n, "r": r })),
            Family::Multipartite(sizes) => ("multipartite", json!({ "sizes": sizes })),
            Family::Layered { n, r } => ("layered", json!({ "n": n, "r": r })),
            Family::Explicit { n, edges } => {
                let e: Vec<[usize; 2]> = edges.iter().map(|&(u, v)| [u, v]).collect();
                ("explicit", json!({ "n": n, "edges": e }))
            }
        };
        json!({ "family": family, "params": params, "classes": self.classes() })
    }

    /// Inverse of [`GraphSpec::to_json`]. A present `classes` array must
    /// agree with the family's own class layout.
    pub fn from_json(v: &Value) -> Result<Self> {
        let family = v
            .get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("graph.family missing".into()))?;
        let params = v.get("params").ok_or_else(|| Error::Parse("graph.params missing".into()))?;
        let get = |k: &str| -> Result<usize> {
            params
                .get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("graph.params.{k} missing or not an integer")))
        };
        let spec = match family {
            "complete" => GraphSpec::complete(get("n")?),
            "complete_bipartite" => GraphSpec::complete_bipartite(get("m")?, get("n")?),
            "multipartite" => match params.get("sizes") {
                Some(sizes) => {
                    let sizes: Vec<usize> = serde_json::from_value(sizes.clone())?;
                    GraphSpec::multipartite(sizes)?
                }
                None => GraphSpec::balanced_multipartite(get("n")?, get("r")?)?,
            },
            "layered" => GraphSpec::layered(get("n")?, get("r")?)?,
            "explicit" => {
                let edges: Vec<[usize; 2]> = serde_json::from_value(
                    params.get("edges").cloned().ok_or_else(|| Error::Parse("graph.params.edges missing".into()))?,
                )?;
                GraphSpec::explicit(get("n")?, edges.into_iter().map(|[u, v]| (u, v)).collect())?
            }
            other => return Err(Error::Parse(format!("unknown graph family {other:?}"))),
        };
        if let Some(classes) = v.get("classes") {
            let classes: Vec<usize> = serde_json::from_value(classes.clone())?;
            if classes != spec.classes() {
                return Err(Error::ClassSizeMismatch(format!(
                    "stored classes {:?} do not match class sizes {:?}",
                    classes,
                    spec.class_sizes()
                )));
            }
        }
        Ok(spec)
    }
}

fn check_divisible(n: usize, r: usize) -> Result<()> {
    if r == 0 || !n.is_multiple_of(r) {
        return Err(Error::Divisibility { n: n as u64, r: r as u64 });
    }
    Ok(())
}

/// Compact textual form, also accepted by [`FromStr`]:
/// `complete:N`, `bipartite:M,N`, `balanced:N,R`, `multipartite:A,B,...`,
/// `layered:N,R`, `star:N`, `explicit:N:u-v,u-v,...`.
impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::CompleteBipartite(m, n) => write!(f, "bipartite:{m},{n}"),
            Family::BalancedMultipartite { n, r } => write!(f, "balanced:{n},{r}"),
            Family::Multipartite(sizes) => {
                let s: Vec<String> = sizes.iter().map(|c| c.to_string()).collect();
                write!(f, "multipartite:{}", s.join(","))
            }
            Family::Layered { n, r } => write!(f, "layered:{n},{r}"),
            Family::Explicit { n, edges } => {
                let s: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                write!(f, "explicit:{n}:{}", s.join(","))
            }
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse graph spec {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let nums = |t: &str| -> Result<Vec<usize>> {
            t.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect()
        };
        match kind {
            "complete" | "K" => Ok(GraphSpec::complete(rest.trim().parse().map_err(|_| bad())?)),
            "star" => GraphSpec::star(rest.trim().parse().map_err(|_| bad())?),
            "bipartite" => match nums(rest)?.as_slice() {
                [m, n] => Ok(GraphSpec::complete_bipartite(*m, *n)),
                _ => Err(bad()),
            },
            "balanced" => match nums(rest)?.as_slice() {
                [n, r] => GraphSpec::balanced_multipartite(*n, *r),
                _ => Err(bad()),
            },
            "layered" => match nums(rest)?.as_slice() {
                [n, r] => GraphSpec::layered(*n, *r),
                _ => Err(bad()),
            },
            "multipartite" => GraphSpec::multipartite(nums(rest)?),
            "explicit" => {
                let (n, list) = rest.split_once(':').unwrap_or((rest, ""));
                let n: usize = n.trim().parse().map_err(|_| bad())?;
                let mut edges = Vec::new();
                for item in list.split(',').filter(|t| !t.trim().is_empty()) {
                    let (u, v) = item.split_once('-').ok_or_else(bad)?;
                    edges.push((u.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?));
                }
                GraphSpec::explicit(n, edges)
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Oracle: enumerate every unordered pair of edges and test disjointness.
    fn brute_independent_pairs(g: &GraphSpec) -> u64 {
        let e = g.edges();
        let mut count = 0;
        for i in 0..e.len() {
            for j in (i + 1)..e.len() {
                let (a, b) = e[i];
                let (c, d) = e[j];
                if a != c && a != d && b != c && b != d {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn independent_pairs_examples() {
        assert_eq!(GraphSpec::complete(4).independent_pairs(), 3);
        let k63 = GraphSpec::balanced_multipartite(6, 3).unwrap();
        assert_eq!(brute_independent_pairs(&k63), 30);
        assert_eq!(k63.independent_pairs(), 30);
        let l63 = GraphSpec::layered(6, 3).unwrap();
        assert_eq!(l63.edge_count(), 8);
        assert_eq!(brute_independent_pairs(&l63), 12);
        assert_eq!(l63.independent_pairs(), 12);
        assert_eq!(GraphSpec::balanced_multipartite(8, 4).unwrap().independent_pairs(), 156);
    }

    #[test]
    fn edge_examples() {
        assert_eq!(GraphSpec::complete(3).edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(GraphSpec::layered(4, 2).unwrap().edges(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(
            GraphSpec::balanced_multipartite(4, 2).unwrap().edges(),
            vec![(0, 2), (0, 3), (1, 2), (1, 3)]
        );
        assert_eq!(GraphSpec::layered(6, 3).unwrap().edges(), vec![
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 5)
        ]);
    }

    #[test]
    fn divisibility_is_enforced() {
        assert!(matches!(GraphSpec::balanced_multipartite(9, 4), Err(Error::Divisibility { n: 9, r: 4 })));
        assert!(GraphSpec::layered(7, 2).is_err());
        assert_eq!(GraphSpec::multipartite(vec![3, 2, 2, 2]).unwrap().vertex_count(), 9);
    }

    #[test]
    fn layered_degrees() {
        let g = GraphSpec::layered(12, 4).unwrap();
        assert_eq!(g.degrees(), vec![3, 3, 3, 6, 6, 6, 6, 6, 6, 3, 3, 3]);
        assert_eq!(g.edge_count(), 3 * 9);
    }

    #[test]
    fn blow_up_shapes() {
        let k4 = GraphSpec::complete(4).blow_up(2).unwrap();
        assert_eq!(k4, GraphSpec::balanced_multipartite(8, 4).unwrap());
        let l = GraphSpec::layered(6, 3).unwrap().blow_up(2).unwrap();
        assert_eq!(l, GraphSpec::layered(12, 3).unwrap());
        let e = GraphSpec::explicit(3, vec![(0, 1), (1, 2)]).unwrap().blow_up(2).unwrap();
        assert_eq!(e.edge_count(), 8);
        assert_eq!(e.vertex_count(), 6);
    }

    #[test]
    fn text_and_json_forms() {
        for s in ["complete:5", "bipartite:2,3", "balanced:8,4", "multipartite:3,2,2,2", "layered:6,3", "explicit:3:0-1,1-2"] {
            let g: GraphSpec = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
            assert_eq!(GraphSpec::from_json(&g.to_json()).unwrap(), g);
        }
        assert_eq!("star:5".parse::<GraphSpec>().unwrap(), GraphSpec::complete_bipartite(1, 4));
        assert!("nope:1".parse::<GraphSpec>().is_err());
        let mut v = GraphSpec::layered(6, 3).unwrap().to_json();
        v["classes"] = json!([0, 0, 0, 1, 1, 2]);
        assert!(matches!(GraphSpec::from_json(&v), Err(Error::ClassSizeMismatch(_))));
    }

    /// Closed form for L_n^r; the n^2 coefficient is (r-1)/(2r^2).
    fn layered_closed_form_times_2r4(n: i128, r: i128) -> i128 {
        (r - 1) * (r - 1) * n.pow(4) - 2 * r * (2 * r - 3) * n.pow(3) + r * r * (r - 1) * n * n
    }

    #[test]
    fn layered_identity_exact() {
        for r in 2..=8usize {
            for w in 1..=10usize {
                let n = r * w;
                let g = GraphSpec::layered(n, r).unwrap();
                let lhs = 2 * (r as i128).pow(4) * g.independent_pairs() as i128;
                assert_eq!(lhs, layered_closed_form_times_2r4(n as i128, r as i128), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn layered_quadratic_coefficient_is_not_full() {
        // Using +(r-1)n^2/r^2 instead overshoots by exactly (r-1)n^2/(2r^2).
        let (n, r) = (6i128, 3i128);
        let g = GraphSpec::layered(6, 3).unwrap();
        let overshoot_times_r4 = ((r - 1) * (r - 1) * n.pow(4)) / 2 - r * (2 * r - 3) * n.pow(3) + r * r * (r - 1) * n * n;
        assert_eq!(overshoot_times_r4, 16 * r.pow(4));
        assert_eq!(g.independent_pairs() as i128 + (r - 1) * n * n / (2 * r * r), 16);
    }

    #[test]
    fn balanced_remainder_is_quadratic() {
        // IP - (1/2)((r-1)/r)^2 (n^4/4 - n^3), scaled by 8r^2, over n^2.
        let mut worst = 0f64;
        for r in 2..=10usize {
            let mut n = r;
            while n <= 200 {
                let g = GraphSpec::balanced_multipartite(n, r).unwrap();
                let (ni, ri) = (n as i128, r as i128);
                let lead_8r2 = (ri - 1) * (ri - 1) * (ni.pow(4) - 4 * ni.pow(3));
                let diff = 8 * ri * ri * g.independent_pairs() as i128 - lead_8r2;
                let ratio = diff as f64 / (8.0 * (r * r) as f64 * (n * n) as f64);
                worst = worst.max(ratio.abs());
                n += r;
            }
        }
        assert!(worst <= 0.5, "remainder ratio {worst}");
    }

    fn arb_graph() -> impl Strategy<Value = GraphSpec> {
        prop_oneof![
            (1usize..=12).prop_map(GraphSpec::complete),
            (1usize..=6, 1usize..=6).prop_map(|(m, n)| GraphSpec::complete_bipartite(m, n)),
            (1usize..=6, 1usize..=4).prop_map(|(w, r)| GraphSpec::balanced_multipartite(w * r, r).unwrap()),
            prop::collection::vec(1usize..=4, 1..=4).prop_map(|s| GraphSpec::multipartite(s).unwrap()),
            (1usize..=4, 1usize..=4).prop_map(|(w, r)| GraphSpec::layered(w * r, r).unwrap()),
            (2usize..=9)
                .prop_flat_map(|n| (Just(n), prop::collection::btree_set((0..n, 0..n), 0..20)))
                .prop_map(|(n, set)| {
                    let edges: std::collections::BTreeSet<Edge> =
                        set.into_iter().filter(|(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))).collect();
                    GraphSpec::explicit(n, edges.into_iter().collect()).unwrap()
                }),
        ]
    }

    proptest! {
        #[test]
        fn closed_form_matches_enumeration(g in arb_graph()) {
            prop_assert_eq!(g.independent_pairs(), brute_independent_pairs(&g));
            prop_assert_eq!(g.edge_count() as usize, g.edges().len());
            let degree_sum: u64 = g.degrees().iter().sum();
            prop_assert_eq!(degree_sum, 2 * g.edge_count());
        }
    }
}
