//! Vertex-move local search for low-crossing rectilinear drawings.
//!
//! Each restart starts from uniformly random integer points in the box and
//! repeatedly moves one random vertex by a random offset inside a disk of the
//! current step radius. Moves that break general position are rejected;
//! the rest are accepted unless they increase the crossing count. After
//! `max_stale_moves` moves without improvement the step shrinks by
//! `step_decay`; an improvement resets it. A restart ends when the step drops
//! below one, the move cap or time budget is hit, or another restart has
//! reached the target.
//!
//! Moving `v` only changes crossings on edges at `v`, so each proposal costs
//! O(d(v)·||G||) segment tests. The incremental count is compared against a
//! full recount every `checkpoint_every` moves and at the end.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::crossing::count_crossings;
use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::exact_geom::{crosses_from_signs, orient_i64, IntPoint, Point, MAX_INT_COORD};
use crate::graph_model::{Edge, GraphSpec};
use crate::rng::{self, SplitMix64};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_stale_moves: u64,
    pub initial_step: i64,
    /// Step multiplier as `(numerator, denominator)`.
    pub step_decay: (i64, i64),
    pub half_width: i64,
    pub seed: u64,
    pub budget_secs: f64,
    /// Per-restart move cap.
    pub max_moves: Option<u64>,
    /// Stop every restart once some restart reaches this count.
    pub target: Option<u64>,
    pub serial: bool,
    pub checkpoint_every: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 32,
            max_stale_moves: 400,
            initial_step: 1 << 20,
            step_decay: (1, 2),
            half_width: 1 << 20,
            seed: 0,
            budget_secs: 60.0,
            max_moves: None,
            target: None,
            serial: false,
            checkpoint_every: 1000,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let (num, den) = self.step_decay;
        let ok = self.restarts > 0
            && self.max_stale_moves > 0
            && self.initial_step > 0
            && 0 < num
            && num < den
            && self.half_width > 0
            && self.half_width <= MAX_INT_COORD
            && self.budget_secs > 0.0
            && self.checkpoint_every > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidGraph(format!("invalid search configuration {self:?}")))
        }
    }

    /// SHA-256 of the JSON form, hex encoded.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        format!("{:x}", Sha256::digest(json.as_bytes()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestartSummary {
    pub index: usize,
    pub seed: u64,
    pub moves: u64,
    pub accepted: u64,
    pub final_count: u64,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub best: Drawing,
    pub best_count: u64,
    pub best_restart: usize,
    pub restarts: Vec<RestartSummary>,
}

struct State<'a> {
    edges: &'a [Edge],
    incident: Vec<Vec<usize>>,
    pts: Vec<IntPoint>,
    count: u64,
}

fn seg_cross(p: &[IntPoint], a: Edge, b: Edge, moved: usize, at: &IntPoint) -> bool {
    let q = |i: usize| if i == moved { at } else { &p[i] };
    let o = |x: usize, y: usize, z: usize| orient_i64(q(x), q(y), q(z)).signum();
    crosses_from_signs(o(a.0, a.1, b.0), o(a.0, a.1, b.1), o(b.0, b.1, a.0), o(b.0, b.1, a.1))
}

impl<'a> State<'a> {
    fn new(n: usize, edges: &'a [Edge], pts: Vec<IntPoint>) -> Result<Self> {
        let mut incident = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let count = count_crossings(&pts, edges)?;
        Ok(State { edges, incident, pts, count })
    }

    /// Crossings on edges at `v` if `v` were at `at`.
    fn local(&self, v: usize, at: &IntPoint) -> u64 {
        let mut c = 0;
        for &i in &self.incident[v] {
            let a = self.edges[i];
            for &b in self.edges {
                if b.0 == v || b.1 == v || b.0 == a.0 || b.0 == a.1 || b.1 == a.0 || b.1 == a.1 {
                    continue;
                }
                c += seg_cross(&self.pts, a, b, v, at) as u64;
            }
        }
        c
    }

    /// Whether moving `v` to `at` keeps general position.
    fn keeps_general_position(&self, v: usize, at: &IntPoint) -> bool {
        let n = self.pts.len();
        for a in 0..n {
            if a == v {
                continue;
            }
            if self.pts[a] == *at {
                return false;
            }
            for b in (a + 1)..n {
                if b != v && orient_i64(&self.pts[a], &self.pts[b], at).signum() == 0 {
                    return false;
                }
            }
        }
        true
    }
}

fn random_start(n: usize, half: i64, r: &mut SplitMix64) -> Vec<IntPoint> {
    let mut pts: Vec<IntPoint> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = Point::new(rng::between(r, -half, half), rng::between(r, -half, half));
        let ok = (0..pts.len()).all(|a| pts[a] != p && ((a + 1)..pts.len()).all(|b| orient_i64(&pts[a], &pts[b], &p).signum() != 0));
        if ok {
            pts.push(p);
        }
    }
    pts
}

fn disk_offset(r: &mut SplitMix64, radius: i64) -> (i64, i64) {
    loop {
        let dx = rng::between(r, -radius, radius);
        let dy = rng::between(r, -radius, radius);
        if (dx, dy) != (0, 0) && (dx as i128).pow(2) + (dy as i128).pow(2) <= (radius as i128).pow(2) {
            return (dx, dy);
        }
    }
}

struct Shared {
    deadline: Instant,
    stop: AtomicBool,
}

fn run_restart(g: &GraphSpec, edges: &[Edge], cfg: &SearchConfig, index: usize, shared: &Shared) -> Result<(RestartSummary, Vec<IntPoint>)> {
    let n = g.vertex_count();
    let seed = cfg.seed.wrapping_add(index as u64);
    let mut r = rng::seeded(seed);
    let mut st = State::new(n, edges, random_start(n, cfg.half_width, &mut r))?;
    let (num, den) = cfg.step_decay;
    let mut step = cfg.initial_step;
    let (mut stale, mut moves, mut accepted) = (0u64, 0u64, 0u64);
    let reached = |c: u64| cfg.target.is_some_and(|t| c <= t);
    if reached(st.count) {
        shared.stop.store(true, Ordering::Relaxed);
    }
    while step >= 1 && n > 1 {
        if cfg.max_moves.is_some_and(|m| moves >= m) {
            break;
        }
        if moves % 64 == 0 && (shared.stop.load(Ordering::Relaxed) || Instant::now() >= shared.deadline) {
            break;
        }
        moves += 1;
        let v = rng::below(&mut r, n as u64) as usize;
        let (dx, dy) = disk_offset(&mut r, step);
        let at = Point::new(st.pts[v].x + dx, st.pts[v].y + dy);
        let mut improved = false;
        if at.x.abs() <= cfg.half_width && at.y.abs() <= cfg.half_width && st.keeps_general_position(v, &at) {
            let before = st.local(v, &st.pts[v]);
            let after = st.local(v, &at);
            if after <= before {
                st.pts[v] = at;
                st.count = st.count - before + after;
                accepted += 1;
                improved = after < before;
            }
        }
        if improved {
            step = cfg.initial_step;
            stale = 0;
            if reached(st.count) {
                shared.stop.store(true, Ordering::Relaxed);
            }
        } else {
            stale += 1;
            if stale >= cfg.max_stale_moves {
                step = step * num / den;
                stale = 0;
            }
        }
        if moves % cfg.checkpoint_every == 0 {
            checkpoint(&st)?;
        }
    }
    checkpoint(&st)?;
    Ok((RestartSummary { index, seed, moves, accepted, final_count: st.count }, st.pts))
}

fn checkpoint(st: &State) -> Result<()> {
    let recount = count_crossings(&st.pts, st.edges)?;
    if recount != st.count {
        return Err(Error::CheckpointMismatch { incremental: st.count, recount });
    }
    Ok(())
}

pub fn optimize(g: &GraphSpec, cfg: &SearchConfig) -> Result<SearchResult> {
    optimize_with_progress(g, cfg, &|_| {})
}

/// [`optimize`], calling `progress` as each restart finishes.
pub fn optimize_with_progress(g: &GraphSpec, cfg: &SearchConfig, progress: &(dyn Fn(&RestartSummary) + Sync)) -> Result<SearchResult> {
    cfg.validate()?;
    let edges = g.edges();
    let shared = Shared {
        deadline: Instant::now() + Duration::from_secs_f64(cfg.budget_secs),
        stop: AtomicBool::new(false),
    };
    let one = |i: usize| {
        let out = run_restart(g, &edges, cfg, i, &shared)?;
        progress(&out.0);
        Ok(out)
    };
    let runs: Vec<(RestartSummary, Vec<IntPoint>)> = if cfg.serial {
        (0..cfg.restarts).map(one).collect::<Result<_>>()?
    } else {
        (0..cfg.restarts).into_par_iter().map(one).collect::<Result<_>>()?
    };
    let (best_restart, (summary, pts)) = runs
        .iter()
        .enumerate()
        .min_by_key(|(i, (s, _))| (s.final_count, *i))
        .expect("at least one restart");
    let best = Drawing::integer(g.clone(), pts.clone())?;
    let best_count = best.crossings()?;
    if best_count != summary.final_count {
        return Err(Error::CheckpointMismatch { incremental: summary.final_count, recount: best_count });
    }
    Ok(SearchResult {
        best,
        best_count,
        best_restart,
        restarts: runs.into_iter().map(|(s, _)| s).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecordOutcome {
    Created,
    Replaced { previous: u64 },
    KeptExisting { stored: u64 },
}

/// Metadata stored next to each best drawing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordMeta {
    pub graph: String,
    pub count: u64,
    pub seed: u64,
    pub restart: usize,
    pub config_hash: String,
    pub timestamp: u64,
}

static STORE_LOCK: Mutex<()> = Mutex::new(());

pub fn record_paths(store: &Path, g: &GraphSpec) -> (PathBuf, PathBuf) {
    let key = g.key();
    (store.join(format!("{key}.json")), store.join(format!("{key}.meta.json")))
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp)?;
    f.write_all(contents.as_bytes())?;
    f.sync_all()?;
    fs::rename(tmp, path)?;
    Ok(())
}

/// Stores the best drawing of `result` unless the store already holds a
/// drawing of the same graph with at most as many crossings.
pub fn record_best(result: &SearchResult, cfg: &SearchConfig, store: &Path) -> Result<RecordOutcome> {
    let _guard = STORE_LOCK.lock().unwrap_or_else(|e| e.into_inner());
    fs::create_dir_all(store)?;
    let (drawing_path, meta_path) = record_paths(store, result.best.graph());
    let previous = if drawing_path.exists() { Some(Drawing::load(&drawing_path)?.crossings()?) } else { None };
    if let Some(stored) = previous {
        if stored <= result.best_count {
            return Ok(RecordOutcome::KeptExisting { stored });
        }
    }
    let meta = RecordMeta {
        graph: result.best.graph().to_string(),
        count: result.best_count,
        seed: cfg.seed.wrapping_add(result.best_restart as u64),
        restart: result.best_restart,
        config_hash: cfg.hash(),
        timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
    };
    write_atomic(&drawing_path, &result.best.to_json_string())?;
    write_atomic(&meta_path, &(serde_json::to_string_pretty(&meta)? + "\n"))?;
    Ok(match previous {
        Some(previous) => RecordOutcome::Replaced { previous },
        None => RecordOutcome::Created,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(seed: u64) -> SearchConfig {
        SearchConfig { restarts: 3, max_moves: Some(3000), seed, serial: true, checkpoint_every: 100, ..SearchConfig::default() }
    }

    #[test]
    fn k4_reaches_planar() {
        let r = optimize(&GraphSpec::complete(4), &SearchConfig { target: Some(0), ..quick(1) }).unwrap();
        assert_eq!(r.best_count, 0);
    }

    #[test]
    fn serial_runs_are_reproducible() {
        let g = GraphSpec::balanced_multipartite(8, 4).unwrap();
        let a = optimize(&g, &quick(5)).unwrap();
        let b = optimize(&g, &quick(5)).unwrap();
        assert_eq!(a.restarts, b.restarts);
        assert_eq!(a.best, b.best);
        let p = optimize(&g, &SearchConfig { serial: false, ..quick(5) }).unwrap();
        assert_eq!(p.restarts, a.restarts);
        assert_eq!(p.best_restart, a.best_restart);
    }

    #[test]
    fn incremental_local_count_matches_recount() {
        let g = GraphSpec::complete(7);
        let edges = g.edges();
        let mut r = rng::seeded(3);
        let mut st = State::new(7, &edges, random_start(7, 1000, &mut r)).unwrap();
        for _ in 0..200 {
            let v = rng::below(&mut r, 7) as usize;
            let (dx, dy) = disk_offset(&mut r, 300);
            let at = Point::new(st.pts[v].x + dx, st.pts[v].y + dy);
            if !st.keeps_general_position(v, &at) {
                continue;
            }
            let before = st.local(v, &st.pts[v]);
            let after = st.local(v, &at);
            st.pts[v] = at;
            st.count = st.count - before + after;
            assert_eq!(st.count, count_crossings(&st.pts, &edges).unwrap());
        }
    }

    #[test]
    fn invalid_config_rejected() {
        let bad = SearchConfig { step_decay: (2, 1), ..SearchConfig::default() };
        assert!(optimize(&GraphSpec::complete(4), &bad).is_err());
    }
}
