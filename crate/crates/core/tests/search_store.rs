use rcn_core::optimizer::{optimize, record_best, record_paths, RecordMeta, RecordOutcome, SearchConfig};
use rcn_core::{Drawing, GraphSpec};

fn cfg(seed: u64) -> SearchConfig {
    SearchConfig { restarts: 2, max_moves: Some(2000), seed, serial: true, ..SearchConfig::default() }
}

#[test]
fn best_is_recounted_and_restarts_are_summarized() {
    let g = GraphSpec::balanced_multipartite(8, 4).unwrap();
    let r = optimize(&g, &cfg(3)).unwrap();
    assert_eq!(r.best.crossings().unwrap(), r.best_count);
    assert_eq!(r.restarts.len(), 2);
    assert_eq!(r.best_count, r.restarts.iter().map(|s| s.final_count).min().unwrap());
    assert!(r.restarts.iter().all(|s| s.moves <= 2000 && s.accepted <= s.moves));
    assert_eq!(r.restarts[1].seed, 4);
}

#[test]
fn store_keeps_the_better_record() {
    let dir = tempfile::tempdir().unwrap();
    let g = GraphSpec::balanced_multipartite(8, 4).unwrap();
    let c = SearchConfig { restarts: 1, max_moves: Some(50), ..cfg(1) };
    let weak = optimize(&g, &c).unwrap();
    assert_eq!(record_best(&weak, &c, dir.path()).unwrap(), RecordOutcome::Created);
    assert_eq!(record_best(&weak, &c, dir.path()).unwrap(), RecordOutcome::KeptExisting { stored: weak.best_count });

    let c2 = SearchConfig { restarts: 8, max_moves: None, ..cfg(1) };
    let strong = optimize(&g, &c2).unwrap();
    assert!(strong.best_count < weak.best_count);
    assert_eq!(record_best(&strong, &c2, dir.path()).unwrap(), RecordOutcome::Replaced { previous: weak.best_count });
    assert_eq!(record_best(&weak, &c, dir.path()).unwrap(), RecordOutcome::KeptExisting { stored: strong.best_count });

    let (drawing, meta) = record_paths(dir.path(), &g);
    assert_eq!(Drawing::load(drawing).unwrap().crossings().unwrap(), strong.best_count);
    let meta: RecordMeta = serde_json::from_str(&std::fs::read_to_string(meta).unwrap()).unwrap();
    assert_eq!(meta.count, strong.best_count);
    assert_eq!(meta.config_hash, c2.hash());
    assert_eq!(meta.graph, "balanced:8,4");
}

#[test]
fn config_hash_tracks_content() {
    assert_eq!(SearchConfig::default().hash(), SearchConfig::default().hash());
    assert_ne!(SearchConfig::default().hash(), cfg(0).hash());
}
