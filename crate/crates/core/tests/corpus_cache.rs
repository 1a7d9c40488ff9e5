mod support;

use std::collections::BTreeMap;
use std::fs;

use normlab_core::corpus::{self, ArtifactKind, DiskCache, CACHE_VERSION};
use normlab_core::harness::{Harness, Overrides};
use normlab_core::norm::hf_norm;
use normlab_core::series::chief_series;
use normlab_core::Error;
use support::*;

fn fresh(name: &str) -> std::sync::Arc<normlab_core::Group> {
    builtin(name)
}

#[test]
fn lattice_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(dir.path());
    let g = fresh("D8");
    assert_eq!(cache.load_lattice(&g).unwrap_err(), Error::CacheMiss);
    let l = g.lattice().unwrap();
    cache.store_lattice(&g, &l).unwrap();
    let back = cache.load_lattice(&g).unwrap();
    assert_eq!(back.len(), 10);
    assert_eq!(back.subgroups(), l.subgroups());
}

#[test]
fn other_version_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(dir.path());
    let g = fresh("D8");
    cache.store_lattice(&g, &g.lattice().unwrap()).unwrap();
    let path = cache.path(g.id(), ArtifactKind::Lattice);
    let old = path.with_extension(format!("v{}", CACHE_VERSION + 1));
    fs::rename(&path, &old).unwrap();
    assert_eq!(
        cache.load_lattice(&g).unwrap_err(),
        Error::CacheVersionMismatch { found: CACHE_VERSION + 1, expected: CACHE_VERSION }
    );
    let cold = fresh("D8");
    assert_eq!(cache.warm_lattice(&cold).unwrap().len(), 10);
    assert!(path.exists());
}

#[test]
fn corrupt_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(dir.path());
    let g = fresh("Q8");
    cache.store_lattice(&g, &g.lattice().unwrap()).unwrap();
    let path = cache.path(g.id(), ArtifactKind::Lattice);
    fs::write(&path, b"{\"group\": 1").unwrap();
    assert!(matches!(cache.load_lattice(&g), Err(Error::CorruptCache(_))));

    let cold = fresh("Q8");
    assert_eq!(cache.warm_lattice(&cold).unwrap().len(), 6);
    assert_eq!(cache.load_lattice(&cold).unwrap().len(), 6);
}

#[test]
fn entry_for_another_group_is_corrupt() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(dir.path());
    let (d8, q8) = (fresh("D8"), fresh("Q8"));
    cache.store_lattice(&d8, &d8.lattice().unwrap()).unwrap();
    let target = cache.path(q8.id(), ArtifactKind::Lattice);
    fs::create_dir_all(target.parent().unwrap()).unwrap();
    fs::copy(cache.path(d8.id(), ArtifactKind::Lattice), &target).unwrap();
    assert!(matches!(cache.load_lattice(&q8), Err(Error::CorruptCache(_))));
}

#[test]
fn chief_series_and_norms_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(dir.path());
    let g = fresh("S4");
    let s = chief_series(&g, &g.whole()).unwrap();
    cache.store_chief_series(&g, &s).unwrap();
    assert_eq!(cache.load_chief_series(&g).unwrap(), s);

    let mut results = BTreeMap::new();
    for (h, f) in [("1", "N"), ("1", "U"), ("N", "A")] {
        results.insert(format!("H={h};F={f}"), hf_norm(&g, &class(h), &class(f)).unwrap());
    }
    cache.store_norm_results(&g, &results).unwrap();
    assert_eq!(cache.load_norm_results(&g).unwrap(), results);
}

#[test]
fn cold_and_warm_cache_give_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(dir.path());
    let manifest = corpus::builtin_catalog();
    let run = || {
        let groups = corpus::load_corpus(&manifest).unwrap();
        let groups: Vec<_> = groups.into_iter().filter(|g| g.group.order() <= 60).collect();
        for g in &groups {
            cache.warm_lattice(&g.group).unwrap();
        }
        Harness::new(groups, Overrides::default())
            .run(&["Lem2.3", "Lem3.3", "ThmD"], 2)
            .unwrap()
            .into_iter()
            .map(|mut r| {
                r.elapsed = Default::default();
                r
            })
            .collect::<Vec<_>>()
    };
    let cold = run();
    let warm = run();
    assert!(!cold.is_empty());
    assert_eq!(cold, warm);
}
