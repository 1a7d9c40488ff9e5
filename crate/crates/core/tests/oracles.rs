mod support;

use normlab_core::norm::hf_norm;
use normlab_core::series::{hypercentre, upper_central_series};
use normlab_core::{ClassExpr, PrimeSet};
use support::*;

#[test]
fn lattice_matches_subset_closure_up_to_order_24() {
    for named in catalog().iter().filter(|g| g.group.order() <= 24) {
        let g = &named.group;
        let lattice = g.lattice().unwrap();
        let ours: std::collections::BTreeSet<Set> = lattice.subgroups().iter().map(members).collect();
        assert_eq!(ours.len(), lattice.len(), "{}: duplicate subgroups", named.name);
        assert_eq!(ours, naive_lattice(g), "{}", named.name);
    }
}

#[test]
fn class_sizes_are_normalizer_indices() {
    for named in catalog().iter().filter(|g| g.group.order() <= 120) {
        let g = &named.group;
        let lattice = g.lattice().unwrap();
        let total: usize = lattice.classes().iter().map(Vec::len).sum();
        assert_eq!(total, lattice.len(), "{}", named.name);
        for class in lattice.classes() {
            let rep = &lattice.subgroups()[class[0]];
            assert_eq!(class.len(), g.order() / g.normalizer(rep).order(), "{}", named.name);
        }
    }
}

#[test]
fn norm_matches_literal_intersection_up_to_order_48() {
    let grid = [("1", "1"), ("1", "A"), ("1", "N"), ("1", "U"), ("N", "A"), ("Gpi({2})", "N"), ("1", "Gpi({3})")];
    for named in catalog().iter().filter(|g| g.group.order() <= 48) {
        let g = &named.group;
        for (h, f) in grid {
            let (h, f) = (class(h), class(f));
            let ours = members(&hf_norm(g, &h, &f).unwrap());
            assert_eq!(ours, naive_norm(g, &h, &f), "{} H={h} F={f}", named.name);
        }
    }
}

#[test]
fn nilpotent_hypercentre_is_upper_central_limit() {
    let n = ClassExpr::nilpotent();
    for named in catalog() {
        let g = &named.group;
        let z = hypercentre(g, &PrimeSet::All, &n).unwrap();
        assert_eq!(members(&z), naive_hypercentre(g), "{}", named.name);
        assert_eq!(upper_central_series(g).last().unwrap(), &z, "{}", named.name);
    }
}

#[test]
fn hypercentre_join_matches_ascending_construction() {
    let classes = ["N", "A", "U", "Npi({2})", "Gpi({3})", "N * A"];
    let pis = [PrimeSet::All, PrimeSet::single(2), PrimeSet::single(3), PrimeSet::explicit([2, 3])];
    for named in catalog().iter().filter(|g| g.group.order() <= 120) {
        let g = &named.group;
        for f in classes {
            let f = class(f);
            for pi in &pis {
                let z = hypercentre(g, pi, &f).unwrap();
                assert_eq!(z, ascending_hypercentre(g, pi, &f), "{} π={pi} F={f}", named.name);
            }
        }
    }
}

#[test]
fn supersolvable_matches_cyclic_normal_series_up_to_order_48() {
    for named in catalog().iter().filter(|g| g.group.order() <= 48) {
        let g = &named.group;
        assert_eq!(is_supersolvable(g), has_cyclic_normal_series(g), "{}", named.name);
    }
}
