//! Worked examples per operation.

mod support;

use normlab_core::classes::{is_member, o_pi, radical, residual, saturation_spot_check};
use normlab_core::corpus::{self, parse_manifest, NamedGroup};
use normlab_core::harness::{self, check_boundary_evidence, Condition, Instance, LedgerStatus};
use normlab_core::norm::{crit_s, hf_norm, int_x, norm_infinity, norm_series, pi_f_norm, wielandt_subgroup};
use normlab_core::series::{centrality_verdict, chief_series, fitting_length, hypercentre, is_f_central, p_length, psi_p};
use normlab_core::{Basis, ClassExpr, Error, Group, Limits, Outcome, PrimeSet};
use support::*;

fn perms(degree: usize, gens: &[&str]) -> Group {
    let gens: Vec<Vec<u32>> = gens.iter().map(|s| corpus::parse_permutation(degree, s).unwrap()).collect();
    Group::from_permutations(degree, &gens, Limits::default()).unwrap()
}

fn elements_of_order(g: &Group, k: usize) -> Vec<usize> {
    (0..g.order()).filter(|&x| g.element_order(x) == k).collect()
}

// ---- group kernel ----

#[test]
fn permutation_groups() {
    let s3 = perms(3, &["(1 2)", "(1 2 3)"]);
    assert_eq!(s3.order(), 6);
    // closure over words in the generators, independent of the table build
    let by_words = naive_closure(&s3, &s3.generators().iter().copied().collect());
    assert_eq!(by_words.len(), 6);
    assert_eq!(perms(1, &[]).order(), 1);
    let d8 = perms(4, &["(1 2 3 4)", "(1 3)"]);
    assert_eq!(d8.order(), 8);
    assert_eq!(naive_closure(&d8, &d8.generators().iter().copied().collect()).len(), 8);
}

#[test]
fn closures() {
    let g = builtin("S3");
    assert!(g.closure(&[]).unwrap().is_trivial());
    let c = elements_of_order(&g, 3)[0];
    let sub = g.closure(&[c]).unwrap();
    assert_eq!(sub.order(), 3);
    assert_eq!(members(&sub), naive_closure(&g, &[c].into_iter().collect()));
    let all: Vec<usize> = (0..6).collect();
    assert!(g.closure(&all).unwrap().is_whole());
}

#[test]
fn centralizers_and_normalizers() {
    let c12 = builtin("C12");
    assert!(c12.center().is_whole());
    let s3 = builtin("S3");
    let t = s3.closure(&[elements_of_order(&s3, 2)[0]]).unwrap();
    assert_eq!(s3.normalizer(&t), t);
    assert_eq!(members(&s3.normalizer(&t)), naive_normalizer(&s3, &members(&t)));
    for name in ["S4", "D8", "Q8"] {
        let g = builtin(name);
        assert_eq!(g.centralizer(&g.whole()), g.center());
    }
}

#[test]
fn derived_subgroups() {
    assert!(builtin("C2^3").derived_subgroup().is_trivial());
    let s3 = builtin("S3");
    let d = s3.derived_subgroup();
    assert_eq!(d.order(), 3);
    let commutators: Set = (0..6).flat_map(|a| (0..6).map(move |b| (a, b))).map(|(a, b)| s3.commutator(a, b)).collect();
    assert_eq!(members(&d), naive_closure(&s3, &commutators));
    let a5 = builtin("A5");
    assert!(a5.derived_series().iter().all(|s| s.is_whole()));
}

#[test]
fn quotients() {
    let s4 = builtin("S4");
    assert_eq!(s4.quotient(&s4.whole()).unwrap().group.order(), 1);
    let same = s4.quotient(&s4.trivial()).unwrap();
    assert_eq!(same.group.order(), 24);
    assert!((0..24).all(|x| same.projection.apply(x) == x) || same.projection.verify(&s4, &same.group));
    let v4 = s4.normal_subgroups().iter().find(|n| n.order() == 4).unwrap().clone();
    let q = s4.quotient(&v4).unwrap();
    assert_eq!(q.group.order(), 6);
    assert!(!q.group.is_abelian());
}

#[test]
fn products() {
    let c3 = builtin("C3");
    let c2 = builtin("C2");
    let trivial: Vec<Vec<u32>> = (0..2).map(|_| (0..3).collect()).collect();
    let semi = Group::semidirect_product(&c3, &c2, &trivial).unwrap();
    let direct = Group::direct_product(&c3, &c2).unwrap();
    assert_eq!(semi.table(), direct.table());
    let inv = c3.extend_homomorphism(&c3, &[c3.inv(c3.generators()[0])]).unwrap();
    let images: Vec<u32> = (0..3).map(|x| inv.apply(x) as u32).collect();
    let action = Group::extend_action(&c3, &c2, &[images]).unwrap();
    let s3 = Group::semidirect_product(&c3, &c2, &action).unwrap();
    assert_eq!(s3.order(), 6);
    assert!(!s3.is_abelian());
    assert_eq!(Group::direct_product(&builtin("S3"), &builtin("C5")).unwrap().order(), 30);
}

#[test]
fn sylow_and_hall() {
    let s4 = builtin("S4");
    assert!(s4.sylow_subgroup(5).unwrap().is_trivial());
    assert_eq!(s4.sylow_subgroup(2).unwrap().order(), 8);
    let a5 = builtin("A5");
    assert_eq!(a5.hall_subgroup(&PrimeSet::explicit([2, 5])).unwrap(), None);
    assert!(naive_lattice(&a5).iter().all(|s| s.len() != 20));
}

#[test]
fn quaternion_recognition() {
    let d8 = builtin("D8");
    assert_eq!(elements_of_order(&d8, 2).len(), 5);
    assert!(!d8.is_quaternion_q8());
    let q8 = builtin("Q8");
    assert_eq!(elements_of_order(&q8, 2).len(), 1);
    assert!(q8.is_quaternion_q8());
    assert!(!builtin("C8").is_quaternion_q8());
}

// ---- subgroup lattice ----

#[test]
fn lattice_counts() {
    for p in [2, 3, 5, 7, 11] {
        assert_eq!(builtin(&format!("C{p}")).lattice().unwrap().len(), 2);
    }
    let d8 = builtin("D8");
    assert_eq!(d8.lattice().unwrap().len(), 10);
    assert_eq!(naive_lattice(&d8).len(), 10);
    let a5 = builtin("A5");
    let l = a5.lattice().unwrap();
    assert_eq!(l.len(), 59);
    assert_eq!(l.classes().len(), 9);
    let counted: usize = l
        .class_representatives()
        .iter()
        .map(|r| 60 / a5.normalizer(r).order())
        .sum();
    assert_eq!(counted, 59);
}

#[test]
fn normal_and_maximal_subgroups() {
    let a5 = builtin("A5");
    let minimal = a5.minimal_normal_subgroups();
    assert_eq!(minimal.len(), 1);
    assert!(minimal[0].is_whole());
    let s4 = builtin("S4");
    let orders: Vec<usize> = s4.normal_subgroups().iter().map(|n| n.order()).collect();
    assert_eq!(orders, vec![1, 4, 12, 24]);
    let c2_3 = builtin("C3^2");
    assert_eq!(c2_3.normal_subgroups().len(), c2_3.lattice().unwrap().len());
}

#[test]
fn frattini_subgroups() {
    assert!(builtin("C2^3").frattini_subgroup().unwrap().is_trivial());
    assert_eq!(builtin("C9").frattini_subgroup().unwrap().order(), 3);
    assert_eq!(builtin("C25").frattini_subgroup().unwrap().order(), 5);
    assert!(builtin("S4").frattini_subgroup().unwrap().is_trivial());
}

#[test]
fn subnormality() {
    let s4 = builtin("S4");
    for n in s4.normal_subgroups() {
        assert!(s4.is_subnormal(n));
    }
    let s3 = builtin("S3");
    let t = s3.closure(&[elements_of_order(&s3, 2)[0]]).unwrap();
    assert!(!s3.is_subnormal(&t));
    let d8 = builtin("D8");
    assert!(d8.lattice().unwrap().subgroups().iter().all(|h| d8.is_subnormal(h)));
}

// ---- classes ----

#[test]
fn memberships() {
    let s3 = builtin("S3");
    // S3 is S-critical for Gpi({2}) * Gpi({3}): its Gpi({3})-residual is S3
    // itself, so S3 lies outside the product while its proper subgroups lie in it
    assert_eq!(residual(&s3, &class("Gpi({3})")).unwrap().order(), 6);
    assert!(!is_member(&s3, &class("Gpi({2}) * Gpi({3})")).unwrap());
    assert!(crit_s(&s3, &class("Gpi({2}) * Gpi({3})")).unwrap());
    assert!(!is_member(&s3, &class("N * Gpi({3})")).unwrap());
    let a4 = builtin("A4");
    assert!(is_member(&a4, &class("Npi({3})")).unwrap());
    assert_eq!(residual(&a4, &ClassExpr::nilpotent()).unwrap().order(), 4);
    for named in catalog().iter().take(20) {
        assert!(is_member(&named.group, &ClassExpr::all()).unwrap());
    }
}

#[test]
fn residuals() {
    let c12 = builtin("C12");
    assert!(residual(&c12, &ClassExpr::abelian()).unwrap().is_trivial());
    assert_eq!(residual(&builtin("S3"), &ClassExpr::abelian()).unwrap().order(), 3);
    assert!(residual(&builtin("A5"), &ClassExpr::solvable()).unwrap().is_whole());
}

#[test]
fn radicals() {
    let q8 = builtin("Q8");
    assert!(radical(&q8, &ClassExpr::nilpotent()).unwrap().is_whole());
    assert_eq!(radical(&builtin("S4"), &ClassExpr::nilpotent()).unwrap().order(), 4);
    assert!(radical(&builtin("A5"), &ClassExpr::solvable()).unwrap().is_trivial());
}

#[test]
fn pi_radicals() {
    let d8 = builtin("D8");
    assert!(o_pi(&d8, &PrimeSet::explicit([2, 3])).unwrap().is_whole());
    let s4 = builtin("S4");
    let o2 = o_pi(&s4, &PrimeSet::single(2)).unwrap();
    assert_eq!(o2.order(), 4);
    assert_eq!(o2, radical(&s4, &ClassExpr::nilpotent()).unwrap());
    assert!(o_pi(&s4, &PrimeSet::single(7)).unwrap().is_trivial());
}

#[test]
fn saturation_checks() {
    let n = ClassExpr::nilpotent();
    assert!(saturation_spot_check(&builtin("D8"), "D8", &n).unwrap().outcome.is_pass());
    let s3 = builtin("S3");
    assert!(s3.frattini_subgroup().unwrap().is_trivial());
    assert!(saturation_spot_check(&s3, "S3", &n).unwrap().outcome.is_pass());
    let audit = saturation_spot_check(&builtin("C4"), "C4", &ClassExpr::abelian()).unwrap();
    assert!(audit.outcome.is_pass());
    assert_eq!(audit.params.get("mode").map(String::as_str), Some("audit"));
}

// ---- series ----

#[test]
fn chief_series_examples() {
    let c7 = builtin("C7");
    assert_eq!(chief_series(&c7, &c7.whole()).unwrap().factor_orders(), vec![7]);
    let s4 = builtin("S4");
    assert_eq!(chief_series(&s4, &s4.whole()).unwrap().factor_orders(), vec![4, 3, 2]);
    assert!(chief_series(&s4, &s4.trivial()).unwrap().is_empty());
}

#[test]
fn centrality_examples() {
    let c4 = builtin("C4");
    let two = c4.normal_subgroups().iter().find(|n| n.order() == 2).unwrap().clone();
    let n = ClassExpr::nilpotent();
    assert!(c4.centralizer(&two).is_whole());
    assert!(is_f_central(&c4, &two, &c4.trivial(), &n).unwrap());
    let s3 = builtin("S3");
    let c3 = s3.derived_subgroup();
    assert_eq!(s3.quotient(&s3.centralizer(&c3)).unwrap().group.order(), 2);
    let v = centrality_verdict(&s3, &c3, &s3.trivial(), &n).unwrap();
    assert_eq!(v.semidirect, Some(false));
    let v = centrality_verdict(&s3, &c3, &s3.trivial(), &ClassExpr::supersolvable()).unwrap();
    assert_eq!(v.semidirect, Some(true));
}

#[test]
fn hypercentre_examples() {
    let s3 = builtin("S3");
    let n = ClassExpr::nilpotent();
    assert!(hypercentre(&s3, &PrimeSet::single(5), &n).unwrap().is_whole());
    assert!(hypercentre(&s3, &PrimeSet::All, &n).unwrap().is_trivial());
    assert_eq!(naive_hypercentre(&s3).len(), 1);
    assert!(hypercentre(&s3, &PrimeSet::single(2), &n).unwrap().is_whole());
}

#[test]
fn lengths() {
    assert_eq!(fitting_length(&builtin("D16")).unwrap(), Some(1));
    let s4 = builtin("S4");
    assert_eq!(fitting_length(&s4).unwrap(), Some(3));
    assert_eq!(p_length(&s4, 2).unwrap(), 2);
    let s3 = builtin("S3");
    assert_eq!(p_length(&s3, 3).unwrap(), 1);
    assert_eq!(p_length(&s3, 2).unwrap(), 1);
    assert_eq!(fitting_length(&builtin("A5")).unwrap(), None);
}

#[test]
fn psi_examples() {
    let e = builtin("C2^3");
    assert!(psi_p(&e, 2).unwrap().is_whole());
    let q8 = builtin("Q8");
    assert!(psi_p(&q8, 2).unwrap().is_whole());
    let c4 = builtin("C4");
    assert_eq!(psi_p(&c4, 2).unwrap().order(), 2);
}

// ---- norms ----

#[test]
fn norm_examples() {
    let one = ClassExpr::trivial();
    let q8 = builtin("Q8");
    assert!(hf_norm(&q8, &one, &one).unwrap().is_whole());
    assert_eq!(naive_norm(&q8, &one, &one).len(), 8);
    let s3 = builtin("S3");
    assert!(hf_norm(&s3, &one, &one).unwrap().is_trivial());
    assert!(hf_norm(&s3, &one, &ClassExpr::abelian()).unwrap().is_whole());
    assert_eq!(naive_norm(&s3, &one, &ClassExpr::abelian()).len(), 6);
}

#[test]
fn pi_norm_examples() {
    let u = ClassExpr::supersolvable();
    let d8 = builtin("D8");
    assert!(pi_f_norm(&d8, &PrimeSet::explicit([2, 3]), &u).unwrap().is_whole());
    let s4 = builtin("S4");
    let pi2 = PrimeSet::single(2);
    assert_eq!(o_pi(&s4, &pi2).unwrap().order(), 4);
    let norm = pi_f_norm(&s4, &pi2, &u).unwrap();
    assert!(norm.is_whole());
    assert_eq!(naive_norm(&s4, &ClassExpr::pi_groups(pi2), &u).len(), 24);
    let a4 = builtin("A4");
    assert_eq!(
        pi_f_norm(&a4, &PrimeSet::single(5), &u).unwrap(),
        hf_norm(&a4, &ClassExpr::trivial(), &u).unwrap()
    );
}

#[test]
fn norm_series_examples() {
    let one = ClassExpr::trivial();
    let q8 = builtin("Q8");
    let s = norm_series(&q8, &one, &one).unwrap();
    assert_eq!(s.terms.len(), 2);
    assert!(s.terminal().is_whole());
    let s4 = builtin("S4");
    let u = ClassExpr::supersolvable();
    assert!(norm_infinity(&s4, &one, &u).unwrap().is_whole());
    let a5 = builtin("A5");
    assert!(hf_norm(&a5, &one, &u).unwrap().is_trivial());
    assert!(norm_infinity(&a5, &one, &u).unwrap().is_trivial());
}

#[test]
fn int_examples() {
    let d8 = builtin("D8");
    assert!(int_x(&d8, &ClassExpr::nilpotent()).unwrap().is_whole());
    let s4 = builtin("S4");
    assert!(int_x(&s4, &ClassExpr::nilpotent()).unwrap().is_trivial());
    // the Sylow 2-subgroups meet in V4; the maximal cyclic 3-subgroups cut it down
    let sylows: Vec<Set> = naive_lattice(&s4).into_iter().filter(|s| s.len() == 8).collect();
    let meet = sylows.iter().skip(1).fold(sylows[0].clone(), |a, b| a.intersection(b).copied().collect());
    assert_eq!(meet.len(), 4);
    let threes: Vec<Set> = naive_lattice(&s4).into_iter().filter(|s| s.len() == 3).collect();
    let meet = threes.iter().fold(meet, |a, b| a.intersection(b).copied().collect::<Set>());
    assert_eq!(meet.len(), 1);
    assert!(int_x(&s4, &ClassExpr::trivial()).unwrap().is_trivial());
}

#[test]
fn critical_groups() {
    assert!(crit_s(&builtin("A5"), &class("Gpi({3}) * Npi({3})")).unwrap());
    assert!(crit_s(&builtin("S3"), &class("Gpi({2}) * Gpi({3})")).unwrap());
    assert!(!crit_s(&builtin("S4"), &ClassExpr::solvable()).unwrap());
}

#[test]
fn wielandt_examples() {
    for named in catalog().iter().filter(|g| g.group.order() <= 16) {
        let g = &named.group;
        if is_member(g, &ClassExpr::nilpotent()).unwrap() {
            assert!(g.center().is_subgroup_of(&wielandt_subgroup(g).unwrap()), "{}", named.name);
        }
    }
    assert!(wielandt_subgroup(&builtin("A5")).unwrap().is_whole());
    assert!(wielandt_subgroup(&builtin("S3")).unwrap().is_whole());
}

// ---- harness ----

fn one_group(name: &str) -> Vec<NamedGroup> {
    vec![corpus::builtin(name).unwrap()]
}

fn inst(h: Option<&str>, f: &str, pi: PrimeSet) -> Instance {
    Instance {
        h: h.map(class),
        f: Some(class(f)),
        pi: Some(pi),
        ..Instance::default()
    }
}

#[test]
fn theorem_a_examples() {
    let r = harness::check_one(one_group("S4"), "ThmA", "S4", inst(Some("1"), "U", PrimeSet::All)).unwrap();
    assert_eq!(r.outcome, Outcome::Pass { basis: Basis::Instance });
    let r = harness::check_one(one_group("A5"), "ThmA", "A5", inst(Some("1"), "U", PrimeSet::All)).unwrap();
    assert!(matches!(r.outcome, Outcome::Pass { basis: Basis::LedgerEstablished { .. } }), "{r:?}");
    let r = harness::check_one(one_group("S3"), "ThmA", "S3", inst(Some("1"), "U", PrimeSet::single(2))).unwrap();
    match r.outcome {
        Outcome::Skip { reason } => assert!(reason.contains("Gpi(π') ⊆ H"), "{reason}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn theorem_d_examples() {
    let r = harness::check_one(one_group("S4"), "ThmD", "S4", inst(None, "U", PrimeSet::All)).unwrap();
    assert!(r.outcome.is_pass());
    let s4 = builtin("S4");
    let h = ClassExpr::pi_groups(PrimeSet::empty());
    assert!(norm_infinity(&s4, &h, &ClassExpr::supersolvable()).unwrap().is_whole());
    let r = harness::check_one(one_group("S3"), "ThmD", "S3", inst(None, "A", PrimeSet::single(3))).unwrap();
    assert!(r.outcome.is_pass());
    let r = harness::check_one(one_group("A5"), "ThmD", "A5", inst(None, "U", PrimeSet::All)).unwrap();
    assert!(r.outcome.is_skip());
}

#[test]
fn boundary_theorem_examples() {
    let r = harness::check_one(one_group("S4"), "ThmC", "S4", inst(None, "N", PrimeSet::All)).unwrap();
    assert!(matches!(r.outcome, Outcome::Pass { basis: Basis::LedgerEstablished { .. } }), "{r:?}");
    let r = harness::check_one(one_group("S3"), "ThmB1", "S3", inst(None, "Gpi({2}')", PrimeSet::All)).unwrap();
    match &r.outcome {
        Outcome::Pass {
            basis: Basis::LedgerEstablished { citation },
        } => assert!(citation.starts_with("Prop3.7")),
        other => panic!("{other:?}"),
    }
    // U fails condition II on A5, so nothing can be concluded there
    let r = harness::check_one(one_group("A5"), "ThmB1", "A5", inst(None, "U", PrimeSet::All)).unwrap();
    assert!(r.outcome.is_skip());
}

#[test]
fn lemma_examples() {
    let s4 = builtin("S4");
    assert!(s4.centralizer(&residual(&s4, &ClassExpr::abelian()).unwrap()).is_trivial());
    let r = harness::check_one(one_group("S4"), "Lem2.12", "S4", inst(None, "A", PrimeSet::All)).unwrap();
    assert!(r.outcome.is_pass());
    let r = harness::check_one(
        one_group("D8"),
        "Lem4.1",
        "D8",
        Instance {
            p: Some(2),
            ..Instance::default()
        },
    )
    .unwrap();
    assert!(r.outcome.is_pass());
    let r = harness::check_one(
        one_group("S3"),
        "Lem2.6",
        "S3",
        Instance {
            partner: Some("C5".into()),
            ..inst(Some("1"), "A", PrimeSet::All)
        },
    )
    .unwrap();
    assert!(r.outcome.is_pass(), "{r:?}");
}

#[test]
fn boundary_evidence_examples() {
    let a5 = one_group("A5");
    let status = check_boundary_evidence(&a5, &class("Npi({3})"), &PrimeSet::single(3), Condition::II);
    assert_eq!(
        status,
        LedgerStatus::Counterexample {
            group: "A5".into(),
            prime: Some(3)
        }
    );
    let s3 = one_group("S3");
    let status = check_boundary_evidence(&s3, &class("Gpi({3})"), &PrimeSet::All, Condition::III);
    assert_eq!(
        status,
        LedgerStatus::Counterexample {
            group: "S3".into(),
            prime: Some(2)
        }
    );
    let status = check_boundary_evidence(&one_group("C4"), &class("N"), &PrimeSet::All, Condition::I);
    assert!(matches!(status, LedgerStatus::CorpusEvidence { critical_groups: 0, .. }));
}

#[test]
fn section_four_examples() {
    for name in ["D8", "Q8", "C12"] {
        for f in ["A", "N", "U"] {
            let r = harness::check_one(one_group(name), "Cor4.5", name, inst(None, f, PrimeSet::All)).unwrap();
            assert!(r.outcome.is_pass(), "{name} {f}: {r:?}");
        }
    }
    let r = harness::check_one(one_group("S4"), "Cor4.5", "S4", inst(None, "A", PrimeSet::All)).unwrap();
    assert!(!r.outcome.is_fail());
    let r = harness::check_one(one_group("S3"), "Thm4.3", "S3", inst(None, "A", PrimeSet::single(3))).unwrap();
    assert_eq!(r.outcome, Outcome::Pass { basis: Basis::Instance });
}

// ---- corpus ----

#[test]
fn catalog_contents() {
    let cat = catalog();
    assert!(cat.iter().any(|g| g.group.order() == 60 && radical(&g.group, &ClassExpr::solvable()).unwrap().is_trivial()));
    assert!(cat.iter().any(|g| g.group.order() == 6 && !g.group.is_abelian()));
    assert!(cat.iter().any(|g| g.name == "Q8" && g.group.is_quaternion_q8()));
}

#[test]
fn manifest_examples() {
    let m = parse_manifest(r#"{"name":"S3","construction":{"perms":{"degree":3,"gens":["(1 2)","(1 2 3)"]}}}"#).unwrap();
    let c = corpus::load_corpus(&m).unwrap();
    assert_eq!(c[0].group.order(), 6);
    assert!(corpus::load_corpus(&parse_manifest("").unwrap()).unwrap().is_empty());
    assert!(matches!(corpus::parse_permutation(3, "[1,1,2]"), Err(Error::Validation(_))));
}
