//! Executable propositions about norms, hypercentres and boundary conditions.
//!
//! Each proposition is checked per group (or once per corpus) over a grid of
//! parameters. A check evaluates its hypotheses first; a failed hypothesis is
//! a `Skip` with the clause as reason, never a failure. Hypotheses that are
//! statements about all finite groups (the boundary conditions) come from the
//! [ledger](established): either a static table of known cases or evidence
//! gathered from the loaded corpus. Passes record which of the two they
//! relied on.
//!
//! Whether boundary condition II is necessary for `N∞_{π'F} = Z_{π(N*F)}` to
//! hold for every group is not known; `ThmB1` only ever checks the sufficient
//! direction and the corpus-level checks only accumulate evidence.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{self, is_member, is_subclass, residual, Atom, ClassExpr};
use crate::corpus::{self, NamedGroup};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::norm::{crit_s, crit_s_exhaustive, hf_norm, int_x, norm_infinity};
use crate::primes::{self, PrimeSet};
use crate::report::{Basis, Outcome, PropositionReport, Witness};
use crate::series::{self, centrality_verdict, chief_series, hypercentre, psi_p};

// ---- registry ---------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Evaluated on every corpus group.
    Group,
    /// Evaluated once, over the corpus or a fixed group.
    Corpus,
}

#[derive(Debug, Clone, Copy)]
pub struct PropositionInfo {
    pub id: &'static str,
    pub scope: Scope,
    pub statement: &'static str,
}

const REGISTRY: &[PropositionInfo] = &[
    PropositionInfo {
        id: "Rem1.4",
        scope: Scope::Corpus,
        statement: "A5 is S-critical for Gpi({3}) * Npi({3}) and A5 is not in S * Npi({3})",
    },
    PropositionInfo {
        id: "Rem1.5",
        scope: Scope::Corpus,
        statement: "S3 is S-critical for Gpi({2}) * Gpi({3}) and S3 is not in N * Gpi({3})",
    },
    PropositionInfo {
        id: "ThmA",
        scope: Scope::Group,
        statement: "with X = H . N * F: G in X, G/Norm in X, G/Norm∞ in X, Norm(G/K) > 1 for all proper normal K, \
                    and G = Norm∞ are equivalent, given residual(G, X) π-solvable or condition I",
    },
    PropositionInfo {
        id: "ThmB1",
        scope: Scope::Group,
        statement: "under condition II: N∞_{π'F}(G) = Z_{π(N*F)}(G)",
    },
    PropositionInfo {
        id: "ThmC",
        scope: Scope::Group,
        statement: "under condition III: N∞_{π'F}(G) = Int_{Npi(π)*F}(G) = Z_{π(N*F)}(G)",
    },
    PropositionInfo {
        id: "ThmD",
        scope: Scope::Group,
        statement: "for G in Spi(π) * F: N∞_{π'F}(G) = Z_{π(N*F)}(G)",
    },
    PropositionInfo {
        id: "ThmE",
        scope: Scope::Group,
        statement: "for solvable G under condition III in S: N∞_{π'F}(G) = Int_{Npi(π)*F}(G) = Z_{π(N*F)}(G)",
    },
    PropositionInfo {
        id: "Cor3.2",
        scope: Scope::Group,
        statement: "the ThmA equivalences with H = Gpi(π') and X = Npi(π) * F, given G in Spi(π) * F or condition I",
    },
    PropositionInfo {
        id: "Cor3.4",
        scope: Scope::Group,
        statement: "with Z0 = Z_{πN}(G^F): N∞_{π'F}(G)/Z0 = N_{π'F}(G/Z0) = Z_{π(N*F)}(G)/Z0 (= Z_{πF}(G/Z0) for saturated F), \
                    given G in Spi(π) * F or condition II",
    },
    PropositionInfo {
        id: "Lem2.1",
        scope: Scope::Group,
        statement: "G^F K/K = (G/K)^F; U^F <= G^F for S-closed F; K^F <= G^F for Sn-closed F",
    },
    PropositionInfo {
        id: "Lem2.2",
        scope: Scope::Group,
        statement: "G_H ∩ K = K_H; G_H ∩ U <= U_H (S-closed); G_H K/K <= (G/K)_H (Q-closed); (G/K)_H <= G_H/K for K <= G_H (E-closed)",
    },
    PropositionInfo {
        id: "Lem2.3",
        scope: Scope::Group,
        statement: "Norm(G) ∩ K <= Norm(K); Norm(G) ∩ U <= Norm(U) (S-closed H); Norm(G)K/K <= Norm(G/K) (Q-closed H); \
                    G in H . N * F implies G = 1 or Norm(G) > 1",
    },
    PropositionInfo {
        id: "Lem2.5",
        scope: Scope::Group,
        statement: "the Lem2.3 inclusions for Norm∞, Norm∞(G/K) = Norm∞(G)/K for K <= Norm∞(G), \
                    and Norm∞(G) is the intersection of the normal K with Norm(G/K) = 1",
    },
    PropositionInfo {
        id: "Lem2.6",
        scope: Scope::Group,
        statement: "for coprime G1, G2 and solvable F: Norm and Norm∞ of G1 x G2 are the products of the factors' ones",
    },
    PropositionInfo {
        id: "Lem2.7",
        scope: Scope::Group,
        statement: "an S-critical group for F lying in Spi(π) * F lies in Npi(π) * F",
    },
    PropositionInfo {
        id: "Lem2.8",
        scope: Scope::Group,
        statement: "quotient, subgroup and absorption properties of Z_{πF} for saturated F with π ⊆ π(F)",
    },
    PropositionInfo {
        id: "Lem2.10",
        scope: Scope::Group,
        statement: "a normal p-subgroup E <= Z_F(G) has G/C_G(E) in F(p), F(p) the canonical local definition",
    },
    PropositionInfo {
        id: "Lem2.11",
        scope: Scope::Group,
        statement: "Npi(π) * F is locally defined by F on π and by itself on π', canonically by Gpi({p}) * F on π",
    },
    PropositionInfo {
        id: "Lem2.12",
        scope: Scope::Group,
        statement: "Z_{π(N*F)}(G) = 1 iff C_G(G^F) = 1 = O_{π'}(G); Z_{π(N*F)}(G) ∩ G^F = Z_{πN}(G^F); \
                    Z_{π(N*F)}(G)/Z0 = Z_{πF}(G/Z0) for saturated F",
    },
    PropositionInfo {
        id: "Lem3.1",
        scope: Scope::Group,
        statement: "Norm∞_{H,F}(G) lies in H . N * F, given Sn-closed F with π-solvable residual, or condition I",
    },
    PropositionInfo {
        id: "Lem3.3",
        scope: Scope::Group,
        statement: "Z_{π(N*F)}(G) <= N∞_{π'F}(G)",
    },
    PropositionInfo {
        id: "Lem3.5",
        scope: Scope::Group,
        statement: "N∞_{π'F}(G) <= Int_{Npi(π)*F}(G), given G in Spi(π) * F or condition I",
    },
    PropositionInfo {
        id: "Lem4.1",
        scope: Scope::Group,
        statement: "Psi_p(G^{Npi(p)}) <= Z_{Npi(p)}(G) implies G in Npi(p)",
    },
    PropositionInfo {
        id: "Lem4.2",
        scope: Scope::Group,
        statement: "Psi_p(G^F) <= Z_{πF}(G) for all p in π implies G in Gpi(π') * F (F saturated, S-closed, π ⊆ π(F))",
    },
    PropositionInfo {
        id: "Thm4.3",
        scope: Scope::Group,
        statement: "Psi_p(G^{Npi(π)*F}) <= N∞_{π'F}(G) for all p in π implies G in Npi(π) * F, \
                    given G in Spi(π) * F or one of the condition II variants",
    },
    PropositionInfo {
        id: "Cor4.4",
        scope: Scope::Group,
        statement: "F ⊆ U, all elements of odd prime order in N∞_F(G): G solvable, odd p-lengths <= 2 (1 if F ⊆ N), \
                    Fitting length <= 4 (3 if F ⊆ N)",
    },
    PropositionInfo {
        id: "Cor4.5",
        scope: Scope::Group,
        statement: "F ⊆ U, all elements of prime order or order 4 in N∞_F(G): G solvable, p-lengths <= 2 (1 if F ⊆ N), \
                    Fitting length <= 3 (2 if F ⊆ N)",
    },
    PropositionInfo {
        id: "Prop3.6",
        scope: Scope::Corpus,
        statement: "corpus evidence for condition I at P: F ⊆ Tsigma, Š-formations, F ⊆ Cpi({2}), F ⊆ Npi({2})",
    },
    PropositionInfo {
        id: "Prop3.7",
        scope: Scope::Corpus,
        statement: "corpus evidence for condition II at P: F ⊆ N, F ⊆ Gpi({2}')",
    },
    PropositionInfo {
        id: "Prop3.8",
        scope: Scope::Corpus,
        statement: "corpus evidence for condition III at P (F ⊆ N, π(F) = P) and III in S (Nr(r) * Ldec(p), Nr(r) * F)",
    },
];

pub fn registry() -> &'static [PropositionInfo] {
    REGISTRY
}

pub fn proposition(id: &str) -> Option<&'static PropositionInfo> {
    REGISTRY.iter().find(|p| p.id == id)
}

/// `"all"`, a comma-separated id list, or the empty string (no propositions).
/// Ids come back in registry order.
pub fn resolve_props(selection: &str) -> Result<Vec<&'static str>> {
    let sel = selection.trim();
    if sel.is_empty() {
        return Ok(Vec::new());
    }
    if sel.eq_ignore_ascii_case("all") {
        return Ok(REGISTRY.iter().map(|p| p.id).collect());
    }
    let mut wanted = Vec::new();
    for part in sel.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match proposition(part) {
            Some(p) => wanted.push(p.id),
            None => return Err(Error::Validation(format!("unknown proposition {part:?}"))),
        }
    }
    Ok(REGISTRY.iter().map(|p| p.id).filter(|id| wanted.contains(id)).collect())
}

// ---- classes used by the grids ----------------------------------------------

fn parse(text: &str) -> ClassExpr {
    ClassExpr::parse(text).expect("built-in class expressions parse")
}

fn nil() -> ClassExpr {
    ClassExpr::nilpotent()
}

/// `Npi(π)`, written `N` when π is every prime.
fn npi(pi: &PrimeSet) -> ClassExpr {
    if pi.is_all() {
        nil()
    } else {
        ClassExpr::pi_nilpotent(pi.clone())
    }
}

fn spi(pi: &PrimeSet) -> ClassExpr {
    if pi.is_all() {
        ClassExpr::solvable()
    } else {
        ClassExpr::pi_solvable(pi.clone())
    }
}

fn gpi(pi: &PrimeSet) -> ClassExpr {
    if pi.is_empty() {
        ClassExpr::trivial()
    } else {
        ClassExpr::pi_groups(pi.clone())
    }
}

fn f_grid() -> Vec<ClassExpr> {
    ["A", "N", "U", "Gpi({3})", "Npi({2})"].iter().map(|s| parse(s)).collect()
}

fn pi_grid() -> Vec<PrimeSet> {
    vec![
        PrimeSet::All,
        PrimeSet::single(2),
        PrimeSet::single(3),
        PrimeSet::explicit([2, 3]),
    ]
}

fn saturated_grid() -> Vec<ClassExpr> {
    ["N", "U", "Gpi({3})", "Npi({2})"].iter().map(|s| parse(s)).collect()
}

fn small_h_grid() -> Vec<ClassExpr> {
    ["1", "Gpi({2})", "N"].iter().map(|s| parse(s)).collect()
}

fn small_f_grid() -> Vec<ClassExpr> {
    ["A", "N", "U"].iter().map(|s| parse(s)).collect()
}

const LEM26_PARTNERS: &[&str] = &["C2", "C3", "C5", "C7", "S3"];
const LEM26_MAX_ORDER: usize = 240;

// ---- boundary-condition ledger ---------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    I,
    II,
    III,
    IIIinS,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::I => "I",
            Condition::II => "II",
            Condition::III => "III",
            Condition::IIIinS => "III in S",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LedgerStatus {
    Established {
        citation: String,
    },
    CorpusEvidence {
        critical_groups: usize,
        examined: usize,
        skipped: usize,
    },
    Counterexample {
        group: String,
        prime: Option<u64>,
    },
}

fn sylow_tower_atoms(c: &ClassExpr, out: &mut Vec<ClassExpr>) {
    match c {
        ClassExpr::Atom(a @ Atom::SylowTower(_)) => out.push(ClassExpr::Atom(a.clone())),
        ClassExpr::Atom(_) => {}
        ClassExpr::FormationProduct(x, y) | ClassExpr::FittingProduct(x, y) => {
            sylow_tower_atoms(x, out);
            sylow_tower_atoms(y, out);
        }
    }
}

/// Nr(r) * Y, returning Y.
fn fitting_length_product(f: &ClassExpr) -> Option<&ClassExpr> {
    match f {
        ClassExpr::FormationProduct(x, y) if matches!(**x, ClassExpr::Atom(Atom::FittingLength(_))) => Some(y),
        _ => None,
    }
}

/// The static part of the ledger: cases known to satisfy a boundary condition
/// for every set of primes. Each entry cites the proposition it comes from.
///
/// A condition holding for all primes holds for every π, III implies II
/// implies I, and III implies III in S.
pub fn established(f: &ClassExpr, cond: Condition) -> Option<String> {
    if !f.flags().formation {
        return None;
    }
    let n = nil();
    let in_n_full = |c: &ClassExpr| is_subclass(c, &n) && c.characteristic().is_all();
    match cond {
        Condition::III => in_n_full(f).then(|| "Prop3.8(1): F ⊆ N with π(F) = P".to_string()),
        Condition::IIIinS => {
            if let Some(c) = established(f, Condition::III) {
                return Some(c);
            }
            let y = fitting_length_product(f)?;
            if matches!(y, ClassExpr::Atom(Atom::PDecomposable(_))) {
                Some("Prop3.8(2): F = Nr(r) * Ldec(p)".to_string())
            } else if in_n_full(y) {
                Some("Prop3.8(3): F = Nr(r) * F0 with F0 ⊆ N and π(F0) = P".to_string())
            } else {
                None
            }
        }
        Condition::II => {
            if let Some(c) = established(f, Condition::III) {
                return Some(c);
            }
            if is_subclass(f, &n) {
                Some("Prop3.7(1): F ⊆ N".to_string())
            } else if is_subclass(f, &ClassExpr::pi_groups(PrimeSet::complement_of([2]))) {
                Some("Prop3.7(2): F ⊆ Gpi({2}')".to_string())
            } else {
                None
            }
        }
        Condition::I => {
            if let Some(c) = established(f, Condition::II) {
                return Some(c);
            }
            let mut towers = vec![ClassExpr::Atom(Atom::SylowTower(Vec::new()))];
            sylow_tower_atoms(f, &mut towers);
            if let Some(t) = towers.iter().find(|t| is_subclass(f, t)) {
                return Some(format!("Prop3.6(1): F ⊆ {t}"));
            }
            if f.flags().s_check {
                return Some("Prop3.6(2): F is an Š-formation".to_string());
            }
            if is_subclass(f, &ClassExpr::Atom(Atom::PiClosed(PrimeSet::single(2)))) {
                return Some("Prop3.6(3): F ⊆ Cpi({2})".to_string());
            }
            if is_subclass(f, &ClassExpr::pi_nilpotent(PrimeSet::single(2))) {
                return Some("Prop3.6(4): F ⊆ Npi({2})".to_string());
            }
            None
        }
    }
}

fn corpus_primes(corpus: &[NamedGroup], pi: &PrimeSet) -> Vec<u64> {
    let mut ps: Vec<u64> = corpus
        .iter()
        .flat_map(|g| primes::prime_divisors(g.group.order() as u64))
        .filter(|&p| pi.contains(p))
        .collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// Tests a boundary condition on every corpus member: each S-critical group
/// for `F` (condition I) or for `Gpi({p}) * F`, `p` in π (the others), must
/// lie in `Npi(π) * F` (`Spi(π) * F` for II). Groups beyond the budget are
/// counted as skipped. Never returns [`LedgerStatus::Established`].
pub fn check_boundary_evidence(corpus: &[NamedGroup], f: &ClassExpr, pi: &PrimeSet, cond: Condition) -> LedgerStatus {
    let target = match cond {
        Condition::II => spi(pi).after(f.clone()),
        _ => npi(pi).after(f.clone()),
    };
    let tests: Vec<(Option<u64>, ClassExpr)> = match cond {
        Condition::I => vec![(None, f.clone())],
        _ => corpus_primes(corpus, pi)
            .into_iter()
            .map(|p| (Some(p), ClassExpr::pi_groups(PrimeSet::single(p)).after(f.clone())))
            .collect(),
    };
    let (mut critical, mut examined, mut skipped) = (0, 0, 0);
    for named in corpus {
        let g = &named.group;
        if cond == Condition::IIIinS && !g.is_solvable() {
            continue;
        }
        examined += 1;
        let mut is_critical = false;
        let outcome: Result<Option<Option<u64>>> = (|| {
            for (p, cls) in &tests {
                if crit_s(g, cls)? {
                    is_critical = true;
                    if !is_member(g, &target)? {
                        return Ok(Some(*p));
                    }
                }
            }
            Ok(None)
        })();
        match outcome {
            Ok(Some(prime)) => {
                return LedgerStatus::Counterexample {
                    group: named.name.clone(),
                    prime,
                }
            }
            Ok(None) => critical += is_critical as usize,
            Err(e) => {
                if !e.is_budget() {
                    log::warn!("boundary evidence on {}: {e}", named.name);
                }
                skipped += 1;
            }
        }
    }
    LedgerStatus::CorpusEvidence {
        critical_groups: critical,
        examined,
        skipped,
    }
}

// ---- parameters -------------------------------------------------------------

/// Parameter values given on the command line; each replaces the default
/// grid of its dimension.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub h: Option<ClassExpr>,
    pub f: Option<ClassExpr>,
    pub pi: Option<PrimeSet>,
    pub p: Option<u64>,
}

impl Overrides {
    fn any(&self) -> bool {
        self.h.is_some() || self.f.is_some() || self.pi.is_some() || self.p.is_some()
    }
}

/// One parameter assignment of a proposition.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Instance {
    pub h: Option<ClassExpr>,
    pub f: Option<ClassExpr>,
    pub pi: Option<PrimeSet>,
    pub p: Option<u64>,
    pub partner: Option<String>,
}

impl Instance {
    pub fn params(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        if let Some(h) = &self.h {
            m.insert("H".into(), h.to_string());
        }
        if let Some(f) = &self.f {
            m.insert("F".into(), f.to_string());
        }
        if let Some(pi) = &self.pi {
            m.insert("pi".into(), pi.to_string());
        }
        if let Some(p) = self.p {
            m.insert("p".into(), p.to_string());
        }
        if let Some(q) = &self.partner {
            m.insert("partner".into(), q.clone());
        }
        m
    }

    fn h(&self) -> &ClassExpr {
        self.h.as_ref().expect("instance has H")
    }

    fn f(&self) -> &ClassExpr {
        self.f.as_ref().expect("instance has F")
    }

    fn pi(&self) -> &PrimeSet {
        self.pi.as_ref().expect("instance has π")
    }
}

fn grid<T: Clone>(over: &Option<T>, default: Vec<T>) -> Vec<T> {
    match over {
        Some(v) => vec![v.clone()],
        None => default,
    }
}

fn skip_reason_formation(f: &ClassExpr, s_closed: bool) -> Option<String> {
    let fl = f.flags();
    if !fl.formation {
        return Some("hypothesis: F is a formation".into());
    }
    if s_closed && !fl.s_closed {
        return Some("hypothesis: F = SF".into());
    }
    None
}

fn thm_a_h_precheck(h: &ClassExpr, pi: &PrimeSet) -> Option<String> {
    let fl = h.flags();
    if !(fl.fitting && fl.formation && fl.saturated && fl.e_closed) {
        return Some("hypothesis: H is a saturated Fitting formation with H = EH".into());
    }
    if !is_subclass(&gpi(&pi.complement()), h) {
        return Some("hypothesis: Gpi(π') ⊆ H".into());
    }
    None
}

fn saturated_pi_precheck(f: &ClassExpr, pi: &PrimeSet) -> Option<String> {
    if let Some(r) = skip_reason_formation(f, false) {
        return Some(r);
    }
    if !f.flags().saturated {
        return Some("hypothesis: F is saturated".into());
    }
    if !pi.is_subset(&f.characteristic()) {
        return Some("hypothesis: π ⊆ π(F)".into());
    }
    None
}

/// Static hypotheses that depend only on the parameters.
fn precheck(id: &str, inst: &Instance) -> Option<String> {
    match id {
        "ThmA" | "Lem3.1" => thm_a_h_precheck(inst.h(), inst.pi()).or_else(|| skip_reason_formation(inst.f(), id == "ThmA")),
        "ThmB1" | "ThmC" | "ThmD" | "ThmE" | "Cor3.2" | "Cor3.4" | "Lem3.3" | "Lem3.5" | "Thm4.3" => {
            skip_reason_formation(inst.f(), true)
        }
        "Lem2.1" | "Lem2.7" | "Lem2.11" | "Lem2.12" => skip_reason_formation(inst.f(), false),
        "Lem2.2" => (!inst.h().flags().fitting).then(|| "hypothesis: H is a Fitting class".into()),
        "Lem2.3" | "Lem2.5" | "Lem2.6" => {
            if !inst.h().flags().fitting {
                return Some("hypothesis: H is a Fitting class".into());
            }
            if let Some(r) = skip_reason_formation(inst.f(), false) {
                return Some(r);
            }
            if id == "Lem2.6" && !is_subclass(inst.f(), &ClassExpr::solvable()) {
                return Some("hypothesis: F ⊆ S".into());
            }
            None
        }
        "Lem2.8" => saturated_pi_precheck(inst.f(), inst.pi()),
        "Lem4.2" => saturated_pi_precheck(inst.f(), inst.pi()).or_else(|| {
            (!inst.f().flags().s_closed).then(|| "hypothesis: F = SF".into())
        }),
        "Lem2.10" => {
            let f = inst.f();
            if !(f.flags().formation && f.flags().saturated) {
                Some("hypothesis: F is a saturated formation".into())
            } else if f.local_definition(2).is_none() {
                Some("hypothesis: F has a registered canonical local definition".into())
            } else {
                None
            }
        }
        "Cor4.4" | "Cor4.5" => skip_reason_formation(inst.f(), true).or_else(|| {
            (!is_subclass(inst.f(), &ClassExpr::supersolvable())).then(|| "hypothesis: F ⊆ U".into())
        }),
        _ => None,
    }
}

// ---- harness ----------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum Target {
    Group(usize),
    Corpus,
}

#[derive(Debug, Clone)]
pub struct Task {
    pub proposition: &'static str,
    pub target: Target,
    pub instance: Instance,
}

pub struct Harness {
    corpus: Vec<NamedGroup>,
    overrides: Overrides,
    evidence: Mutex<HashMap<(ClassExpr, PrimeSet, Condition), LedgerStatus>>,
    partners: Mutex<HashMap<String, Arc<Group>>>,
    products: Mutex<HashMap<(usize, String), Arc<Group>>>,
}

type Checked = Result<Outcome>;

fn skip(reason: impl Into<String>) -> Checked {
    Ok(Outcome::skip(reason))
}

fn pass_with(basis: Basis) -> Checked {
    Ok(Outcome::Pass { basis })
}

fn verdict(basis: Basis, witness: Vec<Witness>) -> Checked {
    if witness.is_empty() {
        pass_with(basis)
    } else {
        Ok(Outcome::fail(witness))
    }
}

fn w_sub(label: impl Into<String>, s: &Subgroup) -> Witness {
    Witness::subgroup(label, s)
}

fn w_bool(label: impl Into<String>, b: bool) -> Witness {
    Witness::new(label, b)
}

/// Records `label = a` and `label' = b` when the subgroups differ.
fn expect_eq(w: &mut Vec<Witness>, la: &str, a: &Subgroup, lb: &str, b: &Subgroup) {
    if a != b {
        w.push(w_sub(la, a));
        w.push(w_sub(lb, b));
    }
}

fn expect_le(w: &mut Vec<Witness>, la: &str, a: &Subgroup, lb: &str, b: &Subgroup) {
    if !a.is_subgroup_of(b) {
        w.push(w_sub(la, a));
        w.push(w_sub(lb, b));
    }
}

fn proper_normals(g: &Group) -> impl Iterator<Item = &Subgroup> {
    g.normal_subgroups().iter().filter(|n| !n.is_whole())
}

fn class_reps(g: &Group) -> Result<Vec<Subgroup>> {
    Ok(g.lattice()?.class_representatives().into_iter().cloned().collect())
}

impl Harness {
    pub fn new(corpus: Vec<NamedGroup>, overrides: Overrides) -> Self {
        Harness {
            corpus,
            overrides,
            evidence: Mutex::new(HashMap::new()),
            partners: Mutex::new(HashMap::new()),
            products: Mutex::new(HashMap::new()),
        }
    }

    pub fn corpus(&self) -> &[NamedGroup] {
        &self.corpus
    }

    /// Ledger lookup: the static table first, then (cached) corpus evidence.
    pub fn boundary(&self, f: &ClassExpr, pi: &PrimeSet, cond: Condition) -> LedgerStatus {
        if let Some(citation) = established(f, cond) {
            return LedgerStatus::Established { citation };
        }
        let key = (f.clone(), pi.clone(), cond);
        if let Some(s) = self.evidence.lock().unwrap().get(&key) {
            return s.clone();
        }
        let status = check_boundary_evidence(&self.corpus, f, pi, cond);
        self.evidence.lock().unwrap().entry(key).or_insert(status).clone()
    }

    fn ledger_basis(&self, f: &ClassExpr, pi: &PrimeSet, cond: Condition) -> std::result::Result<Basis, String> {
        match self.boundary(f, pi, cond) {
            LedgerStatus::Established { citation } => Ok(Basis::LedgerEstablished { citation }),
            LedgerStatus::CorpusEvidence { critical_groups, .. } => Ok(Basis::LedgerEvidence { critical_groups }),
            LedgerStatus::Counterexample { group, prime } => Err(match prime {
                Some(p) => format!("condition {cond} for {f} at π = {pi} fails on {group} (p = {p})"),
                None => format!("condition {cond} for {f} at π = {pi} fails on {group}"),
            }),
        }
    }

    /// The parameter assignments of `id` for one group (or the corpus).
    pub fn instances(&self, id: &str, g: Option<&NamedGroup>) -> Vec<Instance> {
        let ov = &self.overrides;
        let with = |h: Option<ClassExpr>, f: Option<ClassExpr>, pi: Option<PrimeSet>| Instance {
            h,
            f,
            pi,
            ..Instance::default()
        };
        let f_pi = |fs: Vec<ClassExpr>, pis: Vec<PrimeSet>| -> Vec<Instance> {
            let mut out = Vec::new();
            for f in grid(&ov.f, fs) {
                for pi in grid(&ov.pi, pis.clone()) {
                    out.push(with(None, Some(f.clone()), Some(pi)));
                }
            }
            out
        };
        let h_f = |hs: Vec<ClassExpr>, fs: Vec<ClassExpr>| -> Vec<Instance> {
            let mut out = Vec::new();
            for h in grid(&ov.h, hs) {
                for f in grid(&ov.f, fs.clone()) {
                    out.push(with(Some(h.clone()), Some(f), None));
                }
            }
            out
        };
        let group_primes = || -> Vec<u64> {
            match (ov.p, g) {
                (Some(p), _) => vec![p],
                (None, Some(g)) => primes::prime_divisors(g.group.order() as u64),
                (None, None) => Vec::new(),
            }
        };
        let mut out: Vec<Instance> = match id {
            "Rem1.4" | "Rem1.5" => vec![Instance::default()],
            "ThmA" | "Lem3.1" => {
                let mut out = Vec::new();
                for pi in grid(&ov.pi, pi_grid()) {
                    let pic = pi.complement();
                    let mut hs = vec![ClassExpr::trivial(), ClassExpr::solvable()];
                    if !pic.is_empty() {
                        hs.push(ClassExpr::pi_groups(pic));
                    }
                    for h in grid(&ov.h, hs) {
                        for f in grid(&ov.f, f_grid()) {
                            out.push(with(Some(h.clone()), Some(f), Some(pi.clone())));
                        }
                    }
                }
                out
            }
            "ThmB1" | "ThmD" | "Cor3.2" | "Cor3.4" | "Lem2.7" | "Lem2.11" | "Lem2.12" | "Lem3.3" | "Lem3.5"
            | "Thm4.3" => f_pi(f_grid(), pi_grid()),
            "ThmC" | "ThmE" => f_pi(
                ["A", "N", "Nc(2)", "Nr(1) * Ldec(2)", "Nr(2) * Ldec(3)", "Nr(1) * N"]
                    .iter()
                    .map(|s| parse(s))
                    .collect(),
                pi_grid(),
            ),
            "Lem2.1" => grid(&ov.f, f_grid()).into_iter().map(|f| with(None, Some(f), None)).collect(),
            "Lem2.2" => grid(
                &ov.h,
                ["1", "N", "S", "Gpi({2})", "Gpi({2,3}')", "Npi({2})", "Nr(2)"]
                    .iter()
                    .map(|s| parse(s))
                    .collect(),
            )
            .into_iter()
            .map(|h| with(Some(h), None, None))
            .collect(),
            "Lem2.3" | "Lem2.5" => h_f(small_h_grid(), small_f_grid()),
            "Lem2.6" => {
                let mut out = Vec::new();
                if let Some(g) = g {
                    let n = g.group.order();
                    for &q in LEM26_PARTNERS {
                        let m = corpus::builtin(q).expect("partner groups are built in").group.order();
                        if gcd(n, m) != 1 || n * m > LEM26_MAX_ORDER {
                            continue;
                        }
                        for mut inst in h_f(small_h_grid(), small_f_grid()) {
                            inst.partner = Some(q.to_string());
                            out.push(inst);
                        }
                    }
                }
                out
            }
            "Lem2.8" | "Lem4.2" => f_pi(saturated_grid(), pi_grid()),
            "Lem2.10" => {
                let fs: Vec<ClassExpr> = ["N", "U", "Gpi({3})", "Npi({2})", "N * A", "Npi({3}) * U"]
                    .iter()
                    .map(|s| parse(s))
                    .collect();
                grid(&ov.f, fs)
                    .into_iter()
                    .map(|f| Instance {
                        f: Some(f),
                        p: ov.p,
                        ..Instance::default()
                    })
                    .collect()
            }
            "Lem4.1" => group_primes()
                .into_iter()
                .map(|p| Instance {
                    p: Some(p),
                    ..Instance::default()
                })
                .collect(),
            "Cor4.4" | "Cor4.5" => grid(
                &ov.f,
                ["1", "A", "N", "U", "Nc(2)", "Gpi({3})"].iter().map(|s| parse(s)).collect(),
            )
            .into_iter()
            .map(|f| with(None, Some(f), None))
            .collect(),
            "Prop3.6" => grid(
                &ov.f,
                ["Tsigma(2<3)", "Gpi({3})", "Cpi({2})", "Npi({2})", "U"]
                    .iter()
                    .map(|s| parse(s))
                    .collect(),
            )
            .into_iter()
            .map(|f| with(None, Some(f), None))
            .collect(),
            "Prop3.7" => grid(&ov.f, ["N", "A", "Gpi({2}')", "Gpi({3})"].iter().map(|s| parse(s)).collect())
                .into_iter()
                .map(|f| with(None, Some(f), None))
                .collect(),
            "Prop3.8" => grid(
                &ov.f,
                ["N", "A", "Nc(2)", "Nr(1) * Ldec(2)", "Nr(2) * Ldec(3)", "Nr(1) * N"]
                    .iter()
                    .map(|s| parse(s))
                    .collect(),
            )
            .into_iter()
            .map(|f| with(None, Some(f), None))
            .collect(),
            _ => Vec::new(),
        };
        // default grids drop assignments whose static hypotheses fail; explicit
        // parameters are kept so the skip reason is reported
        if !ov.any() {
            out.retain(|inst| precheck(id, inst).is_none());
        }
        out
    }

    /// Tasks in deterministic order: proposition, then group, then parameters.
    pub fn tasks(&self, props: &[&str]) -> Result<Vec<Task>> {
        let mut tasks = Vec::new();
        for &id in props {
            let info = proposition(id).ok_or_else(|| Error::Validation(format!("unknown proposition {id:?}")))?;
            match info.scope {
                Scope::Corpus => {
                    for instance in self.instances(id, None) {
                        tasks.push(Task {
                            proposition: info.id,
                            target: Target::Corpus,
                            instance,
                        });
                    }
                }
                Scope::Group => {
                    for (i, g) in self.corpus.iter().enumerate() {
                        for instance in self.instances(id, Some(g)) {
                            tasks.push(Task {
                                proposition: info.id,
                                target: Target::Group(i),
                                instance,
                            });
                        }
                    }
                }
            }
        }
        Ok(tasks)
    }

    /// Runs the propositions over the corpus with `jobs` task workers.
    /// Reports come back in task order regardless of scheduling.
    pub fn run(&self, props: &[&str], jobs: usize) -> Result<Vec<PropositionReport>> {
        let tasks = self.tasks(props)?;
        if tasks.iter().any(|t| matches!(t.target, Target::Group(_))) {
            self.corpus.par_iter().for_each(|g| {
                let _ = g.group.lattice();
            });
        }
        let slots: Vec<Mutex<Option<PropositionReport>>> = tasks.iter().map(|_| Mutex::new(None)).collect();
        let next = AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..jobs.max(1) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= tasks.len() {
                        break;
                    }
                    let r = self.run_task(&tasks[i]);
                    *slots[i].lock().unwrap() = Some(r);
                });
            }
        });
        Ok(slots
            .into_iter()
            .map(|s| s.into_inner().unwrap().expect("every task ran"))
            .collect())
    }

    pub fn run_task(&self, t: &Task) -> PropositionReport {
        let start = Instant::now();
        let (name, group) = match t.target {
            Target::Group(i) => (self.corpus[i].name.clone(), Some(self.corpus[i].group.clone())),
            Target::Corpus => match t.proposition {
                "Rem1.4" => ("A5".to_string(), Some(self.named_or_builtin("A5"))),
                "Rem1.5" => ("S3".to_string(), Some(self.named_or_builtin("S3"))),
                _ => ("corpus".to_string(), None),
            },
        };
        let outcome = match precheck(t.proposition, &t.instance) {
            Some(reason) => Outcome::skip(reason),
            None => {
                let r = match &group {
                    Some(g) => self.check(t.proposition, g, &t.instance),
                    None => self.check_corpus(t.proposition, &t.instance),
                };
                match r {
                    Ok(o) => o,
                    Err(e) if e.is_budget() => Outcome::skip(format!("budget: {e}")),
                    Err(e) => Outcome::fail(vec![Witness::new("error", e)]),
                }
            }
        };
        let mut report = PropositionReport::new(t.proposition, &name, group.as_deref(), t.instance.params(), outcome);
        report.elapsed = start.elapsed();
        report
    }

    fn named_or_builtin(&self, name: &str) -> Arc<Group> {
        if let Some(g) = self.corpus.iter().find(|g| g.name == name) {
            return g.group.clone();
        }
        let mut cache = self.partners.lock().unwrap();
        cache
            .entry(name.to_string())
            .or_insert_with(|| corpus::builtin(name).expect("catalog group").group)
            .clone()
    }

    fn check(&self, id: &str, g: &Group, inst: &Instance) -> Checked {
        match id {
            "Rem1.4" => remark(
                g,
                &parse("Gpi({3}) * Npi({3})"),
                &parse("S * Npi({3})"),
            ),
            "Rem1.5" => remark(g, &parse("Gpi({2}) * Gpi({3})"), &parse("N * Gpi({3})")),
            "ThmA" => self.thm_a(g, inst),
            "Cor3.2" => self.cor_3_2(g, inst),
            "Cor3.4" => self.cor_3_4(g, inst),
            "ThmB1" => self.thm_b1(g, inst),
            "ThmC" => self.thm_c_e(g, inst, Condition::III),
            "ThmE" => self.thm_c_e(g, inst, Condition::IIIinS),
            "ThmD" => thm_d(g, inst),
            "Lem2.1" => lem_2_1(g, inst.f()),
            "Lem2.2" => lem_2_2(g, inst.h()),
            "Lem2.3" => lem_2_3(g, inst.h(), inst.f()),
            "Lem2.5" => lem_2_5(g, inst.h(), inst.f()),
            "Lem2.6" => self.lem_2_6(g, inst),
            "Lem2.7" => lem_2_7(g, inst.f(), inst.pi()),
            "Lem2.8" => lem_2_8(g, inst.f(), inst.pi()),
            "Lem2.10" => lem_2_10(g, inst.f(), inst.p),
            "Lem2.11" => lem_2_11(g, inst.f(), inst.pi()),
            "Lem2.12" => lem_2_12(g, inst.f(), inst.pi()),
            "Lem3.1" => self.lem_3_1(g, inst),
            "Lem3.3" => lem_3_3(g, inst.f(), inst.pi()),
            "Lem3.5" => self.lem_3_5(g, inst),
            "Lem4.1" => lem_4_1(g, inst.p.expect("instance has p")),
            "Lem4.2" => lem_4_2(g, inst.f(), inst.pi()),
            "Thm4.3" => self.thm_4_3(g, inst),
            "Cor4.4" => cor_4_x(g, inst.f(), false),
            "Cor4.5" => cor_4_x(g, inst.f(), true),
            _ => Err(Error::Validation(format!("{id} is not a per-group proposition"))),
        }
    }

    fn check_corpus(&self, id: &str, inst: &Instance) -> Checked {
        let f = inst.f();
        let cond = match id {
            "Prop3.6" => Condition::I,
            "Prop3.7" => Condition::II,
            "Prop3.8" => {
                if established(f, Condition::III).is_some() {
                    Condition::III
                } else {
                    Condition::IIIinS
                }
            }
            _ => return Err(Error::Validation(format!("{id} is not a corpus proposition"))),
        };
        match established(f, cond) {
            Some(c) if c.starts_with(id) || id == "Prop3.6" || id == "Prop3.7" => {}
            _ => return skip(format!("hypothesis: F is covered by {id}")),
        }
        let mut witness = Vec::new();
        let critical = match check_boundary_evidence(&self.corpus, f, &PrimeSet::All, cond) {
            LedgerStatus::Counterexample { group, prime } => {
                witness.push(Witness::new("condition", cond));
                witness.push(Witness::new("group", &group));
                if let Some(p) = prime {
                    witness.push(Witness::new("p", p));
                }
                0
            }
            LedgerStatus::CorpusEvidence { critical_groups, .. } => critical_groups,
            LedgerStatus::Established { .. } => unreachable!("evidence never establishes"),
        };
        if id == "Prop3.6" && f.flags().s_check {
            // Š property: S-critical groups are minimal non-nilpotent or of prime order
            for named in &self.corpus {
                let g = &named.group;
                let critical = match crit_s(g, f) {
                    Ok(b) => b,
                    Err(e) if e.is_budget() => continue,
                    Err(e) => return Err(e),
                };
                if critical && !(primes::is_prime(g.order() as u64) || crit_s(g, &nil())?) {
                    witness.push(Witness::new("Š property fails on", &named.name));
                }
            }
        }
        verdict(Basis::LedgerEvidence { critical_groups: critical }, witness)
    }

    // ---- main results ----

    /// (i) for ThmA-style statements: the residual lies in `class`; else the ledger.
    fn support(&self, instance_holds: bool, f: &ClassExpr, pi: &PrimeSet, cond: Condition) -> std::result::Result<Basis, String> {
        if instance_holds {
            return Ok(Basis::Instance);
        }
        self.ledger_basis(f, pi, cond)
    }

    fn thm_a(&self, g: &Group, inst: &Instance) -> Checked {
        let (h, f, pi) = (inst.h(), inst.f(), inst.pi());
        let x = h.clone().fitting_then(nil().after(f.clone()));
        let r = residual(g, &x)?;
        let solvable_residual = is_member(&g.subgroup_group(&r).group, &spi(pi))?;
        let basis = match self.support(solvable_residual, f, pi, Condition::I) {
            Ok(b) => b,
            Err(reason) => return skip(format!("hypothesis: residual(G, X) not π-solvable and {reason}")),
        };
        five_statements(g, h, f, &x, basis)
    }

    fn cor_3_2(&self, g: &Group, inst: &Instance) -> Checked {
        let (f, pi) = (inst.f(), inst.pi());
        let x = npi(pi).after(f.clone());
        let in_class = is_member(g, &spi(pi).after(f.clone()))?;
        let basis = match self.support(in_class, f, pi, Condition::I) {
            Ok(b) => b,
            Err(reason) => return skip(format!("hypothesis: G ∉ Spi(π) * F and {reason}")),
        };
        five_statements(g, &gpi(&pi.complement()), f, &x, basis)
    }

    fn cor_3_4(&self, g: &Group, inst: &Instance) -> Checked {
        let (f, pi) = (inst.f(), inst.pi());
        let in_class = is_member(g, &spi(pi).after(f.clone()))?;
        let basis = match self.support(in_class, f, pi, Condition::II) {
            Ok(b) => b,
            Err(reason) => return skip(format!("hypothesis: G ∉ Spi(π) * F and {reason}")),
        };
        let h = gpi(&pi.complement());
        let gf = residual(g, f)?;
        let emb = g.subgroup_group(&gf);
        let z0 = emb.lift(&hypercentre(&emb.group, pi, &nil())?);
        let q = g.quotient(&z0)?;
        let ninf = norm_infinity(g, &h, f)?;
        let via_norm = q.preimage(&hf_norm(&q.group, &h, f)?);
        let z = hypercentre(g, pi, &nil().after(f.clone()))?;
        let mut w = Vec::new();
        expect_eq(&mut w, "N∞_{π'F}(G)", &ninf, "preimage of N_{π'F}(G/Z0)", &via_norm);
        expect_eq(&mut w, "N∞_{π'F}(G)", &ninf, "Z_{π(N*F)}(G)", &z);
        if f.flags().saturated {
            let via_z = q.preimage(&hypercentre(&q.group, pi, f)?);
            expect_eq(&mut w, "N∞_{π'F}(G)", &ninf, "preimage of Z_{πF}(G/Z0)", &via_z);
        }
        if !w.is_empty() {
            w.insert(0, w_sub("Z0 = Z_{πN}(G^F)", &z0));
        }
        verdict(basis, w)
    }

    fn thm_b1(&self, g: &Group, inst: &Instance) -> Checked {
        let (f, pi) = (inst.f(), inst.pi());
        let basis = match self.ledger_basis(f, pi, Condition::II) {
            Ok(b) => b,
            Err(reason) => return skip(format!("hypothesis: {reason}")),
        };
        let ninf = norm_infinity(g, &gpi(&pi.complement()), f)?;
        let z = hypercentre(g, pi, &nil().after(f.clone()))?;
        let mut w = Vec::new();
        expect_eq(&mut w, "N∞_{π'F}(G)", &ninf, "Z_{π(N*F)}(G)", &z);
        verdict(basis, w)
    }

    fn thm_c_e(&self, g: &Group, inst: &Instance, cond: Condition) -> Checked {
        let (f, pi) = (inst.f(), inst.pi());
        if cond == Condition::IIIinS && !g.is_solvable() {
            return skip("hypothesis: G solvable");
        }
        let basis = match self.ledger_basis(f, pi, cond) {
            Ok(b) => b,
            Err(reason) => return skip(format!("hypothesis: {reason}")),
        };
        let ninf = norm_infinity(g, &gpi(&pi.complement()), f)?;
        let int = int_x(g, &npi(pi).after(f.clone()))?;
        let z = hypercentre(g, pi, &nil().after(f.clone()))?;
        let mut w = Vec::new();
        expect_eq(&mut w, "N∞_{π'F}(G)", &ninf, "Int_{Npi(π)*F}(G)", &int);
        expect_eq(&mut w, "Z_{π(N*F)}(G)", &z, "Int_{Npi(π)*F}(G)", &int);
        verdict(basis, w)
    }

    fn lem_2_6(&self, g: &Group, inst: &Instance) -> Checked {
        let (h, f) = (inst.h(), inst.f());
        let partner_name = inst.partner.as_deref().expect("instance has a partner");
        let partner = self.named_or_builtin(partner_name);
        if gcd(g.order(), partner.order()) != 1 {
            return skip("hypothesis: coprime orders");
        }
        let key = (g.id().0 as usize, partner_name.to_string());
        let product = {
            let cached = self.products.lock().unwrap().get(&key).cloned();
            match cached {
                Some(p) => p,
                None => {
                    let p = Arc::new(Group::direct_product(g, &partner)?);
                    self.products.lock().unwrap().entry(key).or_insert(p).clone()
                }
            }
        };
        let m = partner.order();
        let pair = |a: &Subgroup, b: &Subgroup| -> Subgroup {
            let elems: Vec<usize> = a
                .elements()
                .into_iter()
                .flat_map(|x| b.elements().into_iter().map(move |y| x * m + y))
                .collect();
            product
                .subgroup_from_elements(&elems)
                .expect("a product of subgroups is a subgroup")
        };
        let mut w = Vec::new();
        let lhs = hf_norm(&product, h, f)?;
        let rhs = pair(&hf_norm(g, h, f)?, &hf_norm(&partner, h, f)?);
        expect_eq(&mut w, "Norm(G1 x G2)", &lhs, "Norm(G1) x Norm(G2)", &rhs);
        let lhs = norm_infinity(&product, h, f)?;
        let rhs = pair(&norm_infinity(g, h, f)?, &norm_infinity(&partner, h, f)?);
        expect_eq(&mut w, "Norm∞(G1 x G2)", &lhs, "Norm∞(G1) x Norm∞(G2)", &rhs);
        verdict(Basis::Instance, w)
    }

    fn lem_3_1(&self, g: &Group, inst: &Instance) -> Checked {
        let (h, f, pi) = (inst.h(), inst.f(), inst.pi());
        let x = h.clone().fitting_then(nil().after(f.clone()));
        let case_i = f.flags().sn_closed && {
            let r = residual(g, &x)?;
            is_member(&g.subgroup_group(&r).group, &spi(pi))?
        };
        let basis = match self.support(case_i, f, pi, Condition::I) {
            Ok(b) => b,
            Err(reason) => return skip(format!("hypothesis: (i) fails and {reason}")),
        };
        let ninf = norm_infinity(g, h, f)?;
        let inside = is_member(&g.subgroup_group(&ninf).group, &x)?;
        let w = if inside {
            Vec::new()
        } else {
            vec![w_sub("Norm∞_{H,F}(G)", &ninf), Witness::new("not in", &x)]
        };
        verdict(basis, w)
    }

    fn lem_3_5(&self, g: &Group, inst: &Instance) -> Checked {
        let (f, pi) = (inst.f(), inst.pi());
        let in_class = is_member(g, &spi(pi).after(f.clone()))?;
        let basis = match self.support(in_class, f, pi, Condition::I) {
            Ok(b) => b,
            Err(reason) => return skip(format!("hypothesis: G ∉ Spi(π) * F and {reason}")),
        };
        let ninf = norm_infinity(g, &gpi(&pi.complement()), f)?;
        let int = int_x(g, &npi(pi).after(f.clone()))?;
        let mut w = Vec::new();
        expect_le(&mut w, "N∞_{π'F}(G)", &ninf, "Int_{Npi(π)*F}(G)", &int);
        verdict(basis, w)
    }

    fn thm_4_3(&self, g: &Group, inst: &Instance) -> Checked {
        let (f, pi) = (inst.f(), inst.pi());
        let b = npi(pi).after(f.clone());
        let r = residual(g, &b)?;
        let emb = g.subgroup_group(&r);
        let ninf = norm_infinity(g, &gpi(&pi.complement()), f)?;
        for p in primes::prime_divisors(r.order() as u64) {
            if !pi.contains(p) {
                continue;
            }
            let psi = emb.lift(&psi_p(&emb.group, p)?);
            if !psi.is_subgroup_of(&ninf) {
                return skip(format!("hypothesis: Psi_{p}(G^(Npi(π)*F)) not in N∞_{{π'F}}(G)"));
            }
        }
        let basis = if is_member(g, &spi(pi).after(f.clone()))? {
            Basis::Instance
        } else {
            let mut reasons = Vec::new();
            let mut found = None;
            let mut candidates: Vec<PrimeSet> = vec![pi.clone()];
            if pi.contains(2) {
                candidates.push(PrimeSet::single(2));
            }
            if let Some(q) = odd_q_for_variant_iv(pi) {
                candidates.push(PrimeSet::complement_of([2, q]));
            }
            for sigma in candidates {
                match self.ledger_basis(f, &sigma, Condition::II) {
                    Ok(b) => {
                        found = Some(b);
                        break;
                    }
                    Err(reason) => reasons.push(reason),
                }
            }
            match found {
                Some(b) => b,
                None => return skip(format!("hypothesis: G ∉ Spi(π) * F and {}", reasons.join("; "))),
            }
        };
        let w = if is_member(g, &b)? {
            Vec::new()
        } else {
            vec![Witness::new("G not in", &b), w_sub("G^(Npi(π)*F)", &r)]
        };
        verdict(basis, w)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An odd prime `q` with `{2,q}' ⊆ π`, if any.
fn odd_q_for_variant_iv(pi: &PrimeSet) -> Option<u64> {
    match pi {
        PrimeSet::All => Some(3),
        PrimeSet::Complement(s) => {
            let odd: Vec<u64> = s.iter().copied().filter(|&p| p != 2).collect();
            match odd.as_slice() {
                [] => Some(3),
                [q] => Some(*q),
                _ => None,
            }
        }
        PrimeSet::Explicit(_) => None,
    }
}

fn remark(g: &Group, critical_for: &ClassExpr, outside: &ClassExpr) -> Checked {
    let critical = crit_s(g, critical_for)?;
    let critical_exhaustive = crit_s_exhaustive(g, critical_for)?;
    let member = is_member(g, outside)?;
    let mut w = Vec::new();
    if !critical || critical != critical_exhaustive {
        w.push(w_bool(format!("S-critical for {critical_for}"), critical));
        w.push(w_bool("exhaustive check", critical_exhaustive));
    }
    if member {
        w.push(w_bool(format!("member of {outside}"), member));
    }
    verdict(Basis::Instance, w)
}

fn five_statements(g: &Group, h: &ClassExpr, f: &ClassExpr, x: &ClassExpr, basis: Basis) -> Checked {
    let norm = hf_norm(g, h, f)?;
    let ninf = norm_infinity(g, h, f)?;
    let s1 = is_member(g, x)?;
    let s2 = is_member(&g.quotient(&norm)?.group, x)?;
    let s3 = is_member(&g.quotient(&ninf)?.group, x)?;
    let mut s4 = true;
    for n in proper_normals(g) {
        if hf_norm(&g.quotient(n)?.group, h, f)?.is_trivial() {
            s4 = false;
            break;
        }
    }
    let s5 = ninf.is_whole();
    let all = [s1, s2, s3, s4, s5];
    if all.iter().all(|&b| b == s1) {
        return pass_with(basis);
    }
    let labels = [
        "(1) G in X",
        "(2) G/Norm in X",
        "(3) G/Norm∞ in X",
        "(4) Norm(G/K) > 1 for proper normal K",
        "(5) G = Norm∞",
    ];
    let mut w: Vec<Witness> = labels.iter().zip(all).map(|(l, b)| w_bool(*l, b)).collect();
    w.push(Witness::new("X", x));
    w.push(w_sub("Norm", &norm));
    w.push(w_sub("Norm∞", &ninf));
    Ok(Outcome::fail(w))
}

fn thm_d(g: &Group, inst: &Instance) -> Checked {
    let (f, pi) = (inst.f(), inst.pi());
    if !is_member(g, &spi(pi).after(f.clone()))? {
        return skip("hypothesis: G in Spi(π) * F");
    }
    let ninf = norm_infinity(g, &gpi(&pi.complement()), f)?;
    let z = hypercentre(g, pi, &nil().after(f.clone()))?;
    let mut w = Vec::new();
    expect_eq(&mut w, "N∞_{π'F}(G)", &ninf, "Z_{π(N*F)}(G)", &z);
    verdict(Basis::Instance, w)
}

// ---- lemmas ----

fn lem_2_1(g: &Group, f: &ClassExpr) -> Checked {
    let gf = residual(g, f)?;
    let fl = f.flags();
    let mut w = Vec::new();
    for n in g.normal_subgroups() {
        let q = g.quotient(n)?;
        let lhs = q.image(&gf);
        let rhs = residual(&q.group, f)?;
        if lhs != rhs {
            w.push(w_sub("(1) K", n));
            expect_eq(&mut w, "G^F K/K", &lhs, "(G/K)^F", &rhs);
        }
        if fl.sn_closed {
            let emb = g.subgroup_group(n);
            let nf = emb.lift(&residual(&emb.group, f)?);
            if !nf.is_subgroup_of(&gf) {
                w.push(w_sub("(2) K", n));
                expect_le(&mut w, "K^F", &nf, "G^F", &gf);
            }
        }
    }
    if fl.s_closed {
        for u in class_reps(g)? {
            let emb = g.subgroup_group(&u);
            let uf = emb.lift(&residual(&emb.group, f)?);
            if !uf.is_subgroup_of(&gf) {
                w.push(w_sub("(2) U", &u));
                expect_le(&mut w, "U^F", &uf, "G^F", &gf);
            }
        }
    }
    verdict(Basis::Instance, w)
}

fn lem_2_2(g: &Group, h: &ClassExpr) -> Checked {
    let rad = classes::radical(g, h)?;
    let fl = h.flags();
    let mut w = Vec::new();
    for n in g.normal_subgroups() {
        let emb = g.subgroup_group(n);
        let n_rad = emb.lift(&classes::radical(&emb.group, h)?);
        let meet = rad.intersection(n);
        if meet != n_rad {
            w.push(w_sub("(1) K", n));
            expect_eq(&mut w, "G_H ∩ K", &meet, "K_H", &n_rad);
        }
        let q = g.quotient(n)?;
        let image = q.image(&rad);
        let q_rad = classes::radical(&q.group, h)?;
        if fl.q_closed && !image.is_subgroup_of(&q_rad) {
            w.push(w_sub("(3) K", n));
            expect_le(&mut w, "G_H K/K", &image, "(G/K)_H", &q_rad);
        }
        if fl.e_closed && n.is_subgroup_of(&rad) && !q_rad.is_subgroup_of(&image) {
            w.push(w_sub("(4) K", n));
            expect_le(&mut w, "(G/K)_H", &q_rad, "G_H/K", &image);
        }
    }
    if fl.s_closed {
        for u in class_reps(g)? {
            let emb = g.subgroup_group(&u);
            let u_rad = emb.lift(&classes::radical(&emb.group, h)?);
            let meet = rad.intersection(&u);
            if !meet.is_subgroup_of(&u_rad) {
                w.push(w_sub("(2) U", &u));
                expect_le(&mut w, "G_H ∩ U", &meet, "U_H", &u_rad);
            }
        }
    }
    verdict(Basis::Instance, w)
}

fn lem_2_3(g: &Group, h: &ClassExpr, f: &ClassExpr) -> Checked {
    let norm = hf_norm(g, h, f)?;
    let fl = h.flags();
    let mut w = Vec::new();
    for n in g.normal_subgroups() {
        let emb = g.subgroup_group(n);
        let n_norm = emb.lift(&hf_norm(&emb.group, h, f)?);
        let meet = norm.intersection(n);
        if !meet.is_subgroup_of(&n_norm) {
            w.push(w_sub("(1) K", n));
            expect_le(&mut w, "Norm(G) ∩ K", &meet, "Norm(K)", &n_norm);
        }
        if fl.q_closed {
            let q = g.quotient(n)?;
            let image = q.image(&norm);
            let q_norm = hf_norm(&q.group, h, f)?;
            if !image.is_subgroup_of(&q_norm) {
                w.push(w_sub("(3) K", n));
                expect_le(&mut w, "Norm(G)K/K", &image, "Norm(G/K)", &q_norm);
            }
        }
    }
    if fl.s_closed {
        for u in class_reps(g)? {
            let emb = g.subgroup_group(&u);
            let u_norm = emb.lift(&hf_norm(&emb.group, h, f)?);
            let meet = norm.intersection(&u);
            if !meet.is_subgroup_of(&u_norm) {
                w.push(w_sub("(2) U", &u));
                expect_le(&mut w, "Norm(G) ∩ U", &meet, "Norm(U)", &u_norm);
            }
        }
    }
    if f.flags().s_closed && g.order() > 1 && norm.is_trivial() {
        let x = h.clone().fitting_then(nil().after(f.clone()));
        if is_member(g, &x)? {
            w.push(Witness::new("(4) G in", &x));
            w.push(w_sub("Norm(G)", &norm));
        }
    }
    verdict(Basis::Instance, w)
}

fn lem_2_5(g: &Group, h: &ClassExpr, f: &ClassExpr) -> Checked {
    let ninf = norm_infinity(g, h, f)?;
    let fl = h.flags();
    let mut w = Vec::new();
    if fl.q_closed {
        let mut meet_all = g.whole();
        for n in g.normal_subgroups() {
            let emb = g.subgroup_group(n);
            let n_inf = emb.lift(&norm_infinity(&emb.group, h, f)?);
            let meet = ninf.intersection(n);
            if !meet.is_subgroup_of(&n_inf) {
                w.push(w_sub("(1) K", n));
                expect_le(&mut w, "Norm∞(G) ∩ K", &meet, "Norm∞(K)", &n_inf);
            }
            let q = g.quotient(n)?;
            let image = q.image(&ninf);
            let q_inf = norm_infinity(&q.group, h, f)?;
            if !image.is_subgroup_of(&q_inf) {
                w.push(w_sub("(3) K", n));
                expect_le(&mut w, "Norm∞(G)K/K", &image, "Norm∞(G/K)", &q_inf);
            }
            if n.is_subgroup_of(&ninf) && q_inf != image {
                w.push(w_sub("(4) K", n));
                expect_eq(&mut w, "Norm∞(G/K)", &q_inf, "Norm∞(G)/K", &image);
            }
            if hf_norm(&q.group, h, f)?.is_trivial() {
                meet_all = meet_all.intersection(n);
            }
        }
        expect_eq(&mut w, "(5) Norm∞(G)", &ninf, "⋂{K : Norm(G/K) = 1}", &meet_all);
    }
    if fl.fitting && fl.formation && fl.s_closed {
        for u in class_reps(g)? {
            let emb = g.subgroup_group(&u);
            let u_inf = emb.lift(&norm_infinity(&emb.group, h, f)?);
            let meet = ninf.intersection(&u);
            if !meet.is_subgroup_of(&u_inf) {
                w.push(w_sub("(2) U", &u));
                expect_le(&mut w, "Norm∞(G) ∩ U", &meet, "Norm∞(U)", &u_inf);
            }
        }
    }
    verdict(Basis::Instance, w)
}

fn lem_2_7(g: &Group, f: &ClassExpr, pi: &PrimeSet) -> Checked {
    if !crit_s(g, f)? {
        return skip("hypothesis: G is S-critical for F");
    }
    if !is_member(g, &spi(pi).after(f.clone()))? {
        return skip("hypothesis: G in Spi(π) * F");
    }
    let target = npi(pi).after(f.clone());
    let w = if is_member(g, &target)? {
        Vec::new()
    } else {
        vec![Witness::new("G not in", &target)]
    };
    verdict(Basis::Instance, w)
}

/// `G_{π'} * F = F`, decided from the shape of `F`.
fn absorbs_pi_prime_groups(f: &ClassExpr, pi: &PrimeSet) -> bool {
    if pi.is_all() {
        return true;
    }
    match f.as_atom() {
        Some(Atom::PiNilpotent(sigma)) => sigma.is_subset(pi),
        Some(Atom::PiGroups(tau)) => pi.complement().is_subset(tau),
        _ => false,
    }
}

fn lem_2_8(g: &Group, f: &ClassExpr, pi: &PrimeSet) -> Checked {
    let z = hypercentre(g, pi, f)?;
    let fl = f.flags();
    let absorbs = absorbs_pi_prime_groups(f, pi);
    let mut w = Vec::new();
    for n in g.normal_subgroups() {
        let q = g.quotient(n)?;
        let image = q.image(&z);
        let zq = hypercentre(&q.group, pi, f)?;
        if n.is_subgroup_of(&z) && zq != image {
            w.push(w_sub("(1) K", n));
            expect_eq(&mut w, "Z(G/K)", &zq, "Z(G)/K", &image);
        }
        if !image.is_subgroup_of(&zq) {
            w.push(w_sub("(2) K", n));
            expect_le(&mut w, "Z(G)K/K", &image, "Z(G/K)", &zq);
        }
        if fl.sn_closed {
            let emb = g.subgroup_group(n);
            let zn = emb.lift(&hypercentre(&emb.group, pi, f)?);
            let meet = z.intersection(n);
            if !meet.is_subgroup_of(&zn) {
                w.push(w_sub("(3) K", n));
                expect_le(&mut w, "Z(G) ∩ K", &meet, "Z(K)", &zn);
            }
            if absorbs && is_member(&emb.group, f)? {
                let nz = g.product_normal(n, &z);
                if !is_member(&g.subgroup_group(&nz).group, f)? {
                    w.push(w_sub("(5) K Z(G) not in F, K", n));
                }
            }
        }
    }
    if fl.s_closed {
        for u in class_reps(g)? {
            let emb = g.subgroup_group(&u);
            let zu = emb.lift(&hypercentre(&emb.group, pi, f)?);
            let meet = z.intersection(&u);
            if !meet.is_subgroup_of(&zu) {
                w.push(w_sub("(3) U", &u));
                expect_le(&mut w, "Z(G) ∩ U", &meet, "Z(U)", &zu);
            }
            if absorbs && is_member(&emb.group, f)? {
                let uz = g.product_normal(&u, &z);
                if !is_member(&g.subgroup_group(&uz).group, f)? {
                    w.push(w_sub("(5) U Z(G) not in F, U", &u));
                }
            }
        }
    }
    if absorbs && is_member(&g.quotient(&z)?.group, f)? && !is_member(g, f)? {
        w.push(w_bool("(4) G/Z(G) in F but G in F", false));
    }
    let absorbed = gpi(&pi.complement()).after(f.clone());
    let z6 = hypercentre(g, pi, &absorbed)?;
    expect_eq(&mut w, "(6) Z_{πF}(G)", &z, "Z_{π(Gpi(π')*F)}(G)", &z6);
    if fl.sn_closed && !is_member(&g.subgroup_group(&z).group, &absorbed)? {
        w.push(w_sub("(7) Z_{πF}(G) not in Gpi(π') * F", &z));
    }
    verdict(Basis::Instance, w)
}

fn lem_2_10(g: &Group, f: &ClassExpr, only_p: Option<u64>) -> Checked {
    let z = hypercentre(g, &PrimeSet::All, f)?;
    let ps = match only_p {
        Some(p) => vec![p],
        None => primes::prime_divisors(g.order() as u64),
    };
    let mut w = Vec::new();
    for p in ps {
        let local = match f.local_definition(p) {
            Some(d) => d,
            None => return skip(format!("hypothesis: F({p}) registered")),
        };
        for e in g.normal_subgroups() {
            if e.is_trivial() || !e.is_subgroup_of(&z) || primes::prime_power_base(e.order() as u64) != Some(p) {
                continue;
            }
            let acting = g.quotient(&g.centralizer(e))?;
            let ok = match &local {
                None => false,
                Some(cls) => is_member(&acting.group, cls)?,
            };
            if !ok {
                w.push(w_sub(format!("E (p = {p})"), e));
                w.push(Witness::new(
                    "G/C_G(E) not in F(p)",
                    local.as_ref().map_or("the empty class".to_string(), |c| c.to_string()),
                ));
            }
        }
    }
    verdict(Basis::Instance, w)
}

fn lem_2_11(g: &Group, f: &ClassExpr, pi: &PrimeSet) -> Checked {
    let b = npi(pi).after(f.clone());
    let in_b = is_member(g, &b)?;
    let series = chief_series(g, &g.whole())?;
    let mut w = Vec::new();
    let (mut lf_b, mut lf_canonical) = (true, true);
    for (l, k) in series.factors() {
        let v = centrality_verdict(g, l, k, &b)?;
        if v.agree() == Some(false) {
            w.push(w_sub("chief factor L", l));
            w.push(w_sub("over K", k));
            w.push(Witness::new("semidirect route", format!("{:?}", v.semidirect)));
            w.push(Witness::new("local route", format!("{:?}", v.local)));
        }
        let acting = g.quotient(&g.centralizer_of_factor(l, k))?;
        for p in primes::prime_divisors((l.order() / k.order()) as u64) {
            let (small, canonical) = if pi.contains(p) {
                (f.clone(), ClassExpr::pi_groups(PrimeSet::single(p)).after(f.clone()))
            } else {
                (b.clone(), b.clone())
            };
            lf_b &= is_member(&acting.group, &small)?;
            lf_canonical &= is_member(&acting.group, &canonical)?;
        }
    }
    if lf_b != in_b {
        w.push(w_bool("(1) G in Npi(π) * F", in_b));
        w.push(w_bool("(1) all chief factors b-central", lf_b));
    }
    if lf_canonical != in_b {
        w.push(w_bool("(2) G in Npi(π) * F", in_b));
        w.push(w_bool("(2) all chief factors B-central", lf_canonical));
    }
    verdict(Basis::Instance, w)
}

fn lem_2_12(g: &Group, f: &ClassExpr, pi: &PrimeSet) -> Checked {
    let z = hypercentre(g, pi, &nil().after(f.clone()))?;
    let gf = residual(g, f)?;
    let emb = g.subgroup_group(&gf);
    let z0 = emb.lift(&hypercentre(&emb.group, pi, &nil())?);
    let mut w = Vec::new();
    let c = g.centralizer(&gf);
    let o = classes::o_pi(g, &pi.complement())?;
    if z.is_trivial() != (c.is_trivial() && o.is_trivial()) {
        w.push(w_sub("(1) Z_{π(N*F)}(G)", &z));
        w.push(w_sub("C_G(G^F)", &c));
        w.push(w_sub("O_{π'}(G)", &o));
    }
    expect_eq(&mut w, "(2) Z_{π(N*F)}(G) ∩ G^F", &z.intersection(&gf), "Z_{πN}(G^F)", &z0);
    if f.flags().saturated && z0.is_subgroup_of(&z) {
        let q = g.quotient(&z0)?;
        let lhs = q.image(&z);
        let rhs = hypercentre(&q.group, pi, f)?;
        expect_eq(&mut w, "(3) Z_{π(N*F)}(G)/Z0", &lhs, "Z_{πF}(G/Z0)", &rhs);
    }
    verdict(Basis::Instance, w)
}

fn lem_3_3(g: &Group, f: &ClassExpr, pi: &PrimeSet) -> Checked {
    let z = hypercentre(g, pi, &nil().after(f.clone()))?;
    let ninf = norm_infinity(g, &gpi(&pi.complement()), f)?;
    let mut w = Vec::new();
    expect_le(&mut w, "Z_{π(N*F)}(G)", &z, "N∞_{π'F}(G)", &ninf);
    verdict(Basis::Instance, w)
}

fn lem_4_1(g: &Group, p: u64) -> Checked {
    let x = ClassExpr::pi_nilpotent(PrimeSet::single(p));
    let r = residual(g, &x)?;
    let emb = g.subgroup_group(&r);
    let psi = emb.lift(&psi_p(&emb.group, p)?);
    let z = hypercentre(g, &PrimeSet::All, &x)?;
    if !psi.is_subgroup_of(&z) {
        return skip(format!("hypothesis: Psi_{p}(G^(Npi({{{p}}}))) <= Z_(Npi({{{p}}}))(G)"));
    }
    let w = if is_member(g, &x)? {
        Vec::new()
    } else {
        vec![w_sub("Psi_p(G^(Npi(p)))", &psi), w_sub("Z_(Npi(p))(G)", &z), Witness::new("G not in", &x)]
    };
    verdict(Basis::Instance, w)
}

fn lem_4_2(g: &Group, f: &ClassExpr, pi: &PrimeSet) -> Checked {
    let gf = residual(g, f)?;
    let emb = g.subgroup_group(&gf);
    let z = hypercentre(g, pi, f)?;
    for p in primes::prime_divisors(gf.order() as u64) {
        if !pi.contains(p) {
            continue;
        }
        let psi = emb.lift(&psi_p(&emb.group, p)?);
        if !psi.is_subgroup_of(&z) {
            return skip(format!("hypothesis: Psi_{p}(G^F) <= Z_{{πF}}(G)"));
        }
    }
    let target = gpi(&pi.complement()).after(f.clone());
    let w = if is_member(g, &target)? {
        Vec::new()
    } else {
        vec![Witness::new("G not in", &target), w_sub("Z_{πF}(G)", &z)]
    };
    verdict(Basis::Instance, w)
}

fn cor_4_x(g: &Group, f: &ClassExpr, with_four: bool) -> Checked {
    let ninf = norm_infinity(g, &ClassExpr::trivial(), f)?;
    let outside = (0..g.order()).find(|&x| {
        let o = g.element_order(x) as u64;
        let relevant = if with_four {
            primes::is_prime(o) || o == 4
        } else {
            o % 2 == 1 && primes::is_prime(o)
        };
        relevant && !ninf.contains(x)
    });
    if let Some(x) = outside {
        return skip(format!(
            "hypothesis: cyclic subgroup of order {} outside N∞_F(G)",
            g.element_order(x)
        ));
    }
    let nilpotent_f = is_subclass(f, &nil());
    let p_bound = if nilpotent_f { 1 } else { 2 };
    let fit_bound = match (with_four, nilpotent_f) {
        (false, false) => 4,
        (false, true) => 3,
        (true, false) => 3,
        (true, true) => 2,
    };
    let mut w = Vec::new();
    let fit = series::fitting_length(g)?;
    match fit {
        None => w.push(w_bool("(1) G solvable", false)),
        Some(len) => {
            for p in primes::prime_divisors(g.order() as u64) {
                if p == 2 && !with_four {
                    continue;
                }
                let l = series::p_length(g, p)?;
                if l > p_bound {
                    w.push(Witness::new(format!("(2) {p}-length exceeds {p_bound}"), l));
                }
            }
            if len > fit_bound {
                w.push(Witness::new(format!("(3) Fitting length exceeds {fit_bound}"), len));
            }
        }
    }
    verdict(Basis::Instance, w)
}

// ---- rendering ----------------------------------------------------------------

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub pass_established: usize,
    pub pass_evidence: usize,
    pub skip: usize,
    pub fail: usize,
}

impl Counts {
    fn add(&mut self, o: &Outcome) {
        match o {
            Outcome::Pass { basis } => {
                self.pass += 1;
                match basis {
                    Basis::Instance => {}
                    Basis::LedgerEstablished { .. } => self.pass_established += 1,
                    Basis::LedgerEvidence { .. } => self.pass_evidence += 1,
                }
            }
            Outcome::Skip { .. } => self.skip += 1,
            Outcome::Fail { .. } => self.fail += 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    #[serde(flatten)]
    pub counts: Counts,
    pub by_proposition: BTreeMap<String, Counts>,
}

pub fn summarize(reports: &[PropositionReport]) -> Summary {
    let mut s = Summary {
        total: reports.len(),
        ..Summary::default()
    };
    for r in reports {
        s.counts.add(&r.outcome);
        s.by_proposition.entry(r.proposition.clone()).or_default().add(&r.outcome);
    }
    s
}

/// Run metadata that legitimately differs between identical runs.
#[derive(Debug, Clone, Serialize)]
pub struct RunHeader {
    pub tool: String,
    pub version: String,
    pub timestamp: String,
    pub elapsed_ms: u128,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    header: &'a RunHeader,
    summary: Summary,
    reports: &'a [PropositionReport],
}

/// JSON report: header, then summary, then one entry per report.
pub fn render_json(header: &RunHeader, reports: &[PropositionReport]) -> String {
    let doc = JsonReport {
        header,
        summary: summarize(reports),
        reports,
    };
    serde_json::to_string_pretty(&doc).expect("reports serialise")
}

fn outcome_detail(o: &Outcome) -> (String, String) {
    match o {
        Outcome::Pass { basis } => (
            "pass".into(),
            match basis {
                Basis::Instance => "instance".into(),
                Basis::LedgerEstablished { citation } => format!("ledger: established ({citation})"),
                Basis::LedgerEvidence { critical_groups } => {
                    format!("ledger: corpus evidence ({critical_groups} critical groups)")
                }
            },
        ),
        Outcome::Skip { reason } => ("skip".into(), reason.clone()),
        Outcome::Fail { witness } => (
            "fail".into(),
            witness
                .iter()
                .map(|w| format!("{} = {}", w.label, w.value))
                .collect::<Vec<_>>()
                .join("; "),
        ),
    }
}

pub fn render_csv(reports: &[PropositionReport]) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    wtr.write_record(["proposition", "group", "group_id", "params", "outcome", "detail"])
        .map_err(io)?;
    for r in reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let (status, detail) = outcome_detail(&r.outcome);
        wtr.write_record([
            r.proposition.as_str(),
            r.group.as_str(),
            r.group_id.as_str(),
            &params.join(";"),
            &status,
            &detail,
        ])
        .map_err(io)?;
    }
    let bytes = wtr.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Group × proposition table of `pass/skip/fail` counts, then the failures.
pub fn render_markdown(reports: &[PropositionReport]) -> String {
    let mut props: Vec<&str> = Vec::new();
    let mut groups: Vec<&str> = Vec::new();
    let mut cells: BTreeMap<(&str, &str), Counts> = BTreeMap::new();
    for r in reports {
        if !props.contains(&r.proposition.as_str()) {
            props.push(&r.proposition);
        }
        if !groups.contains(&r.group.as_str()) {
            groups.push(&r.group);
        }
        cells.entry((&r.group, &r.proposition)).or_default().add(&r.outcome);
    }
    let s = summarize(reports);
    let mut out = format!(
        "# Verification report\n\n{} checks: {} pass ({} via established ledger entries, {} via corpus evidence), {} skip, {} fail.\n\n",
        s.total, s.counts.pass, s.counts.pass_established, s.counts.pass_evidence, s.counts.skip, s.counts.fail
    );
    if !reports.is_empty() {
        out.push_str("Cells are pass/skip/fail.\n\n| group |");
        for p in &props {
            out.push_str(&format!(" {p} |"));
        }
        out.push_str("\n|---|");
        out.push_str(&"---|".repeat(props.len()));
        out.push('\n');
        for g in &groups {
            out.push_str(&format!("| {g} |"));
            for p in &props {
                match cells.get(&(*g, *p)) {
                    Some(c) => out.push_str(&format!(" {}/{}/{} |", c.pass, c.skip, c.fail)),
                    None => out.push_str(" |"),
                }
            }
            out.push('\n');
        }
    }
    let failures: Vec<&PropositionReport> = reports.iter().filter(|r| r.outcome.is_fail()).collect();
    if !failures.is_empty() {
        out.push_str("\n## Failures\n\n");
        for r in failures {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!(
                "- {} on {} ({}): {}\n",
                r.proposition,
                r.group,
                params.join(", "),
                outcome_detail(&r.outcome).1
            ));
        }
    }
    out
}

/// Convenience for a single check outside a run.
pub fn check_one(corpus: Vec<NamedGroup>, id: &str, group: &str, inst: Instance) -> Result<PropositionReport> {
    let h = Harness::new(corpus, Overrides::default());
    let target = match proposition(id).map(|p| p.scope) {
        Some(Scope::Group) => Target::Group(
            h.corpus
                .iter()
                .position(|g| g.name == group)
                .ok_or_else(|| Error::Validation(format!("unknown group {group}")))?,
        ),
        Some(Scope::Corpus) => Target::Corpus,
        None => return Err(Error::Validation(format!("unknown proposition {id:?}"))),
    };
    let proposition = proposition(id).expect("checked above").id;
    Ok(h.run_task(&Task {
        proposition,
        target,
        instance: inst,
    }))
}
