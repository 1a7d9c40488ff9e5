//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; the process fails if any
//! criterion does.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use normlab_core::corpus::NamedGroup;
use normlab_core::harness::{self, Harness, Overrides};
use normlab_core::norm::{crit_s, hf_norm};
use normlab_core::series::{hypercentre, upper_central_series};
use normlab_core::{ClassExpr, PrimeSet, PropositionReport};
use support::*;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn run(props: &[&str]) -> Result<Vec<PropositionReport>, String> {
    Harness::new(catalog(), Overrides::default())
        .run(props, 4)
        .map_err(|e| e.to_string())
}

/// Zero failures over `props`, returning the summary line.
fn no_failures(props: &[&str]) -> Result<(harness::Summary, Duration), String> {
    let start = Instant::now();
    let reports = run(props)?;
    let elapsed = start.elapsed();
    let s = harness::summarize(&reports);
    if s.counts.fail > 0 {
        let first = reports.iter().find(|r| r.outcome.is_fail()).unwrap();
        return Err(format!("{} failures, first: {} on {} {:?}", s.counts.fail, first.proposition, first.group, first.params));
    }
    if s.counts.pass == 0 {
        return Err("nothing evaluated".into());
    }
    Ok((s, elapsed))
}

fn counts(s: &harness::Summary) -> String {
    format!("{} pass, {} skip, 0 fail", s.counts.pass, s.counts.skip)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn remark_1_4() -> Verdict {
    let start = Instant::now();
    let a5 = builtin("A5");
    let crit = crit_s(&a5, &class("Gpi({3}) * Npi({3})")).map_err(|e| e.to_string())?;
    let member = normlab_core::classes::is_member(&a5, &class("S * Npi({3})")).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(crit && !member, || format!("critical = {crit}, in S * Npi({{3}}) = {member}"))?;
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    let (s, _) = no_failures(&["Rem1.4"])?;
    Ok(format!("A5 critical and outside S * Npi({{3}}) in {elapsed:.2?}; harness {}", counts(&s)))
}

fn remark_1_5() -> Verdict {
    let start = Instant::now();
    let s3 = builtin("S3");
    let crit = crit_s(&s3, &class("Gpi({2}) * Gpi({3})")).map_err(|e| e.to_string())?;
    let member = normlab_core::classes::is_member(&s3, &class("N * Gpi({3})")).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(crit && !member, || format!("critical = {crit}, in N * Gpi({{3}}) = {member}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("S3 critical and outside N * Gpi({{3}}) in {elapsed:.2?}"))
}

fn theorem_d() -> Verdict {
    let (s, elapsed) = no_failures(&["ThmD"])?;
    ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
    Ok(format!("{} in {elapsed:.2?}", counts(&s)))
}

fn theorem_a() -> Verdict {
    let (s, _) = no_failures(&["ThmA", "Cor3.2"])?;
    Ok(counts(&s))
}

fn theorems_c_e() -> Verdict {
    let (s, _) = no_failures(&["ThmC", "ThmE"])?;
    for id in ["ThmC", "ThmE"] {
        let c = &s.by_proposition[id];
        ensure(c.pass_established > 0, || format!("{id}: no ledger-established instance evaluated"))?;
    }
    Ok(format!("{} ({} on established conditions)", counts(&s), s.counts.pass_established))
}

fn lemmas() -> Verdict {
    let ids = ["Lem2.1", "Lem2.2", "Lem2.3", "Lem2.5", "Lem2.6", "Lem2.8", "Lem2.12", "Lem3.3", "Lem4.1"];
    let (s, _) = no_failures(&ids)?;
    for id in ids {
        ensure(s.by_proposition.get(id).is_some_and(|c| c.pass > 0), || format!("{id}: nothing evaluated"))?;
    }
    Ok(counts(&s))
}

fn oracles() -> Verdict {
    let corpus: Vec<NamedGroup> = catalog();
    let mut checked = [0usize; 4];
    for named in corpus.iter().filter(|g| g.group.order() <= 24) {
        let g = &named.group;
        let ours: std::collections::BTreeSet<Set> = g.lattice().unwrap().subgroups().iter().map(members).collect();
        ensure(ours == naive_lattice(g), || format!("(a) lattice differs on {}", named.name))?;
        checked[0] += 1;
    }
    let grid = [("1", "1"), ("1", "A"), ("1", "N"), ("1", "U"), ("N", "A"), ("Gpi({2})", "N")];
    for named in corpus.iter().filter(|g| g.group.order() <= 48) {
        let g = &named.group;
        for (h, f) in grid {
            let (h, f) = (class(h), class(f));
            let ours = members(&hf_norm(g, &h, &f).unwrap());
            ensure(ours == naive_norm(g, &h, &f), || format!("(b) norm differs on {} H={h} F={f}", named.name))?;
            checked[1] += 1;
        }
    }
    let n = ClassExpr::nilpotent();
    for named in &corpus {
        let g = &named.group;
        let z = hypercentre(g, &PrimeSet::All, &n).unwrap();
        let ucs = upper_central_series(g);
        ensure(members(&z) == naive_hypercentre(g) && ucs.last() == Some(&z), || {
            format!("(c) hypercentre differs on {}", named.name)
        })?;
        checked[2] += 1;
    }
    let pis = [PrimeSet::All, PrimeSet::single(2), PrimeSet::single(3), PrimeSet::explicit([2, 3])];
    for named in corpus.iter().filter(|g| g.group.order() <= 120) {
        let g = &named.group;
        for f in ["N", "A", "U", "Npi({2})", "Gpi({3})"] {
            let f = class(f);
            for pi in &pis {
                let z = hypercentre(g, pi, &f).unwrap();
                ensure(z == ascending_hypercentre(g, pi, &f), || format!("(d) differs on {} π={pi} F={f}", named.name))?;
                checked[3] += 1;
            }
        }
    }
    Ok(format!("(a) {} groups, (b) {} cases, (c) {} groups, (d) {} cases", checked[0], checked[1], checked[2], checked[3]))
}

fn section_4() -> Verdict {
    let (s, _) = no_failures(&["Cor4.4", "Cor4.5"])?;
    Ok(counts(&s))
}

fn determinism() -> Verdict {
    let verify = || -> Result<String, String> {
        let o = Command::new(env!("CARGO_BIN_EXE_norm-lab"))
            .args(["verify", "--props", "all", "--builtin-corpus"])
            .env_remove("NORMLAB_CACHE_DIR")
            .output()
            .map_err(|e| e.to_string())?;
        ensure(o.status.code() == Some(0), || format!("exit {:?}", o.status.code()))?;
        let text = String::from_utf8(o.stdout).map_err(|e| e.to_string())?;
        // everything after the header object
        let at = text.find("\n  \"summary\"").ok_or("no summary block")?;
        Ok(text[at..].to_string())
    };
    let (a, b) = (verify()?, verify()?);
    ensure(a == b, || "reports differ".into())?;
    Ok(format!("{} bytes identical below the header", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 Rem1.4 reproduction", remark_1_4),
        ("2 Rem1.5 reproduction", remark_1_5),
        ("3 ThmD grid", theorem_d),
        ("4 ThmA / Cor3.2 equivalences", theorem_a),
        ("5 ThmC / ThmE conditional equalities", theorems_c_e),
        ("6 lemma suite", lemmas),
        ("7 oracle equivalences", oracles),
        ("8 Cor4.4 / Cor4.5 bounds", section_4),
        ("9 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail})");
            }
        }
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
