//! Acceptance criteria 1-10. Prints one line per criterion with its pinned
//! tolerance and exits non-zero on any unexpected failure.
//!
//! Criterion 1 includes q = 2, where the commutator subgroup of GL2(F2) = S3
//! is A3 rather than SL2(F2). That case is reported as FAIL; the run only
//! fails if some other field order disagrees as well.

use std::time::{Duration, Instant};

use galsplit::groupspec::parse_group;
use galsplit::grp::{cyclic, derived_subgroup, direct_product, Elem};
use galsplit::matgrp::{gl2_group, psl2_order2_witness, Pgl2};
use galsplit::ffield::fq_make;
use galsplit::groupspec::field_of_order;
use galsplit::report::{Outcome, VerificationReport};
use galsplit::sdp::psi_iso_check;
use galsplit::split::dirichlet_condition_search;
use galsplit::suites::{run_suite, subgroup_shapes, Corpus, FactorSpec, RunConfig, SdpSpec};

struct Line {
    passed: bool,
    /// Failure documented as a property of the mathematics, not of the code.
    known: bool,
    detail: String,
}

fn line(passed: bool, detail: impl Into<String>) -> Line {
    Line {
        passed,
        known: false,
        detail: detail.into().trim_end().to_string(),
    }
}

fn within(start: Instant, secs: u64) -> bool {
    start.elapsed() <= Duration::from_secs(secs)
}

fn cfg(samples: usize) -> RunConfig {
    RunConfig { seed: 42, samples }
}

fn suite(name: &str, corpus: &Corpus, samples: usize) -> VerificationReport {
    run_suite(name, corpus, &cfg(samples)).expect("suite runs")
}

fn falsified(r: &VerificationReport) -> Vec<String> {
    r.cases
        .iter()
        .filter(|c| matches!(c.verdict, Outcome::Falsified | Outcome::Indeterminate))
        .map(|c| format!("{} {:?}", c.statement_id, c.parameters))
        .collect()
}

fn criterion_1() -> Line {
    let mut bad = Vec::new();
    let mut slowest = 0.0f64;
    for q in [2u32, 3, 4, 5, 7, 9, 13] {
        let start = Instant::now();
        let gl = gl2_group(&field_of_order(q).unwrap()).unwrap();
        let d = derived_subgroup(gl.group()).unwrap();
        let kernel: Vec<Elem> = gl.group().elements().filter(|&a| gl.det(a) == 1).collect();
        let secs = start.elapsed().as_secs_f64();
        slowest = slowest.max(secs);
        if d.members() != kernel.as_slice() || secs > 30.0 {
            bad.push((q, d.order(), kernel.len()));
        }
    }
    let only_q2 = bad.len() == 1 && bad[0] == (2, 3, 6);
    Line {
        passed: bad.is_empty(),
        known: only_q2,
        detail: if bad.is_empty() {
            format!("7 fields, slowest {slowest:.1}s <= 30s")
        } else {
            let parts: Vec<String> =
                bad.iter().map(|(q, d, k)| format!("q={q}: |derived|={d}, |det kernel|={k}")).collect();
            format!("{}; other fields agree, slowest {slowest:.1}s", parts.join(", "))
        },
    }
}

fn criterion_2() -> Line {
    let start = Instant::now();
    let mut c = Corpus::empty();
    c.uniqueness = vec![(5, vec![1, 2, 4]), (7, vec![1, 2, 3, 6])];
    let r = suite("section2", &c, 0);
    let bad = falsified(&r);
    let ok = bad.is_empty() && r.summary.verified == 7 && within(start, 120);
    line(ok, format!("{} index checks, {:.1}s for two groups (<= 60s each)", r.summary.verified, start.elapsed().as_secs_f64()))
}

fn criterion_3() -> Line {
    let start = Instant::now();
    let expected = [
        ((5, 2), false),
        ((5, 4), true),
        ((7, 2), true),
        ((7, 3), true),
        ((13, 2), false),
        ((13, 3), true),
        ((13, 4), true),
        ((9, 8), true),
    ];
    let mut bad = Vec::new();
    for &((q, n), yes) in &expected {
        let gl = gl2_group(&field_of_order(q).unwrap()).unwrap();
        let h = gl.det_power_subgroup(n as u64).unwrap();
        let rep = galsplit::split::cyclic_transversal_search(gl.group(), &h).unwrap();
        let found = rep.verdict == galsplit::split::Verdict::SplitWithWitness;
        if found != yes || !rep.is_consistent(gl.group(), &h) {
            bad.push(format!("(q={q}, n={n})"));
        }
    }
    let mut c = Corpus::empty();
    c.cyclic_transversal = expected.iter().map(|&((q, n), _)| (q, n)).collect();
    let r = suite("section2", &c, 0);
    bad.extend(falsified(&r));
    let secs = start.elapsed().as_secs_f64();
    line(bad.is_empty() && secs <= 120.0, format!("8 verdicts exact, {secs:.1}s <= 120s {}", bad.join(" ")))
}

fn psl2_pair_with_witness() -> SdpSpec {
    let g = parse_group("pgl2:5").unwrap();
    let pg: &Pgl2 = g.pgl2.as_ref().unwrap();
    let w = psl2_order2_witness(&fq_make(5, 1).unwrap()).unwrap();
    let t = vec![g.group.identity(), pg.class_of(&w)];
    let f = FactorSpec {
        group: "pgl2:5".into(),
        subgroup: "psl2".into(),
        transversal: Some(t),
    };
    SdpSpec {
        factors: vec![f.clone(), f],
    }
}

fn criterion_4() -> Line {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut c = Corpus::empty();
    c.psi = Corpus::default().psi;
    let r = suite("section2", &c, 0);
    bad.extend(falsified(&r));
    let small = r.summary.verified;
    let gl_factor = FactorSpec {
        group: "gl2:5".into(),
        subgroup: "sl2".into(),
        transversal: None,
    };
    let big = [
        (
            SdpSpec {
                factors: vec![gl_factor.clone(), gl_factor],
            },
            57_600,
        ),
        (psl2_pair_with_witness(), 7_200),
    ];
    let mut sizes = Vec::new();
    for (spec, order) in big {
        let data = spec.build().unwrap();
        let (_, rep) = psi_iso_check(&data, 42).unwrap();
        if !rep.ok() || rep.order != order || rep.pairs_checked < 100_000 {
            bad.push(format!("{} ({}, {})", spec.label(), rep.order, rep.mode));
        }
        sizes.push(format!("{} via {}", rep.order, rep.mode));
    }
    let secs = start.elapsed().as_secs_f64();
    line(
        bad.is_empty() && secs <= 300.0,
        format!("{small} exhaustive instances, {}, {secs:.1}s <= 300s {}", sizes.join(" and "), bad.join(" ")),
    )
}

fn criterion_5() -> Line {
    let start = Instant::now();
    let corpus = Corpus::default();
    let r = suite("induce", &corpus, 10_000);
    let mut bad = falsified(&r);
    let mut ns = std::collections::BTreeSet::new();
    let mut ms = std::collections::BTreeSet::new();
    let mut kernels = std::collections::BTreeSet::new();
    for ic in &corpus.induce {
        let inst = ic.build().unwrap();
        ns.insert(inst.block.n());
        ms.insert(inst.block.m());
        let k = inst.pi.kernel().order();
        kernels.insert(if k == 1 { "faithful" } else if k == inst.pi.group().order() { "trivial" } else { "intermediate" });
    }
    for n in [2, 3, 4] {
        if !ns.contains(&n) {
            bad.push(format!("no instance with n={n}"));
        }
    }
    if !(ms.contains(&1) && ms.contains(&2)) || kernels.len() < 3 || corpus.induce.len() < 10 {
        bad.push(format!("coverage m={ms:?} kernels={kernels:?}"));
    }
    let secs = start.elapsed().as_secs_f64();
    line(
        bad.is_empty() && secs <= 60.0,
        format!("{} instances, {} checks, {secs:.1}s <= 60s {}", corpus.induce.len(), r.summary.verified, bad.join(" ")),
    )
}

fn criterion_6() -> Line {
    let start = Instant::now();
    let mut c = Corpus::empty();
    c.pairs = Corpus::default().pairs;
    c.scalar_q = vec![5, 7];
    let has_sl2 = c.pairs.iter().any(|p| p.group == "sl2:3" && p.reps.iter().all(|r| r == "natural"));
    let r = suite("repalg", &c, 10_000);
    let bad = falsified(&r);
    let secs = start.elapsed().as_secs_f64();
    line(
        bad.is_empty() && has_sl2 && c.pairs.len() >= 5 && secs <= 60.0,
        format!("{} rep tuples, 10^4 matrix pairs per shape over F5 and F7, {secs:.1}s <= 60s {}", c.pairs.len(), bad.join(" ")),
    )
}

fn criterion_7() -> Line {
    let start = Instant::now();
    let mut c = Corpus::empty();
    c.induce = Corpus::default().induce;
    let min_shapes = c
        .induce
        .iter()
        .map(|ic| subgroup_shapes(&ic.build().unwrap()).unwrap().len())
        .min()
        .unwrap_or(0);
    let r = suite("repalg", &c, 0);
    let bad = falsified(&r);
    let secs = start.elapsed().as_secs_f64();
    line(
        bad.is_empty() && min_shapes >= 3 && secs <= 120.0,
        format!(
            "{} verified, {} not applicable, >= {min_shapes} subgroup shapes each, {secs:.1}s <= 120s {}",
            r.summary.verified,
            r.summary.not_applicable,
            bad.join(" ")
        ),
    )
}

fn criterion_8() -> Line {
    let start = Instant::now();
    let mut c = Corpus::empty();
    c.pgl_psl_p = vec![5, 7];
    c.adjoint_p = vec![5];
    c.witness_p = vec![5, 7];
    let r = suite("repalg", &c, 0);
    let mut bad = falsified(&r);
    bad.extend(falsified(&suite("section2", &c, 0)));
    // Independent histogram comparison at p = 5.
    let pg = Pgl2::new(&fq_make(5, 1).unwrap()).unwrap();
    let product = direct_product(&pg.psl2.as_group(), &cyclic(2));
    let pgl_has_4 = pg.pgl2.group().order_histogram().contains_key(&4);
    let product_has_4 = product.order_histogram().contains_key(&4);
    if !pgl_has_4 || product_has_4 {
        bad.push("order-4 histogram witness".into());
    }
    let secs = start.elapsed().as_secs_f64();
    line(
        bad.is_empty() && secs <= 120.0,
        format!("{} checks at p=5,7, {secs:.1}s <= 120s {}", r.summary.verified, bad.join(" ")),
    )
}

fn criterion_9() -> Line {
    let start = Instant::now();
    let limit = 1_000_000u64;
    let found = dirichlet_condition_search(4, 1, limit).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let mut composite = vec![false; limit as usize + 1];
    let mut oracle = Vec::new();
    for p in 2..=limit as usize {
        if !composite[p] {
            if p % 8 == 5 {
                oracle.push(p as u64);
            }
            for m in (p * p..=limit as usize).step_by(p) {
                composite[m] = true;
            }
        }
    }
    let ok = found == oracle && found[..4] == [5, 13, 29, 37] && secs <= 10.0;
    line(ok, format!("{} primes, first {:?}, {secs:.2}s <= 10s", found.len(), &found[..4.min(found.len())]))
}

fn criterion_10() -> Line {
    let corpus = Corpus::default();
    let json = |_: ()| serde_json::to_string(&suite("all", &corpus, 10_000).without_timing()).unwrap();
    let (a, b) = (json(()), json(()));
    line(a == b, format!("two runs of suite all, {} bytes identical", a.len()))
}

fn main() {
    let criteria: [(u32, fn() -> Line); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut unexpected = 0;
    for (n, f) in criteria {
        let l = f();
        let verdict = if l.passed { "PASS" } else { "FAIL" };
        let note = if !l.passed && l.known { " [known exception]" } else { "" };
        println!("criterion {n}: {verdict}{note} - {}", l.detail);
        if !l.passed && !l.known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
