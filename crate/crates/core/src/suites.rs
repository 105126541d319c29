//! The default corpus and the verification suites run by `galsplit verify`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_integer::gcd;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::fq_make;
use crate::groupspec::{field_of_order, parse_group, parse_rep, parse_subgroup};
use crate::grp::{derived_subgroup, normal_subgroups, subgroup_generated, transversal_enumerate, unique_abelian_index_n, Elem, Subgroup, Transversal};
use crate::induce::{
    exact_sequence_gamma, general_subgroup_sequence, induce, induced_split_check, product_relation_batch,
    rho_h_image_iso, transversal_change_of_basis, BlockRep, Rep,
};
use crate::linalg::Matrix;
use crate::matgrp::{gl2_group, psl2_order2_witness, simplicity, Pgl2};
use crate::par::Exec;
use crate::repalg::{
    cyclic_coset_generator, direct_sum_tuple_check, pgl_psl_analysis, scalar_detection, pair_group_checks,
    simple_image_propagation, tensor_directsum_image_iso, adjoint_model, adjoint_model_checks,
};
use crate::report::{CaseResult, Check, VerificationReport};
use crate::sdp::{psi_iso_check, SdpData, SdpFactor};
use crate::split::{cyclic_transversal_search, dirichlet_condition_search, multiplicative_transversal_search, Verdict};

pub const SUITES: [&str; 4] = ["section2", "induce", "repalg", "all"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSpec {
    pub group: String,
    pub subgroup: String,
    /// Representative indices in coset order; a closed transversal is searched for when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transversal: Option<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdpSpec {
    pub factors: Vec<FactorSpec>,
}

impl SdpSpec {
    pub fn build(&self) -> Result<SdpData> {
        let factors = self
            .factors
            .iter()
            .map(|f| {
                let g = parse_group(&f.group)?;
                let h = parse_subgroup(&g, &f.subgroup)?;
                let t = match &f.transversal {
                    Some(reps) => Transversal::new(&g.group, &h, reps.clone())?,
                    None => multiplicative_transversal_search(&g.group, &h)?.ok_or(Error::NotClosed)?,
                };
                Ok(SdpFactor::new(t))
            })
            .collect::<Result<Vec<_>>>()?;
        SdpData::new(factors)
    }

    pub fn label(&self) -> String {
        self.factors
            .iter()
            .map(|f| format!("{}/{}", f.group, f.subgroup))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InduceCase {
    pub group: String,
    pub subgroup: String,
    /// Representation `π` of the whole group; `σ` is its restriction.
    pub rep: String,
    pub ell: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCase {
    pub group: String,
    pub reps: Vec<String>,
    pub ell: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCase {
    pub n: u64,
    pub r: u64,
    pub limit: u64,
}

/// Parameter lists for every suite; fields missing from a corpus file keep their defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Corpus {
    pub derived_q: Vec<u32>,
    pub uniqueness: Vec<(u32, Vec<usize>)>,
    pub cyclic_transversal: Vec<(u32, usize)>,
    pub witness_p: Vec<u32>,
    pub simplicity_p: Vec<u32>,
    pub psi: Vec<SdpSpec>,
    pub prime_search: Vec<PrimeCase>,
    pub induce: Vec<InduceCase>,
    pub pairs: Vec<PairCase>,
    pub scalar_q: Vec<u32>,
    pub pgl_psl_p: Vec<u32>,
    pub adjoint_p: Vec<u32>,
}

fn factor(group: &str, subgroup: &str) -> FactorSpec {
    FactorSpec {
        group: group.into(),
        subgroup: subgroup.into(),
        transversal: None,
    }
}

fn ind(group: &str, subgroup: &str, rep: &str, ell: Option<u32>) -> InduceCase {
    InduceCase {
        group: group.into(),
        subgroup: subgroup.into(),
        rep: rep.into(),
        ell,
    }
}

fn pair(group: &str, reps: &[&str], ell: Option<u32>) -> PairCase {
    PairCase {
        group: group.into(),
        reps: reps.iter().map(|s| s.to_string()).collect(),
        ell,
    }
}

impl Corpus {
    /// A corpus with every list empty, to be filled selectively.
    pub fn empty() -> Corpus {
        Corpus {
            derived_q: vec![],
            uniqueness: vec![],
            cyclic_transversal: vec![],
            witness_p: vec![],
            simplicity_p: vec![],
            psi: vec![],
            prime_search: vec![],
            induce: vec![],
            pairs: vec![],
            scalar_q: vec![],
            pgl_psl_p: vec![],
            adjoint_p: vec![],
        }
    }
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus {
            derived_q: vec![2, 3, 4, 5, 7, 9],
            uniqueness: vec![(5, vec![1, 2, 4]), (7, vec![1, 2, 3, 6])],
            cyclic_transversal: vec![(5, 2), (5, 4), (7, 2), (7, 3), (9, 8), (13, 2), (13, 3), (13, 4)],
            witness_p: vec![5, 7, 11, 13],
            simplicity_p: vec![5, 7],
            psi: vec![
                SdpSpec {
                    factors: vec![factor("cyclic:4", "trivial"), factor("cyclic:4", "trivial")],
                },
                SdpSpec {
                    factors: vec![factor("cyclic:4", "whole"), factor("sym:3", "whole")],
                },
                SdpSpec {
                    factors: vec![factor("sym:3", "derived"), factor("sym:3", "derived")],
                },
                SdpSpec {
                    factors: vec![factor("sym:3", "derived"), factor("gl2:3", "sl2")],
                },
                SdpSpec {
                    factors: vec![factor("gl2:3", "sl2"), factor("gl2:3", "sl2")],
                },
            ],
            prime_search: vec![
                PrimeCase { n: 4, r: 1, limit: 100_000 },
                PrimeCase { n: 3, r: 1, limit: 100_000 },
                PrimeCase { n: 6, r: 5, limit: 20_000 },
                PrimeCase { n: 8, r: 3, limit: 20_000 },
            ],
            induce: vec![
                ind("sym:3", "derived", "trivial", Some(7)),
                ind("sym:3", "derived", "sign", Some(7)),
                ind("gl2:2", "derived", "natural", None),
                ind("cyclic:4", "gens:2", "char:2", Some(5)),
                ind("cyclic:4", "gens:2", "char:4", Some(5)),
                ind("cyclic:4", "gens:2", "trivial:2", Some(5)),
                ind("cyclic:6", "gens:2", "char:4", Some(7)),
                ind("cyclic:6", "gens:3", "char:3", Some(7)),
                ind("cyclic:8", "gens:4", "char:2", Some(17)),
                ind("cyclic:8", "gens:4", "char:2", Some(5)),
                ind("gl2:3", "sl2", "natural", None),
                ind("sl2:3", "derived", "natural", None),
                ind("sym:4", "derived", "sign", Some(5)),
                ind("gl2:5", "det-power:4", "det", None),
                ind("gl2:5", "sl2", "natural", None),
            ],
            pairs: vec![
                pair("cyclic:4", &["trivial", "trivial"], Some(5)),
                pair("cyclic:4", &["char:2", "char:2"], Some(5)),
                pair("sl2:3", &["natural", "natural"], None),
                pair("sl2:3", &["natural", "dual"], None),
                pair("gl2:3", &["natural", "natural"], None),
                pair("gl2:2", &["natural", "trivial"], None),
                pair("sl2:5", &["natural", "natural", "natural"], None),
            ],
            scalar_q: vec![5, 7],
            pgl_psl_p: vec![5, 7],
            adjoint_p: vec![5],
        }
    }
}

/// Verification settings shared by every case.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            samples: 10_000,
        }
    }
}

type Runner = Box<dyn Fn(&RunConfig) -> Result<Vec<Check>> + Send + Sync>;

struct Case {
    params: BTreeMap<String, String>,
    run: Runner,
}

fn case(params: &[(&str, String)], run: impl Fn(&RunConfig) -> Result<Vec<Check>> + Send + Sync + 'static) -> Case {
    Case {
        params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        run: Box::new(run),
    }
}

/// Statements whose failure is reported through an error rather than a check.
fn error_falsifies(e: &Error) -> bool {
    matches!(e, Error::DisjointnessFailure | Error::NotHomomorphism(_))
}

fn execute(cases: Vec<Case>, cfg: &RunConfig, suite: &str) -> Vec<CaseResult> {
    let results = Exec::default().map_slice(&cases, |c| {
        let start = Instant::now();
        let out = (c.run)(cfg);
        (out, start.elapsed().as_millis() as u64)
    });
    let mut rows = Vec::new();
    for (c, (out, ms)) in cases.iter().zip(results) {
        let checks = match out {
            Ok(checks) => checks,
            Err(e) => {
                let name = format!("{suite}: case completes");
                vec![if error_falsifies(&e) {
                    Check::holds(name, false, e.to_string())
                } else {
                    Check::indeterminate(name, e.to_string())
                }]
            }
        };
        for ch in checks {
            rows.push(CaseResult {
                statement_id: ch.name,
                parameters: c.params.clone(),
                verdict: ch.outcome,
                witness: (!ch.detail.is_empty()).then_some(ch.detail),
                elapsed_ms: Some(ms),
            });
        }
    }
    rows
}

fn matrix_group_cases(corpus: &Corpus) -> Vec<Case> {
    let mut cases = Vec::new();
    for &q in &corpus.derived_q {
        cases.push(case(&[("q", q.to_string())], move |_| {
            let gl = gl2_group(&field_of_order(q)?)?;
            let d = derived_subgroup(gl.group())?;
            let sl = gl.sl2();
            let name = "derived subgroup of GL2 is the determinant-one subgroup";
            let detail = format!("|derived| = {}, |SL2| = {}", d.order(), sl.order());
            // Claimed for odd characteristic only; GL2(F2) = S3 has derived subgroup A3.
            if q % 2 == 0 && d != sl {
                return Ok(vec![Check::not_applicable(name, format!("even q: {detail}"))]);
            }
            Ok(vec![Check::holds(name, d == sl, detail)])
        }));
    }
    for (q, ns) in corpus.uniqueness.clone() {
        cases.push(case(&[("q", q.to_string())], move |_| {
            let gl = gl2_group(&field_of_order(q)?)?;
            let g = gl.group();
            let derived = derived_subgroup(g)?;
            let normals = normal_subgroups(g);
            let mut checks = Vec::new();
            for &n in &ns {
                let with_abelian_quotient: Vec<&Subgroup> = normals
                    .iter()
                    .filter(|s| s.index() == n && derived.is_subset(s))
                    .collect();
                let expected = gl.det_power_subgroup(n as u64)?;
                let built = unique_abelian_index_n(g, n)?;
                checks.push(Check::holds(
                    format!("unique index-{n} normal subgroup with abelian quotient"),
                    with_abelian_quotient.len() == 1 && *with_abelian_quotient[0] == expected && built == expected,
                    format!("{} normal subgroups scanned", normals.len()),
                ));
            }
            Ok(checks)
        }));
    }
    for &(q, n) in &corpus.cyclic_transversal {
        cases.push(case(&[("q", q.to_string()), ("n", n.to_string())], move |_| {
            let gl = gl2_group(&field_of_order(q)?)?;
            let h = gl.det_power_subgroup(n as u64)?;
            let rep = cyclic_transversal_search(gl.group(), &h)?;
            let coprime = gcd(n, (q as usize - 1) / n) == 1;
            let found = rep.verdict == Verdict::SplitWithWitness;
            let witness = rep.witness.as_ref().map(|w| w.label.clone()).unwrap_or_else(|| "none".into());
            Ok(vec![Check::holds(
                "cyclic transversal exists iff gcd(n, m/n) = 1",
                found == coprime && rep.is_consistent(gl.group(), &h),
                format!("m = {}, gcd = {}, witness {witness}", rep.m, rep.gcd),
            )])
        }));
    }
    for &p in &corpus.witness_p {
        cases.push(case(&[("p", p.to_string())], move |_| {
            let f = fq_make(p, 1)?;
            let pg = Pgl2::new(&f)?;
            let w = psl2_order2_witness(&f)?;
            let c = pg.class_of(&w);
            let g = pg.pgl2.group();
            Ok(vec![Check::holds(
                "order-2 class outside PSL2 from the explicit matrix",
                g.elem_order(c) == 2 && !pg.psl2.contains(c),
                w.render(),
            )])
        }));
    }
    for &p in &corpus.simplicity_p {
        cases.push(case(&[("p", p.to_string())], move |_| {
            let pg = Pgl2::new(&fq_make(p, 1)?)?;
            let rep = simplicity(&pg.psl2.as_group());
            Ok(vec![Check::holds(
                "PSL2 is simple",
                rep.simple,
                format!("class sizes {:?}", rep.class_sizes),
            )])
        }));
    }
    for spec in corpus.psi.clone() {
        cases.push(case(&[("factors", spec.label())], move |cfg| {
            let data = spec.build()?;
            let (_, rep) = psi_iso_check(&data, cfg.seed)?;
            Ok(vec![Check::holds(
                "fiber product is isomorphic to the semidirect product",
                rep.ok(),
                format!("order {}, {} pairs, {}", rep.order, rep.pairs_checked, rep.mode),
            )])
        }));
    }
    for pc in corpus.prime_search.clone() {
        let params = [
            ("n", pc.n.to_string()),
            ("r", pc.r.to_string()),
            ("limit", pc.limit.to_string()),
        ];
        cases.push(case(&params, move |_| {
            let found = dirichlet_condition_search(pc.n, pc.r, pc.limit)?;
            let oracle = prime_oracle(pc.n, pc.r, pc.limit);
            let head: Vec<String> = found.iter().take(4).map(|p| p.to_string()).collect();
            Ok(vec![Check::holds(
                "prime search matches the congruence conditions",
                found == oracle,
                format!("{} primes, first {}", found.len(), head.join(" ")),
            )])
        }));
    }
    cases
}

/// Trial division and exact `p^r - 1`, independent of the search.
pub fn prime_oracle(n: u64, r: u64, limit: u64) -> Vec<u64> {
    let is_prime = |p: u64| p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    (2..=limit)
        .filter(|&p| is_prime(p))
        .filter(|&p| {
            let big = (p as u128).pow(r as u32) - 1;
            let n = n as u128;
            big.is_multiple_of(n) && gcd(n, big / n) == 1
        })
        .collect()
}

/// Induced representation of `π|_H` along the canonical transversal.
pub struct InduceInstance {
    pub pi: Rep,
    pub h: Subgroup,
    pub block: BlockRep,
}

impl InduceCase {
    pub fn build(&self) -> Result<InduceInstance> {
        let g = parse_group(&self.group)?;
        let h = parse_subgroup(&g, &self.subgroup)?;
        let pi = parse_rep(&g, &self.rep, self.ell)?;
        let t = transversal_enumerate(&g.group, &h);
        let block = induce(&pi.restrict(&h), &t)?;
        Ok(InduceInstance { pi, h, block })
    }

    pub fn params(&self) -> Vec<(&'static str, String)> {
        let mut v = vec![
            ("group", self.group.clone()),
            ("subgroup", self.subgroup.clone()),
            ("rep", self.rep.clone()),
        ];
        if let Some(l) = self.ell {
            v.push(("ell", l.to_string()));
        }
        v
    }
}

/// Subgroups `H'` used for the restricted statements: trivial, `H`, `G`,
/// the cyclic subgroup of the first non-trivial representative and one of an
/// element outside `H`, deduplicated.
pub fn subgroup_shapes(inst: &InduceInstance) -> Result<Vec<Subgroup>> {
    let g = inst.block.group();
    let t = &inst.block.transversal;
    let mut out = vec![Subgroup::trivial(g), inst.h.clone(), Subgroup::whole(g)];
    if t.len() > 1 {
        out.push(subgroup_generated(g, &[t.reps()[1]])?);
    }
    if let Some(x) = g.elements().filter(|&x| !inst.h.contains(x)).last() {
        out.push(subgroup_generated(g, &[x])?);
    }
    let mut seen = BTreeSet::new();
    out.retain(|s| seen.insert(s.members().to_vec()));
    Ok(out)
}

/// Every per-instance check of the induce suite.
pub fn induce_checks(ic: &InduceCase, cfg: &RunConfig) -> Result<Vec<Check>> {
    let inst = ic.build()?;
    let b = &inst.block;
    let pi = &inst.pi;
    let n = b.n();
    let mut checks = vec![
        Check::holds("induced matrices form a representation", b.rho.verify(cfg.seed).ok, ""),
        Check::holds("induced matrices have the block structure", b.block_structure_holds(), ""),
    ];
    let (_, ex) = exact_sequence_gamma(b)?;
    checks.push(Check::holds(
        "image sequence 1 -> rho(H) -> rho(G) -> G/H -> 1 is exact",
        ex.exact(n),
        format!("|rho(G)| = {}, |rho(H)| = {}", ex.rho_g_order, ex.rho_h_order),
    ));
    let iso = rho_h_image_iso(b, pi)?;
    checks.push(Check::holds(
        "first-block projection rho(H) -> pi(H) is an isomorphism",
        iso.is_bijective(),
        format!("order {}", iso.domain().order()),
    ));
    let sweep = product_relation_batch(b, pi)?;
    checks.push(Check::holds(
        "product relation of representatives matches pi and cosets",
        sweep.violations.is_empty(),
        format!("{} triples, {} with both sides true", sweep.triples, sweep.both_true),
    ));
    let split = induced_split_check(b, Some(pi))?;
    checks.push(Check::holds(
        "split verdict agrees with the independent searches",
        split.consistent(),
        format!("{:?}, direct search {:?}", split.verdict, split.brute_force),
    ));
    if let Some(c) = &split.cyclic {
        checks.push(Check::holds(
            "cyclic quotient: rho(s)^n = 1 iff pi(s)^n = 1",
            c.iff_holds.unwrap_or(false),
            format!("{} generators", c.generators_checked),
        ));
    }
    // Another transversal: multiply each representative by an element of H.
    let g = b.group();
    let hx = *inst.h.members().last().expect("non-empty");
    let mut reps = vec![g.identity()];
    reps.extend(b.transversal.reps()[1..].iter().map(|&s| g.mul(hx, s)));
    let other = induce(&b.sigma, &Transversal::new(g, &inst.h, reps)?)?;
    let p = transversal_change_of_basis(b, &other)?;
    let f = b.rho.field();
    let pinv = p.inverse(f);
    let conj = pinv.is_some_and(|pi_| {
        g.elements()
            .all(|x| p.mul(b.rho.matrix(x), f).mul(&pi_, f) == *other.rho.matrix(x))
    });
    checks.push(Check::holds("changing the transversal conjugates the image", conj, ""));
    if n >= 2 {
        if let Some(s) = cyclic_coset_generator(g, &inst.h) {
            let powers: Vec<Elem> = (0..n as i64).map(|k| g.pow(s, k)).collect();
            let bc = induce(&b.sigma, &Transversal::new(g, &inst.h, powers)?)?;
            let m = b.m();
            let mut expected = Matrix::zeros(n * m);
            for p in 0..n - 1 {
                expected.put_block(p * m, (p + 1) * m, &Matrix::identity(m));
            }
            expected.put_block((n - 1) * m, 0, pi.matrix(g.pow(s, n as i64)));
            checks.push(Check::holds(
                "cyclic transversal: rho(s) has identity blocks and pi(s^n) in the corner",
                *bc.rho.matrix(s) == expected,
                "",
            ));
        }
    }
    for hp in subgroup_shapes(&inst)? {
        let r = general_subgroup_sequence(b, pi, &hp)?;
        checks.push(Check::holds(
            format!("sequence for a subgroup H' of order {}", hp.order()),
            r.holds(),
            format!(
                "|H' ∩ H| = {}, split {:?}, H ⊆ H' {}",
                r.intersection_order, r.split.verdict, r.h_in_hprime
            ),
        ));
    }
    Ok(checks)
}

fn induce_cases(corpus: &Corpus) -> Vec<Case> {
    corpus
        .induce
        .iter()
        .cloned()
        .map(|ic| case(&ic.params(), move |cfg| induce_checks(&ic, cfg)))
        .collect()
}

fn repalg_cases(corpus: &Corpus) -> Vec<Case> {
    let mut cases = Vec::new();
    for pc in corpus.pairs.clone() {
        let mut params = vec![("group", pc.group.clone()), ("reps", pc.reps.join(" + "))];
        if let Some(l) = pc.ell {
            params.push(("ell", l.to_string()));
        }
        cases.push(case(&params, move |_| {
            let g = parse_group(&pc.group)?;
            let reps = pc
                .reps
                .iter()
                .map(|r| parse_rep(&g, r, pc.ell))
                .collect::<Result<Vec<_>>>()?;
            let tuple = direct_sum_tuple_check(&reps)?;
            let (_, iso) = tensor_directsum_image_iso(&reps)?;
            Ok(vec![
                Check::holds(
                    "projective image of a direct sum is the tuple of projective images",
                    tuple.bijective,
                    format!("orders {} and {}", tuple.sum_image_order, tuple.tuple_group_order),
                ),
                Check::holds(
                    "projective images of direct sum and tensor product are isomorphic",
                    iso.ok(),
                    format!("orders {} and {}", iso.sum_image_order, iso.tensor_image_order),
                ),
            ])
        }));
    }
    for &q in &corpus.scalar_q {
        for dims in [(2, 2), (2, 3)] {
            let params = [("q", q.to_string()), ("dims", format!("{}x{}", dims.0, dims.1))];
            cases.push(case(&params, move |cfg| {
                let r = scalar_detection(&field_of_order(q)?, dims, cfg.samples, cfg.seed);
                Ok(vec![Check::holds(
                    "Kronecker product is scalar only for scalar factors",
                    r.violations == 0,
                    format!("{} pairs, {} scalar products", r.pairs, r.scalar_products),
                )])
            }));
        }
    }
    for ic in corpus.induce.clone() {
        cases.push(case(&ic.params(), move |_| {
            let inst = ic.build()?;
            pair_group_checks(&inst.block, &inst.pi, &subgroup_shapes(&inst)?)
        }));
    }
    for &p in &corpus.pgl_psl_p {
        cases.push(case(&[("p", p.to_string())], move |cfg| {
            Ok(pgl_psl_analysis(&fq_make(p, 1)?, cfg.seed)?.checks)
        }));
    }
    for &p in &corpus.adjoint_p {
        cases.push(case(&[("p", p.to_string())], move |_| {
            let model = adjoint_model(&fq_make(p, 1)?)?;
            let psl = &model.product.left;
            let inv = psl
                .elements()
                .find(|&y| y != psl.identity() && psl.mul(y, y) == psl.identity())
                .expect("PSL2 has involutions");
            let mut checks = adjoint_model_checks(&model, psl.identity())?;
            checks.extend(adjoint_model_checks(&model, inv)?);
            let g = &model.product.group;
            let first = crate::grp::GroupHom::new(
                g,
                psl,
                g.elements().map(|e| model.product.split(e).0).collect(),
            )?;
            for (label, h) in [("PSL2 x 1", model.h.clone()), ("G", Subgroup::whole(g))] {
                checks.push(Check::holds(
                    format!("simple image is reached by the normal subgroup {label}"),
                    simple_image_propagation(&first, &h)?,
                    "",
                ));
            }
            Ok(checks)
        }));
    }
    cases
}

/// Report for checks run outside a suite, e.g. from a single CLI invocation.
pub fn checks_report(suite: &str, params: &[(&str, String)], checks: Vec<Check>, cfg: &RunConfig) -> VerificationReport {
    let parameters: BTreeMap<String, String> = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    let rows = checks
        .into_iter()
        .map(|ch| CaseResult {
            statement_id: ch.name,
            parameters: parameters.clone(),
            verdict: ch.outcome,
            witness: (!ch.detail.is_empty()).then_some(ch.detail),
            elapsed_ms: None,
        })
        .collect();
    VerificationReport::new(suite, cfg.seed, cfg.samples, rows)
}

pub fn run_suite(suite: &str, corpus: &Corpus, cfg: &RunConfig) -> Result<VerificationReport> {
    let mut rows = Vec::new();
    let parts: Vec<&str> = match suite {
        "all" => vec!["section2", "induce", "repalg"],
        "section2" | "induce" | "repalg" => vec![suite],
        _ => return Err(Error::Parse(format!("unknown suite {suite:?}"))),
    };
    for part in parts {
        let cases = match part {
            "section2" => matrix_group_cases(corpus),
            "induce" => induce_cases(corpus),
            _ => repalg_cases(corpus),
        };
        rows.extend(execute(cases, cfg, part));
    }
    Ok(VerificationReport::new(suite, cfg.seed, cfg.samples, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_oracle_agrees_on_small_limits() {
        assert_eq!(prime_oracle(4, 1, 40), vec![5, 13, 29, 37]);
        assert_eq!(prime_oracle(6, 5, 200), dirichlet_condition_search(6, 5, 200).unwrap());
    }

    #[test]
    fn corpus_round_trips_through_json() {
        let c = Corpus::default();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<Corpus>(&text).unwrap(), c);
        let partial: Corpus = serde_json::from_str(r#"{"derived_q": [2]}"#).unwrap();
        assert_eq!(partial.derived_q, vec![2]);
        assert_eq!(partial.witness_p, c.witness_p);
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nosuch", &Corpus::default(), &RunConfig::default()).is_err());
    }
}
