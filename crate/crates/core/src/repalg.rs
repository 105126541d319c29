//! Direct sums and tensor products of representations, projective images,
//! the pair groups `L = {(π(g), ρ(g))}` and their restrictions to a subgroup,
//! and the group-level facts about `PSL_2` and `PGL_2`.

use std::collections::{BTreeSet, HashMap};

use num_integer::gcd;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::grp::{
    cyclic, is_isomorphic, order_histogram, verify_isomorphism, DirectProduct, Elem, FiniteGroup, GroupHom,
    GroupOracle, Subgroup, Transversal,
};
use crate::induce::{induce, BlockRep, Rep, DIM_CAP};
use crate::linalg::Matrix;
use crate::matgrp::{psl2_order2_witness, simplicity, MatrixGroup, Pgl2};
use crate::report::Check;
use crate::split::{is_complement, multiplicative_transversal_search};

/// A representation together with its image in `PGL`.
#[derive(Clone, Debug)]
pub struct ProjRep {
    pub base: Rep,
    pub image: MatrixGroup,
    /// `g -> class of base(g)`.
    pub proj: GroupHom,
}

impl ProjRep {
    pub fn new(base: &Rep) -> Result<ProjRep> {
        let (image, proj) = base.projective_image()?;
        Ok(ProjRep {
            base: base.clone(),
            image,
            proj,
        })
    }

    pub fn kernel(&self) -> Subgroup {
        self.proj.kernel()
    }
}

fn common_group(reps: &[Rep]) -> Result<(FiniteGroup, FieldSpec)> {
    let first = reps.first().ok_or(Error::GroupMismatch)?;
    for r in reps {
        if !r.group().same(first.group()) || r.field().q() != first.field().q() {
            return Err(Error::GroupMismatch);
        }
    }
    Ok((first.group().clone(), first.field().clone()))
}

/// `g -> diag(π_1(g), ..., π_k(g))`.
pub fn direct_sum(reps: &[Rep]) -> Result<Rep> {
    let (g, f) = common_group(reps)?;
    let dim: usize = reps.iter().map(|r| r.dim()).sum();
    if dim > DIM_CAP {
        return Err(Error::DimCap(dim));
    }
    let mats = g
        .elements()
        .map(|x| {
            let blocks: Vec<&Matrix> = reps.iter().map(|r| r.matrix(x)).collect();
            Matrix::block_diag(&blocks)
        })
        .collect();
    Rep::from_matrices(&g, &f, mats)
}

/// `g -> π_1(g) ⊗ ... ⊗ π_k(g)` with row-major Kronecker blocks.
pub fn tensor(reps: &[Rep]) -> Result<Rep> {
    let (g, f) = common_group(reps)?;
    reps.iter()
        .try_fold(1usize, |acc, r| acc.checked_mul(r.dim()).filter(|&d| d <= DIM_CAP))
        .ok_or_else(|| Error::DimCap(reps.iter().map(|r| r.dim()).product()))?;
    let mats = g
        .elements()
        .map(|x| {
            reps[1..]
                .iter()
                .fold(reps[0].matrix(x).clone(), |acc, r| acc.kron(r.matrix(x), &f))
        })
        .collect();
    Rep::from_matrices(&g, &f, mats)
}

/// `(A^-1)^T` elementwise.
pub fn dual(rep: &Rep) -> Result<Rep> {
    let f = rep.field();
    let mats = rep
        .matrices()
        .iter()
        .map(|m| m.inverse(f).expect("invertible").transpose())
        .collect();
    Rep::from_matrices(rep.group(), f, mats)
}

struct GraphOracle {
    comps: Vec<FiniteGroup>,
    elems: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, Elem>,
    identity: Elem,
    name: String,
}

impl GraphOracle {
    fn lookup(&self, t: Vec<Elem>) -> Elem {
        self.index[&t]
    }
}

impl GroupOracle for GraphOracle {
    fn order(&self) -> usize {
        self.elems.len()
    }

    fn identity(&self) -> Elem {
        self.identity
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (&self.elems[a as usize], &self.elems[b as usize]);
        self.lookup(self.comps.iter().zip(x.iter().zip(y)).map(|(g, (&u, &v))| g.mul(u, v)).collect())
    }

    fn inv(&self, a: Elem) -> Elem {
        let x = &self.elems[a as usize];
        self.lookup(self.comps.iter().zip(x).map(|(g, &u)| g.inv(u)).collect())
    }

    fn name(&self) -> String {
        self.name.clone()
    }

    fn label(&self, a: Elem) -> String {
        let parts: Vec<String> = self
            .comps
            .iter()
            .zip(&self.elems[a as usize])
            .map(|(g, &u)| g.label(u))
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// `{(f_1(d), ..., f_k(d)) : d ∈ D}` for homomorphisms `f_i` out of a common group.
#[derive(Clone, Debug)]
pub struct GraphGroup {
    pub domain: Subgroup,
    pub group: FiniteGroup,
    /// `D -> graph`, on `D.as_group()` indices.
    pub graph: GroupHom,
    pub projections: Vec<GroupHom>,
}

pub fn graph_group(homs: &[GroupHom], domain: &Subgroup, name: &str) -> Result<GraphGroup> {
    let first = homs.first().ok_or(Error::GroupMismatch)?;
    if homs.iter().any(|h| !h.domain().same(first.domain())) || !domain.parent().same(first.domain()) {
        return Err(Error::GroupMismatch);
    }
    let tuple = |d: Elem| -> Vec<Elem> { homs.iter().map(|h| h.apply(d)).collect() };
    let mut elems: Vec<Vec<Elem>> = domain.members().iter().map(|&d| tuple(d)).collect();
    elems.sort();
    elems.dedup();
    let index: HashMap<Vec<Elem>, Elem> = elems.iter().enumerate().map(|(i, t)| (t.clone(), i as Elem)).collect();
    let identity = index[&tuple(domain.parent().identity())];
    let comps: Vec<FiniteGroup> = homs.iter().map(|h| h.codomain().clone()).collect();
    let oracle = GraphOracle {
        comps: comps.clone(),
        elems: elems.clone(),
        index: index.clone(),
        identity,
        name: name.to_string(),
    };
    let group = FiniteGroup::from_oracle(oracle);
    let graph_map = domain.members().iter().map(|&d| index[&tuple(d)]).collect();
    let graph = GroupHom::new(&domain.as_group(), &group, graph_map)?;
    let projections = comps
        .iter()
        .enumerate()
        .map(|(j, c)| GroupHom::new(&group, c, elems.iter().map(|t| t[j]).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(GraphGroup {
        domain: domain.clone(),
        group,
        graph,
        projections,
    })
}

/// `{(A(d), B(d)) : d ∈ D}` with `Φ` the first and `Ψ` the second projection.
#[derive(Clone, Debug)]
pub struct PairGroup {
    pub graph: GraphGroup,
}

impl PairGroup {
    pub fn group(&self) -> &FiniteGroup {
        &self.graph.group
    }

    pub fn phi(&self) -> &GroupHom {
        &self.graph.projections[0]
    }

    pub fn psi(&self) -> &GroupHom {
        &self.graph.projections[1]
    }

    /// Pair-group element of `d ∈ D` (a parent index).
    pub fn of(&self, d: Elem) -> Elem {
        let pos = self.graph.domain.position(d).expect("element of the domain");
        self.graph.graph.apply(pos as Elem)
    }
}

/// The pair group of two homomorphisms into image groups, over `G` or a subgroup.
pub fn pair_group(a: &GroupHom, b: &GroupHom, domain: Option<&Subgroup>) -> Result<PairGroup> {
    if !a.domain().same(b.domain()) {
        return Err(Error::GroupMismatch);
    }
    let whole = Subgroup::whole(a.domain());
    let d = domain.unwrap_or(&whole);
    let name = if d.order() == whole.order() { "L" } else { "N" };
    Ok(PairGroup {
        graph: graph_group(&[a.clone(), b.clone()], d, name)?,
    })
}

/// Projective image of a direct sum against `{(π̃_1(g), ..., π̃_k(g))}`:
/// the class-to-tuple map must be a well-defined bijection.
#[derive(Clone, Debug, Serialize)]
pub struct TupleImageReport {
    pub sum_image_order: usize,
    pub tuple_group_order: usize,
    pub bijective: bool,
    /// Two elements with the same tuple but different direct-sum classes.
    pub counterexample: Option<(Elem, Elem)>,
}

pub fn direct_sum_tuple_check(reps: &[Rep]) -> Result<TupleImageReport> {
    let sum = ProjRep::new(&direct_sum(reps)?)?;
    let parts = reps.iter().map(ProjRep::new).collect::<Result<Vec<_>>>()?;
    let homs: Vec<GroupHom> = parts.iter().map(|p| p.proj.clone()).collect();
    let tuples = graph_group(&homs, &Subgroup::whole(sum.base.group()), "tuple image")?;
    let (bijective, counterexample) = compare_by_element(&sum.proj, &tuples.graph);
    Ok(TupleImageReport {
        sum_image_order: sum.image.group().order(),
        tuple_group_order: tuples.group.order(),
        bijective,
        counterexample,
    })
}

/// Whether `f(g) -> h(g)` is a well-defined bijection between the images of
/// two maps on the same group; otherwise a pair `g, g'` on which they disagree.
fn compare_by_element(f: &GroupHom, h: &GroupHom) -> (bool, Option<(Elem, Elem)>) {
    let mut fwd: HashMap<Elem, (Elem, Elem)> = HashMap::new();
    let mut back: HashMap<Elem, (Elem, Elem)> = HashMap::new();
    for x in f.domain().elements() {
        let (a, b) = (f.apply(x), h.apply(x));
        if let Some(&(b0, x0)) = fwd.get(&a) {
            if b0 != b {
                return (false, Some((x0, x)));
            }
        } else {
            fwd.insert(a, (b, x));
        }
        if let Some(&(a0, x0)) = back.get(&b) {
            if a0 != a {
                return (false, Some((x0, x)));
            }
        } else {
            back.insert(b, (a, x));
        }
    }
    (true, None)
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorIsoReport {
    pub sum_image_order: usize,
    pub tensor_image_order: usize,
    pub well_defined: bool,
    pub injective: bool,
    pub homomorphism: bool,
    /// Elements with equal tensor classes and different direct-sum classes, or the reverse.
    pub counterexample: Option<(Elem, Elem)>,
}

impl TensorIsoReport {
    pub fn ok(&self) -> bool {
        self.well_defined && self.injective && self.homomorphism
    }
}

/// `τ̃`: class of `diag(A_1, ..., A_k)` to class of `A_1 ⊗ ... ⊗ A_k`, from the
/// projective image of the direct sum to that of the tensor product.
pub fn tensor_directsum_image_iso(reps: &[Rep]) -> Result<(Option<GroupHom>, TensorIsoReport)> {
    let sum = ProjRep::new(&direct_sum(reps)?)?;
    let ten = ProjRep::new(&tensor(reps)?)?;
    let (sg, tg) = (sum.image.group(), ten.image.group());
    let mut map = vec![Elem::MAX; sg.order()];
    let mut counterexample = None;
    let mut witness_of = vec![0; sg.order()];
    for x in sum.base.group().elements() {
        let (a, b) = (sum.proj.apply(x) as usize, ten.proj.apply(x));
        if map[a] == Elem::MAX {
            map[a] = b;
            witness_of[a] = x;
        } else if map[a] != b && counterexample.is_none() {
            counterexample = Some((witness_of[a], x));
        }
    }
    let well_defined = counterexample.is_none();
    if !well_defined {
        let report = TensorIsoReport {
            sum_image_order: sg.order(),
            tensor_image_order: tg.order(),
            well_defined,
            injective: false,
            homomorphism: false,
            counterexample,
        };
        return Ok((None, report));
    }
    let hom = GroupHom::new(sg, tg, map)?;
    let injective = hom.is_bijective();
    let counterexample = if injective {
        None
    } else {
        compare_by_element(&sum.proj, &ten.proj).1
    };
    let report = TensorIsoReport {
        sum_image_order: sg.order(),
        tensor_image_order: tg.order(),
        well_defined,
        injective,
        homomorphism: hom.verify(0).ok,
        counterexample,
    };
    Ok((Some(hom), report))
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalarDetectionReport {
    pub q: u32,
    pub dims: (usize, usize),
    pub pairs: usize,
    /// Pairs whose Kronecker product was scalar.
    pub scalar_products: usize,
    pub violations: usize,
}

fn random_invertible(rng: &mut ChaCha8Rng, f: &FieldSpec, dim: usize) -> Matrix {
    let q = f.q();
    loop {
        let m = Matrix::from_data(dim, (0..dim * dim).map(|_| rng.gen_range(0..q)).collect());
        if m.inverse(f).is_some() {
            return m;
        }
    }
}

/// `A ⊗ B` scalar exactly when both factors are scalar, on random invertible
/// pairs; half of the factors are drawn as scalars so both cases occur.
pub fn scalar_detection(f: &FieldSpec, dims: (usize, usize), samples: usize, seed: u64) -> ScalarDetectionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = f.q();
    let draw = |rng: &mut ChaCha8Rng, d: usize| {
        if rng.gen_bool(0.5) {
            Matrix::scalar(d, rng.gen_range(1..q))
        } else {
            random_invertible(rng, f, d)
        }
    };
    let mut scalar_products = 0;
    let mut violations = 0;
    for _ in 0..samples {
        let a = draw(&mut rng, dims.0);
        let b = draw(&mut rng, dims.1);
        let k = a.kron(&b, f);
        let ks = k.scalar_value();
        let (sa, sb) = (a.scalar_value(), b.scalar_value());
        if ks.is_some() {
            scalar_products += 1;
        }
        let consistent = match (ks, sa, sb) {
            (Some(l), Some(x), Some(y)) => l == f.mul(x, y),
            (None, Some(_), Some(_)) => false,
            (Some(_), _, _) => false,
            (None, _, _) => true,
        };
        if !consistent {
            violations += 1;
        }
    }
    ScalarDetectionReport {
        q,
        dims,
        pairs: samples,
        scalar_products,
        violations,
    }
}

/// A representation `π` of `G`, the rep `ρ` induced from `π|_H`, and their
/// images in `GL` or in `PGL`.
#[derive(Clone, Debug)]
pub struct PairSetting {
    pub block: BlockRep,
    pub pi: Rep,
    pub projective: bool,
    pub pi_hom: GroupHom,
    pub rho_hom: GroupHom,
}

impl PairSetting {
    pub fn new(block: &BlockRep, pi: &Rep, projective: bool) -> Result<PairSetting> {
        let h = block.subgroup();
        let restricts = pi.group().same(block.group())
            && pi.field().q() == block.sigma.field().q()
            && h
                .members()
                .iter()
                .enumerate()
                .all(|(i, &x)| pi.matrix(x) == block.sigma.matrix(i as Elem));
        if !restricts {
            return Err(Error::NotInducedPair);
        }
        let (pi_hom, rho_hom) = if projective {
            (pi.projective_image()?.1, block.rho.projective_image()?.1)
        } else {
            (pi.image()?.1, block.rho.image()?.1)
        };
        Ok(PairSetting {
            block: block.clone(),
            pi: pi.clone(),
            projective,
            pi_hom,
            rho_hom,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.block.group()
    }

    pub fn h(&self) -> &Subgroup {
        self.block.subgroup()
    }

    pub fn pair(&self, domain: &Subgroup) -> Result<PairGroup> {
        pair_group(&self.pi_hom, &self.rho_hom, Some(domain))
    }

    /// `ker π` (or `ker π̃`).
    pub fn kernel_pi(&self) -> Subgroup {
        self.pi_hom.kernel()
    }

    fn pi_set(&self, members: &[Elem]) -> BTreeSet<Elem> {
        members.iter().map(|&x| self.pi_hom.apply(x)).collect()
    }

    fn tag(&self) -> &'static str {
        if self.projective {
            "projective"
        } else {
            "linear"
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelPhiReport {
    pub projective: bool,
    pub domain_order: usize,
    pub pair_order: usize,
    pub psi_isomorphism: bool,
    pub ker_phi_order: usize,
    pub ker_pi_order: usize,
    pub ker_pi_h_order: usize,
    /// `Ω: ker Φ -> D/(D ∩ H)`, through cosets of `H`, is well defined and injective.
    pub omega_injective: bool,
    /// Cosets `H s_i` meeting `ker π ∩ D`.
    pub j: Vec<usize>,
    pub omega_image_is_j: bool,
    /// For cyclic `G/H` and `D = G`: kernel elements match the block display with `π(s^-i)` and `π(s^(n-i))`.
    pub theta_matches: Option<bool>,
}

impl KernelPhiReport {
    pub fn kernel_formula_holds(&self) -> bool {
        self.ker_pi_order == self.ker_phi_order * self.ker_pi_h_order
            && self.omega_injective
            && self.omega_image_is_j
            && self.j.len() == self.ker_phi_order
    }
}

/// `Ψ` is an isomorphism and `ker Φ ≅ (ker π ∩ D)/(ker π ∩ D ∩ H)`, embedded in `G/H`.
pub fn kernel_phi_analysis(s: &PairSetting, domain: &Subgroup) -> Result<KernelPhiReport> {
    let pair = s.pair(domain)?;
    let t = &s.block.transversal;
    let psi_isomorphism = pair.psi().is_injective() && pair.psi().verify(0).ok;
    let ker_phi = pair.phi().kernel();
    let ker_pi_d = s.kernel_pi().intersection(domain);
    let ker_pi_dh = ker_pi_d.intersection(s.h());
    let mut omega: HashMap<Elem, usize> = HashMap::new();
    let mut well_defined = true;
    for &d in ker_pi_d.members() {
        let l = pair.of(d);
        let c = t.coset_of(d);
        if *omega.entry(l).or_insert(c) != c {
            well_defined = false;
        }
    }
    let image: BTreeSet<usize> = omega.values().copied().collect();
    let omega_injective = well_defined && image.len() == omega.len() && omega.len() == ker_phi.order();
    let j: Vec<usize> = ker_pi_d.members().iter().map(|&d| t.coset_of(d)).collect::<BTreeSet<_>>().into_iter().collect();
    let omega_image_is_j = image.iter().copied().eq(j.iter().copied());
    let theta_matches = if !s.projective && domain.order() == s.group().order() {
        theta_check(s)?
    } else {
        None
    };
    Ok(KernelPhiReport {
        projective: s.projective,
        domain_order: domain.order(),
        pair_order: pair.group().order(),
        psi_isomorphism,
        ker_phi_order: ker_phi.order(),
        ker_pi_order: ker_pi_d.order(),
        ker_pi_h_order: ker_pi_dh.order(),
        omega_injective,
        j,
        omega_image_is_j,
        theta_matches,
    })
}

/// Least `s` whose powers `1, s, ..., s^(n-1)` meet every coset of `H`.
pub fn cyclic_coset_generator(g: &FiniteGroup, h: &Subgroup) -> Option<Elem> {
    let n = h.index();
    g.elements().find(|&x| {
        let mut y = g.identity();
        (0..n).all(|k| {
            let ok = k == 0 || !h.contains(y);
            y = g.mul(y, x);
            ok
        })
    })
}

fn theta_check(s: &PairSetting) -> Result<Option<bool>> {
    let g = s.group();
    let h = s.h();
    let n = h.index();
    if n < 2 {
        return Ok(None);
    }
    let Some(gen) = cyclic_coset_generator(g, h) else {
        return Ok(None);
    };
    let powers: Vec<Elem> = (0..n as i64).map(|k| g.pow(gen, k)).collect();
    let t = Transversal::new(g, h, powers)?;
    let b = induce(&s.block.sigma, &t)?;
    let m = b.m();
    let ok = s.pi.kernel().members().iter().all(|&x| {
        let i = t.coset_of(x);
        let mut theta = Matrix::zeros(n * m);
        for p in 0..n {
            let (q, e) = if p + i < n {
                (p + i, -(i as i64))
            } else {
                (p + i - n, (n - i) as i64)
            };
            theta.put_block(p * m, q * m, s.pi.matrix(g.pow(gen, e)));
        }
        *b.rho.matrix(x) == theta
    });
    Ok(Some(ok))
}

/// `{g ∈ D : π(g) ∈ π(D ∩ H)}`.
pub fn largest_equal_image_subgroup(pi: &GroupHom, h: &Subgroup, domain: &Subgroup) -> Result<Subgroup> {
    let k = domain.intersection(h);
    let target: BTreeSet<Elem> = k.members().iter().map(|&x| pi.apply(x)).collect();
    let members: Vec<Elem> = domain
        .members()
        .iter()
        .copied()
        .filter(|&x| target.contains(&pi.apply(x)))
        .collect();
    Subgroup::from_set(domain.parent(), &members)
}

/// Subgroups between `D ∩ H` and `D`, as unions of cosets of `H` met by `D`.
fn intermediate_subgroups(domain: &Subgroup, t: &Transversal) -> Vec<(BTreeSet<usize>, Subgroup)> {
    let cosets: Vec<usize> = domain
        .members()
        .iter()
        .map(|&d| t.coset_of(d))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .filter(|&c| c != 0)
        .collect();
    if cosets.len() > 12 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << cosets.len()) {
        let mut chosen: BTreeSet<usize> = (0..cosets.len()).filter(|i| mask >> i & 1 == 1).map(|i| cosets[i]).collect();
        chosen.insert(0);
        let members: Vec<Elem> = domain
            .members()
            .iter()
            .copied()
            .filter(|&d| chosen.contains(&t.coset_of(d)))
            .collect();
        if let Ok(sub) = Subgroup::from_set(domain.parent(), &members) {
            out.push((chosen, sub));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LargestSubgroupReport {
    pub largest_order: usize,
    pub contains_intersection: bool,
    /// `Ω(ker Φ)` is exactly the cosets of the largest subgroup.
    pub kernel_is_quotient: bool,
    /// `ker Φ = D/(D ∩ H)` agrees with `π(D) = π(D ∩ H)`.
    pub full_kernel_iff: bool,
    /// For every intermediate subgroup `G'`: `ker Φ = G'/(D ∩ H)` agrees with `G'` being largest.
    pub intermediate_checked: usize,
    pub intermediate_agree: bool,
}

impl LargestSubgroupReport {
    pub fn holds(&self) -> bool {
        self.contains_intersection && self.kernel_is_quotient && self.full_kernel_iff && self.intermediate_agree
    }
}

pub fn largest_subgroup_check(s: &PairSetting, domain: &Subgroup) -> Result<LargestSubgroupReport> {
    let t = &s.block.transversal;
    let k = domain.intersection(s.h());
    let largest = largest_equal_image_subgroup(&s.pi_hom, s.h(), domain)?;
    let pair = s.pair(domain)?;
    let ker_phi_cosets: BTreeSet<usize> = s
        .kernel_pi()
        .intersection(domain)
        .members()
        .iter()
        .map(|&d| t.coset_of(d))
        .collect();
    let cosets_of = |sub: &Subgroup| -> BTreeSet<usize> { sub.members().iter().map(|&d| t.coset_of(d)).collect() };
    let d_cosets = cosets_of(domain);
    let pi_k = s.pi_set(k.members());
    let full_lhs = ker_phi_cosets == d_cosets && pair.phi().kernel().order() == d_cosets.len();
    let full_rhs = s.pi_set(domain.members()) == pi_k;
    let candidates = intermediate_subgroups(domain, t);
    let with_equal_image: Vec<&(BTreeSet<usize>, Subgroup)> =
        candidates.iter().filter(|(_, sub)| s.pi_set(sub.members()) == pi_k).collect();
    let intermediate_agree = candidates.iter().all(|(chosen, sub)| {
        let lhs = *chosen == ker_phi_cosets;
        let rhs = s.pi_set(sub.members()) == pi_k
            && with_equal_image
                .iter()
                .all(|(_, other)| !(sub.is_subset(other) && other.order() > sub.order()));
        lhs == rhs
    });
    Ok(LargestSubgroupReport {
        largest_order: largest.order(),
        contains_intersection: k.is_subset(&largest),
        kernel_is_quotient: cosets_of(&largest) == ker_phi_cosets,
        full_kernel_iff: full_lhs == full_rhs,
        intermediate_checked: candidates.len(),
        intermediate_agree,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LSplitReport {
    pub applicable: bool,
    pub well_defined: bool,
    pub homomorphism: bool,
    pub section: bool,
    /// `|pair group| = |π(D)| · [D : D ∩ H]`.
    pub order_matches: bool,
    #[serde(skip)]
    pub iota: Option<GroupHom>,
}

impl LSplitReport {
    pub fn split(&self) -> bool {
        self.applicable && self.well_defined && self.homomorphism && self.section && self.order_matches
    }
}

/// When `π(D) = π(D ∩ H)`: `ι(π(k)) = (π(k), ρ(k))` for `k ∈ D ∩ H` is a
/// well-defined homomorphism with `Φ∘ι = id`.
pub fn l_split_check(s: &PairSetting, domain: &Subgroup) -> Result<LSplitReport> {
    let k = domain.intersection(s.h());
    let pi_d = s.pi_set(domain.members());
    let applicable = pi_d == s.pi_set(k.members());
    let mut report = LSplitReport {
        applicable,
        well_defined: false,
        homomorphism: false,
        section: false,
        order_matches: false,
        iota: None,
    };
    if !applicable {
        return Ok(report);
    }
    let pair = s.pair(domain)?;
    let image_group = s.pi_hom.codomain();
    let members: Vec<Elem> = pi_d.iter().copied().collect();
    let pi_sub = Subgroup::from_set(image_group, &members)?;
    let mut iota = vec![Elem::MAX; pi_sub.order()];
    let mut well_defined = true;
    for &x in k.members() {
        let pos = pi_sub.position(s.pi_hom.apply(x)).expect("in π(D)");
        let l = pair.of(x);
        if iota[pos] == Elem::MAX {
            iota[pos] = l;
        } else if iota[pos] != l {
            well_defined = false;
        }
    }
    report.well_defined = well_defined;
    if !well_defined {
        return Ok(report);
    }
    let iota = GroupHom::new(&pi_sub.as_group(), pair.group(), iota)?;
    report.homomorphism = iota.verify(0).ok;
    report.section = iota
        .map()
        .iter()
        .enumerate()
        .all(|(i, &l)| pair.phi().apply(l) == pi_sub.members()[i]);
    let n_d = domain.order() / k.order();
    report.order_matches = pair.group().order() == pi_sub.order() * n_d;
    report.iota = Some(iota);
    Ok(report)
}

/// `Φ` injective exactly when `ker π ∩ D ⊆ H`.
pub fn iff_check(s: &PairSetting, domain: &Subgroup) -> Result<(bool, bool)> {
    let pair = s.pair(domain)?;
    let lhs = pair.phi().is_injective();
    let rhs = s.kernel_pi().intersection(domain).is_subset(s.h());
    Ok((lhs, rhs))
}

/// Every statement about `(π, ρ)` and its pair groups, on `G` and on each `H'`.
pub fn pair_group_checks(block: &BlockRep, pi: &Rep, hprimes: &[Subgroup]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let g = block.group();
    let whole = Subgroup::whole(g);
    for projective in [false, true] {
        let s = PairSetting::new(block, pi, projective)?;
        let tag = s.tag();
        let mut domains = vec![("G".to_string(), whole.clone())];
        for hp in hprimes {
            domains.push((format!("H' of order {}", hp.order()), hp.clone()));
        }
        for (label, d) in &domains {
            let kp = kernel_phi_analysis(&s, d)?;
            out.push(Check::holds(
                format!("{tag}: second projection is an isomorphism on {label}"),
                kp.psi_isomorphism,
                format!("pair group order {}", kp.pair_order),
            ));
            out.push(Check::holds(
                format!("{tag}: kernel of first projection on {label}"),
                kp.kernel_formula_holds(),
                format!(
                    "|ker Φ| = {}, |ker π ∩ D| = {}, |ker π ∩ D ∩ H| = {}, J = {:?}",
                    kp.ker_phi_order, kp.ker_pi_order, kp.ker_pi_h_order, kp.j
                ),
            ));
            if let Some(ok) = kp.theta_matches {
                out.push(Check::holds(format!("{tag}: cyclic kernel block display"), ok, ""));
            }
            let (lhs, rhs) = iff_check(&s, d)?;
            out.push(Check::holds(
                format!("{tag}: pair group isomorphic to image iff kernel inside H, on {label}"),
                lhs == rhs,
                format!("Φ injective: {lhs}, ker π ∩ D ⊆ H: {rhs}"),
            ));
            let ls = largest_subgroup_check(&s, d)?;
            out.push(Check::holds(
                format!("{tag}: largest equal-image subgroup on {label}"),
                ls.holds(),
                format!("order {}, {} intermediate subgroups", ls.largest_order, ls.intermediate_checked),
            ));
            let sp = l_split_check(&s, d)?;
            let name = format!("{tag}: pair sequence splits when images agree, on {label}");
            out.push(if sp.applicable {
                Check::holds(name, sp.split(), "")
            } else {
                Check::not_applicable(name, "π(D) ≠ π(D ∩ H)")
            });
        }
        out.extend(corollary_checks(&s)?);
        for hp in hprimes {
            let name = format!("{tag}: H ⊆ H' and π(G) = π(H) give a split sequence on H' of order {}", hp.order());
            let h = s.h();
            if h.is_subset(hp) && s.pi_set(g.elements().collect::<Vec<_>>().as_slice()) == s.pi_set(h.members()) {
                out.push(Check::holds(name, l_split_check(&s, hp)?.split(), ""));
            } else {
                out.push(Check::not_applicable(name, "hypothesis fails"));
            }
        }
    }
    Ok(out)
}

fn corollary_checks(s: &PairSetting) -> Result<Vec<Check>> {
    let tag = s.tag();
    let g = s.group();
    let h = s.h();
    let n = h.index();
    let whole = Subgroup::whole(g);
    let all: Vec<Elem> = g.elements().collect();
    let images_agree = s.pi_set(&all) == s.pi_set(h.members());
    let thm = l_split_check(s, &whole)?;
    let mut out = Vec::new();

    let name = format!("{tag}: cyclic quotient with kernel meeting Hs gives a split");
    let gens: Vec<Elem> = all
        .iter()
        .copied()
        .filter(|&x| {
            let mut y = g.identity();
            (0..n).all(|k| {
                let ok = k == 0 || !h.contains(y);
                y = g.mul(y, x);
                ok
            })
        })
        .collect();
    let pi_h = s.pi_set(h.members());
    let hyp: Vec<Elem> = gens
        .iter()
        .copied()
        .filter(|&x| pi_h.contains(&s.pi_hom.apply(x)))
        .collect();
    out.push(if n < 2 || gens.is_empty() || hyp.is_empty() {
        Check::not_applicable(name, "no generator of G/H meets the hypothesis")
    } else {
        Check::holds(name, images_agree && thm.split(), format!("{} generators satisfy the hypothesis", hyp.len()))
    });

    let name = format!("{tag}: closed transversal and coprime orders give a split");
    let rho_img = s.rho_hom.codomain();
    let rho_h: Vec<Elem> = h
        .members()
        .iter()
        .map(|&x| s.rho_hom.apply(x))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rho_h = Subgroup::from_set(rho_img, &rho_h)?;
    let pi_order = s.pi_set(&all).len();
    if gcd(n, pi_order) != 1 {
        out.push(Check::not_applicable(name, format!("gcd({n}, {pi_order}) ≠ 1")));
    } else {
        match multiplicative_transversal_search(rho_img, &rho_h) {
            Ok(Some(_)) => out.push(Check::holds(name, images_agree && thm.split(), "")),
            Ok(None) => out.push(Check::not_applicable(name, "no closed transversal")),
            Err(e) => out.push(Check::indeterminate(name, e.to_string())),
        }
    }
    Ok(out)
}

/// `π̃(H) = S` for a normal subgroup of index below `|S|` when `S` is simple.
pub fn simple_image_propagation(pi: &GroupHom, h: &Subgroup) -> Result<bool> {
    let s = pi.codomain();
    if !h.parent().same(pi.domain()) {
        return Err(Error::GroupMismatch);
    }
    if !h.is_normal() {
        return Err(Error::PreconditionFailed("H is not normal".into()));
    }
    if h.index() >= s.order() {
        return Err(Error::PreconditionFailed("[G:H] is not below |S|".into()));
    }
    if !pi.is_surjective() {
        return Err(Error::PreconditionFailed("the map is not onto S".into()));
    }
    if !simplicity(s).simple {
        return Err(Error::PreconditionFailed("S is not simple".into()));
    }
    let image: BTreeSet<Elem> = h.members().iter().map(|&x| pi.apply(x)).collect();
    Ok(image.len() == s.order())
}

struct TwistOracle {
    n: FiniteGroup,
    alpha: Vec<Elem>,
    name: String,
}

impl GroupOracle for TwistOracle {
    fn order(&self) -> usize {
        2 * self.n.order()
    }

    fn identity(&self) -> Elem {
        2 * self.n.identity()
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (h1, t1) = (a / 2, a % 2);
        let (h2, t2) = (b / 2, b % 2);
        let h2 = if t1 == 1 { self.alpha[h2 as usize] } else { h2 };
        2 * self.n.mul(h1, h2) + (t1 ^ t2)
    }

    fn inv(&self, a: Elem) -> Elem {
        let (h, t) = (a / 2, a % 2);
        let hi = self.n.inv(h);
        2 * (if t == 1 { self.alpha[hi as usize] } else { hi }) + t
    }

    fn name(&self) -> String {
        self.name.clone()
    }

    fn label(&self, a: Elem) -> String {
        format!("({}, {})", self.n.label(a / 2), a % 2)
    }
}

/// `N ⋊ C_2` where the generator acts by the involutive automorphism `alpha`;
/// `(h, t)` has index `2h + t`.
pub fn semidirect_c2(n: &FiniteGroup, alpha: Vec<Elem>, name: &str) -> Result<FiniteGroup> {
    let ok = alpha.len() == n.order()
        && n.elements().all(|x| alpha[alpha[x as usize] as usize] == x)
        && n.generators().iter().all(|&a| {
            n.generators()
                .iter()
                .all(|&b| alpha[n.mul(a, b) as usize] == n.mul(alpha[a as usize], alpha[b as usize]))
        });
    if !ok {
        return Err(Error::NotHomomorphism("action is not an involutive automorphism".into()));
    }
    Ok(FiniteGroup::from_oracle(TwistOracle {
        n: n.clone(),
        alpha,
        name: name.to_string(),
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct PglPslReport {
    pub p: u32,
    pub pgl_order: usize,
    pub psl_order: usize,
    pub witness: String,
    pub checks: Vec<Check>,
}

impl PglPslReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }
}

/// The structure of `PGL_2(F_p)` over `PSL_2(F_p)`.
pub fn pgl_psl_analysis(field: &FieldSpec, seed: u64) -> Result<PglPslReport> {
    let p = field.p();
    if field.r() != 1 || ![5, 7, 11, 13].contains(&p) {
        return Err(Error::BudgetExceeded(format!("p = {p} is outside 5, 7, 11, 13")));
    }
    let pg = Pgl2::new(field)?;
    let pgl = pg.pgl2.group().clone();
    let psl = &pg.psl2;
    let psl_g = psl.as_group();
    let mut checks = Vec::new();

    // (a) the witness class is an order-2 complement
    let w = psl2_order2_witness(field)?;
    let c = pg.class_of(&w);
    let t = Subgroup::from_set(&pgl, &[pgl.identity(), c].into_iter().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>())?;
    let complement = pgl.mul(c, c) == pgl.identity() && c != pgl.identity() && is_complement(psl, &t);
    checks.push(Check::holds("order-2 complement of PSL2 in PGL2", complement, w.render()));
    let alpha: Vec<Elem> = psl
        .members()
        .iter()
        .map(|&x| psl.position(pgl.conj(c, x)).expect("PSL2 is normal") as Elem)
        .collect();
    let sdp = semidirect_c2(&psl_g, alpha, "PSL2 x| C2")?;
    let candidate: Vec<Elem> = sdp
        .elements()
        .map(|e| {
            let h = psl.members()[(e / 2) as usize];
            if e % 2 == 1 {
                pgl.mul(h, c)
            } else {
                h
            }
        })
        .collect();
    let iso = verify_isomorphism(&sdp, &pgl, &candidate, seed)?;
    checks.push(Check::holds("PGL2 is the semidirect product of PSL2 and C2", iso.is_isomorphic(), ""));

    // (b) not a direct product
    let direct = DirectProduct::new(&psl_g, &cyclic(2));
    let (verdict, reason) = match is_isomorphic(&pgl, &direct.group) {
        Ok(o) => (Some(o.is_isomorphic()), format!("{o:?}").chars().take(200).collect::<String>()),
        Err(e) => (None, e.to_string()),
    };
    checks.push(match verdict {
        Some(v) => Check::holds("PGL2 is not PSL2 x C2", !v, reason),
        None => Check::indeterminate("PGL2 is not PSL2 x C2", reason),
    });
    let psl_gens = psl.generators();
    let involutions: Vec<Elem> = pgl
        .elements()
        .filter(|&x| !psl.contains(x) && x != pgl.identity() && pgl.mul(x, x) == pgl.identity())
        .collect();
    let centralizing = involutions
        .iter()
        .filter(|&&x| psl_gens.iter().all(|&y| pgl.mul(x, y) == pgl.mul(y, x)))
        .count();
    checks.push(Check::holds(
        "no order-2 complement of PSL2 in PGL2 centralizes PSL2",
        !involutions.is_empty() && centralizing == 0,
        format!("{} complements checked", involutions.len()),
    ));

    // (c) the action of the witness is outer
    let inner = psl
        .members()
        .iter()
        .find(|&&x| psl_gens.iter().all(|&y| pgl.conj(c, y) == pgl.conj(x, y)));
    checks.push(Check::holds(
        "conjugation by the witness is not inner on PSL2",
        inner.is_none(),
        format!("{} inner automorphisms compared", psl.order()),
    ));

    // (d) inner twists
    let involution = psl
        .members()
        .iter()
        .copied()
        .find(|&y| y != pgl.identity() && pgl.mul(y, y) == pgl.identity())
        .expect("PSL2 has involutions");
    for (label, y) in [("identity", pgl.identity()), ("an involution", involution)] {
        let alpha: Vec<Elem> = psl
            .members()
            .iter()
            .map(|&x| psl.position(pgl.conj(y, x)).expect("closed") as Elem)
            .collect();
        let is_direct = alpha.iter().enumerate().all(|(i, &a)| a as usize == i);
        let model = semidirect_c2(&psl_g, alpha, "inner twist")?;
        let ypos = psl.position(y).expect("in PSL2") as Elem;
        let candidate: Vec<Elem> = model
            .elements()
            .map(|e| {
                let (h, t) = (e / 2, e % 2);
                let h = if t == 1 { psl_g.mul(h, ypos) } else { h };
                direct.pair(h, t)
            })
            .collect();
        let to_direct = verify_isomorphism(&model, &direct.group, &candidate, seed)?;
        checks.push(Check::holds(
            format!("inner twist by {label} is PSL2 x C2"),
            to_direct.is_isomorphic(),
            "",
        ));
        checks.push(Check::holds(
            format!("inner twist by {label} is direct iff the twist is trivial"),
            is_direct == (y == pgl.identity()),
            "",
        ));
        let vs_pgl = is_isomorphic(&model, &pgl);
        checks.push(match vs_pgl {
            Ok(o) => Check::holds(format!("inner twist by {label} is not PGL2"), !o.is_isomorphic(), ""),
            Err(e) => Check::indeterminate(format!("inner twist by {label} is not PGL2"), e.to_string()),
        });
    }

    Ok(PglPslReport {
        p,
        pgl_order: pgl.order(),
        psl_order: psl.order(),
        witness: w.render(),
        checks,
    })
}

/// Matrix of `X -> A X A^-1` on trace-zero `2x2` matrices, in the basis
/// `E12, E21, diag(1, -1)`.
pub fn adjoint_matrix(a: &Matrix, f: &FieldSpec) -> Matrix {
    let ai = a.inverse(f).expect("invertible");
    let one = 1;
    let minus = f.neg(1);
    let basis = [
        Matrix::from_rows(vec![vec![0, one], vec![0, 0]]),
        Matrix::from_rows(vec![vec![0, 0], vec![one, 0]]),
        Matrix::from_rows(vec![vec![one, 0], vec![0, minus]]),
    ];
    let mut out = Matrix::zeros(3);
    for (j, x) in basis.iter().enumerate() {
        let y = a.mul(x, f).mul(&ai, f);
        out.set(0, j, y.get(0, 1));
        out.set(1, j, y.get(1, 0));
        out.set(2, j, y.get(0, 0));
    }
    out
}

/// Finite stand-in for the newform setting: `G = PSL_2(F_p) x C_2`,
/// `π(h, c) = (-1)^c Ad(h)` on trace-zero matrices, `H = PSL_2(F_p) x 1`.
#[derive(Clone, Debug)]
pub struct AdjointModel {
    pub pgl: Pgl2,
    pub product: DirectProduct,
    pub pi: Rep,
    pub h: Subgroup,
}

pub fn adjoint_model(field: &FieldSpec) -> Result<AdjointModel> {
    let pg = Pgl2::new(field)?;
    let psl_g = pg.psl2.as_group();
    let product = DirectProduct::new(&psl_g, &cyclic(2));
    let minus = field.neg(1);
    let mats = product
        .group
        .elements()
        .map(|e| {
            let (h, c) = product.split(e);
            let a = pg.pgl2.matrix(pg.psl2.members()[h as usize]);
            let ad = adjoint_matrix(a, field);
            if c == 1 {
                ad.scale(minus, field)
            } else {
                ad
            }
        })
        .collect();
    let pi = Rep::from_matrices(&product.group, field, mats)?;
    let h_members: Vec<Elem> = psl_g.elements().map(|x| product.pair(x, 0)).collect();
    let h = Subgroup::from_set(&product.group, &h_members)?;
    Ok(AdjointModel {
        pgl: pg,
        product,
        pi,
        h,
    })
}

/// Induced-representation statements on the model, for `s = (y, 1)` with `y^2 = 1`.
pub fn adjoint_model_checks(model: &AdjointModel, y: Elem) -> Result<Vec<Check>> {
    let g = &model.product.group;
    let psl_g = &model.product.left;
    if psl_g.mul(y, y) != psl_g.identity() {
        return Err(Error::PreconditionFailed("y must square to the identity".into()));
    }
    let s = model.product.pair(y, 1);
    let t = Transversal::new(g, &model.h, vec![g.identity(), s])?;
    let sigma = model.pi.restrict(&model.h);
    let b = induce(&sigma, &t)?;
    let pi_t = ProjRep::new(&model.pi)?;
    let rho_t = ProjRep::new(&b.rho)?;
    let label = psl_g.label(y);
    let mut checks = Vec::new();

    let all: Vec<Elem> = g.elements().collect();
    let img = |p: &ProjRep, xs: &[Elem]| -> BTreeSet<Elem> { xs.iter().map(|&x| p.proj.apply(x)).collect() };
    let m_order = img(&pi_t, &all).len();
    let equal_images = img(&pi_t, &all) == img(&pi_t, model.h.members());
    let (first_block_ok, _) = {
        let hg = model.h.as_group();
        let rho_h = GroupHom::new(&hg, rho_t.proj.codomain(), model.h.members().iter().map(|&x| rho_t.proj.apply(x)).collect())?;
        let pi_h = GroupHom::new(&hg, pi_t.proj.codomain(), model.h.members().iter().map(|&x| pi_t.proj.apply(x)).collect())?;
        compare_by_element(&rho_h, &pi_h)
    };
    let rs = rho_t.proj.apply(s);
    let rg = rho_t.proj.codomain();
    let closed = rg.mul(rs, rs) == rg.identity();
    checks.push(Check::holds(
        format!("image of the induced rep is M x| G/H (s = ({label}, 1))"),
        equal_images && rg.order() == m_order * 2 && first_block_ok && closed,
        format!("|M| = {m_order}, |image| = {}", rg.order()),
    ));

    let h_gens: Vec<Elem> = model.h.generators();
    let commutes = h_gens.iter().all(|&x| {
        let rx = rho_t.proj.apply(x);
        rg.mul(rs, rx) == rg.mul(rx, rs)
    });
    let pi_s_trivial = pi_t.proj.apply(s) == pi_t.proj.codomain().identity();
    checks.push(Check::holds(
        format!("semidirect product is direct iff the class of π(s) is trivial (s = ({label}, 1))"),
        commutes == pi_s_trivial,
        format!("direct: {commutes}"),
    ));

    let target = pi_t.proj.apply(s);
    let inner = model.h.members().iter().find(|&&hp| {
        pi_t.proj.apply(hp) == target
            && h_gens.iter().all(|&x| {
                let rx = rho_t.proj.apply(x);
                let rh = rho_t.proj.apply(hp);
                rg.mul(rg.mul(rs, rx), rg.inv(rs)) == rg.mul(rg.mul(rh, rx), rg.inv(rh))
            })
    });
    checks.push(Check::holds(
        format!("conjugation by the class of ρ(s) is inner on ρ(H) (s = ({label}, 1))"),
        inner.is_some(),
        "",
    ));

    match is_isomorphic(rg, model.pgl.pgl2.group()) {
        Ok(o) => checks.push(Check::holds(
            format!("projective image is not PGL2 (s = ({label}, 1))"),
            !o.is_isomorphic(),
            "",
        )),
        Err(e) => checks.push(Check::indeterminate(
            format!("projective image is not PGL2 (s = ({label}, 1))"),
            e.to_string(),
        )),
    }
    Ok(checks)
}

/// Order histogram as `order:count` pairs.
pub fn histogram_string(g: &FiniteGroup) -> String {
    order_histogram(g)
        .iter()
        .map(|(o, c)| format!("{o}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::fq_make;
    use crate::grp::{subgroup_generated, symmetric, transversal_enumerate};
    use crate::matgrp::gl2_group;

    fn c4_rep(c4: &FiniteGroup, f: &FieldSpec, v: u32) -> Rep {
        Rep::from_generator_images(c4, f, &[1], &[Matrix::from_rows(vec![vec![v]])]).unwrap()
    }

    #[test]
    fn sums_and_tensors_of_scalars() {
        let f5 = fq_make(5, 1).unwrap();
        let a = c4_rep(&cyclic(4), &f5, 2);
        let s = direct_sum(&[a.clone(), a.clone()]).unwrap();
        assert_eq!(*s.matrix(1), Matrix::from_rows(vec![vec![2, 0], vec![0, 2]]));
        assert_eq!(ProjRep::new(&s).unwrap().image.group().order(), 1);
        let t = tensor(&[a.clone(), a.clone()]).unwrap();
        assert_eq!(*t.matrix(1), Matrix::from_rows(vec![vec![4]]));
        let (_, rep) = tensor_directsum_image_iso(&[a.clone(), a]).unwrap();
        assert!(rep.ok());
    }

    #[test]
    fn unequal_scalars_break_the_tuple_description() {
        let f5 = fq_make(5, 1).unwrap();
        let c4 = cyclic(4);
        let reps = [c4_rep(&c4, &f5, 2), Rep::trivial(&c4, &f5, 1)];
        let tuple = direct_sum_tuple_check(&reps).unwrap();
        assert_eq!((tuple.sum_image_order, tuple.tuple_group_order), (4, 1));
        assert!(!tuple.bijective);
        let (_, iso) = tensor_directsum_image_iso(&reps).unwrap();
        assert!(!iso.ok());
        assert!(iso.counterexample.is_some());
    }

    #[test]
    fn sl2_f3_natural_pair() {
        let f3 = fq_make(3, 1).unwrap();
        let gl = gl2_group(&f3).unwrap();
        let nat = Rep::natural(gl.group()).unwrap().restrict(&gl.sl2());
        let sum = ProjRep::new(&direct_sum(&[nat.clone(), nat.clone()]).unwrap()).unwrap();
        assert_eq!(sum.image.group().order(), 12);
        let t = tensor(&[nat.clone(), nat.clone()]).unwrap();
        let minus = nat
            .group()
            .elements()
            .find(|&x| nat.matrix(x).scalar_value() == Some(2))
            .unwrap();
        assert!(t.matrix(minus).is_identity());
        let (_, rep) = tensor_directsum_image_iso(&[nat.clone(), dual(&nat).unwrap()]).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.tensor_image_order, 12);
    }

    #[test]
    fn scalar_detection_has_no_violations() {
        let f5 = fq_make(5, 1).unwrap();
        let r = scalar_detection(&f5, (2, 2), 2000, 7);
        assert_eq!(r.violations, 0);
        assert!(r.scalar_products > 0);
    }

    fn c4_setting(v: u32) -> (BlockRep, Rep) {
        let f5 = fq_make(5, 1).unwrap();
        let c4 = cyclic(4);
        let h = subgroup_generated(&c4, &[2]).unwrap();
        let t = transversal_enumerate(&c4, &h);
        let pi = c4_rep(&c4, &f5, v);
        (induce(&pi.restrict(&h), &t).unwrap(), pi)
    }

    #[test]
    fn kernel_of_phi_on_c4() {
        for (v, ker) in [(2, 1), (4, 1), (1, 2)] {
            let (b, pi) = c4_setting(v);
            let s = PairSetting::new(&b, &pi, false).unwrap();
            let r = kernel_phi_analysis(&s, &Subgroup::whole(b.group())).unwrap();
            assert!(r.psi_isomorphism);
            assert!(r.kernel_formula_holds());
            assert_eq!(r.ker_phi_order, ker, "v = {v}");
            assert_ne!(r.theta_matches, Some(false));
        }
    }

    #[test]
    fn largest_subgroup_for_sign_rep() {
        let f7 = fq_make(7, 1).unwrap();
        let s3 = symmetric(3);
        let a3 = crate::grp::derived_subgroup(&s3).unwrap();
        let sign = Rep::from_matrices(
            &s3,
            &f7,
            s3.elements()
                .map(|x| Matrix::from_rows(vec![vec![if a3.contains(x) { 1 } else { 6 }]]))
                .collect(),
        )
        .unwrap();
        let (_, hom) = sign.image().unwrap();
        let g2 = largest_equal_image_subgroup(&hom, &a3, &Subgroup::whole(&s3)).unwrap();
        assert_eq!(g2, a3);
    }

    #[test]
    fn l_split_applicability() {
        let (b, pi) = c4_setting(4);
        let s = PairSetting::new(&b, &pi, false).unwrap();
        assert!(!l_split_check(&s, &Subgroup::whole(b.group())).unwrap().applicable);

        let f7 = fq_make(7, 1).unwrap();
        let c6 = cyclic(6);
        let h = subgroup_generated(&c6, &[2]).unwrap();
        let pi = Rep::from_generator_images(&c6, &f7, &[1], &[Matrix::from_rows(vec![vec![4]])]).unwrap();
        let b = induce(&pi.restrict(&h), &transversal_enumerate(&c6, &h)).unwrap();
        let s = PairSetting::new(&b, &pi, false).unwrap();
        let r = l_split_check(&s, &Subgroup::whole(&c6)).unwrap();
        assert!(r.split());
        let checks = pair_group_checks(&b, &pi, std::slice::from_ref(&h)).unwrap();
        assert!(checks.iter().all(Check::ok), "{checks:?}");
    }

    #[test]
    fn simple_image_on_psl2_times_c2() {
        let f5 = fq_make(5, 1).unwrap();
        let pg = Pgl2::new(&f5).unwrap();
        let psl = pg.psl2.as_group();
        let dp = DirectProduct::new(&psl, &cyclic(2));
        let first = GroupHom::new(&dp.group, &psl, dp.group.elements().map(|e| dp.split(e).0).collect()).unwrap();
        let h = Subgroup::from_set(&dp.group, &psl.elements().map(|x| dp.pair(x, 0)).collect::<Vec<_>>()).unwrap();
        assert!(simple_image_propagation(&first, &h).unwrap());
        assert!(simple_image_propagation(&first, &Subgroup::whole(&dp.group)).unwrap());
        let trivial = Subgroup::trivial(&dp.group);
        assert!(matches!(simple_image_propagation(&first, &trivial), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn pgl_psl_at_five() {
        let f5 = fq_make(5, 1).unwrap();
        let r = pgl_psl_analysis(&f5, 42).unwrap();
        assert_eq!((r.pgl_order, r.psl_order), (120, 60));
        assert!(r.ok(), "{:?}", r.checks);
    }

    #[test]
    fn adjoint_model_at_five() {
        let f5 = fq_make(5, 1).unwrap();
        let model = adjoint_model(&f5).unwrap();
        assert!(model.pi.verify(0).ok);
        let psl = &model.product.left;
        let inv = psl.elements().find(|&y| y != psl.identity() && psl.mul(y, y) == psl.identity()).unwrap();
        for y in [psl.identity(), inv] {
            let checks = adjoint_model_checks(&model, y).unwrap();
            assert!(checks.iter().all(|c| c.outcome == crate::report::Outcome::Verified), "{checks:?}");
        }
    }
}
