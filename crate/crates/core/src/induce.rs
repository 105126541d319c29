//! Matrix representations of finite groups over `F_q` and induction from a
//! normal subgroup.
//!
//! For a transversal `s_0 = 1, s_1, ..., s_{n-1}` of right cosets `H s_i`,
//! `ρ(g)` is an `n x n` grid of `m x m` blocks whose `(p, q)` block is
//! `σ(s_p g s_q^-1)` when that element lies in `H`, and zero otherwise.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::grp::{
    quotient, sample_tuples, Elem, FiniteGroup, GroupHom, Subgroup, Transversal, EXHAUSTIVE_LIMIT, SAMPLE_COUNT,
};
use crate::linalg::Matrix;
use crate::matgrp::MatrixGroup;
use crate::par::Exec;
use crate::split::{multiplicative_transversal_search, Verdict};

/// Largest dimension of any representation built here.
pub const DIM_CAP: usize = 64;

/// Field operations allowed per verification sweep.
const VERIFY_BUDGET: u64 = 2_000_000_000;

/// A homomorphism from a finite group into invertible matrices, stored elementwise.
#[derive(Clone)]
pub struct Rep {
    group: FiniteGroup,
    field: FieldSpec,
    dim: usize,
    mats: Arc<Vec<Matrix>>,
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep(dim {} over F{} of {:?})", self.dim, self.field.q(), self.group)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepCheck {
    pub ok: bool,
    pub mode: &'static str,
    pub products_checked: u64,
    pub counterexample: Option<(Elem, Elem)>,
}

impl Rep {
    /// Wraps one matrix per element. Invertibility and multiplicativity are
    /// left to [`Rep::verify`].
    pub fn from_matrices(group: &FiniteGroup, field: &FieldSpec, mats: Vec<Matrix>) -> Result<Rep> {
        if mats.len() != group.order() {
            return Err(Error::NotHomomorphism(format!(
                "{} matrices for a group of order {}",
                mats.len(),
                group.order()
            )));
        }
        let dim = mats[0].dim();
        if dim > DIM_CAP {
            return Err(Error::DimCap(dim));
        }
        if mats.iter().any(|m| m.dim() != dim) {
            return Err(Error::NotHomomorphism("matrices of different sizes".into()));
        }
        Ok(Rep {
            group: group.clone(),
            field: field.clone(),
            dim,
            mats: Arc::new(mats),
        })
    }

    pub fn trivial(group: &FiniteGroup, field: &FieldSpec, dim: usize) -> Rep {
        Rep {
            group: group.clone(),
            field: field.clone(),
            dim,
            mats: Arc::new(vec![Matrix::identity(dim); group.order()]),
        }
    }

    /// Extends images of a generating set along the Cayley graph, failing if
    /// the assignment is inconsistent or the generators do not generate.
    pub fn from_generator_images(group: &FiniteGroup, field: &FieldSpec, gens: &[Elem], images: &[Matrix]) -> Result<Rep> {
        if gens.len() != images.len() {
            return Err(Error::Parse("one image per generator is required".into()));
        }
        let dim = images.first().map(|m| m.dim()).unwrap_or(1);
        if dim > DIM_CAP {
            return Err(Error::DimCap(dim));
        }
        for &g in gens {
            group.check_index(g as usize)?;
        }
        if images.iter().any(|m| m.dim() != dim || m.inverse(field).is_none()) {
            return Err(Error::NotHomomorphism("generator images must be invertible of one size".into()));
        }
        let mut mats: Vec<Option<Matrix>> = vec![None; group.order()];
        let e = group.identity();
        mats[e as usize] = Some(Matrix::identity(dim));
        let mut queue = vec![e];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            let mx = mats[x as usize].clone().expect("visited");
            for (&s, img) in gens.iter().zip(images) {
                let y = group.mul(x, s);
                let my = mx.mul(img, field);
                match &mats[y as usize] {
                    None => {
                        mats[y as usize] = Some(my);
                        queue.push(y);
                    }
                    Some(prev) if *prev != my => {
                        return Err(Error::NotHomomorphism(format!(
                            "element {y} reached with two different matrices"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let mats: Vec<Matrix> = mats
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::NotHomomorphism("generators do not generate the group".into()))?;
        Rep::from_matrices(group, field, mats)
    }

    /// The defining representation of a matrix group.
    pub fn natural(group: &FiniteGroup) -> Result<Rep> {
        let field = group.coefficient_field().ok_or(Error::NotMatrixGroup)?;
        if group.is_projective() {
            return Err(Error::NotMatrixGroup);
        }
        let mats = group
            .elements()
            .map(|a| group.matrix(a).ok_or(Error::NotMatrixGroup))
            .collect::<Result<Vec<_>>>()?;
        Rep::from_matrices(group, &field, mats)
    }

    /// `g -> ψ(g)` for a homomorphism `ψ` into a matrix group.
    pub fn through(hom: &GroupHom) -> Result<Rep> {
        let target = hom.codomain();
        let field = target.coefficient_field().ok_or(Error::NotMatrixGroup)?;
        let mats = hom
            .map()
            .iter()
            .map(|&y| target.matrix(y).ok_or(Error::NotMatrixGroup))
            .collect::<Result<Vec<_>>>()?;
        Rep::from_matrices(hom.domain(), &field, mats)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn matrix(&self, g: Elem) -> &Matrix {
        &self.mats[g as usize]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    /// Restriction to `h`, as a representation of [`Subgroup::as_group`].
    pub fn restrict(&self, h: &Subgroup) -> Rep {
        assert!(h.parent().same(&self.group), "subgroup of another group");
        Rep {
            group: h.as_group(),
            field: self.field.clone(),
            dim: self.dim,
            mats: Arc::new(h.members().iter().map(|&x| self.mats[x as usize].clone()).collect()),
        }
    }

    /// `ρ(a)ρ(b) = ρ(ab)` on all pairs when affordable, otherwise on every
    /// Cayley-graph edge plus random pairs.
    pub fn verify(&self, seed: u64) -> RepCheck {
        self.verify_with(seed, Exec::default())
    }

    pub fn verify_with(&self, seed: u64, exec: Exec) -> RepCheck {
        let g = &self.group;
        let f = &self.field;
        let n = g.order();
        let cost = (self.dim as u64).pow(3);
        if !self.mats[g.identity() as usize].is_identity() {
            return RepCheck {
                ok: false,
                mode: "identity",
                products_checked: 0,
                counterexample: None,
            };
        }
        let bad = |a: Elem, b: Elem| self.matrix(a).mul(self.matrix(b), f) != *self.matrix(g.mul(a, b));
        if n <= EXHAUSTIVE_LIMIT && (n * n) as u64 * cost <= VERIFY_BUDGET {
            let hit = exec.find_map_first(0..n * n, |k| {
                let (a, b) = ((k / n) as Elem, (k % n) as Elem);
                bad(a, b).then_some((a, b))
            });
            return RepCheck {
                ok: hit.is_none(),
                mode: "exhaustive",
                products_checked: (n * n) as u64,
                counterexample: hit,
            };
        }
        let gens = g.generators();
        let k = gens.len();
        let mut hit = exec.find_map_first(0..n * k, |idx| {
            let (a, b) = ((idx / k) as Elem, gens[idx % k]);
            bad(a, b).then_some((a, b))
        });
        let samples = (SAMPLE_COUNT as u64).min(VERIFY_BUDGET / cost) as usize;
        if hit.is_none() {
            let pairs = sample_tuples::<2>(n, samples, seed);
            hit = exec.find_map_first(0..pairs.len(), |i| {
                let [a, b] = pairs[i];
                bad(a, b).then_some((a, b))
            });
        }
        RepCheck {
            ok: hit.is_none(),
            mode: "generators+sampled",
            products_checked: (n * k + samples) as u64,
            counterexample: hit,
        }
    }

    /// `ρ(G)` as a matrix group, with `ρ` as a homomorphism onto it.
    pub fn image(&self) -> Result<(MatrixGroup, GroupHom)> {
        self.image_of(false)
    }

    /// The image in `PGL`, with the projective representation as a homomorphism.
    pub fn projective_image(&self) -> Result<(MatrixGroup, GroupHom)> {
        self.image_of(true)
    }

    fn image_of(&self, projective: bool) -> Result<(MatrixGroup, GroupHom)> {
        let name = format!(
            "{}image of a dim-{} rep of {}",
            if projective { "projective " } else { "" },
            self.dim,
            self.group.name()
        );
        let img = MatrixGroup::from_elements(&self.field, self.mats.to_vec(), projective, &name)?;
        let map = self
            .mats
            .iter()
            .map(|m| img.index_of(m).expect("image contains every matrix"))
            .collect();
        let hom = GroupHom::new(&self.group, img.group(), map)?;
        Ok((img, hom))
    }

    /// Elements sent to the identity matrix.
    pub fn kernel(&self) -> Subgroup {
        let members: Vec<Elem> = self.group.elements().filter(|&g| self.matrix(g).is_identity()).collect();
        Subgroup::from_set(&self.group, &members).expect("kernel of a representation")
    }

    /// Elements sent to scalar matrices.
    pub fn projective_kernel(&self) -> Subgroup {
        let members: Vec<Elem> = self
            .group
            .elements()
            .filter(|&g| self.matrix(g).scalar_value().is_some())
            .collect();
        Subgroup::from_set(&self.group, &members).expect("kernel of a projective representation")
    }
}

/// `ρ = Ind_H^G σ` with its block structure.
#[derive(Clone, Debug)]
pub struct BlockRep {
    pub sigma: Rep,
    pub transversal: Transversal,
    pub rho: Rep,
}

/// Induces `σ` (a representation of `H.as_group()`) along `t`, which must start with the identity.
pub fn induce(sigma: &Rep, t: &Transversal) -> Result<BlockRep> {
    induce_with(sigma, t, Exec::default())
}

pub fn induce_with(sigma: &Rep, t: &Transversal, exec: Exec) -> Result<BlockRep> {
    let h = t.subgroup();
    let g = t.parent();
    if !sigma.group().same(&h.as_group()) {
        return Err(Error::GroupMismatch);
    }
    if !h.is_normal() {
        return Err(Error::NotNormal);
    }
    let (n, m) = (t.len(), sigma.dim());
    if n * m > DIM_CAP {
        return Err(Error::DimCap(n * m));
    }
    if t.reps()[0] != g.identity() {
        return Err(Error::PreconditionFailed("the first representative must be the identity".into()));
    }
    let reps = t.reps();
    let inv_reps: Vec<Elem> = reps.iter().map(|&s| g.inv(s)).collect();
    let mats = exec.map(0..g.order(), |x| {
        let x = x as Elem;
        let mut out = Matrix::zeros(n * m);
        for (p, &sp) in reps.iter().enumerate() {
            let y = g.mul(sp, x);
            let q = t.coset_of(y);
            let hpart = g.mul(y, inv_reps[q]);
            let pos = h.position(hpart).expect("s_p g s_q^-1 lies in H");
            out.put_block(p * m, q * m, sigma.matrix(pos as Elem));
        }
        out
    });
    let rho = Rep::from_matrices(g, sigma.field(), mats)?;
    Ok(BlockRep {
        sigma: sigma.clone(),
        transversal: t.clone(),
        rho,
    })
}

impl BlockRep {
    pub fn n(&self) -> usize {
        self.transversal.len()
    }

    pub fn m(&self) -> usize {
        self.sigma.dim()
    }

    pub fn group(&self) -> &FiniteGroup {
        self.rho.group()
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.transversal.subgroup()
    }

    /// The `(p, q)` block of `ρ(g)`.
    pub fn block(&self, g: Elem, p: usize, q: usize) -> Matrix {
        let m = self.m();
        self.rho.matrix(g).block(p * m, q * m, m)
    }

    /// Each block row and column of every `ρ(g)` holds exactly one nonzero
    /// block, equal to `σ(s_p g s_q^-1)`, and `ρ(h)` is block diagonal with
    /// blocks `σ(s_p h s_p^-1)`.
    pub fn block_structure_holds(&self) -> bool {
        let g = self.group();
        let t = &self.transversal;
        let h = self.subgroup();
        let n = self.n();
        Exec::default().all(0..g.order(), |x| {
            let x = x as Elem;
            for p in 0..n {
                let mut nonzero = 0;
                for q in 0..n {
                    let b = self.block(x, p, q);
                    let y = g.mul(g.mul(t.reps()[p], x), g.inv(t.reps()[q]));
                    let expected = h.position(y).map(|i| self.sigma.matrix(i as Elem).clone());
                    match expected {
                        Some(e) if e == b => nonzero += 1,
                        None if b.is_zero() => {}
                        _ => return false,
                    }
                }
                if nonzero != 1 {
                    return false;
                }
            }
            (0..n).all(|q| (0..n).filter(|&p| !self.block(x, p, q).is_zero()).count() == 1)
        })
    }
}

/// Block permutation `P` with `ρ_2(g) = P ρ_1(g) P^-1` for two inductions
/// of the same `σ` along different transversals.
pub fn transversal_change_of_basis(b1: &BlockRep, b2: &BlockRep) -> Result<Matrix> {
    if !b1.sigma.group().same(b2.sigma.group()) || b1.n() != b2.n() {
        return Err(Error::GroupMismatch);
    }
    let g = b1.group();
    let h = b1.subgroup();
    let m = b1.m();
    let mut pmat = Matrix::zeros(b1.n() * m);
    for (p, &s2) in b2.transversal.reps().iter().enumerate() {
        let c = b1.transversal.coset_of(s2);
        let hp = g.mul(s2, g.inv(b1.transversal.reps()[c]));
        let pos = h.position(hp).expect("same coset");
        pmat.put_block(p * m, c * m, b1.sigma.matrix(pos as Elem));
    }
    Ok(pmat)
}

fn check_restriction(b: &BlockRep, pi: &Rep) -> Result<()> {
    if !pi.group().same(b.group()) || pi.field().q() != b.sigma.field().q() {
        return Err(Error::GroupMismatch);
    }
    let h = b.subgroup();
    let same = h
        .members()
        .iter()
        .enumerate()
        .all(|(i, &x)| pi.matrix(x) == b.sigma.matrix(i as Elem));
    if same {
        Ok(())
    } else {
        Err(Error::NotRestriction)
    }
}

/// Matrix group on `{ρ(x) : x ∈ members}`.
fn image_of_set(rep: &Rep, members: &[Elem], name: &str) -> Result<MatrixGroup> {
    let mats: Vec<Matrix> = members.iter().map(|&x| rep.matrix(x).clone()).collect();
    MatrixGroup::from_elements(rep.field(), mats, false, name)
}

/// The first-block projection `ρ(H) -> π(H)`, checked to be a bijective homomorphism.
pub fn rho_h_image_iso(b: &BlockRep, pi: &Rep) -> Result<GroupHom> {
    check_restriction(b, pi)?;
    let h = b.subgroup();
    let rho_h = image_of_set(&b.rho, h.members(), "rho(H)")?;
    let pi_h = image_of_set(pi, h.members(), "pi(H)")?;
    let m = b.m();
    let map: Vec<Elem> = rho_h
        .group()
        .elements()
        .map(|a| {
            let first = rho_h.matrix(a).block(0, 0, m);
            pi_h.index_of(&first).expect("first block of rho(h) is pi(h)")
        })
        .collect();
    let hom = GroupHom::checked(rho_h.group(), pi_h.group(), map, 0)?;
    if !hom.is_bijective() {
        return Err(Error::NotHomomorphism("first-block projection is not bijective".into()));
    }
    Ok(hom)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactSequenceReport {
    pub rho_g_order: usize,
    pub rho_h_order: usize,
    pub index: usize,
    pub surjective: bool,
    pub kernel_is_rho_h: bool,
    pub homomorphism: bool,
}

impl ExactSequenceReport {
    pub fn exact(&self, n: usize) -> bool {
        self.index == n && self.surjective && self.kernel_is_rho_h && self.homomorphism
    }
}

/// `γ: ρ(G') -> G'/K`, `γ(ρ(k s)) = sK`, for a subgroup `G'` and `K = G' ∩ H`.
/// Fails with `DisjointnessFailure` if two cosets share an image matrix.
fn gamma_for(b: &BlockRep, gprime: &Subgroup) -> Result<(MatrixGroup, Subgroup, GroupHom, ExactSequenceReport)> {
    let h = b.subgroup();
    let k = gprime.intersection(h);
    let sub = gprime.as_group();
    let k_in_sub: Vec<Elem> = k
        .members()
        .iter()
        .map(|&x| gprime.position(x).expect("K lies in G'") as Elem)
        .collect();
    let k_sub = Subgroup::from_set(&sub, &k_in_sub)?;
    let (q, proj) = quotient(&sub, &k_sub)?;
    let img = image_of_set(&b.rho, gprime.members(), "rho(G')")?;
    let mut gamma = vec![Elem::MAX; img.group().order()];
    for (i, &x) in gprime.members().iter().enumerate() {
        let a = img.index_of(b.rho.matrix(x)).expect("in image") as usize;
        let c = proj.apply(i as Elem);
        if gamma[a] == Elem::MAX {
            gamma[a] = c;
        } else if gamma[a] != c {
            return Err(Error::DisjointnessFailure);
        }
    }
    let gamma = GroupHom::new(img.group(), &q, gamma)?;
    let rho_k: Vec<Elem> = {
        let mut v: Vec<Elem> = k
            .members()
            .iter()
            .map(|&x| img.index_of(b.rho.matrix(x)).expect("in image"))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let rho_k = Subgroup::from_set(img.group(), &rho_k)?;
    let kernel = gamma.kernel();
    let report = ExactSequenceReport {
        rho_g_order: img.group().order(),
        rho_h_order: rho_k.order(),
        index: img.group().order() / rho_k.order(),
        surjective: gamma.is_surjective(),
        kernel_is_rho_h: kernel == rho_k,
        homomorphism: gamma.verify(0).ok,
    };
    Ok((img, rho_k, gamma, report))
}

/// `1 -> ρ(H) -> ρ(G) -> G/H -> 1` with `γ(ρ(h s_k)) = s_k H`.
pub fn exact_sequence_gamma(b: &BlockRep) -> Result<(GroupHom, ExactSequenceReport)> {
    let whole = Subgroup::whole(b.group());
    let (_, _, gamma, report) = gamma_for(b, &whole)?;
    Ok((gamma, report))
}

/// Both sides of `ρ(s_i)ρ(s_j) = ρ(s_k) ⟺ (π(s_i)π(s_j) = π(s_k) and s_i s_j ∈ s_k H)`; true when they agree.
pub fn product_relation_check(b: &BlockRep, pi: &Rep, i: usize, j: usize, k: usize) -> Result<bool> {
    check_restriction(b, pi)?;
    Ok(product_relation_sides(b, pi, i, j, k).0 == product_relation_sides(b, pi, i, j, k).1)
}

fn product_relation_sides(b: &BlockRep, pi: &Rep, i: usize, j: usize, k: usize) -> (bool, bool) {
    let g = b.group();
    let f = b.rho.field();
    let s = b.transversal.reps();
    let lhs = b.rho.matrix(s[i]).mul(b.rho.matrix(s[j]), f) == *b.rho.matrix(s[k]);
    let pi_ok = pi.matrix(s[i]).mul(pi.matrix(s[j]), f) == *pi.matrix(s[k]);
    let coset_ok = b.transversal.coset_of(g.mul(s[i], s[j])) == k;
    (lhs, pi_ok && coset_ok)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductRelationSweep {
    pub triples: usize,
    pub both_true: usize,
    pub violations: Vec<(usize, usize, usize)>,
}

/// [`product_relation_check`] over all `(i, j, k)`.
pub fn product_relation_batch(b: &BlockRep, pi: &Rep) -> Result<ProductRelationSweep> {
    check_restriction(b, pi)?;
    let n = b.n();
    let mut both_true = 0;
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (l, r) = product_relation_sides(b, pi, i, j, k);
                if l != r {
                    violations.push((i, j, k));
                } else if l {
                    both_true += 1;
                }
            }
        }
    }
    Ok(ProductRelationSweep {
        triples: n * n * n,
        both_true,
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicCorollary {
    /// Elements `s` whose powers `1, s, ..., s^(n-1)` form a transversal.
    pub generators_checked: usize,
    /// `ρ(s)^n = 1 ⟺ π(s)^n = 1` held for each of them (only when `π` was supplied).
    pub iff_holds: Option<bool>,
    /// Some such `s` has `ρ(s)^n = 1`.
    pub exists_rho_s_n_trivial: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedSplitReport {
    pub verdict: Verdict,
    /// Transversal of `H` in `G` whose images form the complement.
    pub transversal: Option<Vec<Elem>>,
    /// Verdict of the direct search over transversals, when within budget.
    pub brute_force: Option<bool>,
    pub cyclic: Option<CyclicCorollary>,
}

impl InducedSplitReport {
    /// All independent decisions agree with the verdict.
    pub fn consistent(&self) -> bool {
        let split = self.verdict == Verdict::SplitWithWitness;
        self.brute_force.is_none_or(|bf| bf == split)
            && self.cyclic.as_ref().is_none_or(|c| {
                c.exists_rho_s_n_trivial == split && c.iff_holds.unwrap_or(true)
            })
    }
}

/// Budget on `|ρ(H)|^(n-1)` for the direct transversal search.
const BRUTE_FORCE_BUDGET: u128 = 2_000_000;

/// Whether some choice `t_i ∈ ρ(H)ρ(s_i)` makes `{t_i}` closed under
/// multiplication, enumerating all choices directly.
fn brute_force_closed_transversal(img: &MatrixGroup, rho_k: &Subgroup, coset_reps: &[Elem]) -> Option<bool> {
    let n = coset_reps.len();
    let kk = rho_k.order() as u128;
    if kk.pow(n.saturating_sub(1) as u32) > BRUTE_FORCE_BUDGET {
        return None;
    }
    let g = img.group();
    let cosets: Vec<Vec<Elem>> = coset_reps
        .iter()
        .map(|&r| rho_k.members().iter().map(|&k| g.mul(k, r)).collect())
        .collect();
    let mut choice = vec![0usize; n];
    loop {
        let mut set: Vec<Elem> = vec![g.identity()];
        set.extend((1..n).map(|i| cosets[i][choice[i]]));
        let closed = set
            .iter()
            .all(|&a| set.iter().all(|&b| set.contains(&g.mul(a, b))));
        if closed {
            return Some(true);
        }
        let mut i = 1;
        loop {
            if i >= n {
                return Some(false);
            }
            choice[i] += 1;
            if choice[i] < cosets[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Whether `1 -> ρ(K) -> ρ(G') -> G'/K -> 1` splits, for `K = G' ∩ H`, by a
/// complement search inside `ρ(G')`, cross-checked by direct enumeration.
fn split_for(b: &BlockRep, gprime: &Subgroup, pi: Option<&Rep>) -> Result<InducedSplitReport> {
    let (img, rho_k, gamma, _) = gamma_for(b, gprime)?;
    let g = b.group();
    let h = b.subgroup();
    let complement = multiplicative_transversal_search(img.group(), &rho_k)?;
    let transversal = match &complement {
        Some(t) => {
            // Pull each image element back to G'; the identity goes to the identity.
            let mut pre: HashMap<Elem, Elem> = HashMap::new();
            for &x in gprime.members() {
                let a = img.index_of(b.rho.matrix(x)).expect("in image");
                pre.entry(a).or_insert(x);
            }
            pre.insert(img.group().identity(), g.identity());
            Some(t.reps().iter().map(|a| pre[a]).collect::<Vec<Elem>>())
        }
        None => None,
    };
    let canonical_cosets = crate::grp::transversal_enumerate(img.group(), &rho_k);
    let brute_force = brute_force_closed_transversal(&img, &rho_k, canonical_cosets.reps());
    let n = gamma.codomain().order();
    let cyclic = {
        let quotient_cyclic = gamma.codomain().elements().any(|z| gamma.codomain().elem_order(z) == n as u64);
        quotient_cyclic.then(|| {
            let k = gprime.intersection(h);
            let mut checked = 0;
            let mut iff = true;
            let mut exists = false;
            for &s in gprime.members() {
                let mut y = g.identity();
                let mut ok = true;
                for step in 0..n {
                    if step > 0 && k.contains(y) {
                        ok = false;
                        break;
                    }
                    y = g.mul(y, s);
                }
                if !ok {
                    continue;
                }
                checked += 1;
                let rho_n = b.rho.matrix(y).is_identity();
                exists |= rho_n;
                if let Some(pi) = pi {
                    iff &= rho_n == pi.matrix(y).is_identity();
                }
            }
            CyclicCorollary {
                generators_checked: checked,
                iff_holds: pi.map(|_| iff),
                exists_rho_s_n_trivial: exists,
            }
        })
    };
    Ok(InducedSplitReport {
        verdict: if complement.is_some() {
            Verdict::SplitWithWitness
        } else {
            Verdict::NoSplit
        },
        transversal,
        brute_force,
        cyclic,
    })
}

/// Whether `1 -> ρ(H) -> ρ(G) -> G/H -> 1` is right split.
pub fn induced_split_check(b: &BlockRep, pi: Option<&Rep>) -> Result<InducedSplitReport> {
    if let Some(pi) = pi {
        check_restriction(b, pi)?;
    }
    let report = split_for(b, &Subgroup::whole(b.group()), pi)?;
    if let Some(t) = &report.transversal {
        let t = Transversal::new(b.group(), b.subgroup(), t.clone())?;
        let closed = t.reps().iter().all(|&x| {
            t.reps().iter().all(|&y| {
                let prod = b.rho.matrix(x).mul(b.rho.matrix(y), b.rho.field());
                t.reps().iter().any(|&z| *b.rho.matrix(z) == prod)
            })
        });
        if !closed {
            return Err(Error::PreconditionFailed("recovered transversal images are not closed".into()));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneralSequenceReport {
    pub subgroup_order: usize,
    pub intersection_order: usize,
    /// Part 1: the sequence for `H'` is exact.
    pub exact: bool,
    /// Part 2: split verdict for the `H'` sequence.
    pub split: InducedSplitReport,
    /// Part 3: `H ⊆ H'`, and the right-hand side `ρ(H) ⊆ ρ(H')` and `ker π ∩ H ⊆ H'`.
    pub h_in_hprime: bool,
    pub criterion: bool,
    /// Part 4: applies when `H ⊆ H'` and the full sequence splits; then the `H'` sequence must split.
    pub part4_applies: bool,
    pub part4_holds: bool,
}

impl GeneralSequenceReport {
    pub fn holds(&self) -> bool {
        self.exact
            && self.split.consistent()
            && self.h_in_hprime == self.criterion
            && (!self.part4_applies || self.part4_holds)
    }
}

/// The sequence `1 -> ρ(H' ∩ H) -> ρ(H') -> H'/(H' ∩ H) -> 1` and its properties.
pub fn general_subgroup_sequence(b: &BlockRep, pi: &Rep, hprime: &Subgroup) -> Result<GeneralSequenceReport> {
    check_restriction(b, pi)?;
    let h = b.subgroup();
    let (rho_hp, _, _, exact) = gamma_for(b, hprime)?;
    let n_prime = hprime.order() / hprime.intersection(h).order();
    let split = split_for(b, hprime, Some(pi))?;
    let h_in_hprime = h.is_subset(hprime);
    let rho_h_in = h
        .members()
        .iter()
        .all(|&x| rho_hp.index_of(b.rho.matrix(x)).is_some());
    let ker_pi_h_in = h
        .members()
        .iter()
        .filter(|&&x| pi.matrix(x).is_identity())
        .all(|&x| hprime.contains(x));
    let full = split_for(b, &Subgroup::whole(b.group()), Some(pi))?;
    let part4_applies = h_in_hprime && full.verdict == Verdict::SplitWithWitness;
    Ok(GeneralSequenceReport {
        subgroup_order: hprime.order(),
        intersection_order: hprime.intersection(h).order(),
        exact: exact.exact(n_prime),
        part4_holds: !part4_applies || split.verdict == Verdict::SplitWithWitness,
        split,
        h_in_hprime,
        criterion: rho_h_in && ker_pi_h_in,
        part4_applies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::fq_make;
    use crate::grp::{cyclic, derived_subgroup, subgroup_generated, symmetric, transversal_enumerate};

    fn s3_setup() -> (FiniteGroup, Subgroup, Transversal, Elem, Elem) {
        let s3 = symmetric(3);
        let a3 = derived_subgroup(&s3).unwrap();
        let t = transversal_enumerate(&s3, &a3);
        let s = t.reps()[1];
        let r = s3.elements().find(|&x| s3.label(x) == "(1 2 3)").unwrap();
        (s3, a3, t, s, r)
    }

    #[test]
    fn trivial_sigma_on_a3() {
        let f7 = fq_make(7, 1).unwrap();
        let (_, a3, t, s, r) = s3_setup();
        let sigma = Rep::trivial(&a3.as_group(), &f7, 1);
        let b = induce(&sigma, &t).unwrap();
        assert_eq!(*b.rho.matrix(s), Matrix::from_rows(vec![vec![0, 1], vec![1, 0]]));
        assert!(b.rho.matrix(r).is_identity());
        assert!(b.rho.verify(1).ok);
        assert!(b.block_structure_holds());
    }

    #[test]
    fn nontrivial_sigma_on_a3() {
        let f7 = fq_make(7, 1).unwrap();
        let (_, a3, t, _, r) = s3_setup();
        let ag = a3.as_group();
        let rpos = a3.position(r).unwrap() as Elem;
        let sigma = Rep::from_generator_images(&ag, &f7, &[rpos], &[Matrix::from_rows(vec![vec![2]])]).unwrap();
        let b = induce(&sigma, &t).unwrap();
        assert_eq!(*b.rho.matrix(r), Matrix::from_rows(vec![vec![2, 0], vec![0, 4]]));
        let (_, rep) = exact_sequence_gamma(&b).unwrap();
        assert!(rep.exact(2));
        assert_eq!((rep.rho_g_order, rep.rho_h_order), (6, 3));
    }

    #[test]
    fn induction_from_whole_group() {
        let f5 = fq_make(5, 1).unwrap();
        let c4 = cyclic(4);
        let pi = Rep::from_generator_images(&c4, &f5, &[1], &[Matrix::from_rows(vec![vec![2]])]).unwrap();
        let whole = Subgroup::whole(&c4);
        let t = transversal_enumerate(&c4, &whole);
        let b = induce(&pi.restrict(&whole), &t).unwrap();
        assert_eq!(b.rho.matrices(), pi.matrices());
    }

    #[test]
    fn c4_faithful_over_f5() {
        let f5 = fq_make(5, 1).unwrap();
        let c4 = cyclic(4);
        let h = subgroup_generated(&c4, &[2]).unwrap();
        let t = transversal_enumerate(&c4, &h);
        let pi = Rep::from_generator_images(&c4, &f5, &[1], &[Matrix::from_rows(vec![vec![2]])]).unwrap();
        let b = induce(&pi.restrict(&h), &t).unwrap();
        assert_eq!(*b.rho.matrix(1), Matrix::from_rows(vec![vec![0, 1], vec![4, 0]]));
        let iso = rho_h_image_iso(&b, &pi).unwrap();
        assert_eq!(iso.domain().order(), 2);
        let sweep = product_relation_batch(&b, &pi).unwrap();
        assert!(sweep.violations.is_empty());
        assert!(!product_relation_sides(&b, &pi, 1, 1, 0).0);
        let split = induced_split_check(&b, Some(&pi)).unwrap();
        assert_eq!(split.verdict, Verdict::NoSplit);
        assert!(split.consistent());
        assert_eq!(split.brute_force, Some(false));
    }

    #[test]
    fn c4_with_kernel_splits() {
        let f5 = fq_make(5, 1).unwrap();
        let c4 = cyclic(4);
        let h = subgroup_generated(&c4, &[2]).unwrap();
        let t = transversal_enumerate(&c4, &h);
        let pi = Rep::from_generator_images(&c4, &f5, &[1], &[Matrix::from_rows(vec![vec![4]])]).unwrap();
        let b = induce(&pi.restrict(&h), &t).unwrap();
        assert!(b.rho.matrix(1).mul(b.rho.matrix(1), &f5).is_identity());
        let split = induced_split_check(&b, Some(&pi)).unwrap();
        assert_eq!(split.verdict, Verdict::SplitWithWitness);
        assert!(split.consistent());
    }

    #[test]
    fn restriction_mismatch_detected() {
        let f5 = fq_make(5, 1).unwrap();
        let c4 = cyclic(4);
        let h = subgroup_generated(&c4, &[2]).unwrap();
        let t = transversal_enumerate(&c4, &h);
        let pi = Rep::from_generator_images(&c4, &f5, &[1], &[Matrix::from_rows(vec![vec![2]])]).unwrap();
        let b = induce(&Rep::trivial(&h.as_group(), &f5, 1), &t).unwrap();
        assert_eq!(rho_h_image_iso(&b, &pi).unwrap_err(), Error::NotRestriction);
    }

    #[test]
    fn inconsistent_generator_images_rejected() {
        let f5 = fq_make(5, 1).unwrap();
        let c4 = cyclic(4);
        let err = Rep::from_generator_images(&c4, &f5, &[1], &[Matrix::from_rows(vec![vec![3, 0], vec![0, 1]])]);
        assert!(err.is_ok());
        let bad = Rep::from_generator_images(&cyclic(3), &f5, &[1], &[Matrix::from_rows(vec![vec![2]])]);
        assert!(matches!(bad, Err(Error::NotHomomorphism(_))));
    }

    #[test]
    fn change_of_transversal_conjugates() {
        let f7 = fq_make(7, 1).unwrap();
        let (s3, a3, t1, _, r) = s3_setup();
        let rpos = a3.position(r).unwrap() as Elem;
        let sigma = Rep::from_generator_images(&a3.as_group(), &f7, &[rpos], &[Matrix::from_rows(vec![vec![2]])]).unwrap();
        let other = t1.reps()[1];
        let t2 = Transversal::new(&s3, &a3, vec![0, s3.mul(r, other)]).unwrap();
        let b1 = induce(&sigma, &t1).unwrap();
        let b2 = induce(&sigma, &t2).unwrap();
        let p = transversal_change_of_basis(&b1, &b2).unwrap();
        let pinv = p.inverse(&f7).unwrap();
        for g in s3.elements() {
            assert_eq!(p.mul(b1.rho.matrix(g), &f7).mul(&pinv, &f7), *b2.rho.matrix(g));
        }
    }
}
