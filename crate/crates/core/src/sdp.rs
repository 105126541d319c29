//! Semidirect products `(H_1 x ... x H_l) ⋊ Q` built from groups `G_i` with
//! normal subgroups `H_i` and multiplicatively closed transversals `T_i`, all
//! with quotient `Q = G_i/H_i` identified through the transversal order.
//!
//! The law is `((h_i), t_a) * ((k_i), t_b) = ((t_b^-1 h_i t_b k_i), t_a t_b)`,
//! conjugation taken in each `G_i` by its own representative. Elements are
//! mixed-radix integers `((p_1 |H_2| + p_2) ... ) |Q| + t` where `p_i` is the
//! position of `h_i` among the sorted members of `H_i`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grp::{
    quotient, DirectProduct, Elem, FiniteGroup, GroupHom, GroupOracle, Subgroup, Transversal, EXHAUSTIVE_LIMIT,
    TABLE_LIMIT,
};
use crate::par::Exec;

/// Cap on `|Q| * prod |H_i|`.
pub const SDP_ORDER_CAP: u128 = 100_000;

#[derive(Clone, Debug)]
pub struct SdpFactor {
    pub group: FiniteGroup,
    pub subgroup: Subgroup,
    pub transversal: Transversal,
}

impl SdpFactor {
    pub fn new(transversal: Transversal) -> SdpFactor {
        SdpFactor {
            group: transversal.parent().clone(),
            subgroup: transversal.subgroup().clone(),
            transversal,
        }
    }
}

/// Factors whose transversals are closed and aligned: `x_a x_b = x_c` in
/// the first factor exactly when `y_a y_b = y_c` in every other.
#[derive(Clone, Debug)]
pub struct SdpData {
    factors: Vec<SdpFactor>,
}

impl SdpData {
    pub fn new(factors: Vec<SdpFactor>) -> Result<SdpData> {
        let first = factors
            .first()
            .ok_or_else(|| Error::PreconditionFailed("at least one factor is required".into()))?;
        let n = first.transversal.len();
        for f in &factors {
            if !f.subgroup.is_normal() {
                return Err(Error::NotNormal);
            }
            if f.transversal.len() != n {
                return Err(Error::IndexMismatch {
                    expected: n,
                    actual: f.transversal.len(),
                });
            }
            if !f.transversal.is_closed() {
                return Err(Error::NotClosed);
            }
        }
        let t1 = &first.transversal;
        for (idx, f) in factors.iter().enumerate().skip(1) {
            let t = &f.transversal;
            for a in 0..n {
                for b in 0..n {
                    let c1 = t1.coset_of(first.group.mul(t1.reps()[a], t1.reps()[b]));
                    let c = t.coset_of(f.group.mul(t.reps()[a], t.reps()[b]));
                    if c1 != c {
                        return Err(Error::MisalignedTransversals(format!(
                            "factor {idx}: representatives {a} * {b} land in coset {c}, first factor in {c1}"
                        )));
                    }
                }
            }
        }
        Ok(SdpData { factors })
    }

    pub fn factors(&self) -> &[SdpFactor] {
        &self.factors
    }

    /// `n = [G_i : H_i]`.
    pub fn index(&self) -> usize {
        self.factors[0].transversal.len()
    }

    /// `|Q| * prod |H_i|`.
    pub fn order(&self) -> u128 {
        self.factors
            .iter()
            .map(|f| f.subgroup.order() as u128)
            .product::<u128>()
            * self.index() as u128
    }
}

struct FactorTables {
    group: FiniteGroup,
    members: Vec<Elem>,
    pos: Vec<u32>,
    reps: Vec<Elem>,
    reps_inv: Vec<Elem>,
}

impl FactorTables {
    fn new(group: &FiniteGroup, subgroup: &Subgroup, t: &Transversal) -> FactorTables {
        let mut pos = vec![u32::MAX; group.order()];
        for (i, &m) in subgroup.members().iter().enumerate() {
            pos[m as usize] = i as u32;
        }
        FactorTables {
            group: group.clone(),
            members: subgroup.members().to_vec(),
            pos,
            reps: t.reps().to_vec(),
            reps_inv: t.reps().iter().map(|&x| group.inv(x)).collect(),
        }
    }

    /// Position of `x_b^-1 h x_b k`.
    #[inline]
    fn twist(&self, h: u32, k: u32, b: usize) -> u32 {
        let g = &self.group;
        let c = g.mul(
            g.mul(self.reps_inv[b], self.members[h as usize]),
            self.reps[b],
        );
        self.pos[g.mul(c, self.members[k as usize]) as usize]
    }
}

/// One- or two-factor instance of the law; longer products nest the first slot.
struct SdpOracle {
    factors: Vec<FactorTables>,
    n: usize,
    qmul: Vec<u32>,
    name: String,
}

impl SdpOracle {
    fn radix(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.members.len()).collect()
    }

    fn split(&self, e: Elem) -> (Vec<u32>, usize) {
        let mut e = e as usize;
        let t = e % self.n;
        e /= self.n;
        let radix = self.radix();
        let mut hs = vec![0u32; radix.len()];
        for i in (0..radix.len()).rev() {
            hs[i] = (e % radix[i]) as u32;
            e /= radix[i];
        }
        (hs, t)
    }

    fn join(&self, hs: &[u32], t: usize) -> Elem {
        let mut e = 0usize;
        for (f, &h) in self.factors.iter().zip(hs) {
            e = e * f.members.len() + h as usize;
        }
        (e * self.n + t) as Elem
    }
}

impl GroupOracle for SdpOracle {
    fn order(&self) -> usize {
        self.n * self.factors.iter().map(|f| f.members.len()).product::<usize>()
    }

    fn identity(&self) -> Elem {
        let hs: Vec<u32> = self
            .factors
            .iter()
            .map(|f| f.pos[f.group.identity() as usize])
            .collect();
        self.join(&hs, 0)
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (ha, ta) = self.split(a);
        let (hb, tb) = self.split(b);
        let hs: Vec<u32> = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| f.twist(ha[i], hb[i], tb))
            .collect();
        self.join(&hs, self.qmul[ta * self.n + tb] as usize)
    }

    fn inv(&self, a: Elem) -> Elem {
        // ((h), t)^-1 = ((x_u h^-1 x_u^-1), u) with x_t x_u = 1.
        let (ha, ta) = self.split(a);
        let e = self.factors[0].group.identity();
        let u = (0..self.n)
            .find(|&u| self.factors[0].group.mul(self.factors[0].reps[ta], self.factors[0].reps[u]) == e)
            .expect("closed transversal contains inverses");
        let hs: Vec<u32> = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let g = &f.group;
                let h_inv = g.inv(f.members[ha[i] as usize]);
                let c = g.mul(g.mul(f.reps[u], h_inv), f.reps_inv[u]);
                f.pos[c as usize]
            })
            .collect();
        self.join(&hs, u)
    }

    fn name(&self) -> String {
        self.name.clone()
    }

    fn label(&self, a: Elem) -> String {
        let (hs, t) = self.split(a);
        let parts: Vec<String> = self
            .factors
            .iter()
            .zip(&hs)
            .map(|(f, &h)| f.group.label(f.members[h as usize]))
            .collect();
        format!("(({}), t{})", parts.join(", "), t)
    }
}

/// The semidirect product of an [`SdpData`], built by iterating the two-factor law.
#[derive(Clone, Debug)]
pub struct SdpGroup {
    pub group: FiniteGroup,
    data: SdpData,
    radix: Vec<usize>,
}

fn quotient_table(f: &SdpFactor) -> Vec<u32> {
    let t = &f.transversal;
    let n = t.len();
    let mut q = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            q[a * n + b] = t.coset_of(f.group.mul(t.reps()[a], t.reps()[b])) as u32;
        }
    }
    q
}

fn build_level(parts: Vec<(FiniteGroup, Subgroup, Transversal)>, qmul: Vec<u32>, n: usize, name: String) -> FiniteGroup {
    let factors = parts
        .iter()
        .map(|(g, h, t)| FactorTables::new(g, h, t))
        .collect();
    FiniteGroup::from_oracle(SdpOracle {
        factors,
        n,
        qmul,
        name,
    })
}

/// `(H_1 x ... x H_l) ⋊ Q`. For `l > 2` the product of the first `l - 1`
/// factors is fed back as the first factor, with kernel `{t = 0}` and
/// transversal `{((1), t)}`.
pub fn sdp_build(data: &SdpData) -> Result<SdpGroup> {
    let order = data.order();
    if order > SDP_ORDER_CAP {
        return Err(Error::OrderCap(order));
    }
    let n = data.index();
    let qmul = quotient_table(&data.factors[0]);
    let names: Vec<String> = data.factors.iter().map(|f| f.group.name()).collect();
    let f0 = &data.factors[0];
    let mut current = build_level(
        vec![(f0.group.clone(), f0.subgroup.clone(), f0.transversal.clone())],
        qmul.clone(),
        n,
        format!("sdp({})", names[0]),
    );
    if data.factors.len() >= 2 {
        let f1 = &data.factors[1];
        current = build_level(
            vec![
                (f0.group.clone(), f0.subgroup.clone(), f0.transversal.clone()),
                (f1.group.clone(), f1.subgroup.clone(), f1.transversal.clone()),
            ],
            qmul.clone(),
            n,
            format!("sdp({})", names[..2].join(", ")),
        );
    }
    for k in 2..data.factors.len() {
        let fk = &data.factors[k];
        let kernel: Vec<Elem> = current.elements().filter(|&e| (e as usize).is_multiple_of(n)).collect();
        let kernel = Subgroup::from_set(&current, &kernel)?;
        let base = current.identity() as usize;
        let reps: Vec<Elem> = (0..n).map(|t| (base + t) as Elem).collect();
        let t = Transversal::new(&current, &kernel, reps)?;
        current = build_level(
            vec![
                (current.clone(), kernel, t),
                (fk.group.clone(), fk.subgroup.clone(), fk.transversal.clone()),
            ],
            qmul.clone(),
            n,
            format!("sdp({})", names[..=k].join(", ")),
        );
    }
    Ok(SdpGroup {
        group: current,
        radix: data.factors.iter().map(|f| f.subgroup.order()).collect(),
        data: data.clone(),
    })
}

impl SdpGroup {
    pub fn data(&self) -> &SdpData {
        &self.data
    }

    /// The element `((h_1, ..., h_l), t)` for `h_i` given as indices of `G_i`.
    pub fn element(&self, hs: &[Elem], t: usize) -> Elem {
        let mut e = 0usize;
        for ((f, &h), &r) in self.data.factors.iter().zip(hs).zip(&self.radix) {
            e = e * r + f.subgroup.position(h).expect("component lies in H_i");
        }
        (e * self.data.index() + t) as Elem
    }

    /// Inverse of [`SdpGroup::element`].
    pub fn components(&self, e: Elem) -> (Vec<Elem>, usize) {
        let n = self.data.index();
        let mut e = e as usize;
        let t = e % n;
        e /= n;
        let mut hs = vec![0; self.radix.len()];
        for i in (0..self.radix.len()).rev() {
            hs[i] = self.data.factors[i].subgroup.members()[e % self.radix[i]];
            e /= self.radix[i];
        }
        (hs, t)
    }

    /// The normal subgroup `H_1 x ... x H_l = {t = 0}`.
    pub fn kernel(&self) -> Subgroup {
        let n = self.data.index();
        let members: Vec<Elem> = self.group.elements().filter(|&e| (e as usize).is_multiple_of(n)).collect();
        Subgroup::from_set(&self.group, &members).expect("kernel of the law is a subgroup")
    }
}

/// `⊔_i (x_i H_1 x y_i H_2)` inside `G_1 x G_2`.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub product: DirectProduct,
    pub subgroup: Subgroup,
}

pub fn fiber_product(data: &SdpData) -> Result<FiberProduct> {
    if data.factors.len() != 2 {
        return Err(Error::PreconditionFailed("fiber product needs exactly two factors".into()));
    }
    let (f1, f2) = (&data.factors[0], &data.factors[1]);
    let product = DirectProduct::new(&f1.group, &f2.group);
    let mut members = Vec::with_capacity(data.order() as usize);
    for (&x, &y) in f1.transversal.reps().iter().zip(f2.transversal.reps()) {
        for &h1 in f1.subgroup.members() {
            let a = f1.group.mul(x, h1);
            for &h2 in f2.subgroup.members() {
                members.push(product.pair(a, f2.group.mul(y, h2)));
            }
        }
    }
    members.sort_unstable();
    let subgroup = Subgroup::from_set(&product.group, &members)
        .map_err(|_| Error::MisalignedTransversals("the union of coset products is not closed".into()))?;
    Ok(FiberProduct { product, subgroup })
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiReport {
    pub order: usize,
    pub bijective: bool,
    /// "exhaustive" or "generators+sampled".
    pub mode: &'static str,
    pub pairs_checked: u64,
    pub counterexample: Option<(Elem, Elem)>,
}

impl PsiReport {
    pub fn ok(&self) -> bool {
        self.bijective && self.counterexample.is_none()
    }
}

/// `ψ(x_i h_1, y_i h_2) = ((h_1, h_2), x_i H_1)` from the fiber product (as a
/// group in its own right) to the semidirect product.
pub fn psi_map(fp: &FiberProduct, sdp: &SdpGroup) -> Result<GroupHom> {
    let data = sdp.data();
    let (f1, f2) = (&data.factors[0], &data.factors[1]);
    let (g1, g2) = (&f1.group, &f2.group);
    let map: Vec<Elem> = fp
        .subgroup
        .members()
        .iter()
        .map(|&z| {
            let (a, b) = fp.product.split(z);
            let i = f1.transversal.coset_of(a);
            let h1 = g1.mul(g1.inv(f1.transversal.reps()[i]), a);
            let h2 = g2.mul(g2.inv(f2.transversal.reps()[i]), b);
            if !f2.subgroup.contains(h2) {
                return Err(Error::MisalignedTransversals("second component outside y_i H_2".into()));
            }
            Ok(sdp.element(&[h1, h2], i))
        })
        .collect::<Result<_>>()?;
    GroupHom::new(&fp.subgroup.as_group(), &sdp.group, map)
}

/// Checks that ψ is a bijective homomorphism: on all pairs up to
/// [`TABLE_LIMIT`] elements, otherwise on the generators plus sampled pairs.
pub fn psi_iso_check(data: &SdpData, seed: u64) -> Result<(GroupHom, PsiReport)> {
    psi_iso_check_with(data, seed, Exec::default())
}

pub fn psi_iso_check_with(data: &SdpData, seed: u64, exec: Exec) -> Result<(GroupHom, PsiReport)> {
    let fp = fiber_product(data)?;
    let sdp = sdp_build(data)?;
    let psi = psi_map(&fp, &sdp)?;
    let d = psi.domain().clone();
    let c = psi.codomain().clone();
    let n = d.order();
    let bijective = psi.is_bijective();
    let report = if n <= TABLE_LIMIT && n > EXHAUSTIVE_LIMIT {
        let hit = exec.find_map_first(0..n, |a| {
            let a = a as Elem;
            let fa = psi.apply(a);
            (0..n as Elem).find_map(|b| {
                (psi.apply(d.mul(a, b)) != c.mul(fa, psi.apply(b))).then_some((a, b))
            })
        });
        PsiReport {
            order: n,
            bijective,
            mode: "exhaustive",
            pairs_checked: (n * n) as u64,
            counterexample: hit,
        }
    } else {
        let check = psi.verify_with(seed, exec);
        PsiReport {
            order: n,
            bijective,
            mode: check.mode,
            pairs_checked: check.pairs_checked,
            counterexample: check.counterexample,
        }
    };
    Ok((psi, report))
}

/// `ι: G/H -> G` sending each coset to its representative in `T` is a
/// homomorphism with `π ∘ ι = id`.
pub fn right_split_sequence_check(g: &FiniteGroup, h: &Subgroup, t: &Transversal) -> Result<bool> {
    if !t.is_closed() {
        return Err(Error::NotClosed);
    }
    let (q, proj) = quotient(g, h)?;
    let mut iota = vec![g.identity(); q.order()];
    for &s in t.reps() {
        iota[proj.apply(s) as usize] = s;
    }
    let iota = GroupHom::new(&q, g, iota)?;
    let section = iota.then(&proj);
    let identity_on_q = q.elements().all(|z| section.apply(z) == z);
    Ok(identity_on_q && iota.verify(0).ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{cyclic, derived_subgroup, is_isomorphic, subgroup_generated, symmetric, transversal_enumerate};

    fn c4_factor() -> SdpFactor {
        let c4 = cyclic(4);
        let h = subgroup_generated(&c4, &[2]).unwrap();
        SdpFactor::new(Transversal::new(&c4, &h, vec![0, 1]).unwrap())
    }

    fn s3_factor() -> SdpFactor {
        let s3 = symmetric(3);
        let a3 = derived_subgroup(&s3).unwrap();
        SdpFactor::new(transversal_enumerate(&s3, &a3))
    }

    #[test]
    fn c4_transversal_is_not_closed() {
        assert_eq!(SdpData::new(vec![c4_factor()]).unwrap_err(), Error::NotClosed);
        let f = c4_factor();
        assert_eq!(
            right_split_sequence_check(&f.group, &f.subgroup, &f.transversal).unwrap_err(),
            Error::NotClosed
        );
    }

    #[test]
    fn s3_pair() {
        let data = SdpData::new(vec![s3_factor(), s3_factor()]).unwrap();
        let sdp = sdp_build(&data).unwrap();
        assert_eq!(sdp.group.order(), 18);
        assert!(sdp.group.verify_axioms(1).ok());
        assert!(!sdp.group.is_abelian());
        let (psi, rep) = psi_iso_check(&data, 1).unwrap();
        assert!(rep.ok());
        assert_eq!(psi.domain().order(), 18);
        let f = s3_factor();
        assert!(right_split_sequence_check(&f.group, &f.subgroup, &f.transversal).unwrap());
    }

    #[test]
    fn one_factor_recovers_the_group() {
        let data = SdpData::new(vec![s3_factor()]).unwrap();
        let sdp = sdp_build(&data).unwrap();
        assert!(is_isomorphic(&sdp.group, &symmetric(3)).unwrap().is_isomorphic());
        let s3 = symmetric(3);
        let whole = SdpFactor::new(transversal_enumerate(&s3, &Subgroup::whole(&s3)));
        let sdp = sdp_build(&SdpData::new(vec![whole]).unwrap()).unwrap();
        assert_eq!(sdp.group.order(), 6);
    }

    #[test]
    fn three_factors_flatten_consistently() {
        let data = SdpData::new(vec![s3_factor(), s3_factor(), s3_factor()]).unwrap();
        let sdp = sdp_build(&data).unwrap();
        assert_eq!(sdp.group.order(), 54);
        assert!(sdp.group.verify_axioms(2).ok());
        let s3 = symmetric(3);
        let r = s3.elements().find(|&a| s3.elem_order(a) == 3).unwrap();
        let e = s3.identity();
        let a = sdp.element(&[r, e, r], 1);
        let b = sdp.element(&[e, r, r], 1);
        let (hs, t) = sdp.components(sdp.group.mul(a, b));
        assert_eq!(t, 0);
        // x_1^-1 r x_1 = r^-1 in S3, so the first slot becomes r^-1 * 1.
        assert_eq!(hs[0], s3.inv(r));
        assert_eq!(hs[1], r);
        assert_eq!(hs[2], s3.mul(s3.inv(r), r));
        assert_eq!(sdp.kernel().order(), 27);
    }

    #[test]
    fn order_cap() {
        let big = SdpFactor::new(transversal_enumerate(&cyclic(400), &Subgroup::whole(&cyclic(400))));
        let data = SdpData::new(vec![big.clone(), big]).unwrap();
        assert_eq!(sdp_build(&data).unwrap_err(), Error::OrderCap(160_000));
    }
}
