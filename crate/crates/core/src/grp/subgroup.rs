use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{Elem, FiniteGroup, GroupHom, GroupOracle};
use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::linalg::Matrix;
use crate::par::Exec;

/// Membership mask of `<gens>` by breadth-first closure under right multiplication.
pub(crate) fn closure_mask(g: &FiniteGroup, gens: &[Elem]) -> Vec<bool> {
    let mut mask = vec![false; g.order()];
    let e = g.identity();
    mask[e as usize] = true;
    let mut queue = vec![e];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !mask[y as usize] {
                mask[y as usize] = true;
                queue.push(y);
            }
        }
    }
    mask
}

fn mask_members(mask: &[bool]) -> Vec<Elem> {
    mask.iter()
        .enumerate()
        .filter_map(|(i, &m)| m.then_some(i as Elem))
        .collect()
}

struct SubgroupData {
    parent: FiniteGroup,
    members: Vec<Elem>,
    mask: Vec<bool>,
    group: OnceLock<FiniteGroup>,
}

/// A subgroup stored as the sorted set of its parent-group indices.
#[derive(Clone)]
pub struct Subgroup {
    data: Arc<SubgroupData>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup(order {} in {})",
            self.order(),
            self.parent().name()
        )
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.data.members == other.data.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    fn from_mask(parent: &FiniteGroup, mask: Vec<bool>) -> Subgroup {
        let members = mask_members(&mask);
        Subgroup {
            data: Arc::new(SubgroupData {
                parent: parent.clone(),
                members,
                mask,
                group: OnceLock::new(),
            }),
        }
    }

    /// Wraps a set the caller knows to be a subgroup.
    pub(crate) fn from_members_unchecked(parent: &FiniteGroup, members: &[Elem]) -> Subgroup {
        let mut mask = vec![false; parent.order()];
        for &m in members {
            mask[m as usize] = true;
        }
        Self::from_mask(parent, mask)
    }

    /// Checks that `members` is closed by comparing it with the subgroup it generates.
    pub fn from_set(parent: &FiniteGroup, members: &[Elem]) -> Result<Subgroup> {
        let mut set = vec![false; parent.order()];
        for &m in members {
            parent.check_index(m as usize)?;
            set[m as usize] = true;
        }
        let generated = subgroup_generated(parent, members)?;
        if generated.data.mask != set {
            return Err(Error::InvalidGroup("set is not closed under multiplication".into()));
        }
        Ok(generated)
    }

    pub fn whole(parent: &FiniteGroup) -> Subgroup {
        Self::from_mask(parent, vec![true; parent.order()])
    }

    pub fn trivial(parent: &FiniteGroup) -> Subgroup {
        Self::from_members_unchecked(parent, &[parent.identity()])
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.data.parent
    }

    pub fn order(&self) -> usize {
        self.data.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent().order() / self.order()
    }

    pub fn members(&self) -> &[Elem] {
        &self.data.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.data.mask
    }

    #[inline]
    pub fn contains(&self, g: Elem) -> bool {
        self.data.mask[g as usize]
    }

    /// Position of `g` in the sorted member list.
    pub fn position(&self, g: Elem) -> Option<usize> {
        self.data.members.binary_search(&g).ok()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members().iter().all(|&g| other.contains(g))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members: Vec<Elem> = self
            .members()
            .iter()
            .copied()
            .filter(|&g| other.contains(g))
            .collect();
        Self::from_members_unchecked(self.parent(), &members)
    }

    /// Smallest subgroup containing both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators();
        gens.extend(other.generators());
        subgroup_generated(self.parent(), &gens).expect("indices come from the parent")
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal_with(Exec::default())
    }

    pub fn is_normal_with(&self, exec: Exec) -> bool {
        let g = self.parent();
        let gens = g.generators();
        let hgens = self.generators();
        exec.all(0..hgens.len(), |i| {
            gens.iter().all(|&s| self.contains(g.conj(s, hgens[i])))
        })
    }

    /// A generating set, in parent indices.
    pub fn generators(&self) -> Vec<Elem> {
        let sub = self.as_group();
        sub.generators()
            .iter()
            .map(|&i| self.data.members[i as usize])
            .collect()
    }

    /// The subgroup as a group in its own right; element `i` is `members()[i]`.
    pub fn as_group(&self) -> FiniteGroup {
        self.data
            .group
            .get_or_init(|| {
                let parent = self.parent().clone();
                let mut pos = vec![u32::MAX; parent.order()];
                for (i, &m) in self.data.members.iter().enumerate() {
                    pos[m as usize] = i as u32;
                }
                FiniteGroup::from_oracle(SubgroupOracle {
                    parent,
                    members: self.data.members.clone(),
                    pos,
                })
            })
            .clone()
    }

    /// Inclusion of [`Subgroup::as_group`] into the parent.
    pub fn inclusion(&self) -> GroupHom {
        GroupHom::from_parts(
            self.as_group(),
            self.parent().clone(),
            self.data.members.clone(),
        )
    }
}

struct SubgroupOracle {
    parent: FiniteGroup,
    members: Vec<Elem>,
    pos: Vec<u32>,
}

impl GroupOracle for SubgroupOracle {
    fn order(&self) -> usize {
        self.members.len()
    }

    fn identity(&self) -> Elem {
        self.pos[self.parent.identity() as usize]
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let x = self
            .parent
            .mul(self.members[a as usize], self.members[b as usize]);
        self.pos[x as usize]
    }

    fn inv(&self, a: Elem) -> Elem {
        self.pos[self.parent.inv(self.members[a as usize]) as usize]
    }

    fn name(&self) -> String {
        format!("subgroup of order {} in {}", self.members.len(), self.parent.name())
    }

    fn label(&self, a: Elem) -> String {
        self.parent.label(self.members[a as usize])
    }

    fn matrix(&self, a: Elem) -> Option<Matrix> {
        self.parent.matrix(self.members[a as usize])
    }

    fn coefficient_field(&self) -> Option<FieldSpec> {
        self.parent.coefficient_field()
    }

    fn is_projective(&self) -> bool {
        self.parent.is_projective()
    }
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_generated(g: &FiniteGroup, gens: &[Elem]) -> Result<Subgroup> {
    for &x in gens {
        g.check_index(x as usize)?;
    }
    // Keep only generators that enlarge the closure, so the BFS fan-out stays small.
    let mut kept: Vec<Elem> = Vec::new();
    let mut mask = closure_mask(g, &kept);
    for &x in gens {
        if !mask[x as usize] {
            kept.push(x);
            mask = closure_mask(g, &kept);
        }
    }
    Ok(Subgroup::from_mask(g, mask))
}

/// Smallest normal subgroup containing `seeds`.
pub fn normal_closure(g: &FiniteGroup, seeds: &[Elem]) -> Result<Subgroup> {
    for &x in seeds {
        g.check_index(x as usize)?;
    }
    let ggens = g.generators();
    let mut kept: Vec<Elem> = Vec::new();
    let mut mask = closure_mask(g, &kept);
    let mut queue: VecDeque<Elem> = seeds.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        if mask[x as usize] {
            continue;
        }
        kept.push(x);
        mask = closure_mask(g, &kept);
        for &s in ggens {
            queue.push_back(g.conj(s, x));
        }
    }
    Ok(Subgroup::from_mask(g, mask))
}

/// Largest order accepted by [`derived_subgroup`].
pub const DERIVED_LIMIT: usize = 100_000;

/// The commutator subgroup, as the normal closure of the commutators of a generating set.
pub fn derived_subgroup(g: &FiniteGroup) -> Result<Subgroup> {
    if g.order() > DERIVED_LIMIT {
        return Err(Error::CommutatorTooLarge(g.order()));
    }
    let gens = g.generators();
    let mut seeds = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            seeds.push(g.commutator(a, b));
        }
    }
    normal_closure(g, &seeds)
}

/// Conjugacy classes, each sorted, ordered by least member.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<Elem>> {
    let gens = g.generators();
    let mut seen = vec![false; g.order()];
    let mut classes = Vec::new();
    for x in g.elements() {
        if seen[x as usize] {
            continue;
        }
        seen[x as usize] = true;
        let mut class = vec![x];
        let mut i = 0;
        while i < class.len() {
            let y = class[i];
            i += 1;
            for &s in gens {
                let z = g.conj(s, y);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    class.push(z);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// Every normal subgroup: normal closures of single classes, closed under joins.
/// Sorted by order, then by member list.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let classes = conjugacy_classes(g);
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut all: Vec<Subgroup> = Vec::new();
    let mut push = |s: Subgroup, all: &mut Vec<Subgroup>| {
        if seen.insert(s.members().to_vec()) {
            all.push(s);
        }
    };
    push(Subgroup::trivial(g), &mut all);
    for class in &classes {
        let n = normal_closure(g, &class[..1]).expect("class members are valid indices");
        push(n, &mut all);
    }
    let mut frontier = 0;
    while frontier < all.len() {
        let end = all.len();
        for i in frontier..end {
            for j in 0..i {
                if all[i].is_subset(&all[j]) || all[j].is_subset(&all[i]) {
                    continue;
                }
                let joined = all[i].join(&all[j]);
                push(joined, &mut all);
            }
        }
        frontier = end;
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
    all
}

struct QuotientOracle {
    parent: FiniteGroup,
    reps: Vec<Elem>,
    coset_of: Vec<u32>,
    identity: Elem,
}

impl GroupOracle for QuotientOracle {
    fn order(&self) -> usize {
        self.reps.len()
    }

    fn identity(&self) -> Elem {
        self.identity
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.coset_of[self.parent.mul(self.reps[a as usize], self.reps[b as usize]) as usize]
    }

    fn inv(&self, a: Elem) -> Elem {
        self.coset_of[self.parent.inv(self.reps[a as usize]) as usize]
    }

    fn name(&self) -> String {
        format!("quotient of {} of order {}", self.parent.name(), self.reps.len())
    }

    fn label(&self, a: Elem) -> String {
        format!("[{}]", self.parent.label(self.reps[a as usize]))
    }
}

/// `G/N` on cosets labelled by their least member, with the projection.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![u32::MAX; g.order()];
    let mut reps = Vec::with_capacity(n.index());
    for x in g.elements() {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &h in n.members() {
            coset_of[g.mul(x, h) as usize] = c;
        }
    }
    let identity = coset_of[g.identity() as usize];
    let q = FiniteGroup::from_oracle(QuotientOracle {
        parent: g.clone(),
        reps,
        coset_of: coset_of.clone(),
        identity,
    });
    let proj = GroupHom::from_parts(g.clone(), q.clone(), coset_of);
    Ok((q, proj))
}

/// Ordered right-coset representatives `s_i` with `G = ⊔ H s_i` and `s_0 ∈ H`.
#[derive(Clone)]
pub struct Transversal {
    parent: FiniteGroup,
    subgroup: Subgroup,
    reps: Vec<Elem>,
    coset_of: Arc<Vec<u32>>,
}

impl fmt::Debug for Transversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Transversal").field("reps", &self.reps).finish()
    }
}

impl Transversal {
    /// Validates the coset partition; `reps[0]` must lie in `h`.
    pub fn new(g: &FiniteGroup, h: &Subgroup, reps: Vec<Elem>) -> Result<Transversal> {
        if reps.len() != h.index() {
            return Err(Error::IndexMismatch {
                expected: h.index(),
                actual: reps.len(),
            });
        }
        for &s in &reps {
            g.check_index(s as usize)?;
        }
        if !h.contains(reps[0]) {
            return Err(Error::PreconditionFailed("first representative must lie in H".into()));
        }
        let mut coset_of = vec![u32::MAX; g.order()];
        for (i, &s) in reps.iter().enumerate() {
            for &x in h.members() {
                let y = g.mul(x, s) as usize;
                if coset_of[y] != u32::MAX {
                    return Err(Error::PreconditionFailed(format!(
                        "representatives {} and {i} lie in the same coset",
                        coset_of[y]
                    )));
                }
                coset_of[y] = i as u32;
            }
        }
        Ok(Transversal {
            parent: g.clone(),
            subgroup: h.clone(),
            reps,
            coset_of: Arc::new(coset_of),
        })
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index `i` with `g ∈ H s_i`.
    #[inline]
    pub fn coset_of(&self, g: Elem) -> usize {
        self.coset_of[g as usize] as usize
    }

    pub fn coset_map(&self) -> &[u32] {
        &self.coset_of
    }

    /// `(h, i)` with `g = h s_i`.
    pub fn decompose(&self, g: Elem) -> (Elem, usize) {
        let i = self.coset_of(g);
        (self.parent.mul(g, self.parent.inv(self.reps[i])), i)
    }

    /// Whether the representatives form a subgroup of the parent.
    pub fn is_closed(&self) -> bool {
        let set: BTreeSet<Elem> = self.reps.iter().copied().collect();
        self.reps
            .iter()
            .all(|&a| self.reps.iter().all(|&b| set.contains(&self.parent.mul(a, b))))
    }
}

/// Canonical transversal: the identity for `H` itself, then the least element
/// of every other coset, in increasing order.
pub fn transversal_enumerate(g: &FiniteGroup, h: &Subgroup) -> Transversal {
    let mut seen = vec![false; g.order()];
    let e = g.identity();
    let mut reps = vec![e];
    for &x in h.members() {
        seen[x as usize] = true;
    }
    for y in g.elements() {
        if seen[y as usize] {
            continue;
        }
        reps.push(y);
        for &x in h.members() {
            seen[g.mul(x, y) as usize] = true;
        }
    }
    Transversal::new(g, h, reps).expect("canonical cosets partition the group")
}

/// The unique normal subgroup of index `n` with cyclic quotient, for a group
/// with cyclic abelianization: elements whose image in `G/[G,G]` is an `n`-th power.
pub fn unique_abelian_index_n(g: &FiniteGroup, n: usize) -> Result<Subgroup> {
    if n == 1 {
        return Ok(Subgroup::whole(g));
    }
    let derived = derived_subgroup(g)?;
    let (ab, proj) = quotient(g, &derived)?;
    let m = ab.order();
    let cyclic = ab.elements().any(|z| ab.elem_order(z) == m as u64);
    if !cyclic {
        return Err(Error::AbelianizationNotCyclic);
    }
    if n == 0 || m % n != 0 {
        return Err(Error::IndexDoesNotDivide { n, m });
    }
    let mut powers = vec![false; m];
    for z in ab.elements() {
        powers[ab.pow(z, n as i64) as usize] = true;
    }
    let members: Vec<Elem> = g
        .elements()
        .filter(|&x| powers[proj.apply(x) as usize])
        .collect();
    let h = Subgroup::from_set(g, &members)?;
    if !h.is_normal() {
        return Err(Error::NotNormal);
    }
    if h.index() != n {
        return Err(Error::IndexMismatch {
            expected: n,
            actual: h.index(),
        });
    }
    let (q, _) = quotient(g, &h)?;
    if !q.elements().any(|z| q.elem_order(z) == n as u64) {
        return Err(Error::InvalidGroup("quotient by the n-th power preimage is not cyclic".into()));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{cyclic, direct_product, symmetric};

    #[test]
    fn generated_subgroups() {
        let c6 = cyclic(6);
        assert_eq!(subgroup_generated(&c6, &[]).unwrap().order(), 1);
        assert_eq!(subgroup_generated(&c6, &[2]).unwrap().order(), 3);
        assert!(subgroup_generated(&c6, &[6]).is_err());
        let s3 = symmetric(3);
        let t = s3.elements().find(|&a| s3.elem_order(a) == 2).unwrap();
        let r = s3.elements().find(|&a| s3.elem_order(a) == 3).unwrap();
        assert_eq!(subgroup_generated(&s3, &[t, r]).unwrap().order(), 6);
    }

    #[test]
    fn derived_of_small_groups() {
        assert_eq!(derived_subgroup(&cyclic(10)).unwrap().order(), 1);
        let s3 = symmetric(3);
        let d = derived_subgroup(&s3).unwrap();
        assert_eq!(d.order(), 3);
        assert!(d.members().iter().all(|&a| s3.elem_order(a) != 2));
        assert_eq!(derived_subgroup(&symmetric(4)).unwrap().order(), 12);
    }

    #[test]
    fn quotients() {
        let s3 = symmetric(3);
        let (q, proj) = quotient(&s3, &Subgroup::whole(&s3)).unwrap();
        assert_eq!(q.order(), 1);
        assert_eq!(proj.apply(3), q.identity());
        let a3 = derived_subgroup(&s3).unwrap();
        let (q, proj) = quotient(&s3, &a3).unwrap();
        assert_eq!(q.order(), 2);
        assert!(proj.verify(1).ok);
        let t = s3.elements().find(|&a| s3.elem_order(a) == 2).unwrap();
        let not_normal = subgroup_generated(&s3, &[t]).unwrap();
        assert_eq!(quotient(&s3, &not_normal).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn canonical_transversals() {
        let c4 = cyclic(4);
        let h = subgroup_generated(&c4, &[2]).unwrap();
        assert_eq!(transversal_enumerate(&c4, &h).reps(), &[0, 1]);
        let s3 = symmetric(3);
        let t = transversal_enumerate(&s3, &Subgroup::whole(&s3));
        assert_eq!(t.reps(), &[0]);
        let a3 = derived_subgroup(&s3).unwrap();
        let t = transversal_enumerate(&s3, &a3);
        assert_eq!(t.len(), 2);
        assert_eq!(t.reps()[1], s3.elements().find(|&a| s3.elem_order(a) == 2).unwrap());
    }

    #[test]
    fn transversal_validation() {
        let c4 = cyclic(4);
        let h = subgroup_generated(&c4, &[2]).unwrap();
        assert!(Transversal::new(&c4, &h, vec![0, 2]).is_err());
        assert!(Transversal::new(&c4, &h, vec![1, 0]).is_err());
        let t = Transversal::new(&c4, &h, vec![2, 3]).unwrap();
        assert_eq!(t.coset_of(1), 1);
        assert_eq!(t.decompose(1), (2, 1));
        assert!(!transversal_enumerate(&c4, &h).is_closed());
    }

    #[test]
    fn unique_index_subgroups_in_cyclic_groups() {
        let c12 = cyclic(12);
        let h = unique_abelian_index_n(&c12, 4).unwrap();
        assert_eq!(h.members(), &[0, 4, 8]);
        assert_eq!(unique_abelian_index_n(&c12, 1).unwrap().order(), 12);
        assert_eq!(
            unique_abelian_index_n(&c12, 5).unwrap_err(),
            Error::IndexDoesNotDivide { n: 5, m: 12 }
        );
        let klein = direct_product(&cyclic(2), &cyclic(2));
        assert_eq!(
            unique_abelian_index_n(&klein, 2).unwrap_err(),
            Error::AbelianizationNotCyclic
        );
    }

    #[test]
    fn normal_subgroup_lattice_of_s4() {
        let s4 = symmetric(4);
        let orders: Vec<usize> = normal_subgroups(&s4).iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert_eq!(conjugacy_classes(&s4).len(), 5);
    }
}
