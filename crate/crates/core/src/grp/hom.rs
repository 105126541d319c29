use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{sample_tuples, Elem, FiniteGroup, Subgroup, EXHAUSTIVE_LIMIT, SAMPLE_COUNT};
use crate::error::{Error, Result};
use crate::par::Exec;

/// A map between finite groups given by its value on every element.
#[derive(Clone)]
pub struct GroupHom {
    domain: FiniteGroup,
    codomain: FiniteGroup,
    map: Arc<Vec<Elem>>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({:?} -> {:?})", self.domain, self.codomain)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCheck {
    pub ok: bool,
    /// "exhaustive" or "generators+sampled".
    pub mode: &'static str,
    pub pairs_checked: u64,
    pub counterexample: Option<(Elem, Elem)>,
}

impl GroupHom {
    pub(crate) fn from_parts(domain: FiniteGroup, codomain: FiniteGroup, map: Vec<Elem>) -> GroupHom {
        debug_assert_eq!(map.len(), domain.order());
        GroupHom {
            domain,
            codomain,
            map: Arc::new(map),
        }
    }

    /// Builds a map after checking shape; multiplicativity is checked by [`GroupHom::verify`].
    pub fn new(domain: &FiniteGroup, codomain: &FiniteGroup, map: Vec<Elem>) -> Result<GroupHom> {
        if map.len() != domain.order() {
            return Err(Error::NotHomomorphism(format!(
                "map has {} entries for a domain of order {}",
                map.len(),
                domain.order()
            )));
        }
        for &y in &map {
            codomain.check_index(y as usize)?;
        }
        Ok(Self::from_parts(domain.clone(), codomain.clone(), map))
    }

    /// Like [`GroupHom::new`] but fails unless [`GroupHom::verify`] passes.
    pub fn checked(domain: &FiniteGroup, codomain: &FiniteGroup, map: Vec<Elem>, seed: u64) -> Result<GroupHom> {
        let hom = Self::new(domain, codomain, map)?;
        let check = hom.verify(seed);
        match check.counterexample {
            None if check.ok => Ok(hom),
            Some((a, b)) => Err(Error::NotHomomorphism(format!("fails on ({a}, {b})"))),
            None => Err(Error::NotHomomorphism("identity not preserved".into())),
        }
    }

    pub fn identity_map(g: &FiniteGroup) -> GroupHom {
        Self::from_parts(g.clone(), g.clone(), g.elements().collect())
    }

    pub fn domain(&self) -> &FiniteGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteGroup {
        &self.codomain
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a as usize]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn verify(&self, seed: u64) -> HomCheck {
        self.verify_with(seed, Exec::default())
    }

    /// All pairs up to [`EXHAUSTIVE_LIMIT`]. Above it: every edge `x -> x*s` of
    /// the Cayley graph over the domain's generators, which already forces
    /// multiplicativity, plus [`SAMPLE_COUNT`] random pairs.
    pub fn verify_with(&self, seed: u64, exec: Exec) -> HomCheck {
        let d = &self.domain;
        let c = &self.codomain;
        if self.apply(d.identity()) != c.identity() {
            return HomCheck {
                ok: false,
                mode: "identity",
                pairs_checked: 0,
                counterexample: None,
            };
        }
        let n = d.order();
        let bad_pair = |a: Elem, b: Elem| self.apply(d.mul(a, b)) != c.mul(self.apply(a), self.apply(b));
        if n <= EXHAUSTIVE_LIMIT {
            let hit = exec.find_map_first(0..n * n, |k| {
                let (a, b) = ((k / n) as Elem, (k % n) as Elem);
                bad_pair(a, b).then_some((a, b))
            });
            return HomCheck {
                ok: hit.is_none(),
                mode: "exhaustive",
                pairs_checked: (n * n) as u64,
                counterexample: hit,
            };
        }
        let gens = d.generators();
        let k = gens.len();
        let mut hit = exec.find_map_first(0..n * k, |idx| {
            let (a, b) = ((idx / k) as Elem, gens[idx % k]);
            bad_pair(a, b).then_some((a, b))
        });
        if hit.is_none() {
            let pairs = sample_tuples::<2>(n, SAMPLE_COUNT, seed);
            hit = exec.find_map_first(0..pairs.len(), |i| {
                let [a, b] = pairs[i];
                bad_pair(a, b).then_some((a, b))
            });
        }
        HomCheck {
            ok: hit.is_none(),
            mode: "generators+sampled",
            pairs_checked: (n * k + SAMPLE_COUNT) as u64,
            counterexample: hit,
        }
    }

    pub fn kernel(&self) -> Subgroup {
        let e = self.codomain.identity();
        let members: Vec<Elem> = self.domain.elements().filter(|&a| self.apply(a) == e).collect();
        Subgroup::from_members_unchecked(&self.domain, &members)
    }

    pub fn image(&self) -> Subgroup {
        let mut members: Vec<Elem> = self.map.to_vec();
        members.sort_unstable();
        members.dedup();
        Subgroup::from_members_unchecked(&self.codomain, &members)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.codomain.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.is_injective()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        assert!(self.codomain.same(&other.domain));
        let map = self.map.iter().map(|&y| other.apply(y)).collect();
        Self::from_parts(self.domain.clone(), other.codomain.clone(), map)
    }

    /// Restriction to a subgroup of the domain, as a map out of [`Subgroup::as_group`].
    pub fn restrict(&self, h: &Subgroup) -> GroupHom {
        let map = h.members().iter().map(|&x| self.apply(x)).collect();
        Self::from_parts(h.as_group(), self.codomain.clone(), map)
    }

    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.codomain.order()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize] = x as Elem;
        }
        Some(Self::from_parts(self.codomain.clone(), self.domain.clone(), inv))
    }

    /// `[[x, φ(x)], ...]`, the witness export format.
    pub fn witness_pairs(&self) -> Vec<[Elem; 2]> {
        self.map.iter().enumerate().map(|(x, &y)| [x as Elem, y]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{cyclic, direct_product, symmetric};

    #[test]
    fn reduction_mod_three() {
        let c12 = cyclic(12);
        let c3 = cyclic(3);
        let hom = GroupHom::checked(&c12, &c3, (0..12).map(|k| k % 3).collect(), 1).unwrap();
        assert_eq!(hom.kernel().order(), 4);
        assert!(hom.is_surjective());
        assert!(!hom.is_injective());
    }

    #[test]
    fn non_homomorphism_detected() {
        let c4 = cyclic(4);
        let bad = GroupHom::new(&c4, &c4, vec![0, 1, 3, 2]).unwrap();
        let check = bad.verify(1);
        assert!(!check.ok);
        assert!(check.counterexample.is_some());
        assert!(GroupHom::new(&c4, &c4, vec![0, 1]).is_err());
        assert!(GroupHom::new(&c4, &cyclic(2), vec![0, 1, 2, 3]).is_err());
    }

    #[test]
    fn large_domain_uses_generators_and_samples() {
        let g = direct_product(&symmetric(5), &cyclic(7));
        let id = GroupHom::identity_map(&g);
        let check = id.verify(3);
        assert!(check.ok);
        assert_eq!(check.mode, "generators+sampled");
        let inv = id.inverse().unwrap();
        assert_eq!(inv.apply(17), 17);
    }
}
