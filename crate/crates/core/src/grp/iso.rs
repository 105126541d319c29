use std::collections::BTreeMap;

use super::{Elem, FiniteGroup, GroupHom};
use crate::error::{Error, Result};
use crate::par::Exec;

/// Largest order for which the generator-image backtracking search runs.
pub const ISO_SEARCH_CAP: usize = 512;

#[derive(Clone, Debug)]
pub enum IsoOutcome {
    Isomorphic(GroupHom),
    NotIsomorphic(String),
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }

    pub fn witness(&self) -> Option<&GroupHom> {
        match self {
            IsoOutcome::Isomorphic(h) => Some(h),
            IsoOutcome::NotIsomorphic(_) => None,
        }
    }
}

pub fn order_histogram(g: &FiniteGroup) -> BTreeMap<u64, usize> {
    let orders = Exec::default().map(0..g.order(), |a| g.elem_order(a as Elem));
    let mut hist = BTreeMap::new();
    for o in orders {
        *hist.entry(o).or_insert(0) += 1;
    }
    hist
}

fn histogram_difference(h1: &BTreeMap<u64, usize>, h2: &BTreeMap<u64, usize>) -> Option<String> {
    let keys: std::collections::BTreeSet<u64> = h1.keys().chain(h2.keys()).copied().collect();
    keys.into_iter().find_map(|k| {
        let (a, b) = (h1.get(&k).copied().unwrap_or(0), h2.get(&k).copied().unwrap_or(0));
        (a != b).then(|| format!("elements of order {k}: {a} vs {b}"))
    })
}

/// Order, then order histogram, then backtracking over images of a
/// generating set of `g1` (both orders at most [`ISO_SEARCH_CAP`]).
pub fn is_isomorphic(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<IsoOutcome> {
    if g1.order() != g2.order() {
        return Ok(IsoOutcome::NotIsomorphic(format!(
            "orders differ: {} vs {}",
            g1.order(),
            g2.order()
        )));
    }
    let (h1, h2) = (order_histogram(g1), order_histogram(g2));
    if let Some(diff) = histogram_difference(&h1, &h2) {
        return Ok(IsoOutcome::NotIsomorphic(format!("order histograms differ, {diff}")));
    }
    if g1.order() > ISO_SEARCH_CAP {
        return Err(Error::Indeterminate(g1.order()));
    }
    Ok(match backtrack(g1, g2) {
        Some(map) => IsoOutcome::Isomorphic(GroupHom::from_parts(g1.clone(), g2.clone(), map)),
        None => IsoOutcome::NotIsomorphic("no assignment of generator images extends to an isomorphism".into()),
    })
}

/// Decides isomorphism from an explicit candidate map when the search is out of
/// reach. A failing candidate proves nothing, so it yields `Indeterminate`
/// unless the cheap invariants already separate the groups.
pub fn verify_isomorphism(g1: &FiniteGroup, g2: &FiniteGroup, candidate: &[Elem], seed: u64) -> Result<IsoOutcome> {
    if g1.order() != g2.order() {
        return Ok(IsoOutcome::NotIsomorphic(format!(
            "orders differ: {} vs {}",
            g1.order(),
            g2.order()
        )));
    }
    let hom = GroupHom::new(g1, g2, candidate.to_vec())?;
    if hom.is_bijective() && hom.verify(seed).ok {
        return Ok(IsoOutcome::Isomorphic(hom));
    }
    is_isomorphic(g1, g2)
}

/// Extends the images of `gens[..imgs.len()]` along Cayley-graph edges.
/// `None` if that is inconsistent or not injective.
fn partial_map(g1: &FiniteGroup, g2: &FiniteGroup, gens: &[Elem], imgs: &[Elem]) -> Option<Vec<Elem>> {
    let unset = Elem::MAX;
    let mut map = vec![unset; g1.order()];
    let mut used = vec![false; g2.order()];
    map[g1.identity() as usize] = g2.identity();
    used[g2.identity() as usize] = true;
    let mut queue = vec![g1.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g1.mul(x, s);
            let v = g2.mul(map[x as usize], t);
            if map[y as usize] == unset {
                if std::mem::replace(&mut used[v as usize], true) {
                    return None;
                }
                map[y as usize] = v;
                queue.push(y);
            } else if map[y as usize] != v {
                return None;
            }
        }
    }
    Some(map)
}

fn extend(g1: &FiniteGroup, g2: &FiniteGroup, gens: &[Elem], cands: &[Vec<Elem>], imgs: &mut Vec<Elem>) -> Option<Vec<Elem>> {
    let level = imgs.len();
    for &c in &cands[level] {
        imgs.push(c);
        if let Some(map) = partial_map(g1, g2, &gens[..=level], imgs) {
            if level + 1 == gens.len() {
                return Some(map);
            }
            if let Some(done) = extend(g1, g2, gens, cands, imgs) {
                return Some(done);
            }
        }
        imgs.pop();
    }
    None
}

fn backtrack(g1: &FiniteGroup, g2: &FiniteGroup) -> Option<Vec<Elem>> {
    let gens = g1.generators().to_vec();
    if gens.is_empty() {
        return Some(vec![g2.identity()]);
    }
    let orders2: Vec<u64> = g2.elements().map(|b| g2.elem_order(b)).collect();
    let cands: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&s| {
            let o = g1.elem_order(s);
            g2.elements().filter(|&b| orders2[b as usize] == o).collect()
        })
        .collect();
    Exec::default().find_map_first(0..cands[0].len(), |i| {
        let mut imgs = vec![cands[0][i]];
        let map = partial_map(g1, g2, &gens[..1], &imgs)?;
        if gens.len() == 1 {
            return Some(map);
        }
        extend(g1, g2, &gens, &cands, &mut imgs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{cyclic, direct_product, symmetric};

    #[test]
    fn crt_and_klein() {
        let c6 = cyclic(6);
        let c2c3 = direct_product(&cyclic(2), &cyclic(3));
        let out = is_isomorphic(&c6, &c2c3).unwrap();
        let w = out.witness().unwrap();
        assert!(w.is_bijective() && w.verify(0).ok);
        let klein = direct_product(&cyclic(2), &cyclic(2));
        assert!(!is_isomorphic(&cyclic(4), &klein).unwrap().is_isomorphic());
    }

    #[test]
    fn backtracking_on_small_groups() {
        let s3 = symmetric(3);
        let out = is_isomorphic(&s3, &s3).unwrap();
        assert!(out.is_isomorphic());
        let d = direct_product(&cyclic(3), &cyclic(3));
        assert!(is_isomorphic(&d, &cyclic(9)).map(|o| !o.is_isomorphic()).unwrap());
    }

    #[test]
    fn large_groups_need_candidate() {
        let a = symmetric(6);
        assert_eq!(is_isomorphic(&a, &a).unwrap_err(), Error::Indeterminate(720));
        let id: Vec<Elem> = a.elements().collect();
        assert!(verify_isomorphism(&a, &a, &id, 1).unwrap().is_isomorphic());
    }
}
