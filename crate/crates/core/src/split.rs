//! Splitting of `1 -> H -> G -> G/H -> 1`: cyclic transversals `{1, x, ..., x^(n-1)}`,
//! complements, and the prime search for `p^r ≡ 1 mod n` with `gcd(n, (p^r-1)/n) = 1`.

use std::time::Instant;

use num_integer::gcd;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grp::{
    derived_subgroup, subgroup_generated, transversal_enumerate, Elem, FiniteGroup, Subgroup, Transversal,
};
use crate::par::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    SplitWithWitness,
    NoSplit,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitWitness {
    pub element: Elem,
    pub label: String,
    /// `x^0, ..., x^(n-1)` as element indices.
    pub powers: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    /// Order of the abelianization when `n` divides it, otherwise `[G:H]`.
    pub m: usize,
    pub n: usize,
    /// `gcd(n, m/n)`.
    pub gcd: usize,
    pub verdict: Verdict,
    pub witness: Option<SplitWitness>,
    pub elapsed_ms: u64,
}

impl SplitReport {
    /// The verdict agrees with the witness, and the witness is a cyclic transversal.
    pub fn is_consistent(&self, g: &FiniteGroup, h: &Subgroup) -> bool {
        match (&self.verdict, &self.witness) {
            (Verdict::SplitWithWitness, Some(w)) => is_cyclic_transversal(g, h, w.element, self.n),
            (Verdict::SplitWithWitness, None) => false,
            (_, w) => w.is_none(),
        }
    }
}

/// `x^n = 1` and `x^k ∉ H` for `0 < k < n`, so the powers of `x` meet every coset once.
pub fn is_cyclic_transversal(g: &FiniteGroup, h: &Subgroup, x: Elem, n: usize) -> bool {
    let mut y = g.identity();
    for k in 0..n {
        if k > 0 && h.contains(y) {
            return false;
        }
        y = g.mul(y, x);
    }
    y == g.identity()
}

fn check_normal_index(h: &Subgroup) -> Result<usize> {
    if !h.is_normal() {
        return Err(Error::NotNormal);
    }
    Ok(h.index())
}

/// Abelianization order `m` of `G` if it is computable and divisible by `n`.
fn abelianization_order(g: &FiniteGroup, n: usize) -> Option<usize> {
    let d = derived_subgroup(g).ok()?;
    let m = d.index();
    (m % n == 0).then_some(m)
}

/// Least `x` (by element index) whose powers form a transversal of `H`.
pub fn cyclic_transversal_search(g: &FiniteGroup, h: &Subgroup) -> Result<SplitReport> {
    cyclic_transversal_search_with(g, h, Exec::default())
}

pub fn cyclic_transversal_search_with(g: &FiniteGroup, h: &Subgroup, exec: Exec) -> Result<SplitReport> {
    let start = Instant::now();
    let n = check_normal_index(h)?;
    let (m, gcd_value) = match abelianization_order(g, n) {
        Some(m) => (m, gcd(n, m / n)),
        None => (n, gcd(n, 1)),
    };
    let found = exec.find_first(0..g.order(), |x| {
        let x = x as Elem;
        (n == 1 || !h.contains(x)) && is_cyclic_transversal(g, h, x, n)
    });
    let witness = found.map(|x| {
        let x = x as Elem;
        let powers = (0..n as i64).map(|k| g.pow(x, k)).collect();
        SplitWitness {
            element: x,
            label: g.label(x),
            powers,
        }
    });
    Ok(SplitReport {
        m,
        n,
        gcd: gcd_value,
        verdict: if witness.is_some() {
            Verdict::SplitWithWitness
        } else {
            Verdict::NoSplit
        },
        witness,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// `T` is a subgroup of order `[G:H]` meeting `H` only in the identity.
pub fn is_complement(h: &Subgroup, t: &Subgroup) -> bool {
    t.order() == h.index() && t.intersection(h).order() == 1
}

/// Budget on generator pairs tried before the exhaustive fallback.
const PAIR_BUDGET: usize = 20_000_000;

/// Closure of `gens` if it stays within `limit` elements and meets `H` trivially.
fn small_complement_closure(g: &FiniteGroup, h: &Subgroup, gens: &[Elem], limit: usize) -> Option<Vec<Elem>> {
    let mut members = vec![g.identity()];
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        i += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !members.contains(&y) {
                if members.len() == limit || h.contains(y) {
                    return None;
                }
                members.push(y);
            }
        }
    }
    Some(members)
}

/// A complement `T` of a normal subgroup `H`, returned as a transversal in
/// canonical coset order. Cyclic complements are tried first, then subgroups
/// on two generators, then (for `|G| ≤ 2000`) an exhaustive search.
pub fn multiplicative_transversal_search(g: &FiniteGroup, h: &Subgroup) -> Result<Option<Transversal>> {
    multiplicative_transversal_search_with(g, h, Exec::default())
}

pub fn multiplicative_transversal_search_with(g: &FiniteGroup, h: &Subgroup, exec: Exec) -> Result<Option<Transversal>> {
    let n = check_normal_index(h)?;
    if n > 8 && g.order() > 5000 {
        return Err(Error::SearchBudgetExceeded(format!(
            "index {n} in a group of order {}",
            g.order()
        )));
    }
    let canonical = transversal_enumerate(g, h);
    let to_transversal = |members: &[Elem]| -> Transversal {
        let mut reps = vec![g.identity(); n];
        for &t in members {
            reps[canonical.coset_of(t)] = t;
        }
        Transversal::new(g, h, reps).expect("a complement is a transversal")
    };
    if n == 1 {
        return Ok(Some(to_transversal(&[g.identity()])));
    }
    // Elements that can lie in a complement: order dividing n, cyclic subgroup meeting H trivially.
    let candidates: Vec<Elem> = exec
        .map(0..g.order(), |x| {
            let x = x as Elem;
            (!h.contains(x) && small_complement_closure(g, h, &[x], n).is_some()).then_some(x)
        })
        .into_iter()
        .flatten()
        .collect();
    if let Some(&x) = candidates.iter().find(|&&x| g.elem_order(x) == n as u64) {
        let members = small_complement_closure(g, h, &[x], n).expect("candidate");
        return Ok(Some(to_transversal(&members)));
    }
    let c = candidates.len();
    if c * c / 2 <= PAIR_BUDGET {
        let found = exec.find_map_first(0..c, |i| {
            candidates[i + 1..].iter().find_map(|&y| {
                let members = small_complement_closure(g, h, &[candidates[i], y], n)?;
                (members.len() == n).then_some(members)
            })
        });
        if let Some(members) = found {
            return Ok(Some(to_transversal(&members)));
        }
    }
    if g.order() > 2000 {
        return Err(Error::SearchBudgetExceeded(format!(
            "no complement on at most two generators; exhaustive search needs |G| <= 2000, got {}",
            g.order()
        )));
    }
    let mut coset_members: Vec<Vec<Elem>> = vec![Vec::new(); n];
    for &x in &candidates {
        coset_members[canonical.coset_of(x)].push(x);
    }
    Ok(complement_dfs(g, h, &canonical, &coset_members, &mut Vec::new(), n).map(|m| to_transversal(&m)))
}

fn complement_dfs(
    g: &FiniteGroup,
    h: &Subgroup,
    canonical: &Transversal,
    coset_members: &[Vec<Elem>],
    gens: &mut Vec<Elem>,
    n: usize,
) -> Option<Vec<Elem>> {
    let members = small_complement_closure(g, h, gens, n)?;
    if members.len() == n {
        return Some(members);
    }
    let mut covered = vec![false; n];
    for &t in &members {
        covered[canonical.coset_of(t)] = true;
    }
    let next = covered.iter().position(|&c| !c)?;
    for &y in &coset_members[next] {
        gens.push(y);
        if let Some(found) = complement_dfs(g, h, canonical, coset_members, gens, n) {
            return Some(found);
        }
        gens.pop();
    }
    None
}

/// The subgroup generated by `gens`, if it is a complement of `H`.
pub fn complement_from_generators(g: &FiniteGroup, h: &Subgroup, gens: &[Elem]) -> Result<Option<Subgroup>> {
    let t = subgroup_generated(g, gens)?;
    Ok(is_complement(h, &t).then_some(t))
}

/// Largest `limit` accepted by [`dirichlet_condition_search`].
pub const PRIME_LIMIT: u64 = 10_000_000;

/// Primes `p ≤ limit` with `p^r ≡ 1 (mod n)` and `gcd(n, (p^r - 1)/n) = 1`.
pub fn dirichlet_condition_search(n: u64, r: u64, limit: u64) -> Result<Vec<u64>> {
    let g = gcd(r, n);
    if g != 1 {
        return Err(Error::GcdPrecondition(g));
    }
    if limit > PRIME_LIMIT {
        return Err(Error::LimitTooLarge(limit));
    }
    if n == 0 || r == 0 {
        return Err(Error::PreconditionFailed("n and r must be positive".into()));
    }
    Ok(sieve(limit)
        .into_iter()
        .filter(|&p| prime_satisfies(p, n, r))
        .collect())
}

fn prime_satisfies(p: u64, n: u64, r: u64) -> bool {
    let n2 = n as u128 * n as u128;
    let mut acc = 1u128 % n2;
    let base = p as u128 % n2;
    for _ in 0..r {
        acc = acc * base % n2;
    }
    // acc = p^r mod n^2, so (p^r - 1)/n ≡ (acc - 1)/n (mod n).
    if !((acc + n2 - 1) % n2).is_multiple_of(n as u128) {
        return false;
    }
    let quotient_mod_n = ((acc + n2 - 1) % n2 / n as u128) as u64;
    gcd(n, quotient_mod_n) == 1
}

/// Primes up to `limit` by the sieve of Eratosthenes.
pub fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| !composite[k]).map(|k| k as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::fq_make;
    use crate::grp::{cyclic, direct_product, symmetric};
    use crate::matgrp::gl2_group;

    #[test]
    fn prime_search_examples() {
        assert_eq!(dirichlet_condition_search(4, 1, 40).unwrap(), vec![5, 13, 29, 37]);
        assert_eq!(dirichlet_condition_search(1, 1, 12).unwrap(), vec![2, 3, 5, 7, 11]);
        assert_eq!(dirichlet_condition_search(2, 1, 12).unwrap(), vec![3, 7, 11]);
        assert_eq!(dirichlet_condition_search(4, 2, 40).unwrap_err(), Error::GcdPrecondition(2));
        assert_eq!(
            dirichlet_condition_search(3, 1, 20_000_000).unwrap_err(),
            Error::LimitTooLarge(20_000_000)
        );
    }

    #[test]
    fn cyclic_search_on_gl2() {
        let g7 = gl2_group(&fq_make(7, 1).unwrap()).unwrap();
        let h = g7.det_power_subgroup(2).unwrap();
        let rep = cyclic_transversal_search(g7.group(), &h).unwrap();
        assert_eq!((rep.m, rep.n, rep.gcd), (6, 2, 1));
        assert_eq!(rep.verdict, Verdict::SplitWithWitness);
        assert!(rep.is_consistent(g7.group(), &h));

        let g5 = gl2_group(&fq_make(5, 1).unwrap()).unwrap();
        let h = g5.det_power_subgroup(2).unwrap();
        let rep = cyclic_transversal_search(g5.group(), &h).unwrap();
        assert_eq!(rep.gcd, 2);
        assert_eq!(rep.verdict, Verdict::NoSplit);
    }

    #[test]
    fn trivial_index_splits_with_identity() {
        let s3 = symmetric(3);
        let rep = cyclic_transversal_search(&s3, &Subgroup::whole(&s3)).unwrap();
        assert_eq!(rep.verdict, Verdict::SplitWithWitness);
        assert_eq!(rep.witness.unwrap().element, s3.identity());
    }

    #[test]
    fn complements() {
        let g5 = gl2_group(&fq_make(5, 1).unwrap()).unwrap();
        let t = multiplicative_transversal_search(g5.group(), &g5.sl2()).unwrap().unwrap();
        assert!(t.is_closed());
        assert_eq!(t.reps()[0], g5.group().identity());
        let diag = g5.det_section_generator();
        assert_eq!(g5.mat(diag).entries(), [2, 0, 0, 1]);
        assert!(complement_from_generators(g5.group(), &g5.sl2(), &[diag]).unwrap().is_some());

        let klein = direct_product(&cyclic(2), &cyclic(2));
        let factor = subgroup_generated(&klein, &[2]).unwrap();
        let t = multiplicative_transversal_search(&klein, &factor).unwrap().unwrap();
        assert_eq!(t.reps(), &[0, 1]);

        let c4 = cyclic(4);
        let h = subgroup_generated(&c4, &[2]).unwrap();
        assert!(multiplicative_transversal_search(&c4, &h).unwrap().is_none());
    }

    #[test]
    fn non_cyclic_complement_found() {
        // S4 over the Klein four-group: complement S3, which is not cyclic.
        let s4 = symmetric(4);
        let v4 = crate::grp::normal_subgroups(&s4)
            .into_iter()
            .find(|n| n.order() == 4)
            .unwrap();
        let t = multiplicative_transversal_search(&s4, &v4).unwrap().unwrap();
        assert!(t.is_closed());
        assert_eq!(t.len(), 6);
    }
}
