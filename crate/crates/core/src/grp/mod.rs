//! Finite groups as dense element indices with a multiplication oracle.
//!
//! Groups up to [`TABLE_LIMIT`] elements are backed by a full Cayley table;
//! larger ones call their oracle on every product. Subgroups, quotients,
//! homomorphisms and isomorphism testing all work on the index
//! representation and never look inside elements.

mod builders;
mod hom;
mod iso;
mod subgroup;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::linalg::Matrix;
use crate::par::Exec;

pub use builders::{
    cyclic, direct_product, parse_table, symmetric, table_group, DirectProduct,
};
pub use hom::{GroupHom, HomCheck};
pub use iso::{is_isomorphic, order_histogram, verify_isomorphism, IsoOutcome, ISO_SEARCH_CAP};
pub use subgroup::{
    conjugacy_classes, derived_subgroup, normal_closure, normal_subgroups, quotient,
    subgroup_generated, transversal_enumerate, unique_abelian_index_n, Subgroup, Transversal,
};

pub type Elem = u32;

/// Largest order for which a full multiplication table is stored.
pub const TABLE_LIMIT: usize = 5000;
/// Largest order for which associativity and homomorphisms are checked on all pairs/triples.
pub const EXHAUSTIVE_LIMIT: usize = 512;
/// Random triples or pairs drawn above [`EXHAUSTIVE_LIMIT`].
pub const SAMPLE_COUNT: usize = 100_000;

/// Element-level behaviour of a concrete group.
pub trait GroupOracle: Send + Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> Elem;
    fn mul(&self, a: Elem, b: Elem) -> Elem;
    fn inv(&self, a: Elem) -> Elem;

    fn name(&self) -> String;

    fn label(&self, a: Elem) -> String {
        a.to_string()
    }

    /// A known generating set, if cheaper than the greedy search.
    fn generators(&self) -> Option<Vec<Elem>> {
        None
    }

    /// Matrix of the element, for matrix groups.
    fn matrix(&self, _a: Elem) -> Option<Matrix> {
        None
    }

    fn coefficient_field(&self) -> Option<FieldSpec> {
        None
    }

    /// Whether this group is a group of scalar classes of matrices.
    fn is_projective(&self) -> bool {
        false
    }

    fn prefers_table(&self) -> bool {
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backing {
    Table,
    Oracle,
}

struct GroupData {
    oracle: Arc<dyn GroupOracle>,
    order: usize,
    identity: Elem,
    inverse: Vec<Elem>,
    table: Option<Vec<u16>>,
    generators: OnceLock<Vec<Elem>>,
}

#[derive(Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name(), self.order())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub identity: bool,
    pub inverses: bool,
    pub associativity: bool,
    /// "exhaustive" or "sampled".
    pub mode: &'static str,
    pub triples_checked: u64,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.identity && self.inverses && self.associativity
    }
}

impl FiniteGroup {
    pub fn from_oracle<O: GroupOracle + 'static>(oracle: O) -> FiniteGroup {
        Self::from_arc(Arc::new(oracle))
    }

    pub fn from_arc(oracle: Arc<dyn GroupOracle>) -> FiniteGroup {
        let order = oracle.order();
        assert!(order > 0 && order <= u32::MAX as usize);
        let identity = oracle.identity();
        let exec = Exec::default();
        let table = (order <= TABLE_LIMIT && oracle.prefers_table()).then(|| {
            let rows: Vec<Vec<u16>> = exec.map(0..order, |a| {
                (0..order)
                    .map(|b| oracle.mul(a as Elem, b as Elem) as u16)
                    .collect()
            });
            rows.concat()
        });
        let inverse = exec.map(0..order, |a| oracle.inv(a as Elem));
        FiniteGroup {
            data: Arc::new(GroupData {
                oracle,
                order,
                identity,
                inverse,
                table,
                generators: OnceLock::new(),
            }),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.data.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        self.data.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.data.table {
            Some(t) => t[a as usize * self.data.order + b as usize] as Elem,
            None => self.data.oracle.mul(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.data.inverse[a as usize]
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let mut base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        // g^-1 x g
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let a_inv_b_inv = self.mul(self.inv(a), self.inv(b));
        self.mul(ab, a_inv_b_inv)
    }

    pub fn elem_order(&self, a: Elem) -> u64 {
        let e = self.identity();
        let mut x = a;
        let mut k = 1u64;
        while x != e {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn label(&self, a: Elem) -> String {
        self.data.oracle.label(a)
    }

    pub fn name(&self) -> String {
        self.data.oracle.name()
    }

    pub fn backing(&self) -> Backing {
        if self.data.table.is_some() {
            Backing::Table
        } else {
            Backing::Oracle
        }
    }

    pub fn matrix(&self, a: Elem) -> Option<Matrix> {
        self.data.oracle.matrix(a)
    }

    pub fn coefficient_field(&self) -> Option<FieldSpec> {
        self.data.oracle.coefficient_field()
    }

    pub fn is_projective(&self) -> bool {
        self.data.oracle.is_projective()
    }

    pub fn same(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order() as Elem
    }

    pub fn check_index(&self, a: usize) -> Result<Elem> {
        if a < self.order() {
            Ok(a as Elem)
        } else {
            Err(Error::IndexOutOfRange {
                index: a,
                order: self.order(),
            })
        }
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A small generating set: the oracle's own, or a greedy one that adds
    /// elements of largest order first.
    pub fn generators(&self) -> &[Elem] {
        self.data.generators.get_or_init(|| {
            if let Some(g) = self.data.oracle.generators() {
                return g;
            }
            self.greedy_generators()
        })
    }

    fn greedy_generators(&self) -> Vec<Elem> {
        let n = self.order();
        if n == 1 {
            return Vec::new();
        }
        let orders = Exec::default().map(0..n, |a| self.elem_order(a as Elem));
        let mut cand: Vec<Elem> = self.elements().collect();
        cand.sort_by_key(|&a| (std::cmp::Reverse(orders[a as usize]), a));
        let mut gens = Vec::new();
        let mut members = subgroup::closure_mask(self, &gens);
        let mut size = 1usize;
        for a in cand {
            if size == n {
                break;
            }
            if !members[a as usize] {
                gens.push(a);
                members = subgroup::closure_mask(self, &gens);
                size = members.iter().filter(|&&m| m).count();
            }
        }
        gens
    }

    /// Group axioms: exhaustive on all triples up to [`EXHAUSTIVE_LIMIT`], sampled above.
    pub fn verify_axioms(&self, seed: u64) -> AxiomReport {
        self.verify_axioms_with(seed, Exec::default())
    }

    pub fn verify_axioms_with(&self, seed: u64, exec: Exec) -> AxiomReport {
        let n = self.order();
        let e = self.identity();
        let identity = exec.all(0..n, |a| {
            let a = a as Elem;
            self.mul(e, a) == a && self.mul(a, e) == a
        });
        let inverses = exec.all(0..n, |a| {
            let a = a as Elem;
            self.mul(a, self.inv(a)) == e && self.mul(self.inv(a), a) == e
        });
        let (associativity, mode, triples) = if n <= EXHAUSTIVE_LIMIT {
            let ok = exec.all(0..n, |a| {
                let a = a as Elem;
                (0..n as Elem).all(|b| {
                    let ab = self.mul(a, b);
                    (0..n as Elem).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
                })
            });
            (ok, "exhaustive", (n as u64).pow(3))
        } else {
            let triples = sample_tuples::<3>(n, SAMPLE_COUNT, seed);
            let ok = exec.all(0..triples.len(), |i| {
                let [a, b, c] = triples[i];
                self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
            });
            (ok, "sampled", SAMPLE_COUNT as u64)
        };
        AxiomReport {
            identity,
            inverses,
            associativity,
            mode,
            triples_checked: triples,
        }
    }

    /// Count of elements per element order.
    pub fn order_histogram(&self) -> BTreeMap<u64, usize> {
        iso::order_histogram(self)
    }

    /// Plain-text Cayley table: `order=N`, then one row per element.
    pub fn export_table(&self) -> String {
        let n = self.order();
        let mut out = format!("order={n}\n");
        for a in 0..n as Elem {
            let row: Vec<String> = (0..n as Elem).map(|b| self.mul(a, b).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `count` uniformly random tuples of element indices from a seeded stream.
pub fn sample_tuples<const K: usize>(order: usize, count: usize, seed: u64) -> Vec<[Elem; K]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| std::array::from_fn(|_| rng.gen_range(0..order) as Elem))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let c6 = cyclic(6);
        assert_eq!(c6.order(), 6);
        assert_eq!(c6.identity(), 0);
        assert_eq!(c6.mul(4, 5), 3);
        assert_eq!(c6.inv(2), 4);
        assert_eq!(c6.elem_order(2), 3);
        assert_eq!(c6.pow(1, -1), 5);
        assert!(c6.is_abelian());
        assert_eq!(c6.backing(), Backing::Table);
    }

    #[test]
    fn symmetric_group_axioms() {
        let s4 = symmetric(4);
        assert_eq!(s4.order(), 24);
        assert!(!s4.is_abelian());
        let rep = s4.verify_axioms(1);
        assert!(rep.ok());
        assert_eq!(rep.mode, "exhaustive");
        assert!(s4.generators().len() <= 3);
    }

    #[test]
    fn export_and_parse_table() {
        let s3 = symmetric(3);
        let text = s3.export_table();
        assert!(text.starts_with("order=6\n"));
        let g = parse_table(&text).unwrap();
        assert_eq!(g.order(), 6);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(g.mul(a, b), s3.mul(a, b));
            }
        }
    }

    #[test]
    fn sampled_axioms_for_large_oracle_group() {
        let big = direct_product(&symmetric(5), &cyclic(6));
        assert_eq!(big.order(), 720);
        let rep = big.verify_axioms(7);
        assert!(rep.ok());
        assert_eq!(rep.mode, "sampled");
    }
}
