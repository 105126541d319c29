use std::sync::OnceLock;

use proptest::prelude::*;

use galsplit::ffield::{fq_make, FieldSpec};
use galsplit::groupspec::{parse_group, parse_rep, BuiltGroup};
use galsplit::grp::{cyclic, direct_product, symmetric, Elem, FiniteGroup};
use galsplit::induce::Rep;
use galsplit::linalg::Matrix;
use galsplit::matgrp::{gl2_group, Gl2};
use galsplit::split::{
    cyclic_transversal_search_with, dirichlet_condition_search, multiplicative_transversal_search_with,
};
use galsplit::suites::{Corpus, InduceInstance};
use galsplit::Exec;

const FIELDS: [(u32, u32); 6] = [(2, 1), (3, 2), (5, 1), (7, 1), (2, 3), (13, 1)];

fn fields() -> &'static Vec<FieldSpec> {
    static F: OnceLock<Vec<FieldSpec>> = OnceLock::new();
    F.get_or_init(|| FIELDS.iter().map(|&(p, r)| fq_make(p, r).unwrap()).collect())
}

fn gl2_5() -> &'static Gl2 {
    static G: OnceLock<Gl2> = OnceLock::new();
    G.get_or_init(|| gl2_group(&fq_make(5, 1).unwrap()).unwrap())
}

fn mixed() -> &'static FiniteGroup {
    static G: OnceLock<FiniteGroup> = OnceLock::new();
    G.get_or_init(|| direct_product(&cyclic(6), &symmetric(4)))
}

fn natural_gl3() -> &'static (BuiltGroup, Rep) {
    static R: OnceLock<(BuiltGroup, Rep)> = OnceLock::new();
    R.get_or_init(|| {
        let g = parse_group("gl2:3").unwrap();
        let r = parse_rep(&g, "natural", None).unwrap();
        (g, r)
    })
}

fn induced() -> &'static Vec<InduceInstance> {
    static I: OnceLock<Vec<InduceInstance>> = OnceLock::new();
    I.get_or_init(|| Corpus::default().induce.iter().map(|c| c.build().unwrap()).collect())
}

fn random_matrix(f: &FieldSpec, dim: usize, seed: &[u32]) -> Matrix {
    Matrix::from_data(dim, seed.iter().take(dim * dim).map(|v| v % f.q()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(i in 0..FIELDS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = &fields()[i];
        let (a, b, c) = (a % f.q(), b % f.q(), c % f.q());
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        match f.inv(a) {
            Some(x) => prop_assert_eq!(f.mul(a, x), 1),
            None => prop_assert_eq!(a, 0),
        }
        prop_assert_eq!(f.pow(a, f.q() as u64), a);
    }

    #[test]
    fn group_axioms(x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let g = mixed();
        let n = g.order() as u32;
        let (x, y, z) = (x % n, y % n, z % n);
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, g.inv(x)), g.identity());
        prop_assert_eq!(g.mul(g.identity(), x), x);
        prop_assert_eq!(g.pow(x, g.elem_order(x) as i64), g.identity());
    }

    #[test]
    fn determinant_is_multiplicative(x in 0..480u32, y in 0..480u32) {
        let gl = gl2_5();
        let f = gl.field();
        prop_assert_eq!(gl.det(gl.group().mul(x, y)), f.mul(gl.det(x), gl.det(y)));
    }

    #[test]
    fn representation_is_multiplicative(x in 0..48u32, y in 0..48u32) {
        let (g, rho) = natural_gl3();
        let f = rho.field();
        let xy = g.group.mul(x, y);
        prop_assert_eq!(rho.matrix(x).mul(rho.matrix(y), f), rho.matrix(xy).clone());
    }

    #[test]
    fn kronecker_mixed_product(i in 0..FIELDS.len(), s in proptest::collection::vec(any::<u32>(), 16)) {
        let f = &fields()[i];
        let a = random_matrix(f, 2, &s[0..4]);
        let b = random_matrix(f, 2, &s[4..8]);
        let c = random_matrix(f, 2, &s[8..12]);
        let d = random_matrix(f, 2, &s[12..16]);
        let lhs = a.kron(&b, f).mul(&c.kron(&d, f), f);
        let rhs = a.mul(&c, f).kron(&b.mul(&d, f), f);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matrix_inverse(i in 0..FIELDS.len(), s in proptest::collection::vec(any::<u32>(), 9)) {
        let f = &fields()[i];
        let a = random_matrix(f, 3, &s);
        if let Some(b) = a.inverse(f) {
            prop_assert!(a.mul(&b, f).is_identity());
            prop_assert!(b.mul(&a, f).is_identity());
        }
    }

    #[test]
    fn induced_blocks_follow_cosets(k in any::<usize>(), x in any::<u32>()) {
        let inst = &induced()[k % induced().len()];
        let b = &inst.block;
        let g = b.group();
        let x = x % g.order() as u32;
        let reps = b.transversal.reps();
        let m = b.m();
        for p in 0..b.n() {
            for q in 0..b.n() {
                let y = g.mul(g.mul(reps[p], x), g.inv(reps[q]));
                let blk = b.block(x, p, q);
                if inst.h.contains(y) {
                    prop_assert_eq!(blk, b.sigma.matrix(inst.h.position(y).unwrap() as Elem).clone());
                } else {
                    prop_assert_eq!(blk, Matrix::zeros(m));
                }
            }
        }
    }

    #[test]
    fn prime_search_matches_congruence(n in 1u64..12, r in 1u64..4, limit in 2u64..3000) {
        prop_assume!(num_integer::gcd(n, r) == 1);
        let found = dirichlet_condition_search(n, r, limit).unwrap();
        prop_assert_eq!(found, galsplit::suites::prime_oracle(n, r, limit));
    }
}

#[test]
fn prime_search_rejects_shared_factors() {
    assert!(dirichlet_condition_search(4, 2, 100).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sequential_and_parallel_agree(i in 0..4usize) {
        let gl = gl2_5();
        let n = [1u64, 2, 4, 2][i];
        let h = gl.det_power_subgroup(n).unwrap();
        let mut a = cyclic_transversal_search_with(gl.group(), &h, Exec::Sequential).unwrap();
        let mut b = cyclic_transversal_search_with(gl.group(), &h, Exec::Parallel).unwrap();
        a.elapsed_ms = 0;
        b.elapsed_ms = 0;
        prop_assert_eq!(a, b);
        let s = multiplicative_transversal_search_with(gl.group(), &h, Exec::Sequential).unwrap();
        let p = multiplicative_transversal_search_with(gl.group(), &h, Exec::Parallel).unwrap();
        prop_assert_eq!(s.map(|t| t.reps().to_vec()), p.map(|t| t.reps().to_vec()));
    }
}
