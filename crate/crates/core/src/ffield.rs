//! Exact arithmetic in F_{p^r}.
//!
//! An element is stored as the integer `c0 + c1*p + ... + c{r-1}*p^{r-1}`
//! where `c0 + c1*t + ...` is its residue modulo the field polynomial. The
//! integer order is the canonical element order used everywhere (matrix
//! enumeration, least generators, least witnesses).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u64 = 1_000_000;
const ADD_TABLE_LIMIT: u32 = 256;

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    q: u32,
    value: u32,
}

impl FqElem {
    /// Encoded value in `[0, q)`.
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field_order(self) -> u32 {
        self.q
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FqOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow(u64),
}

struct FieldData {
    p: u32,
    r: u32,
    q: u32,
    /// r+1 coefficients, little-endian, monic.
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg: Vec<u32>,
}

/// The field F_{p^r} together with its precomputed log/antilog tables.
///
/// Cloning is cheap; identical `(p, r)` always produce identical specs.
#[derive(Clone)]
pub struct FieldSpec {
    data: Arc<FieldData>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.data.p)
            .field("r", &self.data.r)
            .field("modulus", &self.data.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.data.p == other.data.p
            && self.data.r == other.data.r
            && self.data.modulus == other.data.modulus
    }
}

impl Eq for FieldSpec {}

fn digits(mut v: u32, p: u32, r: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(r as usize);
    for _ in 0..r {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Remainder of `num` modulo the monic polynomial `den` over F_p (both little-endian).
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dd = den.len() - 1;
    let p = p as u64;
    while r.len() > dd {
        let top = r.pop().unwrap() % p;
        if top == 0 {
            continue;
        }
        let shift = r.len() - dd;
        for (i, &c) in den[..dd].iter().enumerate() {
            let sub = top * c as u64 % p;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
    }
    r.into_iter().map(|c| (c % p) as u32).collect()
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let r = modulus.len() - 1;
    for deg in 1..=r / 2 {
        let count = (p as u64).pow(deg as u32);
        for low in 0..count {
            let mut f = digits(low as u32, p, deg as u32);
            f.push(1);
            if poly_rem(modulus, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.data.p
    }

    pub fn r(&self) -> u32 {
        self.data.r
    }

    pub fn q(&self) -> u32 {
        self.data.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.data.modulus
    }

    fn slow_mul(p: u32, r: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
        if r == 1 {
            return ((a as u64 * b as u64) % p as u64) as u32;
        }
        let da = digits(a, p, r);
        let db = digits(b, p, r);
        let mut prod = vec![0u64; (2 * r - 1) as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let mut rem = poly_rem(&prod, modulus, p);
        rem.resize(r as usize, 0);
        undigits(&rem, p)
    }

    fn slow_pow(p: u32, r: u32, modulus: &[u32], mut a: u32, mut k: u64) -> u32 {
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = Self::slow_mul(p, r, modulus, acc, a);
            }
            a = Self::slow_mul(p, r, modulus, a, a);
            k >>= 1;
        }
        acc
    }

    fn digit_add(&self, a: u32, b: u32) -> u32 {
        let p = self.data.p;
        if self.data.r == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.data.r {
            let s = (a % p + b % p) % p;
            out += s * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn zero(&self) -> FqElem {
        self.elem(0)
    }

    pub fn one(&self) -> FqElem {
        self.elem(1)
    }

    /// Element with encoded value `v mod q`.
    pub fn elem(&self, v: u32) -> FqElem {
        FqElem {
            q: self.data.q,
            value: v % self.data.q,
        }
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, v: i64) -> FqElem {
        let p = self.data.p as i64;
        self.elem(v.rem_euclid(p) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FqElem> {
        if coeffs.len() != self.data.r as usize || coeffs.iter().any(|&c| c >= self.data.p) {
            return Err(Error::Parse(format!(
                "expected {} coefficients below {}",
                self.data.r, self.data.p
            )));
        }
        Ok(self.elem(undigits(coeffs, self.data.p)))
    }

    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        digits(a.value, self.data.p, self.data.r)
    }

    fn check(&self, a: FqElem) -> Result<()> {
        if a.q != self.data.q {
            Err(Error::FieldMismatch(a.q, self.data.q))
        } else {
            Ok(())
        }
    }

    // Raw arithmetic on encoded values. Callers guarantee `a, b < q`.

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.data.add_table {
            Some(t) => t[(a * self.data.q + b) as usize],
            None => self.digit_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.data.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &self.data;
        let s = d.log[a as usize] + d.log[b as usize];
        let m = d.q - 1;
        d.exp[if s >= m { s - m } else { s } as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let d = &self.data;
        let m = d.q - 1;
        let l = d.log[a as usize];
        Some(d.exp[if l == 0 { 0 } else { m - l } as usize])
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(&self, mut a: u32, mut k: u64) -> u32 {
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        acc
    }

    /// Discrete log to the base of [`unit_generator`]; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.data.log[a as usize])
    }

    pub fn generator_value(&self) -> u32 {
        self.data.generator
    }

    /// Multiplicative order of a nonzero element.
    pub fn elem_order(&self, a: u32) -> Option<u64> {
        let l = self.log(a)? as u64;
        let m = (self.data.q - 1) as u64;
        Some(if l == 0 { 1 } else { m / num_integer::gcd(l, m) })
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.data.p == 2 || self.data.log[a as usize].is_multiple_of(2)
    }

    pub fn render(&self, a: u32) -> String {
        if self.data.r == 1 {
            return a.to_string();
        }
        let c = digits(a, self.data.p, self.data.r);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, &ci)| ci != 0)
            .map(|(i, &ci)| match i {
                0 => ci.to_string(),
                1 => format!("{ci}*t"),
                _ => format!("{ci}*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    pub fn render_elem(&self, a: FqElem) -> String {
        self.render(a.value)
    }
}

/// F_{p^r} with the lexicographically smallest monic irreducible modulus.
pub fn fq_make(p: u32, r: u32) -> Result<FieldSpec> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if r == 0 || r > 6 {
        return Err(Error::DegreeTooLarge(r));
    }
    let q64 = (p as u64).checked_pow(r).unwrap_or(u64::MAX);
    if q64 > MAX_FIELD_ORDER {
        return Err(Error::FieldOrderTooLarge(q64));
    }
    let q = q64 as u32;

    let modulus = if r == 1 {
        vec![0, 1]
    } else {
        // Lower coefficients enumerated with c_{r-1} most significant.
        (0..q)
            .map(|low| {
                let mut m = digits(low, p, r);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .ok_or(Error::NoIrreducibleFound { p, r })?
    };

    let m = (q - 1) as u64;
    let factors = prime_factors(m);
    let generator = (1..q)
        .find(|&g| {
            factors
                .iter()
                .all(|&l| FieldSpec::slow_pow(p, r, &modulus, g, m / l) != 1)
        })
        .ok_or(Error::NoIrreducibleFound { p, r })?;

    let mut exp = Vec::with_capacity(m as usize);
    let mut log = vec![u32::MAX; q as usize];
    let mut x = 1u32;
    for i in 0..m {
        exp.push(x);
        log[x as usize] = i as u32;
        x = FieldSpec::slow_mul(p, r, &modulus, x, generator);
    }
    if x != 1 || exp.len() as u64 != m {
        return Err(Error::NoIrreducibleFound { p, r });
    }

    let neg: Vec<u32> = (0..q)
        .map(|v| {
            let d: Vec<u32> = digits(v, p, r).into_iter().map(|c| (p - c) % p).collect();
            undigits(&d, p)
        })
        .collect();

    let mut spec = FieldSpec {
        data: Arc::new(FieldData {
            p,
            r,
            q,
            modulus,
            generator,
            exp,
            log,
            add_table: None,
            neg,
        }),
    };
    if q <= ADD_TABLE_LIMIT {
        let table: Vec<u32> = (0..q * q).map(|i| spec.digit_add(i / q, i % q)).collect();
        Arc::get_mut(&mut spec.data).unwrap().add_table = Some(table);
    }
    Ok(spec)
}

/// Checked field arithmetic. `b` is ignored for `Inv` and `Pow`.
pub fn fq_arith(field: &FieldSpec, a: FqElem, b: FqElem, op: FqOp) -> Result<FqElem> {
    field.check(a)?;
    if matches!(op, FqOp::Add | FqOp::Sub | FqOp::Mul) {
        field.check(b)?;
    }
    let v = match op {
        FqOp::Add => field.add(a.value, b.value),
        FqOp::Sub => field.sub(a.value, b.value),
        FqOp::Mul => field.mul(a.value, b.value),
        FqOp::Inv => field.inv(a.value).ok_or(Error::ZeroInverse)?,
        FqOp::Pow(k) => field.pow(a.value, k),
    };
    Ok(field.elem(v))
}

/// Least element of multiplicative order q - 1.
pub fn unit_generator(field: &FieldSpec) -> FqElem {
    field.elem(field.data.generator)
}

/// Whether `x` lies in the image of the n-th power map on F_q^x.
pub fn is_nth_power(field: &FieldSpec, x: FqElem, n: u64) -> Result<bool> {
    field.check(x)?;
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if n == 0 {
        return Ok(x.value == 1);
    }
    let m = (field.q() - 1) as u64;
    let g = num_integer::gcd(n, m);
    Ok(field.pow(x.value, m / g) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_construction() {
        let f = fq_make(5, 1).unwrap();
        assert_eq!(f.q(), 5);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.add(4, 3), 2);
    }

    #[test]
    fn f9_modulus_and_arith() {
        // Monic quadratics mod 3 with no root, lex order: t^2+1 comes first.
        let f = fq_make(3, 2).unwrap();
        assert_eq!(f.q(), 9);
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let t = f.from_coeffs(&[0, 1]).unwrap();
        let tt = fq_arith(&f, t, t, FqOp::Mul).unwrap();
        assert_eq!(f.coeffs(tt), vec![2, 0]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(fq_make(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(fq_make(2, 7).unwrap_err(), Error::DegreeTooLarge(7));
        assert!(matches!(
            fq_make(1009, 2).unwrap_err(),
            Error::FieldOrderTooLarge(_)
        ));
    }

    #[test]
    fn arith_errors() {
        let f5 = fq_make(5, 1).unwrap();
        let f7 = fq_make(7, 1).unwrap();
        assert_eq!(
            fq_arith(&f5, f5.zero(), f5.zero(), FqOp::Inv).unwrap_err(),
            Error::ZeroInverse
        );
        assert_eq!(
            fq_arith(&f5, f5.one(), f7.one(), FqOp::Add).unwrap_err(),
            Error::FieldMismatch(7, 5)
        );
        let two = f5.elem(2);
        assert_eq!(fq_arith(&f5, two, two, FqOp::Pow(4)).unwrap(), f5.one());
    }

    #[test]
    fn generators() {
        // ord(2) mod 5 = 4; mod 7: ord(2)=3, ord(3)=6.
        assert_eq!(unit_generator(&fq_make(5, 1).unwrap()).value(), 2);
        assert_eq!(unit_generator(&fq_make(7, 1).unwrap()).value(), 3);
        assert_eq!(unit_generator(&fq_make(2, 1).unwrap()).value(), 1);
    }

    #[test]
    fn nth_powers() {
        let f = fq_make(5, 1).unwrap();
        assert!(is_nth_power(&f, f.elem(4), 2).unwrap());
        assert!(!is_nth_power(&f, f.elem(2), 2).unwrap());
        for v in 1..5 {
            assert!(is_nth_power(&f, f.elem(v), 1).unwrap());
        }
        assert_eq!(
            is_nth_power(&f, f.zero(), 2).unwrap_err(),
            Error::ZeroElement
        );
    }

    #[test]
    fn rendering() {
        let f = fq_make(3, 2).unwrap();
        assert_eq!(f.render(0), "0");
        assert_eq!(f.render(1), "1");
        assert_eq!(f.render(f.from_coeffs(&[2, 1]).unwrap().value()), "2+1*t");
        assert_eq!(f.render(f.from_coeffs(&[0, 2]).unwrap().value()), "2*t");
        let f8 = fq_make(2, 3).unwrap();
        assert_eq!(f8.render(f8.from_coeffs(&[1, 0, 1]).unwrap().value()), "1+1*t^2");
        assert_eq!(fq_make(7, 1).unwrap().render(6), "6");
    }

    #[test]
    fn deterministic_construction() {
        let a = fq_make(5, 3).unwrap();
        let b = fq_make(5, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.generator_value(), b.generator_value());
    }
}
