use super::{Elem, FiniteGroup, GroupOracle};
use crate::error::{Error, Result};

struct CyclicOracle {
    n: usize,
}

impl GroupOracle for CyclicOracle {
    fn order(&self) -> usize {
        self.n
    }

    fn identity(&self) -> Elem {
        0
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        ((a as usize + b as usize) % self.n) as Elem
    }

    fn inv(&self, a: Elem) -> Elem {
        ((self.n - a as usize) % self.n) as Elem
    }

    fn name(&self) -> String {
        format!("C{}", self.n)
    }

    fn label(&self, a: Elem) -> String {
        match a {
            0 => "1".into(),
            1 => "g".into(),
            k => format!("g^{k}"),
        }
    }

    fn generators(&self) -> Option<Vec<Elem>> {
        Some(if self.n == 1 { vec![] } else { vec![1] })
    }
}

/// Cyclic group of order `n`; element `k` is `g^k`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n > 0);
    FiniteGroup::from_oracle(CyclicOracle { n })
}

struct SymmetricOracle {
    n: usize,
    perms: Vec<Vec<u8>>,
    factorials: Vec<usize>,
}

impl SymmetricOracle {
    fn new(n: usize) -> Self {
        let mut perms = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            perms.push(cur.clone());
            if !next_permutation(&mut cur) {
                break;
            }
        }
        let mut factorials = vec![1usize; n + 1];
        for i in 1..=n {
            factorials[i] = factorials[i - 1] * i;
        }
        SymmetricOracle {
            n,
            perms,
            factorials,
        }
    }

    /// Lexicographic rank of a permutation (Lehmer code).
    fn rank(&self, p: &[u8]) -> Elem {
        let mut r = 0usize;
        for i in 0..self.n {
            let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
            r += smaller * self.factorials[self.n - 1 - i];
        }
        r as Elem
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl GroupOracle for SymmetricOracle {
    fn order(&self) -> usize {
        self.perms.len()
    }

    fn identity(&self) -> Elem {
        0
    }

    // (a * b)(i) = a(b(i))
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let pa = &self.perms[a as usize];
        let pb = &self.perms[b as usize];
        let c: Vec<u8> = pb.iter().map(|&i| pa[i as usize]).collect();
        self.rank(&c)
    }

    fn inv(&self, a: Elem) -> Elem {
        let pa = &self.perms[a as usize];
        let mut c = vec![0u8; self.n];
        for (i, &x) in pa.iter().enumerate() {
            c[x as usize] = i as u8;
        }
        self.rank(&c)
    }

    fn name(&self) -> String {
        format!("S{}", self.n)
    }

    /// Cycle notation on the points 1..=n.
    fn label(&self, a: Elem) -> String {
        let p = &self.perms[a as usize];
        let mut seen = vec![false; self.n];
        let mut out = String::new();
        for start in 0..self.n {
            if seen[start] || p[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = p[x] as usize;
            }
            out.push_str(&format!("({})", cycle.join(" ")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

/// Symmetric group on `n ≤ 7` points, permutations in lexicographic order.
pub fn symmetric(n: usize) -> FiniteGroup {
    assert!((1..=7).contains(&n), "symmetric groups are supported for n <= 7");
    FiniteGroup::from_oracle(SymmetricOracle::new(n))
}

struct ProductOracle {
    a: FiniteGroup,
    b: FiniteGroup,
}

impl GroupOracle for ProductOracle {
    fn order(&self) -> usize {
        self.a.order() * self.b.order()
    }

    fn identity(&self) -> Elem {
        self.pack(self.a.identity(), self.b.identity())
    }

    fn mul(&self, x: Elem, y: Elem) -> Elem {
        let (x1, x2) = self.unpack(x);
        let (y1, y2) = self.unpack(y);
        self.pack(self.a.mul(x1, y1), self.b.mul(x2, y2))
    }

    fn inv(&self, x: Elem) -> Elem {
        let (x1, x2) = self.unpack(x);
        self.pack(self.a.inv(x1), self.b.inv(x2))
    }

    fn name(&self) -> String {
        format!("{} x {}", self.a.name(), self.b.name())
    }

    fn label(&self, x: Elem) -> String {
        let (x1, x2) = self.unpack(x);
        format!("({}, {})", self.a.label(x1), self.b.label(x2))
    }

    fn generators(&self) -> Option<Vec<Elem>> {
        let mut gens: Vec<Elem> = self
            .a
            .generators()
            .iter()
            .map(|&g| self.pack(g, self.b.identity()))
            .collect();
        gens.extend(
            self.b
                .generators()
                .iter()
                .map(|&g| self.pack(self.a.identity(), g)),
        );
        Some(gens)
    }
}

impl ProductOracle {
    fn pack(&self, x: Elem, y: Elem) -> Elem {
        x * self.b.order() as Elem + y
    }

    fn unpack(&self, z: Elem) -> (Elem, Elem) {
        let nb = self.b.order() as Elem;
        (z / nb, z % nb)
    }
}

/// Index arithmetic for `A x B`, where `(x, y)` has index `x * |B| + y`.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: FiniteGroup,
    pub left: FiniteGroup,
    pub right: FiniteGroup,
}

impl DirectProduct {
    pub fn new(a: &FiniteGroup, b: &FiniteGroup) -> DirectProduct {
        DirectProduct {
            group: direct_product(a, b),
            left: a.clone(),
            right: b.clone(),
        }
    }

    pub fn pair(&self, x: Elem, y: Elem) -> Elem {
        x * self.right.order() as Elem + y
    }

    pub fn split(&self, z: Elem) -> (Elem, Elem) {
        let nb = self.right.order() as Elem;
        (z / nb, z % nb)
    }
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    FiniteGroup::from_oracle(ProductOracle {
        a: a.clone(),
        b: b.clone(),
    })
}

struct TableOracle {
    n: usize,
    identity: Elem,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
}

impl GroupOracle for TableOracle {
    fn order(&self) -> usize {
        self.n
    }

    fn identity(&self) -> Elem {
        self.identity
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.n + b as usize]
    }

    fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    fn name(&self) -> String {
        format!("table group of order {}", self.n)
    }
}

/// Group from a row-major Cayley table. Identity and inverses are located
/// from the table; associativity is left to [`FiniteGroup::verify_axioms`].
pub fn table_group(n: usize, table: Vec<Elem>) -> Result<FiniteGroup> {
    if n == 0 || table.len() != n * n {
        return Err(Error::InvalidGroup(format!(
            "table has {} entries, expected {}",
            table.len(),
            n * n
        )));
    }
    if let Some(&bad) = table.iter().find(|&&x| x as usize >= n) {
        return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|a| table[e * n + a] as usize == a && table[a * n + e] as usize == a))
        .ok_or_else(|| Error::InvalidGroup("no identity element".into()))? as Elem;
    let mut inverse = Vec::with_capacity(n);
    for a in 0..n {
        let inv = (0..n)
            .find(|&b| table[a * n + b] == identity && table[b * n + a] == identity)
            .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
        inverse.push(inv as Elem);
    }
    Ok(FiniteGroup::from_oracle(TableOracle {
        n,
        identity,
        table,
        inverse,
    }))
}

/// Parses the text format written by [`FiniteGroup::export_table`].
pub fn parse_table(text: &str) -> Result<FiniteGroup> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty table".into()))?;
    let n: usize = header
        .trim()
        .strip_prefix("order=")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
    let mut table = Vec::with_capacity(n * n);
    for (row, line) in lines.enumerate() {
        let before = table.len();
        for tok in line.split_whitespace() {
            let v: Elem = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad entry {tok:?} in row {row}")))?;
            table.push(v);
        }
        if table.len() - before != n {
            return Err(Error::Parse(format!("row {row} has {} entries", table.len() - before)));
        }
    }
    table_group(n, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_ranks_roundtrip() {
        let s = SymmetricOracle::new(4);
        for (i, p) in s.perms.iter().enumerate() {
            assert_eq!(s.rank(p) as usize, i);
        }
    }

    #[test]
    fn symmetric_labels() {
        let s3 = symmetric(3);
        assert_eq!(s3.label(0), "()");
        let labels: Vec<String> = s3.elements().map(|a| s3.label(a)).collect();
        assert!(labels.contains(&"(1 2)".to_string()));
        assert!(labels.contains(&"(1 2 3)".to_string()));
    }

    #[test]
    fn product_index_layout() {
        let dp = DirectProduct::new(&cyclic(2), &cyclic(3));
        let z = dp.pair(1, 2);
        assert_eq!(dp.split(z), (1, 2));
        assert_eq!(dp.group.mul(z, z), dp.pair(0, 1));
    }

    #[test]
    fn malformed_tables_rejected() {
        assert!(parse_table("order=2\n0 1\n").is_err());
        assert!(parse_table("order=2\n0 1\n1 1\n").is_err());
        assert!(parse_table("size=2\n0 1\n1 0\n").is_err());
        assert!(parse_table("order=2\n0 1\n1 0\n").is_ok());
    }
}
