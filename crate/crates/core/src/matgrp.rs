//! Matrix groups over `F_q`: the enumerated group `GL_2(F_q)` with its
//! determinant subgroups, and groups of (scalar classes of) matrices of any
//! dimension generated by closure, which covers `PGL_2`, `PSL_2` and the
//! images of representations.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{is_prime, FieldSpec};
use crate::grp::{conjugacy_classes, normal_closure, Elem, FiniteGroup, GroupHom, GroupOracle, Subgroup};
use crate::linalg::Matrix;

/// Largest `q` for which `GL_2(F_q)` is enumerated.
pub const GL2_MAX_Q: u32 = 31;

/// An invertible 2x2 matrix `[[a, b], [c, d]]` over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    field: FieldSpec,
    e: [u32; 4],
}

impl Mat2 {
    pub fn new(field: &FieldSpec, entries: [u32; 4]) -> Result<Mat2> {
        let q = field.q();
        if entries.iter().any(|&x| x >= q) {
            return Err(Error::Parse(format!("entries must be below {q}")));
        }
        let m = Mat2 {
            field: field.clone(),
            e: entries,
        };
        if m.det() == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(m)
    }

    /// Entries given as integers, reduced through `Z -> F_p`.
    pub fn from_ints(field: &FieldSpec, entries: [i64; 4]) -> Result<Mat2> {
        Mat2::new(field, entries.map(|v| field.from_int(v).value()))
    }

    pub fn entries(&self) -> [u32; 4] {
        self.e
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn det(&self) -> u32 {
        let f = &self.field;
        let [a, b, c, d] = self.e;
        f.sub(f.mul(a, d), f.mul(b, c))
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        Mat2 {
            field: self.field.clone(),
            e: mul2(&self.field, self.e, other.e),
        }
    }

    pub fn pow(&self, k: u64) -> Mat2 {
        let m = self.to_matrix().pow(k, &self.field);
        Mat2::from_matrix(&self.field, &m).expect("powers of invertible matrices are invertible")
    }

    pub fn is_scalar(&self) -> bool {
        self.to_matrix().scalar_value().is_some()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_data(2, self.e.to_vec())
    }

    pub fn from_matrix(field: &FieldSpec, m: &Matrix) -> Result<Mat2> {
        if m.dim() != 2 {
            return Err(Error::NotMatrixGroup);
        }
        let d = m.data();
        Mat2::new(field, [d[0], d[1], d[2], d[3]])
    }

    /// `[[a,b],[c,d]] over GF(q)`.
    pub fn render(&self) -> String {
        format!(
            "{} over GF({})",
            self.to_matrix().render(&self.field),
            self.field.q()
        )
    }
}

/// The scalar class of a [`Mat2`], represented with its first nonzero entry equal to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjClass {
    rep: Mat2,
}

impl ProjClass {
    pub fn of(m: &Mat2) -> ProjClass {
        let n = m.to_matrix().projective_normalize(&m.field);
        ProjClass {
            rep: Mat2::from_matrix(&m.field, &n).expect("scaling keeps invertibility"),
        }
    }

    pub fn rep(&self) -> &Mat2 {
        &self.rep
    }
}

fn mul2(f: &FieldSpec, x: [u32; 4], y: [u32; 4]) -> [u32; 4] {
    let [a, b, c, d] = x;
    let [e, g, h, k] = y;
    [
        f.add(f.mul(a, e), f.mul(b, h)),
        f.add(f.mul(a, g), f.mul(b, k)),
        f.add(f.mul(c, e), f.mul(d, h)),
        f.add(f.mul(c, g), f.mul(d, k)),
    ]
}

struct Gl2Oracle {
    field: FieldSpec,
    elems: Vec<[u32; 4]>,
    rank: Vec<u32>,
}

impl Gl2Oracle {
    fn code(&self, e: [u32; 4]) -> usize {
        let q = self.field.q() as usize;
        ((e[0] as usize * q + e[1] as usize) * q + e[2] as usize) * q + e[3] as usize
    }
}

impl GroupOracle for Gl2Oracle {
    fn order(&self) -> usize {
        self.elems.len()
    }

    fn identity(&self) -> Elem {
        self.rank[self.code([1, 0, 0, 1])]
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let p = mul2(&self.field, self.elems[a as usize], self.elems[b as usize]);
        self.rank[self.code(p)]
    }

    fn inv(&self, a: Elem) -> Elem {
        let f = &self.field;
        let [a_, b, c, d] = self.elems[a as usize];
        let det = f.sub(f.mul(a_, d), f.mul(b, c));
        let di = f.inv(det).expect("invertible");
        let e = [f.mul(d, di), f.mul(f.neg(b), di), f.mul(f.neg(c), di), f.mul(a_, di)];
        self.rank[self.code(e)]
    }

    fn name(&self) -> String {
        format!("GL2(F{})", self.field.q())
    }

    fn label(&self, a: Elem) -> String {
        Matrix::from_data(2, self.elems[a as usize].to_vec()).render(&self.field)
    }

    fn matrix(&self, a: Elem) -> Option<Matrix> {
        Some(Matrix::from_data(2, self.elems[a as usize].to_vec()))
    }

    fn coefficient_field(&self) -> Option<FieldSpec> {
        Some(self.field.clone())
    }
}

/// `GL_2(F_q)` with index lookups for its matrices.
#[derive(Clone)]
pub struct Gl2 {
    group: FiniteGroup,
    oracle: Arc<Gl2Oracle>,
}

impl std::fmt::Debug for Gl2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gl2(q = {})", self.oracle.field.q())
    }
}

/// All invertible 2x2 matrices over `F_q` in entry-lexicographic order.
pub fn gl2_group(field: &FieldSpec) -> Result<Gl2> {
    let q = field.q();
    if q > GL2_MAX_Q {
        return Err(Error::FieldTooLarge(q));
    }
    let qs = q as usize;
    let mut elems = Vec::new();
    let mut rank = vec![u32::MAX; qs.pow(4)];
    for code in 0..qs.pow(4) {
        let e = [
            (code / (qs * qs * qs)) as u32,
            (code / (qs * qs) % qs) as u32,
            (code / qs % qs) as u32,
            (code % qs) as u32,
        ];
        if field.sub(field.mul(e[0], e[3]), field.mul(e[1], e[2])) != 0 {
            rank[code] = elems.len() as u32;
            elems.push(e);
        }
    }
    let oracle = Arc::new(Gl2Oracle {
        field: field.clone(),
        elems,
        rank,
    });
    let group = FiniteGroup::from_arc(oracle.clone());
    Ok(Gl2 { group, oracle })
}

impl Gl2 {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> &FieldSpec {
        &self.oracle.field
    }

    pub fn mat(&self, a: Elem) -> Mat2 {
        Mat2 {
            field: self.oracle.field.clone(),
            e: self.oracle.elems[a as usize],
        }
    }

    pub fn index_of(&self, m: &Mat2) -> Elem {
        self.oracle.rank[self.oracle.code(m.e)]
    }

    pub fn det(&self, a: Elem) -> u32 {
        self.mat(a).det()
    }

    /// Kernel of the determinant.
    pub fn sl2(&self) -> Subgroup {
        self.det_filter(|d| d == 1)
    }

    /// Scalar matrices.
    pub fn center(&self) -> Subgroup {
        let members: Vec<Elem> = self
            .group
            .elements()
            .filter(|&a| {
                let [x, y, z, w] = self.oracle.elems[a as usize];
                y == 0 && z == 0 && x == w
            })
            .collect();
        Subgroup::from_set(&self.group, &members).expect("scalars form a subgroup")
    }

    fn det_filter(&self, keep: impl Fn(u32) -> bool) -> Subgroup {
        let members: Vec<Elem> = self.group.elements().filter(|&a| keep(self.det(a))).collect();
        Subgroup::from_set(&self.group, &members).expect("determinant preimages are subgroups")
    }

    /// `{x : det(x) is an n-th power in F_q^x}`, defined when `q ≡ 1 mod n`.
    pub fn det_power_subgroup(&self, n: u64) -> Result<Subgroup> {
        let f = self.field();
        let q = f.q();
        if n == 0 || !(q as u64 - 1).is_multiple_of(n) {
            return Err(Error::CongruenceFailed { q, n });
        }
        let k = (q as u64 - 1) / n;
        Ok(self.det_filter(|d| f.pow(d, k) == 1))
    }

    /// `diag(γ, 1)` for the unit generator `γ`: a section of the determinant.
    pub fn det_section_generator(&self) -> Elem {
        let g = self.field().generator_value();
        self.index_of(&Mat2::new(self.field(), [g, 0, 0, 1]).expect("γ is a unit"))
    }
}

/// Canonical key of a matrix class: itself, or its projective normalization.
fn canon(m: Matrix, f: &FieldSpec, projective: bool) -> Matrix {
    if projective {
        m.projective_normalize(f)
    } else {
        m
    }
}

struct MatrixOracle {
    field: FieldSpec,
    projective: bool,
    mats: Vec<Matrix>,
    index: HashMap<Matrix, Elem>,
    identity: Elem,
    name: String,
}

impl MatrixOracle {
    fn lookup(&self, m: Matrix) -> Elem {
        let key = canon(m, &self.field, self.projective);
        *self
            .index
            .get(&key)
            .expect("matrix group is closed under multiplication")
    }
}

impl GroupOracle for MatrixOracle {
    fn order(&self) -> usize {
        self.mats.len()
    }

    fn identity(&self) -> Elem {
        self.identity
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.lookup(self.mats[a as usize].mul(&self.mats[b as usize], &self.field))
    }

    fn inv(&self, a: Elem) -> Elem {
        self.lookup(self.mats[a as usize].inverse(&self.field).expect("invertible"))
    }

    fn name(&self) -> String {
        self.name.clone()
    }

    fn label(&self, a: Elem) -> String {
        self.mats[a as usize].render(&self.field)
    }

    fn matrix(&self, a: Elem) -> Option<Matrix> {
        Some(self.mats[a as usize].clone())
    }

    fn coefficient_field(&self) -> Option<FieldSpec> {
        Some(self.field.clone())
    }

    fn is_projective(&self) -> bool {
        self.projective
    }

    fn prefers_table(&self) -> bool {
        let n = self.mats.len() as u64;
        let d = self.mats[0].dim() as u64;
        n * n * d * d * d <= 400_000_000
    }
}

/// A finite group of matrices, or of scalar classes of matrices, with
/// elements sorted by their canonical matrix.
#[derive(Clone)]
pub struct MatrixGroup {
    group: FiniteGroup,
    oracle: Arc<MatrixOracle>,
}

impl std::fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MatrixGroup({}, order {})", self.oracle.name, self.group.order())
    }
}

impl MatrixGroup {
    /// Wraps a set of matrices that is closed under multiplication.
    pub fn from_elements(field: &FieldSpec, mats: Vec<Matrix>, projective: bool, name: &str) -> Result<MatrixGroup> {
        let dim = mats.first().ok_or(Error::NotMatrixGroup)?.dim();
        let mut mats: Vec<Matrix> = mats
            .into_iter()
            .map(|m| canon(m, field, projective))
            .collect();
        mats.sort();
        mats.dedup();
        let index: HashMap<Matrix, Elem> = mats
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as Elem))
            .collect();
        let identity = *index
            .get(&Matrix::identity(dim))
            .ok_or_else(|| Error::InvalidGroup("identity matrix missing".into()))?;
        for m in &mats {
            if m.dim() != dim || m.inverse(field).is_none() {
                return Err(Error::InvalidGroup("matrices must be invertible of one size".into()));
            }
        }
        let oracle = Arc::new(MatrixOracle {
            field: field.clone(),
            projective,
            mats,
            index,
            identity,
            name: name.to_string(),
        });
        let group = FiniteGroup::from_arc(oracle.clone());
        Ok(MatrixGroup { group, oracle })
    }

    /// Closure of `gens` under multiplication, failing above `cap` elements.
    pub fn generated(field: &FieldSpec, dim: usize, gens: &[Matrix], projective: bool, cap: usize, name: &str) -> Result<MatrixGroup> {
        let gens: Vec<Matrix> = gens
            .iter()
            .map(|g| canon(g.clone(), field, projective))
            .collect();
        let mut seen: HashMap<Matrix, ()> = HashMap::new();
        let id = Matrix::identity(dim);
        seen.insert(id.clone(), ());
        let mut list = vec![id];
        let mut i = 0;
        while i < list.len() {
            for g in &gens {
                let y = canon(list[i].mul(g, field), field, projective);
                if !seen.contains_key(&y) {
                    if list.len() >= cap {
                        return Err(Error::BudgetExceeded(format!("matrix group exceeds {cap} elements")));
                    }
                    seen.insert(y.clone(), ());
                    list.push(y);
                }
            }
            i += 1;
        }
        Self::from_elements(field, list, projective, name)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> &FieldSpec {
        &self.oracle.field
    }

    pub fn is_projective(&self) -> bool {
        self.oracle.projective
    }

    pub fn matrix(&self, a: Elem) -> &Matrix {
        &self.oracle.mats[a as usize]
    }

    /// Index of a matrix (or its class), if it belongs to the group.
    pub fn index_of(&self, m: &Matrix) -> Option<Elem> {
        let key = canon(m.clone(), &self.oracle.field, self.oracle.projective);
        self.oracle.index.get(&key).copied()
    }
}

/// The group of scalar classes of the elements of a matrix group, with the projection.
pub fn projective_group(g: &FiniteGroup) -> Result<(MatrixGroup, GroupHom)> {
    let field = g.coefficient_field().ok_or(Error::NotMatrixGroup)?;
    let classes: Vec<Matrix> = g
        .elements()
        .map(|a| g.matrix(a).map(|m| m.projective_normalize(&field)))
        .collect::<Option<_>>()
        .ok_or(Error::NotMatrixGroup)?;
    let name = format!("P({})", g.name());
    let pg = MatrixGroup::from_elements(&field, classes.clone(), true, &name)?;
    let map = classes
        .iter()
        .map(|m| pg.index_of(m).expect("class present"))
        .collect();
    let proj = GroupHom::new(g, pg.group(), map)?;
    Ok((pg, proj))
}

/// `PGL_2(F_q)` with its subgroup `PSL_2(F_q)` and the projection from `GL_2`.
#[derive(Clone, Debug)]
pub struct Pgl2 {
    pub gl2: Gl2,
    pub pgl2: MatrixGroup,
    pub proj: GroupHom,
    pub psl2: Subgroup,
}

impl Pgl2 {
    pub fn new(field: &FieldSpec) -> Result<Pgl2> {
        let gl2 = gl2_group(field)?;
        let (pgl2, proj) = projective_group(gl2.group())?;
        let mut image: Vec<Elem> = gl2.sl2().members().iter().map(|&a| proj.apply(a)).collect();
        image.sort_unstable();
        image.dedup();
        let psl2 = Subgroup::from_set(pgl2.group(), &image)?;
        Ok(Pgl2 {
            gl2,
            pgl2,
            proj,
            psl2,
        })
    }

    pub fn class_of(&self, m: &Mat2) -> Elem {
        self.proj.apply(self.gl2.index_of(m))
    }
}

/// `x = [[1, r+1], [-1, -1]]` for the least non-square `r ≠ -1` in `F_p`:
/// `det x = r` is a non-square and `x^2 = -r I`, so the class of `x` has
/// order 2 in `PGL_2(F_p)` and lies outside `PSL_2(F_p)`.
pub fn psl2_order2_witness(field: &FieldSpec) -> Result<Mat2> {
    let p = field.p();
    if field.r() != 1 || p < 5 || !is_prime(p as u64) {
        return Err(Error::NoWitness(p));
    }
    let r = (2..p - 1)
        .find(|&r| !field.is_square(r))
        .ok_or(Error::NoWitness(p))?;
    let x = Mat2::from_ints(field, [1, r as i64 + 1, -1, -1])?;
    debug_assert_eq!(x.det(), r);
    Ok(x)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SimplicityReport {
    pub class_sizes: Vec<usize>,
    /// Orders `1 + (sum of some non-identity class sizes)` that properly divide `|G|`.
    pub candidate_orders: Vec<usize>,
    /// Every non-identity class generates the whole group as a normal subgroup.
    pub simple: bool,
}

/// Simplicity through conjugacy classes: the class-size subset-sum filter
/// and the normal closure of each non-identity class.
pub fn simplicity(g: &FiniteGroup) -> SimplicityReport {
    let classes = conjugacy_classes(g);
    let class_sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    let n = g.order();
    let rest: Vec<usize> = classes
        .iter()
        .filter(|c| !c.contains(&g.identity()))
        .map(|c| c.len())
        .collect();
    let mut sums = std::collections::BTreeSet::new();
    sums.insert(1usize);
    for &s in &rest {
        let next: Vec<usize> = sums.iter().map(|&x| x + s).filter(|&x| x < n).collect();
        sums.extend(next);
    }
    let candidate_orders: Vec<usize> = sums
        .into_iter()
        .filter(|&x| x > 1 && n.is_multiple_of(x))
        .collect();
    let simple = n > 1
        && classes
            .iter()
            .filter(|c| !c.contains(&g.identity()))
            .all(|c| normal_closure(g, &c[..1]).map(|s| s.order() == n).unwrap_or(false));
    SimplicityReport {
        class_sizes,
        candidate_orders,
        simple,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::fq_make;
    use crate::grp::{derived_subgroup, quotient};

    #[test]
    fn gl2_orders() {
        for (p, r, order) in [(2, 1, 6), (3, 1, 48), (5, 1, 480), (2, 2, 180)] {
            let g = gl2_group(&fq_make(p, r).unwrap()).unwrap();
            assert_eq!(g.group().order(), order);
        }
        assert_eq!(
            gl2_group(&fq_make(37, 1).unwrap()).unwrap_err(),
            Error::FieldTooLarge(37)
        );
    }

    #[test]
    fn index_lookup_roundtrip() {
        let g = gl2_group(&fq_make(3, 1).unwrap()).unwrap();
        for a in g.group().elements() {
            assert_eq!(g.index_of(&g.mat(a)), a);
        }
        assert_eq!(g.mat(g.group().identity()).entries(), [1, 0, 0, 1]);
    }

    #[test]
    fn det_power_subgroups_of_gl2_f5() {
        let g = gl2_group(&fq_make(5, 1).unwrap()).unwrap();
        assert_eq!(g.det_power_subgroup(1).unwrap().order(), 480);
        assert_eq!(g.det_power_subgroup(2).unwrap().order(), 240);
        let sl = g.det_power_subgroup(4).unwrap();
        assert_eq!(sl, g.sl2());
        assert_eq!(sl.order(), 120);
        assert_eq!(
            g.det_power_subgroup(3).unwrap_err(),
            Error::CongruenceFailed { q: 5, n: 3 }
        );
        let z_sl = g.center().join(&g.sl2());
        assert_eq!(z_sl, g.det_power_subgroup(2).unwrap());
    }

    #[test]
    fn commutator_subgroup_is_sl2() {
        let g = gl2_group(&fq_make(5, 1).unwrap()).unwrap();
        assert_eq!(derived_subgroup(g.group()).unwrap(), g.sl2());
        let (q, _) = quotient(g.group(), &g.sl2()).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.elements().any(|z| q.elem_order(z) == 4));
    }

    #[test]
    fn projective_orders() {
        let f5 = fq_make(5, 1).unwrap();
        let p = Pgl2::new(&f5).unwrap();
        assert_eq!(p.pgl2.group().order(), 120);
        assert_eq!(p.psl2.order(), 60);
        assert!(p.proj.verify(1).ok);
        let f2 = fq_make(2, 1).unwrap();
        assert_eq!(Pgl2::new(&f2).unwrap().pgl2.group().order(), 6);
    }

    #[test]
    fn order_two_witnesses() {
        for (p, r, x) in [(7u32, 3u32, [1, 4, 6, 6]), (5, 2, [1, 3, 4, 4])] {
            let f = fq_make(p, 1).unwrap();
            let w = psl2_order2_witness(&f).unwrap();
            assert_eq!(w.entries(), x);
            assert_eq!(w.det(), r);
            assert!(w.pow(2).is_scalar());
        }
        let f11 = fq_make(11, 1).unwrap();
        assert_eq!(psl2_order2_witness(&f11).unwrap().det(), 2);
        assert_eq!(
            psl2_order2_witness(&fq_make(3, 1).unwrap()).unwrap_err(),
            Error::NoWitness(3)
        );
        let w7 = psl2_order2_witness(&fq_make(7, 1).unwrap()).unwrap();
        assert_eq!(w7.pow(2).entries(), [4, 0, 0, 4]);
        assert_eq!(w7.render(), "[[1,4],[6,6]] over GF(7)");
    }

    #[test]
    fn psl2_f5_is_simple() {
        let p = Pgl2::new(&fq_make(5, 1).unwrap()).unwrap();
        let rep = simplicity(&p.psl2.as_group());
        assert!(rep.simple);
        assert!(rep.candidate_orders.is_empty());
        let mut sizes = rep.class_sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        assert!(!simplicity(p.pgl2.group()).simple);
    }

    #[test]
    fn proj_class_normalization() {
        let f = fq_make(7, 1).unwrap();
        let m = Mat2::from_ints(&f, [0, 3, 2, 5]).unwrap();
        let c = ProjClass::of(&m);
        assert_eq!(c.rep().entries()[1], 1);
        assert_eq!(ProjClass::of(c.rep()), c);
        let scaled = Mat2::new(&f, m.entries().map(|v| f.mul(v, 4))).unwrap();
        assert_eq!(ProjClass::of(&scaled), c);
    }
}
