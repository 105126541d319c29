//! Text specifications of groups, subgroups and representations, as used by
//! the command line and the corpus files.
//!
//! Groups: `gl2:q`, `sl2:q`, `pgl2:q`, `psl2:q`, `cyclic:n`, `sym:n`, `table:FILE`.
//! Subgroups: `whole`, `trivial`, `derived`, `center`, `sl2`, `psl2`,
//! `det-power:n`, `index:n`, `gens:i,j,...`.
//! Representations: `trivial[:m]`, `natural`, `dual`, `det`, `sign`,
//! `adjoint`, `char:v`, `images:M1;M2;...` (one JSON matrix per generator of the group).

use crate::error::{Error, Result};
use crate::ffield::{fq_make, prime_factors, FieldSpec};
use crate::grp::{cyclic, derived_subgroup, parse_table, subgroup_generated, symmetric, unique_abelian_index_n, Elem, FiniteGroup, Subgroup};
use crate::induce::Rep;
use crate::linalg::Matrix;
use crate::matgrp::{gl2_group, Gl2, MatrixGroup, Pgl2};
use crate::repalg::{adjoint_matrix, dual};

#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub spec: String,
    pub group: FiniteGroup,
    /// Coefficient field of a matrix group.
    pub field: Option<FieldSpec>,
    pub gl2: Option<Gl2>,
    pub pgl2: Option<Pgl2>,
}

/// `F_q` for a prime power `q`.
pub fn field_of_order(q: u32) -> Result<FieldSpec> {
    let ps = prime_factors(q as u64);
    match ps.as_slice() {
        [p] => {
            let mut r = 0;
            let mut x = q;
            while x > 1 {
                x /= *p as u32;
                r += 1;
            }
            fq_make(*p as u32, r)
        }
        _ => Err(Error::Parse(format!("{q} is not a prime power"))),
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what}: {s:?}")))
}

pub fn parse_group(spec: &str) -> Result<BuiltGroup> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("group spec {spec:?} needs KIND:ARG")))?;
    let mut out = BuiltGroup {
        spec: spec.to_string(),
        group: cyclic(1),
        field: None,
        gl2: None,
        pgl2: None,
    };
    match kind {
        "gl2" | "sl2" | "pgl2" | "psl2" => {
            let f = field_of_order(parse_num(arg, "field order")?)?;
            let q = f.q();
            match kind {
                "gl2" => {
                    let gl = gl2_group(&f)?;
                    out.group = gl.group().clone();
                    out.gl2 = Some(gl);
                }
                "sl2" => {
                    let gl = gl2_group(&f)?;
                    let mats = gl
                        .sl2()
                        .members()
                        .iter()
                        .map(|&a| gl.mat(a).to_matrix())
                        .collect();
                    out.group = MatrixGroup::from_elements(&f, mats, false, &format!("SL2(F{q})"))?
                        .group()
                        .clone();
                }
                "pgl2" => {
                    let pg = Pgl2::new(&f)?;
                    out.group = pg.pgl2.group().clone();
                    out.pgl2 = Some(pg);
                }
                _ => {
                    let pg = Pgl2::new(&f)?;
                    let mats = pg
                        .psl2
                        .members()
                        .iter()
                        .map(|&a| pg.pgl2.matrix(a).clone())
                        .collect();
                    out.group = MatrixGroup::from_elements(&f, mats, true, &format!("PSL2(F{q})"))?
                        .group()
                        .clone();
                }
            }
            out.field = Some(f);
        }
        "cyclic" => {
            let n: usize = parse_num(arg, "order")?;
            if n == 0 {
                return Err(Error::Parse("cyclic group of order 0".into()));
            }
            out.group = cyclic(n);
        }
        "sym" => {
            let n: usize = parse_num(arg, "degree")?;
            if !(1..=7).contains(&n) {
                return Err(Error::Parse(format!("sym:{n} is outside 1..=7")));
            }
            out.group = symmetric(n);
        }
        "table" => {
            let text = std::fs::read_to_string(arg)?;
            out.group = parse_table(&text)?;
        }
        _ => return Err(Error::Parse(format!("unknown group kind {kind:?}"))),
    }
    Ok(out)
}

pub fn parse_subgroup(g: &BuiltGroup, spec: &str) -> Result<Subgroup> {
    let grp = &g.group;
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "whole" => Ok(Subgroup::whole(grp)),
        "trivial" => Ok(Subgroup::trivial(grp)),
        "derived" => derived_subgroup(grp),
        "center" => {
            let gens = grp.generators().to_vec();
            let members: Vec<Elem> = grp
                .elements()
                .filter(|&z| gens.iter().all(|&x| grp.mul(x, z) == grp.mul(z, x)))
                .collect();
            Subgroup::from_set(grp, &members)
        }
        "sl2" => g
            .gl2
            .as_ref()
            .map(|gl| gl.sl2())
            .ok_or_else(|| Error::Parse("sl2 subgroup needs a gl2 group".into())),
        "psl2" => g
            .pgl2
            .as_ref()
            .map(|pg| pg.psl2.clone())
            .ok_or_else(|| Error::Parse("psl2 subgroup needs a pgl2 group".into())),
        "det-power" => {
            let gl = g
                .gl2
                .as_ref()
                .ok_or_else(|| Error::Parse("det-power needs a gl2 group".into()))?;
            gl.det_power_subgroup(parse_num(arg, "exponent")?)
        }
        "index" => unique_abelian_index_n(grp, parse_num(arg, "index")?),
        "gens" => {
            let gens = arg
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    let x: usize = parse_num(s, "element index")?;
                    grp.check_index(x)?;
                    Ok(x as Elem)
                })
                .collect::<Result<Vec<_>>>()?;
            subgroup_generated(grp, &gens)
        }
        _ => Err(Error::Parse(format!("unknown subgroup spec {spec:?}"))),
    }
}

/// A square matrix written as a JSON array of rows.
pub fn parse_matrix(text: &str, field: &FieldSpec) -> Result<Matrix> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text.trim())?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("matrix {text:?} is not square")));
    }
    let q = field.q() as i64;
    if field.r() == 1 {
        Ok(Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| x.rem_euclid(q) as u32).collect())
                .collect(),
        ))
    } else {
        if rows.iter().flatten().any(|&x| x < 0 || x >= q) {
            return Err(Error::Parse("entries over F_q with q not prime must lie in 0..q".into()));
        }
        Ok(Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| x as u32).collect())
                .collect(),
        ))
    }
}

fn coefficient_field(g: &BuiltGroup, ell: Option<u32>) -> Result<FieldSpec> {
    match (ell, &g.field) {
        (Some(l), _) => field_of_order(l),
        (None, Some(f)) => Ok(f.clone()),
        (None, None) => Err(Error::Parse("a coefficient field (ell) is required".into())),
    }
}

/// Representation of the whole group `g`; `ell` picks `F_ell` for the coefficients.
pub fn parse_rep(g: &BuiltGroup, spec: &str, ell: Option<u32>) -> Result<Rep> {
    let grp = &g.group;
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let matrix_field = || -> Result<FieldSpec> {
        let f = g
            .field
            .clone()
            .ok_or_else(|| Error::Parse(format!("{kind} needs a matrix group")))?;
        if ell.is_some_and(|l| l != f.q()) {
            return Err(Error::Parse(format!("{kind} is defined over F{} only", f.q())));
        }
        Ok(f)
    };
    match kind {
        "trivial" => {
            let m = if arg.is_empty() { 1 } else { parse_num(arg, "dimension")? };
            Ok(Rep::trivial(grp, &coefficient_field(g, ell)?, m))
        }
        "natural" => {
            matrix_field()?;
            Rep::natural(grp)
        }
        "dual" => {
            matrix_field()?;
            dual(&Rep::natural(grp)?)
        }
        "det" => {
            let f = matrix_field()?;
            if grp.is_projective() {
                return Err(Error::Parse("det is not defined on a projective group".into()));
            }
            let mats = grp
                .elements()
                .map(|a| {
                    let m = grp.matrix(a).expect("matrix group");
                    let d = f.sub(f.mul(m.get(0, 0), m.get(1, 1)), f.mul(m.get(0, 1), m.get(1, 0)));
                    Matrix::from_rows(vec![vec![d]])
                })
                .collect();
            Rep::from_matrices(grp, &f, mats)
        }
        "adjoint" => {
            let f = matrix_field()?;
            let mats = grp
                .elements()
                .map(|a| adjoint_matrix(&grp.matrix(a).expect("matrix group"), &f))
                .collect();
            Rep::from_matrices(grp, &f, mats)
        }
        "sign" => {
            let f = coefficient_field(g, ell)?;
            let a = derived_subgroup(grp)?;
            if a.index() != 2 {
                return Err(Error::Parse("sign needs a derived subgroup of index 2".into()));
            }
            let minus = f.neg(1);
            let mats = grp
                .elements()
                .map(|x| Matrix::from_rows(vec![vec![if a.contains(x) { 1 } else { minus }]]))
                .collect();
            Rep::from_matrices(grp, &f, mats)
        }
        "char" => {
            let f = coefficient_field(g, ell)?;
            let v: i64 = parse_num(arg, "character value")?;
            let gen = grp
                .elements()
                .find(|&x| grp.elem_order(x) == grp.order() as u64)
                .ok_or_else(|| Error::Parse("char needs a cyclic group".into()))?;
            let val = f.from_int(v).value();
            Rep::from_generator_images(grp, &f, &[gen], &[Matrix::from_rows(vec![vec![val]])])
        }
        "images" => {
            let f = coefficient_field(g, ell)?;
            let mats = arg
                .split(';')
                .map(|m| parse_matrix(m, &f))
                .collect::<Result<Vec<_>>>()?;
            let gens = grp.generators().to_vec();
            if mats.len() != gens.len() {
                return Err(Error::Parse(format!(
                    "{} images given for {} generators",
                    mats.len(),
                    gens.len()
                )));
            }
            Rep::from_generator_images(grp, &f, &gens, &mats)
        }
        _ => Err(Error::Parse(format!("unknown representation spec {spec:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        for (spec, order) in [
            ("gl2:3", 48),
            ("sl2:3", 24),
            ("pgl2:5", 120),
            ("psl2:5", 60),
            ("cyclic:6", 6),
            ("sym:4", 24),
            ("gl2:4", 180),
        ] {
            assert_eq!(parse_group(spec).unwrap().group.order(), order, "{spec}");
        }
        assert!(parse_group("gl3:2").is_err());
        assert!(parse_group("gl2:6").is_err());
    }

    #[test]
    fn subgroups_and_reps() {
        let g = parse_group("gl2:5").unwrap();
        assert_eq!(parse_subgroup(&g, "sl2").unwrap().order(), 120);
        assert_eq!(parse_subgroup(&g, "index:2").unwrap().order(), 240);
        assert_eq!(parse_subgroup(&g, "center").unwrap().order(), 4);
        let det = parse_rep(&g, "det", None).unwrap();
        assert!(det.verify(1).ok);
        assert!(parse_rep(&g, "natural", Some(7)).is_err());

        let s3 = parse_group("sym:3").unwrap();
        let sign = parse_rep(&s3, "sign", Some(7)).unwrap();
        assert_eq!(sign.kernel().order(), 3);
        let c4 = parse_group("cyclic:4").unwrap();
        let chi = parse_rep(&c4, "char:2", Some(5)).unwrap();
        assert_eq!(chi.kernel().order(), 1);
        let img = parse_rep(&c4, "images:[[0,1],[4,0]]", Some(5)).unwrap();
        assert!(img.verify(1).ok);
        assert!(parse_rep(&c4, "trivial", None).is_err());

        let psl = parse_group("psl2:5").unwrap();
        let ad = parse_rep(&psl, "adjoint", None).unwrap();
        assert!(ad.verify(1).ok);
        assert_eq!(ad.kernel().order(), 1);
    }
}
