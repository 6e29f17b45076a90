//! Quivers with homogeneous admissible relations and their path bases.
//!
//! Paths are stored in application order: `[b, a]` means `b` first, then `a`.
//! In algebra files a term `a*b` denotes the same path (left factor applied
//! last). An arrow `α: x → y` acts on a representation by a matrix
//! `V_x → V_y`, so the path `a*b` acts by `M_a·M_b`.

use crate::ffmat::{self, Mat};
use crate::rep::Rep;
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

/// Longest path considered before giving up on finite dimensionality.
pub const PATH_LENGTH_CAP: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }
    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A coefficient times a path (arrow indices in application order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coef: u32,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub p: u32,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

/// One indecomposable projective, graded by path length.
#[derive(Clone, Debug)]
struct Projective {
    dims: Vec<usize>,
    /// Standard monomial per basis vector, grouped by end vertex.
    paths: Vec<Vec<Vec<usize>>>,
    maps: Vec<Mat>,
}

#[derive(Debug)]
struct Side {
    quiver: Quiver,
    relations: Vec<Relation>,
    proj: Vec<Projective>,
}

#[derive(Debug)]
struct AlgebraData {
    p: u32,
    sides: [Side; 2],
}

/// A finite-dimensional basic algebra `F_p Q / I`; cheap to clone.
///
/// The handle also carries a flag selecting the opposite algebra, so that
/// `a.opposite().opposite()` is `a` again.
#[derive(Clone, Debug)]
pub struct Algebra {
    data: Arc<AlgebraData>,
    op: bool,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Algebra {
    pub fn build(pres: &Presentation) -> Result<Algebra> {
        ffmat::check_field(pres.p)?;
        validate(pres)?;
        let q = &pres.quiver;
        let op_quiver = Quiver {
            vertices: q.vertices.clone(),
            arrows: q.arrows.iter().map(|a| Arrow { name: a.name.clone(), src: a.dst, dst: a.src }).collect(),
        };
        let op_rel = pres
            .relations
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|t| Term { coef: t.coef, path: t.path.iter().rev().copied().collect() })
                    .collect(),
            })
            .collect::<Vec<_>>();
        let side = |quiver: Quiver, relations: Vec<Relation>| -> Result<Side> {
            let proj = (0..quiver.vertices.len())
                .map(|x| build_projective(pres.p, &quiver, &relations, x))
                .collect::<Result<Vec<_>>>()?;
            Ok(Side { quiver, relations, proj })
        };
        let s0 = side(q.clone(), pres.relations.clone())?;
        let s1 = side(op_quiver, op_rel)?;
        Ok(Algebra { data: Arc::new(AlgebraData { p: pres.p, sides: [s0, s1] }), op: false })
    }

    pub fn parse(text: &str) -> Result<Algebra> {
        Algebra::build(&parse_algebra_file(text)?)
    }

    fn side(&self) -> &Side {
        &self.data.sides[self.op as usize]
    }

    pub fn p(&self) -> u32 {
        self.data.p
    }

    pub fn is_opposite(&self) -> bool {
        self.op
    }

    pub fn opposite(&self) -> Algebra {
        Algebra { data: self.data.clone(), op: !self.op }
    }

    /// Same algebra on the same side.
    pub fn same(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.data, &other.data) && self.op == other.op
    }

    pub fn quiver(&self) -> &Quiver {
        &self.side().quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.side().relations
    }

    pub fn n_vertices(&self) -> usize {
        self.quiver().vertices.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.quiver().arrows.len()
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.quiver().arrows[i]
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.quiver().vertex(name).ok_or_else(|| Error::Unknown(name.to_string()))
    }

    pub fn vertex_name(&self, x: usize) -> &str {
        &self.quiver().vertices[x]
    }

    /// The presentation on this side.
    pub fn presentation(&self) -> Presentation {
        Presentation { p: self.p(), quiver: self.quiver().clone(), relations: self.relations().to_vec() }
    }

    /// Standard monomials from `x` to `y` (application order).
    pub fn path_basis(&self, x: usize, y: usize) -> &[Vec<usize>] {
        &self.side().proj[x].paths[y]
    }

    pub fn dim(&self) -> usize {
        self.side().proj.iter().map(|p| p.dims.iter().sum::<usize>()).sum()
    }

    /// Cartan matrix entry `dim e_y Λ e_x`.
    pub fn projective_dims(&self, x: usize) -> &[usize] {
        &self.side().proj[x].dims
    }

    pub fn projective(&self, x: usize) -> Rep {
        let pr = &self.side().proj[x];
        Rep::new_unchecked(self.clone(), pr.dims.clone(), pr.maps.clone())
    }

    /// Position of the trivial path `e_x` in the basis of `P(x)_x`.
    pub fn top_index(&self, _x: usize) -> usize {
        0
    }

    pub fn injective(&self, x: usize) -> Rep {
        self.opposite().projective(x).dual()
    }

    pub fn simple(&self, x: usize) -> Rep {
        let mut dims = vec![0; self.n_vertices()];
        dims[x] = 1;
        Rep::zero_maps(self.clone(), dims)
    }

    /// `⊕_x P(x)`.
    pub fn regular(&self) -> Rep {
        Rep::direct_sum_all(self, &(0..self.n_vertices()).map(|x| self.projective(x)).collect::<Vec<_>>())
    }

    /// Matrix of a path acting on `V_src → V_dst` given per-arrow matrices.
    pub fn path_matrix(&self, dims: &[usize], maps: &[Mat], path: &[usize], start: usize) -> Mat {
        let mut m = Mat::identity(self.p(), dims[start]);
        for &a in path {
            m = maps[a].mul(&m);
        }
        m
    }

    /// Canonical algebra-file text for this side.
    pub fn to_text(&self) -> String {
        presentation_text(&self.presentation())
    }
}

fn validate(pres: &Presentation) -> Result<()> {
    let q = &pres.quiver;
    let mut seen = HashMap::new();
    for v in &q.vertices {
        if seen.insert(v.clone(), ()).is_some() {
            return Err(Error::Invalid(format!("duplicate vertex `{v}`")));
        }
    }
    let mut seen = HashMap::new();
    for a in &q.arrows {
        if a.src >= q.vertices.len() || a.dst >= q.vertices.len() {
            return Err(Error::Invalid(format!("arrow `{}` references a missing vertex", a.name)));
        }
        if seen.insert(a.name.clone(), ()).is_some() || q.vertex(&a.name).is_some() {
            return Err(Error::Invalid(format!("duplicate name `{}`", a.name)));
        }
    }
    for (ri, r) in pres.relations.iter().enumerate() {
        let mut ends = None;
        let mut len = None;
        for t in &r.terms {
            if t.path.len() < 2 {
                return Err(Error::BadRelation(format!("relation {}: paths must have length at least 2", ri + 1)));
            }
            for w in t.path.windows(2) {
                if q.arrows[w[0]].dst != q.arrows[w[1]].src {
                    return Err(Error::BadRelation(format!("relation {}: arrows do not compose", ri + 1)));
                }
            }
            let e = (q.arrows[t.path[0]].src, q.arrows[*t.path.last().unwrap()].dst);
            if *ends.get_or_insert(e) != e {
                return Err(Error::BadRelation(format!("relation {}: terms have different endpoints", ri + 1)));
            }
            if *len.get_or_insert(t.path.len()) != t.path.len() {
                return Err(Error::BadRelation(format!(
                    "relation {}: terms have different lengths (only homogeneous relations are supported)",
                    ri + 1
                )));
            }
        }
    }
    Ok(())
}

/// Build `P(x)` degree by degree.
///
/// Degree `l` is spanned by `α·m` for standard monomials `m` of degree
/// `l-1`; relations `r·w` with `w` of degree `l - |r|` are expressed in these
/// candidates through the already built arrow actions, and the non-pivot
/// candidates become the standard monomials of degree `l`.
fn build_projective(p: u32, q: &Quiver, rels: &[Relation], x: usize) -> Result<Projective> {
    let nv = q.vertices.len();
    // layers[l] = list of (end vertex, path)
    let mut layers: Vec<Vec<(usize, Vec<usize>)>> = vec![vec![(x, vec![])]];
    // act[l][a] = matrix layer l -> layer l+1 for arrow a (full layer coordinates)
    let mut act: Vec<Vec<Mat>> = Vec::new();
    loop {
        let l = layers.len();
        if l > PATH_LENGTH_CAP + 1 {
            return Err(Error::NotFiniteDimensional(PATH_LENGTH_CAP));
        }
        let prev = &layers[l - 1];
        // candidate (arrow, index in prev)
        let mut cands: Vec<(usize, usize)> = Vec::new();
        for (ai, a) in q.arrows.iter().enumerate() {
            for (mi, (end, _)) in prev.iter().enumerate() {
                if *end == a.src {
                    cands.push((ai, mi));
                }
            }
        }
        let cidx: HashMap<(usize, usize), usize> = cands.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let nc = cands.len();
        // relation vectors
        let mut relrows: Vec<Vec<u32>> = Vec::new();
        for r in rels {
            let d = r.terms[0].path.len();
            if d > l {
                continue;
            }
            let start = q.arrows[r.terms[0].path[0]].src;
            for (wi, (end, _)) in layers[l - d].iter().enumerate() {
                if *end != start {
                    continue;
                }
                let mut row = vec![0u32; nc];
                for t in &r.terms {
                    // apply all but the last arrow to w within built layers
                    let mut v = vec![0u32; layers[l - d].len()];
                    v[wi] = 1;
                    for (k, &a) in t.path[..d - 1].iter().enumerate() {
                        v = act[l - d + k][a].mul_vec(&v);
                    }
                    let last = t.path[d - 1];
                    for (mi, &c) in v.iter().enumerate() {
                        if c != 0 {
                            if let Some(&ci) = cidx.get(&(last, mi)) {
                                row[ci] = ffmat::add(p, row[ci], ffmat::mul(p, c, t.coef));
                            }
                        }
                    }
                }
                relrows.push(row);
            }
        }
        let rs = ffmat::Subspace::span(p, nc, &relrows);
        let (_sigma, pi) = rs.quotient_map();
        let free: Vec<usize> = {
            let piv = rs.pivots();
            (0..nc).filter(|c| !piv.contains(c)).collect()
        };
        let layer: Vec<(usize, Vec<usize>)> = free
            .iter()
            .map(|&ci| {
                let (a, mi) = cands[ci];
                let mut path = prev[mi].1.clone();
                path.push(a);
                (q.arrows[a].dst, path)
            })
            .collect();
        // arrow actions prev -> layer
        let mut maps = Vec::with_capacity(q.arrows.len());
        for ai in 0..q.arrows.len() {
            let mut m = Mat::zeros(p, layer.len(), prev.len());
            for (mi, _) in prev.iter().enumerate() {
                if let Some(&ci) = cidx.get(&(ai, mi)) {
                    for r in 0..layer.len() {
                        m.set(r, mi, pi.get(r, ci));
                    }
                }
            }
            maps.push(m);
        }
        if layer.is_empty() {
            break;
        }
        act.push(maps);
        layers.push(layer);
    }
    // assemble into a representation: basis of V_y = layer elements ending at y
    let mut index: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv]; // per vertex: (layer, pos)
    let mut slot: Vec<Vec<usize>> = Vec::new(); // slot[l][pos] = index within vertex
    let mut paths: Vec<Vec<Vec<usize>>> = vec![Vec::new(); nv];
    for (l, layer) in layers.iter().enumerate() {
        let mut s = Vec::with_capacity(layer.len());
        for (pos, (end, path)) in layer.iter().enumerate() {
            s.push(index[*end].len());
            index[*end].push((l, pos));
            paths[*end].push(path.clone());
        }
        slot.push(s);
    }
    let dims: Vec<usize> = index.iter().map(|v| v.len()).collect();
    let mut maps: Vec<Mat> = q.arrows.iter().map(|a| Mat::zeros(p, dims[a.dst], dims[a.src])).collect();
    for (l, lm) in act.iter().enumerate() {
        for (ai, m) in lm.iter().enumerate() {
            let a = &q.arrows[ai];
            for (src_pos, (end, _)) in layers[l].iter().enumerate() {
                if *end != a.src {
                    continue;
                }
                for (dst_pos, (dend, _)) in layers[l + 1].iter().enumerate() {
                    let v = m.get(dst_pos, src_pos);
                    if v != 0 {
                        debug_assert_eq!(*dend, a.dst);
                        maps[ai].set(slot[l + 1][dst_pos], slot[l][src_pos], v);
                    }
                }
            }
        }
    }
    Ok(Projective { dims, paths, maps })
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Parse the line-oriented algebra file format.
///
/// ```text
/// field 2
/// vertices a b
/// arrow alpha b a
/// relation alpha*beta - 2 gamma*delta
/// ```
pub fn parse_algebra_file(text: &str) -> Result<Presentation> {
    let mut p = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut rel_lines: Vec<(usize, usize, String)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let indent = line.len() - line.trim_start().len();
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest_col = indent + kw.len() + 2;
        match kw {
            "field" => {
                let v: u32 = rest.trim().parse().map_err(|_| perr(line_no, rest_col, "expected a prime"))?;
                if !ffmat::is_prime(v) || v > ffmat::MAX_P {
                    return Err(perr(line_no, rest_col, format!("{v} is not a supported prime")));
                }
                p = Some(v);
            }
            "vertices" => {
                for v in rest.split_whitespace() {
                    check_ident(v).map_err(|m| perr(line_no, rest_col, m))?;
                    vertices.push(v.to_string());
                }
            }
            "arrow" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(perr(line_no, rest_col, "expected `arrow <name> <source> <target>`"));
                }
                check_ident(parts[0]).map_err(|m| perr(line_no, rest_col, m))?;
                let find = |n: &str| {
                    vertices.iter().position(|v| v == n).ok_or_else(|| perr(line_no, rest_col, format!("unknown vertex `{n}`")))
                };
                arrows.push(Arrow { name: parts[0].to_string(), src: find(parts[1])?, dst: find(parts[2])? });
            }
            "relation" => rel_lines.push((line_no, rest_col, rest.to_string())),
            other => return Err(perr(line_no, indent + 1, format!("unknown keyword `{other}`"))),
        }
    }
    let p = p.ok_or_else(|| perr(1, 1, "missing `field` line"))?;
    if vertices.is_empty() {
        return Err(perr(1, 1, "missing `vertices` line"));
    }
    let quiver = Quiver { vertices, arrows };
    let relations = rel_lines
        .iter()
        .map(|(ln, col, s)| parse_relation(p, &quiver, s).map_err(|(c, m)| perr(*ln, col + c, m)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Presentation { p, quiver, relations })
}

fn check_ident(s: &str) -> std::result::Result<(), String> {
    let ok = s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
    if ok {
        Ok(())
    } else {
        Err(format!("invalid name `{s}`"))
    }
}

/// Parse `term (+|-) term ...`; errors carry a column offset.
fn parse_relation(p: u32, q: &Quiver, s: &str) -> std::result::Result<Relation, (usize, String)> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut terms = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let mut first = true;
    loop {
        skip_ws(&mut i);
        if i >= chars.len() {
            if first {
                return Err((i, "empty relation".into()));
            }
            break;
        }
        let mut sign = 1i64;
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -1;
            }
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err((i, "expected `+` or `-`".into()));
        }
        first = false;
        let start = i;
        let mut coef = 1i64;
        if i < chars.len() && chars[i].is_ascii_digit() {
            let mut v = 0i64;
            while i < chars.len() && chars[i].is_ascii_digit() {
                v = v * 10 + chars[i].to_digit(10).unwrap() as i64;
                i += 1;
            }
            coef = v;
            skip_ws(&mut i);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
                skip_ws(&mut i);
            }
        }
        let mut names = Vec::new();
        loop {
            let ns = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            if ns == i {
                return Err((i, "expected an arrow name".into()));
            }
            let name: String = chars[ns..i].iter().collect();
            let a = q.arrow(&name).ok_or((ns, format!("unknown arrow `{name}`")))?;
            names.push(a);
            skip_ws(&mut i);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
                skip_ws(&mut i);
            } else {
                break;
            }
        }
        names.reverse();
        let c = ffmat::reduce(p, sign * coef);
        if c == 0 {
            return Err((start, "coefficient vanishes modulo p".into()));
        }
        terms.push(Term { coef: c, path: names });
    }
    Ok(Relation { terms })
}

pub fn presentation_text(pres: &Presentation) -> String {
    let q = &pres.quiver;
    let mut s = String::new();
    let _ = writeln!(s, "field {}", pres.p);
    let _ = writeln!(s, "vertices {}", q.vertices.join(" "));
    for a in &q.arrows {
        let _ = writeln!(s, "arrow {} {} {}", a.name, q.vertices[a.src], q.vertices[a.dst]);
    }
    for r in &pres.relations {
        let mut line = String::from("relation");
        for (i, t) in r.terms.iter().enumerate() {
            let word = t.path.iter().rev().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("*");
            let sep = if i == 0 { " " } else { " + " };
            if t.coef == 1 {
                let _ = write!(line, "{sep}{word}");
            } else {
                let _ = write!(line, "{sep}{} {word}", t.coef);
            }
        }
        let _ = writeln!(s, "{line}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = "field 2\nvertices a b\narrow alpha b a\n";
    const LOOP_B: &str = "field 2\nvertices a b\narrow alpha a a\narrow beta b a\nrelation alpha*alpha\n";

    #[test]
    fn a2_dimension() {
        let a = Algebra::parse(A2).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.projective(1).dims(), &[1, 1]);
        assert_eq!(a.projective(0).dims(), &[1, 0]);
    }

    #[test]
    fn loop_with_arrow() {
        let a = Algebra::parse(LOOP_B).unwrap();
        assert_eq!(a.dim(), 5);
        assert_eq!(a.path_basis(1, 0).len(), 2);
    }

    #[test]
    fn uniserial_dimension() {
        let a = Algebra::parse("field 3\nvertices x\narrow t x x\nrelation t*t*t*t*t*t*t*t\n").unwrap();
        assert_eq!(a.dim(), 8);
    }

    #[test]
    fn free_loop_is_infinite() {
        let e = Algebra::parse("field 2\nvertices x\narrow t x x\n").unwrap_err();
        assert!(matches!(e, Error::NotFiniteDimensional(_)));
    }

    #[test]
    fn bad_relations() {
        let mixed = "field 2\nvertices a b c\narrow x a b\narrow y b c\narrow z a c\nrelation y*x + z*z\n";
        assert!(Algebra::parse(mixed).is_err());
        let short = "field 2\nvertices a b\narrow x a b\nrelation x\n";
        assert!(matches!(Algebra::parse(short), Err(Error::BadRelation(_))));
    }

    #[test]
    fn parse_errors_have_positions() {
        match parse_algebra_file("field 2\nvertices a\nrelation foo*bar\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_algebra_file("field 4\nvertices a\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn commutative_square() {
        let text = "field 3\nvertices a b c d\narrow x a b\narrow y b d\narrow u a c\narrow v c d\nrelation y*x - v*u\n";
        let a = Algebra::parse(text).unwrap();
        // P(a): e_a, x, u, one path to d
        assert_eq!(a.projective(0).dims(), &[1, 1, 1, 1]);
        assert_eq!(a.dim(), 4 + 2 + 2 + 1);
    }

    #[test]
    fn text_roundtrip() {
        let a = Algebra::parse(LOOP_B).unwrap();
        let b = Algebra::parse(&a.to_text()).unwrap();
        for x in 0..2 {
            assert_eq!(a.projective(x), b.projective(x).rebase(&a).unwrap());
            for y in 0..2 {
                assert_eq!(a.path_basis(x, y), b.path_basis(x, y));
            }
        }
    }
}
