//! Finite lattices of invariant subspaces: enumeration, Hasse diagrams,
//! Jordan–Hölder data, shape classification, strata and export.

use crate::determine::GammaModule;
use crate::ffmat::{self, Subspace};
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub space: Subspace,
    pub height: usize,
    /// Composition multiplicities of the node itself.
    pub dimvec: Vec<usize>,
    /// Composition multiplicities of `top / node`.
    pub quotient_dimvec: Vec<usize>,
    pub flags: BTreeMap<String, bool>,
}

#[derive(Clone, Debug)]
pub struct FiniteLattice {
    pub p: u32,
    pub ambient: usize,
    pub labels: Vec<String>,
    pub nodes: Vec<Node>,
    /// Upward covers `(lower, upper)`.
    pub covers: Vec<(usize, usize)>,
    pub top: usize,
    pub bottom: usize,
    index: HashMap<Subspace, usize>,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, o: &FiniteLattice) -> bool {
        self.p == o.p
            && self.ambient == o.ambient
            && self.labels == o.labels
            && self.nodes == o.nodes
            && self.covers == o.covers
            && self.top == o.top
            && self.bottom == o.bottom
    }
}

impl FiniteLattice {
    /// Build from a family of subspaces closed under sums and intersections.
    pub fn from_subspaces(
        p: u32,
        ambient: usize,
        labels: Vec<String>,
        spaces: Vec<Subspace>,
        dimvec: impl Fn(&Subspace) -> Vec<usize>,
    ) -> FiniteLattice {
        let mut items: Vec<(Vec<usize>, Subspace)> = spaces.into_iter().map(|s| (dimvec(&s), s)).collect();
        items.sort_by(|a, b| {
            let ha: usize = a.0.iter().sum();
            let hb: usize = b.0.iter().sum();
            (ha, &a.1).cmp(&(hb, &b.1))
        });
        items.dedup_by(|a, b| a.1 == b.1);
        let full = items.last().map(|x| x.0.clone()).unwrap_or_default();
        let nodes: Vec<Node> = items
            .into_iter()
            .map(|(dv, s)| Node {
                height: dv.iter().sum(),
                quotient_dimvec: full.iter().zip(&dv).map(|(a, b)| a - b).collect(),
                dimvec: dv,
                space: s,
                flags: BTreeMap::new(),
            })
            .collect();
        let index = nodes.iter().enumerate().map(|(i, n)| (n.space.clone(), i)).collect();
        let mut l = FiniteLattice { p, ambient, labels, top: nodes.len().saturating_sub(1), bottom: 0, nodes, covers: Vec::new(), index };
        l.covers = l.compute_covers();
        l
    }

    fn compute_covers(&self) -> Vec<(usize, usize)> {
        let mut by_h: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, n) in self.nodes.iter().enumerate() {
            by_h.entry(n.height).or_default().push(i);
        }
        let mut out = Vec::new();
        for (&h, ups) in &by_h {
            if h == 0 {
                continue;
            }
            if let Some(downs) = by_h.get(&(h - 1)) {
                for &u in ups {
                    for &d in downs {
                        if self.nodes[u].space.contains_space(&self.nodes[d].space) {
                            out.push((d, u));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn height(&self) -> usize {
        self.nodes[self.top].height
    }

    pub fn find(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.nodes[b].space.contains_space(&self.nodes[a].space)
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let s = self.nodes[a].space.intersect(&self.nodes[b].space).ok()?;
        self.find(&s)
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let s = self.nodes[a].space.sum(&self.nodes[b].space).ok()?;
        self.find(&s)
    }

    pub fn upper_covers(&self, a: usize) -> Vec<usize> {
        self.covers.iter().filter(|c| c.0 == a).map(|c| c.1).collect()
    }

    pub fn lower_covers(&self, a: usize) -> Vec<usize> {
        self.covers.iter().filter(|c| c.1 == a).map(|c| c.0).collect()
    }

    /// Number of nodes at each height.
    pub fn level_counts(&self) -> Vec<usize> {
        let mut v = vec![0; self.height() + 1];
        for n in &self.nodes {
            v[n.height] += 1;
        }
        v
    }

    /// Whether meets and joins of all pairs exist in the node set.
    pub fn is_closed(&self) -> bool {
        (0..self.len()).all(|a| (a..self.len()).all(|b| self.meet(a, b).is_some() && self.join(a, b).is_some()))
    }

    /// Order-theoretic meet from the Hasse diagram alone.
    pub fn order_meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&x| self.leq(x, a) && self.leq(x, b)).collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&x| self.leq(x, m)))
    }

    pub fn order_join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&x| self.leq(a, x) && self.leq(b, x)).collect();
        upper.iter().copied().find(|&m| upper.iter().all(|&x| self.leq(m, x)))
    }

    /// Modular law on all triples `a ≤ c`, or on a seeded sample of `limit` triples.
    pub fn check_modular(&self, limit: Option<usize>, seed: u64) -> bool {
        let n = self.len();
        let check = |a: usize, b: usize, c: usize| -> bool {
            if !self.leq(a, c) {
                return true;
            }
            let l = self.join(a, b).and_then(|j| self.meet(j, c));
            let r = self.meet(b, c).and_then(|m| self.join(a, m));
            l.is_some() && l == r
        };
        match limit {
            None => (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| check(a, b, c)))),
            Some(k) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let idx: Vec<usize> = (0..n).collect();
                (0..k).all(|_| {
                    let a = *idx.choose(&mut rng).unwrap();
                    let b = *idx.choose(&mut rng).unwrap();
                    let ups: Vec<usize> = (0..n).filter(|&c| self.leq(a, c)).collect();
                    let c = *ups.choose(&mut rng).unwrap();
                    check(a, b, c)
                })
            }
        }
    }

    pub fn set_flag(&mut self, node: usize, name: &str, v: bool) {
        self.nodes[node].flags.insert(name.to_string(), v);
    }
}

/// Default bound on `dim Hom(C, Y)` per field.
pub fn default_max_dim(p: u32) -> usize {
    match p {
        2 => 10,
        3 => 7,
        5 => 5,
        _ => 4,
    }
}

fn check_cap(p: u32, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: format!("subspaces of a {n}-dimensional space over F_{p}"),
            needed: ffmat::subspace_count(n, p as u128),
            cap: ffmat::subspace_count(cap, p as u128),
        });
    }
    Ok(())
}

fn labels_of(gm: &GammaModule) -> Vec<String> {
    gm.labels.iter().map(|l| l.name.clone()).collect()
}

/// All subspaces of `F_p^n` invariant under the given matrices: cyclic
/// subspaces first, then closure under sums.
pub fn invariant_subspaces(p: u32, n: usize, actions: &[crate::ffmat::Mat]) -> Result<Vec<Subspace>> {
    let generate = |v: Vec<u32>| {
        let mut e = ffmat::Echelon::new(p, n);
        let mut queue = Vec::new();
        if let Some(r) = e.insert(&v) {
            queue.push(r);
        }
        while let Some(v) = queue.pop() {
            for a in actions {
                if let Some(r) = e.insert(&a.mul_vec(&v)) {
                    queue.push(r);
                }
            }
        }
        e.to_subspace()
    };
    let mut cyclic: Vec<Subspace> = Vec::new();
    let mut seen: HashSet<Subspace> = HashSet::new();
    for v in ffmat::projective_points(p, n) {
        let s = generate(v);
        if seen.insert(s.clone()) {
            cyclic.push(s);
        }
    }
    let zero = Subspace::zero(p, n);
    let mut all: HashSet<Subspace> = HashSet::new();
    all.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(s) = frontier.pop() {
        for z in &cyclic {
            if s.contains_space(z) {
                continue;
            }
            let t = s.sum(z)?;
            if all.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    let mut out: Vec<Subspace> = all.into_iter().collect();
    out.sort_by(|a, b| (a.dim(), a).cmp(&(b.dim(), b)));
    Ok(out)
}

/// All Γ-submodules of `Hom(C, Y)`.
pub fn submodule_lattice(gm: &GammaModule, max_dim: usize) -> Result<FiniteLattice> {
    let p = gm.p();
    let n = gm.dim();
    check_cap(p, n, max_dim)?;
    let all = invariant_subspaces(p, n, &gm.action)?;
    Ok(FiniteLattice::from_subspaces(p, n, labels_of(gm), all, |s| gm.dimvec(s)))
}

/// Oracle: filter every subspace for invariance.
pub fn submodule_lattice_exhaustive(gm: &GammaModule, max_dim: usize) -> Result<FiniteLattice> {
    let p = gm.p();
    let n = gm.dim();
    check_cap(p, n, max_dim)?;
    let subs = ffmat::enumerate_subspaces(p, n, u128::MAX)?;
    let inv: Vec<Subspace> = subs.into_iter().filter(|s| gm.is_submodule(s)).collect();
    Ok(FiniteLattice::from_subspaces(p, n, labels_of(gm), inv, |s| gm.dimvec(s)))
}

/// The reference lattice `G(d)` of all subspaces of `F_p^d`.
pub fn subspace_lattice(p: u32, d: usize) -> Result<FiniteLattice> {
    let subs = ffmat::enumerate_subspaces(p, d, u128::MAX)?;
    Ok(FiniteLattice::from_subspaces(p, d, vec!["k".into()], subs, |s| vec![s.dim()]))
}

/// The chain `I(d)`.
pub fn chain_lattice(p: u32, d: usize) -> FiniteLattice {
    let subs = (0..=d)
        .map(|k| Subspace::span(p, d, &(0..k).map(|i| unit(d, i)).collect::<Vec<_>>()))
        .collect();
    FiniteLattice::from_subspaces(p, d, vec!["k".into()], subs, |s| vec![s.dim()])
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Composition multiplicities of the interval `[from, to]`.
pub fn jordan_holder(l: &FiniteLattice, from: usize, to: usize) -> Result<Vec<usize>> {
    if !l.leq(from, to) {
        return Err(Error::Invalid("nodes are not comparable".into()));
    }
    Ok(l.nodes[to].dimvec.iter().zip(&l.nodes[from].dimvec).map(|(a, b)| a - b).collect())
}

/// A seeded random maximal chain from `from` up to `to`.
pub fn maximal_chain(l: &FiniteLattice, from: usize, to: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chain = vec![from];
    let mut cur = from;
    while cur != to {
        let ups: Vec<usize> = l.upper_covers(cur).into_iter().filter(|&u| l.leq(u, to)).collect();
        cur = *ups.choose(&mut rng).expect("graded lattice");
        chain.push(cur);
    }
    chain
}

/// Label multiset read off a chain, one composition factor per step.
pub fn chain_dimvec(l: &FiniteLattice, chain: &[usize]) -> Vec<usize> {
    let mut v = vec![0; l.labels.len()];
    for w in chain.windows(2) {
        for (k, (a, b)) in l.nodes[w[1]].dimvec.iter().zip(&l.nodes[w[0]].dimvec).enumerate() {
            v[k] += a - b;
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Chain(usize),
    Geometry { d: usize, q: u128 },
    Other,
}

impl Shape {
    /// `G(d)` over `F_q`, where `G(0)` and `G(1)` are chains.
    pub fn is_geometry(&self, d: usize, q: u128) -> bool {
        match self {
            Shape::Geometry { d: e, q: r } => *e == d && *r == q,
            Shape::Chain(e) => *e == d && d <= 1,
            Shape::Other => false,
        }
    }

    pub fn is_chain(&self, d: usize) -> bool {
        matches!(self, Shape::Chain(e) if *e == d)
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Shape::Chain(d) => write!(f, "I({d})"),
            Shape::Geometry { d, q } => write!(f, "G({d}) over F_{q}"),
            Shape::Other => write!(f, "other"),
        }
    }
}

pub fn classify_shape(l: &FiniteLattice, q: u128) -> Shape {
    let h = l.height();
    if l.len() == h + 1 {
        return Shape::Chain(h);
    }
    let counts: Vec<usize> = (0..=h).map(|k| ffmat::gaussian_binomial(h, k, q) as usize).collect();
    if l.level_counts() != counts {
        return Shape::Other;
    }
    if q <= 251 && ffmat::is_prime(q as u32) {
        let Ok(r) = subspace_lattice(q as u32, h) else { return Shape::Other };
        return if geometry_isomorphism(l, &r).is_some() { Shape::Geometry { d: h, q } } else { Shape::Other };
    }
    // no reference lattice over a proper prime power: counts plus modularity
    if l.check_modular(None, 0) {
        Shape::Geometry { d: h, q }
    } else {
        Shape::Other
    }
}

/// An explicit lattice isomorphism `l → r` between atomistic lattices,
/// determined by a collinearity-preserving bijection of atoms.
pub fn geometry_isomorphism(l: &FiniteLattice, r: &FiniteLattice) -> Option<Vec<usize>> {
    if l.len() != r.len() || l.height() != r.height() {
        return None;
    }
    let atoms = |x: &FiniteLattice| -> Vec<usize> { (0..x.len()).filter(|&i| x.nodes[i].height == 1).collect() };
    let la = atoms(l);
    let ra = atoms(r);
    if la.len() != ra.len() {
        return None;
    }
    let col = |x: &FiniteLattice, a: &[usize]| -> Vec<Vec<Vec<bool>>> {
        let n = a.len();
        let mut t = vec![vec![vec![false; n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let Some(jn) = x.join(a[i], a[j]) else { continue };
                for k in 0..n {
                    t[i][j][k] = x.leq(a[k], jn);
                }
            }
        }
        t
    };
    let lc = col(l, &la);
    let rc = col(r, &ra);
    let n = la.len();
    let mut assign: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    let mut budget = 2_000_000usize;
    fn search(
        lc: &[Vec<Vec<bool>>],
        rc: &[Vec<Vec<bool>>],
        assign: &mut Vec<usize>,
        used: &mut [bool],
        budget: &mut usize,
    ) -> bool {
        let n = used.len();
        let c = assign.len();
        if c == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            let ok = (0..c).all(|a| {
                (0..c).all(|b| {
                    a == b
                        || (lc[a][b][c] == rc[assign[a]][assign[b]][cand]
                            && lc[a][c][b] == rc[assign[a]][cand][assign[b]])
                })
            });
            if !ok {
                continue;
            }
            used[cand] = true;
            assign.push(cand);
            if search(lc, rc, assign, used, budget) {
                return true;
            }
            assign.pop();
            used[cand] = false;
        }
        false
    }
    if !search(&lc, &rc, &mut assign, &mut used, &mut budget) {
        return None;
    }
    // extend to all nodes through joins of atoms
    let mut map = vec![usize::MAX; l.len()];
    let mut hit = vec![false; r.len()];
    for x in 0..l.len() {
        let below: Vec<usize> = (0..n).filter(|&i| l.leq(la[i], x)).collect();
        let mut img = r.bottom;
        for i in &below {
            img = r.join(img, ra[assign[*i]])?;
        }
        // atomistic: x must be the join of its atoms
        let mut back = l.bottom;
        for i in &below {
            back = l.join(back, la[*i])?;
        }
        if back != x || hit[img] {
            return None;
        }
        hit[img] = true;
        map[x] = img;
    }
    let preserves = l.covers.iter().all(|&(a, b)| r.leq(map[a], map[b]))
        && r.covers.len() == l.covers.len()
        && l.covers.iter().all(|&(a, b)| r.covers.binary_search(&(map[a], map[b])).is_ok());
    preserves.then_some(map)
}

/// Number of nodes per quotient dimension vector.
pub fn strata_counts(l: &FiniteLattice) -> BTreeMap<Vec<usize>, usize> {
    let mut m = BTreeMap::new();
    for n in &l.nodes {
        *m.entry(n.quotient_dimvec.clone()).or_insert(0) += 1;
    }
    m
}

/// Graphviz text, covers drawn upwards.
pub fn export_dot(l: &FiniteLattice, labeler: &dyn Fn(usize) -> String) -> String {
    let mut s = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for i in 0..l.len() {
        s.push_str(&format!("  n{i} [label=\"{}\"];\n", labeler(i).replace('"', "\\\"")));
    }
    for &(a, b) in &l.covers {
        s.push_str(&format!("  n{a} -> n{b};\n"));
    }
    s.push_str("}\n");
    s
}

/// Default DOT label: the dimension of the node and its height.
pub fn dim_labeler(l: &FiniteLattice) -> impl Fn(usize) -> String + '_ {
    move |i| format!("dim {} / h {}", l.nodes[i].space.dim(), l.nodes[i].height)
}

#[derive(Serialize, Deserialize)]
struct JsonNode {
    id: usize,
    basis: Vec<Vec<u32>>,
    height: usize,
    quotient_dimvec: BTreeMap<String, usize>,
    flags: BTreeMap<String, bool>,
}

#[derive(Serialize, Deserialize)]
struct JsonLattice {
    nodes: Vec<JsonNode>,
    covers: Vec<[usize; 2]>,
    top: usize,
    bottom: usize,
    field: u32,
    ambient: usize,
    labels: Vec<String>,
}

pub fn export_json(l: &FiniteLattice) -> String {
    let j = JsonLattice {
        nodes: l
            .nodes
            .iter()
            .enumerate()
            .map(|(id, n)| JsonNode {
                id,
                basis: n.space.basis_vecs(),
                height: n.height,
                quotient_dimvec: l.labels.iter().cloned().zip(n.quotient_dimvec.iter().copied()).collect(),
                flags: n.flags.clone(),
            })
            .collect(),
        covers: l.covers.iter().map(|&(a, b)| [a, b]).collect(),
        top: l.top,
        bottom: l.bottom,
        field: l.p,
        ambient: l.ambient,
        labels: l.labels.clone(),
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

pub fn import_json(text: &str) -> Result<FiniteLattice> {
    let j: JsonLattice = serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() })?;
    let bad = |m: &str| Error::Invalid(format!("lattice json: {m}"));
    if j.nodes.iter().enumerate().any(|(i, n)| n.id != i) {
        return Err(bad("node ids must be 0..n in order"));
    }
    let full: Vec<usize> = j
        .nodes
        .get(j.bottom)
        .map(|n| j.labels.iter().map(|l| n.quotient_dimvec.get(l).copied().unwrap_or(0)).collect())
        .ok_or_else(|| bad("missing bottom"))?;
    let mut nodes = Vec::with_capacity(j.nodes.len());
    for n in &j.nodes {
        let space = Subspace::span(j.field, j.ambient, &n.basis);
        if space.dim() != n.basis.len() {
            return Err(bad("dependent basis"));
        }
        let q: Vec<usize> = j.labels.iter().map(|l| n.quotient_dimvec.get(l).copied().unwrap_or(0)).collect();
        nodes.push(Node {
            space,
            height: n.height,
            dimvec: full.iter().zip(&q).map(|(a, b)| a - b).collect(),
            quotient_dimvec: q,
            flags: n.flags.clone(),
        });
    }
    let index = nodes.iter().enumerate().map(|(i, n)| (n.space.clone(), i)).collect();
    Ok(FiniteLattice {
        p: j.field,
        ambient: j.ambient,
        labels: j.labels,
        nodes,
        covers: j.covers.into_iter().map(|[a, b]| (a, b)).collect(),
        top: j.top,
        bottom: j.bottom,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_geometries() {
        let g = subspace_lattice(2, 3).unwrap();
        assert_eq!(g.len(), 16);
        assert_eq!(g.level_counts(), vec![1, 7, 7, 1]);
        assert!(g.check_modular(None, 0));
        assert!(g.is_closed());
        assert_eq!(classify_shape(&g, 2), Shape::Geometry { d: 3, q: 2 });
        let c = chain_lattice(2, 3);
        assert_eq!(classify_shape(&c, 2), Shape::Chain(3));
        assert_eq!(strata_counts(&subspace_lattice(2, 4).unwrap()).get(&vec![2]), Some(&35));
    }

    #[test]
    fn json_round_trip() {
        let g = subspace_lattice(3, 2).unwrap();
        let back = import_json(&export_json(&g)).unwrap();
        assert_eq!(back, g);
        let dot = export_dot(&chain_lattice(2, 1), &|i| format!("{i}"));
        assert_eq!(dot.matches("->").count(), 1);
    }

    #[test]
    fn order_and_subspace_operations_agree() {
        let g = subspace_lattice(2, 3).unwrap();
        for a in 0..g.len() {
            for b in 0..g.len() {
                assert_eq!(g.meet(a, b), g.order_meet(a, b));
                assert_eq!(g.join(a, b), g.order_join(a, b));
            }
        }
    }
}
